//! Seeded generators of spaces, vectors, subspaces and sequences for the
//! property suites.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{build_space, OrderedSpace};
use crate::exact::linalg::rank;
use crate::exact::{rat, ratio, Rational, VectorQ};
use crate::seqspace::SeqElement;
use crate::subspace::Subspace;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_vector(rng: &mut Rng, n: usize, bound: i64) -> VectorQ {
    (0..n).map(|_| rat(rng.random_range(-bound..=bound))).collect()
}

/// Entries `p/q` with `|p| <= bound` and `1 <= q <= 3`.
pub fn rational_vector(rng: &mut Rng, n: usize, bound: i64) -> VectorQ {
    (0..n)
        .map(|_| ratio(rng.random_range(-bound..=bound), rng.random_range(1..=3)))
        .collect()
}

/// The standard cone of `Q^n` under a random unimodular change of basis.
pub fn simplicial_space(rng: &mut Rng, n: usize) -> OrderedSpace {
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.random_range(-2..=2);
        let src = cols[j].clone();
        for (t, s) in cols[i].iter_mut().zip(&src) {
            *t += c * s;
        }
    }
    let gens: Vec<VectorQ> = cols.iter().map(|c| VectorQ::from_ints(c)).collect();
    build_space(n, Some(&gens), None, &format!("simplicial:{n}")).expect("unimodular image of the standard cone")
}

/// A cone in `Q^n`, `2 <= n <= 4`, spanned by at most six integer vectors
/// with positive last coordinate; simplicial about half of the time.
pub fn mixed_space(rng: &mut Rng) -> OrderedSpace {
    let n = rng.random_range(2..=4);
    if rng.random_bool(0.5) {
        return simplicial_space(rng, n);
    }
    loop {
        let k = rng.random_range(n + 1..=6);
        let gens: Vec<VectorQ> = (0..k)
            .map(|_| {
                let mut v: Vec<i64> = (0..n - 1).map(|_| rng.random_range(-3..=3)).collect();
                v.push(rng.random_range(1..=3));
                VectorQ::from_ints(&v)
            })
            .collect();
        if rank(&gens, n) < n {
            continue;
        }
        if let Ok(s) = build_space(n, Some(&gens), None, &format!("random:{n}")) {
            return s;
        }
    }
}

/// A random nonnegative integer combination of the generators.
pub fn positive_element(rng: &mut Rng, s: &OrderedSpace) -> VectorQ {
    s.generators()
        .iter()
        .fold(VectorQ::zeros(s.dim()), |acc, g| &acc + &g.scale(&rat(rng.random_range(0..=3))))
}

/// A nonzero positive element.
pub fn strictly_positive_element(rng: &mut Rng, s: &OrderedSpace) -> VectorQ {
    loop {
        let x = positive_element(rng, s);
        if !x.is_zero() {
            return x;
        }
    }
}

/// The span of up to `n` random integer vectors.
pub fn subspace(rng: &mut Rng, n: usize) -> Subspace {
    let k = rng.random_range(0..=n);
    let vs: Vec<VectorQ> = (0..k).map(|_| int_vector(rng, n, 3)).collect();
    Subspace::span(&vs, n).expect("dimensions agree")
}

/// A random element of the carrier of `d`.
pub fn element_of(rng: &mut Rng, d: &Subspace) -> VectorQ {
    d.basis()
        .iter()
        .fold(VectorQ::zeros(d.ambient()), |acc, b| &acc + &b.scale(&rat(rng.random_range(-3..=3))))
}

/// A member of the sequence space: random entries on `-6..=4` and a random
/// limit, with `x_{-1}` adjusted so the weighted sum equals the limit.
pub fn seq_member(rng: &mut Rng) -> SeqElement {
    let tail: Rational = ratio(rng.random_range(-4..=4), rng.random_range(1..=3));
    let raw: Vec<(i64, Rational)> = (-6..=4)
        .map(|k| (k, ratio(rng.random_range(-4..=4), rng.random_range(1..=2))))
        .collect();
    let x = SeqElement::new(raw, 5, tail.clone()).expect("keys below 5");
    let fix = rat(2) * (&tail - x.weighted_sum());
    let mut entries = x.entries().clone();
    let at = entries.get(&-1).cloned().unwrap_or_else(|| rat(0));
    entries.insert(-1, at + fix);
    SeqElement::new(entries, 5, tail).expect("keys below 5")
}

/// A member of `B`: random entries on `0..=4`, a random limit `L` and
/// `x_{-1} = 2 L`.
pub fn seq_b_member(rng: &mut Rng) -> SeqElement {
    let tail: Rational = ratio(rng.random_range(-4..=4), rng.random_range(1..=3));
    let mut entries: Vec<(i64, Rational)> = (0..=4).map(|k| (k, rat(rng.random_range(-4..=4)))).collect();
    entries.push((-1, rat(2) * &tail));
    SeqElement::new(entries, 5, tail).expect("keys below 5")
}
