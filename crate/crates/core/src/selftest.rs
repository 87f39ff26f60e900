//! Property and golden suites over built-in and randomly generated spaces.
//!
//! Each suite returns the number of checks it ran and a description of
//! every failed check. Suites are independent and may run in parallel;
//! results are always reported in suite order.

use std::fmt::Display;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::atoms::{
    atom_lambda, atoms, decompose_by_atom, is_atom, is_discrete, lambda_by_lp, lambda_closed_form,
    pervasive_witness_check, rdp_split, PervasiveCheck, RdpOutcome,
};
use crate::bands::{
    band_of, disjoint_complement, disjoint_complement_of, disjoint_eq1_oracle, enumerate_bands, extend_band,
    is_band, is_disjoint, principal_ideal_member, restrict_band, Band, DEFAULT_BAND_CAP,
};
use crate::classify::{classify, has_common_lower_bound, RdpWitness, WeakPervasive};
use crate::completion::embed;
use crate::cone::{build_space, leq, sup_in_x, OrderedSpace};
use crate::error::Result;
use crate::exact::linalg::rank;
use crate::exact::{ratio, rat, MatrixQ, Rational, VectorQ};
use crate::fixtures::{four_ray_facets, four_ray_generators, pentagon};
use crate::par::{self, Execution};
use crate::projection::{
    atom_projection, enumerate_order_projections, extension_supports, is_projection_band, restriction_decomposition,
};
use crate::random::{self, Rng};
use crate::seqspace::{
    b_element, seq_b_complement_witness, seq_decompose_bc, seq_in_subspace, seq_is_member, seq_join_in_b,
    seq_join_in_c, seq_nonpervasive_witness, x_n, JoinOutcome, Part, SeqElement, SeqWitness,
};
use crate::subspace::Subspace;

/// Failure messages kept per suite; further failures are only counted.
const MAX_MESSAGES: usize = 20;

#[derive(Clone, Debug)]
pub struct Options {
    /// Suite name or number; `None` runs everything.
    pub filter: Option<String>,
    pub seed: u64,
    pub exec: Execution,
    /// Replaces the first four-ray facet by a wrong one before building.
    pub corrupt_facets: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            filter: None,
            seed: 20240601,
            exec: Execution::default(),
            corrupt_facets: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteOutcome {
    pub id: u8,
    pub name: &'static str,
    pub checks: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub bound: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn within_bound(&self) -> bool {
        self.elapsed < self.bound
    }
}

#[derive(Default)]
pub struct Checker {
    checks: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Checker {
    pub fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.fail(what());
        }
    }

    pub fn eq<T: PartialEq + std::fmt::Debug>(&mut self, found: T, expected: T, what: impl Display) {
        self.checks += 1;
        if found != expected {
            self.fail(format!("{what}: expected {expected:?}, found {found:?}"));
        }
    }

    pub fn ok<T>(&mut self, r: Result<T>, what: impl Display) -> Option<T> {
        self.checks += 1;
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{what}: {e}"));
                None
            }
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_MESSAGES {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, other: Checker) {
        self.checks += other.checks;
        self.failed += other.failed;
        let room = MAX_MESSAGES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

struct Suite {
    id: u8,
    name: &'static str,
    bound_secs: u64,
    run: fn(&mut Checker, &Options),
}

const SUITES: [Suite; 9] = [
    Suite { id: 1, name: "four-ray", bound_secs: 5, run: four_ray_suite },
    Suite { id: 2, name: "simplicial", bound_secs: 30, run: simplicial_suite },
    Suite { id: 3, name: "dual-oracle", bound_secs: 30, run: dual_oracle_suite },
    Suite { id: 4, name: "band-calculus", bound_secs: 10, run: band_calculus_suite },
    Suite { id: 5, name: "pervasive-rdp", bound_secs: 60, run: pervasive_rdp_suite },
    Suite { id: 6, name: "extension-restriction", bound_secs: 5, run: extension_suite },
    Suite { id: 7, name: "sequence-space", bound_secs: 5, run: sequence_suite },
    Suite { id: 8, name: "suprema", bound_secs: 2, run: suprema_suite },
    Suite { id: 9, name: "atoms-discrete", bound_secs: 10, run: atoms_suite },
];

/// `(id, name)` of every suite.
pub fn suite_names() -> Vec<(u8, &'static str)> {
    SUITES.iter().map(|s| (s.id, s.name)).collect()
}

fn selected(suite: &Suite, filter: Option<&str>) -> bool {
    match filter {
        None => true,
        Some(f) => suite.name == f || suite.id.to_string() == f,
    }
}

fn run_one(suite: &Suite, opts: &Options) -> SuiteOutcome {
    let start = Instant::now();
    let mut c = Checker::default();
    (suite.run)(&mut c, opts);
    SuiteOutcome {
        id: suite.id,
        name: suite.name,
        checks: c.checks,
        failed: c.failed,
        failures: c.failures,
        elapsed: start.elapsed(),
        bound: Duration::from_secs(suite.bound_secs),
    }
}

/// Runs the selected suites; an unknown filter selects nothing.
pub fn run(opts: &Options) -> Vec<SuiteOutcome> {
    let chosen: Vec<&Suite> = SUITES.iter().filter(|s| selected(s, opts.filter.as_deref())).collect();
    par::map(opts.exec, &chosen, |s| run_one(s, opts))
}

/// Runs one suite by number.
pub fn run_suite(id: u8, opts: &Options) -> Option<SuiteOutcome> {
    SUITES.iter().find(|s| s.id == id).map(|s| run_one(s, opts))
}

/// Runs `body` for `count` seeds derived from the base seed, in parallel,
/// and merges the per-item checkers in order.
fn sweep(c: &mut Checker, opts: &Options, salt: u64, count: usize, body: impl Fn(&mut Checker, &mut Rng, usize) + Sync + Send) {
    let items: Vec<usize> = (0..count).collect();
    let parts = par::map(opts.exec, &items, |&i| {
        let mut local = Checker::default();
        let mut r = random::rng(opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (i as u64).wrapping_mul(0x2545_F491_4F6C_DD1D));
        body(&mut local, &mut r, i);
        local
    });
    for p in parts {
        c.absorb(p);
    }
}

fn v(xs: &[i64]) -> VectorQ {
    VectorQ::from_ints(xs)
}

fn sorted(mut xs: Vec<VectorQ>) -> Vec<VectorQ> {
    xs.sort();
    xs
}

fn span(s: &OrderedSpace, xs: &[VectorQ]) -> Subspace {
    Subspace::span(xs, s.dim()).expect("dimensions agree")
}

/// `P` maps the cone into itself, checked on generators.
fn positive_map(s: &OrderedSpace, p: &MatrixQ) -> bool {
    s.generators().iter().all(|g| s.in_cone(&p.mul_vec(g)))
}

fn four_ray_suite(c: &mut Checker, opts: &Options) {
    let gens = four_ray_generators();
    let mut facets = four_ray_facets();
    if opts.corrupt_facets {
        facets[0] = v(&[-1, -1, 2]);
    }
    let Some(s) = c.ok(build_space(3, Some(&gens), Some(&facets), "four-ray"), "building the four-ray space") else {
        return;
    };
    if let Some(computed) = c.ok(build_space(3, Some(&gens), None, "k4"), "facets from generators") {
        c.eq(sorted(computed.facets().to_vec()), sorted(four_ray_facets()), "recovered facet functionals");
    }
    c.eq(sorted(atoms(&s)), sorted(gens.clone()), "atoms");
    for k in 0..4 {
        if let Some(d) = c.ok(disjoint_complement(&s, &gens[k..=k]), "disjoint complement of a ray") {
            c.eq(d.carrier().clone(), span(&s, &gens[(k + 2) % 4..=(k + 2) % 4]), format_args!("{{v{}}}^d", k + 1));
        }
    }
    let d = &gens[0] + &gens[1];
    c.eq(is_discrete(&s, &d), Ok(true), "v1 + v2 is discrete");
    c.eq(is_atom(&s, &d), Ok(false), "v1 + v2 is an atom");

    if let Some(bands) = c.ok(enumerate_bands(&s, DEFAULT_BAND_CAP), "band enumeration") {
        let directed: Vec<&Band> = bands.iter().filter(|b| b.dim() == 1 && b.is_directed()).collect();
        c.eq(directed.len(), 4, "non-trivial directed bands");
        for g in &gens {
            c.check(directed.iter().any(|b| b.carrier() == &span(&s, std::slice::from_ref(g))), || {
                format!("span{{{g}}} missing among the directed bands")
            });
        }
        let extra: Vec<String> = bands
            .iter()
            .filter(|b| b.dim() == 1 && !b.is_directed())
            .map(|b| format!("span{{{}}}", b.carrier().basis()[0]))
            .collect();
        c.check(bands.len() == 6, || {
            format!(
                "band count: expected 6, found {} (additional non-directed bands {})",
                bands.len(),
                extra.join(", ")
            )
        });
    }
    // the two lines through (1,-1,0) and (1,1,0) are disjoint by the upper-set definition
    c.eq(disjoint_eq1_oracle(&s, &v(&[1, -1, 0]), &v(&[1, 1, 0])), Ok(true), "(1,-1,0) ⊥ (1,1,0) by upper sets");

    if let Some(ps) = c.ok(enumerate_order_projections(&s, DEFAULT_BAND_CAP), "order projections") {
        let mats: Vec<Option<MatrixQ>> = ps.into_iter().map(|p| p.matrix).collect();
        c.eq(mats, vec![Some(MatrixQ::zeros(3, 3)), Some(MatrixQ::identity(3))], "order projections");
    }

    if let Some(cls) = c.ok(classify(&s), "classify") {
        c.check(!cls.lattice && !cls.pervasive && !cls.fordable && !cls.rdp, || {
            format!("classification flags should all be false: {cls:?}")
        });
        c.eq(cls.atoms, 4, "atom count");
        match &cls.weakly_pervasive {
            WeakPervasive::Violated(b, d) => {
                c.check(s.is_positive(b) && s.is_positive(d), || "certificate not positive".into());
                c.eq(is_disjoint(&s, b, d), Ok(false), "certificate pair disjointness");
                c.eq(has_common_lower_bound(&s, b, d), Ok(false), "common lower bound of the certificate");
            }
            other => c.fail(format!("weak pervasiveness should be violated, found {other:?}")),
        }
        c.eq(
            cls.rdp_witness.clone(),
            Some(RdpWitness {
                x1: gens[0].clone(),
                x2: gens[2].clone(),
                z: gens[1].clone(),
            }),
            "stored Riesz decomposition witness",
        );
    }
    c.eq(pervasive_witness_check(&s, &v(&[-1, -1, -1])), Ok(PervasiveCheck::NoWitness), "pervasiveness witness for (-1,-1,-1)");
    c.eq(rdp_split(&s, &gens[0], &gens[2], &gens[1]), Ok(RdpOutcome::NoSplit), "split of v2 below v1 + v3");
}

fn simplicial_suite(c: &mut Checker, opts: &Options) {
    sweep(c, opts, 2, 200, |c, r, i| {
        let n = 1 + i % 6;
        let s = random::simplicial_space(r, n);
        if let Some(cls) = c.ok(classify(&s), "classify") {
            c.check(
                cls.lattice && cls.pervasive && cls.fordable && cls.rdp && cls.weakly_pervasive == WeakPervasive::Holds,
                || format!("simplicial space {:?} not classified as a lattice: {cls:?}", s.generators()),
            );
            c.eq(cls.atoms, n, "atom count");
        }
        let x = random::int_vector(r, n, 4);
        let y = random::int_vector(r, n, 4);
        let xp = random::positive_element(r, &s);
        for a in atoms(&s) {
            for z in [&x, &xp] {
                if let Some(dec) = c.ok(decompose_by_atom(&s, z, &a), "atomic decomposition") {
                    c.eq(&dec.atom_part + &dec.disjoint_part, z.clone(), "parts sum to the input");
                    c.eq(dec.atom_part.clone(), a.scale(&dec.lambda), "atom part is a multiple of the atom");
                    c.eq(is_disjoint(&s, &dec.atom_part, &dec.disjoint_part), Ok(true), "parts are disjoint");
                }
            }
            if let Some(dec) = c.ok(decompose_by_atom(&s, &xp, &a), "atomic decomposition") {
                c.eq(lambda_closed_form(&s, &xp, &a), Ok(dec.lambda.clone()), "closed-form lambda");
                c.eq(lambda_by_lp(&s, &xp, &a), Ok(dec.lambda.clone()), "LP lambda");
                c.eq(atom_lambda(&s, &xp, &a), Ok(dec.lambda.clone()), "atom_lambda");
            }
            if let Some(Some(p)) = c.ok(atom_projection(&s, &a), "atom projection") {
                let rest = MatrixQ::identity(n).sub(&p).expect("square");
                c.check(p.mul(&p).ok() == Some(p.clone()), || "atom projection is not idempotent".into());
                c.check(positive_map(&s, &p) && positive_map(&s, &rest), || "atom projection is not an order projection".into());
                c.eq(p.mul_vec(&a), a.clone(), "projection fixes the atom");
                if let (Ok(dx), Ok(dy), Ok(dxy)) = (
                    decompose_by_atom(&s, &x, &a),
                    decompose_by_atom(&s, &y, &a),
                    decompose_by_atom(&s, &(&x + &y), &a),
                ) {
                    c.eq(p.mul_vec(&x), dx.atom_part.clone(), "projection agrees with the decomposition");
                    c.eq(dxy.atom_part, &dx.atom_part + &dy.atom_part, "atom part is additive");
                }
            } else {
                c.fail(format!("principal band of atom {a} is not a projection band"));
            }
            if let Some(b) = c.ok(band_of(&s, &a), "principal band") {
                c.eq(b.carrier().clone(), span(&s, std::slice::from_ref(&a)), "principal band of an atom");
            }
        }
        if let Some(bands) = c.ok(enumerate_bands(&s, DEFAULT_BAND_CAP), "band enumeration") {
            c.eq(bands.len(), 1 << n, "number of bands");
            for b in &bands {
                let (Some(pb), Some(comp)) = (
                    c.ok(is_projection_band(&s, b), "projection band test"),
                    c.ok(disjoint_complement_of(&s, b.carrier()), "complement"),
                ) else {
                    continue;
                };
                c.check(pb.is_projection_band, || format!("band {:?} is not a projection band", b.zero_set()));
                if let Some(pc) = c.ok(is_projection_band(&s, &comp), "projection band test") {
                    c.eq(pc.is_projection_band, pb.is_projection_band, "B projection band iff B^d is");
                }
            }
        }
    });
}

/// A pair from one of three families: unrelated vectors, a band element
/// with an element of its complement, two elements of coordinate kernels.
fn oracle_pair(r: &mut Rng, s: &OrderedSpace, kind: usize) -> (VectorQ, VectorQ) {
    use rand::RngExt;
    let subset = |r: &mut Rng| -> Vec<usize> { (0..s.m()).filter(|_| r.random_bool(0.5)).collect() };
    match kind % 3 {
        0 => (random::int_vector(r, s.dim(), 3), random::int_vector(r, s.dim(), 3)),
        1 => {
            let b = restrict_band(s, &subset(r)).expect("indices in range");
            let d = disjoint_complement_of(s, &b).expect("dimensions agree");
            (random::element_of(r, &b), random::element_of(r, d.carrier()))
        }
        _ => {
            let b1 = restrict_band(s, &subset(r)).expect("indices in range");
            let b2 = restrict_band(s, &subset(r)).expect("indices in range");
            (random::element_of(r, &b1), random::element_of(r, &b2))
        }
    }
}

fn dual_oracle_suite(c: &mut Checker, opts: &Options) {
    sweep(c, opts, 3, 50, |c, r, _| {
        let s = random::mixed_space(r);
        let (mut disjoint, mut overlapping) = (0, 0);
        for k in 0..500 {
            let (x, y) = oracle_pair(r, &s, k);
            let (Some(a), Some(b)) = (
                c.ok(is_disjoint(&s, &x, &y), "support test"),
                c.ok(disjoint_eq1_oracle(&s, &x, &y), "upper-set test"),
            ) else {
                continue;
            };
            c.check(a == b, || format!("oracles disagree on {x} and {y} in {:?}: support {a}, upper sets {b}", s.facets()));
            if a {
                disjoint += 1;
            } else {
                overlapping += 1;
            }
        }
        c.check(disjoint > 0 && overlapping > 0, || format!("degenerate sample: {disjoint} disjoint, {overlapping} not"));
    });
}

fn band_calculus_suite(c: &mut Checker, opts: &Options) {
    sweep(c, opts, 4, 100, |c, r, _| {
        let s = random::mixed_space(r);
        let d = random::subspace(r, s.dim());
        let Some(dd1) = c.ok(disjoint_complement_of(&s, &d), "D^d") else { return };
        let Some(dd2) = c.ok(disjoint_complement_of(&s, dd1.carrier()), "D^dd") else { return };
        let Some(dd3) = c.ok(disjoint_complement_of(&s, dd2.carrier()), "D^ddd") else { return };
        c.check(d.is_subspace_of(dd2.carrier()), || format!("D = {:?} not inside D^dd", d.basis()));
        c.eq(dd1.carrier().clone(), dd3.carrier().clone(), "D^d = D^ddd");
        c.eq(is_band(&s, dd1.carrier()), Ok(true), "D^d is a band");
        c.eq(is_band(&s, dd2.carrier()), Ok(true), "D^dd is a band");
    });
}

fn pervasive_rdp_suite(c: &mut Checker, opts: &Options) {
    let four = crate::fixtures::four_ray();
    if let Some(cls) = c.ok(classify(&four), "classify four-ray") {
        match cls.rdp_witness {
            Some(w) => c.eq(rdp_split(&four, &w.x1, &w.x2, &w.z), Ok(RdpOutcome::NoSplit), "four-ray witness triple"),
            None => c.fail("four-ray space has no stored Riesz decomposition witness".into()),
        }
    }
    sweep(c, opts, 5, 100, |c, r, _| {
        use rand::RngExt;
        let s = random::mixed_space(r);
        let Some(cls) = c.ok(classify(&s), "classify") else { return };
        let simplicial = s.generators().len() == s.dim() && rank(s.generators(), s.dim()) == s.dim();
        c.check(cls.lattice == simplicial && cls.pervasive == cls.lattice && cls.rdp == cls.lattice, || {
            format!("lattice/pervasive/RDP flags disagree for {:?}: {cls:?}", s.generators())
        });
        c.check(!cls.pervasive || cls.fordable, || "pervasive but not fordable".into());
        if !cls.pervasive {
            match &cls.non_pervasive_witness {
                Some(b) => c.eq(pervasive_witness_check(&s, b), Ok(PervasiveCheck::NoWitness), "non-pervasiveness certificate"),
                None => c.fail(format!("no non-pervasiveness certificate for {:?}", s.generators())),
            }
        }
        if let Some(w) = &cls.rdp_witness {
            c.eq(rdp_split(&s, &w.x1, &w.x2, &w.z), Ok(RdpOutcome::NoSplit), "stored witness triple");
        }
        for _ in 0..20 {
            let x1 = random::strictly_positive_element(r, &s);
            let x2 = random::strictly_positive_element(r, &s);
            let w = random::strictly_positive_element(r, &s);
            let sum = &x1 + &x2;
            let Some(t) = c.ok(lambda_closed_form(&s, &sum, &w), "largest multiple below x1 + x2") else { continue };
            let z = w.scale(&(t * ratio(1, r.random_range(1..=3))));
            match c.ok(rdp_split(&s, &x1, &x2, &z), "split probe") {
                Some(RdpOutcome::Split { z1, z2 }) => {
                    let valid = &z1 + &z2 == z
                        && s.in_cone(&z1)
                        && s.in_cone(&z2)
                        && leq(&s, &z1, &x1).unwrap_or(false)
                        && leq(&s, &z2, &x2).unwrap_or(false);
                    c.check(valid, || format!("invalid split of {z} below {x1} + {x2}"));
                }
                Some(RdpOutcome::NoSplit) => {
                    c.check(!cls.rdp, || format!("no split of {z} below {x1} + {x2} in a lattice"));
                }
                None => {}
            }
        }
    });
}

fn extension_suite(c: &mut Checker, opts: &Options) {
    let four = crate::fixtures::four_ray();
    if let Some(b) = c.ok(restrict_band(&four, &[1, 2]), "restriction of {2,3}") {
        c.eq(b.clone(), span(&four, &[v(&[1, 0, 1])]), "restrict({2,3})");
        if let Some(band) = c.ok(Band::from_subspace(&four, &b), "span{v1} as a band") {
            c.eq(is_projection_band(&four, &band).map(|p| p.is_projection_band), Ok(false), "span{v1} projection band");
        }
    }
    if let Some(rep) = c.ok(restriction_decomposition(&four, &[1, 2]), "four-ray restriction report") {
        c.check(!rep.decomposes, || "span{v1} and its complement span the four-ray space".into());
    }
    sweep(c, opts, 6, 20, |c, r, i| {
        use rand::RngExt;
        let s = random::simplicial_space(r, 1 + i % 5);
        let m = s.m();
        let Some(bands) = c.ok(enumerate_bands(&s, DEFAULT_BAND_CAP), "band enumeration") else { return };
        for b in &bands {
            let Some((e, ed)) = c.ok(extension_supports(&s, b), "extension supports") else { continue };
            let mut all: Vec<usize> = e.iter().chain(&ed).copied().collect();
            all.sort_unstable();
            c.eq(all, (0..m).collect::<Vec<_>>(), "extensions of B and B^d have complementary supports");
            c.eq(restrict_band(&s, &e).ok(), Some(b.carrier().clone()), "restrict(extend(B)) = B");
        }
        for _ in 0..4 {
            let j: Vec<usize> = (0..m).filter(|_| r.random_bool(0.5)).collect();
            if let Some(rb) = c.ok(restrict_band(&s, &j), "restriction") {
                if let Some(band) = c.ok(Band::from_subspace(&s, &rb), "restriction is a band") {
                    c.eq(extend_band(&s, &band), j.clone(), "extend(restrict(J)) = J");
                }
            }
            if let Some(rep) = c.ok(restriction_decomposition(&s, &j), "restriction report") {
                c.check(rep.majorizing && rep.complement_majorizing && rep.decomposes, || {
                    format!("restriction of {j:?} does not split a lattice: {rep:?}")
                });
            }
        }
    });
}

/// `sum_{k>=2} x_{-k} / 2^k`, summed directly over the explicit range.
fn deep_weighted_sum(x: &SeqElement) -> Rational {
    let lowest = x.entries().keys().next().copied().unwrap_or(0).min(x.tail_start());
    let mut total = Rational::zero();
    let mut weight = ratio(1, 4);
    for k in (lowest..=-2).rev() {
        total += x.value_at(k) * &weight;
        weight /= rat(2);
    }
    total
}

fn sequence_suite(c: &mut Checker, opts: &Options) {
    let (x1, x2) = (x_n(1), x_n(2));
    match c.ok(seq_join_in_c(&x1, &x2), "upper bound of x^(1), x^(2) in C") {
        Some(JoinOutcome::ProvedNone(SeqWitness::NonDirected { infimum })) => {
            c.eq(infimum.clone(), ratio(3, 4), "infimum certificate");
            let looser = ratio(1, 2) + ratio(1, 4) - ratio(2, 8);
            c.check(infimum >= looser && looser.is_positive(), || "certificate below the 1/2 bound".into());
        }
        other => c.fail(format!("expected a non-directedness proof, found {other:?}")),
    }
    c.eq(seq_b_complement_witness(), Ok(SeqWitness::NonDisjoint { index: -1 }), "C is not B^d");
    c.eq((b_element().value_at(-1), x1.value_at(-1)), (rat(1), rat(1)), "values at -1");
    c.eq(seq_nonpervasive_witness(), Ok(SeqWitness::NonPervasive), "non-pervasiveness");
    sweep(c, opts, 7, 100, |c, r, _| {
        use rand::RngExt;
        let x = random::seq_member(r);
        let y = random::seq_member(r);
        c.check(seq_is_member(&x.add(&y)), || "membership not closed under addition".into());
        let q = ratio(r.random_range(-5..=5), r.random_range(1..=4));
        c.check(seq_is_member(&x.scale(&q)), || "membership not closed under scaling".into());
        c.check(seq_is_member(&y.sub(&x)), || "membership not closed under subtraction".into());
        if let Some((b, cc)) = c.ok(seq_decompose_bc(&x), "B ⊕ C split") {
            c.eq(b.add(&cc), x.clone(), "b + c = x");
            c.eq(seq_in_subspace(&b, Part::B), Ok(true), "b in B");
            c.eq(seq_in_subspace(&cc, Part::C), Ok(true), "c in C");
            c.eq(b.value_at(-1), rat(2) * x.tail_value(), "b_{-1} = 2 L");
            c.eq(cc.value_at(-1), -rat(2) * deep_weighted_sum(&x), "c_{-1} = -2 sum_{k>=2} x_{-k}/2^k");
            let delta = ratio(r.random_range(1..=5), r.random_range(1..=3));
            let mut shifted = b.entries().clone();
            *shifted.entry(-1).or_insert_with(Rational::zero) += &delta;
            let b2 = SeqElement::new(shifted, b.tail_start(), b.tail_value().clone()).expect("same keys");
            c.check(!seq_is_member(&b2), || "perturbed B part is still a member".into());
        }
        let a = random::seq_b_member(r);
        let b = random::seq_b_member(r);
        if let Some(m) = c.ok(seq_join_in_b(&a, &b), "upper bound in B") {
            c.check(a.leq(&m) && b.leq(&m), || "pointwise max is not an upper bound".into());
        }
    });
}

fn suprema_suite(c: &mut Checker, opts: &Options) {
    let four = crate::fixtures::four_ray();
    let g = four_ray_generators();
    c.eq(sup_in_x(&four, &[g[0].clone(), g[2].clone()]), Ok(Some(v(&[0, 0, 2]))), "sup{v1, v3}");
    c.eq(sup_in_x(&four, &[g[0].clone(), g[1].clone()]), Ok(None), "sup{v1, v2}");
    sweep(c, opts, 8, 30, |c, r, i| {
        use rand::RngExt;
        let s = random::simplicial_space(r, 1 + i % 5);
        let k = r.random_range(1..=4);
        let m: Vec<VectorQ> = (0..k).map(|_| random::rational_vector(r, s.dim(), 4)).collect();
        let top = m
            .iter()
            .map(|x| s.rep().apply(x))
            .reduce(|a, b| a.pointwise_max(&b))
            .expect("nonempty");
        let Some(inv) = c.ok(s.rep().matrix().inverse(), "inverse facet matrix") else { return };
        let expected = inv.mul_vec(&top);
        c.eq(sup_in_x(&s, &m), Ok(Some(expected.clone())), "supremum in a lattice");
        c.check(m.iter().all(|x| leq(&s, x, &expected).unwrap_or(false)), || "supremum is not an upper bound".into());
    });
}

fn atoms_suite(c: &mut Checker, opts: &Options) {
    let four = crate::fixtures::four_ray();
    for s in [&four, &pentagon()] {
        for a in atoms(s) {
            c.eq(is_discrete(s, &a), Ok(true), format_args!("atom {a} of {} is discrete", s.name()));
        }
    }
    let g = four_ray_generators();
    c.check(rank(&g[..2], 3) == 2 && !is_disjoint(&four, &g[0], &g[1]).unwrap_or(true), || {
        "v1, v2 should be independent and not disjoint".into()
    });
    sweep(c, opts, 9, 30, |c, r, _| {
        let s = random::mixed_space(r);
        for a in atoms(&s) {
            c.eq(is_discrete(&s, &a), Ok(true), format_args!("atom {a} is discrete"));
        }
    });
    sweep(c, opts, 10, 40, |c, r, i| {
        let n = 1 + i % 5;
        let s = random::simplicial_space(r, n);
        let ats = atoms(&s);
        let mut samples: Vec<VectorQ> = ats.iter().map(|a| a.scale(&rat(2))).collect();
        for i in 0..ats.len() {
            for j in i + 1..ats.len() {
                samples.push(&ats[i] + &ats[j]);
            }
        }
        samples.push(random::strictly_positive_element(r, &s));
        for x in &samples {
            c.eq(is_discrete(&s, x), is_atom(&s, x), format_args!("discrete iff atom at {x}"));
        }
        for (i, a) in ats.iter().enumerate() {
            let image = embed(&s, a).expect("dimensions agree").0;
            c.check(image.support().len() == 1 && image.is_nonneg(), || format!("image of atom {a} is not on a coordinate ray"));
            let e = VectorQ::unit(s.m(), i);
            if let Some(pre) = s.rep().preimage(&e) {
                c.eq(is_atom(&s, &pre), Ok(true), "preimage of a coordinate direction is an atom");
            }
            c.eq(principal_ideal_member(&s, &a.scale(&rat(-3)), a), Ok(true), "multiples lie in the principal ideal");
            for (j, b) in ats.iter().enumerate() {
                if i == j {
                    continue;
                }
                c.eq(principal_ideal_member(&s, &(a + b), a), Ok(false), "principal ideal of an atom is its span");
                let independent = rank(&[a.clone(), b.clone()], n) == 2;
                c.eq(is_disjoint(&s, a, b), Ok(independent), "atoms disjoint iff independent");
            }
        }
        c.eq(rank(&ats, n), ats.len(), "pairwise independent atoms are independent");
    });
}
