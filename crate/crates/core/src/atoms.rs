//! Atoms, discrete elements, the largest multiple of an atom below an
//! element, atomic decompositions and Riesz decomposition splits.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bands::{band_of, disjoint_complement, is_disjoint};
use crate::cone::OrderedSpace;
use crate::error::{Error, Result};
use crate::exact::linalg::coordinates_in;
use crate::exact::{lp, LpOutcome, MatrixQ, Polyhedron, Rational, Sense, VectorQ};
use crate::par::{self, Execution};

/// Largest support handled by [`is_discrete`] (it solves `2^|supp|` LPs).
pub const DISCRETE_SUPPORT_CAP: usize = 16;

/// Extreme rays of the cone: every atom is a positive multiple of one.
pub fn atoms(s: &OrderedSpace) -> Vec<VectorQ> {
    s.generators().to_vec()
}

pub fn is_atom(s: &OrderedSpace, x: &VectorQ) -> Result<bool> {
    s.check_vector(x)?;
    if !s.is_positive(x) {
        return Ok(false);
    }
    Ok(s.generators().contains(&x.primitive()))
}

/// Whether the cone is simplicial, i.e. the space is a vector lattice.
pub fn is_lattice(s: &OrderedSpace) -> bool {
    s.generators().len() == s.dim() && s.m() == s.dim()
}

/// Maximum of the coordinate sum of `F u` over `{u : 0 <= F u <= cap}` with
/// `f_j(u) = 0` for `j` outside `support`.
fn max_mass_below(s: &OrderedSpace, cap: &VectorQ, support: &[usize]) -> Result<(Rational, VectorQ)> {
    let f = s.rep().matrix();
    let mut p = Polyhedron::new(f.clone(), VectorQ::zeros(s.m()))?;
    for j in 0..s.m() {
        if support.contains(&j) {
            p.push_inequality(-f.row(j), -cap[j].clone())?;
        } else {
            p.push_equality(f.row(j).clone(), Rational::zero())?;
        }
    }
    let objective = support
        .iter()
        .fold(VectorQ::zeros(s.dim()), |acc, &j| &acc + f.row(j));
    match lp(&objective, &p, Sense::Maximize)? {
        LpOutcome::Optimal { value, point } => Ok((value, point)),
        other => Err(Error::Invariant(format!("bounded mass LP returned {other:?}"))),
    }
}

/// Whether the positive element `x` admits no two nonzero disjoint
/// positive elements below it.
///
/// Elements below `x` have images supported in `supp(F x)`; for every
/// nonempty subset `J` of that support an LP decides whether some nonzero
/// `0 <= u <= x` has image supported in `J`. `x` is discrete iff no two
/// disjoint such subsets are realizable.
pub fn is_discrete(s: &OrderedSpace, x: &VectorQ) -> Result<bool> {
    is_discrete_with(s, x, Execution::default())
}

pub fn is_discrete_with(s: &OrderedSpace, x: &VectorQ, exec: Execution) -> Result<bool> {
    s.check_vector(x)?;
    if !s.is_positive(x) {
        return Err(Error::NotPositive);
    }
    let fx = s.rep().apply(x);
    let supp = fx.support();
    if supp.len() > DISCRETE_SUPPORT_CAP {
        return Err(Error::CapExceeded {
            m: supp.len(),
            cap: DISCRETE_SUPPORT_CAP,
        });
    }
    let masks: Vec<u32> = (1..1u32 << supp.len()).collect();
    let realizable = par::map(exec, &masks, |&mask| {
        let js: Vec<usize> = supp
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &j)| j)
            .collect();
        max_mass_below(s, &fx, &js).map(|(v, _)| v.is_positive())
    })
    .into_iter()
    .collect::<Result<Vec<bool>>>()?;
    let feasible: Vec<u32> = masks
        .iter()
        .zip(&realizable)
        .filter(|(_, &r)| r)
        .map(|(&m, _)| m)
        .collect();
    let split = feasible
        .iter()
        .any(|a| feasible.iter().any(|b| a & b == 0));
    Ok(!split)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "point")]
pub enum PervasiveCheck {
    /// `0 < F x <= (F b)^+` for the returned `x`.
    Witness(VectorQ),
    /// No such `x`: `b` certifies that the space is not pervasive.
    NoWitness,
    /// `(F b)^+ = 0`.
    Inapplicable,
}

/// Looks for `x` with `0 < F x <= max(F b, 0)`.
pub fn pervasive_witness_check(s: &OrderedSpace, b: &VectorQ) -> Result<PervasiveCheck> {
    s.check_vector(b)?;
    let p = s.rep().apply(b).pointwise_max(&VectorQ::zeros(s.m()));
    if p.is_zero() {
        return Ok(PervasiveCheck::Inapplicable);
    }
    let all: Vec<usize> = (0..s.m()).collect();
    let (value, point) = max_mass_below(s, &p, &all)?;
    Ok(if value.is_positive() {
        PervasiveCheck::Witness(point)
    } else {
        PervasiveCheck::NoWitness
    })
}

/// `min f_j(x) / f_j(a)` over the functionals positive on `a`.
pub fn lambda_closed_form(s: &OrderedSpace, x: &VectorQ, a: &VectorQ) -> Result<Rational> {
    s.check_vector(x)?;
    s.check_vector(a)?;
    let fa = s.rep().apply(a);
    let fx = s.rep().apply(x);
    fa.iter()
        .zip(fx.iter())
        .filter(|(ai, _)| ai.is_positive())
        .map(|(ai, xi)| xi / ai)
        .min()
        .ok_or(Error::NotPositive)
}

/// `max {mu : mu a <= x}` by linear programming.
pub fn lambda_by_lp(s: &OrderedSpace, x: &VectorQ, a: &VectorQ) -> Result<Rational> {
    s.check_vector(x)?;
    s.check_vector(a)?;
    let fa = s.rep().apply(a);
    let fx = s.rep().apply(x);
    // -f_j(a) mu >= -f_j(x)
    let rows: Vec<VectorQ> = fa.iter().map(|v| VectorQ::new(vec![-v.clone()])).collect();
    let p = Polyhedron::new(MatrixQ::from_rows(rows, 1)?, -&fx)?;
    match lp(&VectorQ::new(vec![Rational::from_integer(1.into())]), &p, Sense::Maximize)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Unbounded => Err(Error::NotPositive),
        LpOutcome::Infeasible => Err(Error::PreconditionViolated(
            "no multiple of the atom lies below x".into(),
        )),
    }
}

/// The greatest `lambda` with `lambda a <= x`, for an atom `a` and a
/// positive `x` in a pervasive space. The closed form is cross-checked
/// against the LP value, and `x - lambda a` is checked to be positive and
/// disjoint from `a`.
pub fn atom_lambda(s: &OrderedSpace, x: &VectorQ, a: &VectorQ) -> Result<Rational> {
    s.check_vector(x)?;
    s.check_vector(a)?;
    if !is_lattice(s) {
        return Err(Error::NotPervasive);
    }
    if !is_atom(s, a)? {
        return Err(Error::NotAtom);
    }
    if !s.in_cone(x) {
        return Err(Error::NotPositive);
    }
    let lambda = lambda_closed_form(s, x, a)?;
    let by_lp = lambda_by_lp(s, x, a)?;
    if lambda != by_lp {
        return Err(Error::Invariant(format!(
            "closed-form lambda {lambda} differs from LP value {by_lp}"
        )));
    }
    let rest = x - &a.scale(&lambda);
    if !s.in_cone(&rest) || !is_disjoint(s, &rest, a)? {
        return Err(Error::Invariant(format!(
            "x - lambda a = {rest} is not a positive element disjoint from a"
        )));
    }
    Ok(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomDecomposition {
    #[serde(with = "crate::exact::rational::serde_rational")]
    pub lambda: Rational,
    pub atom_part: VectorQ,
    pub disjoint_part: VectorQ,
}

/// Splits `x` along `B_a ⊕ B_a^d` as `lambda a + w`.
pub fn decompose_by_atom(s: &OrderedSpace, x: &VectorQ, a: &VectorQ) -> Result<AtomDecomposition> {
    s.check_vector(x)?;
    if !is_atom(s, a)? {
        return Err(Error::NotAtom);
    }
    let ba = band_of(s, a)?;
    let bd = disjoint_complement(s, std::slice::from_ref(a))?;
    if !ba.carrier().is_direct_complement(bd.carrier()) {
        return Err(Error::NoDecomposition(format!(
            "B_a (dim {}) and its disjoint complement (dim {}) do not span the space",
            ba.dim(),
            bd.dim()
        )));
    }
    let mut basis = ba.carrier().basis().to_vec();
    basis.extend(bd.carrier().basis().iter().cloned());
    let coeffs = coordinates_in(&basis, x)?
        .ok_or_else(|| Error::Invariant("direct sum basis does not span".into()))?;
    let k = ba.dim();
    let combine = |range: std::ops::Range<usize>| {
        range.fold(VectorQ::zeros(s.dim()), |acc, i| &acc + &basis[i].scale(&coeffs[i]))
    };
    let atom_part = combine(0..k);
    let disjoint_part = combine(k..basis.len());
    let lambda = if atom_part.is_zero() {
        Rational::zero()
    } else {
        atom_part.multiple_of(a).ok_or_else(|| {
            Error::NoDecomposition("the principal band of the atom is not the line through it".into())
        })?
    };
    if !is_disjoint(s, &atom_part, &disjoint_part)? {
        return Err(Error::Invariant("decomposition parts are not disjoint".into()));
    }
    if is_lattice(s) && s.in_cone(x) {
        let expected = atom_lambda(s, x, a)?;
        if expected != lambda {
            return Err(Error::Invariant(format!(
                "decomposition coefficient {lambda} differs from the largest multiple {expected}"
            )));
        }
    }
    Ok(AtomDecomposition {
        lambda,
        atom_part,
        disjoint_part,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum RdpOutcome {
    Split { z1: VectorQ, z2: VectorQ },
    NoSplit,
}

/// Searches `z = z1 + z2` with `0 <= z1 <= x1` and `0 <= z2 <= x2`.
pub fn rdp_split(s: &OrderedSpace, x1: &VectorQ, x2: &VectorQ, z: &VectorQ) -> Result<RdpOutcome> {
    for v in [x1, x2, z] {
        s.check_vector(v)?;
        if !s.in_cone(v) {
            return Err(Error::PreconditionViolated(format!("{v} is not positive")));
        }
    }
    if !s.in_cone(&(&(x1 + x2) - z)) {
        return Err(Error::PreconditionViolated("z is not below x1 + x2".into()));
    }
    let f = s.rep().matrix();
    let fx1 = f.mul_vec(x1);
    let fz = f.mul_vec(z);
    let fzx2 = f.mul_vec(&(z - x2));
    let mut rows = Vec::with_capacity(4 * s.m());
    let mut rhs = Vec::with_capacity(4 * s.m());
    for j in 0..s.m() {
        let fj = f.row(j);
        rows.push(fj.clone());
        rhs.push(Rational::zero());
        rows.push(-fj);
        rhs.push(-fx1[j].clone());
        rows.push(-fj);
        rhs.push(-fz[j].clone());
        rows.push(fj.clone());
        rhs.push(fzx2[j].clone());
    }
    let p = Polyhedron::new(MatrixQ::from_rows(rows, s.dim())?, VectorQ::new(rhs))?;
    Ok(match crate::exact::feasible_point(&p)? {
        Some(z1) => {
            let z2 = z - &z1;
            RdpOutcome::Split { z1, z2 }
        }
        None => RdpOutcome::NoSplit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::fixtures::{four_ray, pentagon, simplex};

    fn v(xs: &[i64]) -> VectorQ {
        VectorQ::from_ints(xs)
    }

    #[test]
    fn atom_lists() {
        let s = four_ray();
        assert_eq!(atoms(&s).len(), 4);
        assert_eq!(atoms(&simplex(3)).len(), 3);
        assert_eq!(atoms(&pentagon()).len(), 5);
    }

    #[test]
    fn atom_membership() {
        let s = four_ray();
        assert!(is_atom(&s, &v(&[1, 0, 1])).unwrap());
        assert!(is_atom(&s, &v(&[3, 0, 3])).unwrap());
        assert!(!is_atom(&s, &v(&[1, 1, 2])).unwrap());
        assert!(!is_atom(&s, &v(&[-1, 0, -1])).unwrap());
        assert!(is_atom(&simplex(2), &v(&[2, 0])).unwrap());
        assert!(!is_atom(&simplex(2), &VectorQ::zeros(2)).unwrap());
    }

    #[test]
    fn discreteness() {
        let s = four_ray();
        assert!(is_discrete(&s, &v(&[1, 1, 2])).unwrap());
        assert!(is_discrete(&s, &v(&[1, 0, 1])).unwrap());
        // v1 + v3 dominates the disjoint pair v1, v3
        assert!(!is_discrete(&s, &v(&[0, 0, 2])).unwrap());
        assert!(!is_discrete(&simplex(2), &v(&[1, 1])).unwrap());
        assert_eq!(is_discrete(&s, &v(&[0, 0, -1])), Err(Error::NotPositive));
    }

    #[test]
    fn pervasive_witnesses() {
        let s = four_ray();
        assert_eq!(
            pervasive_witness_check(&s, &v(&[-1, -1, -1])).unwrap(),
            PervasiveCheck::NoWitness
        );
        match pervasive_witness_check(&simplex(2), &v(&[1, -1])).unwrap() {
            PervasiveCheck::Witness(x) => {
                assert!(x[0] > rat(0) && x[0] <= rat(1));
                assert_eq!(x[1], rat(0));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert_eq!(
            pervasive_witness_check(&s, &v(&[0, 0, -1])).unwrap(),
            PervasiveCheck::Inapplicable
        );
    }

    #[test]
    fn lambda_examples() {
        let q2 = simplex(2);
        assert_eq!(atom_lambda(&q2, &v(&[3, 5]), &v(&[1, 0])).unwrap(), rat(3));
        assert_eq!(atom_lambda(&q2, &v(&[0, 7]), &v(&[1, 0])).unwrap(), rat(0));
        let q3 = simplex(3);
        assert_eq!(atom_lambda(&q3, &v(&[1, 4, 2]), &v(&[0, 1, 0])).unwrap(), rat(4));
        assert_eq!(atom_lambda(&q3, &v(&[1, 4, 2]), &v(&[0, 2, 0])).unwrap(), rat(2));
        assert_eq!(
            atom_lambda(&four_ray(), &v(&[1, 0, 1]), &v(&[1, 0, 1])),
            Err(Error::NotPervasive)
        );
        assert_eq!(atom_lambda(&q2, &v(&[3, 5]), &v(&[1, 1])), Err(Error::NotAtom));
        assert_eq!(atom_lambda(&q2, &v(&[3, -5]), &v(&[1, 0])), Err(Error::NotPositive));
    }

    #[test]
    fn lambda_routes_agree_on_the_four_ray_cone() {
        let s = four_ray();
        let x = v(&[1, 1, 2]);
        let a = v(&[1, 0, 1]);
        assert_eq!(lambda_closed_form(&s, &x, &a).unwrap(), rat(1));
        assert_eq!(lambda_by_lp(&s, &x, &a).unwrap(), rat(1));
        let y = v(&[1, 1, 3]);
        assert_eq!(lambda_closed_form(&s, &y, &a).unwrap(), ratio(3, 2));
        assert_eq!(lambda_by_lp(&s, &y, &a).unwrap(), ratio(3, 2));
    }

    #[test]
    fn atomic_decompositions() {
        let d = decompose_by_atom(&simplex(2), &v(&[3, 5]), &v(&[1, 0])).unwrap();
        assert_eq!(d.lambda, rat(3));
        assert_eq!(d.atom_part, v(&[3, 0]));
        assert_eq!(d.disjoint_part, v(&[0, 5]));
        let d = decompose_by_atom(&simplex(3), &v(&[1, -2, 4]), &v(&[0, 0, 1])).unwrap();
        assert_eq!(d.atom_part, v(&[0, 0, 4]));
        assert_eq!(d.disjoint_part, v(&[1, -2, 0]));
        assert!(matches!(
            decompose_by_atom(&four_ray(), &v(&[0, 1, 1]), &v(&[1, 0, 1])),
            Err(Error::NoDecomposition(_))
        ));
    }

    #[test]
    fn riesz_decomposition() {
        let s = four_ray();
        assert_eq!(
            rdp_split(&s, &v(&[1, 0, 1]), &v(&[-1, 0, 1]), &v(&[0, 1, 1])).unwrap(),
            RdpOutcome::NoSplit
        );
        let x1 = v(&[1, 0, 1]);
        let x2 = v(&[0, 1, 1]);
        assert_eq!(
            rdp_split(&s, &x1, &x2, &(&x1 + &x2)).unwrap(),
            RdpOutcome::Split {
                z1: x1.clone(),
                z2: x2.clone()
            }
        );
        let q = simplex(2);
        assert!(matches!(
            rdp_split(&q, &v(&[2, 1]), &v(&[1, 3]), &v(&[3, 3])).unwrap(),
            RdpOutcome::Split { .. }
        ));
        assert!(matches!(
            rdp_split(&q, &v(&[1, 0]), &v(&[0, 1]), &v(&[2, 0])),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
