//! The facet-functional vector lattice cover.
//!
//! A space with facet functionals `f_1..f_m` embeds into `Q^m` by
//! `x -> (f_1(x), .., f_m(x))`. `Q^m` carries the coordinatewise order, so
//! every lattice operation in the cover is a coordinatewise min/max/abs.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::OrderedSpace;
use crate::error::{check_dim, Result};
use crate::exact::{lp, nullspace, solve_linear, LpOutcome, MatrixQ, Polyhedron, Rational, Sense, VectorQ};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalRep {
    f: MatrixQ,
    /// Basis of the left kernel of `f`: `r . y = 0` for every `y` in the range.
    range_relations: Vec<VectorQ>,
}

impl FunctionalRep {
    pub fn new(facets: &[VectorQ], n: usize) -> Result<FunctionalRep> {
        let f = MatrixQ::from_rows(facets.to_vec(), n)?;
        let range_relations = nullspace(&f.transpose());
        Ok(FunctionalRep { f, range_relations })
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.f.nrows()
    }

    pub fn n(&self) -> usize {
        self.f.ncols()
    }

    pub fn range_relations(&self) -> &[VectorQ] {
        &self.range_relations
    }

    pub fn apply(&self, x: &VectorQ) -> VectorQ {
        self.f.mul_vec(x)
    }

    pub fn in_range(&self, y: &VectorQ) -> bool {
        self.range_relations.iter().all(|r| r.dot(y).is_zero())
    }

    /// The unique `x` with `F x = y`, if `y` is in the range.
    pub fn preimage(&self, y: &VectorQ) -> Option<VectorQ> {
        if y.dim() != self.m() || !self.in_range(y) {
            return None;
        }
        solve_linear(&self.f, y).ok().flatten()
    }

    /// `{z : F z >= w}`.
    pub fn lower_bounded(&self, w: VectorQ) -> Polyhedron {
        Polyhedron::new(self.f.clone(), w).expect("bound has one entry per functional")
    }

    /// Minimum of `f_j` over `{z : F z >= w}`; always attained because the
    /// minimum is bounded below by `w_j`.
    pub(crate) fn coordinate_min(&self, j: usize, w: &VectorQ) -> Rational {
        let p = self.lower_bounded(w.clone());
        match lp(self.f.row(j), &p, Sense::Minimize).expect("dimensions agree") {
            LpOutcome::Optimal { value, .. } => value,
            other => panic!("coordinate minimum over an upper-bound set gave {other:?}"),
        }
    }
}

/// An element of the cover `Q^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompletionElement(pub VectorQ);

impl CompletionElement {
    pub fn coords(&self) -> &VectorQ {
        &self.0
    }
}

pub fn embed(s: &OrderedSpace, x: &VectorQ) -> Result<CompletionElement> {
    check_dim(s.dim(), x.dim())?;
    Ok(CompletionElement(s.rep().apply(x)))
}

/// `{x, -x}^u` contains `{y, -y}^u`, i.e. `y` dominates `x` in the solid
/// sense. Decided exactly: for each functional `j`, the minimum of `f_j`
/// over `{z : F z >= |F y|}` must reach `|F x|_j`.
pub fn modulus_dominates(s: &OrderedSpace, x: &VectorQ, y: &VectorQ) -> Result<bool> {
    check_dim(s.dim(), x.dim())?;
    check_dim(s.dim(), y.dim())?;
    let rep = s.rep();
    let ax = rep.apply(x).abs();
    let ay = rep.apply(y).abs();
    upper_set_included(rep, &ay, &ax)
}

/// `{z : F z >= big} ⊆ {z : F z >= small}`.
pub(crate) fn upper_set_included(rep: &FunctionalRep, big: &VectorQ, small: &VectorQ) -> Result<bool> {
    for j in 0..rep.m() {
        // the constraint f_j(z) >= big_j already implies f_j(z) >= small_j
        if small[j] <= big[j] {
            continue;
        }
        if rep.coordinate_min(j, big) < small[j] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `y = inf {F x : F x >= y}` holds coordinatewise.
pub fn order_density_at(s: &OrderedSpace, y: &CompletionElement) -> Result<bool> {
    let rep = s.rep();
    check_dim(rep.m(), y.0.dim())?;
    Ok((0..rep.m()).all(|j| rep.coordinate_min(j, &y.0) == y.0[j]))
}

/// Whether some `d` in `d_space` has `f_j(d) >= 1` on `support` and
/// `f_j(d) = 0` elsewhere, so that the image of `d_space` majorizes the
/// coordinate band of `Q^m` supported on `support`.
pub fn is_majorizing(s: &OrderedSpace, d_space: &Subspace, support: &[usize]) -> Result<bool> {
    let rep = s.rep();
    check_dim(s.dim(), d_space.ambient())?;
    if let Some(&j) = support.iter().find(|&&j| j >= rep.m()) {
        return Err(crate::error::Error::DimensionMismatch {
            expected: rep.m(),
            found: j + 1,
        });
    }
    if support.is_empty() {
        return Ok(true);
    }
    let k = d_space.dim();
    if k == 0 {
        return Ok(false);
    }
    // rows of F B act on the coefficients of d in the basis B
    let fb = rep.matrix().mul(&d_space.basis_matrix())?;
    let mut p = Polyhedron::universe(k);
    for j in 0..rep.m() {
        let row = fb.row(j).clone();
        if support.contains(&j) {
            p.push_inequality(row, Rational::one())?;
        } else {
            p.push_equality(row, Rational::zero())?;
        }
    }
    Ok(crate::exact::feasible_point(&p)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::fixtures::{four_ray, simplex};

    fn v(xs: &[i64]) -> VectorQ {
        VectorQ::from_ints(xs)
    }

    #[test]
    fn embedding_examples() {
        let s = four_ray();
        assert_eq!(embed(&s, &v(&[1, 0, 1])).unwrap().0, v(&[0, 2, 2, 0]));
        assert_eq!(embed(&s, &v(&[1, 1, 2])).unwrap().0, v(&[0, 2, 4, 2]));
        let q = simplex(3);
        assert_eq!(embed(&q, &v(&[4, -1, 2])).unwrap().0, v(&[4, -1, 2]));
        assert!(embed(&q, &v(&[1, 2])).is_err());
    }

    #[test]
    fn range_relation_of_four_ray() {
        let s = four_ray();
        assert_eq!(s.rep().range_relations(), &[v(&[1, -1, 1, -1])]);
        assert!(!s.rep().in_range(&v(&[0, 2, 2, 2])));
        assert_eq!(s.rep().preimage(&v(&[2, 2, 2, 2])), Some(v(&[0, 0, 2])));
    }

    #[test]
    fn modulus_domination() {
        let s = four_ray();
        let y = v(&[1, 1, 2]);
        let half = y.scale(&ratio(1, 2));
        assert!(modulus_dominates(&s, &half, &y).unwrap());
        assert!(modulus_dominates(&s, &v(&[1, 0, 1]), &y).unwrap());
        assert!(!modulus_dominates(&s, &y, &v(&[1, 0, 1])).unwrap());
        let q = simplex(2);
        assert!(!modulus_dominates(&q, &v(&[1, 0]), &v(&[0, 1])).unwrap());
    }

    #[test]
    fn order_density_examples() {
        let s = four_ray();
        for y in [v(&[1, 0, 0, 0]), v(&[0, 2, 2, 0]), v(&[-3, 1, 0, 5])] {
            assert!(order_density_at(&s, &CompletionElement(y)).unwrap());
        }
        let image = embed(&s, &v(&[2, -1, 7])).unwrap();
        assert!(order_density_at(&s, &image).unwrap());
    }

    #[test]
    fn majorizing_examples() {
        let s = four_ray();
        assert!(is_majorizing(&s, &Subspace::full(3), &[0, 1, 2, 3]).unwrap());
        let line = Subspace::span(&[v(&[1, 0, 1])], 3).unwrap();
        assert!(is_majorizing(&s, &line, &[1, 2]).unwrap());
        assert!(!is_majorizing(&s, &line, &[2]).unwrap());
        assert!(!is_majorizing(&s, &Subspace::zero(3), &[0]).unwrap());
        assert!(is_majorizing(&s, &Subspace::zero(3), &[]).unwrap());
    }
}
