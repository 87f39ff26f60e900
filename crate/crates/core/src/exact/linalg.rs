//! Exact linear solving, kernels and canonical subspace bases.

use num_traits::Zero;

use super::matrix::{rref_in_place, MatrixQ};
use super::rational::Rational;
use super::vector::VectorQ;
use crate::error::{check_dim, Result};

/// Solves `a * x = b`. Free variables are set to zero; `None` when the
/// system is inconsistent.
pub fn solve_linear(a: &MatrixQ, b: &VectorQ) -> Result<Option<VectorQ>> {
    check_dim(a.nrows(), b.dim())?;
    let n = a.ncols();
    let mut aug: Vec<Vec<Rational>> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.entries().to_vec();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut aug, n);
    if aug[pivots.len()..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Ok(Some(VectorQ::new(x)))
}

/// Canonical basis of `{x : a * x = 0}`.
pub fn nullspace(a: &MatrixQ) -> Vec<VectorQ> {
    let n = a.ncols();
    let (r, pivots) = a.rref();
    let mut basis = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, f).clone();
        }
        basis.push(VectorQ::new(v));
    }
    canonical_basis(&basis, n)
}

/// Canonical basis of the span of `vectors` in dimension `n`: the nonzero
/// rows of the reduced row echelon form, each scaled to a primitive integer
/// vector. Leading entries are positive, so equal subspaces get identical
/// bases.
pub fn canonical_basis(vectors: &[VectorQ], n: usize) -> Vec<VectorQ> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let pivots = rref_in_place(&mut rows, n);
    rows.truncate(pivots.len());
    rows.into_iter()
        .map(|r| VectorQ::new(r).primitive())
        .collect()
}

pub fn rank(vectors: &[VectorQ], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    rref_in_place(&mut rows, n).len()
}

/// Coefficients `c` with `sum c_i * basis_i = x`, if `x` lies in the span.
pub fn coordinates_in(basis: &[VectorQ], x: &VectorQ) -> Result<Option<VectorQ>> {
    let a = MatrixQ::from_columns(basis, x.dim())?;
    solve_linear(&a, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn four_ray_facets() -> MatrixQ {
        MatrixQ::from_ints(&[&[-1, -1, 1], &[1, -1, 1], &[1, 1, 1], &[-1, 1, 1]])
    }

    #[test]
    fn identity_system() {
        let b = VectorQ::from_ints(&[1, 2, 3]);
        assert_eq!(solve_linear(&MatrixQ::identity(3), &b).unwrap(), Some(b));
    }

    #[test]
    fn four_ray_nonpervasive_witness_solve() {
        // Gaussian elimination by hand: -x-y+z=1, x-y+z=-1, x+y+z=-3,
        // -x+y+z=-1 gives x=-1, y=-1, z=-1.
        let b = VectorQ::from_ints(&[1, -1, -3, -1]);
        let x = solve_linear(&four_ray_facets(), &b).unwrap();
        assert_eq!(x, Some(VectorQ::from_ints(&[-1, -1, -1])));
    }

    #[test]
    fn inconsistent_system() {
        let a = MatrixQ::from_ints(&[&[1, 0], &[1, 0]]);
        assert_eq!(solve_linear(&a, &VectorQ::from_ints(&[0, 1])).unwrap(), None);
        assert!(solve_linear(&a, &VectorQ::from_ints(&[0])).is_err());
    }

    #[test]
    fn free_variables_are_zero() {
        let a = MatrixQ::from_ints(&[&[1, 1, 0]]);
        let x = solve_linear(&a, &VectorQ::from_ints(&[5])).unwrap().unwrap();
        assert_eq!(x, VectorQ::from_ints(&[5, 0, 0]));
    }

    #[test]
    fn nullspace_examples() {
        let z = MatrixQ::zeros(1, 2);
        assert_eq!(
            nullspace(&z),
            vec![VectorQ::from_ints(&[1, 0]), VectorQ::from_ints(&[0, 1])]
        );
        let f = four_ray_facets();
        assert!(nullspace(&f.select_rows([1, 2, 3])).is_empty());
        assert_eq!(
            nullspace(&f.select_rows([0, 3])),
            vec![VectorQ::from_ints(&[1, 0, 1])]
        );
    }

    #[test]
    fn canonical_basis_is_syntactic() {
        let a = vec![VectorQ::from_ints(&[2, 0, 2]), VectorQ::from_ints(&[0, 3, 0])];
        let b = vec![VectorQ::from_ints(&[1, 1, 1]), VectorQ::from_ints(&[-1, 2, -1])];
        assert_eq!(canonical_basis(&a, 3), canonical_basis(&b, 3));
        let c = coordinates_in(&a, &VectorQ::from_ints(&[4, 3, 4])).unwrap().unwrap();
        assert_eq!(c.entries(), &[rat(2), rat(1)]);
    }
}
