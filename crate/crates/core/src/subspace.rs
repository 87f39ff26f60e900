use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};
use crate::exact::linalg::{canonical_basis, coordinates_in, rank};
use crate::exact::{nullspace, MatrixQ, VectorQ};

/// Linear subspace of `Q^n` held by its canonical basis, so two subspaces
/// are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<VectorQ>,
}

impl Subspace {
    pub fn span(vectors: &[VectorQ], ambient: usize) -> Result<Subspace> {
        for v in vectors {
            check_dim(ambient, v.dim())?;
        }
        Ok(Subspace {
            ambient,
            basis: canonical_basis(vectors, ambient),
        })
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| VectorQ::unit(ambient, i)).collect(),
        }
    }

    /// `{x : a x = 0}`.
    pub fn kernel(a: &MatrixQ) -> Subspace {
        Subspace {
            ambient: a.ncols(),
            basis: nullspace(a),
        }
    }

    pub fn basis(&self) -> &[VectorQ] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn contains(&self, x: &VectorQ) -> bool {
        if x.dim() != self.ambient {
            return false;
        }
        if x.is_zero() {
            return true;
        }
        matches!(coordinates_in(&self.basis, x), Ok(Some(_)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace {
            ambient: self.ambient,
            basis: canonical_basis(&all, self.ambient),
        }
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = B c = C d  <=>  [B | -C] (c, d) = 0
        let k = self.dim();
        let mut cols: Vec<VectorQ> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| -v));
        if cols.is_empty() {
            return Subspace::zero(self.ambient);
        }
        let m = MatrixQ::from_columns(&cols, self.ambient).expect("ambient dimensions agree");
        let sols = nullspace(&m);
        let vecs: Vec<VectorQ> = sols
            .iter()
            .map(|s| {
                self.basis
                    .iter()
                    .zip(s.iter().take(k))
                    .fold(VectorQ::zeros(self.ambient), |acc, (b, c)| &acc + &b.scale(c))
            })
            .collect();
        Subspace {
            ambient: self.ambient,
            basis: canonical_basis(&vecs, self.ambient),
        }
    }

    /// `self` and `other` together give `Q^n` with trivial intersection.
    pub fn is_direct_complement(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.ambient && {
            let mut all = self.basis.clone();
            all.extend(other.basis.iter().cloned());
            rank(&all, self.ambient) == self.ambient
        }
    }

    pub fn basis_matrix(&self) -> MatrixQ {
        MatrixQ::from_columns(&self.basis, self.ambient).expect("basis vectors have ambient length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_syntactic() {
        let a = Subspace::span(&[VectorQ::from_ints(&[2, 0, 2])], 3).unwrap();
        let b = Subspace::span(&[VectorQ::from_ints(&[-1, 0, -1])], 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[VectorQ::from_ints(&[1, 0, 1])]);
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::span(&[VectorQ::unit(3, 0), VectorQ::unit(3, 1)], 3).unwrap();
        let yz = Subspace::span(&[VectorQ::unit(3, 1), VectorQ::unit(3, 2)], 3).unwrap();
        assert_eq!(
            xy.intersection(&yz),
            Subspace::span(&[VectorQ::unit(3, 1)], 3).unwrap()
        );
        assert!(xy.sum(&yz).is_full());
        assert!(!xy.is_direct_complement(&yz));
        let z = Subspace::span(&[VectorQ::unit(3, 2)], 3).unwrap();
        assert!(xy.is_direct_complement(&z));
        assert!(Subspace::zero(3).is_direct_complement(&Subspace::full(3)));
    }
}
