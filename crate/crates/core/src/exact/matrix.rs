use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::vector::VectorQ;
use crate::error::{check_dim, Error, Result};

/// Dense rectangular matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<VectorQ>", try_from = "Vec<VectorQ>")]
pub struct MatrixQ {
    rows: Vec<VectorQ>,
    ncols: usize,
}

impl MatrixQ {
    /// All rows must have length `ncols`.
    pub fn from_rows(rows: Vec<VectorQ>, ncols: usize) -> Result<Self> {
        for r in &rows {
            check_dim(ncols, r.dim())?;
        }
        Ok(MatrixQ { rows, ncols })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| VectorQ::from_ints(r)).collect();
        MatrixQ::from_rows(rows, ncols).expect("ragged integer matrix")
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        MatrixQ {
            rows: vec![VectorQ::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        MatrixQ {
            rows: (0..n).map(|i| VectorQ::unit(n, i)).collect(),
            ncols: n,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[VectorQ], nrows: usize) -> Result<Self> {
        for c in cols {
            check_dim(nrows, c.dim())?;
        }
        let rows = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(MatrixQ {
            rows,
            ncols: cols.len(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &VectorQ {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[VectorQ] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> VectorQ {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> MatrixQ {
        MatrixQ {
            rows: idx.into_iter().map(|i| self.rows[i].clone()).collect(),
            ncols: self.ncols,
        }
    }

    pub fn transpose(&self) -> MatrixQ {
        MatrixQ {
            rows: (0..self.ncols).map(|j| self.column(j)).collect(),
            ncols: self.nrows(),
        }
    }

    pub fn mul_vec(&self, x: &VectorQ) -> VectorQ {
        debug_assert_eq!(self.ncols, x.dim());
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn checked_mul_vec(&self, x: &VectorQ) -> Result<VectorQ> {
        check_dim(self.ncols, x.dim())?;
        Ok(self.mul_vec(x))
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        check_dim(self.ncols, other.nrows())?;
        let cols: Vec<VectorQ> = (0..other.ncols).map(|j| other.column(j)).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|c| r.dot(c)).collect())
            .collect();
        Ok(MatrixQ {
            rows,
            ncols: other.ncols,
        })
    }

    pub fn sub(&self, other: &MatrixQ) -> Result<MatrixQ> {
        check_dim(self.nrows(), other.nrows())?;
        check_dim(self.ncols, other.ncols)?;
        Ok(MatrixQ {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a - b).collect(),
            ncols: self.ncols,
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.entries().to_vec()).collect();
        let pivots = rref_in_place(&mut a, self.ncols);
        let rows = a.into_iter().map(VectorQ::new).collect();
        (
            MatrixQ {
                rows,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<MatrixQ> {
        let n = self.nrows();
        check_dim(n, self.ncols)?;
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.entries().to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut a, n);
        if pivots.len() < n {
            return Err(Error::Invariant("matrix is singular".into()));
        }
        let rows = a.into_iter().map(|r| VectorQ::new(r[n..].to_vec())).collect();
        Ok(MatrixQ { rows, ncols: n })
    }
}

/// Gauss-Jordan elimination restricted to the first `pivot_cols` columns;
/// returns the pivot columns. Rows beyond the rank end up zero.
pub(crate) fn rref_in_place(a: &mut [Vec<Rational>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl From<MatrixQ> for Vec<VectorQ> {
    fn from(m: MatrixQ) -> Self {
        m.rows
    }
}

impl TryFrom<Vec<VectorQ>> for MatrixQ {
    type Error = Error;

    fn try_from(rows: Vec<VectorQ>) -> Result<Self> {
        let ncols = rows.first().map_or(0, VectorQ::dim);
        MatrixQ::from_rows(rows, ncols)
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn inverse_of_small_matrix() {
        let m = MatrixQ::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, MatrixQ::from_ints(&[&[1, -1], &[-1, 2]]));
        assert_eq!(m.mul(&inv).unwrap(), MatrixQ::identity(2));
        assert!(MatrixQ::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn rref_and_rank() {
        let m = MatrixQ::from_ints(&[&[2, 4, 2], &[1, 2, 3]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r.row(0), &VectorQ::from_ints(&[1, 2, 0]));
        assert_eq!(m.rank(), 2);
        let half = MatrixQ::from_rows(vec![VectorQ::new(vec![ratio(1, 2)])], 1).unwrap();
        assert_eq!(half.rank(), 1);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![VectorQ::from_ints(&[1, 2]), VectorQ::from_ints(&[1])];
        assert!(MatrixQ::from_rows(rows, 2).is_err());
    }
}
