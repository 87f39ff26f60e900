//! Double description: extreme rays of `{x : A x >= 0}`.
//!
//! Rows are inserted in index order, starting from the first `n` rows that
//! raise the rank. Two rays are combined only if they are adjacent, which is
//! decided by the rank of the processed rows tight at both (`n - 2`).

use num_traits::{Signed, Zero};

use crate::exact::linalg::rank;
use crate::exact::{MatrixQ, Rational, VectorQ};

struct Ray {
    dir: VectorQ,
    /// processed rows on which the ray is tight
    zeros: Vec<usize>,
}

/// Extreme rays (primitive integer vectors) of the pointed cone
/// `{x : a x >= 0}`. Returns `None` when `a` has rank below the dimension,
/// i.e. the cone contains a line.
pub fn extreme_rays(a: &MatrixQ) -> Option<Vec<VectorQ>> {
    let n = a.ncols();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut initial = Vec::with_capacity(n);
    let mut chosen: Vec<VectorQ> = Vec::with_capacity(n);
    for (i, row) in a.rows().iter().enumerate() {
        chosen.push(row.clone());
        if rank(&chosen, n) == chosen.len() {
            initial.push(i);
            if initial.len() == n {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    if initial.len() < n {
        return None;
    }
    let inv = a
        .select_rows(initial.iter().copied())
        .inverse()
        .expect("initial rows are independent");
    let mut rays: Vec<Ray> = (0..n)
        .map(|k| Ray {
            dir: inv.column(k).primitive(),
            zeros: initial
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, &i)| i)
                .collect(),
        })
        .collect();
    let mut processed = initial.clone();
    for i in (0..a.nrows()).filter(|i| !initial.contains(i)) {
        let row = a.row(i);
        let vals: Vec<Rational> = rays.iter().map(|r| row.dot(&r.dir)).collect();
        let mut next = Vec::with_capacity(rays.len());
        for (p, vp) in rays.iter().zip(&vals) {
            if !vp.is_positive() {
                continue;
            }
            for (q, vq) in rays.iter().zip(&vals) {
                if !vq.is_negative() {
                    continue;
                }
                let common: Vec<usize> = p
                    .zeros
                    .iter()
                    .copied()
                    .filter(|z| q.zeros.contains(z))
                    .collect();
                if common.len() + 2 < n || !adjacent(a, &common, n) {
                    continue;
                }
                let dir = &q.dir.scale(vp) - &p.dir.scale(vq);
                let mut zeros = common;
                zeros.push(i);
                next.push(Ray {
                    dir: dir.primitive(),
                    zeros,
                });
            }
        }
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_zero() {
                r.zeros.push(i);
                next.push(r);
            } else if v.is_positive() {
                next.push(r);
            }
        }
        rays = next;
        processed.push(i);
    }
    Some(rays.into_iter().map(|r| r.dir).collect())
}

fn adjacent(a: &MatrixQ, common: &[usize], n: usize) -> bool {
    let rows: Vec<VectorQ> = common.iter().map(|&i| a.row(i).clone()).collect();
    rank(&rows, n) == n - 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<VectorQ>) -> Vec<VectorQ> {
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let rays = extreme_rays(&MatrixQ::identity(3)).unwrap();
        assert_eq!(
            sorted(rays),
            sorted((0..3).map(|i| VectorQ::unit(3, i)).collect())
        );
    }

    #[test]
    fn four_ray_cone_from_facets() {
        let f = MatrixQ::from_ints(&[&[-1, -1, 1], &[1, -1, 1], &[1, 1, 1], &[-1, 1, 1]]);
        let rays = extreme_rays(&f).unwrap();
        let expected = vec![
            VectorQ::from_ints(&[1, 0, 1]),
            VectorQ::from_ints(&[0, 1, 1]),
            VectorQ::from_ints(&[-1, 0, 1]),
            VectorQ::from_ints(&[0, -1, 1]),
        ];
        assert_eq!(sorted(rays), sorted(expected));
    }

    #[test]
    fn redundant_rows_do_not_add_rays() {
        let f = MatrixQ::from_ints(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]);
        let rays = extreme_rays(&f).unwrap();
        assert_eq!(
            sorted(rays),
            vec![VectorQ::from_ints(&[0, 1]), VectorQ::from_ints(&[1, 0])]
        );
    }

    #[test]
    fn lines_and_trivial_cones() {
        assert!(extreme_rays(&MatrixQ::from_ints(&[&[1, 0]])).is_none());
        let rays = extreme_rays(&MatrixQ::from_ints(&[&[1], &[-1]])).unwrap();
        assert!(rays.is_empty());
    }
}
