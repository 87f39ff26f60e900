//! Exact two-phase simplex over rational polyhedra.
//!
//! Variables of a [`Polyhedron`] are free; internally each is split into a
//! difference of two nonnegative columns and every inequality row receives a
//! surplus column. Pivoting follows Bland's rule throughout (lowest-index
//! entering column, ratio ties broken by lowest basic index), so runs
//! terminate and are fully deterministic.

use num_traits::{One, Signed, Zero};

use super::matrix::MatrixQ;
use super::rational::Rational;
use super::vector::VectorQ;
use crate::error::{check_dim, Result};

/// `{x : a x >= b, eq_a x = eq_b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    a: MatrixQ,
    b: VectorQ,
    eq_a: MatrixQ,
    eq_b: VectorQ,
}

impl Polyhedron {
    pub fn new(a: MatrixQ, b: VectorQ) -> Result<Self> {
        check_dim(a.nrows(), b.dim())?;
        let n = a.ncols();
        Ok(Polyhedron {
            a,
            b,
            eq_a: MatrixQ::zeros(0, n),
            eq_b: VectorQ::zeros(0),
        })
    }

    /// The whole space `Q^n`.
    pub fn universe(n: usize) -> Self {
        Polyhedron {
            a: MatrixQ::zeros(0, n),
            b: VectorQ::zeros(0),
            eq_a: MatrixQ::zeros(0, n),
            eq_b: VectorQ::zeros(0),
        }
    }

    pub fn with_equalities(mut self, eq_a: MatrixQ, eq_b: VectorQ) -> Result<Self> {
        check_dim(self.dim(), eq_a.ncols())?;
        check_dim(eq_a.nrows(), eq_b.dim())?;
        self.eq_a = eq_a;
        self.eq_b = eq_b;
        Ok(self)
    }

    /// Adds `row . x >= rhs`.
    pub fn push_inequality(&mut self, row: VectorQ, rhs: Rational) -> Result<()> {
        check_dim(self.dim(), row.dim())?;
        let mut rows: Vec<VectorQ> = self.a.rows().to_vec();
        rows.push(row);
        self.a = MatrixQ::from_rows(rows, self.dim())?;
        let mut b = self.b.entries().to_vec();
        b.push(rhs);
        self.b = VectorQ::new(b);
        Ok(())
    }

    /// Adds `row . x = rhs`.
    pub fn push_equality(&mut self, row: VectorQ, rhs: Rational) -> Result<()> {
        check_dim(self.dim(), row.dim())?;
        let mut rows: Vec<VectorQ> = self.eq_a.rows().to_vec();
        rows.push(row);
        self.eq_a = MatrixQ::from_rows(rows, self.dim())?;
        let mut b = self.eq_b.entries().to_vec();
        b.push(rhs);
        self.eq_b = VectorQ::new(b);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    pub fn inequalities(&self) -> (&MatrixQ, &VectorQ) {
        (&self.a, &self.b)
    }

    pub fn equalities(&self) -> (&MatrixQ, &VectorQ) {
        (&self.eq_a, &self.eq_b)
    }

    pub fn contains(&self, x: &VectorQ) -> bool {
        x.dim() == self.dim()
            && self.a.mul_vec(x).iter().zip(self.b.iter()).all(|(l, r)| l >= r)
            && self.eq_a.mul_vec(x) == self.eq_b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: VectorQ },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&VectorQ> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Optimizes `objective . x` over `p`.
pub fn lp(objective: &VectorQ, p: &Polyhedron, sense: Sense) -> Result<LpOutcome> {
    check_dim(p.dim(), objective.dim())?;
    let n = p.dim();
    let k = p.a.nrows();
    let mut tab = Tableau::standard_form(p);
    if !tab.phase_one() {
        return Ok(LpOutcome::Infeasible);
    }
    // minimize c.y with c = +-objective on x+ and the negation on x-
    let sign = match sense {
        Sense::Maximize => -Rational::one(),
        Sense::Minimize => Rational::one(),
    };
    let mut costs = vec![Rational::zero(); 2 * n + k];
    for (j, c) in objective.iter().enumerate() {
        costs[j] = c * &sign;
        costs[n + j] = -(c * &sign);
    }
    if !tab.phase_two(&costs) {
        return Ok(LpOutcome::Unbounded);
    }
    let y = tab.basic_solution();
    let point: VectorQ = (0..n).map(|j| &y[j] - &y[n + j]).collect();
    debug_assert!(p.contains(&point));
    let value = objective.dot(&point);
    Ok(LpOutcome::Optimal { value, point })
}

/// Feasibility only; returns a point when one exists.
pub fn feasible_point(p: &Polyhedron) -> Result<Option<VectorQ>> {
    Ok(lp(&VectorQ::zeros(p.dim()), p, Sense::Minimize)?
        .point()
        .cloned())
}

struct Tableau {
    /// constraint rows, rhs in the last column
    rows: Vec<Vec<Rational>>,
    /// reduced costs, negated objective value in the last column
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// number of structural columns (artificials live after them)
    structural: usize,
}

impl Tableau {
    fn standard_form(p: &Polyhedron) -> Tableau {
        let n = p.dim();
        let k = p.a.nrows();
        let e = p.eq_a.nrows();
        let m = k + e;
        let structural = 2 * n + k;
        let width = structural + m + 1;
        let mut rows = Vec::with_capacity(m);
        let push = |rows: &mut Vec<Vec<Rational>>, coeffs: &VectorQ, surplus: Option<usize>, rhs: &Rational| {
            let i = rows.len();
            let mut row = vec![Rational::zero(); width];
            for (j, c) in coeffs.iter().enumerate() {
                row[j] = c.clone();
                row[n + j] = -c.clone();
            }
            if let Some(s) = surplus {
                row[2 * n + s] = -Rational::one();
            }
            row[width - 1] = rhs.clone();
            if rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            row[structural + i] = Rational::one();
            rows.push(row);
        };
        for i in 0..k {
            push(&mut rows, p.a.row(i), Some(i), &p.b[i]);
        }
        for i in 0..e {
            push(&mut rows, p.eq_a.row(i), None, &p.eq_b[i]);
        }
        Tableau {
            rows,
            obj: vec![Rational::zero(); width],
            basis: (structural..structural + m).collect(),
            structural,
        }
    }

    fn width(&self) -> usize {
        self.obj.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Runs Bland's rule on columns `< limit`; false if unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        let rhs = self.width() - 1;
        loop {
            let Some(c) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    /// Drives the artificial variables to zero; false if infeasible.
    fn phase_one(&mut self) -> bool {
        let w = self.width();
        let mut obj = vec![Rational::zero(); w];
        for row in &self.rows {
            for j in (0..self.structural).chain(std::iter::once(w - 1)) {
                obj[j] -= &row[j];
            }
        }
        self.obj = obj;
        let bounded = self.optimize(self.structural);
        debug_assert!(bounded);
        if !self.obj[w - 1].is_zero() {
            return false;
        }
        // pivot remaining (zero-valued) artificials out, dropping redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.structural {
                match (0..self.structural).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        let s = self.structural;
        for row in self.rows.iter_mut() {
            let rhs = row[w - 1].clone();
            row.truncate(s);
            row.push(rhs);
        }
        self.obj = vec![Rational::zero(); s + 1];
        true
    }

    fn phase_two(&mut self, costs: &[Rational]) -> bool {
        let w = self.width();
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..w {
                obj[j] -= cb * &row[j];
            }
        }
        self.obj = obj;
        self.optimize(self.structural)
    }

    fn basic_solution(&self) -> Vec<Rational> {
        let rhs = self.width() - 1;
        let mut y = vec![Rational::zero(); self.structural];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            y[b] = row[rhs].clone();
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    #[test]
    fn unit_interval_maximum() {
        let p = Polyhedron::new(
            MatrixQ::from_ints(&[&[1], &[-1]]),
            VectorQ::from_ints(&[0, -1]),
        )
        .unwrap();
        let out = lp(&VectorQ::from_ints(&[1]), &p, Sense::Maximize).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(1),
                point: VectorQ::from_ints(&[1])
            }
        );
    }

    #[test]
    fn largest_multiple_below_in_the_plane() {
        // max mu subject to (3,5) - mu (1,0) >= 0
        let p = Polyhedron::new(MatrixQ::from_ints(&[&[-1], &[0]]), VectorQ::from_ints(&[-3, -5]))
            .unwrap();
        let out = lp(&VectorQ::from_ints(&[1]), &p, Sense::Maximize).unwrap();
        assert_eq!(out.value(), Some(&rat(3)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = Polyhedron::new(MatrixQ::from_ints(&[&[1], &[-1]]), VectorQ::from_ints(&[1, 0]))
            .unwrap();
        assert_eq!(
            lp(&VectorQ::from_ints(&[1]), &p, Sense::Maximize).unwrap(),
            LpOutcome::Infeasible
        );
        let q = Polyhedron::new(MatrixQ::from_ints(&[&[1]]), VectorQ::from_ints(&[0])).unwrap();
        assert_eq!(
            lp(&VectorQ::from_ints(&[1]), &q, Sense::Maximize).unwrap(),
            LpOutcome::Unbounded
        );
        assert!(lp(&VectorQ::from_ints(&[1, 2]), &q, Sense::Maximize).is_err());
    }

    #[test]
    fn equalities_and_fractional_optimum() {
        // x + y = 1, x >= 0, y >= 0, 2x <= 1: min y - x
        let mut p = Polyhedron::new(MatrixQ::identity(2), VectorQ::zeros(2)).unwrap();
        p.push_equality(VectorQ::from_ints(&[1, 1]), rat(1)).unwrap();
        p.push_inequality(VectorQ::from_ints(&[-2, 0]), rat(-1)).unwrap();
        let out = lp(&VectorQ::from_ints(&[-1, 1]), &p, Sense::Minimize).unwrap();
        assert_eq!(out.value(), Some(&rat(0)));
        assert_eq!(out.point(), Some(&VectorQ::new(vec![ratio(1, 2), ratio(1, 2)])));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut p = Polyhedron::universe(2);
        p.push_equality(VectorQ::from_ints(&[1, 1]), rat(2)).unwrap();
        p.push_equality(VectorQ::from_ints(&[2, 2]), rat(4)).unwrap();
        p.push_inequality(VectorQ::from_ints(&[1, 0]), rat(0)).unwrap();
        p.push_inequality(VectorQ::from_ints(&[0, 1]), rat(0)).unwrap();
        let out = lp(&VectorQ::from_ints(&[1, 0]), &p, Sense::Maximize).unwrap();
        assert_eq!(out.value(), Some(&rat(2)));
    }

    #[test]
    fn empty_constraint_set() {
        let p = Polyhedron::universe(2);
        assert_eq!(
            lp(&VectorQ::zeros(2), &p, Sense::Maximize).unwrap().value(),
            Some(&rat(0))
        );
        assert_eq!(
            lp(&VectorQ::from_ints(&[0, 1]), &p, Sense::Maximize).unwrap(),
            LpOutcome::Unbounded
        );
    }
}
