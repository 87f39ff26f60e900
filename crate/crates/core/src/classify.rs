//! Structural classification of an ordered space, with certificates.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::atoms::{is_lattice, pervasive_witness_check, rdp_split, PervasiveCheck, RdpOutcome};
use crate::bands::{is_disjoint, restrict_band};
use crate::cone::OrderedSpace;
use crate::error::Result;
use crate::exact::{feasible_point, lp, LpOutcome, MatrixQ, Polyhedron, Rational, Sense, VectorQ};
use crate::par::{self, Execution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WeakPervasive {
    Holds,
    /// `b`, `d` positive, not disjoint, with nothing nonzero below both in
    /// the cover's positive cone.
    Violated(VectorQ, VectorQ),
    /// The candidate search found no violation; not a proof.
    NoViolationFound,
}

/// `x1`, `x2`, `z` positive with `z <= x1 + x2` and no split of `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdpWitness {
    pub x1: VectorQ,
    pub x2: VectorQ,
    pub z: VectorQ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub lattice: bool,
    pub pervasive: bool,
    pub fordable: bool,
    pub weakly_pervasive: WeakPervasive,
    pub rdp: bool,
    pub atoms: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rdp_witness: Option<RdpWitness>,
    /// `b` for which no `x` has `0 < F x <= (F b)^+`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub non_pervasive_witness: Option<VectorQ>,
}

pub fn classify(s: &OrderedSpace) -> Result<Classification> {
    classify_with(s, Execution::default())
}

pub fn classify_with(s: &OrderedSpace, exec: Execution) -> Result<Classification> {
    let lattice = is_lattice(s);
    let fordable = is_fordable(s)?;
    let (weakly_pervasive, rdp_witness, non_pervasive_witness) = if lattice {
        (WeakPervasive::Holds, None, None)
    } else {
        (
            weak_pervasive_search_with(s, exec)?,
            rdp_witness_search(s)?,
            non_pervasive_search(s)?,
        )
    };
    Ok(Classification {
        lattice,
        pervasive: lattice,
        fordable,
        weakly_pervasive,
        rdp: lattice,
        atoms: s.generators().len(),
        rdp_witness,
        non_pervasive_witness,
    })
}

/// Every singleton `{j}` is the support of the image of some element.
pub fn is_fordable(s: &OrderedSpace) -> Result<bool> {
    for j in 0..s.m() {
        if restrict_band(s, &[j])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extreme rays followed by the sums of pairs of distinct rays.
fn candidates(s: &OrderedSpace) -> Vec<VectorQ> {
    let rays = s.generators();
    let mut out = rays.to_vec();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            out.push(&rays[i] + &rays[j]);
        }
    }
    out
}

/// Whether some `x` has `0 < F x <= min(F b, F d)`.
pub fn has_common_lower_bound(s: &OrderedSpace, b: &VectorQ, d: &VectorQ) -> Result<bool> {
    let rep = s.rep();
    let cap = rep.apply(b).pointwise_min(&rep.apply(d));
    let f = rep.matrix();
    let mut p = Polyhedron::new(f.clone(), VectorQ::zeros(s.m()))?;
    for j in 0..s.m() {
        p.push_inequality(-f.row(j), -cap[j].clone())?;
    }
    let objective = f.rows().iter().fold(VectorQ::zeros(s.dim()), |acc, r| &acc + r);
    Ok(match lp(&objective, &p, Sense::Maximize)? {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    })
}

/// Searches pairs of non-disjoint candidates without a common nonzero
/// lower bound in the cover's positive cone.
pub fn weak_pervasive_search(s: &OrderedSpace) -> Result<WeakPervasive> {
    weak_pervasive_search_with(s, Execution::default())
}

pub fn weak_pervasive_search_with(s: &OrderedSpace, exec: Execution) -> Result<WeakPervasive> {
    if is_lattice(s) {
        return Ok(WeakPervasive::Holds);
    }
    let cands = candidates(s);
    let pairs: Vec<(usize, usize)> = (0..cands.len())
        .flat_map(|i| (i + 1..cands.len()).map(move |j| (i, j)))
        .collect();
    let verdicts = par::map(exec, &pairs, |&(i, j)| -> Result<bool> {
        let (b, d) = (&cands[i], &cands[j]);
        Ok(!is_disjoint(s, b, d)? && !has_common_lower_bound(s, b, d)?)
    });
    for (&(i, j), v) in pairs.iter().zip(verdicts) {
        if v? {
            return Ok(WeakPervasive::Violated(cands[i].clone(), cands[j].clone()));
        }
    }
    Ok(WeakPervasive::NoViolationFound)
}

/// Tries ray pairs `x1, x2` against the largest multiple of a third ray
/// lying below `x1 + x2`.
pub fn rdp_witness_search(s: &OrderedSpace) -> Result<Option<RdpWitness>> {
    let rays = s.generators();
    let rep = s.rep();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let sum = &rays[i] + &rays[j];
            let fsum = rep.apply(&sum);
            for (k, r) in rays.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let fr = rep.apply(r);
                let t = fr
                    .iter()
                    .zip(fsum.iter())
                    .filter(|(a, _)| a.is_positive())
                    .map(|(a, b)| b / a)
                    .min();
                let Some(t) = t.filter(|t| t.is_positive()) else {
                    continue;
                };
                let z = r.scale(&t);
                if rdp_split(s, &rays[i], &rays[j], &z)? == RdpOutcome::NoSplit {
                    return Ok(Some(RdpWitness {
                        x1: rays[i].clone(),
                        x2: rays[j].clone(),
                        z,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// For each functional `j`, some `b` with `f_j(b) = 1` and `f_k(b) <= 0`
/// otherwise; returns the first that admits no pervasiveness witness.
pub fn non_pervasive_search(s: &OrderedSpace) -> Result<Option<VectorQ>> {
    let f = s.rep().matrix();
    for j in 0..s.m() {
        let rows: Vec<VectorQ> = (0..s.m()).filter(|&k| k != j).map(|k| -f.row(k)).collect();
        let mut p = Polyhedron::new(MatrixQ::from_rows(rows, s.dim())?, VectorQ::zeros(s.m() - 1))?;
        p.push_equality(f.row(j).clone(), Rational::from_integer(1.into()))?;
        let Some(b) = feasible_point(&p)? else {
            continue;
        };
        if pervasive_witness_check(s, &b)? == PervasiveCheck::NoWitness {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

impl Classification {
    pub fn summary_lines(&self) -> Vec<String> {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let weak = match &self.weakly_pervasive {
            WeakPervasive::Holds => "holds".to_string(),
            WeakPervasive::Violated(b, d) => format!("violated by b = {b}, d = {d}"),
            WeakPervasive::NoViolationFound => "no violation found".to_string(),
        };
        let mut lines = vec![
            format!("lattice: {}", yn(self.lattice)),
            format!("pervasive: {}", yn(self.pervasive)),
            format!("fordable: {}", yn(self.fordable)),
            format!("weakly pervasive: {weak}"),
            format!("riesz decomposition property: {}", yn(self.rdp)),
            format!("atoms: {}", self.atoms),
        ];
        if let Some(w) = &self.rdp_witness {
            lines.push(format!("no split of z = {} below x1 = {}, x2 = {}", w.z, w.x1, w.x2));
        }
        if let Some(b) = &self.non_pervasive_witness {
            lines.push(format!("no x with 0 < Fx <= (Fb)^+ for b = {b}"));
        }
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_ray, pentagon, simplex};

    fn v(xs: &[i64]) -> VectorQ {
        VectorQ::from_ints(xs)
    }

    #[test]
    fn four_ray_classification() {
        let c = classify(&four_ray()).unwrap();
        assert!(!c.lattice && !c.pervasive && !c.rdp && !c.fordable);
        assert_eq!(c.atoms, 4);
        assert_eq!(
            c.weakly_pervasive,
            WeakPervasive::Violated(v(&[1, 0, 1]), v(&[0, 1, 1]))
        );
        assert_eq!(
            c.rdp_witness,
            Some(RdpWitness {
                x1: v(&[1, 0, 1]),
                x2: v(&[-1, 0, 1]),
                z: v(&[0, 1, 1]),
            })
        );
        assert!(c.non_pervasive_witness.is_some());
    }

    #[test]
    fn simplex_classification() {
        for n in 1..=4 {
            let c = classify(&simplex(n)).unwrap();
            assert!(c.lattice && c.pervasive && c.fordable && c.rdp);
            assert_eq!(c.weakly_pervasive, WeakPervasive::Holds);
            assert_eq!(c.atoms, n);
            assert!(c.rdp_witness.is_none());
        }
    }

    #[test]
    fn pentagon_is_not_a_lattice() {
        let c = classify(&pentagon()).unwrap();
        assert!(!c.lattice && !c.pervasive && !c.fordable);
        assert!(c.rdp_witness.is_some());
        assert!(c.non_pervasive_witness.is_some());
    }

    #[test]
    fn json_field_names() {
        let c = classify(&simplex(2)).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["weaklyPervasive"], "holds");
        assert_eq!(j["atoms"], 2);
        assert_eq!(j["lattice"], true);
        assert!(j.get("rdpWitness").is_none());
    }
}
