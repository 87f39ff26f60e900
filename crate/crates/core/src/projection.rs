//! Projection bands, band projections and decompositions into ideals.

use serde::Serialize;

use crate::atoms::is_lattice;
use crate::bands::{
    band_of, disjoint_complement_of, enumerate_bands_with, extend_band, is_band, is_directed_subspace,
    is_ideal, restrict_band, Band,
};
use crate::classify::{classify, is_fordable, WeakPervasive};
use crate::completion::is_majorizing;
use crate::cone::OrderedSpace;
use crate::error::{Error, Result};
use crate::exact::{MatrixQ, VectorQ};
use crate::par::Execution;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProjectionReport {
    pub band: Band,
    pub complement: Band,
    pub is_projection_band: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixQ>,
}

/// The projection onto `range` along `kernel`, for complementary subspaces.
pub fn projection_matrix(range: &Subspace, kernel: &Subspace) -> Result<MatrixQ> {
    let n = range.ambient();
    let mut cols = range.basis().to_vec();
    cols.extend(kernel.basis().iter().cloned());
    let m = MatrixQ::from_columns(&cols, n)?;
    let keep = MatrixQ::from_rows(
        (0..n)
            .map(|i| if i < range.dim() { VectorQ::unit(n, i) } else { VectorQ::zeros(n) })
            .collect(),
        n,
    )?;
    m.mul(&keep)?.mul(&m.inverse()?)
}

/// Whether `x -> P x` maps every generator of the cone into the cone.
fn maps_cone_into_cone(s: &OrderedSpace, p: &MatrixQ) -> bool {
    s.generators().iter().all(|g| s.in_cone(&p.mul_vec(g)))
}

pub fn is_projection_band(s: &OrderedSpace, band: &Band) -> Result<ProjectionReport> {
    if !is_band(s, band.carrier())? {
        return Err(Error::NotABand);
    }
    let complement = disjoint_complement_of(s, band.carrier())?;
    if !band.carrier().is_direct_complement(complement.carrier()) {
        return Ok(ProjectionReport {
            band: band.clone(),
            complement,
            is_projection_band: false,
            matrix: None,
        });
    }
    let p = projection_matrix(band.carrier(), complement.carrier())?;
    let rest = MatrixQ::identity(s.dim()).sub(&p)?;
    if p.mul(&p)? != p {
        return Err(Error::Invariant("band projection is not idempotent".into()));
    }
    if !maps_cone_into_cone(s, &p) || !maps_cone_into_cone(s, &rest) {
        return Err(Error::Invariant(format!(
            "projection onto band with zero set {:?} is not an order projection",
            band.zero_set()
        )));
    }
    Ok(ProjectionReport {
        band: band.clone(),
        complement,
        is_projection_band: true,
        matrix: Some(p),
    })
}

/// One report per projection band, in band enumeration order.
pub fn enumerate_order_projections(s: &OrderedSpace, cap: usize) -> Result<Vec<ProjectionReport>> {
    enumerate_order_projections_with(s, cap, Execution::default())
}

pub fn enumerate_order_projections_with(
    s: &OrderedSpace,
    cap: usize,
    exec: Execution,
) -> Result<Vec<ProjectionReport>> {
    let mut out = Vec::new();
    for band in enumerate_bands_with(s, cap, exec)? {
        let report = is_projection_band(s, &band)?;
        if report.is_projection_band {
            out.push(report);
        }
    }
    Ok(out)
}

/// The band projection onto the principal band of an atom, when the
/// principal band is a projection band.
pub fn atom_projection(s: &OrderedSpace, a: &VectorQ) -> Result<Option<MatrixQ>> {
    if !crate::atoms::is_atom(s, a)? {
        return Err(Error::NotAtom);
    }
    Ok(is_projection_band(s, &band_of(s, a)?)?.matrix)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum IdealTier {
    /// pervasive space, both summands ideals
    Pervasive,
    /// weakly pervasive space, both summands directed ideals
    WeaklyPervasive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "verdict")]
pub enum IdealVerdict {
    /// `D = B^d` and `B` is a projection band with the given projection.
    Confirmed { tier: IdealTier, projection: MatrixQ },
    HypothesesNotMet { reason: String },
}

/// For `X = B ⊕ D`, checks whether the hypotheses forcing `D = B^d` hold
/// and, if so, confirms the conclusion.
pub fn check_ideal_decomposition(s: &OrderedSpace, b: &Subspace, d: &Subspace) -> Result<IdealVerdict> {
    crate::error::check_dim(s.dim(), b.ambient())?;
    crate::error::check_dim(s.dim(), d.ambient())?;
    if !b.is_direct_complement(d) {
        return Err(Error::NotDirectSum);
    }
    let mut failures = Vec::new();
    let ideals = is_ideal(s, b)? && is_ideal(s, d)?;
    if !ideals {
        failures.push("the summands are not both ideals");
    }
    let tier = if is_lattice(s) {
        ideals.then_some(IdealTier::Pervasive)
    } else {
        failures.push("the space is not pervasive");
        let weak = classify(s)?.weakly_pervasive == WeakPervasive::Holds;
        if !weak {
            failures.push("the space is not known to be weakly pervasive");
        }
        let directed = is_directed_subspace(s, b)? && is_directed_subspace(s, d)?;
        if !directed {
            failures.push("the summands are not both directed");
        }
        (weak && ideals && directed).then_some(IdealTier::WeaklyPervasive)
    };
    let Some(tier) = tier else {
        return Ok(IdealVerdict::HypothesesNotMet {
            reason: failures.join("; "),
        });
    };
    let complement = disjoint_complement_of(s, b)?;
    if complement.carrier() != d {
        return Err(Error::Invariant("ideal summand differs from the disjoint complement".into()));
    }
    let band = Band::from_subspace(s, b)?;
    let report = is_projection_band(s, &band)?;
    match report.matrix {
        Some(projection) if report.is_projection_band => Ok(IdealVerdict::Confirmed { tier, projection }),
        _ => Err(Error::Invariant("ideal summand is not a projection band".into())),
    }
}

/// Restriction of the coordinate band supported on `support` together with
/// the hypotheses under which it splits the space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RestrictionReport {
    pub restriction: Subspace,
    pub complement: Subspace,
    pub fordable: bool,
    pub rdp: bool,
    pub majorizing: bool,
    pub complement_majorizing: bool,
    pub decomposes: bool,
}

pub fn restriction_decomposition(s: &OrderedSpace, support: &[usize]) -> Result<RestrictionReport> {
    let restriction = restrict_band(s, support)?;
    let complement = disjoint_complement_of(s, &restriction)?.carrier().clone();
    let outside: Vec<usize> = (0..s.m()).filter(|j| !support.contains(j)).collect();
    let report = RestrictionReport {
        fordable: is_fordable(s)?,
        rdp: is_lattice(s),
        majorizing: is_majorizing(s, &restriction, support)?,
        complement_majorizing: is_majorizing(s, &complement, &outside)?,
        decomposes: restriction.is_direct_complement(&complement),
        restriction,
        complement,
    };
    if report.fordable && report.rdp && report.majorizing && report.complement_majorizing && !report.decomposes {
        return Err(Error::Invariant(
            "restriction satisfies every hypothesis but does not split the space".into(),
        ));
    }
    Ok(report)
}

/// Supports of the extensions of a band and of its disjoint complement.
pub fn extension_supports(s: &OrderedSpace, band: &Band) -> Result<(Vec<usize>, Vec<usize>)> {
    let complement = disjoint_complement_of(s, band.carrier())?;
    Ok((extend_band(s, band), extend_band(s, &complement)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bands::DEFAULT_BAND_CAP;
    use crate::fixtures::{four_ray, simplex};

    fn v(xs: &[i64]) -> VectorQ {
        VectorQ::from_ints(xs)
    }

    fn span(xs: &[&[i64]], n: usize) -> Subspace {
        let vs: Vec<VectorQ> = xs.iter().map(|x| v(x)).collect();
        Subspace::span(&vs, n).unwrap()
    }

    #[test]
    fn coordinate_projection_in_the_plane() {
        let q = simplex(2);
        let band = band_of(&q, &v(&[1, 0])).unwrap();
        let r = is_projection_band(&q, &band).unwrap();
        assert!(r.is_projection_band);
        assert_eq!(r.matrix.unwrap(), MatrixQ::from_ints(&[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn four_ray_has_only_trivial_projections() {
        let s = four_ray();
        let r = is_projection_band(&s, &band_of(&s, &v(&[1, 0, 1])).unwrap()).unwrap();
        assert!(!r.is_projection_band);
        let ps = enumerate_order_projections(&s, DEFAULT_BAND_CAP).unwrap();
        let mats: Vec<MatrixQ> = ps.into_iter().map(|p| p.matrix.unwrap()).collect();
        assert_eq!(mats, vec![MatrixQ::zeros(3, 3), MatrixQ::identity(3)]);
    }

    #[test]
    fn projection_counts() {
        assert_eq!(enumerate_order_projections(&simplex(3), DEFAULT_BAND_CAP).unwrap().len(), 8);
        assert_eq!(enumerate_order_projections(&simplex(1), DEFAULT_BAND_CAP).unwrap().len(), 2);
    }

    #[test]
    fn whole_space_and_non_bands() {
        let s = four_ray();
        let whole = Band::from_zero_set(&s, &[]).unwrap();
        let r = is_projection_band(&s, &whole).unwrap();
        assert_eq!(r.matrix, Some(MatrixQ::identity(3)));
        assert_eq!(
            Band::from_subspace(&s, &span(&[&[1, 1, 2]], 3)),
            Err(Error::NotABand)
        );
    }

    #[test]
    fn ideal_decompositions() {
        let q3 = simplex(3);
        let verdict = check_ideal_decomposition(
            &q3,
            &span(&[&[1, 0, 0]], 3),
            &span(&[&[0, 1, 0], &[0, 0, 1]], 3),
        )
        .unwrap();
        assert!(matches!(
            verdict,
            IdealVerdict::Confirmed {
                tier: IdealTier::Pervasive,
                ..
            }
        ));
        let s = four_ray();
        let verdict = check_ideal_decomposition(
            &s,
            &span(&[&[1, 0, 1], &[-1, 0, 1]], 3),
            &span(&[&[0, 1, 1]], 3),
        )
        .unwrap();
        assert!(matches!(verdict, IdealVerdict::HypothesesNotMet { .. }));
        let q2 = simplex(2);
        let verdict = check_ideal_decomposition(&q2, &span(&[&[1, 0]], 2), &span(&[&[1, 1]], 2)).unwrap();
        assert!(matches!(verdict, IdealVerdict::HypothesesNotMet { .. }));
        assert_eq!(
            check_ideal_decomposition(&q2, &span(&[&[1, 0]], 2), &span(&[&[2, 0]], 2)),
            Err(Error::NotDirectSum)
        );
    }

    #[test]
    fn restrictions() {
        let s = four_ray();
        let r = restriction_decomposition(&s, &[1, 2]).unwrap();
        assert_eq!(r.restriction, span(&[&[1, 0, 1]], 3));
        assert!(!r.decomposes);
        let q = simplex(3);
        let r = restriction_decomposition(&q, &[0, 2]).unwrap();
        assert!(r.decomposes && r.majorizing && r.complement_majorizing);
    }
}
