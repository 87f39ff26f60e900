//! Disjointness, disjoint complements, bands and ideals.
//!
//! In the coordinatewise cover two elements are disjoint iff their images
//! have disjoint supports, so the disjoint complement of any set is the
//! common kernel of the functionals that are nonzero somewhere on the set.
//! Every band is therefore `Z(J) = {x : f_j(x) = 0 for j in J}` for some
//! set `J` of functional indices. Indices are 0-based in this API.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::dd::extreme_rays;
use crate::cone::OrderedSpace;
use crate::completion::upper_set_included;
use crate::error::{Error, Result};
use crate::exact::linalg::rank;
use crate::exact::{Rational, VectorQ};
use crate::par::{self, Execution};
use crate::subspace::Subspace;

/// Default bound on `m` for exhaustive band enumeration.
pub const DEFAULT_BAND_CAP: usize = 14;

/// Reads `ORDERCONE_BAND_CAP`, falling back to [`DEFAULT_BAND_CAP`].
pub fn band_cap() -> usize {
    std::env::var("ORDERCONE_BAND_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BAND_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Band {
    carrier: Subspace,
    /// every functional vanishing on the carrier, ascending
    zero_set: Vec<usize>,
    directed: bool,
}

impl Band {
    /// The band `Z(zero_set)`; the stored zero set is completed to all
    /// functionals vanishing on the carrier.
    pub fn from_zero_set(s: &OrderedSpace, zero_set: &[usize]) -> Result<Band> {
        let carrier = kernel_of(s, zero_set)?;
        let band = Band {
            zero_set: vanishing_set(s, &carrier),
            directed: is_directed_subspace(s, &carrier)?,
            carrier,
        };
        if double_complement(s, &band.carrier) != band.carrier {
            return Err(Error::Invariant(format!(
                "Z({:?}) differs from its double disjoint complement",
                band.zero_set
            )));
        }
        Ok(band)
    }

    /// `d` as a band, or `NotABand` when `d != d^dd`.
    pub fn from_subspace(s: &OrderedSpace, d: &Subspace) -> Result<Band> {
        if !is_band(s, d)? {
            return Err(Error::NotABand);
        }
        Band::from_zero_set(s, &vanishing_set(s, d))
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn zero_set(&self) -> &[usize] {
        &self.zero_set
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
}

/// JSON form: 1-based zero set, canonical basis, directedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandJson {
    #[serde(rename = "zeroSet")]
    pub zero_set: Vec<usize>,
    pub basis: Vec<VectorQ>,
    pub directed: bool,
}

impl From<&Band> for BandJson {
    fn from(b: &Band) -> Self {
        BandJson {
            zero_set: b.zero_set.iter().map(|j| j + 1).collect(),
            basis: b.carrier.basis().to_vec(),
            directed: b.directed,
        }
    }
}

impl Serialize for Band {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BandJson::from(self).serialize(s)
    }
}

fn check_indices(s: &OrderedSpace, js: &[usize]) -> Result<()> {
    match js.iter().find(|&&j| j >= s.m()) {
        Some(&j) => Err(Error::DimensionMismatch {
            expected: s.m(),
            found: j + 1,
        }),
        None => Ok(()),
    }
}

/// `Z(J)`.
pub(crate) fn kernel_of(s: &OrderedSpace, js: &[usize]) -> Result<Subspace> {
    check_indices(s, js)?;
    if js.is_empty() {
        return Ok(Subspace::full(s.dim()));
    }
    Ok(Subspace::kernel(&s.rep().matrix().select_rows(js.iter().copied())))
}

/// Functionals vanishing on all of `d`.
pub(crate) fn vanishing_set(s: &OrderedSpace, d: &Subspace) -> Vec<usize> {
    (0..s.m())
        .filter(|&j| {
            let f = s.rep().matrix().row(j);
            d.basis().iter().all(|b| f.dot(b).is_zero())
        })
        .collect()
}

/// Union of the supports of the images of `xs`.
pub fn support_of(s: &OrderedSpace, xs: &[VectorQ]) -> Vec<usize> {
    let mut out = BTreeSet::new();
    for x in xs {
        out.extend(s.rep().apply(x).support());
    }
    out.into_iter().collect()
}

fn complement_carrier(s: &OrderedSpace, d: &Subspace) -> Subspace {
    kernel_of(s, &support_of(s, d.basis())).expect("support indices are in range")
}

fn double_complement(s: &OrderedSpace, d: &Subspace) -> Subspace {
    complement_carrier(s, &complement_carrier(s, d))
}

/// Disjointness through the cover: supports of `F x` and `F y` do not meet.
pub fn is_disjoint(s: &OrderedSpace, x: &VectorQ, y: &VectorQ) -> Result<bool> {
    s.check_vector(x)?;
    s.check_vector(y)?;
    let fx = s.rep().apply(x);
    let fy = s.rep().apply(y);
    Ok(fx.iter().zip(fy.iter()).all(|(a, b)| a.is_zero() || b.is_zero()))
}

/// Disjointness from the definition: `{x+y, -x-y}^u = {x-y, -x+y}^u`,
/// decided by mutual inclusion of the two upper-bound polyhedra.
pub fn disjoint_eq1_oracle(s: &OrderedSpace, x: &VectorQ, y: &VectorQ) -> Result<bool> {
    s.check_vector(x)?;
    s.check_vector(y)?;
    let rep = s.rep();
    let plus = rep.apply(&(x + y)).abs();
    let minus = rep.apply(&(x - y)).abs();
    Ok(upper_set_included(rep, &plus, &minus)? && upper_set_included(rep, &minus, &plus)?)
}

/// `M^d`; the empty set has complement `X`.
pub fn disjoint_complement(s: &OrderedSpace, m: &[VectorQ]) -> Result<Band> {
    for x in m {
        s.check_vector(x)?;
    }
    Band::from_zero_set(s, &support_of(s, m))
}

pub fn disjoint_complement_of(s: &OrderedSpace, d: &Subspace) -> Result<Band> {
    disjoint_complement(s, d.basis())
}

/// The principal band `{a}^dd`.
pub fn band_of(s: &OrderedSpace, a: &VectorQ) -> Result<Band> {
    let first = disjoint_complement(s, std::slice::from_ref(a))?;
    disjoint_complement_of(s, first.carrier())
}

pub fn is_band(s: &OrderedSpace, d: &Subspace) -> Result<bool> {
    if d.ambient() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: d.ambient(),
        });
    }
    Ok(double_complement(s, d) == *d)
}

pub fn enumerate_bands(s: &OrderedSpace, cap: usize) -> Result<Vec<Band>> {
    enumerate_bands_with(s, cap, Execution::default())
}

/// All bands, found by trying every `Z(J)`; sorted by dimension, then by
/// canonical basis.
pub fn enumerate_bands_with(s: &OrderedSpace, cap: usize, exec: Execution) -> Result<Vec<Band>> {
    let m = s.m();
    if m > cap || m >= usize::BITS as usize {
        return Err(Error::CapExceeded { m, cap });
    }
    let masks: Vec<u64> = (0..1u64 << m).collect();
    let carriers = par::map(exec, &masks, |&mask| {
        let js: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        let z = kernel_of(s, &js).expect("indices below m");
        (double_complement(s, &z) == z).then_some(z)
    });
    let distinct: BTreeSet<Subspace> = carriers.into_iter().flatten().collect();
    let distinct: Vec<Subspace> = distinct.into_iter().collect();
    let mut bands: Vec<Band> = par::map(exec, &distinct, |z| {
        let zs = vanishing_set(s, z);
        Band::from_zero_set(s, &zs)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    bands.sort_by(|a, b| (a.dim(), a.carrier.basis()).cmp(&(b.dim(), b.carrier.basis())));
    Ok(bands)
}

/// `D` is directed iff `D ∩ K` spans `D`.
pub fn is_directed_subspace(s: &OrderedSpace, d: &Subspace) -> Result<bool> {
    if d.ambient() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: d.ambient(),
        });
    }
    let k = d.dim();
    if k == 0 {
        return Ok(true);
    }
    // the cone {c : F B c >= 0} of coefficient vectors, pointed since F B is injective
    let fb = s.rep().matrix().mul(&d.basis_matrix())?;
    let rays = extreme_rays(&fb)
        .ok_or_else(|| Error::Invariant("restricted facet matrix is not injective".into()))?;
    Ok(rank(&rays, k) == k)
}

/// Whether `x` lies in the principal ideal of `a`: some `lambda > 0` makes
/// `{x, -x}^u ⊇ {lambda a, -lambda a}^u`.
///
/// Scaling commutes with the coordinate minima over the upper-bound set, so
/// with `c_j = min f_j(z)` over `{z : F z >= |F a|}` the condition reads
/// `lambda c_j >= |f_j(x)|` for all `j`; the smallest admissible `lambda`
/// is then confirmed by a direct inclusion check.
pub fn principal_ideal_member(s: &OrderedSpace, x: &VectorQ, a: &VectorQ) -> Result<bool> {
    s.check_vector(x)?;
    s.check_vector(a)?;
    let rep = s.rep();
    let fa = rep.apply(a).abs();
    let fx = rep.apply(x).abs();
    let mut lambda = Rational::one();
    for j in 0..s.m() {
        if fx[j].is_zero() {
            continue;
        }
        let c = rep.coordinate_min(j, &fa);
        if !c.is_positive() {
            return Ok(false);
        }
        let need = &fx[j] / &c;
        if need > lambda {
            lambda = need;
        }
    }
    upper_set_included(rep, &fa.scale(&lambda), &fx)
}

/// Whether `d` is solid: it contains every `x` whose symmetric upper-bound
/// set contains that of some member.
///
/// Solid subspaces are exactly the restrictions of coordinate bands: if the
/// images of `d` are supported on `T`, any `x` with image supported in `T`
/// is dominated by a multiple of an element of `d` with full support `T`.
pub fn is_ideal(s: &OrderedSpace, d: &Subspace) -> Result<bool> {
    let t = support_of(s, d.basis());
    Ok(restrict_band(s, &t)? == *d)
}

/// Support `J` of the smallest band of the cover containing the image of `b`.
pub fn extend_band(s: &OrderedSpace, b: &Band) -> Vec<usize> {
    support_of(s, b.carrier().basis())
}

/// The restriction `{x : f_j(x) = 0 for j not in J}` of the coordinate band
/// supported on `J`.
pub fn restrict_band(s: &OrderedSpace, support: &[usize]) -> Result<Subspace> {
    check_indices(s, support)?;
    let outside: Vec<usize> = (0..s.m()).filter(|j| !support.contains(j)).collect();
    kernel_of(s, &outside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_ray, simplex};

    fn v(xs: &[i64]) -> VectorQ {
        VectorQ::from_ints(xs)
    }

    fn span(xs: &[&[i64]], n: usize) -> Subspace {
        let vs: Vec<VectorQ> = xs.iter().map(|x| v(x)).collect();
        Subspace::span(&vs, n).unwrap()
    }

    const V1: &[i64] = &[1, 0, 1];
    const V2: &[i64] = &[0, 1, 1];
    const V3: &[i64] = &[-1, 0, 1];
    const V4: &[i64] = &[0, -1, 1];

    #[test]
    fn disjointness_examples() {
        let s = four_ray();
        for f in [is_disjoint, disjoint_eq1_oracle] {
            assert!(f(&s, &v(V1), &v(V3)).unwrap());
            assert!(!f(&s, &v(V1), &v(V2)).unwrap());
            assert!(f(&s, &v(&[3, -2, 5]), &VectorQ::zeros(3)).unwrap());
        }
        let q = simplex(2);
        assert!(!disjoint_eq1_oracle(&q, &v(&[1, 1]), &v(&[1, -1])).unwrap());
        assert!(!is_disjoint(&q, &v(&[1, 1]), &v(&[1, -1])).unwrap());
    }

    #[test]
    fn complements() {
        let s = four_ray();
        let cases = [(V1, V3), (V2, V4), (V3, V1), (V4, V2)];
        for (a, b) in cases {
            assert_eq!(disjoint_complement(&s, &[v(a)]).unwrap().carrier(), &span(&[b], 3));
        }
        let both = disjoint_complement(&s, &[v(V1), v(V3)]).unwrap();
        assert!(both.carrier().is_zero());
        assert!(disjoint_complement(&s, &[]).unwrap().carrier().is_full());
        let q = simplex(2);
        assert_eq!(
            disjoint_complement(&q, &[v(&[1, 0])]).unwrap().carrier(),
            &span(&[&[0, 1]], 2)
        );
        // v1 + v2 is disjoint from nothing but 0
        assert!(disjoint_complement(&s, &[v(&[1, 1, 2])]).unwrap().carrier().is_zero());
    }

    #[test]
    fn principal_bands() {
        let s = four_ray();
        let b1 = band_of(&s, &v(V1)).unwrap();
        assert_eq!(b1.carrier(), &span(&[V1], 3));
        assert_eq!(b1.zero_set(), &[0, 3]);
        assert!(b1.is_directed());
        assert!(band_of(&s, &v(&[1, 1, 2])).unwrap().carrier().is_full());
        let q = simplex(2);
        assert_eq!(band_of(&q, &v(&[1, 0])).unwrap().carrier(), &span(&[&[1, 0]], 2));
    }

    #[test]
    fn band_tests() {
        let s = four_ray();
        assert!(is_band(&s, &span(&[V1], 3)).unwrap());
        assert!(!is_band(&s, &span(&[V1, V3], 3)).unwrap());
        assert!(is_band(&s, &Subspace::zero(3)).unwrap());
        assert!(is_band(&s, &Subspace::full(3)).unwrap());
    }

    #[test]
    fn enumeration() {
        let s = four_ray();
        let bands = enumerate_bands(&s, DEFAULT_BAND_CAP).unwrap();
        // {0}, X, the four rays and the two mutually disjoint lines through
        // (1,-1,0) and (1,1,0)
        assert_eq!(bands.len(), 8);
        let directed: Vec<&Band> = bands.iter().filter(|b| b.dim() == 1 && b.is_directed()).collect();
        assert_eq!(directed.len(), 4);
        for ray in [V1, V2, V3, V4] {
            assert!(directed.iter().any(|b| b.carrier() == &span(&[ray], 3)));
        }
        for line in [&[1, -1, 0], &[1, 1, 0]] {
            let b = bands.iter().find(|b| b.carrier() == &span(&[line], 3)).unwrap();
            assert!(!b.is_directed());
        }
        assert_eq!(enumerate_bands(&simplex(3), 14).unwrap().len(), 8);
        assert_eq!(enumerate_bands(&simplex(1), 14).unwrap().len(), 2);
        assert!(matches!(
            enumerate_bands(&s, 3),
            Err(Error::CapExceeded { m: 4, cap: 3 })
        ));
        let seq = enumerate_bands_with(&s, 14, Execution::Sequential).unwrap();
        assert_eq!(seq, bands);
    }

    #[test]
    fn principal_ideals() {
        let q = simplex(2);
        assert!(!principal_ideal_member(&q, &v(&[0, 1]), &v(&[1, 0])).unwrap());
        assert!(principal_ideal_member(&q, &v(&[-7, 0]), &v(&[1, 0])).unwrap());
        let s = four_ray();
        assert!(principal_ideal_member(&s, &v(V1), &v(&[1, 1, 2])).unwrap());
        assert!(!principal_ideal_member(&s, &v(V3), &v(&[1, 1, 2])).unwrap());
        assert!(principal_ideal_member(&s, &v(&[5, 0, 5]), &v(V1)).unwrap());
    }

    #[test]
    fn directedness() {
        let s = four_ray();
        assert!(is_directed_subspace(&s, &span(&[V1], 3)).unwrap());
        assert!(is_directed_subspace(&s, &span(&[V1, V3], 3)).unwrap());
        assert!(!is_directed_subspace(&s, &span(&[&[1, 0, 0]], 3)).unwrap());
        let q = simplex(2);
        assert!(!is_directed_subspace(&q, &span(&[&[1, -1]], 2)).unwrap());
    }

    #[test]
    fn ideals() {
        let s = four_ray();
        assert!(is_ideal(&s, &span(&[V1], 3)).unwrap());
        assert!(is_ideal(&s, &span(&[V1, V2], 3)).unwrap());
        assert!(!is_ideal(&s, &span(&[V1, V3], 3)).unwrap());
        let q = simplex(2);
        assert!(!is_ideal(&q, &span(&[&[1, 1]], 2)).unwrap());
    }

    #[test]
    fn extension_and_restriction() {
        let s = four_ray();
        let b1 = band_of(&s, &v(V1)).unwrap();
        assert_eq!(extend_band(&s, &b1), vec![1, 2]);
        assert_eq!(restrict_band(&s, &[1, 2]).unwrap(), span(&[V1], 3));
        assert!(restrict_band(&s, &[2]).unwrap().is_zero());
        assert!(restrict_band(&s, &[0, 1, 2, 3]).unwrap().is_full());
        let full = Band::from_zero_set(&s, &[]).unwrap();
        assert_eq!(extend_band(&s, &full), vec![0, 1, 2, 3]);
        let q = simplex(3);
        let b = Band::from_zero_set(&q, &[1]).unwrap();
        assert_eq!(extend_band(&q, &b), vec![0, 2]);
        assert!(restrict_band(&s, &[4]).is_err());
    }

    #[test]
    fn band_json_is_one_based() {
        let s = four_ray();
        let b1 = band_of(&s, &v(V1)).unwrap();
        let json = serde_json::to_string(&b1).unwrap();
        assert_eq!(json, r#"{"zeroSet":[1,4],"basis":[["1","0","1"]],"directed":true}"#);
    }
}
