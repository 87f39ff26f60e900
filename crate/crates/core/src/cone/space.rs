use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::dd::extreme_rays;
use crate::completion::FunctionalRep;
use crate::error::{check_dim, Error, Result};
use crate::exact::linalg::rank;
use crate::exact::{feasible_point, lp, LpOutcome, MatrixQ, Polyhedron, Rational, Sense, VectorQ};

/// Both descriptions of a pointed, generating polyhedral cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub dim: usize,
    /// extreme rays, primitive integer vectors
    pub generators: Vec<VectorQ>,
    /// irredundant facet normals, primitive integer vectors
    pub facets: Vec<VectorQ>,
}

/// A finite-dimensional ordered vector space `(Q^n, K)` together with its
/// facet-functional cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSpace {
    name: String,
    cone: ConeSpec,
    rep: FunctionalRep,
}

/// JSON form of a space description; at least one representation is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<VectorQ>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<VectorQ>>,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<OrderedSpace> {
        build_space(
            self.dim,
            self.generators.as_deref(),
            self.facets.as_deref(),
            &self.name,
        )
    }
}

impl OrderedSpace {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.cone.dim
    }

    pub fn cone(&self) -> &ConeSpec {
        &self.cone
    }

    pub fn generators(&self) -> &[VectorQ] {
        &self.cone.generators
    }

    pub fn facets(&self) -> &[VectorQ] {
        &self.cone.facets
    }

    pub fn rep(&self) -> &FunctionalRep {
        &self.rep
    }

    /// Number of facet functionals, the dimension of the cover.
    pub fn m(&self) -> usize {
        self.rep.m()
    }

    pub fn in_cone(&self, x: &VectorQ) -> bool {
        self.rep.apply(x).is_nonneg()
    }

    pub fn is_positive(&self, x: &VectorQ) -> bool {
        !x.is_zero() && self.in_cone(x)
    }

    pub fn spec(&self) -> SpaceSpec {
        SpaceSpec {
            name: self.name.clone(),
            dim: self.dim(),
            generators: Some(self.cone.generators.clone()),
            facets: Some(self.cone.facets.clone()),
        }
    }

    pub fn check_vector(&self, x: &VectorQ) -> Result<()> {
        check_dim(self.dim(), x.dim())
    }
}

/// Builds and validates a space from generators, facets or both.
///
/// A supplied representation keeps its order (after dropping zero,
/// duplicate and redundant entries); a computed one is sorted in descending
/// lexicographic order.
pub fn build_space(
    dim: usize,
    generators: Option<&[VectorQ]>,
    facets: Option<&[VectorQ]>,
    name: &str,
) -> Result<OrderedSpace> {
    if dim == 0 {
        return Err(Error::PreconditionViolated("dimension must be at least 1".into()));
    }
    for v in generators.into_iter().chain(facets).flatten() {
        check_dim(dim, v.dim())?;
    }
    let (gens, facs) = match (generators, facets) {
        (None, None) => return Err(Error::EmptyInput),
        (Some(g), given_facets) => {
            let g = normalized(g);
            check_pointed_generators(&g, dim)?;
            if rank(&g, dim) < dim {
                return Err(Error::NotGenerating(format!(
                    "generators span a subspace of dimension {} < {dim}",
                    rank(&g, dim)
                )));
            }
            let mut computed = rays_of(&g, dim)?;
            computed.sort_by(|a, b| b.cmp(a));
            let gens = retain_extreme(&g, &rays_of(&computed, dim)?, "generator")?;
            let facs = match given_facets {
                None => computed,
                Some(f) => {
                    let f = normalized(f);
                    for fj in &f {
                        if let Some(bad) = gens.iter().find(|g| fj.dot(g) < Rational::zero()) {
                            return Err(Error::Invariant(format!(
                                "facet {fj} is negative on generator {bad}"
                            )));
                        }
                    }
                    let kept = retain_extreme(&f, &computed, "facet")?;
                    if kept.len() != computed.len() {
                        return Err(Error::Invariant(
                            "given facets do not describe the cone of the given generators".into(),
                        ));
                    }
                    kept
                }
            };
            (gens, facs)
        }
        (None, Some(f)) => {
            let f = normalized(f);
            if f.is_empty() || rank(&f, dim) < dim {
                return Err(Error::NotPointed(format!(
                    "facet normals span a subspace of dimension {} < {dim}",
                    rank(&f, dim)
                )));
            }
            let mut gens = rays_of(&f, dim)?;
            gens.sort_by(|a, b| b.cmp(a));
            if rank(&gens, dim) < dim {
                return Err(Error::NotGenerating(format!(
                    "cone spans a subspace of dimension {} < {dim}",
                    rank(&gens, dim)
                )));
            }
            let facs = retain_extreme(&f, &rays_of(&gens, dim)?, "facet")?;
            (gens, facs)
        }
    };
    let rep = FunctionalRep::new(&facs, dim)?;
    let space = OrderedSpace {
        name: name.to_string(),
        cone: ConeSpec {
            dim,
            generators: gens,
            facets: facs,
        },
        rep,
    };
    validate(&space)?;
    Ok(space)
}

fn normalized(vs: &[VectorQ]) -> Vec<VectorQ> {
    let mut out: Vec<VectorQ> = Vec::with_capacity(vs.len());
    for v in vs {
        if v.is_zero() {
            continue;
        }
        let p = v.primitive();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Extreme rays of `{x : rows . x >= 0}`.
fn rays_of(rows: &[VectorQ], dim: usize) -> Result<Vec<VectorQ>> {
    let a = MatrixQ::from_rows(rows.to_vec(), dim)?;
    extreme_rays(&a).ok_or_else(|| Error::Invariant("dual description has a lineality space".into()))
}

/// The entries of `given` that appear in `extreme`, in the order given;
/// every member of `extreme` must be found.
fn retain_extreme(given: &[VectorQ], extreme: &[VectorQ], what: &str) -> Result<Vec<VectorQ>> {
    let kept: Vec<VectorQ> = given.iter().filter(|g| extreme.contains(g)).cloned().collect();
    if kept.len() != extreme.len() {
        let missing = extreme.iter().find(|e| !kept.contains(e));
        return Err(Error::Invariant(format!(
            "computed extreme {what} {} is not among the inputs",
            missing.map_or_else(String::new, |m| m.to_string())
        )));
    }
    Ok(kept)
}

/// `pos(g)` is pointed iff no convex combination of the generators is zero.
fn check_pointed_generators(g: &[VectorQ], dim: usize) -> Result<()> {
    if g.is_empty() {
        return Err(Error::NotGenerating("no nonzero generators".into()));
    }
    let k = g.len();
    let mut p = Polyhedron::new(MatrixQ::identity(k), VectorQ::zeros(k))?;
    p.push_equality(VectorQ::new(vec![Rational::one(); k]), Rational::one())?;
    for i in 0..dim {
        p.push_equality(g.iter().map(|v| v[i].clone()).collect(), Rational::zero())?;
    }
    match feasible_point(&p)? {
        None => Ok(()),
        Some(lambda) => Err(Error::NotPointed(format!(
            "generators admit the zero combination with weights {lambda}"
        ))),
    }
}

/// Cross-checks the two descriptions against each other.
fn validate(s: &OrderedSpace) -> Result<()> {
    let n = s.dim();
    let f = s.rep.matrix();
    if f.rank() < n {
        return Err(Error::NotPointed("facet matrix is not injective".into()));
    }
    for g in s.generators() {
        let img = f.mul_vec(g);
        if !img.is_nonneg() {
            return Err(Error::Invariant(format!("generator {g} violates a facet inequality")));
        }
        let tight: Vec<VectorQ> = s
            .facets()
            .iter()
            .zip(img.iter())
            .filter(|(_, v)| v.is_zero())
            .map(|(fj, _)| fj.clone())
            .collect();
        if rank(&tight, n) != n - 1 {
            return Err(Error::Invariant(format!("generator {g} is not an extreme ray")));
        }
    }
    for fj in s.facets() {
        let tight: Vec<VectorQ> = s.generators().iter().filter(|g| fj.dot(g).is_zero()).cloned().collect();
        if rank(&tight, n) != n - 1 {
            return Err(Error::Invariant(format!("facet {fj} does not support a facet")));
        }
    }
    Ok(())
}

/// `x <= y`, i.e. `F (y - x) >= 0`.
pub fn leq(s: &OrderedSpace, x: &VectorQ, y: &VectorQ) -> Result<bool> {
    s.check_vector(x)?;
    s.check_vector(y)?;
    Ok(s.in_cone(&(y - x)))
}

/// Componentwise maximum of the images of `m` in the cover.
pub(crate) fn image_max(s: &OrderedSpace, m: &[VectorQ]) -> Result<VectorQ> {
    let mut it = m.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::PreconditionViolated("empty set of elements".into()))?;
    s.check_vector(first)?;
    let mut w = s.rep().apply(first);
    for x in it {
        s.check_vector(x)?;
        w = w.pointwise_max(&s.rep().apply(x));
    }
    Ok(w)
}

/// The set of upper bounds `M^u = {z : F z >= F m for all m in M}`, with the
/// stacked constraints merged into one row per functional.
pub fn upper_bound_polyhedron(s: &OrderedSpace, m: &[VectorQ]) -> Result<Polyhedron> {
    Ok(s.rep().lower_bounded(image_max(s, m)?))
}

/// Supremum of a finite set, if it exists in the space.
///
/// When the coordinatewise maximum of the images lies in the range of `F`
/// its preimage is the supremum. Otherwise the least element of `M^u` is
/// sought: it exists iff the per-functional minima over `M^u` are attained
/// simultaneously by one point.
pub fn sup_in_x(s: &OrderedSpace, m: &[VectorQ]) -> Result<Option<VectorQ>> {
    let w = image_max(s, m)?;
    if let Some(x) = s.rep().preimage(&w) {
        return Ok(Some(x));
    }
    let p = s.rep().lower_bounded(w.clone());
    let mut c = Vec::with_capacity(s.m());
    for j in 0..s.m() {
        match lp(s.rep().matrix().row(j), &p, Sense::Minimize)? {
            LpOutcome::Optimal { value, .. } => c.push(value),
            other => {
                return Err(Error::Invariant(format!(
                    "coordinate minimum over upper bounds gave {other:?}"
                )))
            }
        }
    }
    let c = VectorQ::new(c);
    if !w.le(&c) {
        return Ok(None);
    }
    Ok(s.rep().preimage(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_ray, four_ray_generators, simplex};

    fn v(xs: &[i64]) -> VectorQ {
        VectorQ::from_ints(xs)
    }

    fn sorted(mut xs: Vec<VectorQ>) -> Vec<VectorQ> {
        xs.sort();
        xs
    }

    #[test]
    fn standard_basis_gives_identity_facets() {
        let gens: Vec<VectorQ> = (0..3).map(|i| VectorQ::unit(3, i)).collect();
        let s = build_space(3, Some(&gens), None, "q3").unwrap();
        assert_eq!(s.facets(), gens.as_slice());
    }

    #[test]
    fn four_ray_facets_recovered() {
        let s = build_space(3, Some(&four_ray_generators()), None, "k4").unwrap();
        let expected = vec![v(&[-1, -1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1]), v(&[-1, 1, 1])];
        assert_eq!(sorted(s.facets().to_vec()), sorted(expected.clone()));
        let back = build_space(3, None, Some(&expected), "k4").unwrap();
        assert_eq!(sorted(back.generators().to_vec()), sorted(four_ray_generators()));
    }

    #[test]
    fn rejects_bad_cones() {
        let line = [v(&[1, 0]), v(&[-1, 0])];
        assert!(matches!(build_space(2, Some(&line), None, "l"), Err(Error::NotPointed(_))));
        let ray = [v(&[1, 0])];
        assert!(matches!(build_space(2, Some(&ray), None, "r"), Err(Error::NotGenerating(_))));
        let half = [v(&[1, 0])];
        assert!(matches!(build_space(2, None, Some(&half), "h"), Err(Error::NotPointed(_))));
        assert!(matches!(build_space(2, None, None, "e"), Err(Error::EmptyInput)));
        assert!(build_space(2, Some(&[v(&[1, 0, 0])]), None, "d").is_err());
    }

    #[test]
    fn redundant_inputs_are_dropped() {
        let gens = [v(&[1, 0]), v(&[2, 2]), v(&[0, 3]), v(&[2, 0])];
        let s = build_space(2, Some(&gens), None, "q").unwrap();
        assert_eq!(s.generators(), &[v(&[1, 0]), v(&[0, 1])]);
        let facets = [v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let t = build_space(2, None, Some(&facets), "q").unwrap();
        assert_eq!(t.facets(), &[v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn inconsistent_pair_rejected() {
        let gens = four_ray_generators();
        let wrong = [v(&[-1, -1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1]), v(&[-1, 1, 2])];
        assert!(matches!(
            build_space(3, Some(&gens), Some(&wrong), "bad"),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn order_examples() {
        let s = four_ray();
        let [v1, v2, v3, _] = <[VectorQ; 4]>::try_from(four_ray_generators()).unwrap();
        assert!(leq(&s, &v1, &(&v1 + &v2)).unwrap());
        assert!(leq(&s, &v2, &(&v1 + &v3)).unwrap());
        let q = simplex(2);
        assert!(!leq(&q, &v(&[1, 0]), &v(&[0, 1])).unwrap());
    }

    #[test]
    fn upper_bound_sets() {
        let s = four_ray();
        let p = upper_bound_polyhedron(&s, &[v(&[1, 0, 1]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(p.inequalities().1, &v(&[0, 2, 2, 2]));
        let k = upper_bound_polyhedron(&s, &[VectorQ::zeros(3)]).unwrap();
        assert_eq!(k.inequalities().1, &VectorQ::zeros(4));
        assert!(upper_bound_polyhedron(&s, &[]).is_err());
    }

    #[test]
    fn suprema() {
        let q = simplex(2);
        assert_eq!(sup_in_x(&q, &[v(&[1, 0]), v(&[0, 1])]).unwrap(), Some(v(&[1, 1])));
        let s = four_ray();
        assert_eq!(sup_in_x(&s, &[v(&[1, 0, 1]), v(&[-1, 0, 1])]).unwrap(), Some(v(&[0, 0, 2])));
        assert_eq!(sup_in_x(&s, &[v(&[1, 0, 1]), v(&[0, 1, 1])]).unwrap(), None);
    }
}
