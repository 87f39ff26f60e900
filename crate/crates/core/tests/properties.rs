use num_traits::Zero;
use ordercone::bands::{disjoint_complement_of, is_band, is_disjoint, restrict_band};
use ordercone::cone::{leq, OrderedSpace};
use ordercone::exact::linalg::rank;
use ordercone::exact::{
    feasible_point, format_rational, lp, nullspace, parse_rational, ratio, solve_linear, LpOutcome, MatrixQ,
    Polyhedron, Sense,
};
use ordercone::random;
use ordercone::seqspace::seq_is_member;
use ordercone::{Rational, VectorQ};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, q)| ratio(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = VectorQ> {
    prop::collection::vec(rational(), n).prop_map(VectorQ::new)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows).prop_map(move |rs| {
        MatrixQ::from_rows(rs.iter().map(|r| VectorQ::from_ints(r)).collect(), cols).unwrap()
    })
}

fn space() -> impl Strategy<Value = OrderedSpace> {
    any::<u64>().prop_map(|seed| random::mixed_space(&mut random::rng(seed)))
}

/// Space together with three vectors of matching dimension.
fn space_and_vectors() -> impl Strategy<Value = (OrderedSpace, VectorQ, VectorQ, VectorQ)> {
    space().prop_flat_map(|s| {
        let n = s.dim();
        (Just(s), vector(n), vector(n), vector(n))
    })
}

/// Whether `x` is a nonnegative combination of the generators.
fn generated(s: &OrderedSpace, x: &VectorQ) -> bool {
    let k = s.generators().len();
    let g = MatrixQ::from_columns(s.generators(), s.dim()).unwrap();
    let p = Polyhedron::new(MatrixQ::identity(k), VectorQ::zeros(k))
        .unwrap()
        .with_equalities(g, x.clone())
        .unwrap();
    feasible_point(&p).unwrap().is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws_are_exact(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
    }

    #[test]
    fn solve_linear_reproduces_consistent_right_sides(a in int_matrix(3, 4), x in vector(4)) {
        let b = a.mul_vec(&x);
        let y = solve_linear(&a, &b).unwrap().expect("b is in the range");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn nullspace_is_the_kernel(a in int_matrix(3, 5)) {
        let k = nullspace(&a);
        for v in &k {
            prop_assert!(a.mul_vec(v).is_zero());
        }
        prop_assert_eq!(rank(&k, 5), k.len());
        prop_assert_eq!(a.rank() + k.len(), 5);
    }

    #[test]
    fn lp_strong_duality(a in int_matrix(4, 2), b in vector(4), c in vector(2)) {
        let primal = lp(&c, &Polyhedron::new(a.clone(), b.clone()).unwrap(), Sense::Minimize).unwrap();
        let dual_p = Polyhedron::new(MatrixQ::identity(4), VectorQ::zeros(4))
            .unwrap()
            .with_equalities(a.transpose(), c.clone())
            .unwrap();
        let dual = lp(&b, &dual_p, Sense::Maximize).unwrap();
        match (&primal, &dual) {
            (LpOutcome::Optimal { value: v, point: x }, LpOutcome::Optimal { value: w, .. }) => {
                prop_assert_eq!(v, w);
                prop_assert_eq!(&c.dot(x), v);
                prop_assert!(b.le(&a.mul_vec(x)));
            }
            (LpOutcome::Unbounded, LpOutcome::Infeasible) => {}
            (LpOutcome::Infeasible, LpOutcome::Unbounded | LpOutcome::Infeasible) => {}
            other => prop_assert!(false, "duality violated: {:?}", other),
        }
    }

    #[test]
    fn leq_is_a_partial_order((s, x, y, z) in space_and_vectors()) {
        prop_assert!(leq(&s, &x, &x).unwrap());
        if leq(&s, &x, &y).unwrap() && leq(&s, &y, &x).unwrap() {
            prop_assert_eq!(&x, &y);
        }
        if leq(&s, &x, &y).unwrap() && leq(&s, &y, &z).unwrap() {
            prop_assert!(leq(&s, &x, &z).unwrap());
        }
        let w = &x + &(&z - &y);
        prop_assert_eq!(leq(&s, &y, &z).unwrap(), leq(&s, &x, &w).unwrap());
    }

    #[test]
    fn cover_embedding_is_bipositive((s, x, _, _) in space_and_vectors()) {
        prop_assert_eq!(s.in_cone(&x), generated(&s, &x));
    }

    #[test]
    fn band_calculus((s, x, y, _) in space_and_vectors(), mask in any::<u8>()) {
        let j: Vec<usize> = (0..s.m()).filter(|k| mask & (1 << k) != 0).collect();
        let dsub = restrict_band(&s, &j).unwrap();
        let b = disjoint_complement_of(&s, &dsub).unwrap().carrier().clone();
        prop_assert!(is_band(&s, &b).unwrap());
        let d = disjoint_complement_of(&s, &b).unwrap();
        prop_assert!(dsub.is_subspace_of(d.carrier()));
        let dd = disjoint_complement_of(&s, d.carrier()).unwrap();
        prop_assert_eq!(dd.carrier(), &b);
        for u in b.basis() {
            for v in d.carrier().basis() {
                prop_assert!(is_disjoint(&s, u, v).unwrap());
            }
        }
        prop_assert_eq!(is_disjoint(&s, &x, &y).unwrap(), is_disjoint(&s, &y, &x).unwrap());
    }

    #[test]
    fn sequence_membership_is_linear(seed in any::<u64>(), p in rational(), q in rational()) {
        let mut r = random::rng(seed);
        let x = random::seq_member(&mut r);
        let y = random::seq_member(&mut r);
        prop_assert!(seq_is_member(&x.scale(&p).add(&y.scale(&q))));
        let mut shifted = x.entries().clone();
        *shifted.entry(-1).or_insert_with(Rational::zero) += Rational::from_integer(1.into());
        let bumped = ordercone::seqspace::SeqElement::new(shifted, x.tail_start(), x.tail_value().clone()).unwrap();
        prop_assert!(!seq_is_member(&bumped));
    }
}
