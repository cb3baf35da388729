//! Randomized invariants over small polytopes and matrices: Ehrhart
//! structure, chart round-trips, normal-form reconstructions, and the
//! agreement of the independent computation paths for `c`.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use polydefect_core::ehrhart;
use polydefect_core::defect;
use polydefect_core::lattice::{
    generalized_binomial, hermite_normal_form, saturated_chart, smith_normal_form, Int, IntMatrix,
};
use polydefect_core::simplex_box;
use polydefect_core::LatticePolytope;

fn int_vec(dim: usize, bound: i64) -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(-bound..=bound, dim)
        .prop_map(|v| v.into_iter().map(Int::from).collect())
}

/// A full-dimensional lattice simplex of the given dimension.
fn simplex_strategy(dim: usize, bound: i64) -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(int_vec(dim, bound), dim + 1)
        .prop_filter_map("degenerate simplex", move |pts| {
            let p = LatticePolytope::from_vertices(dim, &pts).ok()?;
            (p.dim() == dim && p.is_simplex()).then_some(p)
        })
}

/// A full-dimensional lattice polytope on up to `dim + 3` generators.
fn polytope_strategy(dim: usize, bound: i64) -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(int_vec(dim, bound), dim + 1..=dim + 3)
        .prop_filter_map("degenerate point set", move |pts| {
            let p = LatticePolytope::from_vertices(dim, &pts).ok()?;
            (p.dim() == dim).then_some(p)
        })
}

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(int_vec(n, 9), n).prop_map(|rows| IntMatrix::from_rows(&rows))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pascal_rule(t in -60i64..60, k in 1i64..10) {
        let t = Int::from(t);
        let lhs = generalized_binomial(&t, k);
        let rhs = generalized_binomial(&(&t - Int::one()), k)
            + generalized_binomial(&(&t - Int::one()), k - 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chart_round_trip(pts in prop::collection::vec(int_vec(3, 6), 2..6)) {
        prop_assume!(pts.iter().any(|p| p != &pts[0]));
        let chart = saturated_chart(&pts).unwrap();
        for p in &pts {
            let y = chart.coords(p).expect("defining point lies on the chart");
            prop_assert_eq!(&chart.point(&y), p);
        }
    }

    #[test]
    fn normal_form_reconstructions(m in small_matrix(3)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m), h);
        prop_assert_eq!(u.det().abs(), Int::one());

        let (s, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), s.clone());
        prop_assert_eq!(u.det().abs(), Int::one());
        prop_assert_eq!(v.det().abs(), Int::one());
        for i in 0..2 {
            let (a, b) = (&s[(i, i)], &s[(i + 1, i + 1)]);
            prop_assert!(a.is_zero() && b.is_zero() || !a.is_zero() && (b % a).is_zero());
        }
    }

    #[test]
    fn h_star_structure(p in polytope_strategy(3, 3)) {
        let profile = ehrhart::ehrhart_profile(&p).unwrap();
        prop_assert_eq!(&profile.h_star[0], &Int::one());
        prop_assert!(profile.h_star.iter().all(|h| !h.is_negative()));
        let total: Int = profile.h_star.iter().sum();
        prop_assert_eq!(&total, &profile.normalized_volume);
        prop_assert_eq!(profile.degree, p.dim() + 1 - profile.codegree);
    }

    #[test]
    fn reciprocity(p in polytope_strategy(2, 4), k in 1u32..5) {
        prop_assert!(ehrhart::reciprocity_check(&p, k).unwrap());
    }

    #[test]
    fn pyramid_preserves_h_star(p in polytope_strategy(2, 4)) {
        let pyr = p.pyramid();
        let mut padded = ehrhart::h_star(&p).unwrap();
        padded.push(Int::zero());
        prop_assert_eq!(ehrhart::h_star(&pyr).unwrap(), padded);
    }

    #[test]
    fn product_codegree_is_max(p in polytope_strategy(2, 3), q in polytope_strategy(2, 3)) {
        let cd = ehrhart::codegree(&p.product(&q)).unwrap();
        let expected = ehrhart::codegree(&p).unwrap().max(ehrhart::codegree(&q).unwrap());
        prop_assert_eq!(cd, expected);
    }

    #[test]
    fn box_points_agree_with_face_sum(p in simplex_strategy(3, 3)) {
        let via_box = simplex_box::c_from_box(&p).unwrap();
        prop_assert!(!via_box.is_negative());
        prop_assert_eq!(via_box, defect::c_invariant(&p).unwrap());
        prop_assert!(simplex_box::support_bound_check(&p).unwrap().passed);
    }

    #[test]
    fn box_point_count_is_volume(p in simplex_strategy(2, 6)) {
        let profile = simplex_box::box_points(&p).unwrap();
        let volume = ehrhart::normalized_volume(&p).unwrap();
        prop_assert_eq!(Int::from(profile.points.len() as u64), volume.clone());
        let support_total: Int = profile.s.values().sum();
        prop_assert_eq!(support_total, volume);
        prop_assert_eq!(profile.h_star_from_heights, ehrhart::h_star(&p).unwrap());
    }

    #[test]
    fn master_expression_vanishes_below_top_degree(p in polytope_strategy(3, 3)) {
        if ehrhart::degree(&p).unwrap() < p.dim() {
            prop_assert_eq!(defect::expr_proof_value(&p).unwrap(), Int::zero());
        }
    }

    #[test]
    fn vanishing_sums_equal_interior_counts(p in simplex_strategy(3, 3)) {
        // Simplices are always simple, so the face sums are admissible.
        let sums = defect::vanishing_equations(&p).unwrap();
        for (idx, sum) in sums.iter().enumerate() {
            let k = idx as u32 + 1;
            prop_assert_eq!(sum, &ehrhart::count_interior(&p, k));
        }
    }
}
