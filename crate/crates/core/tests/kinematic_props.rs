mod common;

use common::*;
use kinemalab_core::curvature::Region;
use kinemalab_core::geom::corpus::random_hull;
use kinemalab_core::geom::AngleBudget;
use kinemalab_core::kinematic::{decompose, kinematic_constants, kinematic_constants_with, pkf_lhs_mc, pkf_rhs, PkfProblem};
use kinemalab_core::rng::{self, gaussian_vector};
use kinemalab_core::{AxisBox, Error, HPolytope, Polyconvex, RigidMotion};
use proptest::prelude::*;

fn squares() -> (Polyconvex, Polyconvex) {
    (Polyconvex::single(HPolytope::cube(2, 0.0, 1.0)), Polyconvex::single(HPolytope::cube(2, 0.0, 0.5)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn independent_seeds_agree(s1 in any::<u64>(), s2 in any::<u64>(), j in 0usize..=2) {
        let (a, b) = squares();
        let p = PkfProblem::new(a, b, j);
        let e1 = pkf_lhs_mc(&p, 20_000, s1).unwrap();
        let e2 = pkf_lhs_mc(&p, 20_000, s2).unwrap();
        let spread = 5.0 * (e1.stderr.powi(2) + e2.stderr.powi(2)).sqrt();
        prop_assert!((e1.estimate - e2.estimate).abs() <= spread.max(1e-12), "{} vs {}", e1.estimate, e2.estimate);
    }

    #[test]
    fn mc_is_symmetric_under_swap(seed in any::<u64>()) {
        let (a, b) = squares();
        let ab = pkf_lhs_mc(&PkfProblem::new(a.clone(), b.clone(), 0), 20_000, seed).unwrap();
        let ba = pkf_lhs_mc(&PkfProblem::new(b, a, 0), 20_000, seed ^ 1).unwrap();
        prop_assert!((ab.estimate - ba.estimate).abs() <= 5.0 * (ab.stderr.powi(2) + ba.stderr.powi(2)).sqrt());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constants_do_not_depend_on_template_radii(
        d in 2usize..=3,
        j in 0usize..=3,
        radii in proptest::collection::vec((0.3f64..3.0, 0.5f64..2.0), 6),
    ) {
        prop_assume!(j <= d);
        let base = kinematic_constants(d, j).unwrap();
        let other = match kinematic_constants_with(d, j, &radii) {
            Ok(c) => c,
            Err(Error::Singular(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        for (x, y) in base.entries.iter().zip(&other.entries) {
            prop_assert!((x.value - y.value).abs() <= 1e-9 * x.value.abs().max(1.0), "{x:?} vs {y:?}");
        }
    }

    #[test]
    fn rhs_is_symmetric_under_swap(seed in any::<u64>(), j in 0usize..=2) {
        let a = Polyconvex::single(random_hull(2, 6, seed).unwrap());
        let b = Polyconvex::single(random_hull(2, 5, seed ^ 1).unwrap());
        let (x, _) = pkf_rhs(&PkfProblem::new(a.clone(), b.clone(), j)).unwrap();
        let (y, _) = pkf_rhs(&PkfProblem::new(b, a, j)).unwrap();
        prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
    }

    #[test]
    fn local_rhs_adds_over_a_box_partition(seed in any::<u64>(), j in 0usize..=2, frac in 0.2f64..0.8) {
        let a = random_hull(2, 7, seed).unwrap();
        let b = Polyconvex::single(random_hull(2, 5, seed ^ 1).unwrap());
        let bb = a.bounding_box().expanded(0.1);
        let cut = bb.lo[0] + frac * (bb.hi[0] - bb.lo[0]);
        let left = AxisBox::new(bb.lo.clone(), vec![cut, bb.hi[1]]).unwrap();
        let right = AxisBox::new(vec![cut, bb.lo[1]], bb.hi.clone()).unwrap();
        let a = Polyconvex::single(a);
        let rhs = |phi: Option<Vec<AxisBox>>| pkf_rhs(&PkfProblem::new(a.clone(), b.clone(), j).with_boxes(phi, None)).unwrap().0;
        let whole = rhs(None);
        let parts = rhs(Some(vec![left])) + rhs(Some(vec![right]));
        prop_assert!((whole - parts).abs() <= 1e-9 * whole.abs().max(1.0), "{whole} vs {parts}");
    }

    #[test]
    fn decomposition_is_motion_invariant(d in 2usize..=3, seed in any::<u64>()) {
        let a = random_hull(d, 6, seed).unwrap();
        let b = random_hull(d, 5, seed ^ 1).unwrap();
        let mut r = rng::stream(seed, 3);
        let rot = random_motion(&mut r, d, 0.0);
        let shift = a.centroid() - rot.apply(&b.centroid()) + gaussian_vector(&mut r, d) * 0.4;
        let g = RigidMotion::translation(shift).compose(&rot);
        let eta = random_motion(&mut r, d, 2.0);
        let budget = AngleBudget::default();
        let (Ok(x), Ok(y)) = (
            decompose(&a, &b, &g, &Region::all(), &budget),
            decompose(&a.transformed(&eta), &b, &eta.compose(&g), &Region::all(), &budget),
        ) else {
            return Ok(());
        };
        for (c, e) in x.iter().zip(&y) {
            prop_assert!(c.residual <= 1e-8 && e.residual <= 1e-8);
            prop_assert!((c.lhs - e.lhs).abs() <= 1e-9 * c.lhs.abs().max(1.0), "k={}: {} vs {}", c.k, c.lhs, e.lhs);
            prop_assert!((c.connecting - e.connecting).abs() <= 1e-9 * c.connecting.abs().max(1.0));
        }
    }
}
