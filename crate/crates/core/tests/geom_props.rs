mod common;

use common::*;
use kinemalab_core::geom::corpus::random_hull;
use kinemalab_core::rng;
use kinemalab_core::HPolytope;
use proptest::prelude::*;

fn body(d: usize, n: usize, seed: u64) -> HPolytope {
    random_hull(d, n, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn support_is_additive(d in 2usize..=3, n in 4usize..9, m in 4usize..8, seed in any::<u64>()) {
        let k = body(d, n, seed);
        let l = body(d, m, seed ^ 1);
        let dirs = directions(&mut rng::stream(seed, 9), d, 16);
        prop_assert_eq!(support_additivity(&k, &l, &dirs), Ok(()));
    }

    #[test]
    fn caps_nest_and_add(d in 2usize..=3, seed in any::<u64>(), s in 0.05f64..1.0, t in 0.05f64..1.0) {
        let k = body(d, 7, seed);
        let l = body(d, 5, seed ^ 2);
        let dirs = directions(&mut rng::stream(seed, 3), d, 3);
        prop_assert_eq!(cap_nesting(&k, &dirs[0], s, t), Ok(()));
        prop_assert_eq!(cap_sum_inclusion(&k, &l, &dirs[1], s, t), Ok(()));
        prop_assert_eq!(cap_sum_homothetic(&k, 0.5 + t, &dirs[2], &dirs[0], s), Ok(()));
    }

    #[test]
    fn difference_bodies_agree(d in 2usize..=3, seed in any::<u64>()) {
        let u = body(d, 6, seed);
        let v = body(d, 5, seed ^ 3);
        let dirs = directions(&mut rng::stream(seed, 4), d, 16);
        prop_assert_eq!(difference_bodies(&u, &v, &dirs), Ok(()));
    }

    #[test]
    fn vertex_normal_cones_tile(d in 2usize..=3, n in 4usize..12, seed in any::<u64>()) {
        let k = body(d, n, seed);
        let dirs = directions(&mut rng::stream(seed, 5), d, 24);
        prop_assert_eq!(normal_cone_tiling(&k, &dirs), Ok(()));
    }

    #[test]
    fn euler_ignores_redundant_pieces(d in 2usize..=3, seed in any::<u64>()) {
        let mut r = rng::stream(seed, 6);
        let a = random_box(&mut r, d);
        let b = random_box(&mut r, d);
        let c = random_box(&mut r, d);
        let inner = kinemalab_core::AxisBox::new(
            a.lo.iter().zip(&a.hi).map(|(l, h)| l + 0.25 * (h - l)).collect(),
            a.lo.iter().zip(&a.hi).map(|(l, h)| l + 0.75 * (h - l)).collect(),
        ).unwrap();
        let pieces = vec![HPolytope::from_box(&a), HPolytope::from_box(&b), HPolytope::from_box(&c)];
        prop_assert_eq!(euler_redundant(&pieces, &HPolytope::from_box(&inner)), Ok(()));
    }

    #[test]
    fn cap_normals_stay_close(d in 2usize..=3, seed in any::<u64>(), which in 0usize..3) {
        let k = body(d, 6, seed);
        let nu = directions(&mut rng::stream(seed, 7), d, 1).remove(0);
        prop_assert_eq!(cap_diameter(&k, &nu, [0.01, 0.05, 0.1][which], 1500, seed), Ok(()));
    }
}
