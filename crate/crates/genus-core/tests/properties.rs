//! Property suites: reflections are involutive isometries, pairings are
//! bilinear and symmetric, characteristic-ness is reflection invariant,
//! and resolve bookkeeping is permutation invariant.

use genus_core::lattice::{HomologyClass, IntersectionForm};
use genus_core::surfaces::{self, SurfaceConfiguration};
use proptest::prelude::*;

fn licensed_spheres_rank3() -> Vec<HomologyClass> {
    [
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![1, 1, 1],
        vec![2, 1, 1],
    ]
    .into_iter()
    .map(HomologyClass::new)
    .collect()
}

fn class3() -> impl Strategy<Value = HomologyClass> {
    proptest::collection::vec(-1000i64..=1000, 3).prop_map(HomologyClass::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2500))]

    #[test]
    fn reflection_is_an_involution(a in class3(), idx in 0usize..5) {
        let form = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        let s = &licensed_spheres_rank3()[idx];
        let once = form.reflect(s, &a).unwrap();
        let twice = form.reflect(s, &once).unwrap();
        prop_assert_eq!(twice, a);
    }

    #[test]
    fn reflection_is_an_isometry(a in class3(), b in class3(), idx in 0usize..5) {
        let form = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        let s = &licensed_spheres_rank3()[idx];
        let ra = form.reflect(s, &a).unwrap();
        let rb = form.reflect(s, &b).unwrap();
        prop_assert_eq!(form.pairing(&ra, &rb).unwrap(), form.pairing(&a, &b).unwrap());
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        a in class3(),
        b in class3(),
        c in class3(),
        k in -50i64..=50,
    ) {
        let form = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        prop_assert_eq!(form.pairing(&a, &b).unwrap(), form.pairing(&b, &a).unwrap());
        let b_plus_kc = b.add_scaled(k, &c).unwrap();
        prop_assert_eq!(
            form.pairing(&a, &b_plus_kc).unwrap(),
            form.pairing(&a, &b).unwrap() + k * form.pairing(&a, &c).unwrap()
        );
    }

    #[test]
    fn characteristic_survives_reflection(a in class3(), idx in 0usize..5) {
        let form = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        let s = &licensed_spheres_rank3()[idx];
        let ra = form.reflect(s, &a).unwrap();
        prop_assert_eq!(
            form.is_characteristic(&a).unwrap(),
            form.is_characteristic(&ra).unwrap()
        );
    }

    #[test]
    fn square_survives_reduction(a in class3()) {
        let form = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        let sq = form.square(&a).unwrap();
        let reduced = if sq >= 0 {
            genus_core::reduction::reduce_nonnegative(&a)
        } else {
            genus_core::reduction::reduce_negative(&a)
        };
        let (canon, trace) = reduced.unwrap();
        prop_assert_eq!(form.square(&canon).unwrap(), sq);
        prop_assert_eq!(trace.replay(&form).unwrap(), canon);
    }

    #[test]
    fn resolve_is_permutation_invariant(
        genera in proptest::collection::vec(0u64..6, 2..6),
        seed in any::<u64>(),
    ) {
        // a connected "path" configuration, then a relabelled shuffle of it
        let n = genera.len();
        let mut cfg = SurfaceConfiguration::new();
        for (i, g) in genera.iter().enumerate() {
            cfg.add_component(format!("c{i}"), *g).unwrap();
        }
        for i in 0..n - 1 {
            cfg.add_intersection(i, i + 1, 1 + (seed as u64 % 3), true).unwrap();
        }
        // permuted copy: reverse order
        let mut cfg2 = SurfaceConfiguration::new();
        for (i, g) in genera.iter().rev().enumerate() {
            cfg2.add_component(format!("r{i}"), *g).unwrap();
        }
        for i in 0..n - 1 {
            cfg2.add_intersection(n - 1 - i, n - 2 - i, 1 + (seed as u64 % 3), true).unwrap();
        }
        prop_assert_eq!(
            surfaces::resolve_genus(&cfg).unwrap(),
            surfaces::resolve_genus(&cfg2).unwrap()
        );
    }
}
