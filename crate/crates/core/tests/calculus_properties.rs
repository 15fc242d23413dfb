use std::sync::Arc;

use ncalc_core::calculus::{fodc_morphisms, seeded_generator_sets};
use ncalc_core::cartan::{cartan_from_fodc, derivations};
use ncalc_core::duality::{dual, transpose, transpose_between, Side};
use ncalc_core::endo::universal_cartan;
use ncalc_core::{Algebra, Field, Matrix, UniversalCalculus};
use proptest::prelude::*;

fn builtins(f: Field) -> Vec<Arc<Algebra>> {
    vec![
        Arc::new(Algebra::truncated_polynomial(f, 2).unwrap()),
        Arc::new(Algebra::truncated_polynomial(f, 3).unwrap()),
        Arc::new(Algebra::matrix_algebra(f, 2).unwrap()),
        Arc::new(Algebra::cyclic_group_algebra(f, 3).unwrap()),
        Arc::new(Algebra::quantum_plane(f, &f.from_i64(-1), 2).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quotients_are_calculi_with_projections(seed in any::<u64>(), which in 0usize..5) {
        let a = builtins(Field::Rational)[which].clone();
        let u = UniversalCalculus::new(&a).unwrap();
        for gens in seeded_generator_sets(&u, seed, 2) {
            let q = u.quotient(&gens).unwrap();
            let report = q.fodc.validate();
            prop_assert!(report.passed(), "{}", report);
            let pi = u.projection_onto(&q.fodc).unwrap();
            prop_assert_eq!(pi.matrix(), q.projection.matrix());
            prop_assert_eq!(&pi.matrix().mul(u.fodc().d()), q.fodc.d());
            let c = cartan_from_fodc(&q.fodc, Side::Right).unwrap();
            prop_assert!(c.pair.is_valid(), "{}", c.pair.validate());
        }
    }

    #[test]
    fn transpose_is_contravariant(seed in any::<u64>(), which in 0usize..5) {
        let a = builtins(Field::Rational)[which].clone();
        let u = UniversalCalculus::new(&a).unwrap();
        let sets = seeded_generator_sets(&u, seed, 2);
        let first = u.quotient(&sets[0]).unwrap();
        let mut both = sets[0].clone();
        both.extend(sets[1].iter().cloned());
        let second = u.quotient(&both).unwrap();
        let between = fodc_morphisms(&first.fodc, &second.fodc).unwrap().unwrap().morphism;
        let composite = between.compose(&first.projection).unwrap();
        for side in [Side::Left, Side::Right] {
            let d0 = dual(first.projection.source(), side);
            let d1 = dual(between.source(), side);
            let d2 = dual(between.target(), side);
            let t_first = transpose_between(&first.projection, &d1, &d0).unwrap();
            let t_between = transpose_between(&between, &d2, &d1).unwrap();
            let t_composite = transpose_between(&composite, &d2, &d0).unwrap();
            prop_assert_eq!(t_composite.matrix(), &t_first.matrix().mul(t_between.matrix()));
            prop_assert!(t_first.is_injective());
        }
    }
}

#[test]
fn universal_calculus_over_prime_fields() {
    for f in [Field::Prime(2), Field::Prime(3), Field::Prime(7)] {
        for a in builtins(f) {
            let n = a.dim();
            let u = UniversalCalculus::new(&a).unwrap();
            assert_eq!(u.fodc().dim(), n * n - n);
            assert!(u.fodc().is_valid());
            let b = u.barred().unwrap();
            assert!(b.verify(&u).passed(), "{a} over {f}");
        }
    }
}

#[test]
fn pairing_adjunctions_on_builtins() {
    for a in builtins(Field::Rational) {
        let u = UniversalCalculus::new(&a).unwrap();
        for side in [Side::Left, Side::Right] {
            let d = dual(u.fodc().omega(), side);
            let report = d.pairing_report();
            assert!(report.passed(), "{a} {side}: {report}");
        }
    }
}

#[test]
fn transpose_of_identity_is_identity() {
    for a in builtins(Field::Rational) {
        let u = UniversalCalculus::new(&a).unwrap();
        let t = transpose(&u.fodc().omega().identity_map(), Side::Right).unwrap();
        assert_eq!(t.map.matrix(), &Matrix::identity(a.field(), t.map.matrix().rows()));
    }
}

#[test]
fn universal_pair_matches_dual_of_kernel() {
    for a in builtins(Field::Rational) {
        let n = a.dim();
        let c = universal_cartan(&a).unwrap();
        assert!(c.report.passed(), "{a}: {}", c.report);
        let u = UniversalCalculus::new(&a).unwrap();
        let from_fodc = cartan_from_fodc(u.fodc(), Side::Right).unwrap();
        assert_eq!(from_fodc.pair.dim(), n * (n - 1));
        assert_eq!(from_fodc.pair.image(), c.end0);
    }
}

#[test]
fn kaehler_pair_matches_derivations() {
    let f = Field::Rational;
    for (a, dim) in [
        (Algebra::truncated_polynomial(f, 2).unwrap(), 1),
        (Algebra::truncated_polynomial(f, 3).unwrap(), 2),
        (Algebra::cyclic_group_algebra(f, 3).unwrap(), 0),
    ] {
        let a = Arc::new(a);
        let u = UniversalCalculus::new(&a).unwrap();
        let k = u.kaehler().unwrap();
        assert_eq!(k.fodc.dim(), dim);
        let c = cartan_from_fodc(&k.fodc, Side::Right).unwrap();
        let der = derivations(&a);
        assert_eq!(der.dim(), dim);
        assert_eq!(c.pair.image(), der);
        assert!(c.pair.validate().passed_check("derivation"));
    }
}
