mod common;

use carnot_core::derham::{self, d_split, enumerate_truncation, exterior_derivative, multicomplex_check, PolyForm};
use carnot_core::fiber;
use carnot_core::groups;

#[test]
fn derivative_matches_invariant_formula() {
    for g in common::test_groups().into_iter().chain([groups::engel()]) {
        for k in 0..=g.dim().min(3) {
            let space = enumerate_truncation(&g, k, None, 2);
            for i in 0..space.len() {
                let a = space.element(&g, i);
                assert_eq!(exterior_derivative(&g, &a), common::cartan_d(&g, &a), "{} {}", g.name(), derham::format_poly_form(&g, &a));
            }
        }
    }
}

#[test]
fn d_squared_vanishes_on_random_forms() {
    let mut rng = common::rng(11);
    for g in common::test_groups() {
        for k in 0..g.dim() {
            let mut a = PolyForm::zero();
            for w in fiber::weights_in_degree(&g, k) {
                for &c in fiber::basis(&g, k, w).iter() {
                    a.add_term(c, common::random_poly(&g, &mut rng, 3));
                }
            }
            assert!(exterior_derivative(&g, &exterior_derivative(&g, &a)).is_zero());
        }
    }
}

#[test]
fn multicomplex_identities() {
    for g in common::test_groups() {
        let report = multicomplex_check(&g, 0..=g.dim(), 3);
        assert!(report.holds(), "{}: {:?}", g.name(), report.failure);
    }
}

#[test]
fn d_split_is_weight_raise_and_sums_to_d() {
    let g = groups::nonstrat5();
    let space = enumerate_truncation(&g, 2, None, 2);
    for i in 0..space.len() {
        let a = space.element(&g, i);
        let w = a.homogeneous_weight(&g).unwrap();
        let mut total = PolyForm::zero();
        for (j, part) in d_split(&g, &a) {
            assert_eq!(part.homogeneous_weight(&g), Some(w + j));
            total = total.add(&part);
        }
        assert_eq!(total, exterior_derivative(&g, &a));
    }
}
