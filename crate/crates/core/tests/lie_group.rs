mod common;

use carnot_core::groups;
use carnot_core::lie::StratifiedAlgebra;
use carnot_core::poly::WeightedPoly;
use carnot_core::scalar::{self, Rational};
use proptest::prelude::*;

fn constants(alg: &StratifiedAlgebra, v: &[Rational]) -> Vec<WeightedPoly> {
    v.iter().map(|c| WeightedPoly::constant(alg.coords(), c.clone())).collect()
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(a, b)| scalar::rat(a, b)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bch_is_associative(x in point(4), y in point(4), z in point(4)) {
        for g in [groups::engel(), groups::h1_x_r()] {
            let (x, y, z) = (constants(&g, &x), constants(&g, &y), constants(&g, &z));
            let left = g.product(&g.product(&x, &y), &z);
            let right = g.product(&x, &g.product(&y, &z));
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn inverse_and_identity(x in point(5)) {
        let g = groups::nonstrat5();
        let x = constants(&g, &x);
        let e = constants(&g, &[scalar::zero(), scalar::zero(), scalar::zero(), scalar::zero(), scalar::zero()]);
        prop_assert_eq!(g.product(&x, &g.inverse(&x)), e.clone());
        prop_assert_eq!(g.product(&e, &x), x);
    }

    #[test]
    fn dilations_are_automorphisms(x in point(4), y in point(4), l in (1i64..=5, 1i64..=3)) {
        let g = groups::engel();
        let lam = scalar::rat(l.0, l.1);
        let dil = |v: &[WeightedPoly]| -> Vec<WeightedPoly> {
            v.iter().zip(g.weights()).map(|(p, &w)| p.scale(&num_traits::pow::pow(lam.clone(), w as usize))).collect()
        };
        let (x, y) = (constants(&g, &x), constants(&g, &y));
        prop_assert_eq!(dil(&g.product(&x, &y)), g.product(&dil(&x), &dil(&y)));
    }
}

/// `[X_i, X_j] = Σ c^k_ij X_k` as vector fields, and `X_j(0) = ∂_j`.
#[test]
fn frame_is_faithful() {
    for g in [groups::heisenberg(), groups::h1_x_r(), groups::engel(), groups::nonstrat5()] {
        let n = g.dim();
        let fr = g.frame();
        let origin = vec![scalar::zero(); n];
        for j in 0..n {
            for k in 0..n {
                let expected = if j == k { scalar::one() } else { scalar::zero() };
                assert_eq!(fr[j][k].evaluate(&origin), expected);
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let xk = WeightedPoly::var(g.coords(), k);
                    let lhs = &g.apply_field(i, &g.apply_field(j, &xk)) - &g.apply_field(j, &g.apply_field(i, &xk));
                    let mut rhs = WeightedPoly::zero(g.coords());
                    for (l, c) in g.bracket_basis(i, j) {
                        rhs.add_scaled(c, &g.apply_field(*l, &xk));
                    }
                    assert_eq!(lhs, rhs, "{} [{i},{j}] on x{k}", g.name());
                }
            }
        }
    }
}

#[test]
fn frame_matches_hand_written_fields() {
    let g = groups::h1_x_r();
    let f = common::poly(&g, "x1^3*t - 2*x2*x3 + t^2*x1");
    for j in 0..4 {
        assert_eq!(g.apply_field(j, &f), common::h1xr_field(j, &f));
    }
    let h = groups::heisenberg();
    let f = common::poly(&h, "x1*x2*x3 + x3^2");
    for j in 0..3 {
        assert_eq!(h.apply_field(j, &f), common::h1_field(j, &f));
    }
}

#[test]
fn validation_reports() {
    assert_eq!(groups::heisenberg().validate().summary(), "valid Carnot algebra, Q=4");
    assert_eq!(groups::h1_x_r().validate().summary(), "valid Carnot algebra, Q=5");
    let r = groups::nonstrat5().validate();
    assert!(r.is_graded_lie_algebra() && !r.is_carnot());
}
