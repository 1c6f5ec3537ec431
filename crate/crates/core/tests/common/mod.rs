//! Independent oracles shared by the integration suites and the acceptance runner.
#![allow(dead_code)]

use std::sync::Arc;

use carnot_core::derham::PolyForm;
use carnot_core::fiber::{self, covector, indices, FiberForm};
use carnot_core::lie::StratifiedAlgebra;
use carnot_core::linalg::{SparseVec, Subspace};
use carnot_core::poly::{monomials_up_to, WeightedPoly};
use carnot_core::scalar::{self, int, Rational};
use carnot_core::{groups, Coefficient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn test_groups() -> Vec<Arc<StratifiedAlgebra>> {
    vec![groups::heisenberg(), groups::h1_x_r(), groups::nonstrat5()]
}

pub fn poly(alg: &StratifiedAlgebra, s: &str) -> WeightedPoly {
    WeightedPoly::parse(s, alg.coords()).unwrap()
}

pub fn term(alg: &StratifiedAlgebra, idx: &[usize], s: &str) -> PolyForm {
    PolyForm::term(covector(idx), poly(alg, s))
}

pub fn fiber_form(terms: &[(&[usize], i64)]) -> FiberForm {
    FiberForm::from_terms(terms.iter().map(|(i, c)| (covector(i), int(*c))))
}

/// Left-invariant fields of `h1 × R` (coordinates x1, x2, x3, t), written out by hand.
pub fn h1xr_field(j: usize, f: &WeightedPoly) -> WeightedPoly {
    let s = f.space();
    let d = |k: usize| f.partial(k).unwrap();
    let half = scalar::rat(1, 2);
    match j {
        0 => &d(0) - &(&WeightedPoly::var(s, 1) * &d(3)).scale(&half),
        1 => &d(1) + &(&WeightedPoly::var(s, 0) * &d(3)).scale(&half),
        2 => d(2),
        3 => d(3),
        _ => unreachable!(),
    }
}

/// Left-invariant fields of the Heisenberg group (coordinates x1, x2, x3), by hand.
pub fn h1_field(j: usize, f: &WeightedPoly) -> WeightedPoly {
    let s = f.space();
    let d = |k: usize| f.partial(k).unwrap();
    let half = scalar::rat(1, 2);
    match j {
        0 => &d(0) - &(&WeightedPoly::var(s, 1) * &d(2)).scale(&half),
        1 => &d(1) + &(&WeightedPoly::var(s, 0) * &d(2)).scale(&half),
        2 => d(2),
        _ => unreachable!(),
    }
}

/// `α(v_1, …, v_k)` for basis-coordinate vectors, via determinants of `θ_I(v_s)`.
fn evaluate(alpha: &PolyForm, vs: &[SparseVec], space: &Arc<carnot_core::VarSpace>) -> WeightedPoly {
    let mut out = WeightedPoly::zero(space);
    for (c, f) in alpha.terms() {
        let idx = indices(c);
        if idx.len() != vs.len() {
            continue;
        }
        let m: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| vs.iter().map(|v| v.get(&i).cloned().unwrap_or_else(scalar::zero)).collect())
            .collect();
        let det = determinant(m);
        if det != scalar::zero() {
            out.add_scaled(&det, f);
        }
    }
    out
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| m[r][col] != scalar::zero()) else { return scalar::zero() };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let f = m[r][col].clone() / m[col][col].clone();
            for c in col..n {
                let v = m[col][c].clone() * &f;
                m[r][c] -= v;
            }
        }
    }
    det
}

/// `dα` from the invariant formula
/// `dα(X_0..X_k) = Σ (−1)^i X_i α(..X̂_i..) + Σ_{i<l} (−1)^{i+l} α([X_i,X_l], ..X̂_i..X̂_l..)`.
pub fn cartan_d(alg: &StratifiedAlgebra, alpha: &PolyForm) -> PolyForm {
    let Some(k) = alpha.degree() else { return PolyForm::zero() };
    let n = alg.dim();
    let s = alg.coords();
    let e = |i: usize| -> SparseVec { std::iter::once((i, scalar::one())).collect() };
    let mut out = PolyForm::zero();
    for c in fiber_masks(n, k + 1) {
        let js = indices(c);
        let mut val = WeightedPoly::zero(s);
        for (i, &ji) in js.iter().enumerate() {
            let rest: Vec<SparseVec> = js.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &j)| e(j)).collect();
            let g = alg.apply_field(ji, &evaluate(alpha, &rest, s));
            let sign = if i % 2 == 0 { scalar::one() } else { -scalar::one() };
            val.add_scaled(&sign, &g);
        }
        for i in 0..js.len() {
            for l in i + 1..js.len() {
                let br = alg.bracket_basis(js[i], js[l]).clone();
                if br.is_empty() {
                    continue;
                }
                let mut vs = vec![br];
                vs.extend(js.iter().enumerate().filter(|&(p, _)| p != i && p != l).map(|(_, &j)| e(j)));
                let sign = if (i + l) % 2 == 0 { scalar::one() } else { -scalar::one() };
                val.add_scaled(&sign, &evaluate(alpha, &vs, s));
            }
        }
        if !val.is_zero() {
            out.add_term(c, val);
        }
    }
    out
}

fn fiber_masks(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// A seeded pseudo-random polynomial with every monomial of degree ≤ `bound`.
pub fn random_poly(alg: &StratifiedAlgebra, rng: &mut ChaCha8Rng, bound: u32) -> WeightedPoly {
    let mut p = WeightedPoly::zero(alg.coords());
    for m in monomials_up_to(alg.coords(), bound) {
        if rng.gen_bool(0.4) {
            let c = scalar::rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            p = &p + &WeightedPoly::monomial(alg.coords(), m, c);
        }
    }
    p
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Checks the three-way Hodge splitting, orthogonality, `δ0 = ±⋆d0⋆` and the `⋆` permutation
/// of summands on every bidegree. Returns the number of blocks checked.
pub fn hodge_identities(alg: &StratifiedAlgebra) -> Result<usize, String> {
    let n = alg.dim();
    let mut blocks = 0;
    for k in 0..=n {
        for p in fiber::weights_in_degree(alg, k) {
            let h = fiber::hodge_decompose(alg, k, p);
            let dim = h.basis.len();
            let total = h.image_d0.sum(&h.harmonic).sum(&h.image_delta0);
            if total.dim() != dim || h.image_d0.dim() + h.harmonic.dim() + h.image_delta0.dim() != dim {
                return Err(format!("({k},{p}): summands do not split"));
            }
            let parts = [h.image_d0_forms(), h.harmonic_forms(), h.image_delta0_forms()];
            for a in 0..3 {
                for b in a + 1..3 {
                    for x in &parts[a] {
                        for y in &parts[b] {
                            if x.inner(y) != scalar::zero() {
                                return Err(format!("({k},{p}): summands {a},{b} not orthogonal"));
                            }
                        }
                    }
                }
            }
            // δ0 = (−1)^{n(k−1)+1} ⋆ d0 ⋆ on k-forms
            if k > 0 {
                let sign = if (n * (k - 1) + 1) % 2 == 0 { scalar::one() } else { -scalar::one() };
                for &c in h.basis.iter() {
                    let a = FiberForm::term(c, scalar::one());
                    let lhs = fiber::delta0(alg, &a);
                    let rhs = fiber::hodge_star(alg, &fiber::d0(alg, &fiber::hodge_star(alg, &a))).scale(&sign);
                    if lhs != rhs {
                        return Err(format!("({k},{p}): δ0 ≠ ±⋆d0⋆ on {}", fiber::label(alg, c)));
                    }
                }
            }
            let q = alg.homogeneous_dimension();
            let dual = fiber::hodge_decompose(alg, n - k, q - p);
            let star = |forms: &[FiberForm]| {
                Subspace::span(dual.basis.len(), forms.iter().map(|f| fiber::hodge_star(alg, f).to_sparse(&dual.basis)))
            };
            if star(&parts[1]) != dual.harmonic
                || star(&parts[0]) != dual.image_delta0
                || star(&parts[2]) != dual.image_d0
            {
                return Err(format!("({k},{p}): ⋆ does not permute the summands"));
            }
            blocks += 1;
        }
    }
    Ok(blocks)
}

/// `Σ_{i<j}` pieces of `ω(X_a, X_b)` read off from a 2-form.
pub fn two_form_value(w: &FiberForm, a: usize, b: usize) -> Rational {
    if a == b {
        return scalar::zero();
    }
    let v = w.get(covector(&[a.min(b), a.max(b)])).cloned().unwrap_or_else(scalar::zero);
    if a < b { v } else { -v }
}

pub fn zero_like(p: &WeightedPoly) -> WeightedPoly {
    p.zero_like()
}
