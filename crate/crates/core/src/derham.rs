//! Forms with polynomial coefficients and the weight splitting of the exterior derivative.
//!
//! A term `f θ_I` with `f` weighted-homogeneous of degree `m` has *grade* `m + w(I)`. The
//! exterior derivative preserves grade: `X_l` lowers the coefficient degree by exactly `w_l`
//! while `θ_l` raises the form weight by `w_l`. So every computation splits into finite
//! cells indexed by (degree, weight, grade).

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::fiber::{self, format_form, Covector, FiberForm, Form};
use crate::lie::StratifiedAlgebra;
use crate::poly::{monomials_up_to, Monomial, WeightedPoly};
use crate::ring::Coefficient;
use crate::scalar::{self, Rational};

pub type PolyForm = Form<WeightedPoly>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerhamError {
    #[error("form is not homogeneous in weight (weights {0:?})")]
    NotHomogeneous(Vec<u32>),
}

/// Constant-coefficient form viewed as a polynomial form.
pub fn lift(alg: &StratifiedAlgebra, f: &FiberForm) -> PolyForm {
    f.map_coeffs(|c| WeightedPoly::constant(alg.coords(), c.clone()))
}

/// The form itself if all coefficients are constants.
pub fn as_invariant(f: &PolyForm) -> Option<FiberForm> {
    f.terms()
        .all(|(_, p)| p.is_constant())
        .then(|| FiberForm::from_terms(f.terms().map(|(c, p)| (c, p.constant_term()))))
}

/// `f · θ_I` for one covector.
pub fn poly_term(c: Covector, f: WeightedPoly) -> PolyForm {
    PolyForm::term(c, f)
}

/// All weight-raising pieces of `d`, keyed by the raise `j` (`0` is `d0`).
pub fn d_split(alg: &StratifiedAlgebra, a: &PolyForm) -> BTreeMap<u32, PolyForm> {
    let mut out: BTreeMap<u32, PolyForm> = BTreeMap::new();
    for (c, f) in a.terms() {
        for l in 0..alg.dim() {
            if c & (1 << l) != 0 {
                continue;
            }
            let g = alg.apply_field(l, f);
            if g.is_zero() {
                continue;
            }
            let (neg, t) = fiber::wedge_basis(1 << l, c).expect("disjoint");
            let g = if neg { g.negated() } else { g };
            out.entry(alg.weight(l)).or_default().add_term(t, g);
        }
        let dc = fiber::d0(alg, &FiberForm::term(c, scalar::one()));
        for (t, r) in dc.terms() {
            out.entry(0).or_default().add_scaled_term(t, r, f);
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

pub fn exterior_derivative(alg: &StratifiedAlgebra, a: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero();
    for part in d_split(alg, a).values() {
        out = out.add(part);
    }
    out
}

/// `d_j a`: the part of `d a` raising the weight by exactly `j`.
pub fn d_part(alg: &StratifiedAlgebra, a: &PolyForm, j: u32) -> PolyForm {
    d_split(alg, a).remove(&j).unwrap_or_default()
}

/// Weight splitting for a weight-homogeneous form: `d a = Σ_j d_j a` with `j ∈ {0} ∪ weights`.
pub fn weight_split_d(alg: &StratifiedAlgebra, a: &PolyForm) -> Result<Vec<(u32, PolyForm)>, DerhamError> {
    let w = a.weights(alg);
    if w.len() > 1 {
        return Err(DerhamError::NotHomogeneous(w.into_iter().collect()));
    }
    let mut split = d_split(alg, a);
    let mut raises: Vec<u32> = vec![0];
    let mut ws: Vec<u32> = alg.weights().to_vec();
    ws.sort();
    ws.dedup();
    raises.extend(ws);
    Ok(raises.into_iter().map(|j| (j, split.remove(&j).unwrap_or_default())).collect())
}

/// Grade of a single term.
pub fn term_grade(alg: &StratifiedAlgebra, c: Covector, m: &Monomial) -> u32 {
    fiber::weight(alg, c) + m.weighted_degree(alg.weights())
}

/// Splits a form into its grade-homogeneous pieces.
pub fn grade_components(alg: &StratifiedAlgebra, a: &PolyForm) -> BTreeMap<u32, PolyForm> {
    let mut out: BTreeMap<u32, PolyForm> = BTreeMap::new();
    for (c, f) in a.terms() {
        for (m, r) in f.terms() {
            let g = term_grade(alg, c, m);
            let piece = WeightedPoly::monomial(alg.coords(), m.clone(), r.clone());
            out.entry(g).or_default().add_term(c, piece);
        }
    }
    out
}

/// Largest coefficient weighted degree appearing in the form.
pub fn coefficient_degree(a: &PolyForm) -> Option<u32> {
    a.terms().filter_map(|(_, f)| f.weighted_degree()).max()
}

pub fn format_poly_form(alg: &StratifiedAlgebra, a: &PolyForm) -> String {
    format_form(alg, a, |p| p.to_string())
}

/// A finite monomial basis for polynomial `k`-forms with coefficients of degree at most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationSpace {
    pub degree: usize,
    pub weight: Option<u32>,
    pub bound: u32,
    pub basis: Vec<(Monomial, Covector)>,
}

impl TruncationSpace {
    pub fn element(&self, alg: &StratifiedAlgebra, i: usize) -> PolyForm {
        let (m, c) = &self.basis[i];
        PolyForm::term(*c, WeightedPoly::monomial(alg.coords(), m.clone(), scalar::one()))
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether every term of `a` is a basis element.
    pub fn contains(&self, alg: &StratifiedAlgebra, a: &PolyForm) -> bool {
        a.terms().all(|(c, f)| {
            fiber::degree(c) == self.degree
                && self.weight.is_none_or(|w| fiber::weight(alg, c) == w)
                && f.weighted_degree().is_none_or(|d| d <= self.bound)
        })
    }
}

pub fn enumerate_truncation(alg: &StratifiedAlgebra, k: usize, weight: Option<u32>, bound: u32) -> TruncationSpace {
    let monos = monomials_up_to(alg.coords(), bound);
    let weights: Vec<u32> = match weight {
        Some(w) => vec![w],
        None => fiber::weights_in_degree(alg, k),
    };
    let mut covs: Vec<Covector> = weights.iter().flat_map(|&w| fiber::basis(alg, k, w).to_vec()).collect();
    covs.sort_by_key(|&c| fiber::order_key(c));
    let basis = covs
        .iter()
        .flat_map(|&c| monos.iter().map(move |m| (m.clone(), c)))
        .collect();
    TruncationSpace { degree: k, weight, bound, basis }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MulticomplexFailure {
    /// The violated identity `Σ_{i+j=n} d_i d_j = 0`.
    pub n: u32,
    pub element: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MulticomplexReport {
    pub elements_checked: usize,
    pub identities_checked: usize,
    pub failure: Option<MulticomplexFailure>,
}

impl MulticomplexReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `Σ_{i+j=n} d_i d_j = 0` for `n = 0..=2s` on every basis element of the truncations.
pub fn multicomplex_check(alg: &StratifiedAlgebra, degrees: RangeInclusive<usize>, bound: u32) -> MulticomplexReport {
    let s = alg.step();
    let mut report = MulticomplexReport { elements_checked: 0, identities_checked: 0, failure: None };
    for k in degrees {
        if k > alg.dim() {
            continue;
        }
        let space = enumerate_truncation(alg, k, None, bound);
        for i in 0..space.len() {
            let a = space.element(alg, i);
            let first = d_split(alg, &a);
            let mut sums: BTreeMap<u32, PolyForm> = BTreeMap::new();
            for (j, dj) in &first {
                for (i2, part) in d_split(alg, dj) {
                    let e = sums.entry(i2 + j).or_default();
                    *e = e.add(&part);
                }
            }
            report.elements_checked += 1;
            for n in 0..=2 * s {
                report.identities_checked += 1;
                if let Some(res) = sums.get(&n).filter(|f| !f.is_zero()) {
                    report.failure = Some(MulticomplexFailure {
                        n,
                        element: format_poly_form(alg, &a),
                        residual: format_poly_form(alg, res),
                    });
                    return report;
                }
            }
        }
    }
    report
}

/// Substitutes constants for all coefficients' variables; used in sampling checks.
pub fn evaluate_form(a: &PolyForm, point: &[Rational]) -> FiberForm {
    FiberForm::from_terms(a.terms().map(|(c, f)| (c, f.evaluate(point))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::covector;
    use crate::groups;

    fn pf(alg: &StratifiedAlgebra, terms: &[(&[usize], &str)]) -> PolyForm {
        PolyForm::from_terms(
            terms
                .iter()
                .map(|(idx, s)| (covector(idx), WeightedPoly::parse(s, alg.coords()).unwrap())),
        )
    }

    #[test]
    fn derivative_examples() {
        let h = groups::heisenberg();
        assert_eq!(exterior_derivative(&h, &pf(&h, &[(&[], "x1")])), pf(&h, &[(&[0], "1")]));
        assert_eq!(exterior_derivative(&h, &pf(&h, &[(&[2], "1")])), pf(&h, &[(&[0, 1], "-1")]));
        let a = pf(&h, &[(&[2], "x1*x2")]);
        assert!(exterior_derivative(&h, &exterior_derivative(&h, &a)).is_zero());
    }

    #[test]
    fn split_of_f_theta3() {
        let g = groups::h1_x_r();
        let a = pf(&g, &[(&[2], "x1^2*x2 + t")]);
        let parts: BTreeMap<u32, PolyForm> = weight_split_d(&g, &a).unwrap().into_iter().collect();
        assert!(parts[&0].is_zero());
        // X1 f = 2 x1 x2 − x2/2 · ∂_t f, X2 f = x1^2 + x1/2 · ∂_t f, T f = 1
        let d1 = pf(&g, &[(&[0, 2], "2*x1*x2 - 1/2*x2"), (&[1, 2], "x1^2 + 1/2*x1")]);
        assert_eq!(parts[&1], d1);
        assert_eq!(parts[&2], pf(&g, &[(&[2, 3], "-1")]));
        assert!(weight_split_d(&g, &pf(&g, &[(&[0], "1"), (&[3], "1")])).is_err());
    }

    #[test]
    fn invariant_forms_only_have_d0() {
        let g = groups::h1_x_r();
        let a = pf(&g, &[(&[3], "2"), (&[0, 1], "1")]);
        let parts = weight_split_d(&g, &pf(&g, &[(&[3], "2")])).unwrap();
        for (j, p) in parts {
            if j > 0 {
                assert!(p.is_zero());
            }
        }
        let lifted = lift(&g, &as_invariant(&a).unwrap());
        assert_eq!(d_part(&g, &lifted, 0), lift(&g, &fiber::d0(&g, &as_invariant(&a).unwrap())));
        assert!(exterior_derivative(&g, &pf(&g, &[(&[], "5")])).is_zero());
    }

    #[test]
    fn truncation_examples() {
        let h = groups::heisenberg();
        let t = enumerate_truncation(&h, 0, None, 1);
        let names: Vec<String> = (0..t.len()).map(|i| format_poly_form(&h, &t.element(&h, i))).collect();
        assert_eq!(names, vec!["1", "x1", "x2"]);
        assert!(enumerate_truncation(&h, 4, None, 3).is_empty());
        assert_eq!(enumerate_truncation(&h, 1, None, 0).len(), 3);
    }

    #[test]
    fn multicomplex_small() {
        let h = groups::heisenberg();
        assert!(multicomplex_check(&h, 0..=2, 3).holds());
        let g = groups::h1_x_r();
        assert!(multicomplex_check(&g, 0..=3, 3).holds());
    }

    #[test]
    fn d_on_one_forms_matches_cartan_formula() {
        // dθ_k(X_i, X_j) = −θ_k([X_i, X_j])
        let g = groups::engel();
        for k in 0..g.dim() {
            let d = exterior_derivative(&g, &pf(&g, &[(&[k], "1")]));
            for i in 0..g.dim() {
                for j in i + 1..g.dim() {
                    let got = d.get(covector(&[i, j])).map(|p| p.constant_term()).unwrap_or_else(scalar::zero);
                    assert_eq!(got, -g.structure_constant(i, j, k));
                }
            }
        }
    }
}
