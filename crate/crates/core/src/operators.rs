//! Left-invariant differential operators acting on an unspecified function `f`.
//!
//! An operator is a rational combination of words `X_{a1} X_{a2} ⋯ X_{am}` (outermost field
//! first). Forms with such coefficients describe `d` and `d_c` of `f ξ` for invariant `ξ`
//! without choosing `f`.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::derham::PolyForm;
use crate::fiber::{self, FiberForm, Form};
use crate::lie::StratifiedAlgebra;
use crate::ring::Coefficient;
use crate::poly::WeightedPoly;
use crate::scalar::{self, Rational};

/// Longest words first, then lexicographic.
type Word = (Reverse<usize>, Vec<usize>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldOperator {
    terms: BTreeMap<Word, Rational>,
}

impl FieldOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity: `f` itself.
    pub fn identity() -> Self {
        Self::word(&[], scalar::one())
    }

    pub fn word(w: &[usize], c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if c != scalar::zero() {
            terms.insert((Reverse(w.len()), w.to_vec()), c);
        }
        Self { terms }
    }

    /// `X_j ∘ self`.
    pub fn apply_field(&self, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((n, w), c)| {
                let mut v = Vec::with_capacity(n.0 + 1);
                v.push(j);
                v.extend_from_slice(w);
                ((Reverse(n.0 + 1), v), c.clone())
            })
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|((_, w), c)| (w.as_slice(), c))
    }

    /// Text such as `X2X1f - Tf`, with field names from the algebra.
    pub fn format(&self, alg: &StratifiedAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let neg = *c < scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body: String = w.iter().map(|&j| alg.labels()[j].as_str()).collect::<String>() + "f";
            let text = if mag == scalar::one() { body } else { format!("{}·{body}", scalar::format_rational(&mag)) };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&text);
        }
        out
    }
}

impl Coefficient for FieldOperator {
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let e = terms.entry(w.clone()).or_insert_with(scalar::zero);
            *e += c;
            if *e == scalar::zero() {
                terms.remove(w);
            }
        }
        Self { terms }
    }
    /// Composition `self ∘ other`.
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((n, a), c) in &self.terms {
            for ((m, b), k) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out = out.plus(&Self { terms: BTreeMap::from([((Reverse(n.0 + m.0), w), c.clone() * k)]) });
            }
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        if *c == scalar::zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, k)| (w.clone(), k.clone() * c)).collect() }
    }
}

pub type OperatorForm = Form<FieldOperator>;

/// `f ξ` for an invariant form `ξ`.
pub fn generic(xi: &FiberForm) -> OperatorForm {
    xi.map_coeffs(|c| FieldOperator::identity().scale(c))
}

/// `d` on left-invariant frames: `d(F θ_I) = Σ_j (X_j F) θ_j ∧ θ_I + F d0 θ_I`.
pub fn exterior_derivative(alg: &StratifiedAlgebra, a: &OperatorForm) -> OperatorForm {
    let mut out = fiber::d0(alg, a);
    for (c, f) in a.terms() {
        for j in 0..alg.dim() {
            if let Some((neg, t)) = fiber::wedge_basis(1 << j, c) {
                let g = f.apply_field(j);
                out.add_term(t, if neg { g.negated() } else { g });
            }
        }
    }
    out
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("form is not in ker □0")]
pub struct NotRumin;

/// `d_c(f ξ) = Π0 d ᾱ` with `ᾱ = Σ_m (−d0⁻¹(d − d0))^m (f ξ)`.
pub fn rumin_dc(alg: &StratifiedAlgebra, xi: &FiberForm) -> Result<OperatorForm, NotRumin> {
    if fiber::pi0(alg, xi) != *xi {
        return Err(NotRumin);
    }
    let mut acc = generic(xi);
    let mut term = acc.clone();
    loop {
        let rest = exterior_derivative(alg, &term).sub(&fiber::d0(alg, &term));
        let next = fiber::d0_pinv(alg, &rest).neg();
        if next.is_zero() {
            break;
        }
        acc = acc.add(&next);
        term = next;
    }
    Ok(fiber::pi0(alg, &exterior_derivative(alg, &acc)))
}

/// Applies each word to `f`, innermost field first.
pub fn apply(alg: &StratifiedAlgebra, op: &FieldOperator, f: &WeightedPoly) -> WeightedPoly {
    let mut out = WeightedPoly::zero(alg.coords());
    for (w, c) in op.terms() {
        let mut v = f.clone();
        for &j in w.iter().rev() {
            v = alg.apply_field(j, &v);
        }
        out.add_scaled(c, &v);
    }
    out
}

/// The polynomial form obtained by choosing `f`.
pub fn instantiate(alg: &StratifiedAlgebra, a: &OperatorForm, f: &WeightedPoly) -> PolyForm {
    let mut out = PolyForm::zero();
    for (c, op) in a.terms() {
        let v = apply(alg, op, f);
        if !v.is_zero() {
            out.add_term(c, v);
        }
    }
    out
}

pub fn format_operator_form(alg: &StratifiedAlgebra, a: &OperatorForm) -> String {
    fiber::format_form(alg, a, |op| op.format(alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::covector;
    use crate::groups;

    #[test]
    fn heisenberg_horizontal_one_form() {
        let h = groups::heisenberg();
        let dc = rumin_dc(&h, &FiberForm::term(covector(&[0]), scalar::one())).unwrap();
        assert!(dc.get(covector(&[0, 2])).is_some());
        assert!(dc.get(covector(&[1, 2])).is_some());
        assert_eq!(dc.len(), 2);
        assert!(dc.terms().all(|(_, op)| op.terms().all(|(w, _)| (1..=2).contains(&w.len()))));
    }

    #[test]
    fn composition_is_word_concatenation() {
        let a = FieldOperator::word(&[0], scalar::one());
        let b = FieldOperator::word(&[1], scalar::int(2));
        assert_eq!(a.times(&b), FieldOperator::word(&[0, 1], scalar::int(2)));
        assert_eq!(FieldOperator::identity().apply_field(1).apply_field(0), FieldOperator::word(&[0, 1], scalar::one()));
    }
}
