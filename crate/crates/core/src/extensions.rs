//! One-dimensional central extensions `ĝ = R ⊕ g` twisted by a 2-cocycle, and lifts of
//! homomorphisms and Pansu derivatives to them.

use std::sync::Arc;

use thiserror::Error;

use crate::derham::{self, PolyForm};
use crate::fiber::{self, covector, indices, FiberForm};
use crate::lie::{bracket_preserving, AlgebraError, AlgebraSpec, Bracket, HomFailure, StratifiedAlgebra};
use crate::linalg::{SparseSystem, SparseVec};
use crate::pansu::{pansu_derivative, pansu_pullback, PansuDerivative, PansuError, PolyMap};
use crate::poly::{monomials_of_weighted_degree, WeightedPoly};
use crate::scalar::{self, Rational};
use crate::spectral::{SpectralEngine, SpectralError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtensionError {
    #[error("cocycle must be a left-invariant 2-form")]
    NotTwoForm,
    #[error("not a cocycle: d0 ω = {0}")]
    NotCocycle(String),
    #[error("no primitive of the weight-{weight} component among horizontal 1-forms with coefficient degree {degree}")]
    NoPrimitive { weight: u32, degree: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pansu(#[from] PansuError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `d0 ω = 0` for a 2-form.
pub fn cocycle_check(alg: &StratifiedAlgebra, w: &FiberForm) -> bool {
    w.terms().all(|(c, _)| fiber::degree(c) == 2) && fiber::d0(alg, w).is_zero()
}

/// `η` with `d0 η = ω` when the extension is trivial.
pub fn coboundary_solve(alg: &StratifiedAlgebra, w: &FiberForm) -> Option<FiberForm> {
    let eta = fiber::d0_pinv(alg, w);
    (fiber::d0(alg, &eta) == *w).then_some(eta)
}

/// Whether the extension admits a stratification, as far as the cocycle class decides it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stratifiability {
    /// The chosen grading is a stratification.
    Stratified,
    /// Graded, but the first layer does not generate.
    GradedOnly,
    /// The class has a homogeneous representative of this weight; the given cocycle does not.
    CohomologousToHomogeneous(u32),
    /// The class has non-exact components in several weights.
    NonStratifiable { weights: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub base: Arc<StratifiedAlgebra>,
    pub cocycle: FiberForm,
    /// Basis: the base basis followed by the central generator.
    pub extended: Arc<StratifiedAlgebra>,
    pub stratifiability: Stratifiability,
}

impl CentralExtension {
    pub fn central_index(&self) -> usize {
        self.base.dim()
    }

    pub fn is_stratifiable(&self) -> bool {
        matches!(self.stratifiability, Stratifiability::Stratified | Stratifiability::CohomologousToHomogeneous(_))
    }

    pub fn is_trivial(&self) -> bool {
        coboundary_solve(&self.base, &self.cocycle).is_some()
    }
}

fn fresh_name(taken: &[String], candidates: &[&str], prefix: &str, n: usize) -> String {
    candidates
        .iter()
        .map(|s| s.to_string())
        .find(|s| !taken.contains(s))
        .unwrap_or_else(|| format!("{prefix}{n}"))
}

fn extended_spec(alg: &StratifiedAlgebra, w: &FiberForm, weights: Vec<u32>) -> AlgebraSpec {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut terms: Vec<(usize, Rational)> = alg.bracket_basis(i, j).iter().map(|(k, c)| (*k, c.clone())).collect();
            if let Some(c) = w.get(covector(&[i, j])) {
                terms.push((n, c.clone()));
            }
            if !terms.is_empty() {
                brackets.push(Bracket { i, j, terms });
            }
        }
    }
    let mut labels = alg.labels().to_vec();
    labels.push(fresh_name(alg.labels(), &["W", "Z"], "X", n + 1));
    let mut coframe = alg.coframe().to_vec();
    coframe.push(fresh_name(alg.coframe(), &["σ", "ζ"], "θ", n + 1));
    let mut coords: Vec<String> = alg.coords().names().to_vec();
    coords.push(fresh_name(&coords, &["w", "z"], "x", n + 1));
    AlgebraSpec {
        name: format!("{}^", alg.name()),
        weights,
        brackets,
        labels: Some(labels),
        coframe: Some(coframe),
        coordinates: Some(coords),
    }
}

/// Lexicographically first positive grading with the smallest possible top weight.
fn grading_search(n: usize, constraints: &[(usize, usize, usize)]) -> Option<Vec<u32>> {
    fn go(w: &mut Vec<u32>, n: usize, top: u32, cons: &[(usize, usize, usize)]) -> bool {
        if w.len() == n {
            return true;
        }
        for v in 1..=top {
            w.push(v);
            let len = w.len();
            let ok = cons.iter().all(|&(i, j, k)| i.max(j).max(k) >= len || w[i] + w[j] == w[k]);
            if ok && go(w, n, top, cons) {
                return true;
            }
            w.pop();
        }
        false
    }
    (1..=n as u32).find_map(|top| {
        let mut w = Vec::new();
        go(&mut w, n, top, constraints).then_some(w)
    })
}

/// The extension `[(u,X),(v,Y)] = (ω(X,Y), [X,Y])`.
pub fn central_extend(alg: &Arc<StratifiedAlgebra>, w: &FiberForm) -> Result<CentralExtension, ExtensionError> {
    if w.terms().any(|(c, _)| fiber::degree(c) != 2) {
        return Err(ExtensionError::NotTwoForm);
    }
    let defect = fiber::d0(alg.as_ref(), w);
    if !defect.is_zero() {
        return Err(ExtensionError::NotCocycle(fiber::format_fiber(alg, &defect)));
    }
    let n = alg.dim();
    let class_weights: Vec<u32> = w
        .weight_components(alg)
        .into_iter()
        .filter(|(_, part)| coboundary_solve(alg, part).is_none())
        .map(|(p, _)| p)
        .collect();
    let weights = match w.homogeneous_weight(alg) {
        Some(p) => alg.weights().iter().copied().chain([p]).collect(),
        None if w.is_zero() => alg.weights().iter().copied().chain([1]).collect(),
        None => {
            let probe = Arc::new(StratifiedAlgebra::new(extended_spec(alg, w, vec![1; n + 1]))?);
            let cons: Vec<(usize, usize, usize)> = probe
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, _)| (i, j, k))
                .collect();
            // no grading in this basis: keep the base weights and give W the class weight,
            // so the presentation is honest about which brackets break homogeneity
            grading_search(n + 1, &cons).unwrap_or_else(|| {
                let top = class_weights.last().copied().or_else(|| w.weights(alg).into_iter().max()).unwrap_or(1);
                alg.weights().iter().copied().chain([top]).collect()
            })
        }
    };
    let extended = Arc::new(StratifiedAlgebra::new(extended_spec(alg, w, weights))?);
    let report = extended.validate();
    let stratifiability = if class_weights.len() > 1 {
        Stratifiability::NonStratifiable { weights: class_weights }
    } else if w.homogeneous_weight(alg).is_none() && !w.is_zero() {
        // an exact class is cohomologous to 0, which extends with W in the first layer
        Stratifiability::CohomologousToHomogeneous(class_weights.first().copied().unwrap_or(1))
    } else if report.is_carnot() {
        Stratifiability::Stratified
    } else {
        Stratifiability::GradedOnly
    };
    Ok(CentralExtension { base: alg.clone(), cocycle: w.clone(), extended, stratifiability })
}

/// Builds the twisted algebra without checking the cocycle condition; weights of the base are
/// kept and the central generator gets the largest weight of `ω`.
pub fn extend_unchecked(alg: &StratifiedAlgebra, w: &FiberForm) -> Result<StratifiedAlgebra, AlgebraError> {
    let top = w.weights(alg).into_iter().max().unwrap_or(1);
    let weights = alg.weights().iter().copied().chain([top]).collect();
    StratifiedAlgebra::new(extended_spec(alg, w, weights))
}

/// `Id + μ`: the isomorphism from the extension by `ω + d0 μ` to the extension by `ω`.
pub fn coboundary_isomorphism(alg: &StratifiedAlgebra, mu: &FiberForm) -> Vec<Vec<Rational>> {
    let n = alg.dim();
    let mut m = vec![vec![scalar::zero(); n + 1]; n + 1];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = scalar::one();
    }
    for (c, v) in mu.terms() {
        m[n][indices(c)[0]] = v.clone();
    }
    m
}

/// `Φ(u, X) = (c u + η(X), φ(X))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedHom {
    pub eta: PolyForm,
    pub corner: WeightedPoly,
    /// Rows index the extended target basis.
    pub matrix: Vec<Vec<WeightedPoly>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Lifted(LiftedHom),
    /// `ω1 − φ*ζ` modulo `Im d0`; no rescaling of `ω1` removes it.
    Obstruction { residual: PolyForm },
}

/// `φ* ζ` for an invariant form and a matrix field (rows index the target basis).
pub fn matrix_pullback(phi: &[Vec<WeightedPoly>], z: &FiberForm, space: &Arc<crate::VarSpace>) -> PolyForm {
    let coframe: Vec<PolyForm> = phi
        .iter()
        .map(|row| {
            PolyForm::from_terms(row.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| (covector(&[j]), p.clone())))
        })
        .collect();
    let mut out = PolyForm::zero();
    for (c, r) in z.terms() {
        let mut piece = PolyForm::term(0, WeightedPoly::constant(space, r.clone()));
        for i in indices(c) {
            piece = piece.wedge(&coframe[i]);
        }
        out = out.add(&piece);
    }
    out
}

/// Solves `c ω1 − φ*ζ = d0 η`, trying `c = 1` first and otherwise any nonzero `c`.
pub fn lift_homomorphism(
    src: &CentralExtension,
    tgt: &CentralExtension,
    phi: &[Vec<WeightedPoly>],
    space: &Arc<crate::VarSpace>,
) -> LiftOutcome {
    let g1 = &src.base;
    let w1 = derham::lift(g1, &src.cocycle).map_coeffs(|p| p.reinterpret(space));
    let pulled = matrix_pullback(phi, &tgt.cocycle, space);
    let proj = |f: &PolyForm| f.sub(&fiber::d0(g1, &fiber::d0_pinv(g1, f)));
    let solve = |c: &WeightedPoly| -> Option<PolyForm> {
        let rhs = w1.mul_coeff(c).sub(&pulled);
        let eta = fiber::d0_pinv(g1, &rhs);
        (fiber::d0(g1, &eta) == rhs).then_some(eta)
    };
    let one = WeightedPoly::one(space);
    let mut found = solve(&one).map(|eta| (one.clone(), eta));
    if found.is_none() {
        let pw = proj(&w1);
        let pp = proj(&pulled);
        let first = pw.terms().next().map(|(cov, r)| (cov, r.constant_term()));
        if let Some((cov, r)) = first {
            let c = pp.get(cov).cloned().unwrap_or_else(|| WeightedPoly::zero(space)).scale(&(scalar::one() / r));
            if !c.is_zero() && pw.mul_coeff(&c) == pp {
                found = solve(&c).map(|eta| (c, eta));
            }
        }
    }
    let Some((corner, eta)) = found else {
        return LiftOutcome::Obstruction { residual: proj(&w1.sub(&pulled)) };
    };
    let (n1, n2) = (g1.dim(), tgt.base.dim());
    let mut matrix = vec![vec![WeightedPoly::zero(space); n1 + 1]; n2 + 1];
    for i in 0..n2 {
        matrix[i][..n1].clone_from_slice(&phi[i]);
    }
    for (c, p) in eta.terms() {
        matrix[n2][indices(c)[0]] = p.clone();
    }
    matrix[n2][n1] = corner.clone();
    LiftOutcome::Lifted(LiftedHom { eta, corner, matrix })
}

impl LiftedHom {
    /// Bracket preservation between the extensions and `π2 ∘ Φ = φ ∘ π1`.
    pub fn verify(&self, src: &CentralExtension, tgt: &CentralExtension, phi: &[Vec<WeightedPoly>]) -> Result<(), HomFailure> {
        let (n1, n2) = (src.base.dim(), tgt.base.dim());
        for i in 0..n2 {
            if self.matrix[i][..n1] != phi[i][..] || !self.matrix[i][n1].is_zero() {
                return Err(HomFailure::Shape);
            }
        }
        bracket_preserving(&src.extended, &tgt.extended, &self.matrix)
    }
}

/// Result of lifting a Pansu derivative through the spectral primitives of `ω`.
#[derive(Clone, Debug)]
pub struct LiftWorkflow {
    pub derivative: PansuDerivative,
    /// `(s, α_{s−1})` with `d_c^{s−1} α_{s−1} = ω_s`.
    pub primitives: Vec<(u32, PolyForm)>,
    /// `Σ_s d_c^{s−1} φ*_P α_{s−1}`.
    pub source_form: PolyForm,
    pub outcome: WorkflowOutcome,
}

#[derive(Clone, Debug)]
pub enum WorkflowOutcome {
    /// The source form is not left-invariant; this is it.
    NotInvariant(PolyForm),
    Lifted {
        source: CentralExtension,
        target: CentralExtension,
        lift: Box<LiftOutcome>,
    },
}

/// Horizontal 1-form `α` with `d_c^i α = 0` for `i < s−1` and `d_c^{s−1} α = ω_s`.
pub fn horizontal_primitive(
    engine: &SpectralEngine,
    part: &FiberForm,
    s: u32,
) -> Result<PolyForm, ExtensionError> {
    let alg = engine.algebra().clone();
    let deg = s - 1;
    if deg > engine.max_degree() {
        return Err(SpectralError::BoundExceeded { required: deg, cap: engine.max_degree() }.into());
    }
    let horizontal = fiber::basis(&alg, 1, 1);
    let monos = monomials_of_weighted_degree(alg.coords(), deg);
    let mut unknowns = Vec::new();
    for &c in horizontal.iter() {
        for m in &monos {
            unknowns.push(PolyForm::term(c, WeightedPoly::monomial(alg.coords(), m.clone(), scalar::one())));
        }
    }
    let mut rows: std::collections::HashMap<(u32, u64, crate::Monomial), usize> = Default::default();
    let mut key = |i: u32, c: u64, m: &crate::Monomial| {
        let len = rows.len();
        *rows.entry((i, c, m.clone())).or_insert(len)
    };
    let mut columns = Vec::new();
    for u in &unknowns {
        let mut col = SparseVec::new();
        for (i, f) in engine.dc_weight_split(u)? {
            if i > deg {
                continue;
            }
            for (c, p) in f.terms() {
                for (m, r) in p.terms() {
                    col.insert(key(i, c, m), r.clone());
                }
            }
        }
        columns.push(col);
    }
    let mut rhs = SparseVec::new();
    let one = crate::Monomial::one(alg.dim());
    for (c, r) in part.terms() {
        rhs.insert(key(deg, c, &one), r.clone());
    }
    let x = SparseSystem::new(columns)
        .solve(&rhs)
        .ok_or(ExtensionError::NoPrimitive { weight: s, degree: deg })?;
    let mut alpha = PolyForm::zero();
    for (i, r) in x {
        alpha.add_scaled(&r, &unknowns[i]);
    }
    Ok(alpha)
}

/// Lifts `D_Pφ` to the extensions of source and target when `Σ_s d_c^{s−1} φ*_P α_{s−1}`
/// is left-invariant.
pub fn lift_pansu_workflow(phi: &PolyMap, w: &FiberForm, max_degree: u32) -> Result<LiftWorkflow, ExtensionError> {
    let (g1, g2) = (&phi.source, &phi.target);
    if !cocycle_check(g2, w) {
        return Err(ExtensionError::NotCocycle(fiber::format_fiber(g2, &fiber::d0(g2.as_ref(), w))));
    }
    let dp = pansu_derivative(phi)?;
    let et = SpectralEngine::with_max_degree(g2.clone(), max_degree);
    let es = SpectralEngine::with_max_degree(g1.clone(), max_degree);
    let mut primitives = Vec::new();
    let mut source_form = PolyForm::zero();
    for (s, part) in w.weight_components(g2) {
        let alpha = horizontal_primitive(&et, &part, s)?;
        let pulled = pansu_pullback(&dp, &alpha);
        for (j, piece) in es.dc_weight_split(&pulled)? {
            if j == s - 1 {
                source_form = source_form.add(&piece);
            }
        }
        primitives.push((s, alpha));
    }
    let outcome = match derham::as_invariant(&source_form) {
        None => WorkflowOutcome::NotInvariant(source_form.clone()),
        Some(w1) => {
            let source = central_extend(g1, &w1)?;
            let target = central_extend(g2, w)?;
            let lift = lift_homomorphism(&source, &target, &dp.matrix, g1.coords());
            WorkflowOutcome::Lifted { source, target, lift: Box::new(lift) }
        }
    };
    Ok(LiftWorkflow { derivative: dp, primitives, source_form, outcome })
}
