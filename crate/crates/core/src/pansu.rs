//! Polynomial maps between Carnot groups in exponential coordinates: the classical
//! differential in left-invariant frames, contact equations, Pansu derivatives and
//! Pansu pullbacks of forms.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::derham::{self, PolyForm};
use crate::fiber::{self, covector, indices};
use crate::lie::{hom_check, HomFailure, StratifiedAlgebra};
use crate::poly::WeightedPoly;
use crate::scalar::{self, Rational};
use crate::spectral::{BCertificate, SpectralEngine, SpectralError, WitnessChain};

/// Total degree up to which the homomorphism property is checked symbolically.
pub const SYMBOLIC_HOM_DEGREE: u32 = 6;
/// Number of rational sample points used above that degree.
pub const HOM_SAMPLES: usize = 25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PansuError {
    #[error("map has {got} components, target dimension is {expected}")]
    Arity { expected: usize, got: usize },
    #[error("component {index} is not a polynomial in the source coordinates")]
    WrongSpace { index: usize },
    #[error("contact equations fail: {}", .0.iter().map(|e| format!("a[{},{}] = {}", e.row + 1, e.col + 1, e.poly)).collect::<Vec<_>>().join(", "))]
    Contact(Vec<ContactEquation>),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A polynomial map `φ: G1 → G2` written in exponential coordinates.
#[derive(Clone, Debug)]
pub struct PolyMap {
    pub source: Arc<StratifiedAlgebra>,
    pub target: Arc<StratifiedAlgebra>,
    pub components: Vec<WeightedPoly>,
}

impl PolyMap {
    pub fn new(
        source: Arc<StratifiedAlgebra>,
        target: Arc<StratifiedAlgebra>,
        components: Vec<WeightedPoly>,
    ) -> Result<Self, PansuError> {
        if components.len() != target.dim() {
            return Err(PansuError::Arity { expected: target.dim(), got: components.len() });
        }
        if let Some(i) = components.iter().position(|c| c.space() != source.coords()) {
            return Err(PansuError::WrongSpace { index: i });
        }
        Ok(PolyMap { source, target, components })
    }

    /// Parses components written in the source coordinate names.
    pub fn parse(
        source: Arc<StratifiedAlgebra>,
        target: Arc<StratifiedAlgebra>,
        components: &[&str],
    ) -> Result<Self, Box<dyn std::error::Error>> {
        let comps = components
            .iter()
            .map(|s| WeightedPoly::parse(s, source.coords()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(source, target, comps)?)
    }

    pub fn identity(alg: Arc<StratifiedAlgebra>) -> Self {
        let comps = (0..alg.dim()).map(|i| WeightedPoly::var(alg.coords(), i)).collect();
        PolyMap { source: alg.clone(), target: alg, components: comps }
    }

    /// The linear map `x ↦ M x`; rows index the target basis.
    pub fn linear(source: Arc<StratifiedAlgebra>, target: Arc<StratifiedAlgebra>, m: &[Vec<Rational>]) -> Self {
        let comps = m
            .iter()
            .map(|row| {
                let mut p = WeightedPoly::zero(source.coords());
                for (j, c) in row.iter().enumerate() {
                    p.add_scaled(c, &WeightedPoly::var(source.coords(), j));
                }
                p
            })
            .collect();
        PolyMap { source, target, components: comps }
    }

    pub fn total_degree(&self) -> u32 {
        self.components.iter().filter_map(|c| c.total_degree()).max().unwrap_or(0)
    }

    /// `f ∘ φ` for a polynomial in the target coordinates.
    pub fn compose(&self, f: &WeightedPoly) -> WeightedPoly {
        f.substitute(&self.components).expect("target polynomial")
    }
}

/// One contact equation `a_ij = 0` with `w(X_j) < w(Y_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactEquation {
    pub row: usize,
    pub col: usize,
    pub poly: WeightedPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactReport {
    /// Every equation, zero or not, in row-major order.
    pub equations: Vec<ContactEquation>,
}

impl ContactReport {
    pub fn satisfied(&self) -> bool {
        self.equations.iter().all(|e| e.poly.is_zero())
    }

    pub fn violated(&self) -> Vec<ContactEquation> {
        self.equations.iter().filter(|e| !e.poly.is_zero()).cloned().collect()
    }

    /// The equations coming from first-layer source directions, which already decide contact.
    pub fn first_layer(&self, source: &StratifiedAlgebra) -> Vec<ContactEquation> {
        self.equations.iter().filter(|e| source.weight(e.col) == 1).cloned().collect()
    }
}

/// Classical differential of `φ` in the left-invariant frames at `x` and `φ(x)`:
/// `a_ij = Π_i(Σ_m (−1)^m/(m+1)! ad(φ(x))^m Σ_k (X_j φ_k) Y_k)`.
pub fn adapted_jacobian(phi: &PolyMap) -> Vec<Vec<WeightedPoly>> {
    let (src, tgt) = (&phi.source, &phi.target);
    let n1 = src.dim();
    let n2 = tgt.dim();
    let mut out = vec![vec![WeightedPoly::zero(src.coords()); n1]; n2];
    for j in 0..n1 {
        let v: Vec<WeightedPoly> = phi.components.iter().map(|c| src.apply_field(j, c)).collect();
        let mut acc = v.clone();
        let mut term = v;
        let mut fact = scalar::one();
        for m in 1..tgt.step() as i64 {
            term = tgt.bracket(&phi.components, &term);
            if term.iter().all(WeightedPoly::is_zero) {
                break;
            }
            fact *= scalar::int(m + 1);
            let c = if m % 2 == 1 { -scalar::one() / &fact } else { scalar::one() / &fact };
            for (a, t) in acc.iter_mut().zip(&term) {
                a.add_scaled(&c, t);
            }
        }
        for (i, a) in acc.into_iter().enumerate() {
            out[i][j] = a;
        }
    }
    out
}

pub fn contact_check(phi: &PolyMap) -> ContactReport {
    let a = adapted_jacobian(phi);
    let mut equations = Vec::new();
    for (i, row) in a.into_iter().enumerate() {
        for (j, p) in row.into_iter().enumerate() {
            if phi.source.weight(j) < phi.target.weight(i) {
                equations.push(ContactEquation { row: i, col: j, poly: p });
            }
        }
    }
    ContactReport { equations }
}

/// How the homomorphism property of a derivative field was verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheckMode {
    Symbolic,
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomCheckReport {
    pub mode: HomCheckMode,
    pub result: Result<(), HomFailure>,
}

/// `x ↦ D_Pφ(x)`, a strata-preserving matrix of polynomials (rows index the target basis).
#[derive(Clone, Debug)]
pub struct PansuDerivative {
    pub map: PolyMap,
    pub matrix: Vec<Vec<WeightedPoly>>,
}

impl PansuDerivative {
    pub fn entry(&self, i: usize, j: usize) -> &WeightedPoly {
        &self.matrix[i][j]
    }

    pub fn evaluate(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        self.matrix.iter().map(|row| row.iter().map(|p| p.evaluate(point)).collect()).collect()
    }

    /// Constant matrix if no entry depends on the point.
    pub fn constant(&self) -> Option<Vec<Vec<Rational>>> {
        if self.matrix.iter().flatten().all(WeightedPoly::is_constant) {
            Some(self.matrix.iter().map(|r| r.iter().map(|p| p.constant_term()).collect()).collect())
        } else {
            None
        }
    }

    pub fn hom_check(&self) -> HomCheckReport {
        let (src, tgt) = (&self.map.source, &self.map.target);
        let deg = self.matrix.iter().flatten().filter_map(|p| p.total_degree()).max().unwrap_or(0);
        if 2 * deg <= SYMBOLIC_HOM_DEGREE {
            return HomCheckReport { mode: HomCheckMode::Symbolic, result: hom_check(src, tgt, &self.matrix) };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..HOM_SAMPLES {
            let point: Vec<Rational> = (0..src.dim())
                .map(|_| scalar::rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                .collect();
            let result = hom_check(src, tgt, &self.evaluate(&point));
            if result.is_err() {
                return HomCheckReport { mode: HomCheckMode::Sampled(HOM_SAMPLES), result };
            }
        }
        HomCheckReport { mode: HomCheckMode::Sampled(HOM_SAMPLES), result: Ok(()) }
    }

    /// `(D_Pφ)^T θ_i = Σ_j a_ij θ_j` on the source.
    pub fn pullback_coframe(&self, i: usize) -> PolyForm {
        PolyForm::from_terms(
            self.matrix[i]
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(j, p)| (covector(&[j]), p.clone())),
        )
    }
}

/// Diagonal blocks of the adapted jacobian, after checking the contact equations.
pub fn pansu_derivative(phi: &PolyMap) -> Result<PansuDerivative, PansuError> {
    let report = contact_check(phi);
    if !report.satisfied() {
        return Err(PansuError::Contact(report.violated()));
    }
    let mut matrix = adapted_jacobian(phi);
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, p) in row.iter_mut().enumerate() {
            if phi.source.weight(j) != phi.target.weight(i) {
                *p = WeightedPoly::zero(phi.source.coords());
            }
        }
    }
    Ok(PansuDerivative { map: phi.clone(), matrix })
}

/// Pansu pullback of a form on the target, given the derivative field.
pub fn pansu_pullback(dp: &PansuDerivative, a: &PolyForm) -> PolyForm {
    let coframe: Vec<PolyForm> = (0..dp.map.target.dim()).map(|i| dp.pullback_coframe(i)).collect();
    let mut out = PolyForm::zero();
    for (c, f) in a.terms() {
        let mut piece = PolyForm::term(covector(&[]), dp.map.compose(f));
        for i in indices(c) {
            piece = piece.wedge(&coframe[i]);
            if piece.is_zero() {
                break;
            }
        }
        out = out.add(&piece);
    }
    out
}

/// Pulls back forms along the classical differential in frames (the full adapted jacobian).
pub fn classical_pullback(phi: &PolyMap, a: &PolyForm) -> PolyForm {
    let dp = PansuDerivative { map: phi.clone(), matrix: adapted_jacobian(phi) };
    pansu_pullback(&dp, a)
}

/// Which differential the non-commutativity witness compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscrepancyMode {
    /// `d φ*_P α − φ*_P d α`.
    Exterior,
    /// `d_c(Π0 φ*_P α) − φ*_P d_c α`.
    Rumin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub mode: DiscrepancyMode,
    /// `d φ*α` or `d_c Π0 φ*α`.
    pub differential_of_pullback: PolyForm,
    /// `φ* dα` or `φ* d_c α`.
    pub pullback_of_differential: PolyForm,
    pub difference: PolyForm,
}

pub fn dc_noncommutativity_witness(
    dp: &PansuDerivative,
    a: &PolyForm,
    mode: DiscrepancyMode,
) -> Result<Discrepancy, PansuError> {
    let (src, tgt) = (&dp.map.source, &dp.map.target);
    let pulled = pansu_pullback(dp, a);
    let (left, right) = match mode {
        DiscrepancyMode::Exterior => (
            derham::exterior_derivative(src, &pulled),
            pansu_pullback(dp, &derham::exterior_derivative(tgt, a)),
        ),
        DiscrepancyMode::Rumin => {
            let es = SpectralEngine::with_max_degree(src.clone(), u32::MAX);
            let et = SpectralEngine::with_max_degree(tgt.clone(), u32::MAX);
            let left = es.rumin_dc(&fiber::pi0(src, &pulled))?;
            let right = pansu_pullback(dp, &et.rumin_dc(a)?);
            (left, right)
        }
    };
    let difference = left.sub(&right);
    Ok(Discrepancy { mode, differential_of_pullback: left, pullback_of_differential: right, difference })
}

/// Outcome of testing `φ*_P Δ_i α ≡ Δ_i φ*_P α (mod B_i)` for one chain.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutativityReport {
    pub page: usize,
    pub pullback: PolyForm,
    /// `φ*_P α ∈ Z_i(G1)`, with the chain found for it.
    pub pulled_chain: Option<WitnessChain>,
    /// Representative of `φ*_P Δ_i α`.
    pub pullback_of_delta: PolyForm,
    /// Representative of `Δ_i φ*_P α`.
    pub delta_of_pullback: PolyForm,
    pub difference: PolyForm,
    /// Certificate for `difference ∈ B_i(G1)`.
    pub certificate: Option<BCertificate>,
    /// When `α ∈ B_i(G2)`: whether `φ*_P α ∈ B_i(G1)`, with certificate.
    pub boundary_inclusion: Option<Option<BCertificate>>,
    pub bound: u32,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.pulled_chain.is_some()
            && self.certificate.is_some()
            && !matches!(self.boundary_inclusion, Some(None))
    }
}

/// Executable form of the commutation of Pansu pullbacks with the page differentials.
pub fn commutativity_check(
    dp: &PansuDerivative,
    chain: &WitnessChain,
    max_degree: u32,
) -> Result<CommutativityReport, PansuError> {
    let es = SpectralEngine::with_max_degree(dp.map.source.clone(), max_degree);
    let et = SpectralEngine::with_max_degree(dp.map.target.clone(), max_degree);
    let i = chain.page();
    let delta = et.delta_r(chain)?;
    let pullback_of_delta = pansu_pullback(dp, &delta.representative);
    let pullback = pansu_pullback(dp, &chain.alpha);
    let z = es.z_membership(&pullback, i)?;
    let mut bound = z.bound;
    let boundary_inclusion = {
        let b = et.b_membership(&chain.alpha, i)?;
        bound = bound.max(b.bound);
        if b.found.is_some() {
            let pb = es.b_membership(&pullback, i)?;
            bound = bound.max(pb.bound);
            Some(pb.found)
        } else {
            None
        }
    };
    let Some(pulled_chain) = z.found else {
        return Ok(CommutativityReport {
            page: i,
            pullback,
            pulled_chain: None,
            pullback_of_delta: pullback_of_delta.clone(),
            delta_of_pullback: PolyForm::zero(),
            difference: pullback_of_delta,
            certificate: None,
            boundary_inclusion,
            bound,
        });
    };
    let delta_of_pullback = es.delta_r(&pulled_chain)?.representative;
    let difference = pullback_of_delta.sub(&delta_of_pullback);
    let b = es.b_membership(&difference, i)?;
    bound = bound.max(b.bound);
    Ok(CommutativityReport {
        page: i,
        pullback,
        pulled_chain: Some(pulled_chain),
        pullback_of_delta,
        delta_of_pullback,
        difference,
        certificate: b.found,
        boundary_inclusion,
        bound,
    })
}

/// Random polynomial contact map of the Heisenberg group, horizontal part of degree ≤ 2:
/// `(φ1, φ2) = A (x1, x2 + p(x1)) + b` and `φ3 = det(A) x3 + h(x1, x2)`.
pub fn random_heisenberg_contact_map(h: &Arc<StratifiedAlgebra>, seed: u64) -> PolyMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = |lo: i64, hi: i64| scalar::rat(rng.gen_range(lo..=hi), rng.gen_range(1..=3));
    let s = h.coords();
    let x1 = WeightedPoly::var(s, 0);
    let x2 = WeightedPoly::var(s, 1);
    let x3 = WeightedPoly::var(s, 2);
    let mut a = [[scalar::zero(), scalar::zero()], [scalar::zero(), scalar::zero()]];
    loop {
        for row in a.iter_mut() {
            for e in row.iter_mut() {
                *e = small(-3, 3);
            }
        }
        if a[0][0].clone() * &a[1][1] != a[0][1].clone() * &a[1][0] {
            break;
        }
    }
    let p = x1.pow(2).scale(&small(-2, 2)) + x1.scale(&small(-2, 2));
    let v = &x2 + &p;
    let psi1 = x1.scale(&a[0][0]) + v.scale(&a[0][1]) + WeightedPoly::constant(s, small(-2, 2));
    let psi2 = x1.scale(&a[1][0]) + v.scale(&a[1][1]) + WeightedPoly::constant(s, small(-2, 2));
    let lam = a[0][0].clone() * &a[1][1] - a[0][1].clone() * &a[1][0];
    // τ = dx3 + c (x1 dx2 − x2 dx1) in these coordinates, read off from the frame
    let c = h.frame()[0][2].coefficient(&crate::poly::Monomial::from_exponents(vec![0, 1, 0]));
    // dh = λ c (x1 dx2 − x2 dx1) − c (ψ1 dψ2 − ψ2 dψ1)
    let pd = |f: &WeightedPoly, k: usize| f.partial(k).expect("index");
    let form1 = (&x2.scale(&-(lam.clone() * &c))) - &(&(&psi1 * &pd(&psi2, 0)) - &(&psi2 * &pd(&psi1, 0))).scale(&c);
    let form2 = x1.scale(&(lam.clone() * &c)) - (&(&psi1 * &pd(&psi2, 1)) - &(&psi2 * &pd(&psi1, 1))).scale(&c);
    let g = &(&form1 * &x1) + &(&form2 * &x2);
    let mut hpoly = WeightedPoly::constant(s, small(-2, 2));
    for (m, coef) in g.terms() {
        let d = m.total_degree();
        hpoly = hpoly + WeightedPoly::monomial(s, m.clone(), coef.clone() / scalar::int(d as i64));
    }
    let phi3 = x3.scale(&lam) + hpoly;
    PolyMap { source: h.clone(), target: h.clone(), components: vec![psi1, psi2, phi3] }
}
