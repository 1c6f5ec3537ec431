//! The left-invariant exterior algebra `Λ g*` with its weight grading.
//!
//! Covectors `θ_I` are bitmasks over the dual basis. The adapted basis is treated as
//! orthonormal, which makes `θ_I` an orthonormal basis of `Λ g*`; adjoints, the Hodge star
//! and pseudo-inverses are then exact finite matrix computations per bidegree block.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::lie::StratifiedAlgebra;
use crate::linalg::{Matrix, SparseVec, Subspace};
use crate::ring::Coefficient;
use crate::scalar::{self, Rational};

/// `θ_I` as a bitmask: bit `j` set iff `j ∈ I`.
pub type Covector = u64;

pub fn covector(indices: &[usize]) -> Covector {
    indices.iter().fold(0, |acc, &i| acc | (1 << i))
}

pub fn indices(c: Covector) -> Vec<usize> {
    (0..64).filter(|&i| c & (1 << i) != 0).collect()
}

pub fn degree(c: Covector) -> usize {
    c.count_ones() as usize
}

pub fn weight(alg: &StratifiedAlgebra, c: Covector) -> u32 {
    indices(c).iter().map(|&i| alg.weight(i)).sum()
}

/// `θ_a ∧ θ_b = ±θ_{a∪b}`; `None` when they share an index. The flag is true for a minus sign.
pub fn wedge_basis(a: Covector, b: Covector) -> Option<(bool, Covector)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for j in indices(b) {
        swaps += (a >> (j + 1)).count_ones();
    }
    Some((swaps % 2 == 1, a | b))
}

/// Display name such as `θ1∧τ`, or `1` for the empty covector.
pub fn label(alg: &StratifiedAlgebra, c: Covector) -> String {
    if c == 0 {
        return "1".into();
    }
    indices(c)
        .iter()
        .map(|&i| alg.coframe()[i].as_str())
        .collect::<Vec<_>>()
        .join("∧")
}

/// Sort key: degree first, then the index list lexicographically.
pub fn order_key(c: Covector) -> (usize, Vec<usize>) {
    (degree(c), indices(c))
}

/// A form `Σ c_I θ_I` with coefficients in any ring; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<C> {
    terms: BTreeMap<Covector, C>,
}

pub type FiberForm = Form<Rational>;

impl<C> Default for Form<C> {
    fn default() -> Self {
        Form { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> Form<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Covector, coeff: C) -> Self {
        let mut f = Self::zero();
        f.add_term(c, coeff);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Covector, C)>) -> Self {
        let mut f = Self::zero();
        for (c, k) in terms {
            f.add_term(c, k);
        }
        f
    }

    pub fn add_term(&mut self, c: Covector, coeff: C) {
        if coeff.vanishes() {
            return;
        }
        match self.terms.get_mut(&c) {
            Some(e) => {
                *e = e.plus(&coeff);
                if e.vanishes() {
                    self.terms.remove(&c);
                }
            }
            None => {
                self.terms.insert(c, coeff);
            }
        }
    }

    pub fn add_scaled_term(&mut self, c: Covector, r: &Rational, coeff: &C) {
        if coeff.vanishes() || r == &scalar::zero() {
            return;
        }
        match self.terms.get_mut(&c) {
            Some(e) => {
                e.add_scaled(r, coeff);
                if e.vanishes() {
                    self.terms.remove(&c);
                }
            }
            None => {
                self.terms.insert(c, coeff.scale(r));
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Covector, &C)> {
        self.terms.iter().map(|(c, k)| (*c, k))
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(Covector, &C)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(c, _)| order_key(*c));
        v
    }

    pub fn get(&self, c: Covector) -> Option<&C> {
        self.terms.get(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(*c, k.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, r: &Rational, other: &Self) {
        for (c, k) in &other.terms {
            self.add_scaled_term(*c, r, k);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-scalar::one(), other);
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(c, k)| (*c, k.scale(r))))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-scalar::one())
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, f: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(c, k)| (*c, k.times(f))))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((neg, c)) = wedge_basis(*a, *b) {
                    let p = x.times(y);
                    out.add_term(c, if neg { p.negated() } else { p });
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|&c| degree(c)).collect()
    }

    /// The common degree, if all terms share one (zero forms have none).
    pub fn degree(&self) -> Option<usize> {
        let d = self.degrees();
        (d.len() == 1).then(|| *d.iter().next().unwrap())
    }

    pub fn weight_components(&self, alg: &StratifiedAlgebra) -> BTreeMap<u32, Form<C>> {
        let mut out: BTreeMap<u32, Form<C>> = BTreeMap::new();
        for (c, k) in &self.terms {
            out.entry(weight(alg, *c)).or_default().terms.insert(*c, k.clone());
        }
        out
    }

    pub fn weight_component(&self, alg: &StratifiedAlgebra, w: u32) -> Form<C> {
        Self::from_terms(self.terms.iter().filter(|(c, _)| weight(alg, **c) == w).map(|(c, k)| (*c, k.clone())))
    }

    pub fn weights(&self, alg: &StratifiedAlgebra) -> BTreeSet<u32> {
        self.terms.keys().map(|&c| weight(alg, c)).collect()
    }

    /// The weight, if the form is nonzero and homogeneous.
    pub fn homogeneous_weight(&self, alg: &StratifiedAlgebra) -> Option<u32> {
        let w = self.weights(alg);
        (w.len() == 1).then(|| *w.iter().next().unwrap())
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        Form::from_terms(self.terms.iter().map(|(c, k)| (*c, f(k))))
    }

    pub fn min_weight(&self, alg: &StratifiedAlgebra) -> Option<u32> {
        self.weights(alg).into_iter().next()
    }
}

impl FiberForm {
    /// Monomial-orthonormal inner product.
    pub fn inner(&self, other: &FiberForm) -> Rational {
        let mut acc = scalar::zero();
        for (c, x) in &self.terms {
            if let Some(y) = other.terms.get(c) {
                acc += x * y;
            }
        }
        acc
    }

    /// Coordinates with respect to an ordered basis of covectors.
    pub fn to_sparse(&self, basis: &[Covector]) -> SparseVec {
        let pos: HashMap<Covector, usize> = basis.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        self.terms
            .iter()
            .map(|(c, k)| (*pos.get(c).expect("covector outside basis"), k.clone()))
            .collect()
    }

    pub fn from_sparse(basis: &[Covector], v: &SparseVec) -> FiberForm {
        FiberForm::from_terms(v.iter().map(|(i, k)| (basis[*i], k.clone())))
    }
}

/// Text form using the algebra's coframe names.
pub fn format_form<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>, coeff: impl Fn(&C) -> String) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, k)) in f.sorted_terms().into_iter().enumerate() {
        let mut text = coeff(k);
        let mut neg = false;
        if let Some(rest) = text.strip_prefix('-') {
            if !rest.contains(" + ") && !rest.contains(" - ") {
                neg = true;
                text = rest.to_string();
            }
        }
        if text.contains(" + ") || text.contains(" - ") {
            text = format!("({text})");
        }
        let body = match (text.as_str(), c) {
            (t, 0) => t.to_string(),
            ("1", _) => label(alg, c),
            (t, _) => format!("{t}·{}", label(alg, c)),
        };
        if i == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub fn format_fiber(alg: &StratifiedAlgebra, f: &FiberForm) -> String {
    format_form(alg, f, scalar::format_rational)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    D0,
    Delta0,
    Pinv,
    Pi0,
    Box0,
}

type Column = Vec<(Covector, Rational)>;

#[derive(Default)]
pub(crate) struct FiberCache {
    bases: Mutex<HashMap<(usize, u32), Arc<Vec<Covector>>>>,
    d0: Mutex<HashMap<(usize, u32), Arc<Matrix>>>,
    ops: Mutex<HashMap<(Op, usize, u32), Arc<HashMap<Covector, Column>>>>,
}

/// Covectors of degree `k` and weight `w`, ordered by index list.
pub fn basis(alg: &StratifiedAlgebra, k: usize, w: u32) -> Arc<Vec<Covector>> {
    if let Some(b) = alg.fiber.bases.lock().unwrap().get(&(k, w)) {
        return b.clone();
    }
    let n = alg.dim();
    let mut out = Vec::new();
    if k == 0 {
        if w == 0 {
            out.push(0);
        }
    } else if k <= n {
        // Gosper's hack: successive masks with exactly k bits set
        let mut c: u64 = (1u64 << k) - 1;
        let limit: u64 = 1u64 << n;
        while c < limit {
            if weight(alg, c) == w {
                out.push(c);
            }
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            c = (((ripple ^ c) >> 2) / lowest) | ripple;
        }
    }
    out.sort_by_key(|&c| indices(c));
    let out = Arc::new(out);
    alg.fiber.bases.lock().unwrap().insert((k, w), out.clone());
    out
}

/// Weights carried by some `k`-covector.
pub fn weights_in_degree(alg: &StratifiedAlgebra, k: usize) -> Vec<u32> {
    let mut w: Vec<u32> = alg.weights().to_vec();
    w.sort();
    if k > w.len() {
        return Vec::new();
    }
    let lo: u32 = w[..k].iter().sum();
    let hi: u32 = w[w.len() - k..].iter().sum();
    (lo..=hi).filter(|&p| !basis(alg, k, p).is_empty()).collect()
}

/// `d0 θ_I` via `d0 θ_k = −Σ_{i<j} c^k_{ij} θ_i∧θ_j` extended as an antiderivation.
pub fn d0_basis(alg: &StratifiedAlgebra, c: Covector) -> FiberForm {
    let idx = indices(c);
    let mut out = FiberForm::zero();
    for (p, &k) in idx.iter().enumerate() {
        let before = covector(&idx[..p]);
        let after = covector(&idx[p + 1..]);
        let sign = if p % 2 == 0 { scalar::one() } else { -scalar::one() };
        for (i, j, kk, coef) in alg.structure_constants() {
            if kk != k {
                continue;
            }
            let mid = covector(&[i, j]);
            let Some((n1, left)) = wedge_basis(before, mid) else { continue };
            let Some((n2, full)) = wedge_basis(left, after) else { continue };
            let mut v = -coef * &sign;
            if n1 != n2 {
                v = -v;
            }
            out.add_term(full, v);
        }
    }
    out
}

/// Matrix of `d0` from `Λ^{k}` to `Λ^{k+1}` at weight `w`.
pub fn d0_matrix(alg: &StratifiedAlgebra, k: usize, w: u32) -> Arc<Matrix> {
    if let Some(m) = alg.fiber.d0.lock().unwrap().get(&(k, w)) {
        return m.clone();
    }
    let src = basis(alg, k, w);
    let tgt = basis(alg, k + 1, w);
    let pos: HashMap<Covector, usize> = tgt.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (j, &c) in src.iter().enumerate() {
        for (t, v) in d0_basis(alg, c).terms() {
            m.set(pos[&t], j, v.clone());
        }
    }
    let m = Arc::new(m);
    alg.fiber.d0.lock().unwrap().insert((k, w), m.clone());
    m
}

fn op_matrix(alg: &StratifiedAlgebra, op: Op, k: usize, w: u32) -> (Matrix, Arc<Vec<Covector>>) {
    let here = basis(alg, k, w).len();
    let down = || (k > 0).then(|| d0_matrix(alg, k - 1, w));
    match op {
        Op::D0 => ((*d0_matrix(alg, k, w)).clone(), basis(alg, k + 1, w)),
        Op::Delta0 => match down() {
            Some(d) => (d.transpose(), basis(alg, k - 1, w)),
            None => (Matrix::zeros(0, here), Arc::new(Vec::new())),
        },
        Op::Pinv => match down() {
            Some(d) => (d.pinv(), basis(alg, k - 1, w)),
            None => (Matrix::zeros(0, here), Arc::new(Vec::new())),
        },
        Op::Pi0 => {
            let d = d0_matrix(alg, k, w);
            let mut m = Matrix::identity(here).sub(&d.pinv().mul(&d));
            if let Some(dd) = down() {
                m = m.sub(&dd.mul(&dd.pinv()));
            }
            (m, basis(alg, k, w))
        }
        Op::Box0 => {
            let d = d0_matrix(alg, k, w);
            let mut m = d.transpose().mul(&d);
            if let Some(dd) = down() {
                m = m.add(&dd.mul(&dd.transpose()));
            }
            (m, basis(alg, k, w))
        }
    }
}

fn op_block(alg: &StratifiedAlgebra, op: Op, k: usize, w: u32) -> Arc<HashMap<Covector, Column>> {
    if let Some(b) = alg.fiber.ops.lock().unwrap().get(&(op, k, w)) {
        return b.clone();
    }
    let (m, target) = op_matrix(alg, op, k, w);
    let src = basis(alg, k, w);
    let mut cols = HashMap::new();
    for (j, &c) in src.iter().enumerate() {
        let col: Column = (0..m.rows())
            .filter(|&i| !m.get(i, j).is_zero_ref())
            .map(|i| (target[i], m.get(i, j).clone()))
            .collect();
        cols.insert(c, col);
    }
    let cols = Arc::new(cols);
    alg.fiber.ops.lock().unwrap().insert((op, k, w), cols.clone());
    cols
}

trait IsZeroRef {
    fn is_zero_ref(&self) -> bool;
}

impl IsZeroRef for Rational {
    fn is_zero_ref(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

fn apply<C: Coefficient>(alg: &StratifiedAlgebra, op: Op, f: &Form<C>) -> Form<C> {
    let mut out = Form::zero();
    for (c, k) in f.terms() {
        let block = op_block(alg, op, degree(c), weight(alg, c));
        for (t, r) in &block[&c] {
            out.add_scaled_term(*t, r, k);
        }
    }
    out
}

/// Algebraic differential; acts on the covector part only.
pub fn d0<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>) -> Form<C> {
    apply(alg, Op::D0, f)
}

/// Transpose of `d0` for the monomial-orthonormal product.
pub fn delta0<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>) -> Form<C> {
    apply(alg, Op::Delta0, f)
}

pub fn box0<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>) -> Form<C> {
    apply(alg, Op::Box0, f)
}

/// Moore–Penrose inverse of `d0`, block by block.
pub fn d0_pinv<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>) -> Form<C> {
    apply(alg, Op::Pinv, f)
}

/// Orthogonal projection onto `ker □0`.
pub fn pi0<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>) -> Form<C> {
    apply(alg, Op::Pi0, f)
}

/// `⋆θ_I = ε θ_{I^c}` with `θ_I ∧ θ_{I^c} = ε vol`.
pub fn hodge_star<C: Coefficient>(alg: &StratifiedAlgebra, f: &Form<C>) -> Form<C> {
    let full: Covector = (1u64 << alg.dim()) - 1;
    let mut out = Form::zero();
    for (c, k) in f.terms() {
        let comp = full & !c;
        let (neg, _) = wedge_basis(c, comp).expect("disjoint");
        out.add_term(comp, if neg { k.negated() } else { k.clone() });
    }
    out
}

pub fn volume(alg: &StratifiedAlgebra) -> Covector {
    (1u64 << alg.dim()) - 1
}

/// Orthogonal splitting of one bidegree block into `Im d0 ⊕ ker □0 ⊕ Im δ0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeDecomposition {
    pub degree: usize,
    pub weight: u32,
    pub basis: Vec<Covector>,
    pub image_d0: Subspace,
    pub harmonic: Subspace,
    pub image_delta0: Subspace,
}

impl HodgeDecomposition {
    fn forms(&self, s: &Subspace) -> Vec<FiberForm> {
        s.basis().iter().map(|v| FiberForm::from_sparse(&self.basis, v)).collect()
    }

    pub fn image_d0_forms(&self) -> Vec<FiberForm> {
        self.forms(&self.image_d0)
    }

    pub fn harmonic_forms(&self) -> Vec<FiberForm> {
        self.forms(&self.harmonic)
    }

    pub fn image_delta0_forms(&self) -> Vec<FiberForm> {
        self.forms(&self.image_delta0)
    }
}

pub fn hodge_decompose(alg: &StratifiedAlgebra, k: usize, p: u32) -> HodgeDecomposition {
    let b = basis(alg, k, p);
    let n = b.len();
    let columns = |m: &Matrix| -> Vec<SparseVec> {
        (0..m.cols()).map(|j| crate::linalg::dense_to_sparse(&m.column(j))).collect()
    };
    let image_d0 = if k > 0 {
        Subspace::span(n, columns(&d0_matrix(alg, k - 1, p)))
    } else {
        Subspace::zero(n)
    };
    let image_delta0 = Subspace::span(n, columns(&d0_matrix(alg, k, p).transpose()));
    let (bx, _) = op_matrix(alg, Op::Box0, k, p);
    let harmonic = Subspace::span(n, bx.kernel().iter().map(|v| crate::linalg::dense_to_sparse(v)));
    HodgeDecomposition { degree: k, weight: p, basis: (*b).clone(), image_d0, harmonic, image_delta0 }
}

/// Dimension of `ker □0` in each `(degree, weight)` block.
pub fn rumin_table(alg: &StratifiedAlgebra) -> Vec<(usize, u32, usize)> {
    let mut out = Vec::new();
    for k in 0..=alg.dim() {
        for w in weights_in_degree(alg, k) {
            let dim = hodge_decompose(alg, k, w).harmonic.dim();
            if dim > 0 {
                out.push((k, w, dim));
            }
        }
    }
    out
}
