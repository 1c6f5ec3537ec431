//! Cycles `Z_r`, boundaries `B_r` and page differentials `Δ_r` of the weight filtration,
//! together with Rumin's `d_c`.
//!
//! All membership questions are decided exactly. A form is split into grade components
//! (see [`crate::derham`]); every defining equation of `Z_r` and `B_r` lives inside one
//! grade, so each component is handled by a finite linear system over a few cells.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::derham::{self, d_split, grade_components, PolyForm};
use crate::fiber::{self, Covector, FiberForm};
use crate::lie::StratifiedAlgebra;
use crate::linalg::{SparseSystem, SparseVec, Subspace};
use crate::poly::{monomials_of_weighted_degree, Monomial, WeightedPoly};
use crate::scalar;

/// Default cap on coefficient degrees, overridable through `CARNOT_MAX_DEGREE`.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

pub fn max_degree_from_env() -> u32 {
    std::env::var("CARNOT_MAX_DEGREE")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("form is not homogeneous (degrees {degrees:?}, weights {weights:?})")]
    NotHomogeneous { degrees: Vec<usize>, weights: Vec<u32> },
    #[error("witness spaces need coefficient degree {required}, above the cap {cap}")]
    BoundExceeded { required: u32, cap: u32 },
    #[error("invalid witness chain: {0}")]
    InvalidChain(String),
    #[error("form is not a Rumin form (Π0 α ≠ α)")]
    NotRumin,
    #[error("page must be at least 1")]
    BadPage,
}

/// Monomial basis of polynomial forms of one degree, weight and grade.
#[derive(Debug)]
pub struct Cell {
    pub degree: usize,
    pub weight: u32,
    pub grade: u32,
    pub basis: Vec<(Monomial, Covector)>,
    index: HashMap<(Covector, Monomial), usize>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficient degree of every element.
    pub fn coefficient_degree(&self) -> u32 {
        self.grade - self.weight
    }

    pub fn to_form(&self, alg: &StratifiedAlgebra, v: &SparseVec) -> PolyForm {
        let mut out = PolyForm::zero();
        for (i, r) in v {
            let (m, c) = &self.basis[*i];
            out.add_term(*c, WeightedPoly::monomial(alg.coords(), m.clone(), r.clone()));
        }
        out
    }

    /// Coordinates of a form lying in this cell.
    pub fn coords(&self, f: &PolyForm) -> SparseVec {
        let mut v = SparseVec::new();
        for (c, p) in f.terms() {
            for (m, r) in p.terms() {
                let i = *self
                    .index
                    .get(&(c, m.clone()))
                    .unwrap_or_else(|| panic!("term outside cell ({}, {}, {})", self.degree, self.weight, self.grade));
                v.insert(i, r.clone());
            }
        }
        v
    }
}

/// `α` together with witnesses `z_{p+1}, …, z_{p+r−1}` certifying `α ∈ Z_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessChain {
    pub alpha: PolyForm,
    pub degree: usize,
    pub weight: u32,
    /// `witnesses[j-1] = z_{p+j}`.
    pub witnesses: Vec<PolyForm>,
}

impl WitnessChain {
    pub fn page(&self) -> usize {
        self.witnesses.len() + 1
    }

    pub fn witness(&self, j: usize) -> PolyForm {
        if j == 0 {
            return self.alpha.clone();
        }
        self.witnesses.get(j - 1).cloned().unwrap_or_default()
    }
}

/// Forms `c_p, c_{p−1}, …, c_{p−r+1}` with `α = Σ_j d_j c_{p−j}` and the side conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct BCertificate {
    /// `pieces[j] = c_{p−j}`.
    pub pieces: Vec<PolyForm>,
}

/// Answer of a membership test and the largest coefficient degree the solve had to use.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome<T> {
    pub found: Option<T>,
    pub bound: u32,
}

/// A class in `Z_r / B_r` at a given bidegree.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetForm {
    pub representative: PolyForm,
    pub page: usize,
    pub degree: usize,
    pub weight: u32,
}

/// Result of the ⋆-duality comparison on the invariant slice.
#[derive(Clone, Debug, PartialEq)]
pub struct StarDuality {
    pub holds: bool,
    pub star_of_left: Vec<FiberForm>,
    pub right: Vec<FiberForm>,
}

type DMap = Vec<BTreeMap<u32, PolyForm>>;

pub struct SpectralEngine {
    alg: Arc<StratifiedAlgebra>,
    max_degree: u32,
    cells: Mutex<HashMap<(usize, u32, u32), Arc<Cell>>>,
    dmaps: Mutex<HashMap<(usize, u32, u32), Arc<DMap>>>,
}

impl SpectralEngine {
    pub fn new(alg: Arc<StratifiedAlgebra>) -> Self {
        Self::with_max_degree(alg, max_degree_from_env())
    }

    pub fn with_max_degree(alg: Arc<StratifiedAlgebra>, max_degree: u32) -> Self {
        SpectralEngine { alg, max_degree, cells: Mutex::default(), dmaps: Mutex::default() }
    }

    pub fn algebra(&self) -> &Arc<StratifiedAlgebra> {
        &self.alg
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn cell(&self, k: usize, q: u32, n: u32) -> Arc<Cell> {
        if let Some(c) = self.cells.lock().unwrap().get(&(k, q, n)) {
            return c.clone();
        }
        let mut basis = Vec::new();
        if n >= q {
            let covs = fiber::basis(&self.alg, k, q);
            let monos = monomials_of_weighted_degree(self.alg.coords(), n - q);
            for &c in covs.iter() {
                for m in &monos {
                    basis.push((m.clone(), c));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, (m, c))| ((*c, m.clone()), i)).collect();
        let cell = Arc::new(Cell { degree: k, weight: q, grade: n, basis, index });
        self.cells.lock().unwrap().insert((k, q, n), cell.clone());
        cell
    }

    /// `d_i` of every basis element of a cell, keyed by `i`.
    fn dmap(&self, k: usize, q: u32, n: u32) -> Arc<DMap> {
        if let Some(d) = self.dmaps.lock().unwrap().get(&(k, q, n)) {
            return d.clone();
        }
        let cell = self.cell(k, q, n);
        let maps: DMap = (0..cell.len())
            .map(|b| d_split(&self.alg, &cell.to_form(&self.alg, &std::iter::once((b, scalar::one())).collect())))
            .collect();
        let maps = Arc::new(maps);
        self.dmaps.lock().unwrap().insert((k, q, n), maps.clone());
        maps
    }

    fn check_bound(&self, used: u32) -> Result<(), SpectralError> {
        if used > self.max_degree {
            return Err(SpectralError::BoundExceeded { required: used, cap: self.max_degree });
        }
        Ok(())
    }

    /// `(degree, weight)` of a nonzero homogeneous form.
    pub fn bidegree(&self, a: &PolyForm) -> Result<Option<(usize, u32)>, SpectralError> {
        if a.is_zero() {
            return Ok(None);
        }
        match (a.degree(), a.homogeneous_weight(&self.alg)) {
            (Some(k), Some(p)) => Ok(Some((k, p))),
            _ => Err(SpectralError::NotHomogeneous {
                degrees: a.degrees().into_iter().collect(),
                weights: a.weights(&self.alg).into_iter().collect(),
            }),
        }
    }

    // ----- Z_r -----

    /// Columns of the Z_r witness system at one grade: unknowns `z_{p+1..p+r−1}`, equations at
    /// weights `p+1..p+r−1`. With `include_alpha`, the `α` coordinates come first.
    fn z_system(&self, k: usize, p: u32, n: u32, r: usize, include_alpha: bool) -> ZSystem {
        let mut eq_offset: BTreeMap<u32, (usize, Arc<Cell>)> = BTreeMap::new();
        let mut rows = 0;
        let first_eq = if include_alpha { 0 } else { 1 };
        for m in first_eq..r as u32 {
            let cell = self.cell(k + 1, p + m, n);
            eq_offset.insert(p + m, (rows, cell.clone()));
            rows += cell.len();
        }
        let place = |out: &mut SparseVec, f: &PolyForm, sign: &crate::Rational| {
            if f.is_zero() {
                return;
            }
            let w = f.homogeneous_weight(&self.alg).expect("homogeneous image");
            let (off, cell) = &eq_offset[&w];
            for (i, v) in cell.coords(f) {
                let e = out.entry(off + i).or_insert_with(scalar::zero);
                *e += v * sign;
                if num_traits::Zero::is_zero(e) {
                    out.remove(&(off + i));
                }
            }
        };
        let one = scalar::one();
        let minus = -scalar::one();
        let mut columns = Vec::new();
        let mut unknowns = Vec::new();
        let mut used = 0;
        if include_alpha {
            let cell = self.cell(k, p, n);
            let dm = self.dmap(k, p, n);
            for parts in dm.iter() {
                let mut col = SparseVec::new();
                for (i, f) in parts {
                    if (*i as usize) < r {
                        place(&mut col, f, &one);
                    }
                }
                columns.push(col);
            }
            unknowns.push((0, cell));
        }
        for j in 1..r as u32 {
            let cell = self.cell(k, p + j, n);
            if !cell.is_empty() {
                used = used.max(cell.coefficient_degree());
            }
            let dm = self.dmap(k, p + j, n);
            for parts in dm.iter() {
                let mut col = SparseVec::new();
                for (i, f) in parts {
                    if j + i < r as u32 {
                        // d_n α = Σ d_{n−j} z_j: move witnesses left only when α is unknown too
                        place(&mut col, f, if include_alpha { &minus } else { &one });
                    }
                }
                columns.push(col);
            }
            unknowns.push((j, cell));
        }
        ZSystem { eq_offset, unknowns, columns, used }
    }

    /// Tests `α ∈ Z_r` and returns a witness chain when it is.
    pub fn z_membership(&self, a: &PolyForm, r: usize) -> Result<Outcome<WitnessChain>, SpectralError> {
        if r == 0 {
            return Err(SpectralError::BadPage);
        }
        let Some((k, p)) = self.bidegree(a)? else {
            return Ok(Outcome {
                found: Some(WitnessChain { alpha: a.clone(), degree: 0, weight: 0, witnesses: vec![PolyForm::zero(); r - 1] }),
                bound: 0,
            });
        };
        if !fiber::d0(&self.alg, a).is_zero() {
            return Ok(Outcome { found: None, bound: 0 });
        }
        let mut witnesses = vec![PolyForm::zero(); r - 1];
        let mut bound = 0;
        for (n, piece) in grade_components(&self.alg, a) {
            if r == 1 {
                break;
            }
            let sys = self.z_system(k, p, n, r, false);
            bound = bound.max(sys.used);
            self.check_bound(sys.used)?;
            let mut rhs = SparseVec::new();
            for (i, f) in d_split(&self.alg, &piece) {
                if i >= 1 && (i as usize) < r {
                    let (off, cell) = &sys.eq_offset[&(p + i)];
                    for (idx, v) in cell.coords(&f) {
                        rhs.insert(off + idx, v);
                    }
                }
            }
            let solver = SparseSystem::new(sys.columns.clone());
            let Some(x) = solver.solve(&rhs) else {
                return Ok(Outcome { found: None, bound });
            };
            let mut start = 0;
            for (j, cell) in &sys.unknowns {
                let seg: SparseVec = x
                    .range(start..start + cell.len())
                    .map(|(i, v)| (i - start, v.clone()))
                    .collect();
                witnesses[*j as usize - 1] = witnesses[*j as usize - 1].add(&cell.to_form(&self.alg, &seg));
                start += cell.len();
            }
        }
        Ok(Outcome { found: Some(WitnessChain { alpha: a.clone(), degree: k, weight: p, witnesses }), bound })
    }

    /// Checks the defining equations of a chain directly.
    pub fn verify_chain(&self, chain: &WitnessChain) -> Result<(), SpectralError> {
        let alg = &self.alg;
        if !fiber::d0(alg, &chain.alpha).is_zero() {
            return Err(SpectralError::InvalidChain("d0 α ≠ 0".into()));
        }
        if chain.alpha.is_zero() {
            return Ok(());
        }
        let p = chain.weight;
        for (j, z) in chain.witnesses.iter().enumerate() {
            let j = j as u32 + 1;
            if !z.is_zero() && (z.degree() != Some(chain.degree) || z.homogeneous_weight(alg) != Some(p + j)) {
                return Err(SpectralError::InvalidChain(format!("z_{{p+{j}}} has the wrong bidegree")));
            }
        }
        let splits: Vec<BTreeMap<u32, PolyForm>> =
            (0..chain.page()).map(|j| d_split(alg, &chain.witness(j))).collect();
        for n in 1..chain.page() as u32 {
            let mut lhs = splits[0].get(&n).cloned().unwrap_or_default();
            for i in 0..n {
                if let Some(f) = splits[(n - i) as usize].get(&i) {
                    lhs = lhs.sub(f);
                }
            }
            if !lhs.is_zero() {
                return Err(SpectralError::InvalidChain(format!("equation n={n} fails")));
            }
        }
        Ok(())
    }

    /// Basis (in cell coordinates) of `Z_r` inside the cell `(k, p, n)`.
    pub fn z_subspace(&self, k: usize, p: u32, n: u32, r: usize) -> Result<Subspace, SpectralError> {
        let sys = self.z_system(k, p, n, r, true);
        self.check_bound(sys.used)?;
        let alpha_len = self.cell(k, p, n).len();
        let kernel = SparseSystem::new(sys.columns).kernel().to_vec();
        Ok(Subspace::span(alpha_len, kernel.into_iter().map(|v| v.range(..alpha_len).map(|(i, c)| (*i, c.clone())).collect())))
    }

    // ----- B_r -----

    fn b_system(&self, k: usize, p: u32, n: u32, r: usize, include_alpha: bool) -> BSystem {
        let mut eq_offset: BTreeMap<u32, (usize, Arc<Cell>)> = BTreeMap::new();
        let mut rows = 0;
        for l in 0..r as u32 {
            if l > p {
                break;
            }
            let cell = self.cell(k, p - l, n);
            eq_offset.insert(p - l, (rows, cell.clone()));
            rows += cell.len();
        }
        let mut columns = Vec::new();
        let mut unknowns = Vec::new();
        let mut used = 0;
        if include_alpha {
            let (off, cell) = &eq_offset[&p];
            for i in 0..cell.len() {
                columns.push(std::iter::once((off + i, -scalar::one())).collect());
            }
        }
        if k > 0 {
            for j in 0..r as u32 {
                if j > p {
                    break;
                }
                let cell = self.cell(k - 1, p - j, n);
                if !cell.is_empty() {
                    used = used.max(cell.coefficient_degree());
                }
                let dm = self.dmap(k - 1, p - j, n);
                for parts in dm.iter() {
                    let mut col = SparseVec::new();
                    for (i, f) in parts {
                        if *i > j {
                            continue;
                        }
                        // lands at weight p − j + i, i.e. equation l = j − i
                        let (off, ecell) = &eq_offset[&(p - j + i)];
                        for (idx, v) in ecell.coords(f) {
                            col.insert(off + idx, v);
                        }
                    }
                    columns.push(col);
                }
                unknowns.push((j, cell));
            }
        }
        BSystem { eq_offset, unknowns, columns, used }
    }

    /// Tests `α ∈ B_r` and returns the forms `c_{p−j}` when it is.
    pub fn b_membership(&self, a: &PolyForm, r: usize) -> Result<Outcome<BCertificate>, SpectralError> {
        if r == 0 {
            return Err(SpectralError::BadPage);
        }
        let Some((k, p)) = self.bidegree(a)? else {
            return Ok(Outcome { found: Some(BCertificate { pieces: vec![PolyForm::zero(); r] }), bound: 0 });
        };
        if r == 1 {
            let c = fiber::d0_pinv(&self.alg, a);
            let back = fiber::d0(&self.alg, &c);
            let bound = derham::coefficient_degree(&c).unwrap_or(0);
            let found = (back == *a).then(|| BCertificate { pieces: vec![c] });
            return Ok(Outcome { found, bound });
        }
        let mut pieces = vec![PolyForm::zero(); r];
        let mut bound = 0;
        for (n, piece) in grade_components(&self.alg, a) {
            let sys = self.b_system(k, p, n, r, false);
            bound = bound.max(sys.used);
            self.check_bound(sys.used)?;
            let (off, cell) = &sys.eq_offset[&p];
            let rhs: SparseVec = cell.coords(&piece).into_iter().map(|(i, v)| (off + i, v)).collect();
            let Some(x) = SparseSystem::new(sys.columns.clone()).solve(&rhs) else {
                return Ok(Outcome { found: None, bound });
            };
            let mut start = 0;
            for (j, cell) in &sys.unknowns {
                let seg: SparseVec = x
                    .range(start..start + cell.len())
                    .map(|(i, v)| (i - start, v.clone()))
                    .collect();
                pieces[*j as usize] = pieces[*j as usize].add(&cell.to_form(&self.alg, &seg));
                start += cell.len();
            }
        }
        Ok(Outcome { found: Some(BCertificate { pieces }), bound })
    }

    pub fn verify_certificate(&self, a: &PolyForm, cert: &BCertificate) -> bool {
        let r = cert.pieces.len();
        let splits: Vec<BTreeMap<u32, PolyForm>> = cert.pieces.iter().map(|c| d_split(&self.alg, c)).collect();
        let mut total = PolyForm::zero();
        for (j, s) in splits.iter().enumerate() {
            if let Some(f) = s.get(&(j as u32)) {
                total = total.add(f);
            }
        }
        if total != *a {
            return false;
        }
        for l in 1..r {
            let mut side = PolyForm::zero();
            for (j, s) in splits.iter().enumerate().skip(l) {
                if let Some(f) = s.get(&((j - l) as u32)) {
                    side = side.add(f);
                }
            }
            if !side.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn b_subspace(&self, k: usize, p: u32, n: u32, r: usize) -> Result<Subspace, SpectralError> {
        let alpha_len = self.cell(k, p, n).len();
        if r == 1 {
            let cell = self.cell(k, p, n);
            let mut images = Vec::new();
            if k > 0 {
                let dm = self.dmap(k - 1, p, n);
                images.extend(dm.iter().filter_map(|parts| parts.get(&0).map(|f| cell.coords(f))));
            }
            return Ok(Subspace::span(alpha_len, images));
        }
        let sys = self.b_system(k, p, n, r, true);
        self.check_bound(sys.used)?;
        let kernel = SparseSystem::new(sys.columns).kernel().to_vec();
        Ok(Subspace::span(alpha_len, kernel.into_iter().map(|v| v.range(..alpha_len).map(|(i, c)| (*i, c.clone())).collect())))
    }

    // ----- Δ_r -----

    /// `Δ_r [α] = [d_r α − Σ_{i=1}^{r−1} d_i z_{p+r−i}]` modulo `B_r`.
    pub fn delta_r(&self, chain: &WitnessChain) -> Result<CosetForm, SpectralError> {
        self.verify_chain(chain)?;
        let r = chain.page();
        let alg = &self.alg;
        let mut rep = derham::d_part(alg, &chain.alpha, r as u32);
        for i in 1..r {
            let z = chain.witness(r - i);
            rep = rep.sub(&derham::d_part(alg, &z, i as u32));
        }
        Ok(CosetForm { representative: rep, page: r, degree: chain.degree + 1, weight: chain.weight + r as u32 })
    }

    /// Whether two representatives agree modulo `B_page`.
    pub fn coset_eq(&self, a: &CosetForm, b: &CosetForm) -> Result<bool, SpectralError> {
        let diff = a.representative.sub(&b.representative);
        Ok(self.b_membership(&diff, a.page.max(b.page))?.found.is_some())
    }

    /// `E_{j,l} = Z_j ∩ (B_l)^⊥` at bidegree `(p, k−p)`, coefficient degree at most `bound`.
    pub fn e_space_basis(&self, j: usize, l: usize, p: u32, k: usize, bound: u32) -> Result<Vec<PolyForm>, SpectralError> {
        let mut out = Vec::new();
        for n in p..=p + bound {
            let cell = self.cell(k, p, n);
            if cell.is_empty() {
                continue;
            }
            let z = self.z_subspace(k, p, n, j)?.with_ambient(cell.len());
            let b = self.b_subspace(k, p, n, l)?.with_ambient(cell.len());
            let e = z.intersect(&b.complement());
            out.extend(e.basis().iter().map(|v| cell.to_form(&self.alg, v)));
        }
        Ok(out)
    }

    /// Compares `⋆[Z_{r1} ∩ B_{r2}^⊥]` with `Z_{r2} ∩ B_{r1}^⊥` at the dual bidegree, on
    /// left-invariant forms.
    pub fn star_duality_check(&self, r1: usize, r2: usize, p: u32, k: usize) -> Result<StarDuality, SpectralError> {
        let alg = &self.alg;
        let q = alg.homogeneous_dimension();
        let n = alg.dim();
        if k > n || p > q {
            return Ok(StarDuality { holds: true, star_of_left: vec![], right: vec![] });
        }
        let left = self.e_space_basis(r1, r2, p, k, 0)?;
        let right = self.e_space_basis(r2, r1, q - p, n - k, 0)?;
        let to_fiber = |f: &PolyForm| derham::as_invariant(f).expect("invariant slice");
        let star_left: Vec<FiberForm> = left.iter().map(|f| fiber::hodge_star(alg, &to_fiber(f))).collect();
        let right: Vec<FiberForm> = right.iter().map(to_fiber).collect();
        let basis = fiber::basis(alg, n - k, q - p);
        let sl = Subspace::span(basis.len(), star_left.iter().map(|f| f.to_sparse(&basis)));
        let sr = Subspace::span(basis.len(), right.iter().map(|f| f.to_sparse(&basis)));
        let holds = sl.with_ambient(basis.len()) == sr.with_ambient(basis.len());
        let canon = |s: &Subspace| s.basis().iter().map(|v| FiberForm::from_sparse(&basis, v)).collect();
        Ok(StarDuality { holds, star_of_left: canon(&sl), right: canon(&sr) })
    }

    // ----- Rumin complex -----

    /// `ᾱ = Σ_m (−d0⁻¹(d − d0))^m α`.
    pub fn rumin_extension(&self, a: &PolyForm) -> PolyForm {
        let alg = &self.alg;
        let mut acc = a.clone();
        let mut term = a.clone();
        loop {
            let mut rest = derham::exterior_derivative(alg, &term);
            rest = rest.sub(&fiber::d0(alg, &term));
            let next = fiber::d0_pinv(alg, &rest).neg();
            if next.is_zero() {
                return acc;
            }
            acc = acc.add(&next);
            term = next;
        }
    }

    /// Rumin differential `d_c α = Π0 d ᾱ` on `ker □0`.
    pub fn rumin_dc(&self, a: &PolyForm) -> Result<PolyForm, SpectralError> {
        let alg = &self.alg;
        if fiber::pi0(alg, a) != *a {
            return Err(SpectralError::NotRumin);
        }
        let ext = self.rumin_extension(a);
        Ok(fiber::pi0(alg, &derham::exterior_derivative(alg, &ext)))
    }

    /// `d_c α = Σ_j d_c^j α`, with `d_c^j` raising the weight by `j`.
    pub fn dc_weight_split(&self, a: &PolyForm) -> Result<Vec<(u32, PolyForm)>, SpectralError> {
        let Some((_, p)) = self.bidegree(a)? else { return Ok(vec![]) };
        let dc = self.rumin_dc(a)?;
        Ok(dc.weight_components(&self.alg).into_iter().map(|(w, f)| (w - p, f)).collect())
    }
}

struct ZSystem {
    eq_offset: BTreeMap<u32, (usize, Arc<Cell>)>,
    unknowns: Vec<(u32, Arc<Cell>)>,
    columns: Vec<SparseVec>,
    used: u32,
}

struct BSystem {
    eq_offset: BTreeMap<u32, (usize, Arc<Cell>)>,
    unknowns: Vec<(u32, Arc<Cell>)>,
    columns: Vec<SparseVec>,
    used: u32,
}

/// Generic `f` on `space` as a sum of all monomials of weighted degree up to `bound`, each
/// with its own symbolic coefficient, is not representable over Q; instead callers check
/// identities on every monomial, which is equivalent by linearity.
pub fn monomial_forms(alg: &StratifiedAlgebra, c: Covector, bound: u32) -> Vec<PolyForm> {
    crate::poly::monomials_up_to(alg.coords(), bound)
        .into_iter()
        .map(|m| PolyForm::term(c, WeightedPoly::monomial(alg.coords(), m, scalar::one())))
        .collect()
}
