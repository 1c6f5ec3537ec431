//! Graded nilpotent Lie algebras given by structure constants, and the group law they induce
//! in exponential coordinates.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::fiber::FiberCache;
use crate::linalg::{axpy, Matrix, SparseVec, Subspace};
use crate::poly::{VarSpace, WeightedPoly};
use crate::ring::Coefficient;
use crate::scalar::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra must have at least one basis vector")]
    Empty,
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },
    #[error("basis index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("weight of basis vector {index} must be positive")]
    ZeroWeight { index: usize },
    #[error("dimension {0} exceeds the supported maximum of 63")]
    TooLarge(usize),
}

/// One structure-constant entry: `[X_i, X_j] = Σ c_k X_k` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Rational)>,
}

/// Result of checking the axioms; failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetry: Vec<(usize, usize)>,
    pub jacobi: Vec<(usize, usize, usize)>,
    /// `(i, j, k)`: `[X_i, X_j]` has an `X_k` component with `w_k ≠ w_i + w_j`.
    pub grading: Vec<(usize, usize, usize)>,
    pub generated_by_first_layer: bool,
    pub homogeneous_dimension: u32,
    pub step: u32,
}

impl ValidationReport {
    /// Antisymmetric, Jacobi and compatible with the grading.
    pub fn is_graded_lie_algebra(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty() && self.grading.is_empty()
    }

    pub fn is_carnot(&self) -> bool {
        self.is_graded_lie_algebra() && self.generated_by_first_layer
    }

    pub fn summary(&self) -> String {
        if self.is_carnot() {
            return format!("valid Carnot algebra, Q={}", self.homogeneous_dimension);
        }
        let mut parts = Vec::new();
        if !self.antisymmetry.is_empty() {
            parts.push(format!("antisymmetry fails at {:?}", one_based2(&self.antisymmetry)));
        }
        if !self.jacobi.is_empty() {
            parts.push(format!("Jacobi fails at {:?}", one_based3(&self.jacobi)));
        }
        if !self.grading.is_empty() {
            parts.push(format!("grading violated at {:?}", one_based3(&self.grading)));
        }
        if parts.is_empty() {
            return format!(
                "graded nilpotent algebra, not stratified (first layer does not generate), Q={}",
                self.homogeneous_dimension
            );
        }
        parts.join("; ")
    }
}

fn one_based2(v: &[(usize, usize)]) -> Vec<(usize, usize)> {
    v.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
}

fn one_based3(v: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize)> {
    v.iter().map(|&(a, b, c)| (a + 1, b + 1, c + 1)).collect()
}

pub struct StratifiedAlgebra {
    name: String,
    labels: Vec<String>,
    coframe: Vec<String>,
    weights: Vec<u32>,
    table: Vec<Vec<SparseVec>>,
    coords: Arc<VarSpace>,
    bch: OnceLock<Vec<WeightedPoly>>,
    frame: OnceLock<Vec<Vec<WeightedPoly>>>,
    pub(crate) fiber: FiberCache,
}

impl Clone for StratifiedAlgebra {
    fn clone(&self) -> Self {
        StratifiedAlgebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            coframe: self.coframe.clone(),
            weights: self.weights.clone(),
            table: self.table.clone(),
            coords: self.coords.clone(),
            bch: OnceLock::new(),
            frame: OnceLock::new(),
            fiber: FiberCache::default(),
        }
    }
}

impl fmt::Debug for StratifiedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StratifiedAlgebra")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("weights", &self.weights)
            .finish_non_exhaustive()
    }
}

impl PartialEq for StratifiedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.table == other.table
    }
}

/// Builder-style description; defaults: labels `X1..`, coframe `θ1..`, coordinates `x1..`.
#[derive(Clone, Debug, Default)]
pub struct AlgebraSpec {
    pub name: String,
    pub weights: Vec<u32>,
    pub brackets: Vec<Bracket>,
    pub labels: Option<Vec<String>>,
    pub coframe: Option<Vec<String>>,
    pub coordinates: Option<Vec<String>>,
}

impl StratifiedAlgebra {
    /// Brackets listed only as `(i, j)` are extended antisymmetrically to `(j, i)`.
    pub fn new(spec: AlgebraSpec) -> Result<Self, AlgebraError> {
        let n = spec.weights.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if n > 63 {
            return Err(AlgebraError::TooLarge(n));
        }
        if let Some(i) = spec.weights.iter().position(|&w| w == 0) {
            return Err(AlgebraError::ZeroWeight { index: i });
        }
        let names = |given: Option<Vec<String>>, what: &'static str, prefix: &str| match given {
            Some(v) if v.len() != n => Err(AlgebraError::LengthMismatch { what, expected: n, got: v.len() }),
            Some(v) => Ok(v),
            None => Ok((1..=n).map(|i| format!("{prefix}{i}")).collect()),
        };
        let labels = names(spec.labels, "labels", "X")?;
        let coframe = names(spec.coframe, "coframe", "θ")?;
        let coord_names = names(spec.coordinates, "coordinates", "x")?;

        let mut table = vec![vec![SparseVec::new(); n]; n];
        let mut given = vec![vec![false; n]; n];
        for b in &spec.brackets {
            for &idx in [b.i, b.j].iter().chain(b.terms.iter().map(|(k, _)| k)) {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            let mut v = SparseVec::new();
            for (k, c) in &b.terms {
                let mut e = SparseVec::new();
                e.insert(*k, c.clone());
                axpy(&mut v, &scalar::one(), &e);
            }
            let mut acc = table[b.i][b.j].clone();
            axpy(&mut acc, &scalar::one(), &v);
            table[b.i][b.j] = acc;
            given[b.i][b.j] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if given[i][j] && !given[j][i] {
                    table[j][i] = table[i][j].iter().map(|(k, c)| (*k, -c.clone())).collect();
                }
            }
        }
        let coords = VarSpace::new(coord_names, spec.weights.clone());
        Ok(StratifiedAlgebra {
            name: spec.name,
            labels,
            coframe,
            weights: spec.weights,
            table,
            coords,
            bch: OnceLock::new(),
            frame: OnceLock::new(),
            fiber: FiberCache::default(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> u32 {
        self.weights[j]
    }

    pub fn step(&self) -> u32 {
        *self.weights.iter().max().expect("nonempty")
    }

    pub fn homogeneous_dimension(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coframe(&self) -> &[String] {
        &self.coframe
    }

    /// Exponential coordinates `x_j`, weighted like `X_j`.
    pub fn coords(&self) -> &Arc<VarSpace> {
        &self.coords
    }

    /// `[X_i, X_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j].get(&k).cloned().unwrap_or_else(scalar::zero)
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn bracket_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in u {
            for (j, b) in v {
                axpy(&mut out, &(a * b), &self.table[*i][*j]);
            }
        }
        out
    }

    /// Bracket of algebra elements with coefficients in any ring.
    pub fn bracket<C: Coefficient>(&self, u: &[C], v: &[C]) -> Vec<C> {
        let zero = u[0].zero_like();
        let mut out = vec![zero; self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.vanishes() || self.table[i][j].is_empty() {
                    continue;
                }
                let ab = a.times(b);
                for (k, c) in &self.table[i][j] {
                    out[k.to_owned()].add_scaled(c, &ab);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut antisymmetry = Vec::new();
        let mut grading = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut s = self.table[i][j].clone();
                axpy(&mut s, &scalar::one(), &self.table[j][i]);
                if !s.is_empty() {
                    antisymmetry.push((i, j));
                }
                for k in self.table[i][j].keys() {
                    if self.weights[*k] != self.weights[i] + self.weights[j] {
                        grading.push((i, j, *k));
                    }
                }
            }
        }
        let unit = |i: usize| -> SparseVec { std::iter::once((i, scalar::one())).collect() };
        let mut jacobi = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket_vec(&unit(i), &self.table[j][k]);
                    axpy(&mut s, &scalar::one(), &self.bracket_vec(&unit(j), &self.table[k][i]));
                    axpy(&mut s, &scalar::one(), &self.bracket_vec(&unit(k), &self.table[i][j]));
                    if !s.is_empty() {
                        jacobi.push((i, j, k));
                    }
                }
            }
        }
        ValidationReport {
            antisymmetry,
            jacobi,
            grading,
            generated_by_first_layer: self.first_layer_generates(),
            homogeneous_dimension: self.homogeneous_dimension(),
            step: self.step(),
        }
    }

    fn first_layer_generates(&self) -> bool {
        let n = self.dim();
        let first: Vec<SparseVec> = (0..n)
            .filter(|&i| self.weights[i] == 1)
            .map(|i| std::iter::once((i, scalar::one())).collect())
            .collect();
        let mut span = Subspace::span(n, first.clone());
        let mut frontier = first.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for g in &first {
                    let b = self.bracket_vec(g, v);
                    if !b.is_empty() && !span.contains(&b) {
                        span = span.sum(&Subspace::span(n, vec![b.clone()])).with_ambient(n);
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        span.dim() == n
    }

    /// The variable space of the dilation parameter `λ`.
    pub fn lambda_space() -> Arc<VarSpace> {
        VarSpace::new(vec!["λ".into()], vec![1])
    }

    /// `δ_λ v` with `λ` kept symbolic.
    pub fn dilation_apply(&self, v: &[Rational]) -> Vec<WeightedPoly> {
        let ls = Self::lambda_space();
        let lam = WeightedPoly::var(&ls, 0);
        v.iter()
            .zip(&self.weights)
            .map(|(c, &w)| lam.pow(w).scale(c))
            .collect()
    }

    /// Space for the pair `(x, y)`: the coordinates twice.
    pub fn pair_space(&self) -> Arc<VarSpace> {
        let mut names: Vec<String> = self.coords.names().to_vec();
        names.extend((1..=self.dim()).map(|i| format!("y{i}")));
        if names.iter().collect::<std::collections::HashSet<_>>().len() < names.len() {
            names = (1..=self.dim()).map(|i| format!("x{i}")).chain((1..=self.dim()).map(|i| format!("y{i}"))).collect();
        }
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&self.weights);
        VarSpace::new(names, weights)
    }

    /// `log(exp X · exp Y)` for `X = Σ x_i X_i`, `Y = Σ y_i X_i`, in the pair space.
    pub fn bch_formula(&self) -> &[WeightedPoly] {
        self.bch.get_or_init(|| self.compute_bch())
    }

    fn compute_bch(&self) -> Vec<WeightedPoly> {
        let n = self.dim();
        let space = self.pair_space();
        let x: Vec<WeightedPoly> = (0..n).map(|i| WeightedPoly::var(&space, i)).collect();
        let y: Vec<WeightedPoly> = (0..n).map(|i| WeightedPoly::var(&space, n + i)).collect();
        let depth = self.step() as usize;

        let mut coeffs: HashMap<Vec<u8>, Rational> = HashMap::new();
        dynkin_words(depth, &mut Vec::new(), &mut Vec::new(), &mut coeffs);

        let mut memo: HashMap<Vec<u8>, Vec<WeightedPoly>> = HashMap::new();
        let mut out = vec![WeightedPoly::zero(&space); n];
        let mut words: Vec<_> = coeffs.into_iter().collect();
        words.sort();
        for (word, c) in words {
            if c.is_zero() {
                continue;
            }
            let v = self.nested(&word, &x, &y, &mut memo);
            for (o, vi) in out.iter_mut().zip(&v) {
                o.add_scaled(&c, vi);
            }
        }
        out
    }

    fn nested(
        &self,
        word: &[u8],
        x: &[WeightedPoly],
        y: &[WeightedPoly],
        memo: &mut HashMap<Vec<u8>, Vec<WeightedPoly>>,
    ) -> Vec<WeightedPoly> {
        if let Some(v) = memo.get(word) {
            return v.clone();
        }
        let head = if word[0] == 0 { x } else { y };
        let v = if word.len() == 1 {
            head.to_vec()
        } else {
            let tail = self.nested(&word[1..], x, y, memo);
            if tail.iter().all(WeightedPoly::is_zero) {
                tail
            } else {
                self.bracket(head, &tail)
            }
        };
        memo.insert(word.to_vec(), v.clone());
        v
    }

    /// Group product `x ∗ y` for coordinate vectors in a common space.
    pub fn product(&self, x: &[WeightedPoly], y: &[WeightedPoly]) -> Vec<WeightedPoly> {
        let images: Vec<WeightedPoly> = x.iter().chain(y).cloned().collect();
        self.bch_formula()
            .iter()
            .map(|p| p.substitute(&images).expect("matching arity"))
            .collect()
    }

    /// Group inverse in exponential coordinates.
    pub fn inverse(&self, x: &[WeightedPoly]) -> Vec<WeightedPoly> {
        x.iter().map(|p| -p).collect()
    }

    /// `frame()[j][k]`: coefficient of `∂_k` in the left-invariant field `X_j`.
    pub fn frame(&self) -> &[Vec<WeightedPoly>] {
        self.frame.get_or_init(|| {
            let n = self.dim();
            let bch = self.bch_formula();
            let mut images: Vec<WeightedPoly> = (0..n).map(|i| WeightedPoly::var(&self.coords, i)).collect();
            images.extend((0..n).map(|_| WeightedPoly::zero(&self.coords)));
            (0..n)
                .map(|j| {
                    bch.iter()
                        .map(|p| p.partial(n + j).expect("index").substitute(&images).expect("arity"))
                        .collect()
                })
                .collect()
        })
    }

    /// `X_j f` for a polynomial in the coordinates.
    pub fn apply_field(&self, j: usize, f: &WeightedPoly) -> WeightedPoly {
        let mut out = WeightedPoly::zero(f.space());
        for (k, a) in self.frame()[j].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let dk = f.partial(k).expect("index");
            if dk.is_zero() {
                continue;
            }
            let prod = &a.reinterpret(f.space()) * &dk;
            out.add_scaled(&scalar::one(), &prod);
        }
        out
    }
}

/// Accumulates Dynkin coefficients per word (0 = X, 1 = Y) up to length `depth`.
fn dynkin_words(depth: usize, blocks: &mut Vec<(usize, usize)>, word: &mut Vec<u8>, out: &mut HashMap<Vec<u8>, Rational>) {
    if !blocks.is_empty() {
        let k = blocks.len() as i64;
        let m = word.len() as i64;
        let mut denom = scalar::int(k * m);
        for &(r, s) in blocks.iter() {
            denom *= scalar::factorial(r as u32) * scalar::factorial(s as u32);
        }
        let sign = if k % 2 == 1 { scalar::one() } else { -scalar::one() };
        let c = sign / denom;
        let e = out.entry(word.clone()).or_insert_with(scalar::zero);
        *e += c;
    }
    let left = depth - word.len();
    for r in 0..=left {
        for s in 0..=(left - r) {
            if r + s == 0 {
                continue;
            }
            blocks.push((r, s));
            let len = word.len();
            word.extend(std::iter::repeat_n(0u8, r));
            word.extend(std::iter::repeat_n(1u8, s));
            dynkin_words(depth, blocks, word, out);
            word.truncate(len);
            blocks.pop();
        }
    }
}

/// Why a matrix fails to be a graded homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomFailure {
    /// Entry `(i, j)` links basis vectors of different weight.
    NotBlockDiagonal { row: usize, col: usize },
    /// `M[X_i, X_j] ≠ [M X_i, M X_j]`.
    Bracket { i: usize, j: usize },
    Shape,
}

/// Checks block-diagonality and bracket preservation of `m` (rows index the target basis).
pub fn hom_check<C: Coefficient>(
    source: &StratifiedAlgebra,
    target: &StratifiedAlgebra,
    m: &[Vec<C>],
) -> Result<(), HomFailure> {
    if m.len() != target.dim() || m.iter().any(|r| r.len() != source.dim()) {
        return Err(HomFailure::Shape);
    }
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.vanishes() && target.weight(i) != source.weight(j) {
                return Err(HomFailure::NotBlockDiagonal { row: i, col: j });
            }
        }
    }
    bracket_preserving(source, target, m)
}

/// Bracket preservation alone, without the block-diagonal requirement.
pub fn bracket_preserving<C: Coefficient>(
    source: &StratifiedAlgebra,
    target: &StratifiedAlgebra,
    m: &[Vec<C>],
) -> Result<(), HomFailure> {
    let col = |j: usize| -> Vec<C> { m.iter().map(|r| r[j].clone()).collect() };
    let zero = m[0][0].zero_like();
    for i in 0..source.dim() {
        for j in i + 1..source.dim() {
            let mut lhs = vec![zero.clone(); target.dim()];
            for (k, c) in source.bracket_basis(i, j) {
                for (l, v) in col(*k).iter().enumerate() {
                    lhs[l].add_scaled(c, v);
                }
            }
            let rhs = target.bracket(&col(i), &col(j));
            if lhs.iter().zip(&rhs).any(|(a, b)| !a.minus(b).vanishes()) {
                return Err(HomFailure::Bracket { i, j });
            }
        }
    }
    Ok(())
}

/// Constant graded homomorphism between two algebras.
#[derive(Clone, Debug)]
pub struct GradedHom {
    pub source: Arc<StratifiedAlgebra>,
    pub target: Arc<StratifiedAlgebra>,
    pub matrix: Matrix,
}

impl GradedHom {
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.matrix.rows())
            .map(|i| (0..self.matrix.cols()).map(|j| self.matrix.get(i, j).clone()).collect())
            .collect()
    }

    pub fn check(&self) -> Result<(), HomFailure> {
        hom_check(&self.source, &self.target, &self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;
    use crate::scalar::{int, rat};

    fn parse(s: &str, space: &Arc<VarSpace>) -> WeightedPoly {
        WeightedPoly::parse(s, space).unwrap()
    }

    #[test]
    fn validation_examples() {
        let h = groups::heisenberg();
        let r = h.validate();
        assert!(r.is_carnot());
        assert_eq!(r.homogeneous_dimension, 4);
        assert_eq!(groups::h1_x_r().validate().homogeneous_dimension, 5);
        let bad = StratifiedAlgebra::new(AlgebraSpec {
            name: "bad".into(),
            weights: vec![1, 1, 1],
            brackets: vec![Bracket { i: 0, j: 1, terms: vec![(2, int(1))] }],
            ..Default::default()
        })
        .unwrap();
        let r = bad.validate();
        assert_eq!(r.grading, vec![(0, 1, 2)]);
        assert!(!r.is_carnot());
    }

    #[test]
    fn dilation_examples() {
        let h = groups::heisenberg();
        let ls = StratifiedAlgebra::lambda_space();
        let d = h.dilation_apply(&[int(1), int(0), int(0)]);
        assert_eq!(d[0], parse("λ", &ls));
        let d = h.dilation_apply(&[int(0), int(0), int(1)]);
        assert_eq!(d[2], parse("λ^2", &ls));
        assert!(h.dilation_apply(&[int(0), int(0), int(0)]).iter().all(WeightedPoly::is_zero));
    }

    #[test]
    fn heisenberg_bch() {
        let h = groups::heisenberg();
        let bch = h.bch_formula();
        let s = h.pair_space();
        assert_eq!(bch[2], parse("x3 + y3 + 1/2*x1*y2 - 1/2*x2*y1", &s));
        assert_eq!(bch[0], parse("x1 + y1", &s));
    }

    #[test]
    fn identity_and_inverse() {
        let g = groups::nonstrat5();
        let c = g.coords();
        let x: Vec<_> = (0..5).map(|i| WeightedPoly::var(c, i)).collect();
        let zero = vec![WeightedPoly::zero(c); 5];
        assert_eq!(g.product(&x, &zero), x);
        assert!(g.product(&x, &g.inverse(&x)).iter().all(WeightedPoly::is_zero));
    }

    #[test]
    fn heisenberg_frame() {
        let h = groups::heisenberg();
        let c = h.coords();
        let f = h.frame();
        assert_eq!(f[0], vec![parse("1", c), parse("0", c), parse("-1/2*x2", c)]);
        assert_eq!(f[1], vec![parse("0", c), parse("1", c), parse("1/2*x1", c)]);
        assert_eq!(f[2], vec![parse("0", c), parse("0", c), parse("1", c)]);
        let hr = groups::h1_x_r();
        let c = hr.coords();
        assert_eq!(hr.frame()[2], vec![parse("0", c), parse("0", c), parse("1", c), parse("0", c)]);
        let ab = groups::abelian(3);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(ab.frame()[j][k].is_zero(), j != k);
            }
        }
    }

    #[test]
    fn hom_examples() {
        let h = groups::heisenberg();
        let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect();
        assert_eq!(hom_check(&h, &h, &id), Ok(()));
        let hr = groups::h1_x_r();
        let mut m: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| int((i == j) as i64)).collect()).collect();
        m[2][1] = int(1);
        assert_eq!(hom_check(&hr, &hr, &m), Ok(()));
        let swap = vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        assert_eq!(hom_check(&h, &h, &swap), Err(HomFailure::Bracket { i: 0, j: 1 }));
        let _ = rat(1, 2);
    }
}
