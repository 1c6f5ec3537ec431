//! Exact linear algebra over the rationals.
//!
//! Two flavours: small dense matrices (fiber blocks, pseudo-inverses) and an incremental
//! sparse echelon form that records how each stored row was produced from its inputs, so
//! membership tests come back with coefficients and dependencies come back as kernel vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{self, Rational};

/// Sparse vector: index → nonzero entry.
pub type SparseVec = BTreeMap<usize, Rational>;

/// `acc += c * v`, dropping cancelled entries.
pub fn axpy(acc: &mut SparseVec, c: &Rational, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let entry = acc.entry(*k).or_insert_with(scalar::zero);
        *entry += c * x;
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn scale_sparse(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

pub fn dot_sparse(a: &SparseVec, b: &SparseVec) -> Rational {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = scalar::zero();
    for (k, x) in small {
        if let Some(y) = large.get(k) {
            acc += x * y;
        }
    }
    acc
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Outcome of feeding a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    Independent,
    /// Coefficients over input indices summing to zero; the new input has coefficient 1.
    Dependent(SparseVec),
}

/// Incremental row echelon form with pivot = smallest index, tracking input combinations.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    inputs: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Writes `v = Σ combo_i · input_i + remainder` with the remainder free of pivots.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut work = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[&k];
            axpy(&mut work, &-c.clone(), &row.vec);
            axpy(&mut combo, &c, &row.combo);
            cursor = k + 1;
        }
        (work, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients `x` with `Σ x_i · input_i = v`, if `v` lies in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.reduce(v);
        rem.is_empty().then_some(combo)
    }

    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let id = self.inputs;
        self.inputs += 1;
        let (rem, combo) = self.reduce(&v);
        let mut own = SparseVec::new();
        own.insert(id, scalar::one());
        axpy(&mut own, &-scalar::one(), &combo);
        match rem.iter().next() {
            None => Insert::Dependent(own),
            Some((&pivot, lead)) => {
                let inv = scalar::one() / lead;
                let row = Row { vec: scale_sparse(&rem, &inv), combo: scale_sparse(&own, &inv) };
                self.rows.insert(pivot, row);
                Insert::Independent
            }
        }
    }
}

/// Solves `Σ x_j · columns_j = b` and also returns a kernel basis of the column map.
pub struct SparseSystem {
    echelon: Echelon,
    kernel: Vec<SparseVec>,
}

impl SparseSystem {
    pub fn new(columns: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut echelon = Echelon::new();
        let mut kernel = Vec::new();
        for c in columns {
            if let Insert::Dependent(k) = echelon.insert(c) {
                kernel.push(k);
            }
        }
        SparseSystem { echelon, kernel }
    }

    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        self.echelon.solve(b)
    }

    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_echelon(&self.echelon)
    }
}

/// A subspace of `Q^ambient` held in reduced row echelon form, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| std::iter::once((i, scalar::one())).collect())
            .collect();
        Subspace { ambient, rows }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            debug_assert!(v.keys().all(|&k| k < ambient));
            e.insert(v);
        }
        let mut s = Self::from_echelon(&e);
        s.ambient = ambient;
        s
    }

    fn from_echelon(e: &Echelon) -> Self {
        let mut rows: Vec<(usize, SparseVec)> = e.rows.iter().map(|(p, r)| (*p, r.vec.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (pi, ri) = (rows[i].0, rows[i].1.clone());
            for row in rows.iter_mut().take(i) {
                if let Some(c) = row.1.get(&pi).cloned() {
                    axpy(&mut row.1, &-c, &ri);
                }
            }
        }
        let ambient = rows.iter().flat_map(|(_, r)| r.keys().next_back().copied()).max().map_or(0, |m| m + 1);
        Subspace { ambient, rows: rows.into_iter().map(|(_, r)| r).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    fn pivot(row: &SparseVec) -> usize {
        *row.keys().next().expect("nonzero row")
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut work = v.clone();
        for row in &self.rows {
            if let Some(c) = work.get(&Self::pivot(row)).cloned() {
                axpy(&mut work, &-c, row);
            }
        }
        work.is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient.max(other.ambient), self.rows.iter().chain(&other.rows).cloned())
    }

    /// Orthogonal complement for the standard inner product.
    pub fn complement(&self) -> Subspace {
        let pivots: Vec<usize> = self.rows.iter().map(Self::pivot).collect();
        let mut out = Vec::new();
        for j in 0..self.ambient {
            if pivots.contains(&j) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(j, scalar::one());
            for (row, &p) in self.rows.iter().zip(&pivots) {
                if let Some(c) = row.get(&j) {
                    v.insert(p, -c.clone());
                }
            }
            out.push(v);
        }
        Subspace::span(self.ambient, out)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let ambient = self.ambient.max(other.ambient);
        let a = self.with_ambient(ambient).complement();
        let b = other.with_ambient(ambient).complement();
        a.sum(&b).with_ambient(ambient).complement()
    }

    pub fn with_ambient(&self, ambient: usize) -> Subspace {
        assert!(self.rows.iter().all(|r| r.keys().all(|&k| k < ambient)), "ambient too small");
        Subspace { ambient, rows: self.rows.clone() }
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = scalar::one() / m.get(r, c);
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, scalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Moore–Penrose pseudo-inverse through a full-rank factorisation `A = C F`.
    pub fn pinv(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        if k == 0 {
            return Matrix::zeros(self.cols, self.rows);
        }
        let mut c = Matrix::zeros(self.rows, k);
        for (jj, &j) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                c.set(i, jj, self.get(i, j).clone());
            }
        }
        let mut f = Matrix::zeros(k, self.cols);
        for i in 0..k {
            for j in 0..self.cols {
                f.set(i, j, r.get(i, j).clone());
            }
        }
        let ct = c.transpose();
        let ft = f.transpose();
        let ctc_inv = ct.mul(&c).inverse().expect("full column rank");
        let fft_inv = f.mul(&ft).inverse().expect("full row rank");
        ft.mul(&fft_inv).mul(&ctc_inv).mul(&ct)
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|j| !pivots.contains(j)) {
            let mut v = vec![scalar::zero(); self.cols];
            v[free] = scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            out.push(v);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, int(c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn echelon_solve_and_kernel() {
        let sys = SparseSystem::new(vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (2, -1)])]);
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.kernel().len(), 1);
        let k = &sys.kernel()[0];
        // c0·(1,1,0) + c1·(0,1,1) + c2·(1,0,−1) = 0
        let mut acc = SparseVec::new();
        for (i, col) in [sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (2, -1)])].iter().enumerate() {
            axpy(&mut acc, k.get(&i).unwrap_or(&scalar::zero()), col);
        }
        assert!(acc.is_empty());
        let x = sys.solve(&sv(&[(0, 2), (1, 3), (2, 1)])).unwrap();
        assert_eq!(x.get(&0), Some(&int(2)));
        assert!(sys.solve(&sv(&[(0, 1)])).is_none());
    }

    #[test]
    fn subspace_canonical_form() {
        let a = Subspace::span(3, vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)])]);
        let b = Subspace::span(3, vec![sv(&[(0, 1), (2, -1)]), sv(&[(0, 2), (1, 3), (2, 1)])]);
        assert_eq!(a, b);
        assert_eq!(a.complement().dim(), 1);
        assert!(a.complement().contains(&sv(&[(0, 1), (1, -1), (2, 1)])));
        let c = Subspace::span(3, vec![sv(&[(0, 1)]), sv(&[(2, 1)])]);
        let i = a.intersect(&c);
        assert_eq!(i, Subspace::span(3, vec![sv(&[(0, 1), (2, -1)])]));
    }

    #[test]
    fn pinv_of_rank_one() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        let p = a.pinv();
        assert_eq!(p, Matrix::from_rows(vec![vec![rat(1, 25), rat(2, 25)], vec![rat(2, 25), rat(4, 25)]]));
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c).prop_map(move |d| {
                Matrix::from_rows(d.chunks(c).map(|row| row.iter().map(|&x| int(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn penrose_conditions(a in arb_matrix()) {
            let p = a.pinv();
            prop_assert_eq!(a.mul(&p).mul(&a), a.clone());
            prop_assert_eq!(p.mul(&a).mul(&p), p.clone());
            let ap = a.mul(&p);
            prop_assert_eq!(ap.transpose(), ap);
            let pa = p.mul(&a);
            prop_assert_eq!(pa.transpose(), pa);
        }

        #[test]
        fn kernel_is_annihilated(a in arb_matrix()) {
            for v in a.kernel() {
                prop_assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(a.kernel().len() + a.rank(), a.cols());
        }

        #[test]
        fn complement_dimension(a in arb_matrix()) {
            let s = Subspace::span(a.cols(), (0..a.rows()).map(|i| dense_to_sparse(&a.transpose().column(i))));
            let c = s.complement();
            prop_assert_eq!(s.dim() + c.dim(), a.cols());
            for u in s.basis() { for v in c.basis() { prop_assert!(dot_sparse(u, v).is_zero()); } }
            prop_assert!(s.intersect(&c).is_zero());
        }
    }
}
