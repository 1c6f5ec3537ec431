//! Multivariate polynomials with exact rational coefficients, graded by a weighted degree.
//!
//! Every polynomial lives in a [`VarSpace`]: an ordered list of coordinate names, each
//! carrying a positive integer weight. Terms are stored sparsely in graded-lex order,
//! so two polynomials are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different variable spaces")]
    VariableMismatch,
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Ordered coordinate names with their weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSpace {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Arc<Self> {
        assert_eq!(names.len(), weights.len(), "one weight per variable");
        assert!(weights.iter().all(|&w| w > 0), "variable weights must be positive");
        Arc::new(VarSpace { names, weights })
    }

    /// `x1..xn` with the given weights.
    pub fn numbered(prefix: &str, weights: &[u32]) -> Arc<Self> {
        let names = (1..=weights.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(names, weights.to_vec())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn weight(&self, j: usize) -> u32 {
        self.weights[j]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `space` of weighted degree exactly `degree`, `x1` before `x2`.
pub fn monomials_of_weighted_degree(space: &VarSpace, degree: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[idx];
        let mut e = 0;
        while e * w <= left {
            cur.push(e);
            rec(weights, idx + 1, left - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(space.weights(), 0, degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// All monomials of weighted degree at most `bound`, ascending by weighted degree then graded-lex.
pub fn monomials_up_to(space: &VarSpace, bound: u32) -> Vec<Monomial> {
    (0..=bound)
        .flat_map(|d| monomials_of_weighted_degree(space, d))
        .collect()
}

#[derive(Clone, Debug)]
pub struct WeightedPoly {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for WeightedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space)
    }
}

impl Eq for WeightedPoly {}

impl WeightedPoly {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        WeightedPoly { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<VarSpace>, c: Rational) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(space.len()), c);
        }
        p
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::constant(space, scalar::one())
    }

    /// The coordinate `x_j` (0-based).
    pub fn var(space: &Arc<VarSpace>, j: usize) -> Self {
        let mut exps = vec![0; space.len()];
        exps[j] = 1;
        Self::monomial(space, Monomial(exps), scalar::one())
    }

    pub fn monomial(space: &Arc<VarSpace>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), space.len(), "exponent vector length");
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn same_space(&self, other: &WeightedPoly) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.space.len()))
            .cloned()
            .unwrap_or_else(scalar::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &WeightedPoly) -> Result<WeightedPoly, PolyError> {
        if !self.same_space(other) {
            return Err(PolyError::VariableMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &WeightedPoly) -> Result<WeightedPoly, PolyError> {
        if !self.same_space(other) {
            return Err(PolyError::VariableMismatch);
        }
        let mut out = WeightedPoly::zero(&self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &WeightedPoly) {
        assert!(self.same_space(other), "polynomials live in different variable spaces");
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn scale(&self, c: &Rational) -> WeightedPoly {
        if c.is_zero() {
            return WeightedPoly::zero(&self.space);
        }
        WeightedPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> WeightedPoly {
        let mut acc = WeightedPoly::one(&self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces each variable by its image; all images must share one target space.
    pub fn substitute(&self, images: &[WeightedPoly]) -> Result<WeightedPoly, PolyError> {
        if images.len() != self.space.len() {
            return Err(PolyError::ArityMismatch { expected: self.space.len(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.space.clone(),
            None => self.space.clone(),
        };
        if images.iter().any(|p| !(Arc::ptr_eq(&p.space, &target) || *p.space == *target)) {
            return Err(PolyError::VariableMismatch);
        }
        // power cache per variable
        let mut powers: Vec<Vec<WeightedPoly>> = images
            .iter()
            .map(|p| vec![WeightedPoly::one(&target), p.clone()])
            .collect();
        let mut out = WeightedPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = WeightedPoly::constant(&target, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][e as usize];
                if term.is_zero() {
                    break;
                }
            }
            out.add_scaled(&scalar::one(), &term);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `x_j` (0-based).
    pub fn partial(&self, j: usize) -> Result<WeightedPoly, PolyError> {
        if j >= self.space.len() {
            return Err(PolyError::IndexOutOfRange { index: j, len: self.space.len() });
        }
        let mut out = WeightedPoly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[j] -= 1;
            out.add_term(Monomial(exps), c * scalar::int(e as i64));
        }
        Ok(out)
    }

    /// Maximum weighted degree over the monomials; `None` stands for the zero polynomial (−∞).
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(self.space.weights()))
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(self.space.weights()));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into weighted-homogeneous components keyed by weighted degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, WeightedPoly> {
        let mut out: BTreeMap<u32, WeightedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.weighted_degree(self.space.weights());
            out.entry(d)
                .or_insert_with(|| WeightedPoly::zero(&self.space))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.space.len(), "evaluation point dimension");
        let mut acc = scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Reinterprets the polynomial in an equal-length space (same exponent vectors).
    pub fn reinterpret(&self, space: &Arc<VarSpace>) -> WeightedPoly {
        assert_eq!(space.len(), self.space.len(), "variable count");
        WeightedPoly { space: space.clone(), terms: self.terms.clone() }
    }

    /// Parses the canonical text form (`+ - * · / ^`, parentheses, integer literals,
    /// variable names from `space`). Division is only allowed by constants.
    pub fn parse(text: &str, space: &Arc<VarSpace>) -> Result<WeightedPoly, PolyError> {
        let mut parser = Parser { chars: text.chars().collect(), pos: 0, space };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = scalar::is_negative(c);
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(scalar::format_rational(&abs));
            }
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.space.name(j).to_string()),
                    _ => factors.push(format!("{}^{}", self.space.name(j), e)),
                }
            }
            write!(f, "{}", factors.join("·"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&WeightedPoly> for &WeightedPoly {
            type Output = WeightedPoly;
            fn $method(self, rhs: &WeightedPoly) -> WeightedPoly {
                self.$checked(rhs).expect("polynomials live in different variable spaces")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Mul, mul, checked_mul);

impl std::ops::Sub<&WeightedPoly> for &WeightedPoly {
    type Output = WeightedPoly;
    fn sub(self, rhs: &WeightedPoly) -> WeightedPoly {
        let mut out = self.clone();
        out.add_scaled(&-scalar::one(), rhs);
        out
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for WeightedPoly {
            type Output = WeightedPoly;
            fn $method(self, rhs: WeightedPoly) -> WeightedPoly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl std::ops::Neg for &WeightedPoly {
    type Output = WeightedPoly;
    fn neg(self) -> WeightedPoly {
        self.scale(&-scalar::one())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    space: &'a Arc<VarSpace>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<WeightedPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeightedPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.error("division only by a nonzero constant"));
                    }
                    acc = acc.scale(&(scalar::one() / f.constant_term()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<WeightedPoly, PolyError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<WeightedPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WeightedPoly, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let r = scalar::parse_rational(&s).ok_or_else(|| self.error("bad number"))?;
                Ok(WeightedPoly::constant(self.space, r))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.space.index_of(&name) {
                    Some(j) => Ok(WeightedPoly::var(self.space, j)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
