//! The coefficient rings forms and algebra elements are built over.

use std::fmt::Debug;

use num_traits::Zero;

use crate::poly::WeightedPoly;
use crate::scalar::Rational;

/// A commutative ring containing the rationals. Zero is produced from an existing element
/// because polynomial zeros need to know their variable space.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn vanishes(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        *self = self.plus(&other.scale(c));
    }

    fn negated(&self) -> Self {
        self.scale(&-crate::scalar::one())
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}

impl Coefficient for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        *self += c * other;
    }
}

impl Coefficient for WeightedPoly {
    fn vanishes(&self) -> bool {
        WeightedPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        WeightedPoly::zero(self.space())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        WeightedPoly::scale(self, c)
    }
    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        WeightedPoly::add_scaled(self, c, other);
    }
}
