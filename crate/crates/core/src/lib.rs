//! Exact computations on Carnot groups.
//!
//! Everything is over the rationals: stratified Lie algebras and their group law in
//! exponential coordinates, the left-invariant exterior algebra with its Hodge machinery,
//! polynomial-coefficient forms and the weight splitting of `d`, the spectral modules
//! `Z_r`/`B_r` with their differentials, Rumin's `d_c`, Pansu derivatives and pullbacks,
//! and one-dimensional central extensions.

pub mod derham;
pub mod extensions;
pub mod fiber;
pub mod groups;
pub mod lie;
pub mod linalg;
pub mod operators;
pub mod pansu;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod spectral;

pub use fiber::{Covector, FiberForm, Form};
pub use lie::{AlgebraSpec, Bracket, StratifiedAlgebra};
pub use poly::{Monomial, PolyError, VarSpace, WeightedPoly};
pub use ring::Coefficient;
pub use scalar::Rational;
