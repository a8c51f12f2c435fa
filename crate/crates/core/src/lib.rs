//! Exact algebra for the symmetric open subscheme of the Hilbert scheme of
//! `d + 1` points in affine `d`-space.
//!
//! The crate is organised bottom-up:
//!
//! * [`partition`]: partitions, semistandard tableaux, Littlewood–Richardson
//!   coefficients and the Weyl dimension formula.
//! * [`symfun`]: symmetric polynomials in the monomial basis, Schur
//!   expansions and symmetric-power plethysm.
//! * [`poly`] / [`system`] / [`linalg`]: exact multivariate polynomials over
//!   structured variables, quadric systems and span ranks (exact or modular).
//! * [`projector`]: ideal projectors and the commutator generators
//!   `C(a; j, (i, k))`.
//! * [`elimination`]: the two variable eliminations down to a homogeneous
//!   quadric system in the off-diagonal `q` variables.
//! * [`hilbert`]: graded Hilbert functions of quadric quotient rings.
//! * [`bounds`]: plethysm-based lower bounds on those Hilbert functions.
//! * [`reducibility`]: explicit families of non-radical ideals and the
//!   dimension counts they give.
//!
//! All arithmetic is exact. The generic pieces ([`poly::MPoly`],
//! [`projector::ProjectorSpec`], [`linalg::Echelon`]) are parameterised over a
//! coefficient [`scalar::Ring`] or [`scalar::Field`]; the aliases below fix the
//! concrete types the rest of the crate works with.

pub mod bounds;
pub mod elimination;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod projector;
pub mod reducibility;
pub mod scalar;
pub mod symfun;
pub mod system;

pub use error::{Error, Result};
pub use partition::{Partition, SchurExpansion};
pub use poly::{MPoly, Monomial, VarId};
pub use system::QuadricSystem;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational; the coefficient field of every polynomial here.
pub type Rational = num_rational::BigRational;
/// Polynomial with exact rational coefficients.
pub type RatPoly = poly::MPoly<Rational>;
/// Ideal projector with numeric (rational) table entries.
pub type NumericProjector = projector::ProjectorSpec<Rational>;
/// Ideal projector whose table entries are polynomials in the `p` variables.
pub type SymbolicProjector = projector::ProjectorSpec<RatPoly>;
