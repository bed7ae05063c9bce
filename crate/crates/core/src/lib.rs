//! Exact q-series laboratory.
//!
//! Truncated power series over a pluggable coefficient ring, partition
//! statistics, generating functions for mock theta functions and unimodal
//! sequences, exact evaluation at roots of unity, and an identity-checking
//! harness.
//!
//! The kernel is generic over [`algebra::Ring`]; the aliases below fix the
//! rings used in practice.

pub mod algebra;
pub mod error;
pub mod partitions;
pub mod roots;
pub mod series;
pub mod verify;

pub use algebra::{BigComplex, BigFloat, CycloElem, LaurentPoly, Rational, Ring, TruncatedSeries};
pub use error::{AlgebraError, PartitionError, RootsError, SeriesError, VerifyError};

/// Series with rational coefficients (no `z`).
pub type QSeries = TruncatedSeries<Rational>;
/// Series with Laurent-polynomial coefficients in the formal variable `z`.
pub type ZSeries = TruncatedSeries<LaurentPoly>;
/// Series over a cyclotomic field.
pub type CycloSeries = TruncatedSeries<CycloElem>;
/// Series with arbitrary-precision complex coefficients.
pub type ComplexSeries = TruncatedSeries<BigComplex>;
/// Series with double-precision coefficients.
pub type F64Series = TruncatedSeries<f64>;
