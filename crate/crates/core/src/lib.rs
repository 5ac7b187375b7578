//! Enumeration and classification of hypersurface generalized triangle
//! singularities.
//!
//! For a signature `(p_1, ..., p_n)` with `sum 1/p_i < 1` the library builds
//! the canonical ring `R` of the Fermat-type ring `C[X_1..X_n]/(sum X_i^p_i)`
//! graded by the dualizing class, decides whether `R` is a hypersurface,
//! and certifies the answer with exact Hilbert-series identities and an
//! independent brute-force generator count.
//!
//! Polynomial and linear-algebra code is generic over the scalar type
//! ([`scalar::Coeff`], [`scalar::Field`]); the aliases below fix the
//! concrete instantiations used by the classifier.

pub mod classifier;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod grading;
pub mod hilbert;
pub mod isolated;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod scalar;

pub use classifier::{classify, Classification, HypersurfacePresentation, Verdict};
pub use enumeration::{enumerate_candidates, znam_divisibility, CandidateSet};
pub use error::{Error, Result};
pub use grading::{LClass, Monomial, Signature};
pub use isolated::{isolatedness, IsolatednessReport};

/// Machine integer for signature arithmetic. Every operation that can
/// overflow is checked.
pub type Int = i128;

/// Exact rationals for rank computations.
pub type Rational = num_rational::BigRational;

/// Univariate series polynomials with checked 128-bit coefficients.
pub type IntPoly = poly::DensePoly<Int>;

/// Univariate polynomials with arbitrary-precision coefficients.
pub type BigPoly = poly::DensePoly<num_bigint::BigInt>;

/// Polynomials in generator symbols, such as defining relations.
pub type SymbolPoly = poly::SparsePoly<Int>;
