// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Messages name the violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: sqrt({0}) and sqrt({1}) cannot be mixed")]
    FieldMismatch(u64, u64),
    #[error("{0} is not squarefree (field tag must be a squarefree integer >= 2)")]
    NotSquarefree(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("dependent basis: rows are not linearly independent")]
    DependentBasis,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate lattice: {0}")]
    Degenerate(String),
    #[error("rescale factor must be nonzero")]
    ZeroRescale,
    #[error("expected a rank-2 positive definite lattice: {0}")]
    NotPositiveDefinite2(String),
    #[error("odd lattice: the hyperbolic split needs an even Gram matrix")]
    OddLattice,
    #[error("entries too large for the isotropic search (must fit in 64 bits)")]
    SearchOverflow,
    #[error("B-field must be real: imaginary part of coordinate {0} is nonzero")]
    NotReal(usize),
    #[error("B-field must be integral for this operation")]
    NotIntegral,
    #[error("not a generalized CY class: condition {condition} fails (value {value})")]
    NotGcy { condition: &'static str, value: String },
    #[error("degenerate period plane: real and imaginary parts are dependent")]
    DegeneratePlane,
    #[error("period plane is not positive: Gram {0}")]
    PlaneNotPositive(String),
    #[error("invalid generic class: {0}")]
    InvalidGeneric(String),
    #[error("orthogonality fails: {pairing} = {value}")]
    Orthogonality { pairing: &'static str, value: String },
    #[error("norm mismatch: <phiA, conj phiA> = {a} but <phiB, conj phiB> = {b}")]
    NormMismatch { a: String, b: String },
    #[error("positive 4-space is not positive definite (signature {0})")]
    PiNotPositive(String),
    #[error("incompatible supports: {0}")]
    IncompatibleSupports(String),
    #[error("invariant needs explicit {0}")]
    NeedsExplicit(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
