// SPDX-License-Identifier: Apache-2.0

//! Exact scalars over Q and Q(√d) and integer-matrix algorithms.

mod linalg;
mod matrix;
mod normal_form;
mod quad;

pub use linalg::{
    clear_denominators, int_rows_to_rational, quad_signature, rank_of, signature_of, solve_in_span,
    sym_signature, ExactField, SymDiagResult,
};
pub use matrix::IntMatrix;
pub use normal_form::{bezout_vector, hnf, hnf_basis, int_kernel, rank, row_span_contains, saturate, snf, vec_gcd};
pub use quad::{format_rational, merge_fields, parse_rational, rational, QuadComplex, QuadScalar, Rational, SqrtD};
