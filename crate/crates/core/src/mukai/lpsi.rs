// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_traits::Zero;

use super::{mukai_lattice, CohClass};
use crate::error::Result;
use crate::exactmath::{clear_denominators, hnf_basis, saturate, IntMatrix, Rational};
use crate::lattice::{IntegralLattice, Sublattice};
use crate::par::{map_slice, Execution};

/// Saturation of the Q-span of rational vectors inside `ambient`.
pub fn rational_span_lattice(ambient: Arc<IntegralLattice>, vectors: &[Vec<Rational>]) -> Result<Sublattice> {
    let n = ambient.rank();
    let rows: Vec<_> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).map(|v| clear_denominators(v)).collect();
    if rows.is_empty() {
        return Sublattice::new(ambient, IntMatrix::zeros(0, n));
    }
    let independent = hnf_basis(&IntMatrix::from_rows(rows, n)?);
    Sublattice::new(ambient, saturate(&independent)?)
}

/// The smallest saturated sublattice L of the Mukai lattice with ψ ∈ L ⊗ C:
/// the saturation of the span of the rational components of ψ.
pub fn l_psi(x: &CohClass) -> Sublattice {
    rational_span_lattice(mukai_lattice(), &x.components()).expect("components have ambient length")
}

pub fn l_psi_batch(xs: &[CohClass], exec: Execution) -> Vec<Sublattice> {
    map_slice(exec, xs, l_psi)
}
