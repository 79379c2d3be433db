// SPDX-License-Identifier: Apache-2.0

//! The Mukai lattice H*(K3, Z) and cohomology classes with coefficients in
//! Q(√d) + i·Q(√d).
//!
//! Ambient coordinates (24): index 0 is the degree-0 unit, index 1 the
//! degree-4 unit, indices 2..24 the degree-2 basis U₁, U₂, U₃, E8(−1),
//! E8(−1). Degree-2 coordinates alone (22) use the same order shifted by 2.

mod class;
mod lpsi;

use std::sync::Arc;

use crate::exactmath::{QuadComplex, QuadScalar, Rational};
use crate::lattice::IntegralLattice;

pub use class::{
    bfield_transform, check_gcy, mukai_pairing, period_plane, BField, CohClass, GcyClass, GcyType, GenericClass,
    PeriodPlane,
};
pub use lpsi::{l_psi, l_psi_batch, rational_span_lattice};

pub const MUKAI_RANK: usize = 24;
pub const H2_RANK: usize = 22;
pub const DEG0: usize = 0;
pub const DEG4: usize = 1;
/// Ambient index of degree-2 coordinate 0.
pub const H2_OFFSET: usize = 2;

/// Degree-2 indices of the hyperbolic-plane basis vectors.
pub const E1: usize = 0;
pub const F1: usize = 1;
pub const E2: usize = 2;
pub const F2: usize = 3;
pub const E3: usize = 4;
pub const F3: usize = 5;
/// Degree-2 index of the first vector of each E8(−1) block.
pub const E8A: usize = 6;
pub const E8B: usize = 14;

const K3_TERMS: usize = 3 + 2 * (8 + 7);

/// Upper-triangular nonzero entries (i ≤ j) of the K3 Gram matrix.
const fn k3_terms() -> [(usize, usize, i64); K3_TERMS] {
    let mut out = [(0usize, 0usize, 0i64); K3_TERMS];
    let mut k = 0;
    let mut u = 0;
    while u < 3 {
        out[k] = (2 * u, 2 * u + 1, 1);
        k += 1;
        u += 1;
    }
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut blk = 0;
    while blk < 2 {
        let o = if blk == 0 { E8A } else { E8B };
        let mut i = 0;
        while i < 8 {
            out[k] = (o + i, o + i, -2);
            k += 1;
            i += 1;
        }
        let mut e = 0;
        while e < 7 {
            out[k] = (o + edges[e].0, o + edges[e].1, 1);
            k += 1;
            e += 1;
        }
        blk += 1;
    }
    out
}

const K3_FORM: [(usize, usize, i64); K3_TERMS] = k3_terms();

pub fn mukai_lattice() -> Arc<IntegralLattice> {
    Arc::new(IntegralLattice::mukai())
}

pub fn k3_lattice() -> Arc<IntegralLattice> {
    Arc::new(IntegralLattice::k3())
}

/// ⟨x, y⟩ on degree 2, x and y given by 22 coordinates.
pub fn h2_pair_real(x: &[QuadScalar], y: &[QuadScalar]) -> QuadScalar {
    let mut acc = QuadScalar::zero();
    for &(i, j, g) in K3_FORM.iter() {
        let t = if i == j { &x[i] * &y[i] } else { &(&x[i] * &y[j]) + &(&x[j] * &y[i]) };
        if !t.is_zero() {
            acc = &acc + &t.scale(&Rational::from_integer(g.into()));
        }
    }
    acc
}

/// Mukai pairing of two real vectors in ambient coordinates.
pub fn mukai_pair_real(x: &[QuadScalar], y: &[QuadScalar]) -> QuadScalar {
    let h2 = h2_pair_real(&x[H2_OFFSET..], &y[H2_OFFSET..]);
    &(&h2 - &(&x[DEG0] * &y[DEG4])) - &(&x[DEG4] * &y[DEG0])
}

pub fn mukai_pair_rational(x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = -(&x[DEG0] * &y[DEG4]) - &x[DEG4] * &y[DEG0];
    let (xs, ys) = (&x[H2_OFFSET..], &y[H2_OFFSET..]);
    for &(i, j, g) in K3_FORM.iter() {
        let t = if i == j { &xs[i] * &ys[i] } else { &xs[i] * &ys[j] + &xs[j] * &ys[i] };
        acc += t * Rational::from_integer(g.into());
    }
    acc
}

fn h2_pair_complex(x: &[QuadComplex], y: &[QuadComplex]) -> QuadComplex {
    let mut acc = QuadComplex::zero();
    for &(i, j, g) in K3_FORM.iter() {
        let t = if i == j { &x[i] * &y[i] } else { &(&x[i] * &y[j]) + &(&x[j] * &y[i]) };
        if !t.is_zero() {
            acc = &acc + &t.scale(&QuadScalar::from_int(g)).expect("rational scale");
        }
    }
    acc
}

/// A degree-2 integer vector from (index, coefficient) pairs.
pub fn h2_vector(entries: &[(usize, i64)]) -> Vec<QuadScalar> {
    let mut v = vec![QuadScalar::zero(); H2_RANK];
    for &(i, c) in entries {
        v[i] = &v[i] + &QuadScalar::from_int(c);
    }
    v
}

/// Embeds degree-2 coordinates into the ambient with zero degree 0 and 4.
pub fn embed_h2<T: Clone>(zero: T, v: &[T]) -> Vec<T> {
    let mut out = vec![zero.clone(), zero];
    out.extend_from_slice(v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::SymDiagResult;
    use num_bigint::BigInt;
    use num_traits::{One, Signed};

    #[test]
    fn sparse_form_matches_gram() {
        let k3 = IntegralLattice::k3();
        for i in 0..H2_RANK {
            for j in 0..H2_RANK {
                let mut x = vec![QuadScalar::zero(); H2_RANK];
                let mut y = vec![QuadScalar::zero(); H2_RANK];
                x[i] = QuadScalar::one();
                y[j] = QuadScalar::one();
                assert_eq!(h2_pair_real(&x, &y), QuadScalar::from_bigint(k3.gram().get(i, j).clone()));
            }
        }
    }

    #[test]
    fn ambient_invariants() {
        let m = mukai_lattice();
        assert_eq!(m.rank(), MUKAI_RANK);
        assert_eq!(m.signature(), SymDiagResult::new(4, 20, 0));
        assert!(m.is_even());
        assert!(m.det().abs().is_one());
        assert_eq!(m.gram().get(DEG0, DEG4), &BigInt::from(-1));
    }
}
