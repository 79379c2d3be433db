// SPDX-License-Identifier: Apache-2.0

//! Splitting off a hyperbolic plane: L = U ⊕ N. The isotropic vector is found
//! by bounded enumeration in the given basis, in order of increasing L1
//! weight.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exactmath::{bezout_vector, int_kernel, IntMatrix};
use crate::par::{map_slice, Execution};

/// Search bounds: every coordinate in [−radius, radius], L1 weight at most
/// `max_weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSearch {
    pub radius: u32,
    pub max_weight: u32,
}

impl SplitSearch {
    pub fn with_radius(radius: u32) -> Self {
        SplitSearch { radius, max_weight: 2 * radius }
    }
}

impl Default for SplitSearch {
    fn default() -> Self {
        Self::with_radius(3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicSplit {
    pub e: Vec<BigInt>,
    pub f: Vec<BigInt>,
    /// Basis of N = span{e, f}^⊥, ambient coordinates.
    pub complement_basis: IntMatrix,
    pub complement: IntegralLattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoSplitReason {
    Definite,
    NotWithinBounds { radius: u32, max_weight: u32 },
}

impl NoSplitReason {
    pub fn code(&self) -> &'static str {
        match self {
            NoSplitReason::Definite => "definite",
            NoSplitReason::NotWithinBounds { .. } => "not_within_bounds",
        }
    }
}

impl fmt::Display for NoSplitReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoSplitReason::Definite => write!(f, "definite lattice has no nonzero isotropic vector"),
            NoSplitReason::NotWithinBounds { radius, max_weight } => write!(
                f,
                "no primitive isotropic vector of divisibility 1 with coordinates in [-{radius},{radius}] and weight <= {max_weight}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(HyperbolicSplit),
    NoneFound(NoSplitReason),
}

/// Gram with small entries for the hot loop.
struct SmallGram {
    n: usize,
    g: Vec<i64>,
}

impl SmallGram {
    fn new(l: &IntegralLattice) -> Result<Self> {
        let n = l.rank();
        let g = l.gram().entries().iter().map(|x| x.to_i64().ok_or(Error::SearchOverflow)).collect::<Result<_>>()?;
        Ok(SmallGram { n, g })
    }

    /// Gram·e as i128, None on overflow.
    fn apply(&self, e: &[i64]) -> Vec<i128> {
        let mut out = vec![0i128; self.n];
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            let row = &self.g[i * self.n..(i + 1) * self.n];
            for (o, &gij) in out.iter_mut().zip(row) {
                *o += ei as i128 * gij as i128;
            }
        }
        out
    }

    fn accepts(&self, e: &[i64]) -> bool {
        let ge = self.apply(e);
        let norm: i128 = ge.iter().zip(e).map(|(a, &b)| a * b as i128).sum();
        if norm != 0 {
            return false;
        }
        ge.iter().fold(0i128, |g, &x| g.gcd(&x)) == 1
    }
}

/// Depth-first walk in lexicographic order over coordinates `pos..n` using
/// exactly `rem` weight; returns the first accepted vector.
fn first_in_order(sg: &SmallGram, e: &mut Vec<i64>, pos: usize, rem: i64, r: i64) -> bool {
    let n = sg.n;
    if pos == n {
        return rem == 0 && sg.accepts(e);
    }
    let slots = (n - pos) as i64;
    if rem > slots * r {
        return false;
    }
    let hi = rem.min(r);
    for v in -hi..=hi {
        e[pos] = v;
        if first_in_order(sg, e, pos + 1, rem - v.abs(), r) {
            return true;
        }
    }
    e[pos] = 0;
    false
}

/// Primitive isotropic e with ⟨e, L⟩ = Z, smallest weight first; ties broken
/// by the lexicographically smallest coordinate vector.
fn find_isotropic(sg: &SmallGram, search: &SplitSearch, exec: Execution) -> Option<Vec<i64>> {
    let n = sg.n;
    let r = search.radius as i64;
    for w in 1..=search.max_weight as i64 {
        // one task per (leading index, leading value)
        let tasks: Vec<(usize, i64)> =
            (0..n).flat_map(|i| (1..=r.min(w)).map(move |v| (i, v))).collect();
        let found = map_slice(exec, &tasks, |&(i, v)| {
            let mut e = vec![0i64; n];
            e[i] = v;
            first_in_order(sg, &mut e, i + 1, w - v, r).then_some(e)
        });
        if let Some(best) = found.into_iter().flatten().min() {
            return Some(best);
        }
    }
    None
}

pub fn find_hyperbolic_split(l: &IntegralLattice, search: &SplitSearch, exec: Execution) -> Result<SplitOutcome> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let sig = l.signature();
    if sig.n_zero == 0 && (sig.n_plus == 0 || sig.n_minus == 0) {
        return Ok(SplitOutcome::NoneFound(NoSplitReason::Definite));
    }
    let sg = SmallGram::new(l)?;
    let Some(e) = find_isotropic(&sg, search, exec) else {
        return Ok(SplitOutcome::NoneFound(NoSplitReason::NotWithinBounds {
            radius: search.radius,
            max_weight: search.max_weight,
        }));
    };
    let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
    let ge = l.gram().left_apply(&e);
    let (g, f0) = bezout_vector(&ge);
    debug_assert!(g.is_one());
    let half = l.pair(&f0, &f0) / 2;
    let f: Vec<BigInt> = f0.iter().zip(&e).map(|(x, y)| x - &half * y).collect();
    let ef = IntMatrix::from_rows(vec![e.clone(), f.clone()], l.rank())?;
    let complement_basis = if l.rank() == 2 {
        IntMatrix::zeros(0, 2)
    } else {
        int_kernel(&l.gram().mul(&ef.transpose()))
    };
    let complement = IntegralLattice::new(complement_basis.mul(l.gram()).mul(&complement_basis.transpose()))?;
    debug_assert!(l.pair(&f, &f).is_zero());
    Ok(SplitOutcome::Split(HyperbolicSplit { e, f, complement_basis, complement }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{invariants_match, LatticeComparison};

    fn expect_split(l: &IntegralLattice) -> HyperbolicSplit {
        match find_hyperbolic_split(l, &SplitSearch::default(), Execution::default()).unwrap() {
            SplitOutcome::Split(s) => {
                assert!(l.pair(&s.e, &s.e).is_zero());
                assert!(l.pair(&s.f, &s.f).is_zero());
                assert!(l.pair(&s.e, &s.f).is_one());
                let rebuilt = IntegralLattice::direct_sum(&[&IntegralLattice::hyperbolic_plane(), &s.complement]);
                assert!(invariants_match(&rebuilt, l).is_match());
                s
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn u_splits_with_empty_complement() {
        let s = expect_split(&IntegralLattice::hyperbolic_plane());
        assert_eq!(s.complement.rank(), 0);
    }

    #[test]
    fn definite_is_refused() {
        let l = IntegralLattice::diagonal(&[BigInt::from(4), BigInt::from(4)]);
        assert_eq!(
            find_hyperbolic_split(&l, &SplitSearch::default(), Execution::Sequential).unwrap(),
            SplitOutcome::NoneFound(NoSplitReason::Definite)
        );
        let odd = IntegralLattice::diagonal(&[BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(find_hyperbolic_split(&odd, &SplitSearch::default(), Execution::Sequential), Err(Error::OddLattice));
    }

    #[test]
    fn anisotropic_indefinite_exhausts() {
        // 2x² − 6y² has no rational zero
        let l = IntegralLattice::diagonal(&[BigInt::from(2), BigInt::from(-6)]);
        assert!(matches!(
            find_hyperbolic_split(&l, &SplitSearch::default(), Execution::Sequential).unwrap(),
            SplitOutcome::NoneFound(NoSplitReason::NotWithinBounds { .. })
        ));
    }

    #[test]
    fn minus_two_plus_u2_e8() {
        let u = IntegralLattice::hyperbolic_plane();
        let e8 = IntegralLattice::e8_minus();
        let m2 = IntegralLattice::diagonal(&[BigInt::from(-2)]);
        let l = IntegralLattice::direct_sum(&[&m2, &u, &u, &e8, &e8]);
        let s = expect_split(&l);
        let expected = IntegralLattice::direct_sum(&[&m2, &u, &e8, &e8]);
        assert_eq!(invariants_match(&s.complement, &expected), LatticeComparison::GenusInvariantsMatch);
    }

    #[test]
    fn hidden_plane() {
        // [[2,1],[1,0]] ≅ U but no basis vector is isotropic with partner visible
        let l = IntegralLattice::new(IntMatrix::from_i64(2, 2, &[2, 1, 1, 0])).unwrap();
        let s = expect_split(&l);
        assert_eq!(s.e, vec![BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = IntMatrix::from_i64(4, 4, &[2, 1, 0, 0, 1, -4, 1, 0, 0, 1, 2, 3, 0, 0, 3, -2]);
        let l = IntegralLattice::new(g).unwrap();
        let a = find_hyperbolic_split(&l, &SplitSearch::default(), Execution::Sequential).unwrap();
        let b = find_hyperbolic_split(&l, &SplitSearch::default(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
