// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;

/// Reduced binary form [[a,b],[b,c]] with 0 ≤ 2b ≤ a ≤ c.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl ReducedForm {
    pub fn det(&self) -> BigInt {
        &self.a * &self.c - &self.b * &self.b
    }

    pub fn gram(&self) -> IntMatrix {
        IntMatrix::new(2, 2, vec![self.a.clone(), self.b.clone(), self.b.clone(), self.c.clone()])
            .expect("2x2")
    }

    pub fn lattice(&self) -> IntegralLattice {
        IntegralLattice::new(self.gram()).expect("symmetric")
    }

    pub fn is_even(&self) -> bool {
        self.a.is_even() && self.c.is_even()
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.b, self.c)
    }
}

/// A reduced form with the witness `transform` T satisfying Tᵀ·G·T = reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction2 {
    pub form: ReducedForm,
    pub transform: IntMatrix,
}

pub fn gauss_reduce2(l: &IntegralLattice) -> Result<Reduction2> {
    if l.rank() != 2 {
        return Err(Error::NotPositiveDefinite2(format!("rank {}", l.rank())));
    }
    let g = l.gram();
    let (mut a, mut b, mut c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    if !a.is_positive() || !(&a * &c - &b * &b).is_positive() {
        return Err(Error::NotPositiveDefinite2(format!("Gram {g}")));
    }
    // columns of t are the new basis vectors
    let mut t = [[BigInt::from(1), BigInt::zero()], [BigInt::zero(), BigInt::from(1)]];
    loop {
        let two_a: BigInt = &a * 2;
        let num: BigInt = &b * 2 + &a;
        let q = num.div_floor(&two_a);
        if !q.is_zero() {
            c = &c - &q * &b * 2 + &q * &q * &a;
            b = &b - &q * &a;
            for row in t.iter_mut() {
                row[1] = &row[1] - &q * &row[0];
            }
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            for row in t.iter_mut() {
                row.swap(0, 1);
            }
        } else {
            break;
        }
    }
    if b.is_negative() {
        b = -b;
        for row in t.iter_mut() {
            row[1] = -row[1].clone();
        }
    }
    let [[t00, t01], [t10, t11]] = t;
    Ok(Reduction2 { form: ReducedForm { a, b, c }, transform: IntMatrix::new(2, 2, vec![t00, t01, t10, t11])? })
}

/// All even reduced positive definite forms with determinant in 1..=max_det,
/// in (a, b, c) order.
pub fn enumerate_even_reduced_forms(max_det: u64) -> Vec<ReducedForm> {
    let max_det = BigInt::from(max_det);
    let mut out = Vec::new();
    // 3a²/4 ≤ ac − b² ≤ max_det
    let mut a = BigInt::from(2);
    while &a * &a * 3 <= &max_det * 4 {
        let mut b = BigInt::zero();
        while &b * 2 <= a {
            let mut c = a.clone();
            loop {
                let det = &a * &c - &b * &b;
                if det > max_det {
                    break;
                }
                out.push(ReducedForm { a: a.clone(), b: b.clone(), c: c.clone() });
                c += 2;
            }
            b += 1;
        }
        a += 2;
    }
    out.sort();
    out
}
