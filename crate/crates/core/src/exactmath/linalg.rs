// SPDX-License-Identifier: Apache-2.0

//! Exact linear algebra over ordered fields (Q and Q(√d)): congruence
//! diagonalization for inertia, rank, and solving c·B = v.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::quad::{QuadScalar, Rational};
use crate::error::{Error, Result};

/// An exact ordered field element.
pub trait ExactField: Clone {
    fn is_zero_value(&self) -> bool;
    fn sign(&self) -> Ordering;
}

impl ExactField for Rational {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }
}

impl ExactField for QuadScalar {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> Ordering {
        QuadScalar::sign(self)
    }
}

/// Inertia (n₊, n₋, n₀) of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymDiagResult {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl SymDiagResult {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        SymDiagResult { n_plus, n_minus, n_zero }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_minus == 0 && self.n_zero == 0
    }

    pub fn is_definite(&self) -> bool {
        self.n_zero == 0 && (self.n_plus == 0 || self.n_minus == 0)
    }
}

impl std::fmt::Display for SymDiagResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_minus, self.n_zero)
    }
}

fn swap_sym<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Congruence diagonalization of a symmetric matrix. The caller guarantees
/// symmetry.
pub fn signature_of<T>(mut a: Vec<Vec<T>>) -> SymDiagResult
where
    T: ExactField,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    let n = a.len();
    let mut res = SymDiagResult::new(0, 0, 0);
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero_value()) {
            swap_sym(&mut a, k, i);
        } else {
            let hit = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero_value());
            let Some((i, j)) = hit else {
                res.n_zero += n - k;
                break;
            };
            // both diagonals vanish: e_i ← e_i + e_j makes the pivot 2·a_ij
            for r in 0..n {
                let v = &a[r][i] + &a[r][j];
                a[r][i] = v;
            }
            for c in 0..n {
                let v = &a[i][c] + &a[j][c];
                a[i][c] = v;
            }
            swap_sym(&mut a, k, i);
        }
        let p = a[k][k].clone();
        match p.sign() {
            Ordering::Greater => res.n_plus += 1,
            Ordering::Less => res.n_minus += 1,
            Ordering::Equal => unreachable!("pivot chosen nonzero"),
        }
        for i in k + 1..n {
            if a[i][k].is_zero_value() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k + 1..n {
                if a[k][j].is_zero_value() {
                    continue;
                }
                let v = &a[i][j] - &(&f * &a[k][j]);
                a[i][j] = v;
            }
        }
        k += 1;
    }
    res
}

/// Exact inertia of a symmetric integer matrix.
pub fn sym_signature(g: &IntMatrix) -> Result<SymDiagResult> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let rows: Vec<Vec<Rational>> = (0..g.rows())
        .map(|i| g.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    Ok(signature_of(rows))
}

/// Inertia of a symmetric matrix over Q(√d).
pub fn quad_signature(g: &[Vec<QuadScalar>]) -> Result<SymDiagResult> {
    let n = g.len();
    for i in 0..n {
        if g[i].len() != n {
            return Err(Error::Dimension("non-square matrix".into()));
        }
        for j in 0..i {
            if g[i][j] != g[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(signature_of(g.to_vec()))
}

/// Reduced row echelon form; returns (rref rows, pivot columns).
fn rref<T>(mut rows: Vec<Vec<T>>) -> (Vec<Vec<T>>, Vec<usize>)
where
    T: ExactField,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    let nc = rows.first().map_or(0, Vec::len);
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_value()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        rows[r] = rows[r].iter().map(|x| x / &piv).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero_value() {
                continue;
            }
            let f = rows[i][c].clone();
            let pr = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(pr.iter()) {
                *x = &*x - &(&f * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

pub fn rank_of<T>(rows: Vec<Vec<T>>) -> usize
where
    T: ExactField,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    rref(rows).1.len()
}

/// Solve c·B = v for c, where B has independent rows. None if v ∉ span.
pub fn solve_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    if k == 0 {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let n = v.len();
    // Columns of the system Bᵀ c = vᵀ, augmented.
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rational> = basis.iter().map(|b| b[j].clone()).collect();
            r.push(v[j].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = red[r][k].clone();
    }
    Some(c)
}

pub fn int_rows_to_rational(m: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Scale a rational vector to a primitive integer vector (zero stays zero).
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = super::normal_form::vec_gcd(&ints);
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
