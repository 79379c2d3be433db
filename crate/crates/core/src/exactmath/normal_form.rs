// SPDX-License-Identifier: Apache-2.0

//! Hermite and Smith normal forms and the lattice algorithms built on them.
//! Vectors are rows throughout: a lattice is the integer row space of a
//! basis matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

type Rows = Vec<Vec<BigInt>>;

fn sub_multiple(rows: &mut Rows, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(rows: &mut Rows, i: usize) {
    for x in rows[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn to_matrix(rows: Rows, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(rows, cols).expect("rectangular rows")
}

/// Row-style Hermite normal form: returns (h, u) with h = u·m, u unimodular,
/// h in echelon form with positive pivots and the entries above each pivot
/// reduced into [0, pivot). Zero rows sit at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (nr, nc) = (m.rows(), m.cols());
    let mut h = m.row_vecs();
    let mut u = IntMatrix::identity(nr).row_vecs();
    let mut p = 0;
    for c in 0..nc {
        if p == nr {
            break;
        }
        let mut found = false;
        loop {
            let best = (p..nr)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(best) = best else { break };
            found = true;
            h.swap(p, best);
            u.swap(p, best);
            let mut clean = true;
            for i in p + 1..nr {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[p][c]);
                sub_multiple(&mut h, i, p, &q);
                sub_multiple(&mut u, i, p, &q);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[p][c].is_negative() {
            negate_row(&mut h, p);
            negate_row(&mut u, p);
        }
        for i in 0..p {
            let q = h[i][c].div_floor(&h[p][c]);
            sub_multiple(&mut h, i, p, &q);
            sub_multiple(&mut u, i, p, &q);
        }
        p += 1;
    }
    (to_matrix(h, nc), to_matrix(u, nr))
}

/// Nonzero rows of the HNF: the canonical basis of the row lattice.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(m);
    let keep: Rows = h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    to_matrix(keep, m.cols())
}

/// Rank over Q.
pub fn rank(m: &IntMatrix) -> usize {
    hnf_basis(m).rows()
}

/// Elementary divisors d₁ | d₂ | … of m; length min(rows, cols), with zeros
/// for the rank deficit.
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let (nr, nc) = (m.rows(), m.cols());
    let n = nr.min(nc);
    let mut a = m.row_vecs();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(n, BigInt::zero());
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_multiple(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = a[t][t].clone();
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Basis of the saturated integer kernel {x : x·m = 0}, HNF-normalized.
pub fn int_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let r = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let ker: Rows = (r..m.rows()).map(|i| u.row(i).to_vec()).collect();
    if ker.is_empty() {
        return IntMatrix::zeros(0, m.rows());
    }
    hnf_basis(&to_matrix(ker, m.rows()))
}

/// HNF basis of (Q-span of the rows) ∩ Zⁿ. Rows must be independent.
pub fn saturate(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.cols();
    if rank(m) < m.rows() {
        return Err(Error::DependentBasis);
    }
    if m.rows() == 0 {
        return Ok(IntMatrix::zeros(0, n));
    }
    // Work on the columns that actually occur; saturation does not see the rest.
    let support: Vec<usize> = (0..n).filter(|&j| (0..m.rows()).any(|i| !m.get(i, j).is_zero())).collect();
    let sub: Rows = (0..m.rows()).map(|i| support.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
    let sub = to_matrix(sub, support.len());
    let right_kernel = int_kernel(&sub.transpose());
    let sat = int_kernel(&right_kernel.transpose());
    let mut out = IntMatrix::zeros(sat.rows(), n);
    for i in 0..sat.rows() {
        for (k, &j) in support.iter().enumerate() {
            out.set(i, j, sat.get(i, k).clone());
        }
    }
    Ok(hnf_basis(&out))
}

/// Whether v lies in the integer row space of `basis`.
pub fn row_span_contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    let h = hnf_basis(basis);
    let mut v = v.to_vec();
    for i in 0..h.rows() {
        let row = h.row(i);
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero HNF row");
        if v[p].is_zero() {
            continue;
        }
        if !v[p].is_multiple_of(&row[p]) {
            return false;
        }
        let q = &v[p] / &row[p];
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// gcd of a vector of integers (0 for the zero vector).
pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Integer x with w·x = gcd(w), by iterated extended Euclid.
pub fn bezout_vector(w: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut x: Vec<BigInt> = vec![BigInt::zero(); w.len()];
    for (i, wi) in w.iter().enumerate() {
        if wi.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = wi.abs();
            x[i] = if wi.is_negative() { -BigInt::one() } else { BigInt::one() };
            continue;
        }
        let e = g.extended_gcd(wi);
        // e.gcd = e.x * g + e.y * wi
        for xj in x.iter_mut().take(i) {
            *xj *= &e.x;
        }
        x[i] = e.y.clone();
        g = e.gcd;
        if g.is_negative() {
            g = -g;
            for xj in x.iter_mut() {
                *xj = -std::mem::take(xj);
            }
        }
    }
    (g, x)
}
