// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exactmath::{
    hnf_basis, int_kernel, int_rows_to_rational, rank, row_span_contains, saturate, snf, solve_in_span, IntMatrix,
    Rational,
};

/// A sublattice given by a basis (rows, in ambient coordinates).
#[derive(Debug, Clone)]
pub struct Sublattice {
    ambient: Arc<IntegralLattice>,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient: Arc<IntegralLattice>, basis: IntMatrix) -> Result<Self> {
        if basis.rows() > 0 && basis.cols() != ambient.rank() {
            return Err(Error::Dimension(format!(
                "basis vectors have {} coordinates, ambient rank is {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        let basis = if basis.rows() == 0 { IntMatrix::zeros(0, ambient.rank()) } else { basis };
        if rank(&basis) != basis.rows() {
            return Err(Error::DependentBasis);
        }
        Ok(Sublattice { ambient, basis })
    }

    pub fn from_rows(ambient: Arc<IntegralLattice>, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = ambient.rank();
        let basis = IntMatrix::from_rows(rows, n)?;
        Self::new(ambient, basis)
    }

    /// Whole ambient lattice.
    pub fn full(ambient: Arc<IntegralLattice>) -> Self {
        let n = ambient.rank();
        Sublattice { ambient, basis: IntMatrix::identity(n) }
    }

    pub fn ambient(&self) -> &Arc<IntegralLattice> {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// basis · G · basisᵀ
    pub fn gram(&self) -> IntMatrix {
        self.basis.mul(self.ambient.gram()).mul(&self.basis.transpose())
    }

    pub fn lattice(&self) -> IntegralLattice {
        IntegralLattice::new(self.gram()).expect("induced Gram is symmetric")
    }

    /// Same lattice with an HNF basis.
    pub fn canonical(&self) -> Sublattice {
        Sublattice { ambient: self.ambient.clone(), basis: hnf_basis(&self.basis) }
    }

    pub fn saturation(&self) -> Sublattice {
        let basis = if self.rank() == 0 {
            self.basis.clone()
        } else {
            saturate(&self.basis).expect("basis rows are independent")
        };
        Sublattice { ambient: self.ambient.clone(), basis }
    }

    /// Index of the basis span inside its saturation.
    pub fn index_in_saturation(&self) -> BigInt {
        if self.rank() == 0 {
            return BigInt::one();
        }
        // product of elementary divisors of the basis matrix
        snf(&self.basis).iter().product()
    }

    pub fn is_primitive(&self) -> bool {
        self.index_in_saturation().is_one()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if self.rank() == 0 {
            return v.iter().all(Zero::is_zero);
        }
        row_span_contains(&self.basis, v)
    }

    /// v in the Q-span of the basis.
    pub fn rational_span_contains(&self, v: &[Rational]) -> bool {
        solve_in_span(&int_rows_to_rational(&self.basis), v).is_some()
    }

    /// Coordinates c with c·basis = v, if v lies in the Q-span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        solve_in_span(&int_rows_to_rational(&self.basis), v)
    }

    /// {x ∈ ambient : ⟨x, v⟩ = 0 for every basis row v}.
    pub fn ortho_complement(&self) -> Result<Sublattice> {
        if !self.ambient.is_nondegenerate() {
            return Err(Error::Degenerate("orthogonal complement needs a nondegenerate ambient".into()));
        }
        let m = self.ambient.gram().mul(&self.basis.transpose());
        let k = if self.rank() == 0 { IntMatrix::identity(self.ambient.rank()) } else { int_kernel(&m) };
        Ok(Sublattice { ambient: self.ambient.clone(), basis: k })
    }

    /// Sum of two sublattices of the same ambient, saturated.
    pub fn saturated_sum(&self, other: &Sublattice) -> Result<Sublattice> {
        let stacked = self.basis.vstack(&other.basis)?;
        let b = hnf_basis(&stacked);
        if b.rows() == 0 {
            return Sublattice::new(self.ambient.clone(), IntMatrix::zeros(0, self.ambient.rank()));
        }
        Ok(Sublattice { ambient: self.ambient.clone(), basis: saturate(&b)? })
    }

    /// Intersection with another sublattice of the same ambient.
    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        let n = self.ambient.rank();
        if self.rank() == 0 || other.rank() == 0 {
            return Sublattice::new(self.ambient.clone(), IntMatrix::zeros(0, n));
        }
        // (a, b) with a·B1 = b·B2: kernel of [B1; -B2]
        let stacked = self.basis.vstack(&other.basis.scale(&BigInt::from(-1)))?;
        let k = int_kernel(&stacked);
        let r1 = self.rank();
        let mut rows = Vec::new();
        for i in 0..k.rows() {
            let a = &k.row(i)[..r1];
            rows.push(self.basis.left_apply(a));
        }
        let m = IntMatrix::from_rows(rows, n)?;
        Sublattice::new(self.ambient.clone(), hnf_basis(&m))
    }

    /// Gram between the bases of two sublattices of one ambient.
    pub fn cross_gram(&self, other: &Sublattice) -> IntMatrix {
        self.basis.mul(self.ambient.gram()).mul(&other.basis.transpose())
    }
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && hnf_basis(&self.basis) == hnf_basis(&other.basis)
    }
}

impl Eq for Sublattice {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::SymDiagResult;
    use crate::lattice::{invariants_match, LatticeComparison};
    use proptest::prelude::*;

    fn u() -> Arc<IntegralLattice> {
        Arc::new(IntegralLattice::hyperbolic_plane())
    }

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn complements_in_u() {
        let e = Sublattice::from_rows(u(), rows(&[&[1, 0]])).unwrap();
        assert_eq!(e.ortho_complement().unwrap(), e);
        let s = Sublattice::from_rows(u(), rows(&[&[1, 1]])).unwrap();
        let c = s.ortho_complement().unwrap();
        assert_eq!(c, Sublattice::from_rows(u(), rows(&[&[1, -1]])).unwrap());
        assert_eq!(c.gram(), IntMatrix::from_i64(1, 1, &[-2]));
    }

    #[test]
    fn primitivity() {
        let k3 = Arc::new(IntegralLattice::k3());
        let mut v = vec![BigInt::zero(); 22];
        v[0] = BigInt::one();
        assert!(Sublattice::from_rows(k3.clone(), vec![v.clone()]).unwrap().is_primitive());
        v[0] = BigInt::from(2);
        let s = Sublattice::from_rows(k3.clone(), vec![v]).unwrap();
        assert!(!s.is_primitive());
        assert_eq!(s.index_in_saturation(), BigInt::from(2));
        assert!(s.saturation().is_primitive());
    }

    #[test]
    fn dependent_rejected() {
        assert_eq!(Sublattice::from_rows(u(), rows(&[&[1, 1], &[2, 2]])).unwrap_err(), Error::DependentBasis);
        let deg = Arc::new(IntegralLattice::diagonal(&[BigInt::from(2), BigInt::zero()]));
        let s = Sublattice::from_rows(deg, rows(&[&[1, 0]])).unwrap();
        assert!(matches!(s.ortho_complement(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn intersections_and_sums() {
        let z3 = Arc::new(IntegralLattice::diagonal(&[BigInt::one(), BigInt::one(), BigInt::one()]));
        let a = Sublattice::from_rows(z3.clone(), rows(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let b = Sublattice::from_rows(z3.clone(), rows(&[&[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Sublattice::from_rows(z3.clone(), rows(&[&[0, 1, 0]])).unwrap());
        assert_eq!(a.saturated_sum(&b).unwrap(), Sublattice::full(z3));
    }

    fn k3_vec(entries: &[(usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 22];
        for &(i, x) in entries {
            v[i] = BigInt::from(x);
        }
        v
    }

    #[test]
    fn complement_of_two_squares_in_k3() {
        // <2n>^2 spanned by e2+n f2, e3+n f3 inside the K3 lattice
        let k3 = Arc::new(IntegralLattice::k3());
        let n = 2;
        let s = Sublattice::from_rows(k3, vec![k3_vec(&[(2, 1), (3, n)]), k3_vec(&[(4, 1), (5, n)])]).unwrap();
        assert_eq!(s.lattice().signature(), SymDiagResult::new(2, 0, 0));
        let c = s.ortho_complement().unwrap();
        assert_eq!(c.rank(), 20);
        assert_eq!(c.lattice().signature(), SymDiagResult::new(1, 19, 0));
        assert_eq!(c.lattice().discriminant().unwrap(), s.lattice().discriminant().unwrap());
        assert_eq!(c.ortho_complement().unwrap(), s);
        let expect = IntegralLattice::direct_sum(&[
            &IntegralLattice::diagonal(&[BigInt::from(-2 * n), BigInt::from(-2 * n)]),
            &IntegralLattice::hyperbolic_plane(),
            &IntegralLattice::e8_minus(),
            &IntegralLattice::e8_minus(),
        ]);
        assert_eq!(invariants_match(&c.lattice(), &expect), LatticeComparison::GenusInvariantsMatch);
    }

    proptest! {
        #[test]
        fn double_complement_and_rank(coef in prop::collection::vec(-3i64..=3, 8)) {
            let k3 = Arc::new(IntegralLattice::k3());
            // two vectors in the first eight coordinates (U^3 and part of E8)
            let v1: Vec<BigInt> = (0..22).map(|i| if i < 4 { BigInt::from(coef[i]) } else { BigInt::zero() }).collect();
            let v2: Vec<BigInt> = (0..22).map(|i| if (2..6).contains(&i) { BigInt::from(coef[i + 2]) } else if i == 8 { BigInt::one() } else { BigInt::zero() }).collect();
            prop_assume!(v1.iter().any(|x| !x.is_zero()));
            let s = Sublattice::from_rows(k3, vec![v1, v2]).unwrap().saturation();
            let c = s.ortho_complement().unwrap();
            if s.lattice().is_nondegenerate() {
                prop_assert_eq!(s.rank() + c.rank(), 22);
                prop_assert_eq!(c.ortho_complement().unwrap(), s.clone());
                prop_assert_eq!(c.lattice().discriminant().unwrap(), s.lattice().discriminant().unwrap());
            }
            prop_assert!(c.is_primitive());
            prop_assert!(c.cross_gram(&s).is_zero());
        }
    }
}
