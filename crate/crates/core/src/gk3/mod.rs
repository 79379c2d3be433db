// SPDX-License-Identifier: Apache-2.0

//! Generalized K3 pairs (φ_A, φ_B), their positive 4-space, and the
//! generalized Néron–Severi and transcendental lattices
//! NS̃ = L_{φ_B}^⊥, T̃ = L_{φ_A}^⊥.
//!
//! T̃ is the complement of L_{φ_A}, not the complement of NS̃.

mod classify;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{hnf_basis, int_kernel, merge_fields, quad_signature, IntMatrix, QuadScalar, SymDiagResult};
use crate::lattice::{LatticeSummary, Sublattice};
use crate::mukai::{bfield_transform, check_gcy, l_psi, mukai_lattice, mukai_pair_real, BField, GcyClass, GcyType, GenericClass};

pub use classify::{classify_hk_pair, HkCase, HkClassification, IdentityCheck};

/// One member of a pair: an explicit validated class or a symbolic generic
/// class with declared L_φ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Explicit(GcyClass),
    Generic(GenericClass),
}

impl Structure {
    pub fn kind(&self) -> GcyType {
        match self {
            Structure::Explicit(c) => c.kind(),
            Structure::Generic(g) => g.kind(),
        }
    }

    /// L_φ: computed for explicit classes, declared for generic ones.
    pub fn l(&self) -> Sublattice {
        match self {
            Structure::Explicit(c) => l_psi(c.class()),
            Structure::Generic(g) => g.support().clone(),
        }
    }

    pub fn as_explicit(&self) -> Option<&GcyClass> {
        match self {
            Structure::Explicit(c) => Some(c),
            Structure::Generic(_) => None,
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Structure::Generic(_))
    }

    /// e^B applied to the structure. Generic supports move by the integral
    /// transform matrix, so B must be integral for them.
    pub fn bfield_transform(&self, b: &BField) -> Result<Structure> {
        match self {
            Structure::Explicit(c) => Ok(Structure::Explicit(check_gcy(&bfield_transform(b, c.class())?)?)),
            Structure::Generic(g) => {
                let m = b.transform_matrix()?;
                let s = Sublattice::new(mukai_lattice(), g.support().basis().mul(&m))?;
                Ok(Structure::Generic(GenericClass::new(s, g.kind())?))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidationStatus {
    Verified,
    FormalGeneric,
}

impl fmt::Display for ValidationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationStatus::Verified => "Verified",
            ValidationStatus::FormalGeneric => "FormalGeneric",
        })
    }
}

/// Re φ_A, Im φ_A, Re φ_B, Im φ_B and their Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSpace {
    pub vectors: [Vec<QuadScalar>; 4],
    pub gram: Vec<Vec<QuadScalar>>,
    pub signature: SymDiagResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedK3 {
    phi_a: Structure,
    phi_b: Structure,
    status: ValidationStatus,
    pi: Option<PiSpace>,
}

const CROSS_NAMES: [[&str; 2]; 2] = [
    ["<Re phiA, Re phiB>", "<Re phiA, Im phiB>"],
    ["<Im phiA, Re phiB>", "<Im phiA, Im phiB>"],
];

fn validate_explicit(a: &GcyClass, b: &GcyClass) -> Result<PiSpace> {
    merge_fields(a.class().field(), b.class().field())?;
    let (pa, pb) = (a.plane(), b.plane());
    let av = [&pa.re, &pa.im];
    let bv = [&pb.re, &pb.im];
    for (i, x) in av.iter().enumerate() {
        for (j, y) in bv.iter().enumerate() {
            let v = mukai_pair_real(x, y);
            if !v.is_zero() {
                return Err(Error::Orthogonality { pairing: CROSS_NAMES[i][j], value: v.to_string() });
            }
        }
    }
    if a.norm() != b.norm() {
        return Err(Error::NormMismatch { a: a.norm().to_string(), b: b.norm().to_string() });
    }
    let vectors = [pa.re, pa.im, pb.re, pb.im];
    let gram: Vec<Vec<QuadScalar>> =
        vectors.iter().map(|x| vectors.iter().map(|y| mukai_pair_real(x, y)).collect()).collect();
    let signature = quad_signature(&gram)?;
    if !signature.is_positive_definite() {
        return Err(Error::PiNotPositive(signature.to_string()));
    }
    Ok(PiSpace { vectors, gram, signature })
}

/// Validates (φ_A, φ_B) as a generalized K3: φ_A is a hyperKähler structure
/// for φ_B. Pairs with a generic member are admitted as FormalGeneric after
/// the support check.
pub fn validate_gk3(phi_a: Structure, phi_b: Structure) -> Result<GeneralizedK3> {
    match (&phi_a, &phi_b) {
        (Structure::Explicit(a), Structure::Explicit(b)) => {
            let pi = validate_explicit(a, b)?;
            Ok(GeneralizedK3 { phi_a, phi_b, status: ValidationStatus::Verified, pi: Some(pi) })
        }
        _ => {
            let joint = phi_a.l().saturated_sum(&phi_b.l())?;
            let sig = joint.lattice().signature();
            if sig.n_plus < 4 {
                return Err(Error::IncompatibleSupports(format!(
                    "joint span of L_phiA and L_phiB has signature {sig}; a positive 4-space needs n_plus = 4"
                )));
            }
            Ok(GeneralizedK3 { phi_a, phi_b, status: ValidationStatus::FormalGeneric, pi: None })
        }
    }
}

impl GeneralizedK3 {
    pub fn phi_a(&self) -> &Structure {
        &self.phi_a
    }

    pub fn phi_b(&self) -> &Structure {
        &self.phi_b
    }

    pub fn status(&self) -> ValidationStatus {
        self.status
    }

    pub fn pi(&self) -> Option<&PiSpace> {
        self.pi.as_ref()
    }

    /// (φ_B, φ_A); the hyperKähler relation is symmetric.
    pub fn swap(&self) -> GeneralizedK3 {
        let pi = self.pi.as_ref().map(|p| {
            let [a, b, c, d] = p.vectors.clone();
            let vectors = [c, d, a, b];
            let perm = [2, 3, 0, 1];
            let gram = perm.iter().map(|&i| perm.iter().map(|&j| p.gram[i][j].clone()).collect()).collect();
            PiSpace { vectors, gram, signature: p.signature }
        });
        GeneralizedK3 { phi_a: self.phi_b.clone(), phi_b: self.phi_a.clone(), status: self.status, pi }
    }

    pub fn bfield_transform(&self, b: &BField) -> Result<GeneralizedK3> {
        validate_gk3(self.phi_a.bfield_transform(b)?, self.phi_b.bfield_transform(b)?)
    }

    pub fn classify(&self) -> Result<HkClassification> {
        match (self.phi_a.as_explicit(), self.phi_b.as_explicit()) {
            (Some(a), Some(b)) => classify_hk_pair(a, b),
            _ => Err(Error::NeedsExplicit("classes for both members")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsT {
    pub ns: Sublattice,
    pub t: Sublattice,
}

pub fn ns_t_tilde(x: &GeneralizedK3) -> NsT {
    let ns = x.phi_b.l().ortho_complement().expect("Mukai lattice is unimodular");
    let t = x.phi_a.l().ortho_complement().expect("Mukai lattice is unimodular");
    NsT { ns, t }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureProfile {
    pub ns: LatticeSummary,
    pub t: LatticeSummary,
    pub intersection: Sublattice,
    pub intersection_summary: LatticeSummary,
    /// n_plus ≤ 2 for both NS̃ and T̃.
    pub positive_index_bounded: bool,
}

pub fn signature_profile(x: &GeneralizedK3) -> SignatureProfile {
    let NsT { ns, t } = ns_t_tilde(x);
    let (la, lb) = (x.phi_a.l(), x.phi_b.l());
    let m = mukai_lattice();
    let stacked = la.basis().vstack(lb.basis()).expect("same ambient");
    let basis = if stacked.rows() == 0 {
        IntMatrix::identity(m.rank())
    } else {
        int_kernel(&m.gram().mul(&hnf_basis(&stacked).transpose()))
    };
    let intersection = Sublattice::new(m, basis).expect("kernel basis is independent");
    let (ns_s, t_s) = (ns.lattice().summary(), t.lattice().summary());
    let positive_index_bounded = ns_s.signature.n_plus <= 2 && t_s.signature.n_plus <= 2;
    let intersection_summary = intersection.lattice().summary();
    SignatureProfile { ns: ns_s, t: t_s, intersection, intersection_summary, positive_index_bounded }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactmath::QuadComplex;
    use crate::mukai::{h2_vector, CohClass, DEG0, DEG4, E1, E2, E3, E8A, F1, F2, F3, H2_OFFSET, MUKAI_RANK};
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    pub(crate) fn sigma(n: i64) -> GcyClass {
        let re = h2_vector(&[(E2, 1), (F2, n)]);
        let im = h2_vector(&[(E3, 1), (F3, n)]);
        check_gcy(&CohClass::from_h2(re.into_iter().zip(im).map(|(a, b)| QuadComplex::new(a, b)).collect()).unwrap())
            .unwrap()
    }

    pub(crate) fn exp_i(n: i64) -> GcyClass {
        check_gcy(&CohClass::exp_i(&h2_vector(&[(E1, 1), (F1, n)])).unwrap()).unwrap()
    }

    pub(crate) fn classical(n: i64) -> GeneralizedK3 {
        validate_gk3(Structure::Explicit(exp_i(n)), Structure::Explicit(sigma(n))).unwrap()
    }

    fn amb(entries: &[(usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); MUKAI_RANK];
        for &(i, c) in entries {
            v[i] += c;
        }
        v
    }

    #[test]
    fn classical_pair_verified() {
        for n in 1..4 {
            let x = classical(n);
            assert_eq!(x.status(), ValidationStatus::Verified);
            let pi = x.pi().unwrap();
            assert_eq!(pi.signature, SymDiagResult::new(4, 0, 0));
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { QuadScalar::from_int(2 * n) } else { QuadScalar::zero() };
                    assert_eq!(pi.gram[i][j], want);
                }
            }
        }
    }

    #[test]
    fn norm_mismatch_and_orthogonality_errors() {
        let s2 = check_gcy(&sigma(1).class().scale(&QuadComplex::from_int(2)).unwrap()).unwrap();
        assert_eq!(
            validate_gk3(Structure::Explicit(exp_i(1)), Structure::Explicit(s2)),
            Err(Error::NormMismatch { a: "4".into(), b: "16".into() })
        );
        // ω = e2+f2 meets Re σ
        let w = check_gcy(&CohClass::exp_i(&h2_vector(&[(E2, 1), (F2, 1)])).unwrap()).unwrap();
        assert!(matches!(
            validate_gk3(Structure::Explicit(w), Structure::Explicit(sigma(1))),
            Err(Error::Orthogonality { pairing: "<Im phiA, Re phiB>", .. })
        ));
    }

    #[test]
    fn lattices_of_classical_pair() {
        let x = classical(1);
        let NsT { ns, t } = ns_t_tilde(&x);
        let s = ns.lattice().summary();
        assert_eq!(s.rank, 22);
        assert_eq!(s.signature, SymDiagResult::new(2, 20, 0));
        assert_eq!(s.discriminant.unwrap().divisors, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(ns.contains(&amb(&[(DEG0, 1)])));
        assert!(ns.contains(&amb(&[(DEG4, 1)])));
        // ω-primitive classes and (1, 0, 1) lie in T̃
        assert!(t.contains(&amb(&[(DEG0, 1), (DEG4, 1)])));
        assert!(t.contains(&amb(&[(H2_OFFSET + E1, 1), (H2_OFFSET + F1, -1)])));
        assert!(t.contains(&amb(&[(H2_OFFSET + E2, 1)])));
        assert!(t.contains(&amb(&[(H2_OFFSET + E8A, 1)])));
        assert!(!t.contains(&amb(&[(H2_OFFSET + E1, 1)])));
        let p = signature_profile(&x);
        assert!(p.positive_index_bounded);
        assert_eq!(p.t.signature, SymDiagResult::new(2, 20, 0));
        assert_eq!(p.intersection.rank(), 20);
        assert!(p.intersection_summary.signature.n_plus == 0);
    }

    #[test]
    fn generic_members() {
        let m = mukai_lattice();
        // generic σ with NS = ⟨H⟩, H = e1+f1: L_σ = H^⊥ ∩ H²
        let h_and_ends = Sublattice::from_rows(
            m.clone(),
            vec![amb(&[(DEG0, 1)]), amb(&[(DEG4, 1)]), amb(&[(H2_OFFSET + E1, 1), (H2_OFFSET + F1, 1)])],
        )
        .unwrap();
        let support = h_and_ends.ortho_complement().unwrap();
        assert_eq!(support.rank(), 21);
        let g = GenericClass::new(support, GcyType::B).unwrap();
        let x = validate_gk3(Structure::Explicit(exp_i(1)), Structure::Generic(g)).unwrap();
        assert_eq!(x.status(), ValidationStatus::FormalGeneric);
        assert_eq!(ns_t_tilde(&x).ns.rank(), 3);
        assert_eq!(x.classify(), Err(Error::NeedsExplicit("classes for both members")));

        // two supports inside degree 2 cannot carry a positive 4-space
        let a = GenericClass::new(l_psi(sigma(1).class()), GcyType::B).unwrap();
        assert!(matches!(
            validate_gk3(Structure::Generic(a), Structure::Explicit(sigma(1))),
            Err(Error::IncompatibleSupports(_))
        ));
    }

    #[test]
    fn swap_duality() {
        let x = classical(2);
        let y = x.swap();
        let (a, b) = (ns_t_tilde(&x), ns_t_tilde(&y));
        assert_eq!(a.ns, b.t);
        assert_eq!(a.t, b.ns);
        assert_eq!(y.swap(), x);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn integral_b_equivariance(b in prop::collection::vec((0usize..22, -2i64..=2), 0..4), n in 1i64..3) {
            let x = classical(n);
            let bf = BField::new(h2_vector(&b)).unwrap();
            let m = bf.transform_matrix().unwrap();
            let y = x.bfield_transform(&bf).unwrap();
            let (nx, ny) = (ns_t_tilde(&x), ns_t_tilde(&y));
            prop_assert_eq!(ny.ns, Sublattice::new(mukai_lattice(), nx.ns.basis().mul(&m)).unwrap());
            prop_assert_eq!(ny.t, Sublattice::new(mukai_lattice(), nx.t.basis().mul(&m)).unwrap());
            let pi = y.pi().unwrap();
            prop_assert!(pi.signature.is_positive_definite());
            // block structure with equal traces
            for i in 0..2 { for j in 2..4 { prop_assert!(pi.gram[i][j].is_zero()); } }
            prop_assert_eq!(&pi.gram[0][0] + &pi.gram[1][1], &pi.gram[2][2] + &pi.gram[3][3]);
            let lb = x.phi_b().l();
            prop_assert_eq!(nx.ns.rank() + lb.rank(), 24);
        }
    }
}
