// SPDX-License-Identifier: Apache-2.0

//! Case analysis of a hyperKähler partner φ′ = φ_A of φ = φ_B, by type.
//! Type A members are normalized as λ·e^{B+iω}; the B-field of the type A
//! member (case 1, 2a) or of φ itself (case 2b) is removed before the
//! identities are read off.

use std::fmt;

use crate::error::Result;
use crate::exactmath::{QuadComplex, QuadScalar, Rational};
use crate::mukai::{bfield_transform, h2_pair_real, mukai_pairing, BField, CohClass, GcyClass, GcyType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HkCase {
    /// φ of type B with a type A partner.
    BWithA,
    /// φ of type A with a type B partner.
    AWithB,
    /// Both of type A.
    AWithA,
    /// Both of type B: never a hyperKähler pair.
    BWithB,
}

impl HkCase {
    pub fn label(self) -> &'static str {
        match self {
            HkCase::BWithA => "1",
            HkCase::AWithB => "2a",
            HkCase::AWithA => "2b",
            HkCase::BWithB => "none",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HkCase::BWithA => "B-with-A",
            HkCase::AWithB => "A-with-B",
            HkCase::AWithA => "A-with-A",
            HkCase::BWithB => "B-with-B",
        }
    }
}

impl fmt::Display for HkCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (case {})", self.name(), self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityCheck {
    fn new<T: ToString + PartialEq>(name: &'static str, lhs: T, rhs: T) -> Self {
        IdentityCheck { name, holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkClassification {
    pub case: HkCase,
    pub checks: Vec<IdentityCheck>,
    /// Case 2b: ω·ω′ = ω·B′ = ω′·B′ = 0 and B′² = ω² + ω′².
    pub identity_i: Option<bool>,
    /// Case 2b: |λ|²ω² = |λ′|²ω′².
    pub identity_ii: Option<bool>,
}

impl HkClassification {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// λ, B, ω with φ = λ·e^{B+iω}.
struct Normalized {
    lambda: QuadComplex,
    b: Vec<QuadScalar>,
    omega: Vec<QuadScalar>,
}

fn normalize(c: &CohClass) -> Result<Normalized> {
    let lambda = c.deg0().clone();
    let psi2: Vec<QuadComplex> = c.deg2().iter().map(|x| x.checked_div(&lambda)).collect::<Result<_>>()?;
    Ok(Normalized {
        lambda,
        b: psi2.iter().map(|x| x.re.clone()).collect(),
        omega: psi2.iter().map(|x| x.im.clone()).collect(),
    })
}

/// ⟨ω, s⟩ for real ω and complex s (degree 2).
fn real_complex_pair(w: &[QuadScalar], s: &[QuadComplex]) -> QuadComplex {
    let re: Vec<QuadScalar> = s.iter().map(|c| c.re.clone()).collect();
    let im: Vec<QuadScalar> = s.iter().map(|c| c.im.clone()).collect();
    QuadComplex::new(h2_pair_real(w, &re), h2_pair_real(w, &im))
}

/// Checks for a type A member λe^{B+iω} and a type B member τ.
fn mixed_checks(a: &CohClass, tau: &CohClass) -> Result<Vec<IdentityCheck>> {
    let n = normalize(a)?;
    let shifted = bfield_transform(&BField::new(n.b.iter().map(|x| -x).collect())?, tau)?;
    let sigma = shifted.deg2();
    let two = Rational::from_integer(2.into());
    let lhs_norm = (&n.lambda.norm_sqr()? * &h2_pair_real(&n.omega, &n.omega)).scale(&two);
    let rhs_norm = mukai_pairing(&shifted, &shifted.conj())?;
    Ok(vec![
        IdentityCheck::new("sigma.B = 0", -shifted.deg4(), QuadComplex::zero()),
        IdentityCheck::new("sigma.omega = 0", real_complex_pair(&n.omega, sigma), QuadComplex::zero()),
        IdentityCheck::new("2|lambda|^2 omega^2 = <sigma,conj sigma>", QuadComplex::real(lhs_norm), rhs_norm),
    ])
}

/// Classifies φ_A as a hyperKähler partner of φ_B and evaluates the
/// cohomological identities of the matching case. Does not require the pair
/// to be valid; failing identities are reported.
pub fn classify_hk_pair(phi_a: &GcyClass, phi_b: &GcyClass) -> Result<HkClassification> {
    let (a, b) = (phi_a.class(), phi_b.class());
    Ok(match (phi_b.kind(), phi_a.kind()) {
        (GcyType::B, GcyType::A) => {
            HkClassification { case: HkCase::BWithA, checks: mixed_checks(a, b)?, identity_i: None, identity_ii: None }
        }
        (GcyType::A, GcyType::B) => {
            HkClassification { case: HkCase::AWithB, checks: mixed_checks(b, a)?, identity_i: None, identity_ii: None }
        }
        (GcyType::B, GcyType::B) => {
            HkClassification { case: HkCase::BWithB, checks: vec![], identity_i: None, identity_ii: None }
        }
        (GcyType::A, GcyType::A) => {
            // φ = φ_B = λe^{B+iω}, φ′ = φ_A = λ′e^{B+B′+iω′}
            let phi = normalize(b)?;
            let prime = normalize(a)?;
            let b_prime: Vec<QuadScalar> = prime.b.iter().zip(&phi.b).map(|(x, y)| x - y).collect();
            let (w, wp) = (&phi.omega, &prime.omega);
            let zero = QuadScalar::zero();
            let w_sq = h2_pair_real(w, w);
            let wp_sq = h2_pair_real(wp, wp);
            let checks = vec![
                IdentityCheck::new("omega.omega' = 0", h2_pair_real(w, wp), zero.clone()),
                IdentityCheck::new("omega.B' = 0", h2_pair_real(w, &b_prime), zero.clone()),
                IdentityCheck::new("omega'.B' = 0", h2_pair_real(wp, &b_prime), zero),
                IdentityCheck::new("B'^2 = omega^2 + omega'^2", h2_pair_real(&b_prime, &b_prime), &w_sq + &wp_sq),
                IdentityCheck::new(
                    "|lambda|^2 omega^2 = |lambda'|^2 omega'^2",
                    &phi.lambda.norm_sqr()? * &w_sq,
                    &prime.lambda.norm_sqr()? * &wp_sq,
                ),
            ];
            let identity_i = Some(checks[..4].iter().all(|c| c.holds));
            let identity_ii = Some(checks[4].holds);
            HkClassification { case: HkCase::AWithA, checks, identity_i, identity_ii }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gk3::tests::{classical, exp_i, sigma};
    use crate::gk3::{validate_gk3, Structure};
    use crate::mukai::{check_gcy, h2_vector, E1, E2, E3, F1, F2, F3};

    fn gcy(b: &[(usize, i64)], w: &[(usize, i64)], lambda: QuadComplex) -> GcyClass {
        let c = CohClass::exp_b_i(&BField::new(h2_vector(b)).unwrap(), &h2_vector(w)).unwrap();
        check_gcy(&c.scale(&lambda).unwrap()).unwrap()
    }

    #[test]
    fn classical_is_case_one() {
        let x = classical(1);
        let c = x.classify().unwrap();
        assert_eq!(c.case, HkCase::BWithA);
        assert!(c.all_hold(), "{c:?}");
        // swapped roles give case 2a with the same checks
        let s = x.swap().classify().unwrap();
        assert_eq!(s.case, HkCase::AWithB);
        assert!(s.all_hold());
        let both_b = classify_hk_pair(&sigma(1), &sigma(2)).unwrap();
        assert_eq!(both_b.case, HkCase::BWithB);
    }

    #[test]
    fn case_one_with_b_field_shift() {
        // e^B applied to both members keeps every check
        let b = BField::new(h2_vector(&[(E1, 1), (F3, 2)])).unwrap();
        let a = check_gcy(&bfield_transform(&b, exp_i(1).class()).unwrap()).unwrap();
        let s = check_gcy(&bfield_transform(&b, sigma(1).class()).unwrap()).unwrap();
        assert!(classify_hk_pair(&a, &s).unwrap().all_hold());
        // shifting only the type A member breaks sigma.B = 0
        let c = classify_hk_pair(&a, &sigma(1)).unwrap();
        assert!(!c.checks[0].holds);
    }

    #[test]
    fn case_2b_identities() {
        // φ = e^{iω}, ω = e1+f1; φ′ = e^{B′+iω′}, ω′ = e2+f2, B′ = e3+2f3
        // (B′² = 4 = ω² + ω′²)
        let phi = gcy(&[], &[(E1, 1), (F1, 1)], QuadComplex::one());
        let partner = gcy(&[(E3, 1), (F3, 2)], &[(E2, 1), (F2, 1)], QuadComplex::one());
        let c = classify_hk_pair(&partner, &phi).unwrap();
        assert_eq!(c.case, HkCase::AWithA);
        assert_eq!(c.identity_i, Some(true));
        assert_eq!(c.identity_ii, Some(true));
        // the identities are exactly the hyperKähler conditions
        assert!(validate_gk3(Structure::Explicit(partner), Structure::Explicit(phi.clone())).is_ok());

        let bad = gcy(&[(E3, 1), (F3, 3)], &[(E2, 1), (F2, 1)], QuadComplex::one());
        let c = classify_hk_pair(&bad, &phi).unwrap();
        assert_eq!(c.identity_i, Some(false));
        assert_eq!(c.checks.iter().find(|k| !k.holds).unwrap().name, "B'^2 = omega^2 + omega'^2");
        assert!(validate_gk3(Structure::Explicit(bad), Structure::Explicit(phi.clone())).is_err());

        // λ scaling: |λ|²ω² = |λ′|²ω′² fails for λ′ = 2
        let scaled = gcy(&[(E3, 1), (F3, 2)], &[(E2, 1), (F2, 1)], QuadComplex::from_int(2));
        let c = classify_hk_pair(&scaled, &phi).unwrap();
        assert_eq!((c.identity_i, c.identity_ii), (Some(true), Some(false)));
    }

    #[test]
    fn case_2b_common_shift() {
        // a common B-field on both members does not change B′
        let phi = gcy(&[(E1, 1)], &[(E1, 1), (F1, 1)], QuadComplex::i());
        let partner = gcy(&[(E1, 1), (E3, 1), (F3, 2)], &[(E2, 1), (F2, 1)], QuadComplex::i());
        let c = classify_hk_pair(&partner, &phi).unwrap();
        assert_eq!((c.identity_i, c.identity_ii), (Some(true), Some(true)));
    }
}
