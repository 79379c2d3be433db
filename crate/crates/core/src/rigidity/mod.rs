// SPDX-License-Identifier: Apache-2.0

//! Complex and Kähler rigidity of generalized K3 pairs, and the rank-2
//! lattice invariants attached to rigid pairs.

mod survey;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::QuadScalar;
use crate::gk3::{GeneralizedK3, Structure};
use crate::lattice::{gauss_reduce2, ReducedForm, Sublattice};
use crate::mukai::{h2_pair_real, k3_lattice, rational_span_lattice, GcyType};

pub use crate::lattice::enumerate_even_reduced_forms as enumerate_reduced_forms;
pub use survey::{kahler_rigid_survey, SurveyAmbient, SurveyConfig, SurveyReport, SurveyWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotRigidReason {
    WrongType { member: &'static str, found: GcyType },
    Rank { lattice: &'static str, rank: usize },
    InvariantNotPositive(String),
}

impl fmt::Display for NotRigidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotRigidReason::WrongType { member, found } => write!(f, "type: {member} is of type {found}"),
            NotRigidReason::Rank { lattice, rank } => write!(f, "rank {lattice} = {rank}"),
            NotRigidReason::InvariantNotPositive(g) => write!(f, "invariant lattice is not rank-2 positive definite: {g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityKind {
    ComplexRigid,
    KahlerRigid,
    NotRigid(NotRigidReason),
}

impl RigidityKind {
    pub fn is_rigid(&self) -> bool {
        !matches!(self, RigidityKind::NotRigid(_))
    }
}

impl fmt::Display for RigidityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidityKind::ComplexRigid => f.write_str("ComplexRigid"),
            RigidityKind::KahlerRigid => f.write_str("KahlerRigid"),
            RigidityKind::NotRigid(r) => write!(f, "NotRigid({r})"),
        }
    }
}

/// Extra data read off a rigid pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RigidityAux {
    /// The B-field component is rational.
    pub b_rational: Option<bool>,
    /// ω² for the type A member.
    pub omega_sq: Option<QuadScalar>,
    /// Complex rigid pairs: the B′ shift is not determined by φ_B alone, so
    /// only the lattice invariant is returned.
    pub b_prime_canonical: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub kind: RigidityKind,
    pub invariant: Option<ReducedForm>,
    pub aux: RigidityAux,
}

impl RigidityReport {
    fn not_rigid(reason: NotRigidReason) -> Self {
        RigidityReport { kind: RigidityKind::NotRigid(reason), invariant: None, aux: RigidityAux::default() }
    }
}

fn reduce_invariant(l: &Sublattice) -> std::result::Result<ReducedForm, NotRigidReason> {
    let lat = l.lattice();
    gauss_reduce2(&lat).map(|r| r.form).map_err(|_| NotRigidReason::InvariantNotPositive(lat.gram().to_string()))
}

/// Complex rigid: φ_B of type B and rank NS̃ = 22. The invariant is the
/// reduced Gram of L_σ ⊂ H²(Z) for σ the degree-2 part of φ_B.
pub fn is_complex_rigid(x: &GeneralizedK3) -> Result<RigidityReport> {
    let phi_b = x.phi_b();
    if phi_b.kind() != GcyType::B {
        return Ok(RigidityReport::not_rigid(NotRigidReason::WrongType { member: "phiB", found: phi_b.kind() }));
    }
    let ns_rank = 24 - phi_b.l().rank();
    if ns_rank != 22 {
        return Ok(RigidityReport::not_rigid(NotRigidReason::Rank { lattice: "NS~", rank: ns_rank }));
    }
    let Structure::Explicit(b) = phi_b else {
        return Err(Error::NeedsExplicit("phiB"));
    };
    let sigma = b.class().deg2();
    let parts: Vec<Vec<_>> = (0..4)
        .map(|k| {
            sigma
                .iter()
                .map(|c| match k {
                    0 => c.re.a().clone(),
                    1 => c.re.b().clone(),
                    2 => c.im.a().clone(),
                    _ => c.im.b().clone(),
                })
                .collect()
        })
        .collect();
    let l_sigma = rational_span_lattice(k3_lattice(), &parts)?;
    if l_sigma.rank() != 2 {
        return Ok(RigidityReport::not_rigid(NotRigidReason::Rank { lattice: "L_sigma", rank: l_sigma.rank() }));
    }
    match reduce_invariant(&l_sigma) {
        Ok(form) => Ok(RigidityReport {
            kind: RigidityKind::ComplexRigid,
            invariant: Some(form),
            aux: RigidityAux { b_rational: Some(true), omega_sq: None, b_prime_canonical: Some(false) },
        }),
        Err(r) => Ok(RigidityReport::not_rigid(r)),
    }
}

/// Kähler rigid: φ_A of type A and rank T̃ = 22. The invariant is the
/// reduced Gram of L_{φ_A}.
pub fn is_kahler_rigid(x: &GeneralizedK3) -> Result<RigidityReport> {
    let phi_a = x.phi_a();
    if phi_a.kind() != GcyType::A {
        return Ok(RigidityReport::not_rigid(NotRigidReason::WrongType { member: "phiA", found: phi_a.kind() }));
    }
    let l = phi_a.l();
    let t_rank = 24 - l.rank();
    if t_rank != 22 {
        return Ok(RigidityReport::not_rigid(NotRigidReason::Rank { lattice: "T~", rank: t_rank }));
    }
    let form = match reduce_invariant(&l) {
        Ok(f) => f,
        Err(r) => return Ok(RigidityReport::not_rigid(r)),
    };
    let aux = match phi_a {
        Structure::Explicit(a) => {
            // φ_A = λ e^{B + iω}
            let c = a.class();
            let lambda = c.deg0();
            let psi2 = c.deg2().iter().map(|z| z.checked_div(lambda)).collect::<Result<Vec<_>>>()?;
            let b_rational = psi2.iter().all(|z| z.re.is_rational());
            let omega: Vec<QuadScalar> = psi2.iter().map(|z| z.im.clone()).collect();
            RigidityAux { b_rational: Some(b_rational), omega_sq: Some(h2_pair_real(&omega, &omega)), b_prime_canonical: None }
        }
        Structure::Generic(_) => RigidityAux::default(),
    };
    Ok(RigidityReport { kind: RigidityKind::KahlerRigid, invariant: Some(form), aux })
}
