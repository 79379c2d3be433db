// SPDX-License-Identifier: Apache-2.0

//! Classical mirror of a lattice-polarized K3: for K′ ⊂ H²(Z) of signature
//! (1, t) write K′^⊥ = N ⊕ U; the mirror family is N-polarized and its
//! transcendental lattice N^⊥ should match K′ ⊕ U.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{
    find_hyperbolic_split, invariants_match, HyperbolicSplit, IntegralLattice, LatticeComparison, NoSplitReason,
    SplitOutcome, SplitSearch, Sublattice,
};
use crate::mukai::k3_lattice;
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DolgachevFailure {
    /// K′^⊥ is definite, so no copy of U splits off.
    DefiniteComplement,
    NoIsotropicVector { radius: u32, max_weight: u32 },
}

impl DolgachevFailure {
    pub fn code(&self) -> &'static str {
        match self {
            DolgachevFailure::DefiniteComplement => "definite",
            DolgachevFailure::NoIsotropicVector { .. } => "not_within_bounds",
        }
    }
}

impl fmt::Display for DolgachevFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DolgachevFailure::DefiniteComplement => f.write_str("definite complement"),
            DolgachevFailure::NoIsotropicVector { radius, max_weight } => {
                write!(f, "no isotropic vector within radius {radius} (weight <= {max_weight})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DolgachevMirror {
    /// K′^⊥ in H²(Z).
    pub complement: Sublattice,
    /// Split of the complement, in coordinates of its basis.
    pub split: HyperbolicSplit,
    pub n: IntegralLattice,
    /// N inside H²(Z).
    pub n_embedded: Sublattice,
    /// N^⊥ in H²(Z): the transcendental lattice of the mirror.
    pub mirror_transcendental: Sublattice,
    /// K′ ⊕ U against N^⊥.
    pub duality: LatticeComparison,
    /// N ⊕ U against K′^⊥.
    pub resplit: LatticeComparison,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DolgachevOutcome {
    Mirror(Box<DolgachevMirror>),
    Failure(DolgachevFailure),
}

pub fn dolgachev_mirror(kp: &Sublattice, search: &SplitSearch, exec: Execution) -> Result<DolgachevOutcome> {
    let k3 = k3_lattice();
    if **kp.ambient() != *k3 {
        return Err(Error::Precondition("K' must be a sublattice of H^2(Z)".into()));
    }
    if !kp.is_primitive() {
        return Err(Error::Precondition(format!("K' is not primitive (index {})", kp.index_in_saturation())));
    }
    let sig = kp.lattice().signature();
    if sig.n_plus != 1 || sig.n_zero != 0 {
        return Err(Error::Precondition(format!("K' has signature {sig}; expected (1,t,0)")));
    }
    let complement = kp.ortho_complement()?;
    let split = match find_hyperbolic_split(&complement.lattice(), search, exec)? {
        SplitOutcome::Split(s) => s,
        SplitOutcome::NoneFound(NoSplitReason::Definite) => {
            return Ok(DolgachevOutcome::Failure(DolgachevFailure::DefiniteComplement))
        }
        SplitOutcome::NoneFound(NoSplitReason::NotWithinBounds { radius, max_weight }) => {
            return Ok(DolgachevOutcome::Failure(DolgachevFailure::NoIsotropicVector { radius, max_weight }))
        }
    };
    let n_embedded = Sublattice::new(k3.clone(), split.complement_basis.mul(complement.basis()))?;
    let mirror_transcendental = n_embedded.ortho_complement()?;
    let u = IntegralLattice::hyperbolic_plane();
    let duality =
        invariants_match(&IntegralLattice::direct_sum(&[&kp.lattice(), &u]), &mirror_transcendental.lattice());
    let resplit = invariants_match(&IntegralLattice::direct_sum(&[&split.complement, &u]), &complement.lattice());
    Ok(DolgachevOutcome::Mirror(Box::new(DolgachevMirror {
        complement,
        n: split.complement.clone(),
        split,
        n_embedded,
        mirror_transcendental,
        duality,
        resplit,
    })))
}
