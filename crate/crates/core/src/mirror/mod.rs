// SPDX-License-Identifier: Apache-2.0

//! (K, L)-polarized families of generalized K3 surfaces, their moduli
//! dimensions and mirror pairs, the classical construction by splitting a
//! hyperbolic plane off a transcendental lattice, and the Shioda–Inose
//! mirror family.

mod build;
mod dolgachev;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::{int_rows_to_rational, IntMatrix};
use crate::gk3::{ns_t_tilde, GeneralizedK3, Structure};
use crate::lattice::{invariants_match, LatticeComparison, Sublattice};
use crate::mukai::{mukai_lattice, BField, GcyType};

pub use build::{build_si_mirror, classical_mirror, MirrorPair};
pub use dolgachev::{dolgachev_mirror, DolgachevFailure, DolgachevMirror, DolgachevOutcome};

/// Embedded K and L in the Mukai lattice with a type A witness in K_C and a
/// type B witness in L_C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationData {
    pub k: Sublattice,
    pub l: Sublattice,
    pub witness_a: Structure,
    pub witness_b: Structure,
}

impl PolarizationData {
    /// Transport of the whole datum by an integral B-field.
    pub fn bfield_transform(&self, b: &BField) -> Result<PolarizationData> {
        let m = b.transform_matrix()?;
        Ok(PolarizationData {
            k: Sublattice::new(mukai_lattice(), self.k.basis().mul(&m))?,
            l: Sublattice::new(mukai_lattice(), self.l.basis().mul(&m))?,
            witness_a: self.witness_a.bfield_transform(b)?,
            witness_b: self.witness_b.bfield_transform(b)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl Clause {
    pub(crate) fn new(name: &'static str, holds: bool, detail: impl Into<String>) -> Self {
        Clause { name, holds, detail: detail.into() }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.name, if self.holds { "ok" } else { "FAILED" }, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationReport {
    pub clauses: Vec<Clause>,
    /// Index of K + L in its saturation; None when K and L meet.
    pub joint_index: Option<BigInt>,
    /// ⟨k_i, l_j⟩ for the embedded bases.
    pub cross_gram: IntMatrix,
}

impl PolarizationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.clauses.iter().filter(|c| !c.holds).map(|c| c.name).collect()
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

fn check_mukai(s: &Sublattice, what: &str) -> Result<()> {
    if **s.ambient() != *mukai_lattice() {
        return Err(Error::Precondition(format!("{what} must be embedded in the Mukai lattice")));
    }
    Ok(())
}

fn signature_clause(name: &'static str, s: &Sublattice) -> Clause {
    let sig = s.lattice().signature();
    let want = s.rank().checked_sub(2);
    let holds = sig.n_plus == 2 && sig.n_zero == 0;
    let detail = match want {
        Some(w) => format!("{sig}, expected (2,{w},0)"),
        None => format!("{sig}, rank below 2"),
    };
    Clause::new(name, holds, detail)
}

fn contained(sub: &Sublattice, sup: &Sublattice) -> (bool, String) {
    let basis = sub.basis();
    match (0..basis.rows()).find(|&i| !sup.contains(basis.row(i))) {
        None => (true, format!("all {} basis vectors", basis.rows())),
        Some(i) => (false, format!("basis vector {i} outside")),
    }
}

fn witness_in_span(w: &Structure, span: &Sublattice) -> (bool, String) {
    match w {
        Structure::Explicit(c) => {
            let parts = c.class().components();
            match parts.iter().position(|p| !span.rational_span_contains(p)) {
                None => (true, "class components in span".into()),
                Some(i) => (false, format!("rational component {i} outside span")),
            }
        }
        Structure::Generic(g) => {
            let rows = int_rows_to_rational(g.support().basis());
            match rows.iter().position(|r| !span.rational_span_contains(r)) {
                None => (true, "declared support in span".into()),
                Some(i) => (false, format!("support vector {i} outside span")),
            }
        }
    }
}

fn type_clause(name: &'static str, w: &Structure, want: GcyType) -> Clause {
    Clause::new(name, w.kind() == want, format!("type {}", w.kind()))
}

/// Checks the polarization conditions for member x. Primitivity is asked of
/// each embedding separately; the index of K + L is reported only.
pub fn check_polarization(p: &PolarizationData, x: &GeneralizedK3) -> Result<PolarizationReport> {
    check_mukai(&p.k, "K")?;
    check_mukai(&p.l, "L")?;
    let ns_t = ns_t_tilde(x);
    let (kappa, lambda) = (p.k.rank(), p.l.rank());
    let mut clauses = vec![
        signature_clause("signature K", &p.k),
        signature_clause("signature L", &p.l),
        Clause::new("kappa + lambda = 24", kappa + lambda == 24, format!("{kappa} + {lambda}")),
        Clause::new("K even", p.k.lattice().is_even(), ""),
        Clause::new("L even", p.l.lattice().is_even(), ""),
        Clause::new("K primitive", p.k.is_primitive(), format!("index {}", p.k.index_in_saturation())),
        Clause::new("L primitive", p.l.is_primitive(), format!("index {}", p.l.index_in_saturation())),
    ];
    let (h, d) = contained(&p.k, &ns_t.ns);
    clauses.push(Clause::new("K in NS~", h, d));
    let (h, d) = contained(&p.l, &ns_t.t);
    clauses.push(Clause::new("L in T~", h, d));
    clauses.push(type_clause("witnessA type A", &p.witness_a, GcyType::A));
    let (h, d) = witness_in_span(&p.witness_a, &p.k);
    clauses.push(Clause::new("witnessA in K_C", h, d));
    clauses.push(type_clause("witnessB type B", &p.witness_b, GcyType::B));
    let (h, d) = witness_in_span(&p.witness_b, &p.l);
    clauses.push(Clause::new("witnessB in L_C", h, d));

    let stacked = p.k.basis().vstack(p.l.basis())?;
    let joint_index = Sublattice::new(mukai_lattice(), stacked).ok().map(|s| s.index_in_saturation());
    Ok(PolarizationReport { clauses, joint_index, cross_gram: p.k.cross_gram(&p.l) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliDims {
    pub a: usize,
    pub b: usize,
}

impl ModuliDims {
    pub fn total(&self) -> usize {
        self.a + self.b
    }
}

impl fmt::Display for ModuliDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// (rank K − 2, rank L − 2).
pub fn moduli_dims(p: &PolarizationData) -> Result<ModuliDims> {
    let dim = |s: &Sublattice, what: &str| {
        s.rank().checked_sub(2).ok_or_else(|| Error::Precondition(format!("{what} has rank {} < 2", s.rank())))
    };
    Ok(ModuliDims { a: dim(&p.k, "K")?, b: dim(&p.l, "L")? })
}

/// A polarization together with a member satisfying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    polarization: PolarizationData,
    member: GeneralizedK3,
}

impl FamilySpec {
    pub fn new(polarization: PolarizationData, member: GeneralizedK3) -> Result<FamilySpec> {
        let report = check_polarization(&polarization, &member)?;
        if !report.passed() {
            return Err(Error::Precondition(format!("polarization fails: {}", report.failed().join(", "))));
        }
        moduli_dims(&polarization)?;
        Ok(FamilySpec { polarization, member })
    }

    pub fn polarization(&self) -> &PolarizationData {
        &self.polarization
    }

    pub fn member(&self) -> &GeneralizedK3 {
        &self.member
    }

    pub fn dims(&self) -> ModuliDims {
        moduli_dims(&self.polarization).expect("checked on construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorReport {
    pub k1_vs_l2: LatticeComparison,
    pub l1_vs_k2: LatticeComparison,
    pub dims1: ModuliDims,
    pub dims2: ModuliDims,
    pub dims_swap: bool,
    /// NS̃ of the first member against T̃ of the second, and conversely.
    pub ns1_vs_t2: LatticeComparison,
    pub t1_vs_ns2: LatticeComparison,
    pub cross_gram1: IntMatrix,
    pub cross_gram2: IntMatrix,
}

impl MirrorReport {
    pub fn verified(&self) -> bool {
        self.k1_vs_l2.is_match() && self.l1_vs_k2.is_match() && self.dims_swap
    }
}

/// f1 is (K₁, L₁)-polarized, f2 is (K₂, L₂)-polarized; they are mirror when
/// K₁ ≅ L₂ and L₁ ≅ K₂.
pub fn mirror_check(f1: &FamilySpec, f2: &FamilySpec) -> MirrorReport {
    let (p1, p2) = (&f1.polarization, &f2.polarization);
    let (d1, d2) = (f1.dims(), f2.dims());
    let (a, b) = (ns_t_tilde(&f1.member), ns_t_tilde(&f2.member));
    MirrorReport {
        k1_vs_l2: invariants_match(&p1.k.lattice(), &p2.l.lattice()),
        l1_vs_k2: invariants_match(&p1.l.lattice(), &p2.k.lattice()),
        dims1: d1,
        dims2: d2,
        dims_swap: d1.a == d2.b && d1.b == d2.a,
        ns1_vs_t2: invariants_match(&a.ns.lattice(), &b.t.lattice()),
        t1_vs_ns2: invariants_match(&a.t.lattice(), &b.ns.lattice()),
        cross_gram1: p1.k.cross_gram(&p1.l),
        cross_gram2: p2.k.cross_gram(&p2.l),
    }
}
