// SPDX-License-Identifier: Apache-2.0

//! Explicit mirror families.
//!
//! Shioda–Inose: σ = (e₂ + n f₂) + i(e₃ + n f₃) with L_σ ≅ ⟨2n⟩², and
//! H = e₁ + n f₁. X = (generic type A on L_σ^⊥, σ) is (L_σ^⊥, L_σ)-polarized;
//! X^∨ = (e^{iH}, generic type B on L_{e^{iH}}^⊥) is
//! (L_{e^{iH}}, L_{e^{iH}}^⊥)-polarized.
//!
//! Classical, K′ = ⟨H⟩: X = (e^{iH}, generic σ with NS = K′) is
//! (K′ ⊕ U, K′^⊥ ∩ H²)-polarized. Its mirror takes N = ⟨e₁ − n f₁⟩ ⊕ U₃ ⊕ E8²,
//! so that K′^⊥ ∩ H² = N ⊕ U₂, and X^∨ = (e^{i(e₃+f₃)}, generic σ^∨ with
//! NS = N).

use num_bigint::BigInt;
use num_traits::Zero;

use super::{check_polarization, mirror_check, Clause, FamilySpec, MirrorReport, PolarizationData};
use crate::error::{Error, Result};
use crate::exactmath::QuadComplex;
use crate::gk3::{ns_t_tilde, validate_gk3, Structure};
use crate::lattice::{invariants_match, LatticeComparison, Sublattice};
use crate::mukai::{
    check_gcy, h2_vector, l_psi, mukai_lattice, CohClass, GcyClass, GcyType, GenericClass, DEG0, DEG4, E1, E2, E3,
    E8A, E8B, F1, F2, F3, H2_OFFSET, MUKAI_RANK,
};

/// Two mirror families with the report of `mirror_check` and the checks of
/// the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorPair {
    pub family: FamilySpec,
    pub dual: FamilySpec,
    pub check: MirrorReport,
    pub verification: Vec<Clause>,
}

impl MirrorPair {
    pub fn verified(&self) -> bool {
        self.check.verified() && self.verification.iter().all(|c| c.holds)
    }
}

fn mukai_rows(rows: &[Vec<(usize, i64)>]) -> Result<Sublattice> {
    let rows = rows
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); MUKAI_RANK];
            for &(i, c) in r {
                v[i] += c;
            }
            v
        })
        .collect();
    Sublattice::from_rows(mukai_lattice(), rows)
}

fn deg2(i: usize) -> usize {
    H2_OFFSET + i
}

/// a + i·b for degree-2 classes given by sparse integer coordinates.
fn type_b(re: &[(usize, i64)], im: &[(usize, i64)]) -> Result<GcyClass> {
    let deg2: Vec<QuadComplex> =
        h2_vector(re).into_iter().zip(h2_vector(im)).map(|(a, b)| QuadComplex::new(a, b)).collect();
    check_gcy(&CohClass::from_h2(deg2)?)
}

fn exp_i(omega: &[(usize, i64)]) -> Result<GcyClass> {
    check_gcy(&CohClass::exp_i(&h2_vector(omega))?)
}

fn compare(name: &'static str, cmp: LatticeComparison) -> Clause {
    let detail = match &cmp {
        LatticeComparison::Distinguished(why) => why.clone(),
        c => format!("{c:?}"),
    };
    Clause::new(name, cmp.is_match(), detail)
}

fn family(p: PolarizationData, phi_a: Structure, phi_b: Structure) -> Result<FamilySpec> {
    let x = validate_gk3(phi_a, phi_b)?;
    let report = check_polarization(&p, &x)?;
    if !report.passed() {
        return Err(Error::Precondition(format!("polarization fails: {}", report.failed().join(", "))));
    }
    FamilySpec::new(p, x)
}

fn checked_n(n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::Precondition(format!("n must be positive, got {n}")));
    }
    Ok(n)
}

pub fn build_si_mirror(n: i64) -> Result<MirrorPair> {
    let n = checked_n(n)?;
    let sigma = type_b(&[(E2, 1), (F2, n)], &[(E3, 1), (F3, n)])?;
    let omega = exp_i(&[(E1, 1), (F1, n)])?;

    let l = l_psi(sigma.class());
    let k = l.ortho_complement()?;
    let member = Structure::Generic(GenericClass::new(k.clone(), GcyType::A)?);
    let p = PolarizationData {
        k,
        l,
        witness_a: Structure::Explicit(omega.clone()),
        witness_b: Structure::Explicit(sigma.clone()),
    };
    let fam = family(p, member, Structure::Explicit(sigma.clone()))?;

    let k2 = l_psi(omega.class());
    let l2 = k2.ortho_complement()?;
    let dual_member = Structure::Generic(GenericClass::new(l2.clone(), GcyType::B)?);
    let p2 = PolarizationData {
        k: k2,
        l: l2,
        witness_a: Structure::Explicit(omega.clone()),
        witness_b: Structure::Explicit(sigma),
    };
    let dual = family(p2, Structure::Explicit(omega), dual_member)?;

    let (x, xd) = (ns_t_tilde(fam.member()), ns_t_tilde(dual.member()));
    let (k_lat, l_lat) = (fam.polarization().k.lattice(), fam.polarization().l.lattice());
    let ns_x = x.ns.lattice();
    let verification = vec![
        Clause::new("rank NS~(X) = 22", ns_x.rank() == 22, format!("rank {}", ns_x.rank())),
        compare("NS~(X) matches K", invariants_match(&ns_x, &k_lat)),
        compare("T~(X) = L", invariants_match(&x.t.lattice(), &l_lat)),
        compare("NS~(X^v) = L", invariants_match(&xd.ns.lattice(), &l_lat)),
        compare("T~(X^v) matches K", invariants_match(&xd.t.lattice(), &k_lat)),
    ];
    let check = mirror_check(&fam, &dual);
    Ok(MirrorPair { family: fam, dual, check, verification })
}

/// Mirror pair for the degree-2n polarization K′ = ⟨e₁ + n f₁⟩.
pub fn classical_mirror(n: i64) -> Result<MirrorPair> {
    let n = checked_n(n)?;
    let h = vec![(deg2(E1), 1), (deg2(F1), n)];
    let k = mukai_rows(&[vec![(DEG0, 1)], vec![(DEG4, 1)], h])?;
    let l = k.ortho_complement()?;
    let omega = exp_i(&[(E1, 1), (F1, n)])?;
    let sigma = type_b(&[(E2, 1), (F2, n)], &[(E3, 1), (F3, n)])?;
    let member = Structure::Generic(GenericClass::new(l.clone(), GcyType::B)?);
    let p = PolarizationData {
        k,
        l,
        witness_a: Structure::Explicit(omega.clone()),
        witness_b: Structure::Explicit(sigma),
    };
    let fam = family(p, Structure::Explicit(omega), member)?;

    let mut n_rows = vec![vec![(deg2(E1), 1), (deg2(F1), -n)], vec![(deg2(E3), 1)], vec![(deg2(F3), 1)]];
    n_rows.extend((0..8).map(|i| vec![(deg2(E8A + i), 1)]));
    n_rows.extend((0..8).map(|i| vec![(deg2(E8B + i), 1)]));
    n_rows.push(vec![(DEG0, 1)]);
    n_rows.push(vec![(DEG4, 1)]);
    let k2 = mukai_rows(&n_rows)?;
    let l2 = k2.ortho_complement()?;
    let omega2 = exp_i(&[(E3, 1), (F3, 1)])?;
    let sigma2 = type_b(&[(E2, 1), (F2, n)], &[(E1, 1), (F1, n)])?;
    let dual_member = Structure::Generic(GenericClass::new(l2.clone(), GcyType::B)?);
    let p2 = PolarizationData {
        k: k2,
        l: l2,
        witness_a: Structure::Explicit(omega2.clone()),
        witness_b: Structure::Explicit(sigma2),
    };
    let dual = family(p2, Structure::Explicit(omega2), dual_member)?;

    let (x, xd) = (ns_t_tilde(fam.member()), ns_t_tilde(dual.member()));
    let verification = vec![
        compare("NS~(X) = K", invariants_match(&x.ns.lattice(), &fam.polarization().k.lattice())),
        compare("NS~(X^v) = L", invariants_match(&xd.ns.lattice(), &fam.polarization().l.lattice())),
    ];
    let check = mirror_check(&fam, &dual);
    Ok(MirrorPair { family: fam, dual, check, verification })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::SymDiagResult;
    use crate::lattice::{gauss_reduce2, IntegralLattice, ReducedForm};
    use crate::mirror::moduli_dims;
    use crate::mukai::BField;
    use proptest::prelude::*;

    fn diag(n: i64) -> ReducedForm {
        ReducedForm { a: (2 * n).into(), b: BigInt::zero(), c: (2 * n).into() }
    }

    #[test]
    fn shioda_inose_family() {
        for n in 1..=3 {
            let m = build_si_mirror(n).unwrap();
            assert!(m.verified(), "{:?}", m.verification);
            let x = ns_t_tilde(m.family.member());
            let s = x.ns.lattice().summary();
            assert_eq!(s.signature, SymDiagResult::new(2, 20, 0));
            let d = BigInt::from(2 * n);
            assert_eq!(s.discriminant.unwrap().divisors, vec![d.clone(), d]);
            assert_eq!(gauss_reduce2(&x.t.lattice()).unwrap().form, diag(n));
            assert_eq!((m.check.dims1.a, m.check.dims1.b), (20, 0));
            assert_eq!((m.check.dims2.a, m.check.dims2.b), (0, 20));
            assert_eq!(m.check.l1_vs_k2, LatticeComparison::Equal2);
            assert_eq!(m.check.k1_vs_l2, LatticeComparison::GenusInvariantsMatch);
            assert!(m.check.ns1_vs_t2.is_match() && m.check.t1_vs_ns2.is_match());
            // rank bookkeeping
            let lb = m.family.member().phi_b().l();
            assert_eq!(x.ns.rank() + lb.rank(), 24);
            let la = m.dual.member().phi_a().l();
            assert_eq!(ns_t_tilde(m.dual.member()).t.rank() + la.rank(), 24);
        }
    }

    #[test]
    fn literal_rank_20_k_is_distinguished() {
        let lit = IntegralLattice::direct_sum(&[
            &IntegralLattice::diagonal(&[BigInt::from(-2), BigInt::from(-2)]),
            &IntegralLattice::hyperbolic_plane(),
            &IntegralLattice::e8_minus(),
            &IntegralLattice::e8_minus(),
        ]);
        let m = build_si_mirror(1).unwrap();
        assert_eq!(
            invariants_match(&lit, &m.family.polarization().k.lattice()),
            LatticeComparison::Distinguished("rank 20 vs 22".into())
        );
    }

    #[test]
    fn classical_pair() {
        for n in 1..=3 {
            let m = classical_mirror(n).unwrap();
            assert!(m.verified(), "{:?} {:?}", m.check, m.verification);
            assert_eq!((m.check.dims1.a, m.check.dims1.b), (1, 19));
            assert_eq!((m.check.dims2.a, m.check.dims2.b), (19, 1));
        }
    }

    #[test]
    fn mismatched_mirror() {
        let (a, b) = (build_si_mirror(1).unwrap(), build_si_mirror(2).unwrap());
        let r = mirror_check(&a.family, &b.dual);
        assert!(!r.verified());
        assert!(matches!(&r.l1_vs_k2, LatticeComparison::Distinguished(w) if w.starts_with("reduced form")));
        assert!(matches!(&r.k1_vs_l2, LatticeComparison::Distinguished(w) if w.starts_with("discriminant")));
    }

    #[test]
    fn polarization_failures() {
        let m = build_si_mirror(1).unwrap();
        let x = m.family.member();
        let p = m.family.polarization();
        assert!(check_polarization(p, x).unwrap().passed());

        let swapped =
            PolarizationData { witness_a: p.witness_b.clone(), witness_b: p.witness_a.clone(), ..p.clone() };
        let r = check_polarization(&swapped, x).unwrap();
        for name in ["witnessA type A", "witnessA in K_C", "witnessB type B", "witnessB in L_C"] {
            assert!(!r.clause(name).unwrap().holds, "{name}");
        }

        let mut rows: Vec<Vec<BigInt>> = p.k.basis().row_vecs();
        rows[0] = rows[0].iter().map(|x| x * 2).collect();
        let doubled = PolarizationData { k: Sublattice::from_rows(mukai_lattice(), rows).unwrap(), ..p.clone() };
        let r = check_polarization(&doubled, x).unwrap();
        assert_eq!(r.failed(), vec!["K primitive"]);
        assert_eq!(r.clause("K primitive").unwrap().detail, "index 2");

        // K and L are orthogonal here; the joint index is informational
        assert!(r.cross_gram.is_zero());
        assert_eq!(check_polarization(p, x).unwrap().joint_index, Some(BigInt::from(4)));
    }

    #[test]
    fn dims() {
        let m = build_si_mirror(1).unwrap();
        let d = moduli_dims(m.family.polarization()).unwrap();
        assert_eq!((d.a, d.b, d.total()), (20, 0, 20));
        let s = m.family.polarization();
        let twelve = PolarizationData {
            k: mukai_rows(&(0..12).map(|i| vec![(i, 1)]).collect::<Vec<_>>()).unwrap(),
            l: mukai_rows(&(12..24).map(|i| vec![(i, 1)]).collect::<Vec<_>>()).unwrap(),
            ..s.clone()
        };
        let d = moduli_dims(&twelve).unwrap();
        assert_eq!((d.a, d.b), (10, 10));
    }

    #[test]
    fn nonpositive_n() {
        assert!(matches!(build_si_mirror(0), Err(Error::Precondition(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn polarization_transport(b in prop::collection::vec((0usize..22, -2i64..=2), 1..4), n in 1i64..3) {
            let m = build_si_mirror(n).unwrap();
            let bf = BField::new(h2_vector(&b)).unwrap();
            for f in [&m.family, &m.dual] {
                let p = f.polarization();
                let x = f.member();
                let before = check_polarization(p, x).unwrap();
                let after = check_polarization(&p.bfield_transform(&bf).unwrap(), &x.bfield_transform(&bf).unwrap()).unwrap();
                prop_assert_eq!(before, after);
            }
        }
    }
}
