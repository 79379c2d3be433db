// SPDX-License-Identifier: Apache-2.0

//! Enumerates Kähler rigid classes e^{B+iω} over a rank-2 sublattice
//! ⟨H₁, H₂⟩ ⊂ H²(Z) and records which reduced rank-2 forms arise as
//! L_{e^{B+iω}}.
//!
//! Grid: q ∈ 1..=denominator_bound, B = (p₁H₁ + p₂H₂)/q with 0 ≤ pᵢ < q,
//! ω = κ(aH₁ + bH₂)/q with |a|, |b| ≤ coeff_bound, (aH₁ + bH₂)² > 0 and
//! κ ∈ {1} ∪ {√d}.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::enumerate_reduced_forms;
use crate::exactmath::{QuadScalar, Rational, SqrtD};
use crate::lattice::{gauss_reduce2, ReducedForm};
use crate::mukai::{check_gcy, h2_pair_real, h2_vector, l_psi, BField, CohClass, E1, E2, F1, F2, H2_RANK};
use crate::par::{map_slice, Execution};

/// The rank-2 sublattice of H²(Z) the survey ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SurveyAmbient {
    /// U₁ = ⟨e₁, f₁⟩.
    #[default]
    HyperbolicPlane,
    /// ⟨e₁+f₁, e₂+f₂⟩ ≅ ⟨2⟩².
    TwoSquares,
    /// ⟨e₁+f₁, e₁+e₂+f₂⟩ ≅ A₂(1) (Gram [[2,1],[1,2]]).
    A2,
}

impl SurveyAmbient {
    pub fn generators(self) -> [Vec<QuadScalar>; 2] {
        match self {
            SurveyAmbient::HyperbolicPlane => [h2_vector(&[(E1, 1)]), h2_vector(&[(F1, 1)])],
            SurveyAmbient::TwoSquares => [h2_vector(&[(E1, 1), (F1, 1)]), h2_vector(&[(E2, 1), (F2, 1)])],
            SurveyAmbient::A2 => [h2_vector(&[(E1, 1), (F1, 1)]), h2_vector(&[(E1, 1), (E2, 1), (F2, 1)])],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurveyAmbient::HyperbolicPlane => "U",
            SurveyAmbient::TwoSquares => "2x2",
            SurveyAmbient::A2 => "A2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyConfig {
    pub max_det: u64,
    pub denominator_bound: u32,
    pub sqrt_d: Vec<SqrtD>,
    pub ambient: SurveyAmbient,
    pub coeff_bound: i64,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            max_det: 12,
            denominator_bound: 2,
            sqrt_d: vec![SqrtD::new(2).expect("squarefree"), SqrtD::new(3).expect("squarefree")],
            ambient: SurveyAmbient::HyperbolicPlane,
            coeff_bound: 3,
        }
    }
}

/// Grid point producing a class: B = (p₁H₁ + p₂H₂)/q, ω = κ(aH₁ + bH₂)/q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyWitness {
    pub q: u32,
    pub p1: u32,
    pub p2: u32,
    pub a: i64,
    pub b: i64,
    pub kappa: Option<SqrtD>,
    pub b_field: Vec<QuadScalar>,
    pub omega: Vec<QuadScalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    /// Reduced forms with det ≤ max_det that occur, sorted.
    pub achieved: Vec<ReducedForm>,
    /// Reduced even forms with det ≤ max_det that do not occur, sorted.
    pub missing: Vec<ReducedForm>,
    pub samples: usize,
    /// Classes whose form exceeds max_det.
    pub beyond_bound: usize,
    /// Classes whose L_ψ is not an even rank-2 positive definite lattice
    /// (expected to stay empty).
    pub violations: Vec<String>,
    pub per_form_witness: BTreeMap<ReducedForm, SurveyWitness>,
}

struct TaskResult {
    samples: usize,
    beyond: usize,
    violations: Vec<String>,
    found: BTreeMap<ReducedForm, SurveyWitness>,
}

fn combo(h: &[Vec<QuadScalar>; 2], x: &Rational, y: &Rational) -> Vec<QuadScalar> {
    (0..H2_RANK).map(|i| &h[0][i].scale(x) + &h[1][i].scale(y)).collect()
}

fn run_task(h: &[Vec<QuadScalar>; 2], kappa: Option<SqrtD>, q: u32, a: i64, b: i64, max_det: &BigInt) -> TaskResult {
    let mut out = TaskResult { samples: 0, beyond: 0, violations: vec![], found: BTreeMap::new() };
    let qr = BigInt::from(q);
    let k = kappa.map_or_else(QuadScalar::one, QuadScalar::sqrt);
    let omega: Vec<QuadScalar> = combo(h, &Rational::new(a.into(), qr.clone()), &Rational::new(b.into(), qr.clone()))
        .iter()
        .map(|c| c * &k)
        .collect();
    for p1 in 0..q {
        for p2 in 0..q {
            let bf = combo(h, &Rational::new(p1.into(), qr.clone()), &Rational::new(p2.into(), qr.clone()));
            let class = BField::new(bf.clone()).and_then(|bfield| CohClass::exp_b_i(&bfield, &omega));
            out.samples += 1;
            let witness = || SurveyWitness { q, p1, p2, a, b, kappa, b_field: bf.clone(), omega: omega.clone() };
            let label = format!("q={q} p=({p1},{p2}) (a,b)=({a},{b}) kappa={}", kappa.map_or(1, SqrtD::get));
            let class = match class.and_then(|c| check_gcy(&c).map(|_| c)) {
                Ok(c) => c,
                Err(e) => {
                    out.violations.push(format!("{label}: {e}"));
                    continue;
                }
            };
            let l = l_psi(&class);
            let lat = l.lattice();
            let form = match gauss_reduce2(&lat) {
                Ok(r) if r.form.is_even() => r.form,
                _ => {
                    out.violations.push(format!("{label}: L has rank {} and Gram {}", l.rank(), lat.gram()));
                    continue;
                }
            };
            if &form.det() > max_det {
                out.beyond += 1;
                continue;
            }
            out.found.entry(form).or_insert_with(witness);
        }
    }
    out
}

pub fn kahler_rigid_survey(config: &SurveyConfig, exec: Execution) -> SurveyReport {
    let h = config.ambient.generators();
    let max_det = BigInt::from(config.max_det);
    let kappas: Vec<Option<SqrtD>> = std::iter::once(None).chain(config.sqrt_d.iter().copied().map(Some)).collect();
    let cb = config.coeff_bound;
    let mut tasks = Vec::new();
    for &kappa in &kappas {
        for q in 1..=config.denominator_bound {
            for a in -cb..=cb {
                for b in -cb..=cb {
                    let w = combo(&h, &Rational::from_integer(a.into()), &Rational::from_integer(b.into()));
                    if h2_pair_real(&w, &w).is_positive() {
                        tasks.push((kappa, q, a, b));
                    }
                }
            }
        }
    }
    let results = map_slice(exec, &tasks, |&(kappa, q, a, b)| run_task(&h, kappa, q, a, b, &max_det));

    let mut report = SurveyReport {
        achieved: vec![],
        missing: vec![],
        samples: 0,
        beyond_bound: 0,
        violations: vec![],
        per_form_witness: BTreeMap::new(),
    };
    for r in results {
        report.samples += r.samples;
        report.beyond_bound += r.beyond;
        report.violations.extend(r.violations);
        for (form, w) in r.found {
            report.per_form_witness.entry(form).or_insert(w);
        }
    }
    report.achieved = report.per_form_witness.keys().cloned().collect();
    report.missing =
        enumerate_reduced_forms(config.max_det).into_iter().filter(|f| !report.per_form_witness.contains_key(f)).collect();
    debug_assert!(report.achieved.iter().all(|f| f.a.is_positive() && !f.det().is_zero()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(a: i64, b: i64, c: i64) -> ReducedForm {
        ReducedForm { a: a.into(), b: b.into(), c: c.into() }
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_reduced_forms(3), vec![rf(2, 1, 2)]);
        assert_eq!(enumerate_reduced_forms(4), vec![rf(2, 0, 2), rf(2, 1, 2)]);
        let all = enumerate_reduced_forms(20);
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted, all);
        for f in &all {
            assert_eq!(&gauss_reduce2(&f.lattice()).unwrap().form, f);
        }
    }

    #[test]
    fn small_survey_hits_witnesses() {
        let config = SurveyConfig {
            max_det: 8,
            denominator_bound: 1,
            sqrt_d: vec![SqrtD::new(2).unwrap()],
            ambient: SurveyAmbient::HyperbolicPlane,
            coeff_bound: 1,
        };
        let r = kahler_rigid_survey(&config, Execution::Sequential);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.achieved.contains(&rf(2, 0, 2)));
        assert!(r.achieved.contains(&rf(2, 0, 4)));
        assert_eq!(r, kahler_rigid_survey(&config, Execution::Parallel));
        let w = &r.per_form_witness[&rf(2, 0, 2)];
        assert_eq!((w.a.abs(), w.b.abs(), w.kappa), (1, 1, None));
        for f in &r.achieved {
            assert!(f.is_even() && f.det().is_positive());
        }
    }
}
