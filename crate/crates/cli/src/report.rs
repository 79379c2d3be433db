// SPDX-License-Identifier: Apache-2.0

//! JSON encodings of library values. Every number is an exact string and
//! objects use sorted keys, so equal inputs give byte-identical output.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use gk3::exactmath::{format_rational, IntMatrix, QuadComplex, QuadScalar, Rational, SymDiagResult};
use gk3::gk3::{HkClassification, NsT, SignatureProfile};
use gk3::lattice::{LatticeComparison, LatticeSummary, ReducedForm, Sublattice};
use gk3::mirror::{Clause, MirrorReport, ModuliDims, PolarizationReport};
use gk3::rigidity::{RigidityReport, SurveyReport, SurveyWitness};

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn uint(x: usize) -> Value {
    Value::String(x.to_string())
}

pub fn rat(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

/// "p/q" when rational, ["a", "b"] for a + b√d.
pub fn scalar(x: &QuadScalar) -> Value {
    if x.is_rational() {
        rat(x.a())
    } else {
        json!([rat(x.a()), rat(x.b())])
    }
}

pub fn complex(x: &QuadComplex) -> Value {
    json!({ "re": scalar(&x.re), "im": scalar(&x.im) })
}

pub fn scalars(v: &[QuadScalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(int).collect())).collect())
}

pub fn signature(s: &SymDiagResult) -> Value {
    json!([uint(s.n_plus), uint(s.n_minus), uint(s.n_zero)])
}

pub fn form(f: &ReducedForm) -> Value {
    json!([[int(&f.a), int(&f.b)], [int(&f.b), int(&f.c)]])
}

pub fn summary(s: &LatticeSummary) -> Value {
    json!({
        "rank": uint(s.rank),
        "signature": signature(&s.signature),
        "even": s.even,
        "discriminant": s.discriminant.as_ref().map(|d| Value::Array(d.divisors.iter().map(int).collect())),
    })
}

pub fn sublattice(s: &Sublattice) -> Value {
    let l = s.lattice();
    json!({
        "basis": matrix(s.basis()),
        "gram": matrix(l.gram()),
        "summary": summary(&l.summary()),
        "primitive": s.is_primitive(),
    })
}

pub fn comparison(c: &LatticeComparison) -> Value {
    match c {
        LatticeComparison::Equal2 => json!({ "result": "equal" }),
        LatticeComparison::GenusInvariantsMatch => json!({ "result": "genus_invariants_match" }),
        LatticeComparison::Distinguished(why) => json!({ "result": "distinguished", "invariant": why }),
    }
}

pub fn clauses(cs: &[Clause]) -> Value {
    let mut m = Map::new();
    for c in cs {
        m.insert(c.name.to_string(), json!({ "holds": c.holds, "detail": c.detail }));
    }
    Value::Object(m)
}

pub fn ns_t(x: &NsT) -> Value {
    json!({ "ns": sublattice(&x.ns), "t": sublattice(&x.t) })
}

pub fn profile(p: &SignatureProfile) -> Value {
    json!({
        "ns": summary(&p.ns),
        "t": summary(&p.t),
        "intersection": { "basis": matrix(p.intersection.basis()), "summary": summary(&p.intersection_summary) },
        "positive_index_bounded": p.positive_index_bounded,
    })
}

pub fn classification(c: &HkClassification) -> Value {
    let checks: Vec<Value> = c
        .checks
        .iter()
        .map(|k| json!({ "name": k.name, "holds": k.holds, "lhs": k.lhs, "rhs": k.rhs }))
        .collect();
    json!({
        "case": c.case.label(),
        "name": c.case.name(),
        "checks": checks,
        "identity_i": c.identity_i,
        "identity_ii": c.identity_ii,
        "all_hold": c.all_hold(),
    })
}

pub fn rigidity(r: &RigidityReport) -> Value {
    json!({
        "kind": match &r.kind {
            gk3::rigidity::RigidityKind::ComplexRigid => "complex_rigid".to_string(),
            gk3::rigidity::RigidityKind::KahlerRigid => "kahler_rigid".to_string(),
            gk3::rigidity::RigidityKind::NotRigid(_) => "not_rigid".to_string(),
        },
        "reason": match &r.kind {
            gk3::rigidity::RigidityKind::NotRigid(why) => Some(why.to_string()),
            _ => None,
        },
        "invariant": r.invariant.as_ref().map(form),
        "b_rational": r.aux.b_rational,
        "omega_sq": r.aux.omega_sq.as_ref().map(scalar),
        "b_prime_canonical": r.aux.b_prime_canonical,
    })
}

fn witness(w: &SurveyWitness) -> Value {
    json!({
        "q": uint(w.q as usize),
        "p": [uint(w.p1 as usize), uint(w.p2 as usize)],
        "ab": [w.a.to_string(), w.b.to_string()],
        "kappa": w.kappa.map_or_else(|| "1".to_string(), |d| format!("sqrt({})", d.get())),
        "b_field": scalars(&w.b_field),
        "omega": scalars(&w.omega),
    })
}

pub fn survey(r: &SurveyReport) -> Value {
    let witnesses: Vec<Value> =
        r.per_form_witness.iter().map(|(f, w)| json!({ "form": form(f), "witness": witness(w) })).collect();
    json!({
        "achieved": r.achieved.iter().map(form).collect::<Vec<_>>(),
        "missing": r.missing.iter().map(form).collect::<Vec<_>>(),
        "samples": uint(r.samples),
        "beyond_bound": uint(r.beyond_bound),
        "violations": r.violations,
        "witnesses": witnesses,
    })
}

pub fn polarization(r: &PolarizationReport) -> Value {
    json!({
        "passed": r.passed(),
        "clauses": clauses(&r.clauses),
        "joint_index": r.joint_index.as_ref().map(int),
        "cross_gram": matrix(&r.cross_gram),
    })
}

pub fn dims(d: &ModuliDims) -> Value {
    json!([uint(d.a), uint(d.b)])
}

pub fn mirror(r: &MirrorReport) -> Value {
    json!({
        "verified": r.verified(),
        "k1_vs_l2": comparison(&r.k1_vs_l2),
        "l1_vs_k2": comparison(&r.l1_vs_k2),
        "moduli_dims": { "first": dims(&r.dims1), "second": dims(&r.dims2), "swapped": r.dims_swap },
        "ns1_vs_t2": comparison(&r.ns1_vs_t2),
        "t1_vs_ns2": comparison(&r.t1_vs_ns2),
        "cross_gram_first": matrix(&r.cross_gram1),
        "cross_gram_second": matrix(&r.cross_gram2),
    })
}

/// One "path: value" line per leaf, in key order.
pub fn text_lines(v: &Value) -> Vec<String> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push(format!("{prefix}: {s}")),
            other => out.push(format!("{prefix}: {other}")),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}
