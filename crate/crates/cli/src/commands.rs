// SPDX-License-Identifier: Apache-2.0

use clap::{Subcommand, ValueEnum};
use serde_json::{json, Value};

use gk3::exactmath::SqrtD;
use gk3::gk3::{ns_t_tilde, signature_profile, GeneralizedK3};
use gk3::lattice::{
    find_hyperbolic_split, gauss_reduce2, IntegralLattice, SplitOutcome, SplitSearch, Sublattice,
};
use gk3::mirror::{
    build_si_mirror, check_polarization, classical_mirror, dolgachev_mirror, mirror_check, moduli_dims,
    DolgachevOutcome, FamilySpec, MirrorPair,
};
use gk3::mukai::{bfield_transform, check_gcy, l_psi, mukai_pairing, period_plane, CohClass};
use gk3::rigidity::{
    enumerate_reduced_forms, is_complex_rigid, is_kahler_rigid, kahler_rigid_survey, SurveyAmbient, SurveyConfig,
};
use gk3::Execution;

use crate::document::{class_doc, family_doc, family_field, validate_document, Body, Document, Header};
use crate::report;
use crate::{CliError, Input};

type Out = Result<Value, CliError>;

fn load(input: &Input) -> Result<(Document, Option<SqrtD>), CliError> {
    let doc = validate_document(&input.read()?)?;
    let field = doc.field()?;
    Ok((doc, field))
}

fn wrong_body(found: &Body, want: &str) -> CliError {
    CliError::Schema(format!("body: expected {want}, found {}", found.kind()))
}

fn lattice_of(input: &Input) -> Result<(IntegralLattice, Option<Sublattice>), CliError> {
    let (doc, _) = load(input)?;
    match &doc.body {
        Body::Lattice(l) => Ok((l.build("body.lattice")?, None)),
        Body::Sublattice(s) => {
            let s = s.build("body.sublattice")?;
            Ok((s.lattice(), Some(s)))
        }
        other => Err(wrong_body(other, "lattice or sublattice")),
    }
}

fn class_of(input: &Input) -> Result<CohClass, CliError> {
    let (doc, field) = load(input)?;
    match &doc.body {
        Body::Class(c) => c.build(field, "body.class"),
        other => Err(wrong_body(other, "class")),
    }
}

fn pair_of(input: &Input) -> Result<GeneralizedK3, CliError> {
    let (doc, field) = load(input)?;
    match &doc.body {
        Body::Pair(p) => p.build(field, "body.pair"),
        other => Err(wrong_body(other, "pair")),
    }
}

fn lattice_report(l: &IntegralLattice) -> Value {
    json!({ "gram": report::matrix(l.gram()), "det": report::int(&l.det()), "summary": report::summary(&l.summary()) })
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Rank, signature, parity and discriminant group.
    Info(Input),
    /// Gauss-reduce a rank-2 positive definite lattice.
    Reduce2(Input),
    /// Orthogonal complement of a sublattice.
    Complement(Input),
    /// Split off a hyperbolic plane U.
    SplitU {
        #[command(flatten)]
        input: Input,
        /// Coordinate bound of the isotropic search.
        #[arg(long, default_value_t = 3)]
        radius: u32,
        /// L1 weight bound (default 2 * radius).
        #[arg(long)]
        max_weight: Option<u32>,
    },
}

fn search(radius: u32, max_weight: Option<u32>) -> SplitSearch {
    SplitSearch { radius, max_weight: max_weight.unwrap_or(2 * radius) }
}

pub fn lattice(cmd: LatticeCmd) -> Out {
    match cmd {
        LatticeCmd::Info(input) => {
            let (l, sub) = lattice_of(&input)?;
            let mut v = lattice_report(&l);
            if let Some(s) = sub {
                v["embedding"] = json!({
                    "basis": report::matrix(s.basis()),
                    "primitive": s.is_primitive(),
                    "index_in_saturation": report::int(&s.index_in_saturation()),
                    "ambient": report::summary(&s.ambient().summary()),
                });
            }
            Ok(v)
        }
        LatticeCmd::Reduce2(input) => {
            let (l, _) = lattice_of(&input)?;
            let r = gauss_reduce2(&l)?;
            Ok(json!({ "form": report::form(&r.form), "transform": report::matrix(&r.transform) }))
        }
        LatticeCmd::Complement(input) => {
            let (doc, _) = load(&input)?;
            let Body::Sublattice(s) = &doc.body else { return Err(wrong_body(&doc.body, "sublattice")) };
            let s = s.build("body.sublattice")?;
            Ok(json!({ "complement": report::sublattice(&s.ortho_complement()?) }))
        }
        LatticeCmd::SplitU { input, radius, max_weight } => {
            let (l, _) = lattice_of(&input)?;
            Ok(match find_hyperbolic_split(&l, &search(radius, max_weight), Execution::Sequential)? {
                SplitOutcome::Split(s) => json!({
                    "result": "split",
                    "e": s.e.iter().map(report::int).collect::<Vec<_>>(),
                    "f": s.f.iter().map(report::int).collect::<Vec<_>>(),
                    "complement": {
                        "basis": report::matrix(&s.complement_basis),
                        "gram": report::matrix(s.complement.gram()),
                        "summary": report::summary(&s.complement.summary()),
                    },
                }),
                SplitOutcome::NoneFound(why) => {
                    json!({ "result": "none", "reason": why.code(), "message": why.to_string() })
                }
            })
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ClassCmd {
    /// Check the generalized CY conditions and report the type.
    Check(Input),
    /// Mukai pairing of two classes (body "classes").
    Pairing(Input),
    /// Apply e^B (body "transform").
    Bfield(Input),
    /// The saturated lattice L_psi.
    Lpsi(Input),
    /// The real 2-plane spanned by Re and Im.
    Plane(Input),
}

pub fn class(cmd: ClassCmd) -> Out {
    match cmd {
        ClassCmd::Check(input) => {
            let c = check_gcy(&class_of(&input)?)?;
            Ok(json!({
                "gcy": true,
                "type": c.kind().to_string(),
                "norm": report::scalar(c.norm()),
                "field": c.class().field().map(|d| d.get().to_string()),
            }))
        }
        ClassCmd::Pairing(input) => {
            let (doc, field) = load(&input)?;
            let Body::Classes(cs) = &doc.body else { return Err(wrong_body(&doc.body, "classes")) };
            if cs.len() != 2 {
                return Err(CliError::Schema(format!("body.classes: expected 2 classes, found {}", cs.len())));
            }
            let x = cs[0].build(field, "body.classes[0]")?;
            let y = cs[1].build(field, "body.classes[1]")?;
            Ok(json!({ "pairing": report::complex(&mukai_pairing(&x, &y)?) }))
        }
        ClassCmd::Bfield(input) => {
            let (doc, field) = load(&input)?;
            let Body::Transform(t) = &doc.body else { return Err(wrong_body(&doc.body, "transform")) };
            let (b, x) = t.build(field, "body.transform")?;
            let y = bfield_transform(&b, &x)?;
            let out = Document { header: Header { sqrt_d: y.field().map(SqrtD::get) }, body: Body::Class(class_doc(&y)) };
            Ok(serde_json::to_value(out).expect("documents serialize"))
        }
        ClassCmd::Lpsi(input) => {
            let l = l_psi(&class_of(&input)?);
            let reduced = gauss_reduce2(&l.lattice()).ok().map(|r| report::form(&r.form));
            let mut v = report::sublattice(&l);
            v["reduced"] = reduced.into();
            Ok(v)
        }
        ClassCmd::Plane(input) => {
            let p = period_plane(&class_of(&input)?)?;
            let gram: Vec<Value> = p.gram.iter().map(|r| json!([report::scalar(&r[0]), report::scalar(&r[1])])).collect();
            Ok(json!({ "re": report::scalars(&p.re), "im": report::scalars(&p.im), "gram": gram }))
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Gk3Cmd {
    /// Validate (phi_a, phi_b) as a generalized K3.
    Validate(Input),
    /// The lattices NS~ and T~.
    NsT(Input),
    /// HyperKähler case analysis of an explicit pair.
    ClassifyHk(Input),
    /// Signatures of NS~, T~ and their intersection.
    Profile(Input),
}

pub fn gk3(cmd: Gk3Cmd) -> Out {
    match cmd {
        Gk3Cmd::Validate(input) => {
            let x = pair_of(&input)?;
            let pi = x.pi().map(|p| {
                let gram: Vec<Value> = p.gram.iter().map(|r| report::scalars(r)).collect();
                json!({ "gram": gram, "signature": report::signature(&p.signature) })
            });
            Ok(json!({ "status": x.status().to_string(), "pi": pi }))
        }
        Gk3Cmd::NsT(input) => Ok(report::ns_t(&ns_t_tilde(&pair_of(&input)?))),
        Gk3Cmd::ClassifyHk(input) => Ok(report::classification(&pair_of(&input)?.classify()?)),
        Gk3Cmd::Profile(input) => Ok(report::profile(&signature_profile(&pair_of(&input)?))),
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AmbientArg {
    U,
    TwoSquares,
    A2,
}

#[derive(Subcommand, Debug)]
pub enum RigidCmd {
    /// Complex rigidity of a pair and its rank-2 invariant.
    Complex(Input),
    /// Kähler rigidity of a pair and its rank-2 invariant.
    Kahler(Input),
    /// Enumerate Kähler rigid classes over a rank-2 ambient.
    Survey {
        #[arg(long, default_value_t = 12)]
        max_det: u64,
        #[arg(long, default_value_t = 2)]
        denom_bound: u32,
        /// Irrational scalings sqrt(d); repeatable.
        #[arg(long = "sqrt-d", default_values_t = [2u64, 3])]
        sqrt_d: Vec<u64>,
        #[arg(long, value_enum, default_value = "u")]
        ambient: AmbientArg,
        #[arg(long, default_value_t = 3)]
        coeff_bound: i64,
        /// Run without the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Even reduced rank-2 positive definite forms up to a determinant.
    Forms {
        #[arg(long, default_value_t = 12)]
        max_det: u64,
    },
}

pub fn rigid(cmd: RigidCmd) -> Out {
    match cmd {
        RigidCmd::Complex(input) => Ok(report::rigidity(&is_complex_rigid(&pair_of(&input)?)?)),
        RigidCmd::Kahler(input) => Ok(report::rigidity(&is_kahler_rigid(&pair_of(&input)?)?)),
        RigidCmd::Survey { max_det, denom_bound, sqrt_d, ambient, coeff_bound, sequential } => {
            let sqrt_d = sqrt_d.into_iter().map(SqrtD::new).collect::<gk3::Result<Vec<_>>>()?;
            let ambient = match ambient {
                AmbientArg::U => SurveyAmbient::HyperbolicPlane,
                AmbientArg::TwoSquares => SurveyAmbient::TwoSquares,
                AmbientArg::A2 => SurveyAmbient::A2,
            };
            let config = SurveyConfig { max_det, denominator_bound: denom_bound, sqrt_d, ambient, coeff_bound };
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let r = kahler_rigid_survey(&config, exec);
            let mut v = report::survey(&r);
            v["config"] = json!({
                "max_det": max_det.to_string(),
                "denom_bound": denom_bound.to_string(),
                "sqrt_d": config.sqrt_d.iter().map(|d| d.get().to_string()).collect::<Vec<_>>(),
                "ambient": config.ambient.name(),
                "coeff_bound": coeff_bound.to_string(),
            });
            Ok(v)
        }
        RigidCmd::Forms { max_det } => Ok(json!({
            "max_det": max_det.to_string(),
            "forms": enumerate_reduced_forms(max_det).iter().map(report::form).collect::<Vec<_>>(),
        })),
    }
}

#[derive(Subcommand, Debug)]
pub enum MirrorCmd {
    /// Polarization check of a family, or mirror check of two families.
    Check(Input),
    /// Split K'^perp = N + U for K' in H^2(Z).
    Dolgachev {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long)]
        max_weight: Option<u32>,
    },
    /// The Shioda-Inose mirror families for <2n>^2.
    ShiodaInose {
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// Print the two families as an input document instead of a report.
        #[arg(long)]
        documents: bool,
    },
    /// The mirror pair for the degree-2n polarization <2n>.
    Classical {
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long)]
        documents: bool,
    },
}

fn family_report(f: &crate::document::FamilyDoc, field: Option<SqrtD>, path: &str) -> Result<Value, CliError> {
    let p = f.polarization.build(field, &format!("{path}.polarization"))?;
    let x = f.member.build(field, &format!("{path}.member"))?;
    let r = check_polarization(&p, &x)?;
    Ok(json!({ "polarization": report::polarization(&r), "moduli_dims": report::dims(&moduli_dims(&p)?) }))
}

fn pair_report(m: &MirrorPair) -> Value {
    let x = ns_t_tilde(m.family.member());
    let t = gauss_reduce2(&x.t.lattice()).ok().map(|r| report::form(&r.form));
    json!({
        "verified": m.verified(),
        "mirror": report::mirror(&m.check),
        "verification": report::clauses(&m.verification),
        "t_x_reduced": t,
        "ns_x": report::summary(&x.ns.lattice().summary()),
        "moduli_dims": { "family": report::dims(&m.family.dims()), "dual": report::dims(&m.dual.dims()) },
    })
}

fn documents(a: &FamilySpec, b: &FamilySpec) -> Value {
    let field = family_field(a).or_else(|| family_field(b));
    let doc = Document {
        header: Header { sqrt_d: field.map(SqrtD::get) },
        body: Body::Families(vec![family_doc(a), family_doc(b)]),
    };
    serde_json::to_value(doc).expect("documents serialize")
}

pub fn mirror(cmd: MirrorCmd) -> Out {
    match cmd {
        MirrorCmd::Check(input) => {
            let (doc, field) = load(&input)?;
            match &doc.body {
                Body::Family(f) => family_report(f, field, "body.family"),
                Body::Families(fs) if fs.len() == 2 => {
                    let first = family_report(&fs[0], field, "body.families[0]")?;
                    let second = family_report(&fs[1], field, "body.families[1]")?;
                    let f1 = fs[0].build(field, "body.families[0]")?;
                    let f2 = fs[1].build(field, "body.families[1]")?;
                    Ok(json!({ "first": first, "second": second, "mirror": report::mirror(&mirror_check(&f1, &f2)) }))
                }
                Body::Families(fs) => {
                    Err(CliError::Schema(format!("body.families: expected 2 families, found {}", fs.len())))
                }
                other => Err(wrong_body(other, "family or families")),
            }
        }
        MirrorCmd::Dolgachev { input, radius, max_weight } => {
            let (doc, _) = load(&input)?;
            let Body::Sublattice(s) = &doc.body else { return Err(wrong_body(&doc.body, "sublattice")) };
            let kp = s.build("body.sublattice")?;
            Ok(match dolgachev_mirror(&kp, &search(radius, max_weight), Execution::Sequential)? {
                DolgachevOutcome::Mirror(m) => json!({
                    "result": "mirror",
                    "complement": report::sublattice(&m.complement),
                    "n": { "gram": report::matrix(m.n.gram()), "summary": report::summary(&m.n.summary()) },
                    "n_embedded": report::matrix(m.n_embedded.basis()),
                    "mirror_transcendental": report::sublattice(&m.mirror_transcendental),
                    "duality": report::comparison(&m.duality),
                    "resplit": report::comparison(&m.resplit),
                }),
                DolgachevOutcome::Failure(f) => json!({ "result": "failure", "reason": f.code(), "message": f.to_string() }),
            })
        }
        MirrorCmd::ShiodaInose { n, documents: docs } => {
            let m = build_si_mirror(n)?;
            Ok(if docs { documents(&m.family, &m.dual) } else { pair_report(&m) })
        }
        MirrorCmd::Classical { n, documents: docs } => {
            let m = classical_mirror(n)?;
            Ok(if docs { documents(&m.family, &m.dual) } else { pair_report(&m) })
        }
    }
}
