// SPDX-License-Identifier: Apache-2.0

//! Input documents: a header fixing the scalar field and one payload.
//!
//! Integers are JSON integers or decimal strings, rationals are strings
//! "p/q" (or integers), and an element a + b√d of the header field is the
//! pair ["a", "b"]. Degree-2 vectors are dense lists of 22 entries or sparse
//! maps keyed by e1 f1 e2 f2 e3 f3 a1..a8 b1..b8 (the two E8 blocks).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use gk3::exactmath::{format_rational, parse_rational, IntMatrix, QuadComplex, QuadScalar, Rational, SqrtD};
use gk3::gk3::{validate_gk3, GeneralizedK3, Structure};
use gk3::lattice::{make_named, IntegralLattice, LatticeSpec, Sublattice};
use gk3::mirror::{FamilySpec, PolarizationData};
use gk3::mukai::{check_gcy, mukai_lattice, BField, CohClass, GcyType, GenericClass, H2_RANK};

use crate::CliError;

pub const H2_LABELS: [&str; H2_RANK] = [
    "e1", "f1", "e2", "f2", "e3", "f3", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "b1", "b2", "b3", "b4", "b5",
    "b6", "b7", "b8",
];

pub fn h2_index(label: &str) -> Option<usize> {
    H2_LABELS.iter().position(|l| *l == label)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Rational);

/// a or a + b√d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rat),
    Quad(Rat, Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Scalar,
    pub im: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum H2Vec<T> {
    Dense(Vec<T>),
    Sparse(BTreeMap<String, T>),
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.trim().parse::<BigInt>().map(Int).map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct RatVisitor;

impl<'de> Visitor<'de> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(Rational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(Rational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_rational(v).map(Rat).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

struct ScalarVisitor;

impl<'de> Visitor<'de> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational or a pair [a, b] meaning a + b*sqrt(d)")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        RatVisitor.visit_i64(v).map(Scalar::Rat)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        RatVisitor.visit_u64(v).map(Scalar::Rat)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        RatVisitor.visit_str(v).map(Scalar::Rat)
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Scalar, A::Error> {
        let a: Rat = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let b: Rat = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
        if seq.next_element::<de::IgnoredAny>()?.is_some() {
            return Err(de::Error::invalid_length(3, &self));
        }
        Ok(Scalar::Quad(a, b))
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rat(r) => r.serialize(s),
            Scalar::Quad(a, b) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(a)?;
                seq.serialize_element(b)?;
                seq.end()
            }
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat(Rational::zero()))
    }

    pub fn from_quad(q: &QuadScalar) -> Self {
        if q.is_rational() {
            Scalar::Rat(Rat(q.a().clone()))
        } else {
            Scalar::Quad(Rat(q.a().clone()), Rat(q.b().clone()))
        }
    }

    fn to_quad(&self, field: Option<SqrtD>, path: &str) -> Result<QuadScalar, CliError> {
        match self {
            Scalar::Rat(r) => Ok(QuadScalar::from_rational(r.0.clone())),
            Scalar::Quad(a, b) if b.0.is_zero() => Ok(QuadScalar::from_rational(a.0.clone())),
            Scalar::Quad(a, b) => match field {
                Some(d) => QuadScalar::new(a.0.clone(), b.0.clone(), Some(d)).map_err(|e| schema(path, e)),
                None => Err(schema(path, "irrational scalar needs header.sqrt_d")),
            },
        }
    }
}

struct ComplexVisitor;

impl<'de> Visitor<'de> for ComplexVisitor {
    type Value = Complex;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a scalar or an object {\"re\": scalar, \"im\": scalar}")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Complex, E> {
        ScalarVisitor.visit_i64(v).map(Complex::real)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Complex, E> {
        ScalarVisitor.visit_u64(v).map(Complex::real)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Complex, E> {
        ScalarVisitor.visit_str(v).map(Complex::real)
    }

    fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<Complex, A::Error> {
        ScalarVisitor.visit_seq(seq).map(Complex::real)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Complex, A::Error> {
        let (mut re, mut im) = (None, None);
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "re" if re.is_none() => re = Some(map.next_value()?),
                "im" if im.is_none() => im = Some(map.next_value()?),
                "re" | "im" => return Err(de::Error::custom(format!("duplicate field `{key}`"))),
                _ => return Err(de::Error::unknown_field(&key, &["re", "im"])),
            }
        }
        Ok(Complex { re: re.unwrap_or_else(Scalar::zero), im: im.unwrap_or_else(Scalar::zero) })
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ComplexVisitor)
    }
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.im == Scalar::zero() {
            return self.re.serialize(s);
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("im", &self.im)?;
        m.serialize_entry("re", &self.re)?;
        m.end()
    }
}

impl Complex {
    pub fn real(re: Scalar) -> Self {
        Complex { re, im: Scalar::zero() }
    }

    pub fn from_quad(c: &QuadComplex) -> Self {
        Complex { re: Scalar::from_quad(&c.re), im: Scalar::from_quad(&c.im) }
    }

    fn to_quad(&self, field: Option<SqrtD>, path: &str) -> Result<QuadComplex, CliError> {
        Ok(QuadComplex::new(self.re.to_quad(field, &format!("{path}.re"))?, self.im.to_quad(field, &format!("{path}.im"))?))
    }
}

struct H2Visitor<T>(std::marker::PhantomData<T>);

impl<'de, T: Deserialize<'de>> Visitor<'de> for H2Visitor<T> {
    type Value = H2Vec<T>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a list of 22 entries or a map keyed by e1..f3, a1..a8, b1..b8")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<H2Vec<T>, A::Error> {
        let mut v = Vec::new();
        while let Some(x) = seq.next_element()? {
            v.push(x);
        }
        if v.len() != H2_RANK {
            return Err(de::Error::invalid_length(v.len(), &self));
        }
        Ok(H2Vec::Dense(v))
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<H2Vec<T>, A::Error> {
        let mut out = BTreeMap::new();
        while let Some(key) = map.next_key::<String>()? {
            if h2_index(&key).is_none() {
                return Err(de::Error::unknown_field(&key, &H2_LABELS));
            }
            if out.contains_key(&key) {
                return Err(de::Error::custom(format!("duplicate field `{key}`")));
            }
            out.insert(key, map.next_value()?);
        }
        Ok(H2Vec::Sparse(out))
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for H2Vec<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(H2Visitor(std::marker::PhantomData))
    }
}

impl<T: Serialize> Serialize for H2Vec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            H2Vec::Dense(v) => v.serialize(s),
            H2Vec::Sparse(m) => m.serialize(s),
        }
    }
}

impl<T: Clone> H2Vec<T> {
    fn dense(&self, zero: T) -> Vec<(String, T)> {
        match self {
            H2Vec::Dense(v) => v.iter().enumerate().map(|(i, x)| (format!("[{i}]"), x.clone())).collect(),
            H2Vec::Sparse(m) => {
                let mut out: Vec<(String, T)> = H2_LABELS.iter().map(|l| (format!(".{l}"), zero.clone())).collect();
                for (k, x) in m {
                    out[h2_index(k).expect("checked on parse")].1 = x.clone();
                }
                out
            }
        }
    }
}

fn schema(path: &str, msg: impl fmt::Display) -> CliError {
    CliError::Schema(format!("{path}: {msg}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Header {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_d: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LatticeDoc {
    U,
    #[serde(rename = "e8minus")]
    E8Minus,
    K3,
    Mukai,
    Diag(Vec<Int>),
    Gram(Vec<Vec<Int>>),
    Sum(Vec<LatticeDoc>),
    Rescale { lattice: Box<LatticeDoc>, by: Int },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SublatticeDoc {
    pub ambient: LatticeDoc,
    pub basis: Vec<Vec<Int>>,
}

/// Explicit coordinates, or λ·e^{B + iω}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ClassDoc {
    Coords { deg0: Complex, deg2: H2Vec<Complex>, deg4: Complex },
    Exp {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<H2Vec<Scalar>>,
        omega: H2Vec<Scalar>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<Complex>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeDoc {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericDoc {
    /// Rows in Mukai coordinates (deg0, deg4, then H² in label order).
    pub support: Vec<Vec<Int>>,
    #[serde(rename = "type")]
    pub kind: TypeDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MemberDoc {
    Explicit(ClassDoc),
    Generic(GenericDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub phi_a: MemberDoc,
    pub phi_b: MemberDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarizationDoc {
    pub k: Vec<Vec<Int>>,
    pub l: Vec<Vec<Int>>,
    pub witness_a: MemberDoc,
    pub witness_b: MemberDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub polarization: PolarizationDoc,
    pub member: PairDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformDoc {
    pub b: H2Vec<Scalar>,
    pub class: ClassDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Body {
    Lattice(LatticeDoc),
    Sublattice(SublatticeDoc),
    Class(ClassDoc),
    Classes(Vec<ClassDoc>),
    Transform(TransformDoc),
    Pair(PairDoc),
    Polarization(PolarizationDoc),
    Family(FamilyDoc),
    Families(Vec<FamilyDoc>),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Lattice(_) => "lattice",
            Body::Sublattice(_) => "sublattice",
            Body::Class(_) => "class",
            Body::Classes(_) => "classes",
            Body::Transform(_) => "transform",
            Body::Pair(_) => "pair",
            Body::Polarization(_) => "polarization",
            Body::Family(_) => "family",
            Body::Families(_) => "families",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub header: Header,
    pub body: Body,
}

/// Parses and schema-checks a document. Errors carry the JSON path of the
/// first violation.
pub fn validate_document(text: &str) -> Result<Document, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut *de).map_err(|e| {
        let path = match e.path().to_string() {
            p if p == "." || p == "?" => "document".to_string(),
            p => p,
        };
        CliError::Schema(format!("{path}: {}", e.into_inner()))
    })?;
    de.end().map_err(|e| schema("document", e))?;
    doc.field()?;
    Ok(doc)
}

fn ints(row: &[Int]) -> Vec<BigInt> {
    row.iter().map(|x| x.0.clone()).collect()
}

fn int_matrix(rows: &[Vec<Int>], cols: Option<usize>, path: &str) -> Result<IntMatrix, CliError> {
    let cols = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(schema(&format!("{path}[{i}]"), format!("expected {cols} entries")));
    }
    IntMatrix::from_rows(rows.iter().map(|r| ints(r)).collect(), cols).map_err(|e| schema(path, e))
}

impl Document {
    pub fn field(&self) -> Result<Option<SqrtD>, CliError> {
        self.header.sqrt_d.map(|d| SqrtD::new(d).map_err(|e| schema("header.sqrt_d", e))).transpose()
    }
}

impl LatticeDoc {
    fn spec(&self, path: &str) -> Result<LatticeSpec, CliError> {
        Ok(match self {
            LatticeDoc::U => LatticeSpec::U,
            LatticeDoc::E8Minus => LatticeSpec::E8Minus,
            LatticeDoc::K3 => LatticeSpec::K3,
            LatticeDoc::Mukai => LatticeSpec::Mukai,
            LatticeDoc::Diag(d) => LatticeSpec::Diag(ints(d)),
            LatticeDoc::Gram(g) => LatticeSpec::Gram(int_matrix(g, Some(g.len()), &format!("{path}.gram"))?),
            LatticeDoc::Sum(parts) => LatticeSpec::Sum(
                parts.iter().enumerate().map(|(i, p)| p.spec(&format!("{path}.sum[{i}]"))).collect::<Result<_, _>>()?,
            ),
            LatticeDoc::Rescale { lattice, by } => {
                LatticeSpec::Rescale(Box::new(lattice.spec(&format!("{path}.rescale.lattice"))?), by.0.clone())
            }
        })
    }

    pub fn build(&self, path: &str) -> Result<IntegralLattice, CliError> {
        Ok(make_named(&self.spec(path)?)?)
    }
}

impl SublatticeDoc {
    pub fn build(&self, path: &str) -> Result<Sublattice, CliError> {
        let amb = std::sync::Arc::new(self.ambient.build(&format!("{path}.ambient"))?);
        let basis = int_matrix(&self.basis, Some(amb.rank()), &format!("{path}.basis"))?;
        Ok(Sublattice::new(amb, basis)?)
    }
}

fn h2_scalars(v: &H2Vec<Scalar>, field: Option<SqrtD>, path: &str) -> Result<Vec<QuadScalar>, CliError> {
    v.dense(Scalar::zero()).iter().map(|(k, x)| x.to_quad(field, &format!("{path}{k}"))).collect()
}

impl ClassDoc {
    pub fn build(&self, field: Option<SqrtD>, path: &str) -> Result<CohClass, CliError> {
        match self {
            ClassDoc::Coords { deg0, deg2, deg4 } => {
                let d2 = deg2
                    .dense(Complex::real(Scalar::zero()))
                    .iter()
                    .map(|(k, x)| x.to_quad(field, &format!("{path}.coords.deg2{k}")))
                    .collect::<Result<_, _>>()?;
                Ok(CohClass::new(
                    deg0.to_quad(field, &format!("{path}.coords.deg0"))?,
                    d2,
                    deg4.to_quad(field, &format!("{path}.coords.deg4"))?,
                )?)
            }
            ClassDoc::Exp { b, omega, lambda } => {
                let w = h2_scalars(omega, field, &format!("{path}.exp.omega"))?;
                let bf = match b {
                    Some(b) => BField::new(h2_scalars(b, field, &format!("{path}.exp.b"))?)?,
                    None => BField::zero(),
                };
                let c = CohClass::exp_b_i(&bf, &w)?;
                match lambda {
                    Some(l) => Ok(c.scale(&l.to_quad(field, &format!("{path}.exp.lambda"))?)?),
                    None => Ok(c),
                }
            }
        }
    }
}

impl TransformDoc {
    pub fn build(&self, field: Option<SqrtD>, path: &str) -> Result<(BField, CohClass), CliError> {
        let b = BField::new(h2_scalars(&self.b, field, &format!("{path}.b"))?)?;
        Ok((b, self.class.build(field, &format!("{path}.class"))?))
    }
}

fn mukai_sublattice(rows: &[Vec<Int>], path: &str) -> Result<Sublattice, CliError> {
    let m = mukai_lattice();
    let basis = int_matrix(rows, Some(m.rank()), path)?;
    Ok(Sublattice::new(m, basis)?)
}

impl MemberDoc {
    pub fn build(&self, field: Option<SqrtD>, path: &str) -> Result<Structure, CliError> {
        match self {
            MemberDoc::Explicit(c) => Ok(Structure::Explicit(check_gcy(&c.build(field, &format!("{path}.explicit"))?)?)),
            MemberDoc::Generic(g) => {
                let s = mukai_sublattice(&g.support, &format!("{path}.generic.support"))?;
                let kind = match g.kind {
                    TypeDoc::A => GcyType::A,
                    TypeDoc::B => GcyType::B,
                };
                Ok(Structure::Generic(GenericClass::new(s, kind)?))
            }
        }
    }
}

impl PairDoc {
    pub fn build(&self, field: Option<SqrtD>, path: &str) -> Result<GeneralizedK3, CliError> {
        let a = self.phi_a.build(field, &format!("{path}.phi_a"))?;
        let b = self.phi_b.build(field, &format!("{path}.phi_b"))?;
        Ok(validate_gk3(a, b)?)
    }
}

impl PolarizationDoc {
    pub fn build(&self, field: Option<SqrtD>, path: &str) -> Result<PolarizationData, CliError> {
        Ok(PolarizationData {
            k: mukai_sublattice(&self.k, &format!("{path}.k"))?,
            l: mukai_sublattice(&self.l, &format!("{path}.l"))?,
            witness_a: self.witness_a.build(field, &format!("{path}.witness_a"))?,
            witness_b: self.witness_b.build(field, &format!("{path}.witness_b"))?,
        })
    }
}

impl FamilyDoc {
    pub fn build(&self, field: Option<SqrtD>, path: &str) -> Result<FamilySpec, CliError> {
        let p = self.polarization.build(field, &format!("{path}.polarization"))?;
        let x = self.member.build(field, &format!("{path}.member"))?;
        Ok(FamilySpec::new(p, x)?)
    }
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(Int).collect()).collect()
}

pub fn class_doc(c: &CohClass) -> ClassDoc {
    ClassDoc::Coords {
        deg0: Complex::from_quad(c.deg0()),
        deg2: H2Vec::Dense(c.deg2().iter().map(Complex::from_quad).collect()),
        deg4: Complex::from_quad(c.deg4()),
    }
}

fn member_doc(s: &Structure) -> MemberDoc {
    match s {
        Structure::Explicit(c) => MemberDoc::Explicit(class_doc(c.class())),
        Structure::Generic(g) => MemberDoc::Generic(GenericDoc {
            support: int_rows(g.support().basis()),
            kind: match g.kind() {
                GcyType::A => TypeDoc::A,
                GcyType::B => TypeDoc::B,
            },
        }),
    }
}

/// Input document describing a family, for writing sample files.
pub fn family_doc(f: &FamilySpec) -> FamilyDoc {
    let p = f.polarization();
    FamilyDoc {
        polarization: PolarizationDoc {
            k: int_rows(p.k.basis()),
            l: int_rows(p.l.basis()),
            witness_a: member_doc(&p.witness_a),
            witness_b: member_doc(&p.witness_b),
        },
        member: PairDoc { phi_a: member_doc(f.member().phi_a()), phi_b: member_doc(f.member().phi_b()) },
    }
}

/// The field of a family: the first irrational scalar it uses.
pub fn family_field(f: &FamilySpec) -> Option<SqrtD> {
    let m = f.member();
    let p = f.polarization();
    [m.phi_a(), m.phi_b(), &p.witness_a, &p.witness_b].into_iter().find_map(|s| s.as_explicit()?.class().field())
}
