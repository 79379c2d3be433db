// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{h2_pair_complex, h2_pair_real, mukai_lattice, mukai_pair_real, DEG0, DEG4, H2_OFFSET, H2_RANK, MUKAI_RANK};
use crate::error::{Error, Result};
use crate::exactmath::{merge_fields, quad_signature, IntMatrix, QuadComplex, QuadScalar, Rational, SqrtD};
use crate::lattice::{IntegralLattice, Sublattice};

/// A complex class in H*(K3) ⊗ Q(√d)[i], ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    coords: Vec<QuadComplex>,
    field: Option<SqrtD>,
}

fn field_of(coords: &[QuadComplex]) -> Result<Option<SqrtD>> {
    coords.iter().try_fold(None, |acc, c| merge_fields(acc, c.field()?))
}

impl CohClass {
    pub fn new(deg0: QuadComplex, deg2: Vec<QuadComplex>, deg4: QuadComplex) -> Result<Self> {
        if deg2.len() != H2_RANK {
            return Err(Error::Dimension(format!("degree-2 part has {} coordinates, expected {H2_RANK}", deg2.len())));
        }
        let mut coords = vec![deg0, deg4];
        coords.extend(deg2);
        Self::from_coords(coords)
    }

    pub fn from_coords(coords: Vec<QuadComplex>) -> Result<Self> {
        if coords.len() != MUKAI_RANK {
            return Err(Error::Dimension(format!("{} ambient coordinates, expected {MUKAI_RANK}", coords.len())));
        }
        let field = field_of(&coords)?;
        Ok(CohClass { coords, field })
    }

    /// re + i·im from two real ambient vectors.
    pub fn from_parts(re: &[QuadScalar], im: &[QuadScalar]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::Dimension("real and imaginary parts differ in length".into()));
        }
        Self::from_coords(re.iter().zip(im).map(|(a, b)| QuadComplex::new(a.clone(), b.clone())).collect())
    }

    /// e^{iω} = (1, iω, −ω²/2) for a real degree-2 class ω.
    pub fn exp_i(omega: &[QuadScalar]) -> Result<Self> {
        if omega.len() != H2_RANK {
            return Err(Error::Dimension(format!("ω has {} coordinates, expected {H2_RANK}", omega.len())));
        }
        let sq = h2_pair_real(omega, omega);
        let deg4 = QuadComplex::real(-sq.scale(&Rational::new(1.into(), 2.into())));
        Self::new(QuadComplex::one(), omega.iter().map(|w| QuadComplex::imag(w.clone())).collect(), deg4)
    }

    /// e^{B + iω}.
    pub fn exp_b_i(b: &BField, omega: &[QuadScalar]) -> Result<Self> {
        bfield_transform(b, &Self::exp_i(omega)?)
    }

    /// Class supported in degree 2.
    pub fn from_h2(deg2: Vec<QuadComplex>) -> Result<Self> {
        Self::new(QuadComplex::zero(), deg2, QuadComplex::zero())
    }

    pub fn coords(&self) -> &[QuadComplex] {
        &self.coords
    }

    pub fn field(&self) -> Option<SqrtD> {
        self.field
    }

    pub fn deg0(&self) -> &QuadComplex {
        &self.coords[DEG0]
    }

    pub fn deg4(&self) -> &QuadComplex {
        &self.coords[DEG4]
    }

    pub fn deg2(&self) -> &[QuadComplex] {
        &self.coords[H2_OFFSET..]
    }

    pub fn real_part(&self) -> Vec<QuadScalar> {
        self.coords.iter().map(|c| c.re.clone()).collect()
    }

    pub fn imag_part(&self) -> Vec<QuadScalar> {
        self.coords.iter().map(|c| c.im.clone()).collect()
    }

    pub fn conj(&self) -> Self {
        CohClass { coords: self.coords.iter().map(QuadComplex::conj).collect(), field: self.field }
    }

    pub fn scale(&self, lambda: &QuadComplex) -> Result<Self> {
        Self::from_coords(self.coords.iter().map(|c| c.checked_mul(lambda)).collect::<Result<_>>()?)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        Self::from_coords(self.coords.iter().zip(&o.coords).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?)
    }

    /// The four rational vectors P, Q, U, V with coordinates
    /// (P + Q√d) + i(U + V√d).
    pub fn components(&self) -> [Vec<Rational>; 4] {
        let get = |f: &dyn Fn(&QuadComplex) -> Rational| self.coords.iter().map(f).collect::<Vec<_>>();
        [
            get(&|c| c.re.a().clone()),
            get(&|c| c.re.b().clone()),
            get(&|c| c.im.a().clone()),
            get(&|c| c.im.b().clone()),
        ]
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg0 {}, deg2 [", self.deg0())?;
        let nz: Vec<String> = self
            .deg2()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{i}: {c}"))
            .collect();
        write!(f, "{}], deg4 {})", nz.join(", "), self.deg4())
    }
}

/// ⟨x, y⟩ = x₂·y₂ − x₀y₄ − x₄y₀, complex bilinear.
pub fn mukai_pairing(x: &CohClass, y: &CohClass) -> Result<QuadComplex> {
    merge_fields(x.field, y.field)?;
    let h2 = h2_pair_complex(x.deg2(), y.deg2());
    let cross = &(x.deg0() * y.deg4()) + &(x.deg4() * y.deg0());
    Ok(&h2 - &cross)
}

/// A real degree-2 class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BField {
    coords: Vec<QuadScalar>,
    field: Option<SqrtD>,
}

impl BField {
    pub fn new(coords: Vec<QuadScalar>) -> Result<Self> {
        if coords.len() != H2_RANK {
            return Err(Error::Dimension(format!("B has {} coordinates, expected {H2_RANK}", coords.len())));
        }
        let field = coords.iter().try_fold(None, |acc, c| merge_fields(acc, c.field()))?;
        Ok(BField { coords, field })
    }

    pub fn zero() -> Self {
        BField { coords: vec![QuadScalar::zero(); H2_RANK], field: None }
    }

    /// Accepts complex coordinates whose imaginary parts all vanish.
    pub fn from_complex(coords: &[QuadComplex]) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| !c.im.is_zero()) {
            return Err(Error::NotReal(i));
        }
        Self::new(coords.iter().map(|c| c.re.clone()).collect())
    }

    pub fn from_rational(coords: &[Rational]) -> Result<Self> {
        Self::new(coords.iter().cloned().map(QuadScalar::from_rational).collect())
    }

    pub fn coords(&self) -> &[QuadScalar] {
        &self.coords
    }

    pub fn field(&self) -> Option<SqrtD> {
        self.field
    }

    pub fn square(&self) -> QuadScalar {
        h2_pair_real(&self.coords, &self.coords)
    }

    pub fn checked_add(&self, o: &BField) -> Result<BField> {
        Self::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?)
    }

    pub fn neg(&self) -> BField {
        BField { coords: self.coords.iter().map(|c| -c).collect(), field: self.field }
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn integral(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| (c.is_rational() && c.a().is_integer()).then(|| c.a().to_integer()))
            .collect()
    }

    /// The 24×24 integer matrix M with e^B x = x·M (ambient row vectors).
    pub fn transform_matrix(&self) -> Result<IntMatrix> {
        let b = self.integral().ok_or(Error::NotIntegral)?;
        let gb = IntegralLattice::k3().gram().left_apply(&b);
        let b_sq: BigInt = gb.iter().zip(&b).map(|(x, y)| x * y).sum();
        let mut m = IntMatrix::identity(MUKAI_RANK);
        m.set(DEG0, DEG4, b_sq / 2);
        for i in 0..H2_RANK {
            m.set(DEG0, H2_OFFSET + i, b[i].clone());
            m.set(H2_OFFSET + i, DEG4, gb[i].clone());
        }
        Ok(m)
    }
}

/// e^B (r, D, s) = (r, D + rB, s + ⟨B, D⟩ + r·B²/2).
pub fn bfield_transform(b: &BField, x: &CohClass) -> Result<CohClass> {
    merge_fields(b.field, x.field)?;
    let r = x.deg0();
    let bc: Vec<QuadComplex> = b.coords.iter().map(|c| QuadComplex::real(c.clone())).collect();
    let half_sq = QuadComplex::real(b.square().scale(&Rational::new(1.into(), 2.into())));
    let deg2: Vec<QuadComplex> = x.deg2().iter().zip(&bc).map(|(d, bi)| d + &(r * bi)).collect();
    let deg4 = &(x.deg4() + &h2_pair_complex(&bc, x.deg2())) + &(r * &half_sq);
    CohClass::new(r.clone(), deg2, deg4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GcyType {
    A,
    B,
}

impl fmt::Display for GcyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GcyType::A => "A",
            GcyType::B => "B",
        })
    }
}

/// A validated generalized CY class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcyClass {
    class: CohClass,
    kind: GcyType,
    norm: QuadScalar,
}

impl GcyClass {
    pub fn class(&self) -> &CohClass {
        &self.class
    }

    pub fn kind(&self) -> GcyType {
        self.kind
    }

    /// ⟨φ, φ̄⟩ (positive).
    pub fn norm(&self) -> &QuadScalar {
        &self.norm
    }

    pub fn plane(&self) -> PeriodPlane {
        period_plane(&self.class).expect("a generalized CY class spans a positive plane")
    }
}

/// Checks ⟨φ,φ⟩ = 0 and ⟨φ,φ̄⟩ > 0; type A iff the degree-0 part is nonzero.
pub fn check_gcy(x: &CohClass) -> Result<GcyClass> {
    let pp = mukai_pairing(x, x)?;
    if !pp.is_zero() {
        return Err(Error::NotGcy { condition: "<phi,phi> = 0", value: pp.to_string() });
    }
    let pc = mukai_pairing(x, &x.conj())?;
    if !pc.im.is_zero() || !pc.re.is_positive() {
        return Err(Error::NotGcy { condition: "<phi,conj phi> > 0", value: pc.to_string() });
    }
    let kind = if x.deg0().is_zero() { GcyType::B } else { GcyType::A };
    Ok(GcyClass { class: x.clone(), kind, norm: pc.re })
}

/// Real and imaginary parts of a class and their Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodPlane {
    pub re: Vec<QuadScalar>,
    pub im: Vec<QuadScalar>,
    pub gram: [[QuadScalar; 2]; 2],
}

pub fn period_plane(x: &CohClass) -> Result<PeriodPlane> {
    let (re, im) = (x.real_part(), x.imag_part());
    let rr = mukai_pair_real(&re, &re);
    let ri = mukai_pair_real(&re, &im);
    let ii = mukai_pair_real(&im, &im);
    if !two_independent(&re, &im) {
        return Err(Error::DegeneratePlane);
    }
    let gram = [[rr.clone(), ri.clone()], [ri, ii]];
    let sig = quad_signature(&[gram[0].to_vec(), gram[1].to_vec()])?;
    if !sig.is_positive_definite() {
        return Err(Error::PlaneNotPositive(format!(
            "[[{},{}],[{},{}]]",
            gram[0][0], gram[0][1], gram[1][0], gram[1][1]
        )));
    }
    Ok(PeriodPlane { re, im, gram })
}

/// Q(√d)-linear independence of two vectors: some 2×2 minor is nonzero.
fn two_independent(x: &[QuadScalar], y: &[QuadScalar]) -> bool {
    let Some(p) = x.iter().position(|c| !c.is_zero()) else { return false };
    (0..x.len()).any(|j| !(&(&x[p] * &y[j]) - &(&x[j] * &y[p])).is_zero())
}

/// A symbolic generic class: L_φ is the declared support S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericClass {
    support: Sublattice,
    kind: GcyType,
}

impl GenericClass {
    pub fn new(support: Sublattice, kind: GcyType) -> Result<Self> {
        if support.ambient().rank() != MUKAI_RANK || **support.ambient() != *mukai_lattice() {
            return Err(Error::InvalidGeneric("support must lie in the Mukai lattice".into()));
        }
        let sig = support.lattice().signature();
        if sig.n_plus < 2 {
            return Err(Error::InvalidGeneric(format!(
                "support has signature {sig}; it must contain a positive 2-plane"
            )));
        }
        if kind == GcyType::A && (0..support.rank()).all(|i| support.basis().get(i, DEG0).is_zero()) {
            return Err(Error::InvalidGeneric("type A support must meet degree 0".into()));
        }
        Ok(GenericClass { support: support.canonical(), kind })
    }

    pub fn support(&self) -> &Sublattice {
        &self.support
    }

    pub fn kind(&self) -> GcyType {
        self.kind
    }
}
