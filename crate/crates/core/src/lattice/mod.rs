// SPDX-License-Identifier: Apache-2.0

//! Integral lattices given by Gram matrices, named constructors, sublattices
//! of a fixed ambient, discriminant groups, rank-2 Gauss reduction and
//! hyperbolic-plane splitting.
//!
//! The E8 block is always the *negative* definite root lattice (negated
//! Cartan matrix). With that sign the K3 lattice U³ ⊕ E8(−1)² has signature
//! (3,19) and the Mukai lattice has signature (4,20), which is what every
//! signature statement about these lattices requires.

mod reduce;
mod split;
mod sublattice;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{snf, sym_signature, IntMatrix, SymDiagResult};

pub use reduce::{enumerate_even_reduced_forms, gauss_reduce2, ReducedForm, Reduction2};
pub use split::{find_hyperbolic_split, HyperbolicSplit, NoSplitReason, SplitOutcome, SplitSearch};
pub use sublattice::Sublattice;

/// A finite-rank free Z-module with a symmetric integer Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: IntMatrix,
    name: Option<String>,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(IntegralLattice { gram, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// All diagonal entries even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| !self.gram.get(i, i).bit(0))
    }

    pub fn signature(&self) -> SymDiagResult {
        sym_signature(&self.gram).expect("gram is symmetric by construction")
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("gram is square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// ⟨x, y⟩ for coordinate vectors.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gx = self.gram.left_apply(x);
        gx.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn discriminant(&self) -> Result<DiscriminantGroup> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate("discriminant group needs a nondegenerate Gram".into()));
        }
        Ok(DiscriminantGroup { divisors: snf(&self.gram).into_iter().filter(|d| d > &BigInt::one()).collect() })
    }

    pub fn summary(&self) -> LatticeSummary {
        LatticeSummary {
            rank: self.rank(),
            signature: self.signature(),
            even: self.is_even(),
            discriminant: self.discriminant().ok(),
        }
    }

    pub fn hyperbolic_plane() -> Self {
        IntegralLattice { gram: IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]), name: Some("U".into()) }
    }

    /// Negated E8 Cartan matrix (Bourbaki numbering).
    pub fn e8_minus() -> Self {
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            g.set(i, i, BigInt::from(-2));
        }
        for (i, j) in edges {
            g.set(i, j, BigInt::one());
            g.set(j, i, BigInt::one());
        }
        IntegralLattice { gram: g, name: Some("E8minus".into()) }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut g = IntMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            g.set(i, i, e.clone());
        }
        let label = entries.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        IntegralLattice { gram: g, name: Some(format!("<{label}>")) }
    }

    pub fn direct_sum(parts: &[&IntegralLattice]) -> Self {
        let grams: Vec<&IntMatrix> = parts.iter().map(|l| &l.gram).collect();
        IntegralLattice { gram: IntMatrix::block_diag(&grams), name: None }
    }

    pub fn rescale(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::ZeroRescale);
        }
        Ok(IntegralLattice { gram: self.gram.scale(k), name: None })
    }

    /// Λ_K3 = U³ ⊕ E8(−1)²: rank 22, signature (3,19), even unimodular.
    pub fn k3() -> Self {
        let u = Self::hyperbolic_plane();
        let e = Self::e8_minus();
        Self::direct_sum(&[&u, &u, &u, &e, &e]).with_name("K3")
    }

    /// The Mukai lattice in the basis (deg-0 unit, deg-4 unit, Λ_K3 basis);
    /// degrees 0 and 4 pair to −1.
    pub fn mukai() -> Self {
        let top = IntMatrix::from_i64(2, 2, &[0, -1, -1, 0]);
        let k3 = Self::k3();
        IntegralLattice { gram: IntMatrix::block_diag(&[&top, &k3.gram]), name: Some("Mukai".into()) }
    }
}

impl fmt::Display for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.gram),
        }
    }
}

/// Recursive description of a named lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    U,
    E8Minus,
    K3,
    Mukai,
    Diag(Vec<BigInt>),
    Sum(Vec<LatticeSpec>),
    Rescale(Box<LatticeSpec>, BigInt),
    Gram(IntMatrix),
}

pub fn make_named(spec: &LatticeSpec) -> Result<IntegralLattice> {
    Ok(match spec {
        LatticeSpec::U => IntegralLattice::hyperbolic_plane(),
        LatticeSpec::E8Minus => IntegralLattice::e8_minus(),
        LatticeSpec::K3 => IntegralLattice::k3(),
        LatticeSpec::Mukai => IntegralLattice::mukai(),
        LatticeSpec::Diag(d) => IntegralLattice::diagonal(d),
        LatticeSpec::Sum(parts) => {
            let ls = parts.iter().map(make_named).collect::<Result<Vec<_>>>()?;
            IntegralLattice::direct_sum(&ls.iter().collect::<Vec<_>>())
        }
        LatticeSpec::Rescale(of, k) => make_named(of)?.rescale(k)?,
        LatticeSpec::Gram(g) => IntegralLattice::new(g.clone())?,
    })
}

/// Rank, inertia, parity and discriminant group (None when degenerate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSummary {
    pub rank: usize,
    pub signature: SymDiagResult,
    pub even: bool,
    pub discriminant: Option<DiscriminantGroup>,
}

/// Elementary divisors > 1 of the discriminant group Λ*/Λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscriminantGroup {
    pub divisors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.divisors.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", ds.join(","))
    }
}

/// Outcome of comparing two lattices. Only rank-2 positive definite
/// lattices are decided up to isometry; everything else stops at genus-level
/// invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeComparison {
    Equal2,
    GenusInvariantsMatch,
    Distinguished(String),
}

impl LatticeComparison {
    pub fn is_match(&self) -> bool {
        !matches!(self, LatticeComparison::Distinguished(_))
    }
}

fn is_pos_def_rank2(l: &IntegralLattice) -> bool {
    l.rank() == 2 && l.signature() == SymDiagResult::new(2, 0, 0)
}

pub fn invariants_match(l1: &IntegralLattice, l2: &IntegralLattice) -> LatticeComparison {
    if is_pos_def_rank2(l1) && is_pos_def_rank2(l2) {
        let r1 = gauss_reduce2(l1).expect("checked rank-2 positive definite");
        let r2 = gauss_reduce2(l2).expect("checked rank-2 positive definite");
        return if r1.form == r2.form {
            LatticeComparison::Equal2
        } else {
            LatticeComparison::Distinguished(format!("reduced form {} vs {}", r1.form, r2.form))
        };
    }
    if l1.rank() != l2.rank() {
        return LatticeComparison::Distinguished(format!("rank {} vs {}", l1.rank(), l2.rank()));
    }
    let (s1, s2) = (l1.signature(), l2.signature());
    if s1 != s2 {
        return LatticeComparison::Distinguished(format!("signature {s1} vs {s2}"));
    }
    if l1.is_even() != l2.is_even() {
        return LatticeComparison::Distinguished(format!("evenness {} vs {}", l1.is_even(), l2.is_even()));
    }
    match (l1.discriminant(), l2.discriminant()) {
        (Ok(d1), Ok(d2)) if d1 != d2 => {
            LatticeComparison::Distinguished(format!("discriminant {d1} vs {d2}"))
        }
        (Ok(_), Ok(_)) => LatticeComparison::GenusInvariantsMatch,
        // both degenerate with equal signatures: compare |det| of nothing more
        _ => {
            if l1.det().abs() == l2.det().abs() {
                LatticeComparison::GenusInvariantsMatch
            } else {
                LatticeComparison::Distinguished("determinant".into())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn named_lattices() {
        let u = make_named(&LatticeSpec::U).unwrap();
        assert_eq!(u.signature(), SymDiagResult::new(1, 1, 0));
        assert!(u.is_even());
        assert_eq!(u.det().abs(), BigInt::one());

        let e8 = make_named(&LatticeSpec::E8Minus).unwrap();
        assert_eq!(e8.signature(), SymDiagResult::new(0, 8, 0));
        assert!(e8.is_even());
        assert_eq!(e8.det().abs(), BigInt::one());

        let k3 = make_named(&LatticeSpec::Sum(vec![
            LatticeSpec::U,
            LatticeSpec::U,
            LatticeSpec::U,
            LatticeSpec::E8Minus,
            LatticeSpec::E8Minus,
        ]))
        .unwrap();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.signature(), SymDiagResult::new(3, 19, 0));
        assert_eq!(k3.gram(), IntegralLattice::k3().gram());

        let mukai = IntegralLattice::mukai();
        assert_eq!(mukai.signature(), SymDiagResult::new(4, 20, 0));
        assert!(mukai.is_even());
        assert_eq!(mukai.det().abs(), BigInt::one());
    }

    #[test]
    fn rescale_and_diag() {
        let r = make_named(&LatticeSpec::Rescale(Box::new(LatticeSpec::U), BigInt::from(3))).unwrap();
        assert_eq!(r.gram(), &IntMatrix::from_i64(2, 2, &[0, 3, 3, 0]));
        assert_eq!(
            make_named(&LatticeSpec::Rescale(Box::new(LatticeSpec::U), BigInt::zero())),
            Err(Error::ZeroRescale)
        );
        let d = make_named(&LatticeSpec::Diag(b(&[6]))).unwrap();
        assert_eq!(d.signature(), SymDiagResult::new(1, 0, 0));
        let odd = make_named(&LatticeSpec::Diag(b(&[1, 2]))).unwrap();
        assert!(!odd.is_even());
    }

    #[test]
    fn discriminants() {
        assert!(IntegralLattice::hyperbolic_plane().discriminant().unwrap().is_trivial());
        let d = IntegralLattice::diagonal(&b(&[4, 4])).discriminant().unwrap();
        assert_eq!(d.divisors, b(&[4, 4]));
        assert!(IntegralLattice::k3().discriminant().unwrap().is_trivial());
        let deg = IntegralLattice::diagonal(&b(&[2, 0]));
        assert!(matches!(deg.discriminant(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn comparisons() {
        let two = IntegralLattice::diagonal(&b(&[2, 2]));
        let other = IntegralLattice::new(IntMatrix::from_i64(2, 2, &[2, 2, 2, 4])).unwrap();
        assert_eq!(invariants_match(&two, &other), LatticeComparison::Equal2);

        let u = IntegralLattice::hyperbolic_plane();
        let pm = IntegralLattice::diagonal(&b(&[2, -2]));
        match invariants_match(&u, &pm) {
            LatticeComparison::Distinguished(r) => assert!(r.starts_with("discriminant"), "{r}"),
            other => panic!("expected Distinguished, got {other:?}"),
        }
        let a2 = IntegralLattice::new(IntMatrix::from_i64(2, 2, &[2, 1, 1, 2])).unwrap();
        assert!(matches!(invariants_match(&a2, &two), LatticeComparison::Distinguished(_)));
        assert_eq!(invariants_match(&IntegralLattice::k3(), &IntegralLattice::k3()), LatticeComparison::GenusInvariantsMatch);
    }
}
