// SPDX-License-Identifier: Apache-2.0

//! Exact scalars in Q and Q(√d), and their complexifications.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Field tag of a real quadratic field Q(√d): d squarefree, d ≥ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SqrtD(u64);

impl SqrtD {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(SqrtD(d))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Merge two optional field tags; distinct present tags are an error.
pub fn merge_fields(x: Option<SqrtD>, y: Option<SqrtD>) -> Result<Option<SqrtD>> {
    match (x, y) {
        (None, f) | (f, None) => Ok(f),
        (Some(a), Some(b)) if a == b => Ok(Some(a)),
        (Some(a), Some(b)) => Err(Error::FieldMismatch(a.0, b.0)),
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p" or "p/q" exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Precondition(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: "p" when the denominator is 1, else "p/q".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// a + b√d with exact rational a, b. Without a field tag the scalar is
/// rational and b = 0.
#[derive(Debug, Clone)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    field: Option<SqrtD>,
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for QuadScalar {}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, field: Option<SqrtD>) -> Result<Self> {
        if field.is_none() && !b.is_zero() {
            return Err(Error::Precondition(
                "irrational part requires a field tag sqrt_d".into(),
            ));
        }
        Ok(QuadScalar { a, b, field })
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadScalar { a, b: Rational::zero(), field: None }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// √d itself.
    pub fn sqrt(d: SqrtD) -> Self {
        QuadScalar { a: Rational::zero(), b: Rational::one(), field: Some(d) }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> Option<SqrtD> {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of a + b√d under the real embedding √d > 0.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² against d·b²; equality is impossible
        // for squarefree d and b ≠ 0.
        let d = Rational::from_integer(BigInt::from(self.field.map_or(0, |f| f.0)));
        let a2 = &self.a * &self.a;
        let db2 = d * &self.b * &self.b;
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.field.map_or(0.0, |f| f.0 as f64);
        a + b * d.sqrt()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let field = merge_fields(self.field, o.field)?;
        Ok(QuadScalar { a: &self.a + &o.a, b: &self.b + &o.b, field })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        let field = merge_fields(self.field, o.field)?;
        Ok(QuadScalar { a: &self.a - &o.a, b: &self.b - &o.b, field })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let field = merge_fields(self.field, o.field)?;
        let d = Rational::from_integer(BigInt::from(field.map_or(0, |f| f.0)));
        let a = &self.a * &o.a + d * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(QuadScalar { a, b, field })
    }

    pub fn checked_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = Rational::from_integer(BigInt::from(self.field.map_or(0, |f| f.0)));
        let norm = &self.a * &self.a - d * &self.b * &self.b;
        Ok(QuadScalar { a: &self.a / &norm, b: -(&self.b / &norm), field: self.field })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.checked_recip()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadScalar { a: &self.a * r, b: &self.b * r, field: self.field }
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Some(d) if !self.b.is_zero() => {
                if self.a.is_zero() {
                    write!(f, "{}*sqrt({})", format_rational(&self.b), d.0)
                } else {
                    write!(f, "{}{}{}*sqrt({})", format_rational(&self.a),
                        if self.b.is_negative() { "" } else { "+" },
                        format_rational(&self.b), d.0)
                }
            }
            _ => write!(f, "{}", format_rational(&self.a)),
        }
    }
}

// Operator forms panic on mixed field tags; the checked_* methods report it.
macro_rules! quad_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, o: &'a QuadScalar) -> QuadScalar {
                self.$checked(o).expect("quadratic scalar arithmetic")
            }
        }
        impl $trait for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, o: QuadScalar) -> QuadScalar {
                (&self).$method(&o)
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);
quad_binop!(Div, div, checked_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b, field: self.field }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

/// re + i·im with both parts in Q(√d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadComplex {
    pub re: QuadScalar,
    pub im: QuadScalar,
}

impl QuadComplex {
    pub fn new(re: QuadScalar, im: QuadScalar) -> Self {
        QuadComplex { re, im }
    }

    pub fn real(re: QuadScalar) -> Self {
        QuadComplex { re, im: QuadScalar::zero() }
    }

    pub fn imag(im: QuadScalar) -> Self {
        QuadComplex { re: QuadScalar::zero(), im }
    }

    pub fn zero() -> Self {
        Self::real(QuadScalar::zero())
    }

    pub fn one() -> Self {
        Self::real(QuadScalar::one())
    }

    pub fn i() -> Self {
        Self::imag(QuadScalar::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(QuadScalar::from_int(n))
    }

    pub fn field(&self) -> Result<Option<SqrtD>> {
        merge_fields(self.re.field(), self.im.field())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        Ok(QuadComplex { re: self.re.checked_add(&o.re)?, im: self.im.checked_add(&o.im)? })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        Ok(QuadComplex { re: self.re.checked_sub(&o.re)?, im: self.im.checked_sub(&o.im)? })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let re = self.re.checked_mul(&o.re)?.checked_sub(&self.im.checked_mul(&o.im)?)?;
        let im = self.re.checked_mul(&o.im)?.checked_add(&self.im.checked_mul(&o.re)?)?;
        Ok(QuadComplex { re, im })
    }

    /// |z|² = re² + im², an element of Q(√d).
    pub fn norm_sqr(&self) -> Result<QuadScalar> {
        self.re.checked_mul(&self.re)?.checked_add(&self.im.checked_mul(&self.im)?)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        let n = o.norm_sqr()?;
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.checked_mul(&o.conj())?;
        Ok(QuadComplex { re: num.re.checked_div(&n)?, im: num.im.checked_div(&n)? })
    }

    pub fn scale(&self, s: &QuadScalar) -> Result<Self> {
        Ok(QuadComplex { re: self.re.checked_mul(s)?, im: self.im.checked_mul(s)? })
    }
}

impl fmt::Display for QuadComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

impl<'a> Add<&'a QuadComplex> for &'a QuadComplex {
    type Output = QuadComplex;
    fn add(self, o: &'a QuadComplex) -> QuadComplex {
        self.checked_add(o).expect("quadratic scalar arithmetic")
    }
}

impl<'a> Sub<&'a QuadComplex> for &'a QuadComplex {
    type Output = QuadComplex;
    fn sub(self, o: &'a QuadComplex) -> QuadComplex {
        self.checked_sub(o).expect("quadratic scalar arithmetic")
    }
}

impl<'a> Mul<&'a QuadComplex> for &'a QuadComplex {
    type Output = QuadComplex;
    fn mul(self, o: &'a QuadComplex) -> QuadComplex {
        self.checked_mul(o).expect("quadratic scalar arithmetic")
    }
}

impl Neg for &QuadComplex {
    type Output = QuadComplex;
    fn neg(self) -> QuadComplex {
        QuadComplex { re: -&self.re, im: -&self.im }
    }
}
