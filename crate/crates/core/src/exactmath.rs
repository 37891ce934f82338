//! Arbitrary-precision rational arithmetic and homogeneous binary forms.
//!
//! Every quantity in the engine is an exact [`Rational`] or a dense
//! [`HomogPoly2`] over them. Rationals are always stored reduced with a
//! positive denominator, so equality and hashing are structural.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,
    #[error("(0 : 0) is not a point of the projective line")]
    ZeroPoint,
    #[error("the zero polynomial vanishes to infinite order")]
    ZeroPolynomial,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Exact rational number, stored reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Builds `numer / denom`, reduced. Fails on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an i64, when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        self.0.numer().to_i64()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer power; negative exponents invert. `0^0 = 1`;
    /// a zero base with a negative exponent is rejected rather than
    /// treated as a value, since in this engine it always means a
    /// degenerate weight specialization.
    pub fn pow(&self, exp: i64) -> Result<Rational, ExactError> {
        if exp == 0 {
            return Ok(Rational::one());
        }
        if self.is_zero() {
            if exp < 0 {
                return Err(ExactError::ZeroToNegativePower);
            }
            return Ok(Rational::zero());
        }
        let mag = i32::try_from(exp).expect("exponent fits i32");
        Ok(Rational(self.0.pow(mag)))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let bad = || ExactError::Parse(s.to_string());
        let mut parts = s.trim().splitn(2, '/');
        let numer = BigInt::from_str(parts.next().ok_or_else(bad)?.trim()).map_err(|_| bad())?;
        match parts.next() {
            None => Ok(Rational(BigRational::from_integer(numer))),
            Some(d) => {
                let denom = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if denom.is_zero() {
                    return Err(ExactError::DivisionByZero);
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

macro_rules! rational_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational(BigRational::from_integer(BigInt::from(n)))
            }
        }
    )*}
}
rational_from_int!(i8, i16, i32, i64, u8, u16, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}
rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

/// Panics on a zero divisor; the engine's evaluation paths use
/// [`Rational::checked_div`] wherever a denominator depends on the
/// weight specialization.
impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        self.0 *= rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

/// JSON form is `{"num": "<decimal>", "den": "<decimal>"}`; decimal strings
/// avoid the integer-width limits of JSON consumers.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(deserializer)?;
        let numer = BigInt::from_str(&repr.num)
            .map_err(|_| D::Error::custom(format!("bad numerator {:?}", repr.num)))?;
        let denom = BigInt::from_str(&repr.den)
            .map_err(|_| D::Error::custom(format!("bad denominator {:?}", repr.den)))?;
        Rational::new(numer, denom).map_err(|_| D::Error::custom("zero denominator"))
    }
}

/// Binomial coefficient `n` choose `k`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Point (a : b) of the rational projective line; a and b are not both zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct P1Point {
    a: Rational,
    b: Rational,
}

impl P1Point {
    pub fn new(a: Rational, b: Rational) -> Result<Self, ExactError> {
        if a.is_zero() && b.is_zero() {
            return Err(ExactError::ZeroPoint);
        }
        Ok(P1Point { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.a, self.b)
    }
}

/// Homogeneous polynomial in s, t with rational coefficients, stored densely:
/// `coeffs[a]` is the coefficient of `s^a t^(degree - a)`. The zero polynomial
/// of degree n keeps its recorded degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogPoly2 {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomogPoly2 {
    /// Degree is implied by the coefficient count (`len == degree + 1`).
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        HomogPoly2 {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn zero(degree: usize) -> Self {
        HomogPoly2 {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn constant(value: Rational) -> Self {
        HomogPoly2 {
            degree: 0,
            coeffs: vec![value],
        }
    }

    /// The monomial `coeff * s^s_exp * t^(degree - s_exp)`.
    pub fn monomial(degree: usize, s_exp: usize, coeff: Rational) -> Self {
        assert!(s_exp <= degree, "monomial exponent exceeds degree");
        let mut p = HomogPoly2::zero(degree);
        p.coeffs[s_exp] = coeff;
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^a t^(degree - a)`.
    pub fn coeff(&self, a: usize) -> &Rational {
        &self.coeffs[a]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, rhs: &HomogPoly2) -> HomogPoly2 {
        assert_eq!(self.degree, rhs.degree, "addition requires equal degree");
        HomogPoly2 {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &HomogPoly2) -> HomogPoly2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> HomogPoly2 {
        HomogPoly2 {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> HomogPoly2 {
        HomogPoly2 {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn mul(&self, rhs: &HomogPoly2) -> HomogPoly2 {
        let degree = self.degree + rhs.degree;
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        HomogPoly2 { degree, coeffs }
    }

    pub fn pow(&self, exp: u32) -> HomogPoly2 {
        let mut acc = HomogPoly2::constant(Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative in s. Degree drops by one; a degree-0
    /// input yields the zero constant.
    pub fn partial_s(&self) -> HomogPoly2 {
        if self.degree == 0 {
            return HomogPoly2::zero(0);
        }
        let coeffs = (0..self.degree)
            .map(|b| &self.coeffs[b + 1] * &Rational::from(b as u64 + 1))
            .collect();
        HomogPoly2 {
            degree: self.degree - 1,
            coeffs,
        }
    }

    /// Formal partial derivative in t.
    pub fn partial_t(&self) -> HomogPoly2 {
        if self.degree == 0 {
            return HomogPoly2::zero(0);
        }
        let coeffs = (0..self.degree)
            .map(|b| &self.coeffs[b] * &Rational::from((self.degree - b) as u64))
            .collect();
        HomogPoly2 {
            degree: self.degree - 1,
            coeffs,
        }
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let n = self.degree;
        let mut spow = vec![Rational::one(); n + 1];
        let mut tpow = vec![Rational::one(); n + 1];
        for i in 1..=n {
            spow[i] = &spow[i - 1] * s;
            tpow[i] = &tpow[i - 1] * t;
        }
        let mut acc = Rational::zero();
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &spow[a] * &tpow[n - a];
            }
        }
        acc
    }

    /// Substitution s -> m[0][0] s + m[0][1] t, t -> m[1][0] s + m[1][1] t.
    pub fn compose_linear(&self, m: &[[Rational; 2]; 2]) -> HomogPoly2 {
        let new_s = HomogPoly2::new(vec![m[0][0].clone(), m[0][1].clone()]);
        let new_t = HomogPoly2::new(vec![m[1][0].clone(), m[1][1].clone()]);
        let mut acc = HomogPoly2::zero(self.degree);
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = new_s.pow(a as u32).mul(&new_t.pow((self.degree - a) as u32));
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Largest m such that `(b s - a t)^m` divides the polynomial, i.e. the
    /// vanishing order at the point (a : b). Errors on the zero polynomial.
    pub fn root_multiplicity(&self, point: &P1Point) -> Result<u32, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if point.b().is_zero() {
            // The vanishing linear form is a scalar multiple of t, and t^m
            // divides iff the top m coefficients in s vanish.
            let top = self
                .coeffs
                .iter()
                .rposition(|c| !c.is_zero())
                .expect("nonzero polynomial");
            return Ok((self.degree - top) as u32);
        }
        // Dehomogenize in u = s/t: the multiplicity equals the order of the
        // root u0 = a/b in P(u) = sum coeffs[a] u^a, found by repeated
        // synthetic division.
        let u0 = point.a().checked_div(point.b())?;
        let mut cur: Vec<Rational> = self.coeffs.clone();
        let mut mult = 0u32;
        loop {
            while cur.len() > 1 && cur.last().unwrap().is_zero() {
                cur.pop();
            }
            // Horner pass gives both quotient coefficients and remainder P(u0).
            let mut quot = vec![Rational::zero(); cur.len().saturating_sub(1)];
            let mut carry = Rational::zero();
            for i in (0..cur.len()).rev() {
                let val = &cur[i] + &(&carry * &u0);
                if i == 0 {
                    if !val.is_zero() {
                        return Ok(mult);
                    }
                } else {
                    quot[i - 1] = val.clone();
                }
                carry = val;
            }
            if quot.is_empty() {
                // cur was the constant zero... impossible: self is nonzero and
                // we only divide out exact roots.
                return Ok(mult);
            }
            mult += 1;
            cur = quot;
        }
    }
}

impl fmt::Display for HomogPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for a in (0..=self.degree).rev() {
            let c = &self.coeffs[a];
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let t_exp = self.degree - a;
            let is_const = a == 0 && t_exp == 0;
            if !c.is_integer() || *c != Rational::one() || is_const {
                write!(f, "{}", c)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            match a {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{}", a)?,
            }
            if a > 0 && t_exp > 0 {
                write!(f, "*")?;
            }
            match t_exp {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", t_exp)?,
            }
        }
        Ok(())
    }
}
