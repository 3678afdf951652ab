//! Exact number types: arbitrary-precision rationals, the field ℚ(i,√2) and
//! phases `exp(2πi·x)` kept as rational exponents modulo 1.
//!
//! Nothing in this crate ever rounds. Floating point values appear only in
//! display helpers such as [`Phase::angle`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `num/den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn half() -> Self {
        Rational::new(1, 2)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when `self ∈ 1/2 + ℤ`.
    pub fn is_half_odd(&self) -> bool {
        !self.is_integer() && (self + &Rational::half()).is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The integer value, if `self` is an integer that fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        Ok(Rational(num_traits::pow(self.0.clone(), k as usize)))
    }

    /// `self mod 1`, in `[0, 1)`.
    pub fn fract_unit(&self) -> Self {
        Rational(&self.0 - self.0.floor())
    }

    /// The rational square root, when it exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Canonical `"p/q"` rendering (integers too, as `"p/1"`).
    pub fn to_canonical_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "rational", input: s.to_string() };
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        Rational::from_bigs(num, den).map_err(|_| err())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_canonical_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out.$assign_method(rhs);
                out
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(mut self, rhs: $ty) -> $ty {
                self.$assign_method(&rhs);
                self
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(mut self, rhs: &$ty) -> $ty {
                self.$assign_method(rhs);
                self
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                let mut out = self.clone();
                out.$assign_method(&rhs);
                out
            }
        }
        impl $assign_trait<$ty> for $ty {
            fn $assign_method(&mut self, rhs: $ty) {
                self.$assign_method(&rhs);
            }
        }
    };
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
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

forward_binop!(Rational, Add, add, AddAssign, add_assign);
forward_binop!(Rational, Sub, sub, SubAssign, sub_assign);
forward_binop!(Rational, Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// An element `a + b√2 + c·i + d·i√2` of ℚ(i,√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from(Rational::one())
    }

    /// `√2`
    pub fn sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// `i`
    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `i√2`
    pub fn i_sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// The rational value, when `b = c = d = 0`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() && self.c.is_zero() && self.d.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Complex conjugation (`i ↦ −i`, `√2` fixed).
    pub fn conj(&self) -> Self {
        Scalar::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mul = |x: &Rational| if x.is_zero() { Rational::zero() } else { x * r };
        Scalar::new(mul(&self.a), mul(&self.b), mul(&self.c), mul(&self.d))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x = u + i·v with u, v ∈ ℚ(√2); 1/x = (u − i·v)/(u² + v²).
        let two = Rational::from_integer(2);
        let (u0, u1, v0, v1) = (&self.a, &self.b, &self.c, &self.d);
        // N = u² + v² = p + s√2
        let p = u0 * u0 + &two * u1 * u1 + v0 * v0 + &two * v1 * v1;
        let s = &two * u0 * u1 + &two * v0 * v1;
        // 1/N = (p − s√2)/(p² − 2s²)
        let norm = &p * &p - &two * &s * &s;
        let norm_inv = norm.inverse()?;
        let inv_n = Scalar::new(&p * &norm_inv, -(&s * &norm_inv), Rational::zero(), Rational::zero());
        Ok(&self.conj() * &inv_n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from(Rational::from_integer(n))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [(&self.a, ""), (&self.b, "√2"), (&self.c, "i"), (&self.d, "i√2")]
            .iter()
            .filter(|(r, _)| !r.is_zero())
            .map(|(r, unit)| {
                if unit.is_empty() {
                    r.to_string()
                } else if r.is_one() {
                    unit.to_string()
                } else if (-*r).is_one() {
                    format!("-{unit}")
                } else {
                    format!("({r}){unit}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.a, &self.b, &self.c, &self.d].serialize(serializer)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        if let Some(e) = rhs.as_rational() {
            if e.is_one() {
                return;
            }
            *self = self.scale(e);
            return;
        }
        if let Some(a) = self.as_rational() {
            *self = rhs.scale(a);
            return;
        }
        // basis 1, r=√2, i, ir with r² = 2, i² = −1
        let two = Rational::from_integer(2);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let re = a * e + &two * b * f - c * g - &two * d * h;
        let r = a * f + b * e - c * h - d * g;
        let im = a * g + c * e + &two * (b * h + d * f);
        let ir = a * h + d * e + b * g + c * f;
        *self = Scalar::new(re, r, im, ir);
    }
}

forward_binop!(Scalar, Add, add, AddAssign, add_assign);
forward_binop!(Scalar, Sub, sub, SubAssign, sub_assign);
forward_binop!(Scalar, Mul, mul, MulAssign, mul_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

/// The phase `exp(2πi·exponent)`, stored by its exponent reduced to `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Phase {
    exponent: Rational,
}

pub fn phase_from_exponent(x: &Rational) -> Phase {
    Phase { exponent: x.fract_unit() }
}

impl Phase {
    pub fn one() -> Self {
        Phase { exponent: Rational::zero() }
    }

    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    pub fn pow(&self, k: i64) -> Phase {
        phase_from_exponent(&(&self.exponent * &Rational::from_integer(k)))
    }

    pub fn conj(&self) -> Phase {
        phase_from_exponent(&-&self.exponent)
    }

    /// The angle `2π·exponent` in radians, for display.
    pub fn angle(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.exponent.to_f64()
    }
}

impl Mul<&Phase> for &Phase {
    type Output = Phase;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Phase) -> Phase {
        phase_from_exponent(&(&self.exponent + &rhs.exponent))
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        &self * &rhs
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent.to_canonical_string().as_str() {
            "0/1" => write!(f, "1"),
            "1/2" => write!(f, "-1"),
            "1/4" => write!(f, "i"),
            "3/4" => write!(f, "-i"),
            _ => write!(f, "e(2πi·{})", self.exponent),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("exp", &self.exponent)?;
        map.end()
    }
}
