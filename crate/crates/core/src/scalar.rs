//! Exact arithmetic over the Gaussian rationals ℚ(i).
//!
//! Every tensor in the crate carries [`GaussRational`] coefficients. Values are
//! kept canonical after each operation (reduced fractions, positive
//! denominators), so structural equality is mathematical equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}` as a Gaussian rational")]
    Parse(String),
}

/// A Gaussian rational `re + im·i` with `re, im ∈ ℚ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    re: Rational,
    im: Rational,
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_real(Rational::from_integer(BigInt::from(n)))
    }

    /// `(re_n/re_d) + (im_n/im_d)·i`
    pub fn from_fracs(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        Self::new(rational(re_n, re_d), rational(im_n, im_d))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_real(rational(n, d))
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Lossy conversion for floating-point reporting.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn abs_f64(&self) -> f64 {
        self.norm_sq().to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Exact conversion of a pair of finite floats (binary expansion, no rounding).
    pub fn from_f64_exact(re: f64, im: f64) -> Option<Self> {
        Some(Self::new(Rational::from_float(re)?, Rational::from_float(im)?))
    }
}

impl Default for GaussRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::from_real(Rational::one())
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        Self::from_real(r)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

/// Panics on a zero divisor, like integer division; use
/// [`GaussRational::checked_div`] when the divisor may vanish.
impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn div(self, o: &GaussRational) -> GaussRational {
        self.checked_div(o).expect("division by zero Gaussian rational")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, o: GaussRational) -> GaussRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, o: &'a GaussRational) -> GaussRational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GaussRational> for &'a GaussRational {
            type Output = GaussRational;
            fn $m(self, o: GaussRational) -> GaussRational {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl<'a> AddAssign<&'a GaussRational> for GaussRational {
    fn add_assign(&mut self, o: &GaussRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for GaussRational {
    fn add_assign(&mut self, o: GaussRational) {
        *self += &o;
    }
}

impl<'a> SubAssign<&'a GaussRational> for GaussRational {
    fn sub_assign(&mut self, o: &GaussRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl SubAssign for GaussRational {
    fn sub_assign(&mut self, o: GaussRational) {
        *self -= &o;
    }
}

impl<'a> MulAssign<&'a GaussRational> for GaussRational {
    fn mul_assign(&mut self, o: &GaussRational) {
        *self = &*self * o;
    }
}

impl Sum for GaussRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for GaussRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for GaussRational {
    /// Canonical `p/q+r/si` form, e.g. `1/2-3/4i`, `0+1i`, `-2+0i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() || s.starts_with('+') {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for GaussRational {
    type Err = ScalarError;

    /// Accepts the canonical form plus the usual shorthands:
    /// `3`, `-1/2`, `i`, `-i`, `2/3i`, `1+i`, `1/2-3/4i`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(Self::from_real).ok_or_else(err);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re = parse_rational(re_part).ok_or_else(err)?;
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other).ok_or_else(err)?,
        };
        Ok(Self::new(re, im))
    }
}

/// `serialize_with` helper writing a rational as `"p/q"`.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(g("1/2") + g("1/2"), GaussRational::one());
        let x = g("7/3-2/9i");
        assert_eq!(&x + &GaussRational::zero(), x);
        assert_eq!(g("1/3+1/6i") + g("1/6+1/3i"), g("1/2+1/2i"));
    }

    #[test]
    fn multiplicative_examples() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, GaussRational::from_int(-1));
        assert_eq!(GaussRational::from_int(2).inv().unwrap(), g("1/2"));
        assert_eq!(g("1+i") * g("1-i"), GaussRational::from_int(2));
        assert_eq!(i.conj(), -GaussRational::i());
        assert_eq!(GaussRational::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(g("1/2-3/4i").to_string(), "1/2-3/4i");
        assert_eq!(g("2/4").to_string(), "1/2+0i");
        assert_eq!(GaussRational::i().to_string(), "0+1i");
        assert_eq!(g("-i").to_string(), "0-1i");
        assert_eq!(g("-3/6i").to_string(), "0-1/2i");
        assert_eq!(g("-5").to_string(), "-5+0i");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1/0", "1/-2", "abc", "1+2", "i/2", "++1", "1/2/3i"] {
            assert!(bad.parse::<GaussRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn serde_uses_strings() {
        let x = g("-1/2+5i");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, "\"-1/2+5i\"");
        assert_eq!(serde_json::from_str::<GaussRational>(&js).unwrap(), x);
    }
}
