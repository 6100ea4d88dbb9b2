//! Scalar backends.
//!
//! Two fields are supported: binary64 floats, where every comparison takes an
//! explicit tolerance, and arbitrary-precision rationals, where comparisons are
//! exact and tolerances are ignored.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// binary64 with explicit tolerances
    Float,
    /// exact rationals
    Exact,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Float => f.write_str("float"),
            Backend::Exact => f.write_str("exact"),
        }
    }
}

pub trait Scalar:
    Clone + Debug + PartialOrd + Signed + FromPrimitive + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// False for NaN and infinities. Always true for rationals.
    fn is_finite_value(&self) -> bool;

    /// `|self| <= tol`; exact backend: `self == 0`.
    fn is_zero_within(&self, tol: f64) -> bool;

    /// `self > tol`; exact backend: `self > 0`.
    fn exceeds(&self, tol: f64) -> bool;

    /// `self < -tol`; exact backend: `self < 0`.
    fn below_neg(&self, tol: f64) -> bool;

    /// Rank test used by Gram-Schmidt: whether a residual with squared norm
    /// `residual_sq` is numerically zero relative to an input of squared norm
    /// `reference_sq`.
    fn residual_is_negligible(residual_sq: &Self, reference_sq: &Self, rank_tol: f64) -> bool;

    /// Canonical form of an accepted Gram-Schmidt direction: unit length for
    /// floats, primitive integer vector for rationals.
    fn finish_direction(v: Vec<Self>) -> Vec<Self>;

    /// Text form used in reports; parses back through [`parse_literal`].
    fn render(&self) -> String;

    fn from_rational(r: &Rational) -> Self;
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn exceeds(&self, tol: f64) -> bool {
        *self > tol
    }

    fn below_neg(&self, tol: f64) -> bool {
        *self < -tol
    }

    fn residual_is_negligible(residual_sq: &Self, reference_sq: &Self, rank_tol: f64) -> bool {
        residual_sq.sqrt() <= rank_tol * reference_sq.sqrt()
    }

    fn finish_direction(mut v: Vec<Self>) -> Vec<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    fn render(&self) -> String {
        format!("{self:e}")
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn exceeds(&self, _tol: f64) -> bool {
        self.is_positive()
    }

    fn below_neg(&self, _tol: f64) -> bool {
        self.is_negative()
    }

    fn residual_is_negligible(residual_sq: &Self, _reference_sq: &Self, _rank_tol: f64) -> bool {
        residual_sq.is_zero()
    }

    fn finish_direction(v: Vec<Self>) -> Vec<Self> {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if gcd.is_zero() {
            return v;
        }
        ints.into_iter()
            .map(|x| Rational::from_integer(x / &gcd))
            .collect()
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Parses an exact rational literal: `p/q`, an integer, or a decimal with an
/// optional exponent (`-0.25`, `1e-3`). Decimals are converted without rounding.
pub fn parse_literal(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse("empty numeric literal"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s).ok_or_else(|| Error::parse(format!("bad numeric literal {s:?}")))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_f64(x)
}
