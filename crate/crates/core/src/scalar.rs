//! Numeric modes shared by distributions and the LP solver.
//!
//! Every distribution and LP carries one numeric mode: exact rationals
//! ([`BigRational`]) or `f64` with a fixed verification tolerance. The
//! [`Scalar`] trait is the small field interface both modes implement.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when verifying float-mode identities (normalization,
/// vanishing marginals, constraint residuals).
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Tolerance used for pivoting decisions inside the float simplex.
pub const PIVOT_TOLERANCE: f64 = 1e-11;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Rational,
    Float,
}

impl std::fmt::Display for NumericMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumericMode::Rational => f.write_str("rational"),
            NumericMode::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const MODE: NumericMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Sign of `self`, treating magnitudes up to `eps` as zero in float
    /// mode. Rationals ignore `eps`.
    fn sign_with(&self, eps: f64) -> Ordering;

    /// Human rendering: rationals as `p/q` (integers bare), floats with
    /// ten significant digits.
    fn render(&self) -> String;

    /// JSON rendering of a weight: `"num/den"` strings for rationals,
    /// plain numbers for floats.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self>;

    fn sign(&self) -> Ordering {
        self.sign_with(FLOAT_TOLERANCE)
    }

    fn is_negligible(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn abs_val(&self) -> Self {
        if self.sign_with(0.0) == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_val(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn sum<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        iter.into_iter().fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Scalar for BigRational {
    const MODE: NumericMode = NumericMode::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sign_with(&self, _eps: f64) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() => {
                Ok(BigRational::from_integer(BigInt::from(n.as_i64().unwrap())))
            }
            other => Err(Error::Parse(format!(
                "expected rational weight \"num/den\", found {other}"
            ))),
        }
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign_with(&self, eps: f64) -> Ordering {
        if self.abs() <= eps {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn render(&self) -> String {
        format_float(*self)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        value
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("expected float weight, found {value}")))
    }
}

/// Formats a float with 10 significant digits, trimming trailing zeros.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{:.9e}", x);
    }
    let decimals = (9 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.125"` or
/// `"-1.5e-2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    for _ in 0..scale.unsigned_abs() {
        if scale > 0 {
            value *= ten.clone();
        } else {
            value /= ten.clone();
        }
    }
    Ok(if negative { -value } else { value })
}

/// Recovers a small-denominator rational from a float, if one lies within
/// `1e-12` of it with denominator at most `10_000`.
///
/// Quantum-derived probabilities such as `Tr(ρA) = 1/4` come out of double
/// precision linear algebra; this restores their exact values so that
/// identities like `p(ω₀) = -7/2` can be checked without tolerance.
pub fn rationalize(x: f64) -> Option<BigRational> {
    const MAX_DEN: i64 = 10_000;
    const TOL: f64 = 1e-12;
    if !x.is_finite() {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DEN {
            return None;
        }
        if (h2 as f64 / k2 as f64 - x).abs() <= TOL {
            return Some(BigRational::new(BigInt::from(h2), BigInt::from(k2)));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a as f64;
        if frac.abs() < 1e-300 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}
