//! Scalar abstraction for the numeric kernels.
//!
//! Polytope membership, hardcore marginals and the certificate checkers are
//! generic over the scalar so the same code runs in exact rational mode
//! (verdicts that are certificates) and in `f64` mode (search and fitting).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// True when arithmetic in this scalar is exact.
    fn exact() -> bool;
    /// Parse a plain decimal literal (optional sign, digits, one point).
    fn from_decimal_str(s: &str) -> Option<Self>;
    /// Parse a `p/q` fraction from its two digit strings.
    fn from_fraction_str(num: &str, den: &str) -> Option<Self>;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exact() -> bool {
        false
    }
    fn from_decimal_str(s: &str) -> Option<Self> {
        let v: f64 = s.parse().ok()?;
        v.is_finite().then_some(v)
    }
    fn from_fraction_str(num: &str, den: &str) -> Option<Self> {
        let n: f64 = num.parse().ok()?;
        let d: f64 = den.parse().ok()?;
        (d != 0.0 && n.is_finite() && d.is_finite()).then(|| n / d)
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn exact() -> bool {
        true
    }
    fn from_decimal_str(s: &str) -> Option<Self> {
        let (neg, t) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (ip, fp) = t.split_once('.').unwrap_or((t, ""));
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        if !ip.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{ip}{fp}");
        let num = BigInt::parse_bytes(digits.as_bytes(), 10)?;
        let den = BigInt::from(10u32).pow(fp.len() as u32);
        let q = BigRational::new(num, den);
        Some(if neg { -q } else { q })
    }
    fn from_fraction_str(num: &str, den: &str) -> Option<Self> {
        let parse_signed = |t: &str| -> Option<(bool, BigInt)> {
            let (neg, rest) = match t.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            Some((neg, BigInt::parse_bytes(rest.as_bytes(), 10)?))
        };
        let (nneg, n) = parse_signed(num)?;
        let (dneg, d) = parse_signed(den)?;
        if d == BigInt::from(0) {
            return None;
        }
        let q = BigRational::new(n, d);
        Some(if nneg != dneg { -q } else { q })
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

/// Parse a scalar literal: integers, `p/q` fractions and decimals of any
/// length are accepted; rationals are exact for all three forms.
pub fn parse_scalar<S: Scalar>(s: &str) -> Option<S> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        return S::from_fraction_str(p.trim(), q.trim());
    }
    S::from_decimal_str(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar::<Rational>("3/4"), Some(Rational::from_ratio(3, 4)));
        assert_eq!(parse_scalar::<Rational>("2"), Some(Rational::from_int(2)));
        assert_eq!(parse_scalar::<Rational>("0.25"), Some(Rational::from_ratio(1, 4)));
        assert_eq!(parse_scalar::<Rational>("-1.5"), Some(Rational::from_ratio(-3, 2)));
        assert_eq!(parse_scalar::<f64>("0.5"), Some(0.5));
        assert!(parse_scalar::<f64>("1/0").is_none());
    }

    #[test]
    fn parses_own_display_output() {
        // f64 Display can emit long tails; rational Display can emit big
        // numerators: both must re-parse
        let v: f64 = 0.15000000000000002;
        assert_eq!(parse_scalar::<f64>(&v.to_string()), Some(v));
        let q = Rational::from_float(0.2).unwrap(); // dyadic with huge digits
        assert_eq!(parse_scalar::<Rational>(&q.to_string()), Some(q));
        assert_eq!(
            parse_scalar::<f64>("0.21346152464552527"),
            Some(0.21346152464552527)
        );
    }
}
