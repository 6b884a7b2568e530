//! Scalar types usable as arc lengths and costs.
//!
//! Every solver in this crate is generic over [`Scalar`]. Exact rational
//! arithmetic is the default (see [`crate::Exact`]); `f64` and `f32` are
//! supported as a floating mode where comparisons use a fixed slack.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Comparison slack used by the floating-point scalar types.
pub const FLOAT_EPSILON: f64 = 1e-9;

/// A number type the solvers can run on.
pub trait Scalar: Copy + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static {
    /// `true` when arithmetic is exact and equality tests are strict.
    const EXACT: bool;

    /// Slack for approximate comparisons; zero for exact types.
    fn epsilon() -> Self;

    /// The value `numer / denom`. `denom` must be nonzero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Parses a decimal (`-2.5`) or rational (`7/3`) literal.
    fn parse_literal(text: &str) -> Option<Self>;

    /// Formats the value so that [`Scalar::parse_literal`] reads it back unchanged.
    fn to_literal(&self) -> String;

    /// Rejects NaN and infinities for float types.
    fn is_finite_value(&self) -> bool;

    fn to_f64_lossy(&self) -> f64;

    fn approx_eq(self, other: Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self - other).abs() <= Self::epsilon()
        }
    }

    /// `self < other` by more than the slack.
    fn definitely_lt(self, other: Self) -> bool {
        self + Self::epsilon() < other
    }
}

/// Splits a decimal literal into an exact ratio. Accepts `p/q`, `12`, `-0.25`, `3.`.
pub fn parse_ratio_i64(text: &str) -> Option<Ratio<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i64.checked_pow(frac_part.len() as u32)?;
    let numer = if negative { -numer } else { numer };
    Some(Ratio::new(numer, denom))
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn epsilon() -> Self {
                FLOAT_EPSILON as $t
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn parse_literal(text: &str) -> Option<Self> {
                let text = text.trim();
                if text.contains('/') {
                    let r = parse_ratio_i64(text)?;
                    return Some(Self::from_ratio(*r.numer(), *r.denom()));
                }
                let v: $t = text.parse().ok()?;
                v.is_finite().then_some(v)
            }

            fn to_literal(&self) -> String {
                format!("{}", self)
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

macro_rules! impl_ratio_scalar {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            const EXACT: bool = true;

            fn epsilon() -> Self {
                Ratio::from_integer(0)
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                let r = Ratio::new(numer, denom);
                Ratio::new(
                    <$t>::try_from(*r.numer()).expect("numerator out of range"),
                    <$t>::try_from(*r.denom()).expect("denominator out of range"),
                )
            }

            fn parse_literal(text: &str) -> Option<Self> {
                let r = parse_ratio_i64(text)?;
                Some(Ratio::new(<$t>::try_from(*r.numer()).ok()?, <$t>::try_from(*r.denom()).ok()?))
            }

            fn to_literal(&self) -> String {
                if *self.denom() == 1 {
                    format!("{}", self.numer())
                } else {
                    format!("{}/{}", self.numer(), self.denom())
                }
            }

            fn is_finite_value(&self) -> bool {
                true
            }

            fn to_f64_lossy(&self) -> f64 {
                self.to_f64().unwrap_or(f64::NAN)
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i32);

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn decimal_and_rational_literals() {
        assert_eq!(parse_ratio_i64("2.5"), Some(Ratio::new(5, 2)));
        assert_eq!(parse_ratio_i64("-0.25"), Some(Ratio::new(-1, 4)));
        assert_eq!(parse_ratio_i64("7/3"), Some(Ratio::new(7, 3)));
        assert_eq!(parse_ratio_i64("3."), Some(Ratio::new(3, 1)));
        assert_eq!(parse_ratio_i64(".5"), Some(Ratio::new(1, 2)));
        assert_eq!(parse_ratio_i64("1/0"), None);
        assert_eq!(parse_ratio_i64("abc"), None);
        assert_eq!(parse_ratio_i64("-"), None);
        assert_eq!(parse_ratio_i64("."), None);
    }

    #[test]
    fn exact_literal_round_trip() {
        for text in ["0", "5", "-3", "1/4", "-7/3"] {
            let v = Rational64::parse_literal(text).unwrap();
            assert_eq!(v.to_literal(), text);
        }
        assert_eq!(Rational64::parse_literal("0.5").unwrap().to_literal(), "1/2");
    }

    #[test]
    fn float_literals() {
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
        assert_eq!(f64::parse_literal("inf"), None);
        assert_eq!(f64::parse_literal("0.1").unwrap().to_literal(), "0.1");
        assert!(f64::approx_eq(0.1 + 0.2, 0.3));
        assert!(!Rational64::approx_eq(Ratio::new(1, 3), Ratio::new(333, 1000)));
    }
}
