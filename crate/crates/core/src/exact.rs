//! Exact rational quantities for lengths (metres) and load-distance costs.
//!
//! Floor dimensions enter as decimal numbers and cell sizes are derived by
//! division, so every length is a rational with a small denominator. Costs are
//! integer flows times those lengths. Keeping both exact means cost comparisons
//! in the improvement loop never depend on rounding.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Decimal places accepted when reading a quantity from a float or string.
pub const MAX_DECIMALS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exact(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("`{0}` is not a finite decimal number")]
    NotDecimal(String),
    #[error("`{0}` has more than {MAX_DECIMALS} decimal places")]
    TooPrecise(String),
}

impl Exact {
    pub const ZERO: Exact = Exact(Ratio::new_raw(0, 1));

    pub fn from_int(v: i64) -> Self {
        Exact(Ratio::from_integer(v))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Exact(Ratio::new(numer, denom))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        *self.0.numer() > 0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs_diff(self, other: Exact) -> Exact {
        if self >= other {
            self - other
        } else {
            other - self
        }
    }

    /// Parses a plain decimal literal such as `64`, `2.5` or `-0.125`.
    pub fn parse_decimal(text: &str) -> Result<Self, ExactError> {
        let t = text.trim();
        let bad = || ExactError::NotDecimal(text.to_string());
        let (neg, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.len() > MAX_DECIMALS {
            return Err(ExactError::TooPrecise(text.to_string()));
        }
        let denom = 10i64.pow(frac_part.len() as u32);
        let int_val: i64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac_val: i64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let numer = int_val
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Ok(Exact(Ratio::new(if neg { -numer } else { numer }, denom)))
    }

    /// Converts a float through its shortest round-trip decimal form.
    pub fn from_f64(v: f64) -> Result<Self, ExactError> {
        if !v.is_finite() {
            return Err(ExactError::NotDecimal(v.to_string()));
        }
        Self::parse_decimal(&format!("{v}"))
    }
}

impl From<i64> for Exact {
    fn from(v: i64) -> Self {
        Exact::from_int(v)
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, rhs: Exact) -> Exact {
        Exact(self.0 + rhs.0)
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, rhs: Exact) -> Exact {
        Exact(self.0 - rhs.0)
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, rhs: Exact) -> Exact {
        Exact(self.0 * rhs.0)
    }
}

impl Mul<i64> for Exact {
    type Output = Exact;
    fn mul(self, rhs: i64) -> Exact {
        Exact(self.0 * rhs)
    }
}

impl Sum for Exact {
    fn sum<I: Iterator<Item = Exact>>(iter: I) -> Exact {
        iter.fold(Exact::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            let v = self.to_f64();
            // Six places is enough to tell neighbouring costs apart on screen.
            let s = format!("{v:.6}");
            write!(f, "{}", s.trim_end_matches('0').trim_end_matches('.'))
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_integer() {
            serializer.serialize_i64(self.numer())
        } else {
            serializer.serialize_f64(self.to_f64())
        }
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal number")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                i64::try_from(v)
                    .map(Exact::from_int)
                    .map_err(|_| E::custom("integer out of range"))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exact, E> {
                Exact::from_f64(v).map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                Exact::parse_decimal(v).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExactVisitor)
    }
}
