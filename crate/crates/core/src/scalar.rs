//! Scalar abstraction shared by the rate arithmetic and the covering LP.
//!
//! Exact types report a zero tolerance, floating types a small positive one,
//! so the same pivoting code serves both.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, Zero};

use crate::error::{Error, Result};

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + FromPrimitive {
    /// Magnitude below which a value is treated as zero.
    fn tolerance() -> Self;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    fn is_strictly_positive(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_strictly_negative(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        let n = Self::from_i64(num).expect("numerator representable");
        let d = Self::from_i64(den).expect("denominator representable");
        n / d
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
}

impl Scalar for Ratio<i64> {
    fn tolerance() -> Self {
        Ratio::zero()
    }
}

/// Builds the exact rational `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, `"p"` or a short decimal such as `"2.5"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::InvalidParams(format!("not a rational number: '{text}'"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, scale));
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Floor of a non-negative rational as `usize`.
pub(crate) fn floor_usize(r: &BigRational) -> Option<usize> {
    use num_traits::ToPrimitive;
    r.floor().to_integer().to_usize()
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<BigRational>, D::Error> {
            let items = Vec::<String>::deserialize(d)?;
            items
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod map {
        use super::*;
        use serde::ser::SerializeMap;
        use std::collections::BTreeMap;

        pub fn serialize<S: Serializer>(
            m: &BTreeMap<String, BigRational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut map = s.serialize_map(Some(m.len()))?;
            for (k, v) in m {
                map.serialize_entry(k, &format_rational(v))?;
            }
            map.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<BTreeMap<String, BigRational>, D::Error> {
            let raw = BTreeMap::<String, String>::deserialize(d)?;
            raw.into_iter()
                .map(|(k, v)| {
                    parse_rational(&v)
                        .map(|r| (k, r))
                        .map_err(serde::de::Error::custom)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("2.5").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("4/8").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formats_with_denominator() {
        assert_eq!(format_rational(&int(5)), "5/1");
        assert_eq!(format_rational(&ratio(10, 4)), "5/2");
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-12f64.is_negligible());
        assert!(!1e-3f64.is_negligible());
        assert!(!ratio(1, 1_000_000_000).is_negligible());
    }
}
