//! Arbitrary-precision rationals and their string forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Always `a/b`, including integers (`3/1`).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `a/b` or a bare integer `a`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

fn ten_pow(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

fn scaled_to_decimal(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let digits = digits as usize;
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (int_part, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Decimal string of `r` rounded toward negative infinity.
pub fn decimal_floor(r: &Rational, digits: u32) -> String {
    scaled_to_decimal(&floor(&(r * from_bigint(&ten_pow(digits)))), digits)
}

/// Decimal string of `r` rounded toward positive infinity.
pub fn decimal_ceil(r: &Rational, digits: u32) -> String {
    scaled_to_decimal(&ceil(&(r * from_bigint(&ten_pow(digits)))), digits)
}

/// Outward-rounded decimal enclosure `[lo, hi]` of `r`, of width at most `10^-digits`.
pub fn decimal_enclosure(r: &Rational, digits: u32) -> (String, String) {
    (decimal_floor(r, digits), decimal_ceil(r, digits))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio of huge integers: scale both down through their bit lengths.
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = (nb.max(db) - 1000).max(0) as usize;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `10^-digits` as an exact rational.
pub fn ten_to_minus(digits: u32) -> Rational {
    Rational::new(BigInt::one(), ten_pow(digits))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Serde adapters for the `"a/b"` wire format.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&fmt_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
        }
    }
}

/// Serde adapters writing integers as JSON numbers when they fit in `i64`
/// and as decimal strings otherwise.
pub mod serde_bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Wire {
        Small(i64),
        Big(String),
    }

    fn to_wire(n: &BigInt) -> Wire {
        match i64::try_from(n) {
            Ok(v) => Wire::Small(v),
            Err(_) => Wire::Big(n.to_string()),
        }
    }

    fn from_wire(w: Wire) -> Result<BigInt, String> {
        match w {
            Wire::Small(v) => Ok(BigInt::from(v)),
            Wire::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_wire).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Wire>::deserialize(d)?
            .into_iter()
            .map(|w| from_wire(w).map_err(serde::de::Error::custom))
            .collect()
    }

    /// Rows of integers.
    pub mod rows {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|r| r.iter().map(to_wire).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Wire>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(|w| from_wire(w).map_err(serde::de::Error::custom)).collect())
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_forms() {
        assert_eq!(fmt_rational(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&int(3)), "3/1");
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal_floor(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal_ceil(&rat(1, 3), 4), "0.3334");
        assert_eq!(decimal_floor(&rat(-1, 3), 2), "-0.34");
        assert_eq!(decimal_ceil(&rat(-1, 3), 2), "-0.33");
        assert_eq!(decimal_floor(&int(5), 2), "5.00");
        assert_eq!(decimal_floor(&rat(7, 2), 0), "3");
    }

    #[test]
    fn floor_ceil_negative() {
        assert_eq!(floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(ceil(&int(2)), BigInt::from(2));
    }
}
