//! Exact rationals and their canonical `"num/den"` string form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Canonical lowest-terms string; integers still carry `/1`.
pub fn format(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"a/b"`, `"a"`, or a terminating decimal such as `"-0.25"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n = BigInt::from_str(&digits).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|e| Error::Parse(format!("{s}: {e}")))
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

/// Serde adapter: a rational written as its canonical string, read from a
/// string or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatStr(pub Rational);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_json(&v).map(RatStr).map_err(de::Error::custom)
    }
}

pub fn from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(int(i))
            } else {
                parse(&n.to_string())
            }
        }
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}

pub fn to_json(x: &Rational) -> serde_json::Value {
    serde_json::Value::String(format(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format(&rat(4, -6)), "-2/3");
        assert_eq!(format(&int(5)), "5/1");
        assert_eq!(parse("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let v: Vec<RatStr> = serde_json::from_str(r#"[1, "2/3", -4]"#).unwrap();
        assert_eq!(v[1].0, rat(2, 3));
        assert_eq!(serde_json::to_string(&v[2]).unwrap(), r#""-4/1""#);
    }
}
