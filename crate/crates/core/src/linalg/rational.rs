use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and denominator, always
/// in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            if q == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.parse().map_err(|_| Error::Parse(s.to_string()))?),
    };
    Ok(parsed)
}

/// Serde adapter writing rationals as strings.
pub(crate) mod as_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
