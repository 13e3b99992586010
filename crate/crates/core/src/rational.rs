//! Exact rationals and their structured serialization.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = Ratio<i128>;

pub fn int(v: impl Into<i128>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn floor(r: &Rational) -> i128 {
    r.numer().div_floor(r.denom())
}

/// Decimal rendering rounded half away from zero to six places; integers print bare.
pub fn decimal(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let scale = 1_000_000i128;
    let scaled = (r.abs() * int(scale) * int(2) + int(1)) / int(2);
    let units = scaled.floor().to_integer();
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{}.{:06}", units / scale, units % scale)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    num: i128,
    den: i128,
    #[serde(default)]
    decimal: Option<String>,
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Wire {
        num: *r.numer(),
        den: *r.denom(),
        decimal: Some(decimal(r)),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let w = Wire::deserialize(d)?;
    if w.den <= 0 {
        return Err(serde::de::Error::custom("rational denominator must be positive"));
    }
    Ok(Rational::new(w.num, w.den))
}
