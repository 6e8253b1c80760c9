//! Exact scalar and series arithmetic.
//!
//! Rationals are `num_rational::BigRational`; everything built on top
//! (Gaussian rationals, polynomials, exponential sums, matrices) is exact and
//! never touches floating point.

mod gaussian;
mod matrix;
mod polynomial;
mod series;

pub use gaussian::GaussianRational;
pub use matrix::{dot, Matrix};
pub use polynomial::Polynomial;
pub use series::{ExpSum, Hyperbolic, QuadExpSeries};

use num_bigint::BigInt;
use num_traits::One;

/// Arbitrary-precision rational, always kept reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"` for non-integers, `"p"` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("invalid rational denominator in {s:?}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter writing a [`Rational`] as a `"p/q"` string.
pub mod rational_serde {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod opt_rational_serde {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&rational_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| parse_rational(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec_rational_serde {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rational_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}
