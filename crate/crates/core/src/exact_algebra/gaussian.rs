use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rational_to_string, Rational};

/// A complex number `re + im·i` with exact rational parts.
///
/// Ordering is lexicographic on `(re, im)`. It carries no algebraic meaning;
/// it exists so that maps keyed by exponents have a canonical iteration order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational { re: Rational::from_integer(BigInt::from(re)), im: Rational::from_integer(BigInt::from(im)) }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_ints(1, 0),
            1 => Self::from_ints(0, 1),
            2 => Self::from_ints(-1, 0),
            _ => Self::from_ints(0, -1),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: rmul(&self.re, r), im: rmul(&self.im, r) }
    }

    /// Returns the value as an integer if it is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_real() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

// `Ratio` normalizes with num-bigint's binary gcd, which is quadratic in the bit
// length when one argument is small (a denominator of 1 or 2, say). These
// helpers reduce with Euclid's remainder sequence instead and skip reduction
// for integers.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn reduced(num: BigInt, den: BigInt) -> Rational {
    if num.is_zero() {
        return Rational::zero();
    }
    let g = gcd(&num, &den);
    if g.is_one() {
        Rational::new_raw(num, den)
    } else {
        Rational::new_raw(num / &g, den / g)
    }
}

fn radd(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        return Rational::from_integer(a.numer() + b.numer());
    }
    if a.denom() == b.denom() {
        return reduced(a.numer() + b.numer(), a.denom().clone());
    }
    let g = gcd(a.denom(), b.denom());
    let (da, db) = (a.denom() / &g, b.denom() / &g);
    reduced(a.numer() * &db + b.numer() * &da, a.denom() * db)
}

fn rsub(a: &Rational, b: &Rational) -> Rational {
    radd(a, &-b)
}

fn rmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if a.is_integer() && b.is_integer() {
        return Rational::from_integer(a.numer() * b.numer());
    }
    let g1 = gcd(a.numer(), b.denom());
    let g2 = gcd(b.numer(), a.denom());
    Rational::new_raw((a.numer() / &g1) * (b.numer() / &g2), (a.denom() / &g2) * (b.denom() / &g1))
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: radd(&self.re, &rhs.re), im: radd(&self.im, &rhs.im) }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: rsub(&self.re, &rhs.re), im: rsub(&self.im, &rhs.im) }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(rmul(&self.re, &rhs.re));
        }
        GaussianRational {
            re: rsub(&rmul(&self.re, &rhs.re), &rmul(&self.im, &rhs.im)),
            im: radd(&rmul(&self.re, &rhs.im), &rmul(&self.im, &rhs.re)),
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        #[allow(clippy::suspicious_arithmetic_impl)]
        let q = self * &inv;
        q
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re = radd(&self.re, &rhs.re);
        self.im = radd(&self.im, &rhs.im);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re = rsub(&self.re, &rhs.re);
        self.im = rsub(&self.im, &rhs.im);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() { "i".to_string() } else { format!("{}i", im_abs) };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", im_part)
            } else {
                write!(f, "{}", im_part)
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", self.re, sign, im_part)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianDoc {
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GaussianDoc { re: rational_to_string(&self.re), im: rational_to_string(&self.im) }.serialize(serializer)
    }
}

/// Accepted input forms: `{"re": "p/q", "im": "p/q"}`, a bare `"p/q"` string, or an integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum GaussianInput {
    Int(i64),
    Real(String),
    Doc(GaussianDoc),
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (re, im) = match GaussianInput::deserialize(deserializer)? {
            GaussianInput::Int(n) => return Ok(GaussianRational::from_int(n)),
            GaussianInput::Real(re) => (re, "0".to_string()),
            GaussianInput::Doc(doc) => (doc.re, doc.im),
        };
        let re = parse_rational(&re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&im).map_err(serde::de::Error::custom)?;
        Ok(GaussianRational { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(GaussianRational::i_pow(-1), GaussianRational::from_ints(0, -1));
        assert_eq!(GaussianRational::i_pow(9), i);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = GaussianRational::from_ints(3, -2);
        let b = GaussianRational::new(Rational::new(1.into(), 2.into()), Rational::from_integer(5.into()));
        let q = &(&a * &b) / &b;
        assert_eq!(q, a);
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::from_ints(0, 1).to_string(), "i");
        assert_eq!(GaussianRational::from_ints(2, -3).to_string(), "2-3i");
        assert_eq!(GaussianRational::ratio(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn json_uses_fraction_strings() {
        let z = GaussianRational::new(Rational::new(1.into(), 3.into()), Rational::from_integer((-2).into()));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"1/3","im":"-2"}"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }
}
