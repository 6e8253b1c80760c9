use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{GaussianRational, Polynomial, Rational};

/// Finite exponential sum `Σ c_λ e^{λt}` keyed by exponent.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// the represented functions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpSum {
    terms: BTreeMap<GaussianRational, GaussianRational>,
}

impl ExpSum {
    pub fn new() -> Self {
        ExpSum::default()
    }

    /// The constant function 1, i.e. `{0: 1}`.
    pub fn one() -> Self {
        Self::from_terms([(GaussianRational::zero(), GaussianRational::one())])
    }

    /// Builds a sum from `(exponent, coefficient)` pairs, collecting like exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (GaussianRational, GaussianRational)>,
    {
        let mut out = ExpSum::new();
        for (lambda, c) in terms {
            out.add_term(lambda, &c);
        }
        out
    }

    pub fn add_term(&mut self, lambda: GaussianRational, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (lexicographic on `(re, im)` of the exponent).
    pub fn iter(&self) -> impl Iterator<Item = (&GaussianRational, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, lambda: &GaussianRational) -> GaussianRational {
        self.terms.get(lambda).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Exponents add, coefficients multiply.
    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut out = ExpSum::new();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                out.add_term(l1 + l2, &(c1 * c2));
            }
        }
        out
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> ExpSum {
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), c * s)))
    }

    pub fn neg(&self) -> ExpSum {
        self.scale(&GaussianRational::from_int(-1))
    }

    /// Replaces each term `(λ, c)` by `(λ, f(λ)·c)`.
    pub fn apply_poly_to_exponents(&self, f: &Polynomial) -> ExpSum {
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), &f.eval(l) * c)))
    }

    /// Re-keys every exponent through `map`; collisions are merged.
    pub fn map_exponents<F>(&self, map: F) -> ExpSum
    where
        F: Fn(&GaussianRational) -> GaussianRational,
    {
        Self::from_terms(self.terms.iter().map(|(l, c)| (map(l), c.clone())))
    }

    /// The term of maximal exponent: largest real part, ties broken by the
    /// imaginary part.
    pub fn leading_term(&self) -> Option<(&GaussianRational, &GaussianRational)> {
        self.terms.iter().next_back()
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({})·e^({}t)", c, l)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exponent: GaussianRational,
    coefficient: GaussianRational,
}

impl Serialize for ExpSum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let docs: Vec<TermDoc> =
            self.terms.iter().map(|(l, c)| TermDoc { exponent: l.clone(), coefficient: c.clone() }).collect();
        docs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExpSum {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let docs = Vec::<TermDoc>::deserialize(deserializer)?;
        Ok(ExpSum::from_terms(docs.into_iter().map(|d| (d.exponent, d.coefficient))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hyperbolic {
    Cosh,
    Sinh,
}

/// Formal series `exp(q·t²)·Σ c_λ e^{λt}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadExpSeries {
    #[serde(with = "super::rational_serde")]
    pub gauss: Rational,
    pub expsum: ExpSum,
}

impl QuadExpSeries {
    pub fn new(gauss: Rational, expsum: ExpSum) -> Self {
        QuadExpSeries { gauss, expsum }
    }

    pub fn one() -> Self {
        QuadExpSeries::new(Rational::zero(), ExpSum::one())
    }

    pub fn is_zero(&self) -> bool {
        self.expsum.is_empty()
    }

    pub fn mul(&self, other: &QuadExpSeries) -> QuadExpSeries {
        QuadExpSeries::new(&self.gauss + &other.gauss, self.expsum.mul(&other.expsum))
    }

    /// Multiplies by `exp(quad_shift·t²)·cosh(a·t)` or `exp(quad_shift·t²)·sinh(a·t)`.
    pub fn mul_hyperbolic(&self, a: &GaussianRational, kind: Hyperbolic, quad_shift: &Rational) -> QuadExpSeries {
        let half = GaussianRational::ratio(1, 2);
        let minus_side = match kind {
            Hyperbolic::Cosh => half.clone(),
            Hyperbolic::Sinh => -half.clone(),
        };
        let factor = ExpSum::from_terms([(a.clone(), half), (-a, minus_side)]);
        QuadExpSeries::new(&self.gauss + quad_shift, self.expsum.mul(&factor))
    }

    /// `n!` times the `tⁿ` coefficient, i.e. the value `D(hⁿ)` the series encodes:
    /// `Σ_λ c_λ Σ_{2a+b=n} n!/(a!·b!)·qᵃ·λᵇ`.
    pub fn taylor_coefficient(&self, n: u32) -> GaussianRational {
        let fact: Vec<BigInt> = (0..=n)
            .scan(BigInt::one(), |acc, k| {
                if k > 0 {
                    *acc *= k;
                }
                Some(acc.clone())
            })
            .collect();
        let q = GaussianRational::real(self.gauss.clone());
        let mut total = GaussianRational::zero();
        for (lambda, c) in self.expsum.iter() {
            let mut inner = GaussianRational::zero();
            for a in 0..=n / 2 {
                let b = n - 2 * a;
                let weight = Rational::new(fact[n as usize].clone(), &fact[a as usize] * &fact[b as usize]);
                let term = (&q.pow(a as u64) * &lambda.pow(b as u64)).scale(&weight);
                inner += &term;
            }
            total += &(c * &inner);
        }
        total
    }

    pub fn leading_term(&self) -> Option<(&GaussianRational, &GaussianRational)> {
        self.expsum.leading_term()
    }
}

impl fmt::Display for QuadExpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({}·t²)·[{}]", self.gauss, self.expsum)
    }
}

impl fmt::Debug for QuadExpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExpSeries(q={}, {:?})", self.gauss, self.expsum)
    }
}
