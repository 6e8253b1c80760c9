//! Closed 4-manifold records, the simple-type Donaldson series and the
//! congruence, adjunction and Witten-consistency rules applied to them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_algebra::{int, ExpSum, GaussianRational, QuadExpSeries, Rational};
use crate::lattice::{H2Class, Lattice, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice rank {rank} differs from b+ + b- = {b_plus} + {b_minus}")]
    RankMismatch { rank: usize, b_plus: usize, b_minus: usize },
    #[error("lattice signature {lattice} differs from b+ - b- = {declared}")]
    SignatureMismatch { lattice: i64, declared: i64 },
    #[error("simple-type manifold has basic class {0:?} with nonzero order")]
    OrderInSimpleType(H2Class),
    #[error("basic class {0:?} has beta = 0")]
    ZeroBeta(H2Class),
    #[error("basic class {0:?} is listed twice")]
    DuplicateClass(H2Class),
    #[error("spin manifold with odd intersection lattice")]
    SpinOddLattice,
    #[error("orientation sign must be +1 or -1, got {0}")]
    OrientationSign(i64),
    #[error("basic classes are not closed under negation: {0:?} has no partner")]
    NotClosedUnderNegation(H2Class),
    #[error("simple type required; use asymptotics")]
    NotSimpleType,
    #[error("operation requires b1 = 0, got b1 = {0}")]
    NonzeroB1(usize),
    #[error("operation requires odd b+ > 1, got b+ = {0}")]
    BPlus(usize),
    #[error("(w^2 + K.w) is odd for basic class {0:?}")]
    OddSignExponent(H2Class),
    #[error("basic class {0:?} carries no Donaldson coefficient")]
    MissingBeta(H2Class),
    #[error("b+ - b1 + 1 = {0} is odd; the degree congruence is not integral")]
    HalfIntegerCongruence(i64),
    #[error("adjunction inequality does not apply: S^2 = {square}, odd class = {odd}")]
    AdjunctionInapplicable { square: i64, odd: bool },
    #[error("surface genus must be at least 1")]
    GenusZero,
    #[error("no basic classes")]
    EmptyClasses,
    #[error("basic class {0:?} lacks beta or SW data")]
    MissingWittenData(H2Class),
    #[error("basic class {0:?} has SW = 0 but beta != 0")]
    ZeroSw(H2Class),
    #[error("basic class {class:?}: beta = {beta} but c*SW = {expected}")]
    WittenMismatch { class: H2Class, beta: String, expected: String },
}

/// One basic class with its Donaldson coefficient, SW value and finite-type order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicClassEntry {
    pub class: H2Class,
    pub beta: Option<Rational>,
    pub sw: Option<i64>,
    pub order: u32,
}

impl BasicClassEntry {
    pub fn new(class: H2Class, beta: Option<Rational>, sw: Option<i64>) -> Self {
        BasicClassEntry { class, beta, sw, order: 0 }
    }

    pub fn donaldson(class: H2Class, beta: Rational) -> Self {
        Self::new(class, Some(beta), None)
    }

    pub fn seiberg_witten(class: H2Class, sw: i64) -> Self {
        Self::new(class, None, Some(sw))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifold {
    pub name: String,
    pub b1: usize,
    pub b_plus: usize,
    pub b_minus: usize,
    pub lattice: Lattice,
    pub canonical: Option<H2Class>,
    /// Kept sorted by class coordinates.
    pub basic_classes: Vec<BasicClassEntry>,
    pub simple_type: bool,
    pub finite_type_order: u32,
    pub spin: bool,
    pub tight_surface_genus: Option<u32>,
    pub orientation_sign: i64,
    /// Declares that the class list is the full Donaldson/SW data, which
    /// switches on the closure-under-negation check.
    pub complete_class_data: bool,
}

impl Manifold {
    /// Simply connected-style record with Betti numbers read off the lattice
    /// and no basic-class data.
    pub fn from_lattice(name: impl Into<String>, lattice: Lattice) -> Self {
        Manifold {
            name: name.into(),
            b1: 0,
            b_plus: lattice.b_plus(),
            b_minus: lattice.b_minus(),
            spin: false,
            lattice,
            canonical: None,
            basic_classes: Vec::new(),
            simple_type: true,
            finite_type_order: 0,
            tight_surface_genus: None,
            orientation_sign: 1,
            complete_class_data: false,
        }
    }

    pub fn with_classes(mut self, classes: Vec<BasicClassEntry>) -> Self {
        self.basic_classes = classes;
        self.sort_classes();
        self
    }

    pub fn sort_classes(&mut self) {
        self.basic_classes.sort_by(|a, b| a.class.cmp(&b.class));
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }

    /// Euler characteristic `2 − 2b1 + b⁺ + b⁻`.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.b1 as i64 + self.b_plus as i64 + self.b_minus as i64
    }

    pub fn entry(&self, class: &H2Class) -> Option<&BasicClassEntry> {
        self.basic_classes.iter().find(|e| &e.class == class)
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        let rank = self.lattice.rank();
        if self.b1 == 0 && rank != self.b_plus + self.b_minus {
            return Err(ManifoldError::RankMismatch { rank, b_plus: self.b_plus, b_minus: self.b_minus });
        }
        if self.lattice.signature() != self.signature() {
            return Err(ManifoldError::SignatureMismatch {
                lattice: self.lattice.signature(),
                declared: self.signature(),
            });
        }
        if self.orientation_sign != 1 && self.orientation_sign != -1 {
            return Err(ManifoldError::OrientationSign(self.orientation_sign));
        }
        if self.spin && !self.lattice.is_even() {
            return Err(ManifoldError::SpinOddLattice);
        }
        if let Some(k) = &self.canonical {
            self.lattice.check(k)?;
        }
        let mut seen = BTreeSet::new();
        for e in &self.basic_classes {
            self.lattice.check(&e.class)?;
            if !seen.insert(&e.class) {
                return Err(ManifoldError::DuplicateClass(e.class.clone()));
            }
            if e.beta.as_ref().is_some_and(Zero::is_zero) {
                return Err(ManifoldError::ZeroBeta(e.class.clone()));
            }
            if self.simple_type && e.order != 0 {
                return Err(ManifoldError::OrderInSimpleType(e.class.clone()));
            }
        }
        if self.complete_class_data {
            for e in &self.basic_classes {
                if !seen.contains(&-&e.class) {
                    return Err(ManifoldError::NotClosedUnderNegation(e.class.clone()));
                }
            }
        }
        Ok(())
    }

    fn require_standard_betti(&self) -> Result<(), ManifoldError> {
        if self.b1 != 0 {
            return Err(ManifoldError::NonzeroB1(self.b1));
        }
        if self.b_plus <= 1 || self.b_plus.is_multiple_of(2) {
            return Err(ManifoldError::BPlus(self.b_plus));
        }
        Ok(())
    }

    /// `c(X) = 2^{2 + (7e + 11σ)/4}` when the exponent is an integer.
    pub fn predicted_witten_constant(&self) -> Option<Rational> {
        let num = 8 + 7 * self.euler() + 11 * self.signature();
        if num % 4 != 0 {
            return None;
        }
        let k = num / 4;
        let two = Rational::from_integer(BigInt::from(2));
        Some(if k >= 0 {
            num_traits::pow(two, k as usize)
        } else {
            Rational::one() / num_traits::pow(two, (-k) as usize)
        })
    }
}

/// Evaluation point `(w, h)` of a Donaldson series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalRequest {
    pub w: H2Class,
    pub h: H2Class,
}

/// `exp(Q(h)/2)·Σ (−1)^{(w²+K·w)/2} β_K e^{(K·h)t}`, times the orientation sign.
pub fn donaldson_series(x: &Manifold, req: &EvalRequest) -> Result<QuadExpSeries, ManifoldError> {
    if !x.simple_type {
        return Err(ManifoldError::NotSimpleType);
    }
    x.require_standard_betti()?;
    let l = &x.lattice;
    let w_sq = l.square(&req.w)?;
    let h_sq = l.square(&req.h)?;
    let mut expsum = ExpSum::new();
    for e in &x.basic_classes {
        let beta = e.beta.as_ref().ok_or_else(|| ManifoldError::MissingBeta(e.class.clone()))?;
        let exponent = w_sq + l.pairing(&e.class, &req.w)?;
        if exponent.rem_euclid(2) != 0 {
            return Err(ManifoldError::OddSignExponent(e.class.clone()));
        }
        let sign = if (exponent / 2).rem_euclid(2) == 0 { 1 } else { -1 } * x.orientation_sign;
        let coef = GaussianRational::real(beta * int(sign));
        expsum.add_term(GaussianRational::from_int(l.pairing(&e.class, &req.h)?), &coef);
    }
    Ok(QuadExpSeries::new(int(h_sq) / int(2), expsum))
}

/// Residue `d₀` and whether `D(hⁿ)` may be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub d0: i64,
    pub allowed: bool,
}

/// `n ≡ −w² − (3/2)(b⁺ − b1 + 1) (mod 4)`.
pub fn degree_congruence(w_sq: i64, b_plus: i64, b1: i64, n: i64) -> Result<Congruence, ManifoldError> {
    let d0 = residue_d0(w_sq, b_plus, b1)?;
    Ok(Congruence { d0, allowed: n.rem_euclid(4) == d0 })
}

/// The residue `d₀ ∈ {0, 1, 2, 3}` alone.
pub fn residue_d0(w_sq: i64, b_plus: i64, b1: i64) -> Result<i64, ManifoldError> {
    let m = b_plus - b1 + 1;
    if m.rem_euclid(2) != 0 {
        return Err(ManifoldError::HalfIntegerCongruence(m));
    }
    Ok((-w_sq - 3 * (m / 2)).rem_euclid(4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub holds: bool,
    /// `|K·S| + S² + 2·order`.
    pub lhs: i64,
    /// `2g − 2`.
    pub bound: i64,
}

impl AdjunctionCheck {
    pub fn is_equality(&self) -> bool {
        self.lhs == self.bound
    }
}

/// `|K·S| + S² + 2d(K) ≤ 2g − 2`, applicable when `S² > 0`, or `S² = 0` and `S` is odd.
pub fn adjunction_check(
    entry: &BasicClassEntry,
    surface: &H2Class,
    genus: u32,
    lattice: &Lattice,
    odd_class: bool,
) -> Result<AdjunctionCheck, ManifoldError> {
    if genus == 0 {
        return Err(ManifoldError::GenusZero);
    }
    let square = lattice.square(surface)?;
    if square < 0 || (square == 0 && !odd_class) {
        return Err(ManifoldError::AdjunctionInapplicable { square, odd: odd_class });
    }
    let lhs = lattice.pairing(&entry.class, surface)?.abs() + square + 2 * entry.order as i64;
    let bound = 2 * genus as i64 - 2;
    Ok(AdjunctionCheck { holds: lhs <= bound, lhs, bound })
}

/// The unique `c` with `β_K = c·SW(K)` for every basic class.
pub fn witten_consistency(x: &Manifold) -> Result<Rational, ManifoldError> {
    let mut c: Option<Rational> = None;
    if x.basic_classes.is_empty() {
        return Err(ManifoldError::EmptyClasses);
    }
    for e in &x.basic_classes {
        let (Some(beta), Some(sw)) = (&e.beta, e.sw) else {
            return Err(ManifoldError::MissingWittenData(e.class.clone()));
        };
        if sw == 0 {
            return Err(ManifoldError::ZeroSw(e.class.clone()));
        }
        let sw = int(sw);
        match &c {
            None => c = Some(beta / &sw),
            Some(c) => {
                let expected = c * &sw;
                if &expected != beta {
                    return Err(ManifoldError::WittenMismatch {
                        class: e.class.clone(),
                        beta: beta.to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
        }
    }
    Ok(c.expect("nonempty class list"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InferenceRule {
    /// An embedded surface with `S² = 2g − 2 > 0` is recorded.
    TightSurface {
        genus: u32,
    },
    /// Betti numbers outside `b1 = 0`, odd `b⁺ > 1`.
    Inapplicable,
    NoCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleTypeInference {
    /// `false` means "not established", not "disproved".
    pub simple_type: bool,
    pub rule: InferenceRule,
}

pub fn simple_type_inference(x: &Manifold) -> SimpleTypeInference {
    if x.require_standard_betti().is_err() {
        return SimpleTypeInference { simple_type: false, rule: InferenceRule::Inapplicable };
    }
    match x.tight_surface_genus {
        Some(genus) if genus >= 2 => {
            SimpleTypeInference { simple_type: true, rule: InferenceRule::TightSurface { genus } }
        }
        _ => SimpleTypeInference { simple_type: false, rule: InferenceRule::NoCertificate },
    }
}
