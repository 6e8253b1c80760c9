//! Surgeries at the level of invariants: blowup and blowdown, fiber-sum
//! Betti bookkeeping, the fiber-sum gluing formula for Donaldson series and
//! the genus-2 tight surface certification for self fiber sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{int, rational_serde, ExpSum, GaussianRational, QuadExpSeries, Rational};
use crate::geography::FibrationProfile;
use crate::lattice::{H2Class, LatticeError};
use crate::manifold_series::{BasicClassEntry, Manifold, ManifoldError};

pub const BLOWUP_SUFFIX: &str = "#CP2bar";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MovesError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error("blowdown class has square {0}, expected -1")]
    NotExceptional(i64),
    #[error("blowdown class {0:?} has no coordinate equal to +1 or -1")]
    NoUnitCoordinate(H2Class),
    #[error("basic class {class:?} pairs to {pairing} with the exceptional class; expected +1 or -1")]
    Unpaired { class: H2Class, pairing: i64 },
    #[error("basic class {class:?} has no partner {partner:?}")]
    MissingPartner { class: H2Class, partner: H2Class },
    #[error("basic classes {class:?} and {partner:?} carry different data")]
    PartnerMismatch { class: H2Class, partner: H2Class },
    #[error("canonical class pairs to {0} with the exceptional class; expected -1")]
    CanonicalNotBlownUp(i64),
    #[error("gluing genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("w_{which}.Sigma = {value} is even; compatible classes are odd on the fiber")]
    FiberParity { which: &'static str, value: i64 },
    #[error("w_W^2 - w_X^2 - w_Z^2 = {0} is odd")]
    SquareParity(i64),
    #[error("declared D^2 = {d_w} but D_X^2 + D_Z^2 = {sum}")]
    SplitMismatch { d_w: i64, sum: i64 },
    #[error("extremal classes glue to several top exponents {0:?}; no single leading coefficient")]
    NonUniformLeading(Vec<i64>),
    #[error("factorization identity failed: lhs {lhs} != {rhs_x} * {rhs_z}")]
    FactorizationFailed { lhs: String, rhs_x: String, rhs_z: String },
    #[error("fibration {0:?} has no singular fibers")]
    TrivialFibration(String),
    #[error("fiber genus must be at least 1")]
    FiberGenusZero,
}

fn fresh_exceptional_label(x: &Manifold) -> String {
    (1..).map(|k| format!("E{k}")).find(|l| !x.lattice.labels().contains(l)).expect("unbounded label search")
}

/// `X # CP²bar`: the lattice gains a `⟨−1⟩` summand `E`, every basic class
/// `K` splits into `K ± E` with `β/2` and unchanged SW value, `K_X ↦ K_X + E`.
pub fn blowup(x: &Manifold) -> Manifold {
    let rank = x.rank() + 1;
    let label = fresh_exceptional_label(x);
    let lattice = x.lattice.with_exceptional(&label);
    let e = H2Class::basis(rank, rank - 1);
    let half = Rational::new(BigInt::one(), BigInt::from(2));

    let mut merged: BTreeMap<H2Class, BasicClassEntry> = BTreeMap::new();
    for entry in &x.basic_classes {
        let k = entry.class.extended(rank);
        for class in [&k + &e, &k - &e] {
            let beta = entry.beta.as_ref().map(|b| b * &half);
            match merged.get_mut(&class) {
                Some(existing) => {
                    // classes from distinct K cannot collide on a fresh summand,
                    // but the bookkeeping stays additive
                    existing.beta = add_opt(&existing.beta, &beta);
                    existing.sw = match (existing.sw, entry.sw) {
                        (Some(a), Some(b)) => Some(a + b),
                        (a, b) => a.or(b),
                    };
                }
                None => {
                    merged.insert(class.clone(), BasicClassEntry { class, beta, sw: entry.sw, order: entry.order });
                }
            }
        }
    }
    let basic_classes = merged
        .into_values()
        .filter(|e| !(e.beta.as_ref().is_some_and(Zero::is_zero) && e.sw.is_none_or(|s| s == 0)))
        .collect();

    Manifold {
        name: format!("{}{BLOWUP_SUFFIX}", x.name),
        b1: x.b1,
        b_plus: x.b_plus,
        b_minus: x.b_minus + 1,
        lattice,
        canonical: x.canonical.as_ref().map(|k| &k.extended(rank) + &e),
        basic_classes,
        simple_type: x.simple_type,
        finite_type_order: x.finite_type_order,
        spin: false,
        tight_surface_genus: x.tight_surface_genus,
        orientation_sign: x.orientation_sign,
        complete_class_data: x.complete_class_data,
    }
}

fn add_opt(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a + b),
        (a, b) => a.clone().or_else(|| b.clone()),
    }
}

/// Inverse of [`blowup`] along an exceptional class `E` with `E² = −1`.
///
/// The complement `E^⊥` gets the basis `bᵢ + (bᵢ·E)E` over all `i` except one
/// index where `E` has a unit coordinate; classes are re-expressed in it
/// exactly. Basic classes must pair off as `{K + E, K − E}` with equal data.
pub fn blowdown(xt: &Manifold, e: &H2Class) -> Result<Manifold, MovesError> {
    let l = &xt.lattice;
    let e_sq = l.square(e)?;
    if e_sq != -1 {
        return Err(MovesError::NotExceptional(e_sq));
    }
    let pivot =
        (0..e.rank()).rev().find(|&i| e.coords[i].abs() == 1).ok_or_else(|| MovesError::NoUnitCoordinate(e.clone()))?;
    let rank = l.rank();
    let mut basis = Vec::with_capacity(rank - 1);
    let mut labels = Vec::with_capacity(rank - 1);
    for i in (0..rank).filter(|&i| i != pivot) {
        let b = H2Class::basis(rank, i);
        let be = l.pairing(&b, e)?;
        basis.push(&b + &e.scale(be));
        labels.push(l.labels()[i].clone());
    }
    let lattice = l.induced(&basis, labels)?;
    let express = |c: &H2Class| -> Result<H2Class, MovesError> {
        let sol = l.solve_in_span(c, &basis)?;
        let coords = sol.integer_coefficients().ok_or(LatticeError::OutsideSpan)?;
        Ok(H2Class::new(coords))
    };

    let mut classes = Vec::new();
    for entry in &xt.basic_classes {
        let pairing = l.pairing(&entry.class, e)?;
        match pairing {
            -1 => {
                let partner = &entry.class - &e.scale(2);
                let other = xt.entry(&partner).ok_or_else(|| MovesError::MissingPartner {
                    class: entry.class.clone(),
                    partner: partner.clone(),
                })?;
                if other.beta != entry.beta || other.sw != entry.sw || other.order != entry.order {
                    return Err(MovesError::PartnerMismatch { class: entry.class.clone(), partner });
                }
                let k = express(&(&entry.class - e))?;
                classes.push(BasicClassEntry {
                    class: k,
                    beta: entry.beta.as_ref().map(|b| b * int(2)),
                    sw: entry.sw,
                    order: entry.order,
                });
            }
            1 => {
                let partner = &entry.class + &e.scale(2);
                if xt.entry(&partner).is_none() {
                    return Err(MovesError::MissingPartner { class: entry.class.clone(), partner });
                }
            }
            _ => return Err(MovesError::Unpaired { class: entry.class.clone(), pairing }),
        }
    }

    let canonical = match &xt.canonical {
        Some(k) => {
            let ke = l.pairing(k, e)?;
            if ke != -1 {
                return Err(MovesError::CanonicalNotBlownUp(ke));
            }
            Some(express(&(k - e))?)
        }
        None => None,
    };
    let spin = lattice.is_even();
    let x = Manifold {
        name: xt.name.strip_suffix(BLOWUP_SUFFIX).unwrap_or(&xt.name).to_string(),
        b1: xt.b1,
        b_plus: xt.b_plus,
        b_minus: xt.b_minus.saturating_sub(1),
        lattice,
        canonical,
        basic_classes: Vec::new(),
        simple_type: xt.simple_type,
        finite_type_order: xt.finite_type_order,
        spin,
        tight_surface_genus: xt.tight_surface_genus,
        orientation_sign: xt.orientation_sign,
        complete_class_data: xt.complete_class_data,
    };
    Ok(x.with_classes(classes))
}

/// `(b1, b⁺, b⁻)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiTriple {
    pub b1: i64,
    pub b_plus: i64,
    pub b_minus: i64,
}

impl BettiTriple {
    pub fn new(b1: i64, b_plus: i64, b_minus: i64) -> Self {
        BettiTriple { b1, b_plus, b_minus }
    }

    pub fn sigma(&self) -> i64 {
        self.b_plus - self.b_minus
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.b1 + self.b_plus + self.b_minus
    }

    /// `n^±(V) = b^±(V) − b1(V) + 2g − 1`.
    pub fn increments(&self, genus: i64) -> (i64, i64) {
        (self.b_plus - self.b1 + 2 * genus - 1, self.b_minus - self.b1 + 2 * genus - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberSumNumerics {
    pub b1: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub sigma: i64,
    pub euler: i64,
}

impl FiberSumNumerics {
    pub fn from_betti(t: BettiTriple) -> Self {
        FiberSumNumerics { b1: t.b1, b_plus: t.b_plus, b_minus: t.b_minus, sigma: t.sigma(), euler: t.euler() }
    }

    pub fn betti(&self) -> BettiTriple {
        BettiTriple::new(self.b1, self.b_plus, self.b_minus)
    }
}

/// Betti numbers of `W #_Σ V` for `b1(W) = 0` and fibers of genus `g`:
/// `b^±` grow by `n^±(V)`; signature and Euler number follow the additivity
/// formulas `σ(W) + σ(V)` and `e(W) + e(V) − 2(2 − 2g)`.
pub fn fiber_sum_numerics(w: BettiTriple, v: BettiTriple, genus: i64) -> FiberSumNumerics {
    let (n_plus, n_minus) = v.increments(genus);
    FiberSumNumerics::from_betti(BettiTriple::new(w.b1, w.b_plus + n_plus, w.b_minus + n_minus))
}

/// One basic-class term of a glued side: coefficient, pairing with the fiber
/// and pairing with the side's part of `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingTerm {
    #[serde(with = "rational_serde")]
    pub coefficient: Rational,
    pub fiber_pairing: i64,
    pub d_pairing: i64,
}

impl GluingTerm {
    pub fn new(coefficient: Rational, fiber_pairing: i64, d_pairing: i64) -> Self {
        GluingTerm { coefficient, fiber_pairing, d_pairing }
    }
}

/// The three `w` classes seen through their squares and fiber pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WData {
    pub w_w_sq: i64,
    pub w_x_sq: i64,
    pub w_z_sq: i64,
    pub w_w_fiber: i64,
    pub w_x_fiber: i64,
    pub w_z_fiber: i64,
}

/// `D ↦ (D_X, D_Z)` seen through `Σ·D` and the three squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSplit {
    pub sigma_dot_d: i64,
    pub d_sq: i64,
    pub d_x_sq: i64,
    pub d_z_sq: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingInput {
    pub genus: u32,
    pub x_terms: Vec<GluingTerm>,
    pub z_terms: Vec<GluingTerm>,
    pub w: WData,
    pub d: DSplit,
}

impl GluingInput {
    fn validate(&self) -> Result<(), MovesError> {
        if self.genus < 2 {
            return Err(MovesError::GenusTooSmall(self.genus));
        }
        for (which, value) in [("W", self.w.w_w_fiber), ("X", self.w.w_x_fiber), ("Z", self.w.w_z_fiber)] {
            if value.rem_euclid(2) == 0 {
                return Err(MovesError::FiberParity { which, value });
            }
        }
        let diff = self.w.w_w_sq - self.w.w_x_sq - self.w.w_z_sq;
        if diff.rem_euclid(2) != 0 {
            return Err(MovesError::SquareParity(diff));
        }
        let sum = self.d.d_x_sq + self.d.d_z_sq;
        if sum != self.d.d_sq {
            return Err(MovesError::SplitMismatch { d_w: self.d.d_sq, sum });
        }
        Ok(())
    }

    /// `ε = (−1)^{(g−1)(w_W² − w_X² − w_Z²)/2}`.
    pub fn epsilon(&self) -> i64 {
        let half = (self.w.w_w_sq - self.w.w_x_sq - self.w.w_z_sq) / 2;
        if ((self.genus as i64 - 1) * half).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn extremal(&self) -> i64 {
        2 * self.genus as i64 - 2
    }

    /// `2^{7g−9}`.
    pub fn gluing_power(&self) -> Rational {
        int(2).pow(7 * self.genus as i32 - 9)
    }
}

/// Donaldson series of the fiber sum along `tD`:
/// `exp(Q_W(tD)/2)·ε·[Σ_{K·Σ = L·Σ = 2g−2} −2^{7g−9} a b e^{(K·D_X + L·D_Z + 2Σ·D)t}
///  + Σ_{K·Σ = L·Σ = −(2g−2)} (−1)^g 2^{7g−9} a b e^{(K·D_X + L·D_Z − 2Σ·D)t}]`.
pub fn munoz_glue(inp: &GluingInput) -> Result<QuadExpSeries, MovesError> {
    inp.validate()?;
    let top = inp.extremal();
    let power = inp.gluing_power();
    let eps = int(inp.epsilon());
    let plus = -&power * &eps;
    let minus = if inp.genus.is_multiple_of(2) { &power * &eps } else { -&power * &eps };
    let mut expsum = ExpSum::new();
    for (side, factor, shift) in [(top, &plus, 2 * inp.d.sigma_dot_d), (-top, &minus, -2 * inp.d.sigma_dot_d)] {
        for a in inp.x_terms.iter().filter(|a| a.fiber_pairing == side) {
            for b in inp.z_terms.iter().filter(|b| b.fiber_pairing == side) {
                let exponent = a.d_pairing + b.d_pairing + shift;
                let coef = factor * &a.coefficient * &b.coefficient;
                expsum.add_term(GaussianRational::from_int(exponent), &GaussianRational::real(coef));
            }
        }
    }
    Ok(QuadExpSeries::new(int(inp.d.d_sq) / int(2), expsum))
}

/// The top-coefficient relation of a glued series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingFactorization {
    pub epsilon: i64,
    /// Glued exponent carrying the `K·Σ = L·Σ = 2g − 2` terms, if any pair exists.
    pub exponent: Option<i64>,
    /// Glued coefficient there divided by `−ε·2^{7g−9}`.
    #[serde(with = "rational_serde")]
    pub lhs: Rational,
    #[serde(with = "rational_serde")]
    pub rhs_x: Rational,
    #[serde(with = "rational_serde")]
    pub rhs_z: Rational,
    /// `lhs ≠ 0`.
    pub nonvanishing: bool,
}

/// Reads the top coefficient off [`munoz_glue`] and checks it equals the
/// product of the one-sided sums over classes with fiber pairing `2g − 2`.
///
/// The exponential prefactor `exp(Q_W(D)/2)` is kept in the `gauss` slot of
/// the series and never enters the comparison.
pub fn leading_factorization(inp: &GluingInput) -> Result<LeadingFactorization, MovesError> {
    let series = munoz_glue(inp)?;
    let top = inp.extremal();
    let xs: Vec<&GluingTerm> = inp.x_terms.iter().filter(|a| a.fiber_pairing == top).collect();
    let zs: Vec<&GluingTerm> = inp.z_terms.iter().filter(|b| b.fiber_pairing == top).collect();
    let rhs_x = xs.iter().fold(Rational::zero(), |acc, a| acc + &a.coefficient);
    let rhs_z = zs.iter().fold(Rational::zero(), |acc, b| acc + &b.coefficient);

    let mut exponents: Vec<i64> =
        xs.iter().flat_map(|a| zs.iter().map(move |b| a.d_pairing + b.d_pairing + 2 * inp.d.sigma_dot_d)).collect();
    exponents.sort_unstable();
    exponents.dedup();
    if exponents.len() > 1 {
        return Err(MovesError::NonUniformLeading(exponents));
    }
    let exponent = exponents.first().copied();
    let lhs = match exponent {
        Some(x) => {
            let c = series.expsum.coefficient(&GaussianRational::from_int(x));
            let scale = -inp.gluing_power() * int(inp.epsilon());
            &c.re / &scale
        }
        None => Rational::zero(),
    };
    if lhs != &rhs_x * &rhs_z {
        return Err(MovesError::FactorizationFailed {
            lhs: lhs.to_string(),
            rhs_x: rhs_x.to_string(),
            rhs_z: rhs_z.to_string(),
        });
    }
    Ok(LeadingFactorization { epsilon: inp.epsilon(), exponent, nonvanishing: !lhs.is_zero(), lhs, rhs_x, rhs_z })
}

/// Certification that the self fiber sum `V #_Σ V` (matched along a repeated
/// vanishing cycle) contains a genus-2 tight surface disjoint from a fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightSurfaceCertificate {
    pub source: String,
    pub fiber_genus: i64,
    pub singular_fibers: i64,
    pub tight_surface_genus: u32,
    /// Betti numbers of `V #_Σ V`, available when `b1(V) = 0`.
    pub self_sum: Option<FiberSumNumerics>,
}

impl TightSurfaceCertificate {
    /// Stamps the certification onto a manifold record of the fiber sum.
    pub fn apply(&self, x: &mut Manifold) {
        x.tight_surface_genus = Some(self.tight_surface_genus);
    }
}

pub fn tight_surface_cert(v: &FibrationProfile) -> Result<TightSurfaceCertificate, MovesError> {
    if v.genus < 1 {
        return Err(MovesError::FiberGenusZero);
    }
    let singular = v.singular_fibers();
    if singular <= 0 {
        return Err(MovesError::TrivialFibration(v.name.clone()));
    }
    let self_sum = (v.b1 == 0).then(|| fiber_sum_numerics(v.betti(), v.betti(), v.genus));
    Ok(TightSurfaceCertificate {
        source: v.name.clone(),
        fiber_genus: v.genus,
        singular_fibers: singular,
        tight_surface_genus: 2,
        self_sum,
    })
}
