//! Lefschetz fibration records, the constraints they impose on basic classes
//! that pair maximally with the fiber, and the pencil-to-fibration arithmetic.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::Rational;
use crate::lattice::{H2Class, Lattice, LatticeError};
use crate::manifold_series::{Manifold, ManifoldError};
use crate::moves::blowup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error("fiber genus must be at least 2, got {0}")]
    GenusTooSmall(i64),
    #[error("fiber class has square {0}, expected 0")]
    FiberSquare(i64),
    #[error("{0} is not primitive")]
    NotPrimitive(String),
    #[error("reducible fiber {0}: F + G differs from the fiber class")]
    ReducibleSum(usize),
    #[error("reducible fiber {index}: F^2 = {f_sq}, G^2 = {g_sq}, expected -1 and -1")]
    ComponentSquare { index: usize, f_sq: i64, g_sq: i64 },
    #[error("reducible fiber {index}: F.G = {value}, expected 1")]
    ComponentPairing { index: usize, value: i64 },
    #[error("section {index}: E.Sigma = {value}, expected 1")]
    SectionFiber { index: usize, value: i64 },
    #[error("section {index}: declared self-intersection {declared}, lattice gives {actual}")]
    SectionSquare { index: usize, declared: i64, actual: i64 },
    #[error("K_X.Sigma = {value}, expected 2g - 2 = {expected}")]
    CanonicalFiber { value: i64, expected: i64 },
    #[error("canonical class required")]
    MissingCanonical,
    #[error("K.Sigma = {value}, expected 2g - 2 = {expected}")]
    NotMaximal { value: i64, expected: i64 },
    #[error("fibration is not relatively minimal")]
    NotRelativelyMinimal,
    #[error("expected {expected} fiber-component genera, got {found}")]
    GeneraCount { expected: usize, found: usize },
    #[error("component {index} has genus 0 in a relatively minimal fibration")]
    ComponentGenusZero { index: usize },
    #[error("component {index}: K_X.F = {value}, expected 2g(F) - 1 = {expected}")]
    ComponentAdjunction { index: usize, value: i64, expected: i64 },
    #[error("decomposition is not valid: {0:?}")]
    InvalidDecomposition(DecompositionFailure),
    #[error("normalized fiber coefficient n = {0} is negative")]
    NormalizedNegative(i64),
    #[error("bound formula gives {formula} but K_X^2 - K^2 = {direct}")]
    BoundMismatch { formula: i64, direct: i64 },
    #[error("no section of square -1")]
    NoExceptionalSection,
    #[error("operation requires b+ > 1, got {0}")]
    BPlus(usize),
    #[error("omega^2 = {0}, expected > 0")]
    OmegaSquare(i64),
    #[error("pencil fibers have 2g - 2 = {0}; need genus at least 2")]
    PencilGenus(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibleFiber {
    pub f: H2Class,
    pub g: H2Class,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub class: H2Class,
    pub self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzFibration {
    pub manifold: Manifold,
    pub fiber: H2Class,
    pub genus: i64,
    pub reducible_fibers: Vec<ReducibleFiber>,
    pub sections: Vec<Section>,
    pub relatively_minimal: bool,
    /// Vanishing cycles generate `H₁(Σ)`.
    pub h1_generated: bool,
}

impl LefschetzFibration {
    /// Validates the record: `Σ² = 0`; each reducible fiber has `F + G = Σ`,
    /// `F² = G² = −1`, `F·G = 1`; each section has `E·Σ = 1`; `K_X·Σ = 2g − 2`
    /// when the canonical class is known. Primitivity is checked as the gcd of
    /// coordinates, which is exact for a unimodular lattice.
    pub fn new(
        manifold: Manifold,
        fiber: H2Class,
        genus: i64,
        reducible_fibers: Vec<ReducibleFiber>,
        sections: Vec<Section>,
        relatively_minimal: bool,
        h1_generated: bool,
    ) -> Result<Self, LefschetzError> {
        let f =
            LefschetzFibration { manifold, fiber, genus, reducible_fibers, sections, relatively_minimal, h1_generated };
        f.validate()?;
        Ok(f)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.manifold.lattice
    }

    pub fn extremal(&self) -> i64 {
        2 * self.genus - 2
    }

    pub fn validate(&self) -> Result<(), LefschetzError> {
        self.manifold.validate()?;
        let l = self.lattice();
        if self.genus < 2 {
            return Err(LefschetzError::GenusTooSmall(self.genus));
        }
        let fiber_sq = l.square(&self.fiber)?;
        if fiber_sq != 0 {
            return Err(LefschetzError::FiberSquare(fiber_sq));
        }
        if !self.fiber.is_primitive() {
            return Err(LefschetzError::NotPrimitive("fiber class".into()));
        }
        for (index, r) in self.reducible_fibers.iter().enumerate() {
            if &r.f + &r.g != self.fiber {
                return Err(LefschetzError::ReducibleSum(index));
            }
            let (f_sq, g_sq) = (l.square(&r.f)?, l.square(&r.g)?);
            if f_sq != -1 || g_sq != -1 {
                return Err(LefschetzError::ComponentSquare { index, f_sq, g_sq });
            }
            let value = l.pairing(&r.f, &r.g)?;
            if value != 1 {
                return Err(LefschetzError::ComponentPairing { index, value });
            }
            if !r.f.is_primitive() || !r.g.is_primitive() {
                return Err(LefschetzError::NotPrimitive(format!("component of reducible fiber {index}")));
            }
        }
        for (index, s) in self.sections.iter().enumerate() {
            let value = l.pairing(&s.class, &self.fiber)?;
            if value != 1 {
                return Err(LefschetzError::SectionFiber { index, value });
            }
            let actual = l.square(&s.class)?;
            if actual != s.self_int {
                return Err(LefschetzError::SectionSquare { index, declared: s.self_int, actual });
            }
        }
        if let Some(k) = &self.manifold.canonical {
            let value = l.pairing(k, &self.fiber)?;
            if value != self.extremal() {
                return Err(LefschetzError::CanonicalFiber { value, expected: self.extremal() });
            }
        }
        Ok(())
    }

    fn canonical(&self) -> Result<&H2Class, LefschetzError> {
        self.manifold.canonical.as_ref().ok_or(LefschetzError::MissingCanonical)
    }

    fn require_maximal(&self, k: &H2Class) -> Result<(), LefschetzError> {
        let value = self.lattice().pairing(k, &self.fiber)?;
        if value != self.extremal() {
            return Err(LefschetzError::NotMaximal { value, expected: self.extremal() });
        }
        Ok(())
    }

    fn exceptional_sections(&self) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(|s| s.self_int == -1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionFailure {
    OutsideSpan,
    NonIntegral,
    NegativeN,
}

/// `PD(K_X − K) = n·Σ + Σ cᵢ·Fᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// Exact coefficients against `(Σ, F₁, …, F_k)`; empty when outside the span.
    pub coefficients: Vec<Rational>,
    /// Meaningful when the coefficients are integral.
    pub n: i64,
    pub c: Vec<i64>,
    pub valid: bool,
    pub failure: Option<DecompositionFailure>,
}

impl DecompositionResult {
    pub fn is_trivial(&self) -> bool {
        self.n == 0 && self.c.iter().all(|&c| c == 0)
    }
}

pub fn decompose_canonical_difference(
    f: &LefschetzFibration,
    k: &H2Class,
) -> Result<DecompositionResult, LefschetzError> {
    let kx = f.canonical()?;
    f.require_maximal(k)?;
    let l = f.lattice();
    let mut spanning = vec![f.fiber.clone()];
    spanning.extend(f.reducible_fibers.iter().map(|r| r.f.clone()));
    let target = kx - k;
    let sol = match l.solve_in_span(&target, &spanning) {
        Ok(sol) => sol,
        Err(LatticeError::OutsideSpan) => {
            return Ok(DecompositionResult {
                coefficients: Vec::new(),
                n: 0,
                c: Vec::new(),
                valid: false,
                failure: Some(DecompositionFailure::OutsideSpan),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let Some(ints) = sol.integer_coefficients() else {
        return Ok(DecompositionResult {
            coefficients: sol.coefficients,
            n: 0,
            c: Vec::new(),
            valid: false,
            failure: Some(DecompositionFailure::NonIntegral),
        });
    };
    let n = ints[0];
    let failure = (n < 0).then_some(DecompositionFailure::NegativeN);
    Ok(DecompositionResult {
        coefficients: sol.coefficients,
        n,
        c: ints[1..].to_vec(),
        valid: failure.is_none(),
        failure,
    })
}

/// `K_X² − K²` after flipping every negative `cᵢ` onto the other component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedBound {
    pub n: i64,
    pub c: Vec<i64>,
    /// Genus of the component carrying `cᵢ` after normalization.
    pub component_genera: Vec<i64>,
    pub kx_sq_minus_k_sq: i64,
    pub equality: bool,
}

/// `2n(2g − 2) + 2Σ cᵢ(2g(Fᵢ) − 1) + Σ cᵢ²` with all `cᵢ ≥ 0`, cross-checked
/// against the lattice value of `K_X² − K²`. `fiber_genera[i]` is `g(Fᵢ)`.
pub fn normalize_and_bound(
    f: &LefschetzFibration,
    dec: &DecompositionResult,
    fiber_genera: &[i64],
) -> Result<NormalizedBound, LefschetzError> {
    if !f.relatively_minimal {
        return Err(LefschetzError::NotRelativelyMinimal);
    }
    if let Some(failure) = dec.failure.filter(|&x| x != DecompositionFailure::NegativeN) {
        return Err(LefschetzError::InvalidDecomposition(failure));
    }
    let k_count = f.reducible_fibers.len();
    if fiber_genera.len() != k_count || dec.c.len() != k_count {
        return Err(LefschetzError::GeneraCount { expected: k_count, found: fiber_genera.len() });
    }
    let l = f.lattice();
    let kx = f.canonical()?;
    for (index, (r, &gf)) in f.reducible_fibers.iter().zip(fiber_genera).enumerate() {
        if gf < 1 || f.genus - gf < 1 {
            return Err(LefschetzError::ComponentGenusZero { index });
        }
        let value = l.pairing(kx, &r.f)?;
        if value != 2 * gf - 1 {
            return Err(LefschetzError::ComponentAdjunction { index, value, expected: 2 * gf - 1 });
        }
    }

    let mut n = dec.n;
    let mut c = Vec::with_capacity(k_count);
    let mut genera = Vec::with_capacity(k_count);
    for (&ci, &gf) in dec.c.iter().zip(fiber_genera) {
        if ci < 0 {
            // cᵢFᵢ = cᵢΣ + (−cᵢ)Gᵢ
            n += ci;
            c.push(-ci);
            genera.push(f.genus - gf);
        } else {
            c.push(ci);
            genera.push(gf);
        }
    }
    if n < 0 {
        return Err(LefschetzError::NormalizedNegative(n));
    }
    let formula = 2 * n * f.extremal()
        + c.iter().zip(&genera).map(|(ci, gi)| 2 * ci * (2 * gi - 1)).sum::<i64>()
        + c.iter().map(|ci| ci * ci).sum::<i64>();

    let mut diff = f.fiber.scale(dec.n);
    for (r, &ci) in f.reducible_fibers.iter().zip(&dec.c) {
        diff = &diff + &r.f.scale(ci);
    }
    let k = kx - &diff;
    let direct = l.square(kx)? - l.square(&k)?;
    if direct != formula {
        return Err(LefschetzError::BoundMismatch { formula, direct });
    }
    let equality = formula == 0;
    Ok(NormalizedBound { n, c, component_genera: genera, kx_sq_minus_k_sq: formula, equality })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniquenessVerdict {
    Holds,
    Fails { witness: Option<H2Class>, reason: String },
}

/// Over the stored SW classes: `K_X` is present, it is the only class with
/// `K·Σ = 2g − 2`, and every class has `K² = K_X² = 3σ + 2χ`.
pub fn sw_max_uniqueness(f: &LefschetzFibration) -> Result<UniquenessVerdict, LefschetzError> {
    let x = &f.manifold;
    let kx = f.canonical()?;
    if x.b_plus <= 1 {
        return Err(LefschetzError::BPlus(x.b_plus));
    }
    if !f.relatively_minimal {
        return Err(LefschetzError::NotRelativelyMinimal);
    }
    let l = f.lattice();
    let expected_sq = 3 * x.signature() + 2 * x.euler();
    let kx_sq = l.square(kx)?;
    if kx_sq != expected_sq {
        return Ok(UniquenessVerdict::Fails {
            witness: Some(kx.clone()),
            reason: format!("K_X^2 = {kx_sq} but 3 sigma + 2 chi = {expected_sq}"),
        });
    }
    let sw_classes: Vec<&H2Class> =
        x.basic_classes.iter().filter(|e| e.sw.is_some_and(|s| s != 0)).map(|e| &e.class).collect();
    if !sw_classes.contains(&kx) {
        return Ok(UniquenessVerdict::Fails { witness: None, reason: "K_X is not among the SW basic classes".into() });
    }
    for &k in &sw_classes {
        let sq = l.square(k)?;
        if sq != expected_sq {
            return Ok(UniquenessVerdict::Fails {
                witness: Some(k.clone()),
                reason: format!("K^2 = {sq} differs from K_X^2 = {expected_sq}"),
            });
        }
        if k != kx && l.pairing(k, &f.fiber)? == f.extremal() {
            return Ok(UniquenessVerdict::Fails {
                witness: Some(k.clone()),
                reason: "second class pairing maximally with the fiber".into(),
            });
        }
    }
    Ok(UniquenessVerdict::Holds)
}

/// `K·E = −1` for every section of square `−1`.
pub fn section_pairing_check(f: &LefschetzFibration, k: &H2Class) -> Result<bool, LefschetzError> {
    f.require_maximal(k)?;
    let mut any = false;
    for s in f.exceptional_sections() {
        any = true;
        if f.lattice().pairing(k, &s.class)? != -1 {
            return Ok(false);
        }
    }
    if !any {
        return Err(LefschetzError::NoExceptionalSection);
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonminimalVerdict {
    /// Hypotheses hold and the decomposition collapses to `K = K_X`.
    EqualsCanonical,
    /// `K` cannot be a basic class with `K·Σ = 2g − 2`.
    Excluded { reason: String },
    /// A hypothesis fails; nothing is claimed.
    Inconclusive { reason: String },
}

/// Verifies that a class pairing maximally with the fiber must be `K_X` when
/// every fiber component meets a `(−1)`-section, `b1 = 0` and `b⁺ > 1`.
pub fn nonminimal_uniqueness(f: &LefschetzFibration, k: &H2Class) -> Result<NonminimalVerdict, LefschetzError> {
    f.require_maximal(k)?;
    let inconclusive = |reason: &str| Ok(NonminimalVerdict::Inconclusive { reason: reason.to_string() });
    let x = &f.manifold;
    let Some(kx) = &x.canonical else {
        return inconclusive("canonical class unknown");
    };
    if !f.relatively_minimal {
        return inconclusive("fibration not relatively minimal");
    }
    if x.b1 != 0 {
        return inconclusive("b1 is nonzero");
    }
    if x.b_plus <= 1 {
        return inconclusive("b+ is at most 1");
    }
    let l = f.lattice();
    let sections: Vec<&Section> = f.exceptional_sections().collect();
    if sections.is_empty() {
        return inconclusive("no section of square -1");
    }
    for s in &sections {
        if l.pairing(kx, &s.class)? != -1 {
            return inconclusive("a (-1)-section is not symplectic (K_X.E != -1)");
        }
    }
    for (index, r) in f.reducible_fibers.iter().enumerate() {
        for component in [&r.f, &r.g] {
            let mut met = false;
            for s in &sections {
                met |= l.pairing(&s.class, component)? > 0;
            }
            if !met {
                return inconclusive(&format!("a component of reducible fiber {index} meets no (-1)-section"));
            }
        }
    }

    let excluded = |reason: String| Ok(NonminimalVerdict::Excluded { reason });
    for s in &sections {
        let ke = l.pairing(k, &s.class)?;
        if ke != -1 {
            return excluded(format!("K.E = {ke} for a (-1)-section; (K_X - K).E = n would be {}", -1 - ke));
        }
    }
    for (index, r) in f.reducible_fibers.iter().enumerate() {
        for component in [&r.f, &r.g] {
            let (kc, kxc) = (l.pairing(k, component)?, l.pairing(kx, component)?);
            if kc != kxc {
                return excluded(format!("K and K_X differ on a component of reducible fiber {index} ({kc} vs {kxc})"));
            }
        }
    }
    let dec = decompose_canonical_difference(f, k)?;
    if let Some(failure) = dec.failure {
        return excluded(format!("K_X - K decomposition fails: {failure:?}"));
    }
    if !dec.is_trivial() || k != kx {
        return excluded(format!("K_X - K = {} Sigma + {:?} F", dec.n, dec.c));
    }
    Ok(NonminimalVerdict::EqualsCanonical)
}

/// Result of blowing up the base points of a pencil with fibers dual to `k·ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilFibration {
    pub fibration: LefschetzFibration,
    pub base_points: i64,
}

/// `2g − 2 = k²ω² + k(K_X·ω)`; blows up the `n = k²ω²` base points and
/// takes the proper transform `Σ̃ = kω − Σ Eᵢ` as fiber with the `Eᵢ` as sections.
pub fn pencil_to_fibration(x: &Manifold, omega: &H2Class, k: i64) -> Result<PencilFibration, LefschetzError> {
    let kx = x.canonical.as_ref().ok_or(LefschetzError::MissingCanonical)?;
    let l = &x.lattice;
    let w_sq = l.square(omega)?;
    if w_sq <= 0 {
        return Err(LefschetzError::OmegaSquare(w_sq));
    }
    let two_g_minus_two = k * k * w_sq + k * l.pairing(kx, omega)?;
    if two_g_minus_two < 2 || two_g_minus_two % 2 != 0 {
        return Err(LefschetzError::PencilGenus(two_g_minus_two));
    }
    let genus = two_g_minus_two / 2 + 1;
    let n = k * k * w_sq;
    let mut xt = x.clone();
    for _ in 0..n {
        xt = blowup(&xt);
    }
    let rank = xt.rank();
    let base_rank = x.rank();
    let mut fiber = omega.extended(rank).scale(k);
    let mut sections = Vec::with_capacity(n as usize);
    for i in base_rank..rank {
        let e = H2Class::basis(rank, i);
        fiber = &fiber - &e;
        sections.push(Section { class: e, self_int: -1 });
    }
    let fibration = LefschetzFibration::new(xt, fiber, genus, Vec::new(), sections, true, false)?;
    Ok(PencilFibration { fibration, base_points: n })
}

/// A model fibration lattice `⟨Σ, S⟩ ⊕ 2H ⊕ ⟨F₁⟩ ⊕ … ⊕ ⟨F_k⟩` with
/// `Σ·S = 1`, `S² = −1`, `Fᵢ² = −1`, reducible fibers `Fᵢ ∪ (Σ − Fᵢ)` of
/// component genera `component_genera[i]`, the section `S`, and canonical class
/// `K_X = (2g − 3)Σ + (2g − 2)S − Σ(2g(Fᵢ) − 1)Fᵢ`, so that `K_X·Σ = 2g − 2`,
/// `K_X·S = −1` and `K_X·Fᵢ = 2g(Fᵢ) − 1`.
pub fn model_fibration(genus: i64, component_genera: &[i64]) -> Result<LefschetzFibration, LefschetzError> {
    let k = component_genera.len();
    let mut lattice = Lattice::from_gram(vec![vec![0, 1], vec![1, -1]])?;
    lattice = lattice.direct_sum(&Lattice::hyperbolic()).direct_sum(&Lattice::hyperbolic());
    lattice = lattice.direct_sum(&Lattice::diagonal(&vec![-1; k])?);
    let mut labels = vec!["Sigma".to_string(), "S".into(), "u1".into(), "v1".into(), "u2".into(), "v2".into()];
    labels.extend((1..=k).map(|i| format!("F{i}")));
    let lattice = Lattice::new(lattice.gram().to_vec(), labels)?;
    let rank = lattice.rank();

    let fiber = H2Class::basis(rank, 0);
    let mut canonical = vec![0i64; rank];
    canonical[0] = 2 * genus - 3;
    canonical[1] = 2 * genus - 2;
    for (i, gf) in component_genera.iter().enumerate() {
        canonical[6 + i] = -(2 * gf - 1);
    }
    let mut x = Manifold::from_lattice(format!("model fibration g={genus}"), lattice);
    x.canonical = Some(H2Class::new(canonical));
    let reducible = (0..k)
        .map(|i| {
            let f = H2Class::basis(rank, 6 + i);
            ReducibleFiber { g: &fiber - &f, f }
        })
        .collect();
    let sections = vec![Section { class: H2Class::basis(rank, 1), self_int: -1 }];
    LefschetzFibration::new(x, fiber, genus, reducible, sections, true, true)
}

impl DecompositionResult {
    /// Rebuilds `K = K_X − nΣ − Σ cᵢFᵢ` from integral coefficients.
    pub fn class_from(f: &LefschetzFibration, n: i64, c: &[i64]) -> Result<H2Class, LefschetzError> {
        let kx = f.canonical()?;
        let mut diff = f.fiber.scale(n);
        for (r, &ci) in f.reducible_fibers.iter().zip(c) {
            diff = &diff + &r.f.scale(ci);
        }
        Ok(kx - &diff)
    }

    pub fn max_abs_coefficient(&self) -> Option<Rational> {
        self.coefficients.iter().map(|c| c.abs()).max()
    }
}
