//! Model fibrations and manifolds, and the bounded searches behind the
//! fiber-sum construction: Stipsicz fibrations, the genus-2 obstruction,
//! linear combinations of `n⁺` values, hypersurface and knot-surgery targets.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{int, Rational};
use crate::lattice::{H2Class, Lattice};
use crate::manifold_series::{BasicClassEntry, Manifold};
use crate::moves::{fiber_sum_numerics, tight_surface_cert, BettiTriple, FiberSumNumerics};

/// Hard ceiling on degree / `n` scans; the computed caps stay far below it.
const SEARCH_LIMIT: i64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeographyError {
    #[error("fiber genus must be at least {min}, got {genus}")]
    GenusTooSmall { genus: i64, min: i64 },
    #[error("gcd({n1}, {n2}) = {gcd}, expected 2")]
    GcdNotTwo { n1: i64, n2: i64, gcd: i64 },
    #[error("n1 = {0} and n2 = {1} must be positive and even")]
    BadIncrements(i64, i64),
    #[error("target {0} is odd")]
    OddTarget(i64),
    #[error("degree must be at least 1, got {0}")]
    Degree(i64),
    #[error("knot genus and n must be at least 1, got ({0}, {1})")]
    KnotData(i64, i64),
}

/// Betti data of a genus-`g` Lefschetz fibration over the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationProfile {
    pub name: String,
    pub b1: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub genus: i64,
    pub relatively_minimal: bool,
}

impl FibrationProfile {
    pub fn new(name: impl Into<String>, b1: i64, b_plus: i64, b_minus: i64, genus: i64) -> Self {
        FibrationProfile { name: name.into(), b1, b_plus, b_minus, genus, relatively_minimal: true }
    }

    pub fn betti(&self) -> BettiTriple {
        BettiTriple::new(self.b1, self.b_plus, self.b_minus)
    }

    pub fn euler(&self) -> i64 {
        self.betti().euler()
    }

    pub fn sigma(&self) -> i64 {
        self.betti().sigma()
    }

    pub fn n_plus(&self) -> i64 {
        self.betti().increments(self.genus).0
    }

    pub fn n_minus(&self) -> i64 {
        self.betti().increments(self.genus).1
    }

    /// `e(V) − 2·(2 − 2g)`: one singular fiber per critical point.
    pub fn singular_fibers(&self) -> i64 {
        self.euler() - 2 * (2 - 2 * self.genus)
    }
}

/// The two Stipsicz fibrations of genus `g`: Betti triples `(g, 1, 5)` and
/// `(g − 2, 1, 13)` for even `g`, `(g − 1, 1, 9)` and `(g − 3, 1, 17)` for odd `g`.
pub fn stipsicz_profiles(genus: i64) -> Result<(FibrationProfile, FibrationProfile), GeographyError> {
    if genus < 2 {
        return Err(GeographyError::GenusTooSmall { genus, min: 2 });
    }
    let ((a1, b1), (a2, b2)) =
        if genus % 2 == 0 { ((genus, 5), (genus - 2, 13)) } else { ((genus - 1, 9), (genus - 3, 17)) };
    Ok((
        FibrationProfile::new(format!("V1(g={genus})"), a1, 1, b1, genus),
        FibrationProfile::new(format!("V2(g={genus})"), a2, 1, b2, genus),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OzbagciVerdict {
    /// `3σ + e`.
    pub value: i64,
    /// `3σ + e ≤ −6`, the bound every genus-2 fibration obeys.
    pub feasible: bool,
    /// The demand `3σ + e ≥ −4` (equivalently `n⁻/n⁺ ≤ 2` at genus 2) is met,
    /// which no genus-2 fibration can do.
    pub in_forbidden_window: bool,
}

pub fn ozbagci_obstruction(sigma: i64, euler: i64) -> OzbagciVerdict {
    let value = 3 * sigma + euler;
    OzbagciVerdict { value, feasible: value <= -6, in_forbidden_window: value >= -4 }
}

/// `n⁻/n⁺ ≤ 2` holds exactly when `3σ + e ≥ 4 − 4g`.
pub fn ratio_two_threshold(genus: i64) -> i64 {
    4 - 4 * genus
}

fn check_increments(n1: i64, n2: i64) -> Result<(), GeographyError> {
    if n1 <= 0 || n2 <= 0 || n1 % 2 != 0 || n2 % 2 != 0 {
        return Err(GeographyError::BadIncrements(n1, n2));
    }
    let gcd = n1.gcd(&n2);
    if gcd != 2 {
        return Err(GeographyError::GcdNotTwo { n1, n2, gcd });
    }
    Ok(())
}

/// `m = k₁n₁ + k₂n₂` with `k₂ < n₁` and `k₁ ≥ min_k1`, smallest `k₂` first.
pub fn linear_combo_search(n1: i64, n2: i64, m: i64, min_k1: i64) -> Result<Option<(i64, i64)>, GeographyError> {
    check_increments(n1, n2)?;
    if m % 2 != 0 {
        return Err(GeographyError::OddTarget(m));
    }
    Ok(combo(n1, n2, m, min_k1))
}

fn combo(n1: i64, n2: i64, m: i64, min_k1: i64) -> Option<(i64, i64)> {
    (0..n1).find_map(|k2| {
        let rest = m - k2 * n2;
        (rest >= 0 && rest % n1 == 0 && rest / n1 >= min_k1).then_some((rest / n1, k2))
    })
}

/// Smallest even `M₀` such that every even `m ≥ M₀` is reachable, found by an
/// exhaustive scan up to `n₁n₂ + min_k1·n₁` (beyond which every even value is
/// reachable since `n₁/2` and `n₂/2` are coprime).
pub fn combo_threshold(n1: i64, n2: i64, min_k1: i64) -> Result<i64, GeographyError> {
    check_increments(n1, n2)?;
    let limit = n1 * n2 + min_k1.max(0) * n1;
    let mut threshold = 0;
    let mut m = 0;
    while m <= limit {
        if combo(n1, n2, m, min_k1).is_none() {
            threshold = m + 2;
        }
        m += 2;
    }
    Ok(threshold)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceInvariants {
    pub degree: i64,
    pub euler: i64,
    pub sigma: i64,
    pub b_plus: i64,
    pub b_minus: i64,
}

impl HypersurfaceInvariants {
    /// `b⁻/b⁺` as an exact rational.
    pub fn ratio(&self) -> Rational {
        int(self.b_minus) / int(self.b_plus)
    }
}

/// Smooth degree-`d` surface in `CP³`: `e = d³ − 4d² + 6d`, `σ = d(4 − d²)/3`,
/// `b^± = (e ± σ)/2 − 1`.
pub fn hypersurface_invariants(degree: i64) -> Result<HypersurfaceInvariants, GeographyError> {
    if degree < 1 {
        return Err(GeographyError::Degree(degree));
    }
    let d = degree;
    let euler = d * d * d - 4 * d * d + 6 * d;
    let sigma = d * (4 - d * d) / 3;
    Ok(HypersurfaceInvariants {
        degree,
        euler,
        sigma,
        b_plus: (euler + sigma) / 2 - 1,
        b_minus: (euler - sigma) / 2 - 1,
    })
}

/// Knot surgery on `E(2n)` along a fibered genus-`g` knot followed by the
/// fiber sum that leaves one basic class: `c₁² = 8(g + n − 1)`, `χ_h = 3n + g − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotSurgeryProfile {
    pub knot_genus: i64,
    pub n: i64,
    pub c1_sq: i64,
    pub chi_h: i64,
    pub euler: i64,
    pub sigma: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub spin: bool,
}

impl KnotSurgeryProfile {
    /// `c₁² + (2r − 10)χ_h`, which equals `(6r − 22)n + (2r − 2)(g − 1)`.
    pub fn ratio_test(&self, r: &Rational) -> Rational {
        int(self.c1_sq) + (r * int(2) - int(10)) * int(self.chi_h)
    }

    /// `b⁻/b⁺ > r`, decided as `c₁² + (2r − 10)χ_h < r − 1`.
    pub fn exceeds_ratio(&self, r: &Rational) -> bool {
        self.ratio_test(r) < r - int(1)
    }

    /// `χ_h` even, equivalently `b⁺ ≡ 3 (mod 4)`.
    pub fn chi_h_even(&self) -> bool {
        self.chi_h % 2 == 0
    }
}

/// Coefficient `6r − 22` of `n` in the ratio test.
pub fn knot_n_coefficient(r: &Rational) -> Rational {
    r * int(6) - int(22)
}

pub fn knot_surgery_profile(knot_genus: i64, n: i64) -> Result<KnotSurgeryProfile, GeographyError> {
    if knot_genus < 1 || n < 1 {
        return Err(GeographyError::KnotData(knot_genus, n));
    }
    let c1_sq = 8 * (knot_genus + n - 1);
    let chi_h = 3 * n + knot_genus - 1;
    // c₁² = 3σ + 2e and χ_h = (σ + e)/4
    let euler = 12 * chi_h - c1_sq;
    let sigma = c1_sq - 8 * chi_h;
    let b_plus = 2 * chi_h - 1;
    Ok(KnotSurgeryProfile { knot_genus, n, c1_sq, chi_h, euler, sigma, b_plus, b_minus: b_plus - sigma, spin: true })
}

/// Elliptic surface `E(n)`: lattice `⟨F, S⟩ ⊕ (2n − 2)H ⊕ n(−E8)` with fiber
/// `F`, `(−n)`-section `S`, canonical class `(n − 2)F`, SW basic classes
/// `(n − 2 − 2j)F` with value `(−1)^j·C(n − 2, j)` for `n ≥ 2`, and a recorded
/// genus-2 tight surface for `n ≥ 2`. Donaldson coefficients are `c·SW` with
/// the Witten constant `c = 2^{(8 + 7e + 11σ)/4}`.
pub fn elliptic_profile(n: i64) -> Result<Manifold, GeographyError> {
    if n < 1 {
        return Err(GeographyError::Degree(n));
    }
    let mut lattice = Lattice::new(vec![vec![0, 1], vec![1, -n]], vec!["F".into(), "S".into()]).expect("unimodular");
    for _ in 0..2 * n - 2 {
        lattice = lattice.direct_sum(&Lattice::hyperbolic());
    }
    for _ in 0..n {
        lattice = lattice.direct_sum(&Lattice::e8(-1));
    }
    let rank = lattice.rank();
    let mut labels = vec!["F".to_string(), "S".to_string()];
    labels.extend((2..rank).map(|i| format!("e{}", i + 1)));
    let lattice = Lattice::new(lattice.gram().to_vec(), labels).expect("relabelled lattice");
    let fiber = H2Class::basis(rank, 0);

    let mut x = Manifold::from_lattice(format!("E({n})"), lattice);
    x.canonical = Some(fiber.scale(n - 2));
    x.spin = n % 2 == 0;
    if n >= 2 {
        let m = n - 2;
        let mut binom = 1i64;
        let mut classes = Vec::new();
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            classes.push(BasicClassEntry::seiberg_witten(fiber.scale(m - 2 * j), sign * binom));
            binom = binom * (m - j) / (j + 1);
        }
        // Donaldson coefficients from the Witten relation β = c·SW
        let c = x.predicted_witten_constant().expect("8 + 7e + 11σ divisible by 4");
        for entry in &mut classes {
            entry.beta = entry.sw.map(|sw| &c * int(sw));
        }
        x = x.with_classes(classes);
        x.tight_surface_genus = Some(2);
        x.complete_class_data = true;
    }
    Ok(x)
}

/// `E(n)` as a genus-1 fibration profile.
pub fn elliptic_fibration_profile(n: i64) -> FibrationProfile {
    FibrationProfile::new(format!("E({n})"), 0, 2 * n - 1, 10 * n - 1, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlanMode {
    #[serde(rename = "ratio_lt_2_hypersurface")]
    Hypersurface,
    #[serde(rename = "ratio_lt_7_2_knot_surgery")]
    KnotSurgery,
}

impl PlanMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hypersurface" | "ratio_lt_2_hypersurface" => Some(PlanMode::Hypersurface),
            "knot" | "knot-surgery" | "knot_surgery" | "ratio_lt_7_2_knot_surgery" => Some(PlanMode::KnotSurgery),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetDescriptor {
    Hypersurface(HypersurfaceInvariants),
    KnotSurgery(KnotSurgeryProfile),
}

impl TargetDescriptor {
    pub fn b_plus(&self) -> i64 {
        match self {
            TargetDescriptor::Hypersurface(h) => h.b_plus,
            TargetDescriptor::KnotSurgery(k) => k.b_plus,
        }
    }

    pub fn b_minus(&self) -> i64 {
        match self {
            TargetDescriptor::Hypersurface(h) => h.b_minus,
            TargetDescriptor::KnotSurgery(k) => k.b_minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub profile: FibrationProfile,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub values: String,
}

/// Computed "sufficiently large" bounds used by the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Every even `b⁺` increment from here on is a valid `k₁n₁ + k₂n₂`.
    pub combo_threshold: i64,
    /// Degree (hypersurface mode) or `n` (knot mode) past which success is guaranteed.
    pub search_cap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub mode: PlanMode,
    pub start: FibrationProfile,
    pub summands: Vec<Summand>,
    pub resulting: FiberSumNumerics,
    pub target: TargetDescriptor,
    pub bounds: SearchBounds,
    pub checks: Vec<Check>,
}

impl ConstructionCertificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Recomputes every check from the stored fields.
    pub fn recompute_checks(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        let mut push = |name: &str, pass: bool, values: String| checks.push(Check { name: name.into(), pass, values });
        let v1 = &self.summands[0];
        let v2 = &self.summands[1];
        let (n1, n2) = (v1.profile.n_plus(), v2.profile.n_plus());
        push("gcd_n_plus", n1.gcd(&n2) == 2, format!("gcd({n1}, {n2}) = {}", n1.gcd(&n2)));
        let n1m = v1.profile.n_minus();
        let ratio_ok = match self.mode {
            PlanMode::Hypersurface => n1m < 2 * n1,
            PlanMode::KnotSurgery => n1m <= 3 * n1,
        };
        push("v1_ratio", ratio_ok, format!("n-/n+ = {n1m}/{n1}"));
        push("k1_at_least_2", v1.multiplicity >= 2, format!("k1 = {}", v1.multiplicity));
        push(
            "k2_below_n_plus_v1",
            v2.multiplicity >= 0 && v2.multiplicity < n1,
            format!("k2 = {}, n+(V1) = {n1}", v2.multiplicity),
        );

        let mut acc = FiberSumNumerics::from_betti(self.start.betti());
        for s in &self.summands {
            for _ in 0..s.multiplicity {
                acc = fiber_sum_numerics(acc.betti(), s.profile.betti(), s.profile.genus);
            }
        }
        push("fiber_sum_numerics", acc == self.resulting, format!("{acc:?}"));
        push("b1_zero", self.resulting.b1 == 0, format!("b1 = {}", self.resulting.b1));
        let (tb_plus, tb_minus) = (self.target.b_plus(), self.target.b_minus());
        push(
            "b_plus_equal",
            self.resulting.b_plus == tb_plus,
            format!("b+(W) = {}, b+(target) = {tb_plus}", self.resulting.b_plus),
        );
        push(
            "b_minus_below",
            self.resulting.b_minus < tb_minus,
            format!("b-(W) = {}, b-(target) = {tb_minus}", self.resulting.b_minus),
        );
        let tight = tight_surface_cert(&v1.profile).is_ok() && v1.multiplicity >= 2;
        push("tight_genus_2_surface", tight, format!("{} copies of {}", v1.multiplicity, v1.profile.name));
        match &self.target {
            TargetDescriptor::Hypersurface(h) => {
                let recomputed = hypersurface_invariants(h.degree).ok();
                push("target_invariants", recomputed.as_ref() == Some(h), format!("degree {}", h.degree));
                push("even_degree_at_least_6", h.degree >= 6 && h.degree % 2 == 0, format!("d = {}", h.degree));
            }
            TargetDescriptor::KnotSurgery(k) => {
                let recomputed = knot_surgery_profile(k.knot_genus, k.n).ok();
                push("target_invariants", recomputed.as_ref() == Some(k), format!("g = {}, n = {}", k.knot_genus, k.n));
                push("b_plus_3_mod_4", k.b_plus % 4 == 3, format!("b+ = {}", k.b_plus));
                let r = Rational::new(7.into(), 2.into());
                push("target_ratio_above_7_2", k.exceeds_ratio(&r), format!("b-/b+ = {}/{}", k.b_minus, k.b_plus));
            }
        }
        checks
    }

    /// Stored checks agree with a fresh recomputation.
    pub fn verify(&self) -> bool {
        self.recompute_checks() == self.checks
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[error("fiber-sum plan failed at genus {genus}: {reason}")]
pub struct PlanFailure {
    pub mode: PlanMode,
    pub genus: i64,
    pub reason: String,
    pub obstruction: Option<OzbagciVerdict>,
}

/// Finds Stipsicz multiplicities `k₁ ≥ 2`, `k₂ < n⁺(V₁)` and a target whose
/// `b⁺` equals that of the fiber sum and whose `b⁻` is strictly larger.
pub fn plan_fiber_sum(start: &FibrationProfile, mode: PlanMode) -> Result<ConstructionCertificate, PlanFailure> {
    let genus = start.genus;
    let fail = |reason: String, obstruction| PlanFailure { mode, genus, reason, obstruction };
    if start.b1 != 0 {
        return Err(fail(format!("start has b1 = {}; the Betti bookkeeping needs b1 = 0", start.b1), None));
    }
    if start.b_plus % 2 == 0 {
        return Err(fail(format!("start has even b+ = {}; symplectic b+ is odd", start.b_plus), None));
    }
    let (v1, v2) = stipsicz_profiles(genus).map_err(|e| fail(e.to_string(), None))?;
    let (n1, n2) = (v1.n_plus(), v2.n_plus());
    let n1m = v1.n_minus();
    let n2m = v2.n_minus();

    let ratio_ok = match mode {
        PlanMode::Hypersurface => n1m < 2 * n1,
        PlanMode::KnotSurgery => n1m <= 3 * n1,
    };
    if !ratio_ok {
        if mode == PlanMode::Hypersurface && genus == 2 {
            let verdict = ozbagci_obstruction(v1.sigma(), v1.euler());
            return Err(fail(
                format!(
                    "no genus-2 Lefschetz fibration has n-/n+ <= 2: that needs 3 sigma + e >= {}, \
                     but every genus-2 fibration has 3 sigma + e <= -6",
                    ratio_two_threshold(2)
                ),
                Some(verdict),
            ));
        }
        let bound = if mode == PlanMode::Hypersurface { "< 2" } else { "<= 3" };
        return Err(fail(format!("n-/n+ of {} is {n1m}/{n1}, not {bound}; try knot-surgery mode", v1.name), None));
    }
    let m0 = combo_threshold(n1, n2, 2).map_err(|e| fail(e.to_string(), None))?;

    // b⁻(W) ≤ b⁻(start) + (m/n1)·n⁻(V1) + n1·n⁻(V2) once m is reachable
    let sufficient = |b_plus: i64, b_minus: i64| {
        let m = b_plus - start.b_plus;
        m >= m0 && n1 * start.b_minus + m * n1m + n1 * n1 * n2m < n1 * b_minus
    };
    let attempt = |b_plus: i64, b_minus: i64| -> Option<(i64, i64, FiberSumNumerics)> {
        let m = b_plus - start.b_plus;
        if m < 0 || m % 2 != 0 {
            return None;
        }
        let (k1, k2) = combo(n1, n2, m, 2)?;
        let mut acc = FiberSumNumerics::from_betti(start.betti());
        for (p, k) in [(&v1, k1), (&v2, k2)] {
            for _ in 0..k {
                acc = fiber_sum_numerics(acc.betti(), p.betti(), genus);
            }
        }
        (acc.b_minus < b_minus).then_some((k1, k2, acc))
    };

    let candidates: Box<dyn Iterator<Item = (i64, TargetDescriptor)>> = match mode {
        PlanMode::Hypersurface => Box::new(
            (6..SEARCH_LIMIT)
                .step_by(2)
                .map(|d| (d, TargetDescriptor::Hypersurface(hypersurface_invariants(d).expect("degree >= 6")))),
        ),
        PlanMode::KnotSurgery => Box::new((1..SEARCH_LIMIT).map(|n| {
            let knot_genus = if n % 2 == 0 { 1 } else { 2 };
            (n, TargetDescriptor::KnotSurgery(knot_surgery_profile(knot_genus, n).expect("n >= 1")))
        })),
    };
    let mut cap = None;
    for (param, target) in candidates {
        let (tp, tm) = (target.b_plus(), target.b_minus());
        if cap.is_none() && sufficient(tp, tm) {
            cap = Some(param);
        }
        if let Some((k1, k2, resulting)) = attempt(tp, tm) {
            let mut cert = ConstructionCertificate {
                mode,
                start: start.clone(),
                summands: vec![
                    Summand { profile: v1.clone(), multiplicity: k1 },
                    Summand { profile: v2.clone(), multiplicity: k2 },
                ],
                resulting,
                target,
                bounds: SearchBounds { combo_threshold: m0, search_cap: cap.unwrap_or(param) },
                checks: Vec::new(),
            };
            cert.checks = cert.recompute_checks();
            if cert.all_pass() {
                return Ok(cert);
            }
        }
        if cap.is_some_and(|c| param > c) {
            break;
        }
    }
    Err(fail("search exhausted its computed bound without a witness".into(), None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use crate::manifold_series::{simple_type_inference, witten_consistency};

    #[test]
    fn stipsicz_examples() {
        let (v1, v2) = stipsicz_profiles(10).unwrap();
        assert_eq!((v1.b1, v1.b_plus, v1.b_minus), (10, 1, 5));
        assert_eq!((v2.b1, v2.b_plus, v2.b_minus), (8, 1, 13));
        assert_eq!((v1.n_plus(), v2.n_plus()), (10, 12));
        assert_eq!(v1.n_minus(), 14);
        let (v1, v2) = stipsicz_profiles(9).unwrap();
        assert_eq!((v1.b1, v1.b_plus, v1.b_minus), (8, 1, 9));
        assert_eq!((v2.b1, v2.b_plus, v2.b_minus), (6, 1, 17));
        assert_eq!((v1.n_plus(), v2.n_plus()), (10, 12));
        assert!(stipsicz_profiles(1).is_err());
    }

    #[test]
    fn ozbagci_examples() {
        assert!(!ozbagci_obstruction(-2, 2).feasible);
        assert!(ozbagci_obstruction(-2, 2).in_forbidden_window);
        assert!(ozbagci_obstruction(-4, 6).feasible);
        assert!(ozbagci_obstruction(-4, 2).feasible);
    }

    #[test]
    fn combo_examples() {
        assert_eq!(linear_combo_search(10, 12, 44, 2).unwrap(), Some((2, 2)));
        assert_eq!(linear_combo_search(10, 12, 46, 2).unwrap(), None);
        assert_eq!(linear_combo_search(10, 12, 2, 0).unwrap(), None);
        assert!(matches!(linear_combo_search(10, 20, 40, 0), Err(GeographyError::GcdNotTwo { gcd: 10, .. })));
        assert_eq!(linear_combo_search(10, 12, 45, 0), Err(GeographyError::OddTarget(45)));
        let m0 = combo_threshold(10, 12, 2).unwrap();
        assert!(combo(10, 12, m0 - 2, 2).is_none());
        assert!((m0..4 * 120).step_by(2).all(|m| combo(10, 12, m, 2).is_some()));
    }

    #[test]
    fn hypersurface_examples() {
        let k3 = hypersurface_invariants(4).unwrap();
        assert_eq!((k3.euler, k3.sigma, k3.b_plus, k3.b_minus), (24, -16, 3, 19));
        let h6 = hypersurface_invariants(6).unwrap();
        assert_eq!((h6.euler, h6.sigma, h6.b_plus, h6.b_minus), (108, -64, 21, 85));
        let cp2 = hypersurface_invariants(1).unwrap();
        assert_eq!((cp2.b_plus, cp2.b_minus), (1, 0));
    }

    #[test]
    fn knot_surgery_examples() {
        let p = knot_surgery_profile(2, 5).unwrap();
        assert_eq!((p.c1_sq, p.chi_h, p.b_plus), (48, 16, 31));
        let r = rat(7, 2);
        assert_eq!(knot_n_coefficient(&r), int(-1));
        assert_eq!(p.ratio_test(&r), knot_n_coefficient(&r) * int(5) + (&r * int(2) - int(2)) * int(1));
        assert!(p.chi_h_even());
        assert!(!knot_surgery_profile(2, 4).unwrap().chi_h_even());
    }

    #[test]
    fn elliptic_examples() {
        let e2 = elliptic_profile(2).unwrap();
        assert_eq!((e2.b_plus, e2.b_minus), (3, 19));
        assert!(e2.validate().is_ok());
        assert!(e2.spin);
        assert!(simple_type_inference(&e2).simple_type);
        let e3 = elliptic_profile(3).unwrap();
        assert_eq!((e3.b_plus, e3.b_minus), (5, 29));
        assert_eq!(e3.basic_classes.len(), 2);
        assert!(e3.validate().is_ok());
        let e4 = elliptic_profile(4).unwrap();
        let sw: Vec<i64> = e4.basic_classes.iter().map(|e| e.sw.unwrap()).collect();
        assert_eq!(sw, vec![1, -2, 1]);
        assert_eq!(e4.basic_classes[1].beta, Some(rat(-1, 2)));
        assert_eq!(witten_consistency(&e4).unwrap(), rat(1, 4));
        let e1 = elliptic_profile(1).unwrap();
        assert!(e1.basic_classes.is_empty() && e1.tight_surface_genus.is_none());
    }

    #[test]
    fn plan_hypersurface_genus_ten() {
        let start = FibrationProfile::new("X", 0, 3, 19, 10);
        let cert = plan_fiber_sum(&start, PlanMode::Hypersurface).unwrap();
        assert!(cert.all_pass() && cert.verify());
        assert_eq!(cert.resulting.b_plus, cert.target.b_plus());
        assert!(cert.resulting.b_minus < cert.target.b_minus());
        assert!(cert.summands[0].multiplicity >= 2);
    }

    #[test]
    fn plan_genus_two() {
        let start = FibrationProfile::new("X", 0, 3, 19, 2);
        let failure = plan_fiber_sum(&start, PlanMode::Hypersurface).unwrap_err();
        assert!(failure.obstruction.is_some());
        let cert = plan_fiber_sum(&start, PlanMode::KnotSurgery).unwrap();
        assert!(cert.all_pass() && cert.verify());
        match cert.target {
            TargetDescriptor::KnotSurgery(k) => {
                assert_eq!(k.b_plus % 4, 3);
                assert_eq!((k.n + k.knot_genus) % 2, 1);
            }
            _ => panic!("knot-surgery target expected"),
        }
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let start = FibrationProfile::new("X", 0, 3, 19, 10);
        let mut cert = plan_fiber_sum(&start, PlanMode::Hypersurface).unwrap();
        cert.resulting.b_minus += 1000;
        assert!(!cert.verify());
    }
}
