//! Growth of non-simple-type invariants along a fiber class, modeled on an
//! exact Floer pairing `D(hⁿ) = leftᵀ·Aⁿ·right`.
//!
//! The action `A` stands in for `μ(Σ)`. Its spectrum must lie on the grid
//! `{iʳ·2k : 0 ≤ k ≤ g − 1}`, certified with annihilating polynomials; the four
//! top eigenvalues `iʳ(2g − 2)` must be semisimple.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact_algebra::{dot, int, ExpSum, GaussianRational, Matrix, Polynomial};
use crate::geography::Check;
use crate::manifold_series::{degree_congruence, residue_d0, ManifoldError};

type G = GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsymptoticsError {
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("model {0}: action is not square or does not match the vector lengths")]
    Shape(String),
    #[error(
        "model {name}: spectrum is not contained in the grid i^r·2k, k < g; annihilator residual mod χ: {residual}"
    )]
    SpectrumOffGrid { name: String, residual: String },
    #[error("expected {expected} annihilation exponents (k = 0..g−2), got {found}")]
    MultiplicityCount { expected: usize, found: usize },
    #[error("annihilation exponents too small: (A⁴ − (2g−2)⁴)·p(A) ≠ 0, low-eigenvalue content remains")]
    InsufficientAnnihilation,
    #[error("sequence has {found} terms, need at least {needed} (2·deg p + 8)")]
    SequenceTooShort { needed: usize, found: usize },
    #[error("(1 − (2g−2)⁴t⁴)·t^d·p(1/t)·F(t) has nonzero t^{0} coefficient; not a polynomial of degree < d + 4")]
    NotPolynomial(usize),
    #[error("residue d0 must be in 0..4, got {0}")]
    Residue(i64),
    #[error(transparent)]
    Congruence(#[from] ManifoldError),
}

/// Topological data fixing the residue `d₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceData {
    pub w_sq: i64,
    pub b_plus: i64,
    #[serde(default)]
    pub b1: i64,
}

impl CongruenceData {
    pub fn d0(&self) -> Result<i64, ManifoldError> {
        residue_d0(self.w_sq, self.b_plus, self.b1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloerModel {
    pub name: String,
    pub genus: i64,
    #[serde(with = "matrix_rows")]
    pub action: Matrix,
    pub left: Vec<G>,
    pub right: Vec<G>,
    /// Exponents `m_k` of `(t⁴ − (2k)⁴)` in `p`, for `k = 0..g−2`; derived
    /// from the characteristic polynomial when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<usize>>,
    pub congruence: CongruenceData,
}

mod matrix_rows {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        m.to_rows().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let rows = Vec::<Vec<G>>::deserialize(d)?;
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("ragged matrix"))
    }
}

impl FloerModel {
    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn growth(&self) -> i64 {
        2 * self.genus - 2
    }

    pub fn check_shape(&self) -> Result<(), AsymptoticsError> {
        if self.genus < 2 {
            return Err(AsymptoticsError::Genus(self.genus));
        }
        let n = self.dim();
        if !self.action.is_square() || n == 0 || self.left.len() != n || self.right.len() != n {
            return Err(AsymptoticsError::Shape(self.name.clone()));
        }
        Ok(())
    }

    /// `(∏_{k=0}^{g−1} (A⁴ − (2k)⁴·I))^dim = 0`, evaluated by reducing the
    /// polynomial modulo the characteristic polynomial (Cayley–Hamilton).
    pub fn spectrum_on_grid(&self) -> bool {
        self.grid_residual().is_zero()
    }

    /// The annihilator reduced modulo the characteristic polynomial; zero iff
    /// the spectrum lies on the grid.
    pub fn grid_residual(&self) -> Polynomial {
        self.grid_residual_with(&self.action.characteristic_polynomial())
    }

    fn grid_residual_with(&self, chi: &Polynomial) -> Polynomial {
        let mut r = Polynomial::one();
        for _ in 0..self.dim() {
            for k in 0..self.genus {
                r = (&r * &fourth_power_factor(k)).div_rem(chi).1;
            }
        }
        r
    }

    /// Declared exponents, or the smallest ones read off the characteristic polynomial.
    pub fn annihilation_exponents(&self) -> Vec<usize> {
        self.annihilation_exponents_with(&self.action.characteristic_polynomial())
    }

    fn annihilation_exponents_with(&self, chi: &Polynomial) -> Vec<usize> {
        if let Some(m) = &self.multiplicities {
            return m.clone();
        }
        (0..self.genus - 1)
            .map(|k| {
                if k == 0 {
                    multiplicity(chi, &G::zero()).div_ceil(4)
                } else {
                    (0..4).map(|r| multiplicity(chi, &G::i_pow(r).scale(&int(2 * k)))).max().unwrap_or(0)
                }
            })
            .collect()
    }
}

/// Algebraic multiplicity of `root` in `p`.
fn multiplicity(p: &Polynomial, root: &G) -> usize {
    let lin = Polynomial::linear(root);
    let mut q = p.clone();
    let mut m = 0;
    while !q.is_zero() {
        match q.exact_div(&lin) {
            Some(next) => {
                q = next;
                m += 1;
            }
            None => break,
        }
    }
    m
}

fn fourth_power_factor(k: i64) -> Polynomial {
    // t⁴ − (2k)⁴
    let c = G::from_int(2 * k).pow(4);
    Polynomial::new(vec![-c, G::zero(), G::zero(), G::zero(), G::one()])
}

/// `f₀(t) = (t + (2g−2))(t² + (2g−2)²)·∏_{k=0}^{g−2} (t⁴ − (2k)⁴)`: vanishes on
/// every grid point except `2g − 2`.
pub fn build_f0(genus: i64) -> Result<Polynomial, AsymptoticsError> {
    if genus < 2 {
        return Err(AsymptoticsError::Genus(genus));
    }
    let top = G::from_int(2 * genus - 2);
    let mut f = Polynomial::new(vec![top.clone(), G::one()]);
    f = &f * &Polynomial::new(vec![top.pow(2), G::zero(), G::one()]);
    for k in 0..genus - 1 {
        f = &f * &fourth_power_factor(k);
    }
    Ok(f)
}

/// `p(t) = p₀·∏_{k=0}^{g−2} (t⁴ − (2k)⁴)^{m_k}` with `p(2g − 2) = 1`.
pub fn build_p(genus: i64, mults: &[usize]) -> Result<Polynomial, AsymptoticsError> {
    if genus < 2 {
        return Err(AsymptoticsError::Genus(genus));
    }
    let expected = (genus - 1) as usize;
    if mults.len() != expected {
        return Err(AsymptoticsError::MultiplicityCount { expected, found: mults.len() });
    }
    let mut p = Polynomial::one();
    for (k, &m) in mults.iter().enumerate() {
        p = &p * &fourth_power_factor(k as i64).pow(m);
    }
    let at_top = p.eval(&G::from_int(2 * genus - 2));
    Ok(p.scale(&at_top.inv().expect("p has no root at 2g−2")))
}

/// `leftᵀ·Aⁿ·right`.
pub fn simulate_pairing(model: &FloerModel, n: u64) -> G {
    dot(&model.left, &model.action.pow(n).mul_vec(&model.right))
}

/// `D(hⁿ)` for `n = 0..len`.
pub fn pairing_sequence(model: &FloerModel, len: usize) -> Vec<G> {
    let mut v = model.right.clone();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(dot(&model.left, &v));
        v = model.action.mul_vec(&v);
    }
    out
}

/// `D(p(h)hⁿ) = leftᵀ·p(A)·Aⁿ·right` for `n = 0..=n_max`, after checking that
/// `p(A)` kills every generalized eigenspace below the top.
pub fn projected_sequence(model: &FloerModel, p: &Polynomial, n_max: usize) -> Result<Vec<G>, AsymptoticsError> {
    model.check_shape()?;
    let top4 = G::from_int(model.growth()).pow(4);
    let residual = model.action.pow(4).shift(&top4).mul(&model.action.eval_poly(p));
    if !residual.is_zero() {
        return Err(AsymptoticsError::InsufficientAnnihilation);
    }
    let mut v = model.action.eval_poly_on(p, &model.right);
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(dot(&model.left, &v));
        v = model.action.mul_vec(&v);
    }
    Ok(out)
}

/// The matrix `(i^{rn})_{n,r}`, `0 ≤ n, r ≤ 3`.
pub fn i_vandermonde() -> Matrix {
    let rows = (0..4).map(|n| (0..4).map(|r| G::i_pow(r * n)).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// Solves `vals[n]/(2g−2)ⁿ = Σ_r i^{rn}·c_r` for `(c₀, c₁, c₂, c₃)`.
pub fn vandermonde_recover(vals: &[G; 4], genus: i64) -> Result<[G; 4], AsymptoticsError> {
    if genus < 2 {
        return Err(AsymptoticsError::Genus(genus));
    }
    let top_inv = G::from_int(2 * genus - 2).inv().expect("nonzero");
    let scaled: Vec<G> = vals.iter().enumerate().map(|(n, v)| v * &top_inv.pow(n as u64)).collect();
    let c = i_vandermonde().solve(&scaled).expect("i-Vandermonde is invertible");
    Ok([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
}

/// Projector onto the generalized eigenspace of `A` for `lambda`, built as
/// `h(A)` with `h ≡ 1 mod (t − λ)^m` and `h ≡ 0 mod χ/(t − λ)^m`, where `χ` is
/// the characteristic polynomial and `m` the algebraic multiplicity.
pub fn eigenprojector(a: &Matrix, lambda: &G) -> Matrix {
    a.eval_poly(&projector_polynomial(&a.characteristic_polynomial(), lambda))
}

/// The polynomial `h` with `h(A) = π_λ`, given the characteristic polynomial.
pub fn projector_polynomial(chi: &Polynomial, lambda: &G) -> Polynomial {
    let m = multiplicity(chi, lambda);
    if m == 0 {
        return Polynomial::zero();
    }
    let lin = Polynomial::linear(lambda);
    let cof = chi.exact_div(&lin.pow(m)).expect("multiplicity divides");
    // cof(λ + u) as a power series in u, inverted mod u^m
    let mut shifted = Polynomial::zero();
    let u_plus_lambda = Polynomial::new(vec![lambda.clone(), G::one()]);
    for c in cof.coeffs().iter().rev() {
        shifted = &(&shifted * &u_plus_lambda) + &Polynomial::constant(c.clone());
    }
    let s0 = shifted.coeff(0).inv().expect("cofactor nonzero at lambda");
    let mut inv = vec![s0.clone()];
    for j in 1..m {
        let acc = (1..=j).fold(G::zero(), |acc, i| &acc + &(&shifted.coeff(i) * &inv[j - i]));
        inv.push(-(&acc * &s0));
    }
    // back to t: Σ inv_j (t − λ)^j
    let mut s = Polynomial::zero();
    for c in inv.iter().rev() {
        s = &(&s * &lin) + &Polynomial::constant(c.clone());
    }
    &cof * &s
}

/// `c_r = leftᵀ·π_{iʳ(2g−2)}·right` through characteristic-polynomial projectors.
pub fn projector_coefficients(model: &FloerModel) -> [G; 4] {
    projector_coefficients_with(model, &model.action.characteristic_polynomial())
}

fn projector_coefficients_with(model: &FloerModel, chi: &Polynomial) -> [G; 4] {
    let top = G::from_int(model.growth());
    let c: Vec<G> = (0..4)
        .map(|r| {
            let h = projector_polynomial(chi, &(&G::i_pow(r) * &top));
            dot(&model.left, &model.action.eval_poly_on(&h, &model.right))
        })
        .collect();
    [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
}

/// `χ(t)/(t − (2g−2))^{dim V}`, the cofactor `f₁` of the top eigenvalue.
pub fn build_f1(model: &FloerModel) -> Polynomial {
    let chi = model.action.characteristic_polynomial();
    let top = G::from_int(model.growth());
    let m = multiplicity(&chi, &top);
    chi.exact_div(&Polynomial::linear(&top).pow(m)).expect("multiplicity divides")
}

/// Multiplies each coefficient of `Σ c·e^{λt}` by `f(λ)`; with `f = f₀·f₁` only
/// `λ = 2g − 2` survives on exponents from the grid.
pub fn annihilate_series(series: &ExpSum, f: &Polynomial) -> ExpSum {
    series.apply_poly_to_exponents(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub genus: i64,
    pub d0: i64,
    /// `2g − 2`.
    pub growth: i64,
    /// Numerators `a₀..a₃` of `(a₀ + a₁t + a₂t² + a₃t³)/(1 − (2g−2)⁴t⁴)`.
    pub a: Vec<G>,
    /// `a_{d₀}`.
    pub leading: G,
    /// `a_{d₀}/(2g−2)^{d₀}`: `D(hⁿ) − growth_constant·(2g−2)ⁿ` is `o((2g−2)ⁿ)` for `n ≡ d₀`.
    pub growth_constant: G,
    /// `a_{d₀} = 0`, the branch the nonvanishing argument rules out.
    pub contradiction: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_r: Option<Vec<G>>,
    pub checks: Vec<Check>,
}

impl AsymptoticReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Partial-fraction extraction of the top-growth part of `F(t) = Σ D(hʲ)tʲ`.
pub fn generating_asymptotics(
    seq: &[G],
    genus: i64,
    mults: &[usize],
    d0: i64,
) -> Result<AsymptoticReport, AsymptoticsError> {
    if !(0..4).contains(&d0) {
        return Err(AsymptoticsError::Residue(d0));
    }
    let p = build_p(genus, mults)?;
    let d = p.degree().expect("p nonzero");
    let needed = 2 * d + 8;
    if seq.len() < needed {
        return Err(AsymptoticsError::SequenceTooShort { needed, found: seq.len() });
    }
    let top = G::from_int(2 * genus - 2);
    let reversed = p.reversed(d);
    let mut denom_top = vec![G::zero(); 5];
    denom_top[0] = G::one();
    denom_top[4] = -top.pow(4);
    let multiplier = &Polynomial::new(denom_top) * &reversed;
    let coeff_of_product = |j: usize| {
        (0..=j.min(multiplier.degree().unwrap_or(0)))
            .fold(G::zero(), |acc, i| &acc + &(&multiplier.coeff(i) * &seq[j - i]))
    };
    for j in d + 4..seq.len() {
        if !coeff_of_product(j).is_zero() {
            return Err(AsymptoticsError::NotPolynomial(j));
        }
    }
    let q = Polynomial::new((0..d + 4).map(coeff_of_product).collect());

    // A(τ) = q(τ)/(t^d p(1/t))(τ) at the four roots τ = iˢ/(2g−2)
    let top_inv = top.inv().expect("nonzero");
    let values: Vec<G> = (0..4)
        .map(|s| {
            let tau = &G::i_pow(s) * &top_inv;
            &q.eval(&tau) / &reversed.eval(&tau)
        })
        .collect();
    let quarter = G::ratio(1, 4);
    let a: Vec<G> = (0..4)
        .map(|j| {
            let b = (0..4).fold(G::zero(), |acc, s| &acc + &(&G::i_pow(-s * j) * &values[s as usize]));
            &(&b * &quarter) * &top.pow(j as u64)
        })
        .collect();
    let leading = a[d0 as usize].clone();
    let growth_constant = &leading * &top_inv.pow(d0 as u64);
    let contradiction = leading.is_zero();
    Ok(AsymptoticReport {
        genus,
        d0,
        growth: 2 * genus - 2,
        a,
        leading,
        growth_constant,
        contradiction,
        c_r: None,
        checks: Vec::new(),
    })
}

/// Runs both routes on a model and cross-checks them.
pub fn analyze_model(model: &FloerModel) -> Result<AsymptoticReport, AsymptoticsError> {
    model.check_shape()?;
    let chi = model.action.characteristic_polynomial();
    let residual = model.grid_residual_with(&chi);
    if !residual.is_zero() {
        return Err(AsymptoticsError::SpectrumOffGrid { name: model.name.clone(), residual: residual.to_string() });
    }
    let d0 = model.congruence.d0()?;
    let mults = model.annihilation_exponents_with(&chi);
    let p = build_p(model.genus, &mults)?;
    let projected = projected_sequence(model, &p, 11)?;
    let top4 = G::from_int(model.growth()).pow(4);
    let recurrence = (0..projected.len() - 4).all(|n| projected[n + 4] == &top4 * &projected[n]);

    let vals = [projected[0].clone(), projected[1].clone(), projected[2].clone(), projected[3].clone()];
    let c_vdm = vandermonde_recover(&vals, model.genus)?;
    let c_proj = projector_coefficients_with(model, &chi);

    let d = p.degree().expect("p nonzero");
    let seq = pairing_sequence(model, 2 * d + 8);
    let mut report = generating_asymptotics(&seq, model.genus, &mults, d0)?;
    let expected = (0..4).fold(G::zero(), |acc, r| &acc + &(&G::i_pow(r * d0) * &c_proj[r as usize]));

    let cong = degree_congruence(model.congruence.w_sq, model.congruence.b_plus, model.congruence.b1, d0)?;
    let mut check =
        |name: &str, pass: bool, values: String| report.checks.push(Check { name: name.into(), pass, values });
    check("spectrum_on_grid", true, format!("dim {}", model.dim()));
    check("recurrence_mod_4", recurrence, format!("{} terms", projected.len()));
    check("vandermonde_matches_projectors", c_vdm == c_proj, format!("{c_vdm:?} vs {c_proj:?}"));
    check(
        "generating_function_matches_projectors",
        report.growth_constant == expected,
        format!("{:?} vs {expected:?}", report.growth_constant),
    );
    check("d0_matches_degree_congruence", cong.allowed && cong.d0 == report.d0, format!("d0 = {}", report.d0));
    check("top_pairing_nonzero", !c_proj[0].is_zero(), format!("c0 = {:?}", c_proj[0]));
    report.c_r = Some(c_proj.to_vec());
    Ok(report)
}

/// Jordan block `eigenvalue·I + N` of the given size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: G,
    pub size: usize,
}

impl JordanBlock {
    pub fn new(eigenvalue: G, size: usize) -> Self {
        JordanBlock { eigenvalue, size }
    }
}

/// `S·J·S⁻¹` for a block-diagonal Jordan matrix `J`.
pub fn conjugated_action(blocks: &[JordanBlock], mixing: &Matrix) -> Option<Matrix> {
    let n: usize = blocks.iter().map(|b| b.size).sum();
    let mut j = Matrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.size {
            j[(at + i, at + i)] = b.eigenvalue.clone();
            if i + 1 < b.size {
                j[(at + i, at + i + 1)] = G::one();
            }
        }
        at += b.size;
    }
    if mixing.rows() != n || !mixing.is_square() {
        return None;
    }
    Some(mixing.mul(&j).mul(&mixing.inverse()?))
}

fn ints(v: &[i64]) -> Vec<G> {
    v.iter().map(|&x| G::from_int(x)).collect()
}

/// Built-in fixtures: a 1×1 top model, an 8×8 grid model with a nilpotent
/// block, and a four-eigenvalue model concentrated in residue 0.
pub fn builtin_models() -> Vec<FloerModel> {
    let top_1x1 = FloerModel {
        name: "top-1x1".into(),
        genus: 3,
        action: Matrix::from_rows(vec![vec![G::from_int(4)]]).expect("1x1"),
        left: vec![G::from_int(3)],
        right: vec![G::ratio(1, 2)],
        multiplicities: None,
        congruence: CongruenceData { w_sq: -1, b_plus: 3, b1: 0 },
    };

    let i = G::i();
    let blocks = vec![
        JordanBlock::new(G::from_int(4), 1),
        JordanBlock::new(G::from_int(-4), 1),
        JordanBlock::new(G::from_ints(0, 4), 1),
        JordanBlock::new(G::zero(), 2),
        JordanBlock::new(G::from_int(2), 1),
        JordanBlock::new(G::from_ints(0, -2), 1),
        JordanBlock::new(&i * &G::from_int(2), 1),
    ];
    // unit lower times unit upper triangular: determinant 1, integral inverse
    let mut lower = Matrix::identity(8);
    let mut upper = Matrix::identity(8);
    for r in 0..8 {
        for c in 0..r {
            lower[(r, c)] = G::from_int(((3 * r + c) % 3) as i64 - 1);
            upper[(c, r)] = G::from_int(((r + 2 * c) % 2) as i64);
        }
    }
    let mixing = lower.mul(&upper);
    let grid_8x8 = FloerModel {
        name: "grid-8x8".into(),
        genus: 3,
        action: conjugated_action(&blocks, &mixing).expect("invertible mixing"),
        left: ints(&[1, 0, 2, -1, 1, 0, 1, 3]),
        right: ints(&[2, 1, 0, 1, -1, 1, 0, 1]),
        multiplicities: None,
        congruence: CongruenceData { w_sq: 1, b_plus: 5, b1: 0 },
    };

    let fourfold = FloerModel {
        name: "fourfold-residue-0".into(),
        genus: 2,
        action: Matrix::diagonal(&[G::from_int(2), G::from_ints(0, 2), G::from_int(-2), G::from_ints(0, -2)]),
        left: ints(&[1, 1, 1, 1]),
        right: ints(&[1, 1, 1, 1]),
        multiplicities: None,
        congruence: CongruenceData { w_sq: -6, b_plus: 3, b1: 0 },
    };

    vec![top_1x1, grid_8x8, fourfold]
}

/// A model whose action has eigenvalue 3, off the grid.
pub fn off_grid_model() -> FloerModel {
    FloerModel {
        name: "off-grid".into(),
        genus: 2,
        action: Matrix::diagonal(&ints(&[2, 3])),
        left: ints(&[1, 1]),
        right: ints(&[1, 1]),
        multiplicities: None,
        congruence: CongruenceData { w_sq: -1, b_plus: 3, b1: 0 },
    }
}
