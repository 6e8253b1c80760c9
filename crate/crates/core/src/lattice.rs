//! Integer intersection lattices and the classes that live in them.
//!
//! A class is stored by its coordinates in the lattice basis; homology and
//! cohomology classes share one coordinate vector, and every square or pairing
//! goes through the Gram matrix. Only unimodular lattices are accepted.

#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("expected {expected} basis labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("gram matrix is singular")]
    Singular,
    #[error("gram matrix has determinant {0}; only unimodular lattices are supported")]
    NotUnimodular(String),
    #[error("class has {found} coordinates but the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("spanning classes are linearly dependent")]
    DependentSpanning,
    #[error("target is nonzero but the spanning set is empty")]
    EmptySpanning,
    #[error("target lies outside the span")]
    OutsideSpan,
    #[error("even lattice with signature {0} does not exist (signature must be divisible by 8)")]
    EvenSignature(i64),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
}

/// A class in H₂ (equivalently H² via Poincaré duality) modulo torsion.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct H2Class {
    pub coords: Vec<i64>,
}

impl H2Class {
    pub fn new(coords: Vec<i64>) -> Self {
        H2Class { coords }
    }

    pub fn zero(rank: usize) -> Self {
        H2Class { coords: vec![0; rank] }
    }

    /// The `index`-th basis vector.
    pub fn basis(rank: usize, index: usize) -> Self {
        let mut c = Self::zero(rank);
        c.coords[index] = 1;
        c
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        H2Class::new(self.coords.iter().map(|c| c * k).collect())
    }

    /// Pads with zero coordinates up to `rank` (classes pulled back along a blowup).
    pub fn extended(&self, rank: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.resize(rank, 0);
        H2Class { coords }
    }

    /// gcd of the coordinates; 1 exactly when the class is primitive.
    pub fn content(&self) -> i64 {
        self.coords.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }
}

impl Add for &H2Class {
    type Output = H2Class;
    fn add(self, rhs: &H2Class) -> H2Class {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        H2Class::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &H2Class {
    type Output = H2Class;
    fn sub(self, rhs: &H2Class) -> H2Class {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        H2Class::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &H2Class {
    type Output = H2Class;
    fn neg(self) -> H2Class {
        self.scale(-1)
    }
}

impl fmt::Debug for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// Counts of positive, negative and zero pivots of a congruence diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Exact congruence diagonalization of a symmetric integer matrix.
///
/// Returns the inertia and the determinant. Works over the rationals with
/// symmetric row/column operations: a zero diagonal pivot is replaced by a
/// later nonzero diagonal entry, or created by adding a row/column with a
/// nonzero off-diagonal entry.
pub fn congruence_diagonalize(gram: &[Vec<i64>]) -> (Inertia, Rational) {
    let n = gram.len();
    let mut a: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut inertia = Inertia { positive: 0, negative: 0, zero: 0 };
    let mut det = int(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j; new a[k][k] = 2·a[k][j] since a[j][j] = 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                inertia.zero += 1;
                det = int(0);
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        det *= &pivot;
        // Schur complement of the pivot on the trailing block
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] / &pivot;
            for c in k + 1..n {
                let delta = &factor * &a[k][c];
                a[r][c] -= delta;
            }
        }
        for r in k + 1..n {
            a[r][k] = int(0);
            a[k][r] = int(0);
        }
    }
    (inertia, det)
}

/// Signature `#positive − #negative` of a symmetric gram matrix; errors when singular.
pub fn signature(gram: &[Vec<i64>]) -> Result<i64, LatticeError> {
    check_symmetric(gram)?;
    let (inertia, _) = congruence_diagonalize(gram);
    if inertia.zero > 0 {
        return Err(LatticeError::Singular);
    }
    Ok(inertia.positive as i64 - inertia.negative as i64)
}

fn check_symmetric(gram: &[Vec<i64>]) -> Result<(), LatticeError> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(LatticeError::NotSquare);
    }
    for i in 0..n {
        for j in i + 1..n {
            if gram[i][j] != gram[j][i] {
                return Err(LatticeError::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Unimodular symmetric integer lattice with a fixed, labelled basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
    positive: usize,
    negative: usize,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self, LatticeError> {
        check_symmetric(&gram)?;
        if labels.len() != gram.len() {
            return Err(LatticeError::LabelCount { expected: gram.len(), found: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let (inertia, det) = congruence_diagonalize(&gram);
        if inertia.zero > 0 {
            return Err(LatticeError::Singular);
        }
        if det.abs() != int(1) {
            return Err(LatticeError::NotUnimodular(det.to_string()));
        }
        Ok(Lattice { gram, labels, positive: inertia.positive, negative: inertia.negative })
    }

    /// Lattice with default labels `e1, e2, …`.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let labels = (1..=gram.len()).map(|i| format!("e{i}")).collect();
        Self::new(gram, labels)
    }

    pub fn empty() -> Self {
        Lattice { gram: Vec::new(), labels: Vec::new(), positive: 0, negative: 0 }
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self, LatticeError> {
        let n = entries.len();
        let gram = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect();
        Self::from_gram(gram)
    }

    /// The hyperbolic plane `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        Self::new(vec![vec![0, 1], vec![1, 0]], vec!["u".into(), "v".into()]).expect("hyperbolic plane")
    }

    /// `E8` (sign = 1) or `−E8` (sign = −1), as the Cartan matrix of the Dynkin diagram.
    pub fn e8(sign: i64) -> Self {
        let mut gram = vec![vec![0i64; 8]; 8];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = 2 * sign;
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (i, j) in edges {
            gram[i][j] = -sign;
            gram[j][i] = -sign;
        }
        Self::from_gram(gram).expect("E8 is unimodular")
    }

    /// `b⁺⟨1⟩ ⊕ b⁻⟨−1⟩` when odd; `b·H ⊕ k·(±E8)` when even.
    pub fn standard(b_plus: usize, b_minus: usize, even: bool) -> Result<Self, LatticeError> {
        if !even {
            let mut entries = vec![1; b_plus];
            entries.extend(std::iter::repeat_n(-1, b_minus));
            return Self::diagonal(&entries);
        }
        let sigma = b_plus as i64 - b_minus as i64;
        if sigma % 8 != 0 {
            return Err(LatticeError::EvenSignature(sigma));
        }
        let copies = (sigma.unsigned_abs() / 8) as usize;
        let hyperbolic = b_plus.min(b_minus);
        let mut out = Lattice::empty();
        for _ in 0..hyperbolic {
            out = out.direct_sum(&Lattice::hyperbolic());
        }
        for _ in 0..copies {
            out = out.direct_sum(&Lattice::e8(sigma.signum()));
        }
        Ok(out.relabelled_default())
    }

    fn relabelled_default(mut self) -> Self {
        self.labels = (1..=self.rank()).map(|i| format!("e{i}")).collect();
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Result<usize, LatticeError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    pub fn b_plus(&self) -> usize {
        self.positive
    }

    pub fn b_minus(&self) -> usize {
        self.negative
    }

    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    /// Even lattice: every diagonal entry of the Gram matrix is even.
    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn check(&self, a: &H2Class) -> Result<(), LatticeError> {
        if a.rank() != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), found: a.rank() });
        }
        Ok(())
    }

    /// `aᵀ·G·b`.
    pub fn pairing(&self, a: &H2Class, b: &H2Class) -> Result<i64, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        let mut total = 0i64;
        for (i, &ai) in a.coords.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row: i64 = self.gram[i].iter().zip(&b.coords).map(|(g, bj)| g * bj).sum();
            total += ai * row;
        }
        Ok(total)
    }

    pub fn square(&self, a: &H2Class) -> Result<i64, LatticeError> {
        self.pairing(a, a)
    }

    /// Characteristic: `K·x ≡ x·x (mod 2)` for every basis vector `x`.
    pub fn is_characteristic(&self, k: &H2Class) -> Result<bool, LatticeError> {
        self.check(k)?;
        Ok((0..self.rank()).all(|i| {
            let kx: i64 = self.gram[i].iter().zip(&k.coords).map(|(g, c)| g * c).sum();
            (kx - self.gram[i][i]).rem_euclid(2) == 0
        }))
    }

    /// Orthogonal direct sum; basis of `self` first. Colliding labels of
    /// `other` get a `'` suffix.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        Lattice { gram, labels, positive: self.positive + other.positive, negative: self.negative + other.negative }
    }

    /// Appends a `⟨−1⟩` summand with the given label.
    pub fn with_exceptional(&self, label: &str) -> Lattice {
        let mut e = Lattice::diagonal(&[-1]).expect("<-1>");
        e.labels = vec![label.to_string()];
        self.direct_sum(&e)
    }

    /// Decides whether `target = Σ cᵢ·spanningᵢ` with rational `cᵢ`.
    pub fn solve_in_span(&self, target: &H2Class, spanning: &[H2Class]) -> Result<SpanSolution, LatticeError> {
        self.check(target)?;
        for s in spanning {
            self.check(s)?;
        }
        if spanning.is_empty() {
            return if target.is_zero() {
                Ok(SpanSolution { coefficients: Vec::new() })
            } else {
                Err(LatticeError::EmptySpanning)
            };
        }
        let rows = self.rank();
        let cols = spanning.len();
        // augmented matrix [S | target], S has the spanning classes as columns
        let mut a: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = spanning.iter().map(|s| int(s.coords[r])).collect();
                row.push(int(target.coords[r]));
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(cols);
        for c in 0..cols {
            let Some(p) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
                return Err(LatticeError::DependentSpanning);
            };
            a.swap(p, pivot_row);
            let inv = int(1) / &a[pivot_row][c];
            for x in a[pivot_row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for cc in 0..=cols {
                        let d = &f * &a[pivot_row][cc];
                        a[r][cc] -= d;
                    }
                }
            }
            pivots.push(pivot_row);
            pivot_row += 1;
        }
        if a[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
            return Err(LatticeError::OutsideSpan);
        }
        let coefficients: Vec<Rational> = pivots.iter().map(|&r| a[r][cols].clone()).collect();
        // recombination must reproduce the target exactly
        for r in 0..rows {
            let sum = spanning.iter().zip(&coefficients).fold(int(0), |acc, (s, c)| acc + c * int(s.coords[r]));
            if sum != int(target.coords[r]) {
                return Err(LatticeError::OutsideSpan);
            }
        }
        Ok(SpanSolution { coefficients })
    }

    /// Lattice spanned by `basis` with the induced form; must itself be unimodular.
    pub fn induced(&self, basis: &[H2Class], labels: Vec<String>) -> Result<Lattice, LatticeError> {
        let gram = basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pairing(a, b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Lattice::new(gram, labels)
    }
}

/// Exact rational coefficients of a span decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanSolution {
    pub coefficients: Vec<Rational>,
}

impl SpanSolution {
    /// Integrality flag per coefficient.
    pub fn integral(&self) -> Vec<bool> {
        self.coefficients.iter().map(|c| c.is_integer()).collect()
    }

    pub fn all_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// The coefficients as machine integers, if they are all integral.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        self.coefficients
            .iter()
            .map(|c| if c.is_integer() { i64::try_from(c.to_integer()).ok() } else { None })
            .collect()
    }
}
