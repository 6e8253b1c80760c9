#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_traits::{One, Zero};

use super::{GaussianRational, Polynomial, Rational};

/// Dense square or rectangular matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GaussianRational::one();
        }
        m
    }

    pub fn diagonal(entries: &[GaussianRational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows; returns `None` on ragged input.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `self − s·I`.
    pub fn shift(&self, s: &GaussianRational) -> Matrix {
        let mut out = self.clone();
        for k in 0..self.rows.min(self.cols) {
            out[(k, k)] -= s;
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(GaussianRational::zero(), |acc, j| &acc + &(&self[(i, j)] * &v[j])))
            .collect()
    }

    /// `p(self)` by Horner's scheme.
    pub fn eval_poly(&self, p: &Polynomial) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for k in 0..n {
                acc[(k, k)] += c;
            }
        }
        acc
    }

    /// `p(self)·v` by Horner's scheme on vectors.
    pub fn eval_poly_on(&self, p: &Polynomial, v: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut acc = vec![GaussianRational::zero(); v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += &(c * x);
            }
        }
        acc
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> GaussianRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return GaussianRational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            let p_inv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &p_inv;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= &delta;
                }
            }
        }
        det
    }

    /// Solves `self · x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert!(self.is_square());
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut a: Vec<Vec<GaussianRational>> = self
            .to_rows()
            .into_iter()
            .zip(rhs)
            .map(|(mut row, b)| {
                row.push(b.clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(pivot, col);
            let p_inv = a[col][col].inv().expect("nonzero pivot");
            for c in col..=n {
                a[col][c] = &a[col][c] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= &delta;
                }
            }
        }
        Some(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
    }

    /// Inverse of a square nonsingular matrix, column by column.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![GaussianRational::zero(); n];
            e[j] = GaussianRational::one();
            for (i, x) in self.solve(&e)?.into_iter().enumerate() {
                inv[(i, j)] = x;
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(t·I − self)` via the Faddeev–LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[n] = GaussianRational::one();
        // M_k = A·M_{k−1} + c_{n−k+1}·I ; c_{n−k} = −tr(A·M_k)/k
        let mut am = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut m = am;
            for d in 0..n {
                m[(d, d)] += &coeffs[n - k + 1];
            }
            am = self.mul(&m);
            let trace = (0..n).fold(GaussianRational::zero(), |acc, d| &acc + &am[(d, d)]);
            coeffs[n - k] = -trace.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Polynomial::new(coeffs)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// `Σ aᵢ·bᵢ` (bilinear, no conjugation).
pub fn dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter().zip(b).fold(GaussianRational::zero(), |acc, (x, y)| &acc + &(x * y))
}
