//! Dense quaternionic matrices.
//!
//! Matrices act on column vectors from the left, and `ℍⁿ` is a right
//! vector space: an eigenvector `v` of `A` satisfies `Av = vλ`.

mod eigen;
pub mod random;
mod schur;

pub use eigen::{eigenvalues, EigenvalueList, MAX_EIGEN_DIM};
pub(crate) use eigen::permutations;
pub use schur::{is_unitary, right_eigenvector, schur, unitary_with_first_column, Schur};

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::One;

use crate::cmat::CMatrix;
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::scalar::{Field, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion<T>>,
}

impl<T: Scalar> QMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Quaternion<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(QMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Quaternion<T>>>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: alloc::vec![Quaternion::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, s: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quaternion::from_real(s.clone()));
        }
        m
    }

    pub fn diag(d: &[Quaternion<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, q) in d.iter().enumerate() {
            m.set(i, i, q.clone());
        }
        m
    }

    /// A 2x2 matrix `[[a, b], [c, d]]`.
    pub fn m2(a: Quaternion<T>, b: Quaternion<T>, c: Quaternion<T>, d: Quaternion<T>) -> Self {
        QMatrix { rows: 2, cols: 2, entries: alloc::vec![a, b, c, d] }
    }

    /// Matrix with unit quaternion `u` at `(r, c)` and zeros elsewhere.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize, u: Quaternion<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(r, c, u);
        m
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

    pub fn get(&self, r: usize, c: usize) -> &Quaternion<T> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Quaternion<T>) {
        self.entries[r * self.cols + c] = q;
    }

    pub fn entries(&self) -> &[Quaternion<T>] {
        &self.entries
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn require_size(&self, n: usize) -> Result<()> {
        let m = self.require_square()?;
        if m == n {
            Ok(())
        } else {
            Err(Error::WrongSize { expected: n, found: m })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Quaternion::is_zero)
    }

    /// Quaternionic trace `Tr(A) = 2·Re(Σ aᵢᵢ)`.
    pub fn qtrace(&self) -> Result<T> {
        self.require_square()?;
        Ok(self.trace())
    }

    /// Quaternionic trace without the squareness check (uses the leading diagonal).
    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.get(i, i).a.clone();
        }
        acc.clone() + acc
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map_entries(|q| q.scale(s))
    }

    /// `q·A` (every entry multiplied by `q` on the left).
    pub fn left_scale(&self, q: &Quaternion<T>) -> Self {
        self.map_entries(|e| q * e)
    }

    /// `A·q` (every entry multiplied by `q` on the right).
    pub fn right_scale(&self, q: &Quaternion<T>) -> Self {
        self.map_entries(|e| e * q)
    }

    pub fn map_entries(&self, f: impl Fn(&Quaternion<T>) -> Quaternion<T>) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn map<U, F: Fn(&T) -> U + Copy>(&self, f: F) -> QMatrix<U> {
        QMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|q| q.map(f)).collect() }
    }

    pub fn to_f64(&self) -> QMatrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let prod = a * rhs.get(k, c);
                    out.entries[r * rhs.cols + c] += &prod;
                }
            }
        }
        Ok(out)
    }

    /// `Tr(AB)` from the diagonal of the product only.
    pub fn trace_of_product(&self, rhs: &Self) -> Result<T> {
        if self.cols != rhs.rows || self.rows != rhs.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = T::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), rhs.get(k, i));
                acc = acc + a.a.clone() * b.a.clone() - a.b.clone() * b.b.clone() - a.c.clone() * b.c.clone() - a.d.clone() * b.d.clone();
            }
        }
        Ok(acc.clone() + acc)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.require_square()?;
        rhs.require_square()?;
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(n);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// The embedding `χₙ(A) = [[A₁, −conj(A₂)], [A₂, conj(A₁)]]` for `A = A₁ + 𝗃A₂`.
    pub fn chi(&self) -> CMatrix<T> {
        let (r, c) = (self.rows, self.cols);
        let mut out = CMatrix::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let (z1, z2) = self.get(i, j).complex_parts();
                out.set(i, j, z1.clone());
                out.set(i, j + c, -z2.conj());
                out.set(i + r, j, z2);
                out.set(i + r, j + c, z1.conj());
            }
        }
        out
    }

    /// Reads `A₁` and `A₂` back from the left half of `χₙ(A)`.
    pub fn from_chi(m: &CMatrix<T>) -> Result<Self> {
        if m.rows() % 2 != 0 || m.cols() % 2 != 0 || m.rows() == 0 {
            return Err(Error::ShapeMismatch);
        }
        let (r, c) = (m.rows() / 2, m.cols() / 2);
        let mut out = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                out.set(i, j, Quaternion::from_complex_parts(m.get(i, j), m.get(i + r, j)));
            }
        }
        Ok(out)
    }

    /// Entries below the diagonal vanish (exactly, or up to `tol` in float mode).
    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).coeffs().iter().all(|x| x.near_zero(tol))))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.is_upper_triangular(tol) && self.transpose().is_upper_triangular(tol)
    }

    /// Splits every entry as `q = z₁ + 𝗃z₂` and returns the complex matrices `(A₁, A₂)`.
    pub fn complex_split(&self) -> (CMatrix<T>, CMatrix<T>) {
        let mut a1 = CMatrix::zeros(self.rows, self.cols);
        let mut a2 = CMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (z1, z2) = self.get(r, c).complex_parts();
                a1.set(r, c, z1);
                a2.set(r, c, z2);
            }
        }
        (a1, a2)
    }

    /// Embeds a complex matrix (entries in `ℂ ⊂ ℍ`).
    pub fn from_complex(m: &CMatrix<T>) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, Quaternion::from_complex(m.get(r, c)));
            }
        }
        out
    }

    /// Real coordinates in row-major order, four per entry.
    pub fn coords(&self) -> Vec<T> {
        self.entries.iter().flat_map(|q| q.coeffs()).collect()
    }

    pub fn from_coords(rows: usize, cols: usize, coords: &[T]) -> Result<Self> {
        if coords.len() != 4 * rows * cols {
            return Err(Error::ShapeMismatch);
        }
        let entries = coords
            .chunks(4)
            .map(|c| Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()))
            .collect();
        Self::new(rows, cols, entries)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&Quaternion<T>, &Quaternion<T>) -> Quaternion<T>) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl<T: Field> QMatrix<T> {
    /// Inverse by Gauss–Jordan elimination with left row operations.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = if T::EXACT {
            0.0
        } else {
            self.entries.iter().map(|q| q.norm_sq().to_f64()).fold(0.0, f64::max)
        };
        for col in 0..n {
            let mut best = col;
            let mut best_norm = a.get(col, col).norm_sq();
            for r in col + 1..n {
                let nr = a.get(r, col).norm_sq();
                if nr > best_norm {
                    best = r;
                    best_norm = nr;
                }
            }
            let singular = if T::EXACT {
                best_norm.is_zero()
            } else {
                best_norm.to_f64() <= 1e-28 * scale || best_norm.is_zero()
            };
            if singular {
                return Err(Error::Singular);
            }
            a.swap_rows(col, best);
            inv.swap_rows(col, best);
            let p = a.get(col, col).inverse()?;
            a.left_mul_row(col, &p);
            inv.left_mul_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.row_sub_left(r, col, &f);
                inv.row_sub_left(r, col, &f);
            }
        }
        Ok(inv)
    }

    /// `P A P⁻¹`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        p.try_mul(self)?.try_mul(&p.inverse()?)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn left_mul_row(&mut self, r: usize, q: &Quaternion<T>) {
        for c in 0..self.cols {
            let v = q * self.get(r, c);
            self.set(r, c, v);
        }
    }

    /// `row_r ← row_r − f·row_src`.
    fn row_sub_left(&mut self, r: usize, src: usize, f: &Quaternion<T>) {
        for c in 0..self.cols {
            let v = self.get(r, c) - &(f * self.get(src, c));
            self.set(r, c, v);
        }
    }
}

impl QMatrix<f64> {
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(Quaternion::max_abs).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt()
    }

    /// Largest norm of an entry strictly below the diagonal.
    pub fn lower_residual(&self) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..r.min(self.cols) {
                m = m.max(self.get(r, c).norm());
            }
        }
        m
    }

    pub fn dist(&self, rhs: &Self) -> f64 {
        self.try_sub(rhs).map(|d| d.frobenius()).unwrap_or(f64::INFINITY)
    }
}

impl QMatrix<Rational> {
    /// Returns `(D, D·A)` with `D > 0` the least common denominator, so that
    /// `D·A` has integer entries.
    pub fn clear_denominators(&self) -> (BigInt, QMatrix<BigInt>) {
        let mut lcm = BigInt::one();
        for q in &self.entries {
            for x in q.coeffs() {
                lcm = lcm.lcm(x.denom());
            }
        }
        let scaled = self.map(|x| (x * Rational::from_integer(lcm.clone())).to_integer());
        (lcm, scaled)
    }
}

impl QMatrix<BigInt> {
    pub fn to_rational(&self) -> QMatrix<Rational> {
        self.map(|x| Rational::from_integer(x.clone()))
    }
}

/// Exact rational matrix from integer quaternion coefficients, row-major.
pub fn qmat_i64(rows: usize, cols: usize, coeffs: &[[i64; 4]]) -> QMatrix<Rational> {
    let entries = coeffs.iter().map(|c| Quaternion::from_i64s(c[0], c[1], c[2], c[3])).collect();
    QMatrix::new(rows, cols, entries).expect("coefficient count matches shape")
}

impl<T: Scalar> Add for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn add(self, rhs: Self) -> QMatrix<T> {
        self.try_add(rhs).expect("shape mismatch in matrix sum")
    }
}

impl<T: Scalar> Sub for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn sub(self, rhs: Self) -> QMatrix<T> {
        self.try_sub(rhs).expect("shape mismatch in matrix difference")
    }
}

/// Panics on a shape mismatch; use [`QMatrix::try_mul`] for a checked product.
impl<T: Scalar> Mul for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn mul(self, rhs: Self) -> QMatrix<T> {
        self.try_mul(rhs).expect("shape mismatch in matrix product")
    }
}

impl<T: Scalar> Neg for &QMatrix<T> {
    type Output = QMatrix<T>;
    fn neg(self) -> QMatrix<T> {
        self.map_entries(|q| -q)
    }
}

/// Complex helper: the half-plane representative of a complex number.
pub(crate) fn upper_half(z: Complex<f64>) -> Complex<f64> {
    Complex::new(z.re, z.im.abs())
}
