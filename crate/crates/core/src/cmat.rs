//! Dense complex matrices, the target of the `χₙ` embedding.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(CMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, entries: alloc::vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::one());
        }
        m
    }

    /// Builds a matrix from integer `(re, im)` pairs given row by row.
    pub fn from_i64_pairs(rows: usize, cols: usize, pairs: &[(i64, i64)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|&(re, im)| Complex::new(T::from_i64(re), T::from_i64(im)))
            .collect();
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Complex<T> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_zero() && z.im.is_zero())
    }

    /// Ordinary trace (sum of diagonal entries).
    pub fn trace(&self) -> Complex<T> {
        let n = self.rows.min(self.cols);
        let mut acc = Complex::zero();
        for i in 0..n {
            acc = acc + self.get(i, i).clone();
        }
        acc
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

    pub fn scale(&self, s: &Complex<T>) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.clone() * s.clone()).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * rhs.cols + c;
                    out.entries[idx] = out.entries[idx].clone() + a.clone() * rhs.get(k, c).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols, "pow of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> CMatrix<U> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| Complex::new(f(&z.re), f(&z.im))).collect(),
        }
    }

    pub fn to_f64(&self) -> CMatrix<f64> {
        self.map(|x| x.to_f64())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&Complex<T>, &Complex<T>) -> Complex<T>) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl CMatrix<f64> {
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl<T: Scalar> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: Scalar> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }
}

/// Panics on a shape mismatch; use [`CMatrix::try_mul`] for a checked product.
impl<T: Scalar> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.try_mul(rhs).expect("shape mismatch in matrix product")
    }
}

impl<T: Scalar> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| -z.clone()).collect(),
        }
    }
}
