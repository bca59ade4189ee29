//! Random matrices for tests, sampling and fuzzing.
//!
//! Float generators draw coefficients uniformly from `[-1, 1]`. Exact
//! generators draw small rationals `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.

use alloc::vec::Vec;

use num_bigint::BigInt;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};
use rand::Rng;

use super::{eigenvalues, QMatrix};
use crate::quat::Quaternion;
use crate::scalar::Rational;

pub fn quat<R: Rng + ?Sized>(rng: &mut R) -> Quaternion<f64> {
    Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn unit_quat<R: Rng + ?Sized>(rng: &mut R) -> Quaternion<f64> {
    loop {
        let q = quat(rng);
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q.scale(&(1.0 / n));
        }
    }
}

/// Unit pure quaternion (uniform on the 2-sphere).
pub fn unit_pure<R: Rng + ?Sized>(rng: &mut R) -> Quaternion<f64> {
    loop {
        let mut q = quat(rng);
        q.a = 0.0;
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q.scale(&(1.0 / n));
        }
    }
}

pub fn complex_quat<R: Rng + ?Sized>(rng: &mut R) -> Quaternion<f64> {
    Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0, 0.0)
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix<f64> {
    let entries = (0..n * n).map(|_| quat(rng)).collect();
    QMatrix { rows: n, cols: n, entries }
}

/// Product of `n` quaternionic Householder reflections `I − 2vv*` and a
/// diagonal of unit quaternions.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix<f64> {
    let diag: Vec<_> = (0..n).map(|_| unit_quat(rng)).collect();
    let mut u = QMatrix::diag(&diag);
    for _ in 0..n {
        let v: Vec<_> = (0..n).map(|_| quat(rng)).collect();
        let norm: f64 = v.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let mut h = QMatrix::<f64>::identity(n);
        for r in 0..n {
            for c in 0..n {
                let outer = (&v[r] * &v[c].conj()).scale(&(2.0 / (norm * norm)));
                let e = h.get(r, c) - &outer;
                h.set(r, c, e);
            }
        }
        u = &h * &u;
    }
    u
}

/// Random matrix with pairwise distinct eigenvalues (gap at least `1e-6`).
pub fn random_generic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix<f64> {
    loop {
        let a = random_matrix(rng, n);
        if let Ok(e) = eigenvalues(&a) {
            if e.min_gap() > 1e-6 {
                return a;
            }
        }
    }
}

/// Upper triangular matrix with arbitrary quaternion entries on and above the diagonal.
pub fn random_upper<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix<f64> {
    let mut m = QMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            m.set(r, c, quat(rng));
        }
    }
    m
}

/// Upper triangular matrix whose diagonal is complex with `Im ≥ 0`.
pub fn random_upper_complex_diag<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix<f64> {
    let mut m = random_upper(rng, n);
    for i in 0..n {
        let z = complex_quat(rng);
        m.set(i, i, Quaternion::new(z.a, z.b.abs(), 0.0, 0.0));
    }
    m
}

/// Random matrix whose inverse has entries below `1e3`.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix<f64> {
    loop {
        let a = random_matrix(rng, n);
        if let Ok(inv) = a.inverse() {
            if inv.max_abs() < 1e3 {
                return a;
            }
        }
    }
}

pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound.max(1));
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn small_integer<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

pub fn exact_quat<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Quaternion<Rational> {
    Quaternion::new(
        small_rational(rng, bound),
        small_rational(rng, bound),
        small_rational(rng, bound),
        small_rational(rng, bound),
    )
}

/// Gaussian rational embedded in ℍ.
pub fn exact_complex<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Quaternion<Rational> {
    Quaternion::new(small_rational(rng, bound), small_rational(rng, bound), Rational::zero(), Rational::zero())
}

pub fn exact_small<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> QMatrix<Rational> {
    let entries = (0..rows * cols).map(|_| exact_quat(rng, bound)).collect();
    QMatrix { rows, cols, entries }
}

/// Square matrix with small integer coefficients.
pub fn exact_integer<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix<Rational> {
    let entries = (0..n * n)
        .map(|_| {
            Quaternion::new(
                small_integer(rng, bound),
                small_integer(rng, bound),
                small_integer(rng, bound),
                small_integer(rng, bound),
            )
        })
        .collect();
    QMatrix { rows: n, cols: n, entries }
}

pub fn exact_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix<Rational> {
    loop {
        let a = exact_small(rng, n, n, bound);
        if a.inverse().is_ok() {
            return a;
        }
    }
}

pub fn exact_upper<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix<Rational> {
    let mut m = QMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            m.set(r, c, exact_quat(rng, bound));
        }
    }
    m
}

/// Rational unit quaternion `w²/|w|²` for a random nonzero integer `w`.
pub fn exact_unit_quat<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Quaternion<Rational> {
    loop {
        let w = Quaternion::new(
            small_integer(rng, bound),
            small_integer(rng, bound),
            small_integer(rng, bound),
            small_integer(rng, bound),
        );
        if w.is_zero() {
            continue;
        }
        let n = w.norm_sq();
        return (&w * &w).scale(&(Rational::one() / n));
    }
}

/// Exact rational element of Sp(n): a Cayley transform `(I − S)(I + S)⁻¹` of
/// a random skew-Hermitian `S`, times a diagonal of rational unit
/// quaternions, times a signed permutation.
pub fn exact_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix<Rational> {
    let mut s = QMatrix::<Rational>::zeros(n, n);
    for r in 0..n {
        let mut d = exact_quat(rng, bound);
        d.a = Rational::zero();
        s.set(r, r, d);
        for c in r + 1..n {
            let q = exact_quat(rng, bound);
            s.set(c, r, -q.conj());
            s.set(r, c, q);
        }
    }
    let id = QMatrix::<Rational>::identity(n);
    let cayley = (&id - &s)
        .try_mul(&(&id + &s).inverse().expect("I + S is invertible for skew-Hermitian S"))
        .expect("square");
    let diag: Vec<_> = (0..n).map(|_| exact_unit_quat(rng, bound)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut p = QMatrix::<Rational>::zeros(n, n);
    for (r, &c) in perm.iter().enumerate() {
        let sign = if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() };
        p.set(r, c, Quaternion::from_real(sign));
    }
    &(&cayley * &QMatrix::diag(&diag)) * &p
}
