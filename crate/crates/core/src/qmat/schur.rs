//! Quaternionic Schur triangularization `T = U A U*` with `U ∈ Sp(n)`.
//!
//! Eigenvectors come from `χₙ(A)`: if `(w₁, w₂)` is a complex eigenvector of
//! `χₙ(A)` for `λ`, then `v = w₁ + 𝗃w₂` satisfies `Av = vλ`. The Schur form is
//! then built by deflation, one eigenvector per step.

use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use super::{eigenvalues, EigenvalueList, QMatrix, MAX_EIGEN_DIM};
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::scalar::Scalar;

type C64 = Complex<f64>;
type Q = Quaternion<f64>;

#[derive(Clone, Debug)]
pub struct Schur {
    pub u: QMatrix<f64>,
    pub t: QMatrix<f64>,
    /// Eigenvalues in the order they appear on the diagonal of `t`.
    pub diagonal: Vec<C64>,
}

/// `U*U = I` exactly for exact scalars, within `1e-9` per coordinate otherwise.
pub fn is_unitary<T: Scalar>(u: &QMatrix<T>) -> bool {
    let Ok(n) = u.require_square() else { return false };
    let Ok(p) = u.adjoint().try_mul(u) else { return false };
    let id = QMatrix::<T>::identity(n);
    p.entries()
        .iter()
        .zip(id.entries())
        .all(|(x, y)| (x - y).coeffs().iter().all(|c| c.near_zero(1e-9)))
}

/// Schur form with the eigenvalues placed on the diagonal in the requested
/// order. `order[k]` indexes into the sorted [`EigenvalueList`] of `a`;
/// `None` keeps the sorted order.
pub fn schur(a: &QMatrix<f64>, order: Option<&[usize]>) -> Result<Schur> {
    let n = a.require_square()?;
    if n > MAX_EIGEN_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_EIGEN_DIM });
    }
    let eig = eigenvalues(a)?;
    let perm: Vec<usize> = match order {
        Some(o) => {
            let mut seen = alloc::vec![false; n];
            if o.len() != n || o.iter().any(|&i| i >= n || core::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidInput("order must be a permutation of the eigenvalue indices".into()));
            }
            o.to_vec()
        }
        None => (0..n).collect(),
    };
    let mut u = QMatrix::<f64>::identity(n);
    let mut t = a.clone();
    let mut diagonal = Vec::with_capacity(n);
    for k in 0..n {
        let m = n - k;
        let sub = block(&t, k);
        let target = eig.values()[perm[k]];
        let local = eigenvalues(&sub)?;
        let lambda = *local
            .values()
            .iter()
            .min_by(|x, y| (**x - target).norm().total_cmp(&(**y - target).norm()))
            .ok_or(Error::NoConvergence)?;
        let v = right_eigenvector(&sub, lambda)?;
        let q = unitary_with_first_column(&v)?;
        let mut step = QMatrix::<f64>::identity(n);
        for r in 0..m {
            for c in 0..m {
                step.set(k + r, k + c, q.get(c, r).conj());
            }
        }
        u = &step * &u;
        t = &(&u * a) * &u.adjoint();
        diagonal.push(lambda);
    }
    for r in 0..n {
        for c in 0..r {
            t.set(r, c, Q::zero());
        }
        let d = t.get(r, r);
        t.set(r, r, Q::new(d.a, d.pure_norm_sq().sqrt(), 0.0, 0.0));
    }
    Ok(Schur { u, t, diagonal })
}

fn block(t: &QMatrix<f64>, k: usize) -> QMatrix<f64> {
    let n = t.rows();
    let m = n - k;
    let mut out = QMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            out.set(r, c, t.get(k + r, k + c).clone());
        }
    }
    out
}

/// Unit vector `v` with `Av = vλ`, recovered from a complex eigenvector of
/// `χₙ(A)` by inverse iteration and checked directly before it is returned.
pub fn right_eigenvector(a: &QMatrix<f64>, lambda: C64) -> Result<Vec<Q>> {
    a.require_square()?;
    let scale = 1.0 + a.max_abs();
    let tol = 1e-6 * scale;
    let v = chi_eigenvector(a, lambda)?;
    if eigen_residual(a, &v, lambda) <= tol {
        return Ok(v);
    }
    // v' with Av' = v'λ̄ gives A(v'𝗃) = (v'𝗃)λ.
    let w = chi_eigenvector(a, lambda.conj())?;
    let wj: Vec<Q> = w.iter().map(|q| q * &Q::j()).collect();
    if eigen_residual(a, &wj, lambda) <= tol {
        return Ok(wj);
    }
    Err(Error::NoConvergence)
}

fn eigen_residual(a: &QMatrix<f64>, v: &[Q], lambda: C64) -> f64 {
    let n = v.len();
    let l = Q::new(lambda.re, lambda.im, 0.0, 0.0);
    let mut worst: f64 = 0.0;
    for r in 0..n {
        let mut acc = Q::zero();
        for c in 0..n {
            acc += &(a.get(r, c) * &v[c]);
        }
        acc -= &(&v[r] * &l);
        worst = worst.max(acc.norm());
    }
    worst
}

fn chi_eigenvector(a: &QMatrix<f64>, lambda: C64) -> Result<Vec<Q>> {
    let n = a.rows();
    let chi = a.chi();
    let dim = 2 * n;
    let scale = 1.0 + chi.max_abs();
    let shift = lambda + C64::new(1e-11 * scale, 1e-11 * scale);
    let mut m: Vec<Vec<C64>> = (0..dim).map(|r| (0..dim).map(|c| *chi.get(r, c)).collect()).collect();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= shift;
    }
    let lu = ComplexLu::new(m, 1e-15 * scale);
    let mut x: Vec<C64> = (0..dim).map(|k| C64::new(1.0, 0.1 * (k as f64 + 1.0))).collect();
    for _ in 0..4 {
        x = lu.solve(&x);
        let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NoConvergence);
        }
        for z in x.iter_mut() {
            *z /= norm;
        }
    }
    Ok((0..n).map(|i| Quaternion::from_complex_parts(&x[i], &x[i + n])).collect())
}

struct ComplexLu {
    m: Vec<Vec<C64>>,
    perm: Vec<usize>,
}

impl ComplexLu {
    fn new(mut m: Vec<Vec<C64>>, floor: f64) -> Self {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm())).unwrap_or(k);
            m.swap(k, p);
            perm.swap(k, p);
            if m[k][k].norm() < floor {
                m[k][k] = C64::new(floor, 0.0);
            }
            let pivot = m[k][k];
            for r in k + 1..n {
                let f = m[r][k] / pivot;
                m[r][k] = f;
                for c in k + 1..n {
                    let sub = f * m[k][c];
                    m[r][c] -= sub;
                }
            }
        }
        ComplexLu { m, perm }
    }

    fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.m.len();
        let mut y: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                let sub = self.m[r][c] * y[c];
                y[r] -= sub;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let sub = self.m[r][c] * y[c];
                y[r] -= sub;
            }
            y[r] /= self.m[r][r];
        }
        y
    }
}

/// A unitary matrix whose first column is the unit vector `v`, completed by
/// Gram–Schmidt against the standard basis.
pub fn unitary_with_first_column(v: &[Q]) -> Result<QMatrix<f64>> {
    let n = v.len();
    let norm: f64 = v.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::ZeroDivisor);
    }
    let mut cols: Vec<Vec<Q>> = alloc::vec![v.iter().map(|q| q.scale(&(1.0 / norm))).collect()];
    for e in 0..n {
        if cols.len() == n {
            break;
        }
        let mut x: Vec<Q> = (0..n).map(|i| if i == e { Q::one() } else { Q::zero() }).collect();
        for _ in 0..2 {
            for u in &cols {
                // x ← x − u·(u*x)
                let mut dot = Q::zero();
                for i in 0..n {
                    dot += &(&u[i].conj() * &x[i]);
                }
                for i in 0..n {
                    x[i] -= &(&u[i] * &dot);
                }
            }
        }
        let xn: f64 = x.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt();
        if xn > 1e-6 {
            cols.push(x.iter().map(|q| q.scale(&(1.0 / xn))).collect());
        }
    }
    if cols.len() != n {
        return Err(Error::NoConvergence);
    }
    let mut out = QMatrix::zeros(n, n);
    for (c, col) in cols.iter().enumerate() {
        for (r, q) in col.iter().enumerate() {
            out.set(r, c, q.clone());
        }
    }
    Ok(out)
}

impl Schur {
    /// `‖U A U* − T‖` in the Frobenius norm.
    pub fn residual(&self, a: &QMatrix<f64>) -> f64 {
        (&(&self.u * a) * &self.u.adjoint()).dist(&self.t)
    }

    pub fn eigenvalues(&self) -> EigenvalueList {
        EigenvalueList::from_values(self.diagonal.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_unit_diagonals_are_unitary() {
        assert!(is_unitary(&QMatrix::<f64>::identity(3)));
        let u = Q::new(1.0, 2.0, -1.0, 0.5).normalized().unwrap();
        let v = Q::new(0.0, 1.0, 1.0, 1.0).normalized().unwrap();
        assert!(is_unitary(&QMatrix::diag(&[u, v])));
        assert!(!is_unitary(&QMatrix::diag(&[Q::from_real(2.0), Q::one()])));
    }

    #[test]
    fn triangular_input_is_kept() {
        let a = QMatrix::m2(Q::new(0.0, 1.0, 0.0, 0.0), Q::new(1.0, 0.0, 2.0, 0.0), Q::zero(), Q::new(3.0, 0.5, 0.0, 0.0));
        let s = schur(&a, Some(&[0, 1])).unwrap();
        assert!(s.residual(&a) < 1e-9);
        assert!((s.t.get(0, 0) - a.get(0, 0)).norm() < 1e-9);
        assert!((s.t.get(1, 1) - a.get(1, 1)).norm() < 1e-9);
        assert!((s.t.get(0, 1).norm() - a.get(0, 1).norm()).abs() < 1e-9);
    }

    #[test]
    fn round_trip_from_triangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 2..=4 {
            for _ in 0..30 {
                let t0 = random::random_upper_complex_diag(&mut rng, n);
                let u0 = random::random_unitary(&mut rng, n);
                let a = &(&u0 * &t0) * &u0.adjoint();
                let s = schur(&a, None).unwrap();
                assert!(is_unitary(&s.u));
                assert!(s.residual(&a) < 1e-8, "n={n} residual {}", s.residual(&a));
                let expect = EigenvalueList::from_values((0..n).map(|i| C64::new(t0.get(i, i).a, t0.get(i, i).b)).collect());
                assert!(s.eigenvalues().distance(&expect) < 1e-8);
            }
        }
    }

    #[test]
    fn any_order_is_achievable() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..100 {
            for n in 2..=3 {
                let a = random::random_generic(&mut rng, n);
                let eig = eigenvalues(&a).unwrap();
                let order: Vec<usize> = (0..n).rev().collect();
                let s = schur(&a, Some(&order)).unwrap();
                assert!(s.residual(&a) < 1e-8);
                for (k, &i) in order.iter().enumerate() {
                    let d = s.t.get(k, k);
                    assert!((C64::new(d.a, d.b) - eig.values()[i]).norm() < 1e-8);
                    assert!(d.b >= 0.0 && d.c == 0.0 && d.d == 0.0);
                }
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_the_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let a = random::random_generic(&mut rng, 3);
            for &l in eigenvalues(&a).unwrap().values() {
                let v = right_eigenvector(&a, l).unwrap();
                assert!(eigen_residual(&a, &v, l) < 1e-8);
            }
        }
    }

    #[test]
    fn rejects_bad_order() {
        let a = QMatrix::<f64>::identity(2);
        assert!(matches!(schur(&a, Some(&[0, 0])), Err(Error::InvalidInput(_))));
    }
}
