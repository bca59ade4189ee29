//! Eigenvalues of quaternionic matrices in the upper half plane.
//!
//! The eigenvalues of `χₙ(A)` are `λ₁, …, λₙ, λ̄₁, …, λ̄ₙ`. For `n ≤ 2` the
//! characteristic polynomial of `χₙ(A)` (which has real coefficients) is
//! solved in closed form; larger matrices go through a shifted complex QR
//! iteration on the Hessenberg form of `χₙ(A)`.

use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{upper_half, QMatrix};
use crate::cmat::CMatrix;
use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Default bound on the matrix size accepted by the float eigen routines.
pub const MAX_EIGEN_DIM: usize = 6;

/// Half-plane eigenvalue representatives, sorted by `(Re, Im)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueList {
    values: Vec<C64>,
}

impl EigenvalueList {
    pub fn from_values(mut values: Vec<C64>) -> Self {
        // Rounding noise far below the spectrum's scale would otherwise
        // decide the lexicographic order.
        let floor = 1e-13 * (1.0 + values.iter().map(|v| v.norm()).fold(0.0, f64::max));
        for v in values.iter_mut() {
            *v = upper_half(*v);
            if v.re.abs() < floor {
                v.re = 0.0;
            }
            if v.im < floor {
                v.im = 0.0;
            }
        }
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        EigenvalueList { values }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest pairwise distance (infinite for a single eigenvalue).
    pub fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for i in 0..self.values.len() {
            for j in i + 1..self.values.len() {
                gap = gap.min((self.values[i] - self.values[j]).norm());
            }
        }
        gap
    }

    /// Bottleneck distance between two lists of equal length: the best
    /// matching's largest displacement.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = f64::INFINITY;
        permutations(&mut perm, 0, &mut |p| {
            let d = (0..n).map(|i| (self.values[i] - other.values[p[i]]).norm()).fold(0.0, f64::max);
            if d < best {
                best = d;
            }
        });
        best
    }
}

pub(crate) fn permutations(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Quaternionic eigenvalues of a square float matrix.
pub fn eigenvalues(a: &QMatrix<f64>) -> Result<EigenvalueList> {
    let n = a.require_square()?;
    if n > MAX_EIGEN_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_EIGEN_DIM });
    }
    if !a.entries().iter().all(|q| q.is_finite()) {
        return Err(Error::NonFinite);
    }
    let roots = match n {
        1 => {
            let q = a.get(0, 0);
            let im = q.pure_norm_sq().sqrt();
            return Ok(EigenvalueList::from_values(alloc::vec![Complex::new(q.a, im)]));
        }
        2 => {
            let p: Vec<f64> = (1..=4u32).map(|k| a.pow(k).map(|m| m.trace()).unwrap_or(f64::NAN)).collect();
            let coeffs = elementary_from_power_sums(&p);
            let roots = quartic_roots(&coeffs);
            let reps = pair_conjugates(roots.clone());
            let scale = 1.0 + a.max_abs();
            if cluster_gap(&roots) < 1e-5 * scale {
                return Ok(EigenvalueList::from_values(reps.into_iter().map(|l| rayleigh_refine(a, l, scale)).collect()));
            }
            return Ok(EigenvalueList::from_values(reps));
        }
        _ => complex_eigenvalues(&a.chi())?,
    };
    Ok(EigenvalueList::from_values(pair_conjugates(roots)))
}

fn cluster_gap(roots: &[C64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            gap = gap.min((roots[i] - roots[j]).norm());
        }
    }
    gap
}

/// Roots of the characteristic polynomial lose half their digits at a
/// multiple root, e.g. a real eigenvalue of `A`. The Rayleigh quotient
/// `v*Av / v*v` of an eigenvector recovers them when the eigenvalue is
/// semisimple.
fn rayleigh_refine(a: &QMatrix<f64>, lambda: C64, scale: f64) -> C64 {
    let Ok(v) = super::right_eigenvector(a, lambda) else { return lambda };
    let n = v.len();
    let mut num = crate::quat::Quaternion::<f64>::zero();
    let mut den = 0.0;
    for r in 0..n {
        let mut av = crate::quat::Quaternion::<f64>::zero();
        for c in 0..n {
            av += &(a.get(r, c) * &v[c]);
        }
        num += &(&v[r].conj() * &av);
        den += v[r].norm_sq();
    }
    let q = num.scale(&(1.0 / den));
    let refined = C64::new(q.a, q.pure_norm_sq().sqrt());
    if (refined - lambda).norm() < 1e-6 * scale {
        refined
    } else {
        lambda
    }
}

/// Elementary symmetric functions `e₁..e₄` from power sums `p₁..p₄`.
fn elementary_from_power_sums(p: &[f64]) -> [f64; 4] {
    let e1 = p[0];
    let e2 = (e1 * p[0] - p[1]) / 2.0;
    let e3 = (e2 * p[0] - e1 * p[1] + p[2]) / 3.0;
    let e4 = (e3 * p[0] - e2 * p[1] + e1 * p[2] - p[3]) / 4.0;
    [e1, e2, e3, e4]
}

/// Roots of `z⁴ − e₁z³ + e₂z² − e₃z + e₄` (Ferrari), polished by Newton steps.
pub(crate) fn quartic_roots(e: &[f64; 4]) -> Vec<C64> {
    // Monic quartic z⁴ + b z³ + c z² + d z + f.
    let (b, c, d, f) = (-e[0], e[1], -e[2], e[3]);
    let shift = -b / 4.0;
    // Depressed: y⁴ + p y² + q y + r with z = y + shift.
    let p = c - 3.0 * b * b / 8.0;
    let q = d - b * c / 2.0 + b * b * b / 8.0;
    let r = f - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b.powi(4) / 256.0;
    let scale = 1.0 + p.abs() + q.abs().sqrt() + r.abs().sqrt();
    let mut ys: Vec<C64> = Vec::with_capacity(4);
    if q.abs() <= 1e-14 * scale * scale * scale {
        let disc = C64::new(p * p - 4.0 * r, 0.0).sqrt();
        for w in [(-p + disc) / 2.0, (-p - disc) / 2.0] {
            let s = Complex::new(w.re, w.im).sqrt();
            ys.push(s);
            ys.push(-s);
        }
    } else {
        // Resolvent: 8m³ + 8p m² + (2p² − 8r) m − q² = 0 has a positive root.
        let m = largest_real_cubic_root(p, (p * p - 4.0 * r) / 4.0, -q * q / 8.0);
        let s = (2.0 * m).sqrt();
        for sign in [1.0, -1.0] {
            // y² − sign·s·y + (p/2 + m + sign·q/(2s)) = 0
            let bb = -sign * s;
            let cc = p / 2.0 + m + sign * q / (2.0 * s);
            let disc = C64::new(bb * bb - 4.0 * cc, 0.0).sqrt();
            ys.push((-bb + disc) / 2.0);
            ys.push((-bb - disc) / 2.0);
        }
    }
    let poly = |z: C64| (((z + b) * z + c) * z + d) * z + f;
    let dpoly = |z: C64| ((z * 4.0 + 3.0 * b) * z + 2.0 * c) * z + d;
    ys.into_iter()
        .map(|y| {
            let mut z = y + shift;
            for _ in 0..4 {
                let dz = dpoly(z);
                if dz.norm() == 0.0 {
                    break;
                }
                let cand = z - poly(z) / dz;
                if cand.is_finite() && poly(cand).norm() < poly(z).norm() {
                    z = cand;
                } else {
                    break;
                }
            }
            z
        })
        .collect()
}

/// Largest real root of `m³ + a m² + b m + c`.
fn largest_real_cubic_root(a: f64, b: f64, c: f64) -> f64 {
    let q = (a * a - 3.0 * b) / 9.0;
    let r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    let mut root = if r * r < q * q * q {
        let theta = (r / (q * q * q).sqrt()).clamp(-1.0, 1.0).acos();
        let sq = q.sqrt();
        let candidates = [
            -2.0 * sq * (theta / 3.0).cos() - a / 3.0,
            -2.0 * sq * ((theta + 2.0 * core::f64::consts::PI) / 3.0).cos() - a / 3.0,
            -2.0 * sq * ((theta - 2.0 * core::f64::consts::PI) / 3.0).cos() - a / 3.0,
        ];
        candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    } else {
        let big_a = -r.signum() * (r.abs() + (r * r - q * q * q).sqrt()).cbrt();
        let big_b = if big_a == 0.0 { 0.0 } else { q / big_a };
        big_a + big_b - a / 3.0
    };
    for _ in 0..3 {
        let v = ((root + a) * root + b) * root + c;
        let dv = (3.0 * root + 2.0 * a) * root + b;
        if dv == 0.0 {
            break;
        }
        let next = root - v / dv;
        if next.is_finite() && (((next + a) * next + b) * next + c).abs() < v.abs() {
            root = next;
        } else {
            break;
        }
    }
    root
}

/// Groups a conjugation-closed multiset of `2n` roots into `n` conjugate
/// pairs and returns one upper-half-plane representative per pair.
pub(crate) fn pair_conjugates(mut roots: Vec<C64>) -> Vec<C64> {
    let mut reps = Vec::with_capacity(roots.len() / 2);
    while roots.len() >= 2 {
        let top = (0..roots.len())
            .max_by(|&i, &j| roots[i].im.total_cmp(&roots[j].im))
            .unwrap_or(0);
        let z = roots.swap_remove(top);
        let partner = (0..roots.len())
            .min_by(|&i, &j| (roots[i] - z.conj()).norm().total_cmp(&(roots[j] - z.conj()).norm()))
            .unwrap_or(0);
        let w = roots.swap_remove(partner);
        reps.push(upper_half((z + w.conj()) / 2.0));
    }
    reps
}

/// All eigenvalues of a complex square matrix via Hessenberg reduction and
/// Wilkinson-shifted QR.
pub fn complex_eigenvalues(m: &CMatrix<f64>) -> Result<Vec<C64>> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let mut h: Vec<Vec<C64>> = (0..n).map(|r| (0..n).map(|c| *m.get(r, c)).collect()).collect();
    hessenberg(&mut h);
    let mut eig = alloc::vec![C64::zero(); n];
    if n == 0 {
        return Ok(eig);
    }
    let norm = h.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let s = h[l - 1][l - 1].norm() + h[l][l].norm();
            let s = if s == 0.0 { norm } else { s };
            if h[l][l - 1].norm() <= f64::EPSILON * s {
                h[l][l - 1] = C64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n {
            return Err(Error::NoConvergence);
        }
        let shift = if iter % 11 == 10 {
            h[hi][hi] + C64::new(h[hi][hi - 1].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        qr_step(&mut h, l, hi, shift);
    }
    Ok(eig)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) / 2.0;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) / 2.0 + disc;
    let mu2 = (a + d) / 2.0 - disc;
    if (mu1 - d).norm() < (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

fn qr_step(h: &mut [Vec<C64>], l: usize, hi: usize, shift: C64) {
    for k in l..=hi {
        h[k][k] -= shift;
    }
    let mut rots: Vec<(C64, C64)> = Vec::with_capacity(hi - l);
    for k in l..hi {
        let x = h[k][k];
        let y = h[k + 1][k];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 { (C64::new(1.0, 0.0), C64::zero()) } else { (x / r, y / r) };
        for col in k..=hi {
            let top = h[k][col];
            let bot = h[k + 1][col];
            h[k][col] = c.conj() * top + s.conj() * bot;
            h[k + 1][col] = -s * top + c * bot;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = l + idx;
        let last = (k + 2).min(hi);
        for row in l..=last {
            let left = h[row][k];
            let right = h[row][k + 1];
            h[row][k] = left * c + right * s;
            h[row][k + 1] = -left * s.conj() + right * c.conj();
        }
    }
    for k in l..=hi {
        h[k][k] += shift;
    }
}

/// In-place reduction to upper Hessenberg form by Householder reflections.
fn hessenberg(h: &mut [Vec<C64>]) {
    let n = h.len();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let alpha_norm: f64 = (k + 1..n).map(|r| h[r][k].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let mut v: Vec<C64> = (k + 1..n).map(|r| h[r][k]).collect();
        v[0] += phase * alpha_norm;
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← (I − 2vv*) H (I − 2vv*)
        for col in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[k + 1 + i][col]).sum();
            for (i, vi) in v.iter().enumerate() {
                h[k + 1 + i][col] -= *vi * dot * 2.0;
            }
        }
        for row in h.iter_mut() {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| row[k + 1 + i] * *vi).sum();
            for (i, vi) in v.iter().enumerate() {
                row[k + 1 + i] -= dot * vi.conj() * 2.0;
            }
        }
    }
}
