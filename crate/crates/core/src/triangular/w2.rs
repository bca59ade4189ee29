//! Membership in `W₂` through common eigen-directions.
//!
//! The analysis is driven by the spectrum of one matrix, `A`:
//!
//! - distinct eigenvalues: `A` has exactly two eigen-lines, found by the
//!   Schur form in either order;
//! - a real scalar `A` imposes nothing;
//! - a repeated non-real `λ` with `A` diagonalizable: after `A ↦ diag(λ, λ)`
//!   the eigen-directions are `(1, c)·ℍ` with `c ∈ ℂ` and `(0, 1)·ℍ`, since
//!   `Av = vq` forces `v₂v₁⁻¹` to commute with `λ`;
//! - otherwise the first Schur column spans the only eigen-line.
//!
//! When `A` is degenerate and `B` has distinct eigenvalues the roles are
//! swapped. Every positive verdict carries a conjugator that is checked by
//! explicit conjugation.

use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::validates_witness;
use crate::error::{Error, Result};
use crate::qmat::{eigenvalues, permutations, schur, QMatrix};
use crate::quat::Quaternion;
use crate::scalar::Scalar;

type Q = Quaternion<f64>;
type C64 = Complex<f64>;

/// Absolute tolerance for a vanishing `(2,1)` entry on unit-normalized
/// matrices.
pub const ENTRY_TOL: f64 = 1e-8;
/// Relative tolerance for validating a witness.
const WITNESS_TOL: f64 = 1e-7;
/// Eigenvalues closer than this (unit-normalized) count as repeated.
const REPEAT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum W2Case {
    /// Both matrices already upper triangular.
    Triangular,
    DistinctEigenvalues,
    RealScalar,
    RepeatedDiagonalizable,
    NonDiagonalizable,
}

impl W2Case {
    pub fn name(&self) -> &'static str {
        match self {
            W2Case::Triangular => "triangular",
            W2Case::DistinctEigenvalues => "distinct-eigenvalues",
            W2Case::RealScalar => "real-scalar",
            W2Case::RepeatedDiagonalizable => "repeated-diagonalizable",
            W2Case::NonDiagonalizable => "non-diagonalizable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct W2Verdict {
    pub member: bool,
    pub case: W2Case,
    /// The analysis was driven by `B` instead of `A`.
    pub swapped: bool,
    /// `P` with `PAP⁻¹` and `PBP⁻¹` upper triangular.
    pub witness: Option<QMatrix<f64>>,
}

fn upper(m: &QMatrix<f64>) -> bool {
    m.lower_residual() <= ENTRY_TOL * (1.0 + m.max_abs())
}

fn normalized(m: &QMatrix<f64>) -> QMatrix<f64> {
    let s = m.max_abs();
    if s > 0.0 {
        m.scale(&(1.0 / s))
    } else {
        m.clone()
    }
}

fn classify(m: &QMatrix<f64>) -> Result<W2Case> {
    let eig = eigenvalues(m)?;
    let v = eig.values();
    if (v[0] - v[1]).norm() > REPEAT_TOL {
        return Ok(W2Case::DistinctEigenvalues);
    }
    let t = schur(m, None)?.t;
    let lambda = (v[0] + v[1]) * 0.5;
    let (t1, _) = t.get(0, 1).complex_parts();
    if lambda.im.abs() <= REPEAT_TOL {
        if t.get(0, 1).norm() <= REPEAT_TOL {
            return Ok(W2Case::RealScalar);
        }
        return Ok(W2Case::NonDiagonalizable);
    }
    Ok(if t1.norm() <= REPEAT_TOL { W2Case::RepeatedDiagonalizable } else { W2Case::NonDiagonalizable })
}

/// Decides whether `(A, B)` is simultaneously triangularizable.
pub fn w2_membership(a: &QMatrix<f64>, b: &QMatrix<f64>) -> Result<W2Verdict> {
    a.require_size(2)?;
    b.require_size(2).map_err(|_| Error::ShapeMismatch)?;
    if !a.entries().iter().chain(b.entries()).all(Quaternion::is_finite) {
        return Err(Error::NonFinite);
    }
    let (an, bn) = (normalized(a), normalized(b));
    if upper(&an) && upper(&bn) {
        return Ok(W2Verdict { member: true, case: W2Case::Triangular, swapped: false, witness: Some(QMatrix::identity(2)) });
    }
    let ca = classify(&an)?;
    let (case, swapped) = if ca != W2Case::DistinctEigenvalues && classify(&bn)? == W2Case::DistinctEigenvalues {
        (W2Case::DistinctEigenvalues, true)
    } else {
        (ca, false)
    };
    let (m, o) = if swapped { (&bn, &an) } else { (&an, &bn) };
    let candidates = match case {
        W2Case::DistinctEigenvalues => {
            let mut c = Vec::new();
            for order in [[0usize, 1], [1, 0]] {
                c.push(schur(m, Some(&order))?.u);
            }
            c
        }
        W2Case::NonDiagonalizable => alloc::vec![schur(m, None)?.u],
        W2Case::RealScalar => alloc::vec![schur(o, None)?.u],
        W2Case::RepeatedDiagonalizable => repeated_candidates(m, o)?,
        W2Case::Triangular => unreachable!("handled above"),
    };
    for p in candidates {
        let t = &(&p * o) * &p.inverse()?;
        if (case == W2Case::RealScalar || upper(&t)) && validates_witness(&p, &[a, b], WITNESS_TOL) {
            return Ok(W2Verdict { member: true, case, swapped, witness: Some(p) });
        }
    }
    Ok(W2Verdict { member: false, case, swapped, witness: None })
}

/// Conjugators for a diagonalizable `m` with a repeated non-real
/// eigenvalue, one per common eigen-direction candidate.
fn repeated_candidates(m: &QMatrix<f64>, o: &QMatrix<f64>) -> Result<Vec<QMatrix<f64>>> {
    let s = schur(m, None)?;
    let lambda = (s.diagonal[0] + s.diagonal[1]) * 0.5;
    let (_, t2) = s.t.get(0, 1).complex_parts();
    // R = [[1, 𝗃r₂], [0, 1]] with (λ̄ − λ) r₂ = t₂ clears the off-diagonal.
    let r2 = t2 / (lambda.conj() - lambda);
    let r = Q::from_complex_parts(&C64::zero(), &r2);
    let rm = QMatrix::m2(Q::one(), r, Q::zero(), Q::one());
    let w = &rm * &s.u;
    let bp = &(&w * o) * &w.inverse()?;
    let parts = |i, j| bp.get(i, j).complex_parts();
    let (p11, q11) = parts(0, 0);
    let (p12, q12) = parts(0, 1);
    let (p21, q21) = parts(1, 0);
    let (p22, q22) = parts(1, 1);

    let mut out = Vec::new();
    if bp.get(0, 1).norm() <= ENTRY_TOL {
        let swap = QMatrix::m2(Q::zero(), Q::one(), Q::one(), Q::zero());
        out.push(&swap * &w);
    }
    let tol = ENTRY_TOL;
    // Complex part: p₁₂c² + (p₁₁ − p₂₂)c − p₂₁ = 0.
    let cs: Vec<C64> = if p12.norm() > tol {
        let b = p11 - p22;
        let disc = (b * b + p12 * p21 * 4.0).sqrt();
        alloc::vec![(-b + disc) / (p12 * 2.0), (-b - disc) / (p12 * 2.0)]
    } else if (p11 - p22).norm() > tol {
        alloc::vec![p21 / (p11 - p22)]
    } else if p21.norm() > tol {
        Vec::new()
    } else {
        j_part_solutions(q11, q12, q21, q22)
    };
    for c in cs {
        let g = q12 * c.norm_sqr() + q11 * c.conj() - q22 * c - q21;
        if g.norm() <= 1e-7 * (1.0 + c.norm_sqr()) {
            let local = QMatrix::m2(Q::one(), Q::zero(), Q::from_complex(&-c), Q::one());
            out.push(&local * &w);
        }
    }
    Ok(out)
}

/// Solutions `c` of `q₁₂|c|² + q₁₁c̄ − q₂₂c − q₂₁ = 0`, a circle meeting a
/// line in the `(Re c, Im c)` plane.
fn j_part_solutions(q11: C64, q12: C64, q21: C64, q22: C64) -> Vec<C64> {
    let tol = ENTRY_TOL;
    if q12.norm() <= tol {
        // Linear: rows of the real 2×2 system in (x, y).
        let r1 = [q11.re - q22.re, q11.im + q22.im, q21.re];
        let r2 = [q11.im - q22.im, -q11.re - q22.re, q21.im];
        let det = r1[0] * r2[1] - r1[1] * r2[0];
        if det.abs() > tol {
            let x = (r1[2] * r2[1] - r1[1] * r2[2]) / det;
            let y = (r1[0] * r2[2] - r1[2] * r2[0]) / det;
            return alloc::vec![C64::new(x, y)];
        }
        let row = if r1[0].hypot(r1[1]) >= r2[0].hypot(r2[1]) { r1 } else { r2 };
        let nn = row[0] * row[0] + row[1] * row[1];
        if nn <= tol * tol {
            return alloc::vec![C64::zero()];
        }
        return alloc::vec![C64::new(row[0] * row[2] / nn, row[1] * row[2] / nn)];
    }
    let alpha = q11 / q12;
    let beta = -q22 / q12;
    let gamma = -q21 / q12;
    // Real part: x² + y² + l₁x + l₂y + γ_r = 0. Imaginary part: ax + by + e = 0.
    let (l1, l2) = (alpha.re + beta.re, alpha.im - beta.im);
    let (a, b, e) = (alpha.im + beta.im, beta.re - alpha.re, gamma.im);
    let nn = a * a + b * b;
    if nn <= tol * tol {
        if e.abs() > tol {
            return Vec::new();
        }
        let r2 = (l1 * l1 + l2 * l2) / 4.0 - gamma.re;
        if r2 < -tol {
            return Vec::new();
        }
        return alloc::vec![C64::new(-l1 / 2.0 + r2.max(0.0).sqrt(), -l2 / 2.0)];
    }
    let (x0, y0) = (-e * a / nn, -e * b / nn);
    let norm = nn.sqrt();
    let (dx, dy) = (-b / norm, a / norm);
    let lin = 2.0 * (x0 * dx + y0 * dy) + l1 * dx + l2 * dy;
    let cst = x0 * x0 + y0 * y0 + l1 * x0 + l2 * y0 + gamma.re;
    let disc = lin * lin - 4.0 * cst;
    if disc < -tol {
        return Vec::new();
    }
    let sq = disc.max(0.0).sqrt();
    [(-lin + sq) / 2.0, (-lin - sq) / 2.0].iter().map(|t| C64::new(x0 + t * dx, y0 + t * dy)).collect()
}

/// Generic fibre test: for diagonal `A` with pairwise non-similar diagonal
/// entries, `(A, B) ∈ W_n` iff `B ∈ P𝒰ₙP⁻¹` for a permutation `P`, read off
/// from the zero pattern of `B`.
pub fn fiber_check<T: Scalar>(a: &QMatrix<T>, b: &QMatrix<T>, tol: f64) -> Result<bool> {
    let n = a.require_square()?;
    b.require_size(n).map_err(|_| Error::ShapeMismatch)?;
    let zero = |q: &Quaternion<T>| q.coeffs().iter().all(|x| x.near_zero(tol));
    for r in 0..n {
        for c in 0..n {
            if r != c && !zero(a.get(r, c)) {
                return Err(Error::NotGeneric);
            }
        }
    }
    // Similarity class of a quaternion: real part and |pure part|².
    let class = |q: &Quaternion<T>| (q.a.clone(), q.pure_norm_sq());
    for i in 0..n {
        for j in i + 1..n {
            let (ri, ni) = class(a.get(i, i));
            let (rj, nj) = class(a.get(j, j));
            if (ri - rj).near_zero(tol) && (ni - nj).near_zero(tol) {
                return Err(Error::NotGeneric);
            }
        }
    }
    let mut found = false;
    let mut idx: Vec<usize> = (0..n).collect();
    permutations(&mut idx, 0, &mut |sigma| {
        if found {
            return;
        }
        let ok = (0..n).all(|i| (0..i).all(|j| zero(b.get(sigma[i], sigma[j]))));
        found |= ok;
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::random;
    use crate::triangular::{outside_pair, sample_wn};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn conj(g: &QMatrix<f64>, m: &QMatrix<f64>) -> QMatrix<f64> {
        &(g * m) * &g.inverse().unwrap()
    }

    #[test]
    fn triangular_pair_needs_no_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let v = w2_membership(&random::random_upper(&mut rng, 2), &random::random_upper(&mut rng, 2)).unwrap();
        assert!(v.member);
        assert_eq!(v.case, W2Case::Triangular);
        assert_eq!(v.witness.unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn outside_pair_is_rejected() {
        let (a, b) = outside_pair();
        let v = w2_membership(&a.to_f64(), &b.to_f64()).unwrap();
        assert!(!v.member);
        assert_eq!(v.case, W2Case::DistinctEigenvalues);
        assert_eq!(fiber_check(&a, &b, 0.0), Ok(false));
    }

    #[test]
    fn constructed_members_are_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..100 {
            let (a, b) = sample_wn(&mut rng, 2, 5);
            let (a, b) = (a.to_f64(), b.to_f64());
            let v = w2_membership(&a, &b).unwrap();
            assert!(v.member, "{a:?} {b:?}");
            assert!(validates_witness(v.witness.as_ref().unwrap(), &[&a, &b], 1e-7));
        }
    }

    #[test]
    fn verdict_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        for k in 0..60 {
            let (a, b) = if k % 2 == 0 {
                let (a, b) = sample_wn(&mut rng, 2, 5);
                (a.to_f64(), b.to_f64())
            } else {
                (random::random_matrix(&mut rng, 2), random::random_matrix(&mut rng, 2))
            };
            let g = random::random_invertible(&mut rng, 2);
            let v1 = w2_membership(&a, &b).unwrap();
            let v2 = w2_membership(&conj(&g, &a), &conj(&g, &b)).unwrap();
            assert_eq!(v1.member, v2.member);
            assert_eq!(v1.member, k % 2 == 0);
        }
    }

    #[test]
    fn repeated_and_degenerate_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        let i = Q::i();
        let g = random::random_invertible(&mut rng, 2);
        // diag(𝗂, 𝗂) with a partner sharing the direction (1, c) for c = 2 − 𝗂.
        let a = QMatrix::diag(&[i.clone(), i.clone()]);
        let c = Q::new(2.0, -1.0, 0.0, 0.0);
        let pinv = QMatrix::m2(Q::one(), Q::zero(), c.clone(), Q::one());
        // Similar diagonal entries keep B off the distinct-eigenvalue path.
        let t = QMatrix::m2(Q::new(0.3, 0.8, 0.0, 0.0), Q::new(1.0, 0.0, 0.5, 0.0), Q::zero(), Q::new(0.3, 0.0, 0.48, 0.64));
        let b = &(&pinv * &t) * &pinv.inverse().unwrap();
        let v = w2_membership(&conj(&g, &a), &conj(&g, &b)).unwrap();
        assert!(v.member);
        assert_eq!(v.case, W2Case::RepeatedDiagonalizable);

        // The same A with a generic partner; the roles swap and B decides.
        let generic = random::random_matrix(&mut rng, 2);
        let v = w2_membership(&conj(&g, &a), &generic).unwrap();
        assert!(v.swapped);

        // A real scalar imposes nothing.
        let v = w2_membership(&QMatrix::scalar(2, 2.0), &random::random_matrix(&mut rng, 2)).unwrap();
        assert!(v.member);

        // Jordan-type A: only the first Schur column is an eigen-line.
        let jordan = QMatrix::m2(i.clone(), Q::one(), Q::zero(), i.clone());
        let upper_b = QMatrix::m2(Q::new(0.0, 0.6, 0.8, 0.0), Q::new(0.0, 1.0, 1.0, 1.0), Q::zero(), Q::j());
        let v = w2_membership(&conj(&g, &jordan), &conj(&g, &upper_b)).unwrap();
        assert_eq!(v.case, W2Case::NonDiagonalizable);
        assert!(v.member);
        let lower_b = upper_b.transpose();
        let v = w2_membership(&conj(&g, &jordan), &conj(&g, &lower_b)).unwrap();
        assert!(!v.member);
    }

    #[test]
    fn fiber_check_examples() {
        let a = QMatrix::diag(&[Q::from_real(1.0), Q::from_real(2.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(104);
        let u = random::random_upper(&mut rng, 2);
        assert_eq!(fiber_check(&a, &u, 0.0), Ok(true));
        assert_eq!(fiber_check(&a, &u.adjoint(), 0.0), Ok(true));
        let swap = QMatrix::m2(Q::zero(), Q::one(), Q::one(), Q::zero());
        assert_eq!(fiber_check(&a, &swap, 0.0), Ok(false));
        assert_eq!(w2_membership(&a, &swap).unwrap().member, false);
        let same = QMatrix::diag(&[Q::i(), Q::j()]);
        assert_eq!(fiber_check(&same, &swap, 0.0), Err(Error::NotGeneric));
    }

    #[test]
    fn fiber_check_agrees_with_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(105);
        for k in 0..100 {
            let a = QMatrix::diag(&[random::quat(&mut rng), random::quat(&mut rng)]);
            let mut b = random::random_matrix(&mut rng, 2);
            match k % 3 {
                0 => b.set(1, 0, Q::zero()),
                1 => b.set(0, 1, Q::zero()),
                _ => {}
            }
            assert_eq!(fiber_check(&a, &b, 0.0).unwrap(), w2_membership(&a, &b).unwrap().member);
        }
    }
}
