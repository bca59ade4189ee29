//! Trace conditions that hold on `W_n`, the 2×2 complex characterization of
//! simultaneous triangularizability, and the pure-imaginary spectrum test.

use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use crate::cmat::CMatrix;
use crate::error::{Error, Result};
use crate::qmat::{eigenvalues, QMatrix};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnCheck {
    /// `Tr([X,Y]^{2k−1}) = 0`.
    OddPowerZero,
    /// `Tr([X,Y]^{4k−2}) ≤ 0`.
    NonPositive,
    /// `Tr([X,Y]^{4k}) ≥ 0`.
    NonNegative,
    /// `Tr(XᵏYᵏXᵐYᵐ − YᵏXᵏYᵐXᵐ) = 0`.
    BlockSwap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WnReport<T> {
    pub checked: usize,
    /// `(check, k, m, value)`; `m = 0` for the commutator-power checks.
    pub violations: Vec<(WnCheck, usize, usize, T)>,
}

impl<T> WnReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the commutator-power signs for `1 ≤ k ≤ k_max` and the block
/// swap equalities for `1 ≤ k, m ≤ k_max, m_max`. Exact scalars are
/// compared exactly; floats with absolute tolerance `tol`.
pub fn wn_property_suite<T: Scalar>(x: &QMatrix<T>, y: &QMatrix<T>, k_max: usize, m_max: usize, tol: f64) -> Result<WnReport<T>> {
    x.require_square()?;
    let c = x.commutator(y)?;
    let mut report = WnReport { checked: 0, violations: Vec::new() };
    let mut push = |ok: bool, check, k, m, v: T| {
        report.checked += 1;
        if !ok {
            report.violations.push((check, k, m, v));
        }
    };
    let powers = |m: &QMatrix<T>, top: usize| -> Result<Vec<QMatrix<T>>> {
        let mut p = alloc::vec![QMatrix::identity(m.rows())];
        for e in 0..top {
            let next = p[e].try_mul(m)?;
            p.push(next);
        }
        Ok(p)
    };
    let cp = powers(&c, 2 * k_max)?;
    let power_trace = |e: usize| cp[e / 2].trace_of_product(&cp[e - e / 2]);
    for k in 1..=k_max {
        let odd = power_trace(2 * k - 1)?;
        push(odd.near_zero(tol), WnCheck::OddPowerZero, k, 0, odd);
        let neg = power_trace(4 * k - 2)?;
        push(neg.to_f64() <= tol && !(T::EXACT && neg.is_positive()), WnCheck::NonPositive, k, 0, neg);
        let pos = power_trace(4 * k)?;
        push(pos.to_f64() >= -tol && !(T::EXACT && pos.is_negative()), WnCheck::NonNegative, k, 0, pos);
    }
    let top = k_max.max(m_max);
    let (xp, yp) = (powers(x, top)?, powers(y, top)?);
    let xy: Vec<QMatrix<T>> = (0..=top).map(|e| xp[e].try_mul(&yp[e])).collect::<Result<_>>()?;
    let yx: Vec<QMatrix<T>> = (0..=top).map(|e| yp[e].try_mul(&xp[e])).collect::<Result<_>>()?;
    for k in 1..=k_max {
        for m in 1..=m_max {
            let d = xy[k].trace_of_product(&xy[m])? - yx[k].trace_of_product(&yx[m])?;
            push(d.near_zero(tol), WnCheck::BlockSwap, k, m, d);
        }
    }
    Ok(report)
}

type CQ = Complex<Rational>;

/// The five conditions on a pair of complex 2×2 matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FriedlandReport {
    /// A common eigenvector, found constructively.
    pub a: bool,
    /// `[A,B]² = 0`.
    pub b: bool,
    /// `tr([A,B]²) = 0`.
    pub c: bool,
    /// `tr(A²B² − (AB)²) = 0`.
    pub d: bool,
    /// `(2tr A² − (tr A)²)(2tr B² − (tr B)²) = (2tr AB − tr A tr B)²`.
    pub e: bool,
}

impl FriedlandReport {
    pub fn all_agree(&self) -> bool {
        [self.b, self.c, self.d, self.e].iter().all(|&v| v == self.a)
    }
}

fn require_2x2(m: &CMatrix<Rational>) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::WrongSize { expected: 2, found: m.rows() });
    }
    Ok(())
}

/// `det [v, Bv] = 0`: `v` is an eigenvector of `B`.
fn is_eigvec(b: &CMatrix<Rational>, v: &[CQ; 2]) -> bool {
    let bv0 = b.get(0, 0) * &v[0] + b.get(0, 1) * &v[1];
    let bv1 = b.get(1, 0) * &v[0] + b.get(1, 1) * &v[1];
    (&v[0] * bv1 - &v[1] * bv0).is_zero()
}

/// Searches the at most two eigen-directions of `A` for an eigenvector of
/// `B`, exactly over `ℚ(𝗂)`.
fn common_eigenvector(a: &CMatrix<Rational>, b: &CMatrix<Rational>) -> bool {
    let (a11, a12, a21, a22) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    if a12.is_zero() && a21.is_zero() && a11 == a22 {
        // Scalar A: every eigenvector of B is shared.
        return true;
    }
    if a12.is_zero() {
        // Lower triangular: rational eigenvalues a₁₁, a₂₂.
        let v1 = [a11 - a22, a21.clone()];
        let v2 = [CQ::zero(), CQ::one()];
        let v1_ok = !(v1[0].is_zero() && v1[1].is_zero()) && is_eigvec(b, &v1);
        return v1_ok || is_eigvec(b, &v2);
    }
    // v = (a₁₂, λ − a₁₁); with μ = λ − a₁₁ the condition det[v, Bv] = 0
    // reads g(μ) = −b₁₂μ² + (b₂₂ − b₁₁)a₁₂μ + b₂₁a₁₂² = 0, and μ is a
    // root of μ² − (a₂₂ − a₁₁)μ − a₁₂a₂₁.
    let (b11, b12, b21, b22) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    let s = a22 - a11;
    let p = a12 * a21;
    let g2 = -b12.clone();
    let g1 = (b22 - b11) * a12;
    let g0 = b21 * a12 * a12;
    // Reduce g modulo μ² = sμ + p.
    let r1 = &g1 + &g2 * &s;
    let r0 = &g0 + &g2 * &p;
    if r1.is_zero() {
        return r0.is_zero();
    }
    let mu = -(r0 / r1);
    (&mu * &mu - &s * &mu - p).is_zero()
}

/// Evaluates the five equivalent conditions exactly.
pub fn friedland_check(a: &CMatrix<Rational>, b: &CMatrix<Rational>) -> Result<FriedlandReport> {
    require_2x2(a)?;
    require_2x2(b)?;
    let c = a.commutator(b);
    let c2 = &c * &c;
    let ab = a * b;
    let a2 = a * a;
    let b2 = b * b;
    let two = CQ::new(Rational::from_i64(2), Rational::zero());
    let (ta, tb) = (a.trace(), b.trace());
    let lhs = (&two * a2.trace() - &ta * &ta) * (&two * b2.trace() - &tb * &tb);
    let r = &two * ab.trace() - &ta * &tb;
    Ok(FriedlandReport {
        a: common_eigenvector(a, b),
        b: c2.is_zero(),
        c: c2.trace().is_zero(),
        d: ((&a2 * &b2).trace() - (&ab * &ab).trace()).is_zero(),
        e: lhs == &r * &r,
    })
}

/// The three conditions characterizing a purely imaginary spectrum of a
/// 2×2 quaternionic matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PureImaginaryReport {
    /// `Tr A = Tr A³ = 0`.
    pub odd_traces_vanish: bool,
    /// `Tr A² ≤ 0`.
    pub square_nonpositive: bool,
    /// `2Tr A⁴ ≤ (Tr A²)² ≤ 4Tr A⁴`.
    pub quartic_bounds: bool,
}

impl PureImaginaryReport {
    pub fn holds(&self) -> bool {
        self.odd_traces_vanish && self.square_nonpositive && self.quartic_bounds
    }
}

/// Evaluates the conditions; exact for exact scalars, with slack `tol`
/// scaled by the matching power of `max|aᵢⱼ|` for floats.
pub fn pure_imaginary_eig_check<T: Scalar>(a: &QMatrix<T>, tol: f64) -> Result<PureImaginaryReport> {
    a.require_size(2)?;
    let s = a.entries().iter().flat_map(|q| q.coeffs()).map(|x| x.to_f64().abs()).fold(0.0, f64::max).max(1e-300);
    let tol_k = |k: i32| tol * s.powi(k);
    let a2 = a.try_mul(a)?;
    let t1 = a.trace();
    let t2 = a2.trace();
    let t3 = a2.try_mul(a)?.trace();
    let t4 = a2.try_mul(&a2)?.trace();
    let sq = t2.clone() * t2.clone();
    let le = |x: &T, y: &T, k: i32| {
        if T::EXACT {
            x <= y
        } else {
            x.to_f64() <= y.to_f64() + tol_k(k)
        }
    };
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    Ok(PureImaginaryReport {
        odd_traces_vanish: t1.near_zero(tol_k(1)) && t3.near_zero(tol_k(3)),
        square_nonpositive: le(&t2, &T::zero(), 2),
        quartic_bounds: le(&(two * t4.clone()), &sq, 4) && le(&sq, &(four * t4), 4),
    })
}

/// Float version that also reports whether the computed eigenvalues are
/// purely imaginary, `|Re λ| ≤ tol·max|aᵢⱼ|`.
pub fn pure_imaginary_eig_check_float(a: &QMatrix<f64>, tol: f64) -> Result<(PureImaginaryReport, bool)> {
    let report = pure_imaginary_eig_check(a, tol)?;
    let s = a.max_abs().max(1e-300);
    let pure = eigenvalues(a)?.values().iter().all(|l| l.re.abs() <= tol * s);
    Ok((report, pure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{qmat_i64, random};
    use crate::quat::Quaternion;
    use crate::triangular::sample_wn;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cm(v: [(i64, i64); 4]) -> CMatrix<Rational> {
        CMatrix::from_i64_pairs(2, 2, &v).unwrap()
    }

    fn random_gauss<R: Rng>(rng: &mut R) -> CMatrix<Rational> {
        let e = (0..4).map(|_| Complex::new(random::small_integer(rng, 3), random::small_integer(rng, 3))).collect();
        CMatrix::new(2, 2, e).unwrap()
    }

    #[test]
    fn suite_on_members_and_non_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(110);
        for n in [2, 3] {
            let (x, y) = sample_wn(&mut rng, n, 3);
            let r = wn_property_suite(&x, &y, 3, 3, 0.0).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            assert_eq!(r.checked, 9 + 9);
        }
        let (x, y) = crate::triangular::quaternion_cube_witness();
        let r = wn_property_suite(&x, &y, 2, 2, 0.0).unwrap();
        assert!(r.violations.iter().any(|v| v.0 == WnCheck::OddPowerZero));
    }

    #[test]
    fn friedland_examples() {
        let a = cm([(1, 0), (0, 0), (0, 0), (2, 0)]);
        let b = cm([(0, 0), (1, 0), (1, 0), (0, 0)]);
        let r = friedland_check(&a, &b).unwrap();
        assert_eq!(r, FriedlandReport { a: false, b: false, c: false, d: false, e: false });
        let r = friedland_check(&a, &a.scale(&Complex::new(rat(3, 1), rat(1, 1)))).unwrap();
        assert!(r.a && r.all_agree());
        let u1 = cm([(1, 2), (3, -1), (0, 0), (2, 0)]);
        let u2 = cm([(0, 1), (-1, 1), (0, 0), (5, 5)]);
        assert!(friedland_check(&u1, &u2).unwrap().a);
        assert!(friedland_check(&u1, &u2).unwrap().all_agree());
    }

    use crate::scalar::rat;

    #[test]
    fn friedland_conditions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(111);
        let (mut members, mut others) = (0, 0);
        for k in 0..300 {
            let (a, b) = if k % 2 == 0 {
                let s = random_gauss(&mut rng);
                let Some(si) = inverse2(&s) else { continue };
                let mut t1 = random_gauss(&mut rng);
                let mut t2 = random_gauss(&mut rng);
                t1.set(1, 0, CQ::zero());
                t2.set(1, 0, CQ::zero());
                (&(&s * &t1) * &si, &(&s * &t2) * &si)
            } else {
                (random_gauss(&mut rng), random_gauss(&mut rng))
            };
            let r = friedland_check(&a, &b).unwrap();
            assert!(r.all_agree(), "{r:?} {a:?} {b:?}");
            if r.a {
                members += 1
            } else {
                others += 1
            }
        }
        assert!(members > 100 && others > 100, "{members} {others}");
    }

    fn inverse2(s: &CMatrix<Rational>) -> Option<CMatrix<Rational>> {
        let det = s.get(0, 0) * s.get(1, 1) - s.get(0, 1) * s.get(1, 0);
        if det.is_zero() {
            return None;
        }
        let e = alloc::vec![s.get(1, 1) / &det, -(s.get(0, 1) / &det), -(s.get(1, 0) / &det), s.get(0, 0) / &det];
        Some(CMatrix::new(2, 2, e).unwrap())
    }

    #[test]
    fn pure_imaginary_examples() {
        let a = qmat_i64(2, 2, &[[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 2, 0]]);
        assert!(pure_imaginary_eig_check(&a, 0.0).unwrap().holds());
        let b = qmat_i64(2, 2, &[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0]]);
        assert!(!pure_imaginary_eig_check(&b, 0.0).unwrap().odd_traces_vanish);
        let c = QMatrix::diag(&[Quaternion::<Rational>::i(), Quaternion::i()]);
        assert!(pure_imaginary_eig_check(&c, 0.0).unwrap().holds());
    }

    #[test]
    fn pure_imaginary_iff_float() {
        let mut rng = ChaCha8Rng::seed_from_u64(112);
        for _ in 0..100 {
            let mut t = random::random_upper(&mut rng, 2);
            for i in 0..2 {
                let mut d = t.get(i, i).clone();
                d.a = 0.0;
                t.set(i, i, d);
            }
            let u = random::random_unitary(&mut rng, 2);
            let m = &(&u * &t) * &u.adjoint();
            let (r, pure) = pure_imaginary_eig_check_float(&m, 1e-7).unwrap();
            assert!(r.holds() && pure);
            let g = random::random_matrix(&mut rng, 2);
            let (r, pure) = pure_imaginary_eig_check_float(&g, 1e-7).unwrap();
            assert_eq!(r.holds(), pure);
        }
    }
}
