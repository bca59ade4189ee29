//! Trace identities for quaternions and for 2x2 complex matrices.
//!
//! The one-parameter checks are transcendental and float-only; the power
//! identities are polynomial and exact for exact scalars.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::cmat::CMatrix;
use crate::error::{Error, Result};
use crate::quat::{Quaternion, EPS_PURE};
use crate::scalar::Scalar;

type Q = Quaternion<f64>;

/// Tolerance on `|p| = 1` for the unit-quaternion identity.
pub const EPS_UNIT: f64 = 1e-9;

fn require_pure(p: &Q) -> Result<()> {
    if p.a.abs() > EPS_PURE {
        Err(Error::NotPure)
    } else {
        Ok(())
    }
}

/// `Tr(Π φ_p(sᵢ)φ_q(tᵢ))` for a quaternion is twice the real part.
fn alternating_trace(first: &Q, second: &Q, s: &[f64], t: &[f64]) -> Result<f64> {
    let mut acc = Q::one();
    for (si, ti) in s.iter().zip(t) {
        acc = &acc * &Q::exp_pure(first, *si)?;
        acc = &acc * &Q::exp_pure(second, *ti)?;
    }
    Ok(acc.trace())
}

/// `|Tr(Π φ_p(sᵢ)φ_q(tᵢ)) − Tr(Π φ_q(sᵢ)φ_p(tᵢ))|` without any restriction on
/// `|p|, |q|`.
pub fn one_param_residual(p: &Q, q: &Q, s: &[f64], t: &[f64]) -> Result<f64> {
    require_pure(p)?;
    require_pure(q)?;
    if s.len() != t.len() {
        return Err(Error::InvalidInput("parameter lists must have equal length".into()));
    }
    let lhs = alternating_trace(p, q, s, t)?;
    let rhs = alternating_trace(q, p, s, t)?;
    Ok((lhs - rhs).abs())
}

/// Residual of the identity for pure unit quaternions `p`, `q`.
pub fn check_one_param_identity(p: &Q, q: &Q, s: &[f64], t: &[f64]) -> Result<f64> {
    require_pure(p)?;
    require_pure(q)?;
    for u in [p, q] {
        if (u.norm() - 1.0).abs() > EPS_UNIT {
            return Err(Error::NotUnit);
        }
    }
    one_param_residual(p, q, s, t)
}

/// A pair of non-unit pure quaternions with parameters at which the
/// alternating identity fails, and the size of the failure.
pub fn non_unit_witness() -> (Q, Q, Vec<f64>, Vec<f64>, f64) {
    let p = Q::new(0.0, 2.0, 0.0, 0.0);
    let q = Q::j();
    let s = alloc::vec![1.0, 2.0];
    let t = alloc::vec![0.5, 1.0];
    let r = one_param_residual(&p, &q, &s, &t).expect("pure inputs");
    (p, q, s, t, r)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Prop42Case {
    /// Parameters `(s, t)`, each used for both factors.
    A { s: f64, t: f64 },
    /// Parameters `(r, s, t)`, at least two of which must coincide.
    B { r: f64, s: f64, t: f64 },
}

/// Residual of the equal-parameter identities for arbitrary pure `p`, `q`.
pub fn check_prop42(p: &Q, q: &Q, case: Prop42Case) -> Result<f64> {
    let params: Vec<f64> = match case {
        Prop42Case::A { s, t } => alloc::vec![s, t],
        Prop42Case::B { r, s, t } => {
            if r != s && s != t && r != t {
                return Err(Error::GuardViolated("at least two of r, s, t must be equal"));
            }
            alloc::vec![r, s, t]
        }
    };
    one_param_residual(p, q, &params, &params)
}

fn quat_pow<T: Scalar>(x: &Quaternion<T>, e: usize) -> Quaternion<T> {
    x.pow(e as u32)
}

fn alternating_product<T: Scalar>(x: &Quaternion<T>, y: &Quaternion<T>, exps: &[usize]) -> Quaternion<T> {
    let mut acc = Quaternion::one();
    for &e in exps {
        acc = &acc * &quat_pow(x, e);
        acc = &acc * &quat_pow(y, e);
    }
    acc
}

/// `Tr(xᵐyᵐxⁿyⁿ) − Tr(yᵐxᵐyⁿxⁿ)` for quaternions, with `x⁰ = 1`.
pub fn check_qident<T: Scalar>(m: usize, n: usize, x: &Quaternion<T>, y: &Quaternion<T>) -> T {
    alternating_product(x, y, &[m, n]).trace() - alternating_product(y, x, &[m, n]).trace()
}

fn require_not_distinct(m: usize, n: usize, r: usize) -> Result<()> {
    if m != n && n != r && m != r {
        Err(Error::GuardViolated("m, n, r must not be pairwise distinct"))
    } else {
        Ok(())
    }
}

/// The three-block version of [`check_qident`]; `m, n, r` must not be
/// pairwise distinct.
pub fn check_qident3<T: Scalar>(m: usize, n: usize, r: usize, x: &Quaternion<T>, y: &Quaternion<T>) -> Result<T> {
    require_not_distinct(m, n, r)?;
    Ok(alternating_product(x, y, &[m, n, r]).trace() - alternating_product(y, x, &[m, n, r]).trace())
}

fn cmat_alternating<T: Scalar>(x: &CMatrix<T>, y: &CMatrix<T>, exps: &[usize]) -> CMatrix<T> {
    let mut acc = CMatrix::identity(x.rows());
    for &e in exps {
        acc = &acc * &x.pow(e as u32);
        acc = &acc * &y.pow(e as u32);
    }
    acc
}

fn require_2x2<T: Scalar>(m: &CMatrix<T>) -> Result<()> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() != 2 {
        return Err(Error::WrongSize { expected: 2, found: m.rows() });
    }
    Ok(())
}

/// `tr(xᵐyᵐxⁿyⁿ) − tr(yᵐxᵐyⁿxⁿ)` with the ordinary trace on `M₂(ℂ)`.
pub fn check_cident<T: Scalar>(m: usize, n: usize, x: &CMatrix<T>, y: &CMatrix<T>) -> Result<Complex<T>> {
    require_2x2(x)?;
    require_2x2(y)?;
    Ok(cmat_alternating(x, y, &[m, n]).trace() - cmat_alternating(y, x, &[m, n]).trace())
}

pub fn check_cident3<T: Scalar>(m: usize, n: usize, r: usize, x: &CMatrix<T>, y: &CMatrix<T>) -> Result<Complex<T>> {
    require_not_distinct(m, n, r)?;
    require_2x2(x)?;
    require_2x2(y)?;
    Ok(cmat_alternating(x, y, &[m, n, r]).trace() - cmat_alternating(y, x, &[m, n, r]).trace())
}

/// Exponent lists covered by a sweep up to `max_exp`: every pair `(m, n)`,
/// then every triple that is not pairwise distinct.
pub fn sweep_exponents(max_exp: usize) -> Vec<Vec<usize>> {
    let r = 0..=max_exp;
    let pairs = r.clone().flat_map(|m| r.clone().map(move |n| alloc::vec![m, n]));
    let triples = r.clone().flat_map(|m| {
        let r = r.clone();
        r.clone().flat_map(move |n| r.clone().map(move |k| alloc::vec![m, n, k]))
    });
    pairs.chain(triples.filter(|e| require_not_distinct(e[0], e[1], e[2]).is_ok())).collect()
}

fn powers<A: Clone>(x: &A, max_exp: usize, one: A, mul: impl Fn(&A, &A) -> A) -> Vec<A> {
    let mut p = alloc::vec![one];
    for e in 0..max_exp {
        let next = mul(&p[e], x);
        p.push(next);
    }
    p
}

/// Alternating products for every exponent list, memoized by prefix so each
/// list costs one multiplication beyond its parent.
fn alternations<A: Clone>(px: &[A], py: &[A], lists: &[Vec<usize>], one: &A, mul: &impl Fn(&A, &A) -> A) -> Vec<A> {
    let blocks: Vec<A> = px.iter().zip(py).map(|(a, b)| mul(a, b)).collect();
    let mut memo: BTreeMap<Vec<usize>, A> = BTreeMap::new();
    lists
        .iter()
        .map(|exps| {
            let mut acc = one.clone();
            for len in 1..=exps.len() {
                let key = &exps[..len];
                acc = match memo.get(key) {
                    Some(v) => v.clone(),
                    None => {
                        let v = mul(&acc, &blocks[exps[len - 1]]);
                        memo.insert(key.to_vec(), v.clone());
                        v
                    }
                };
            }
            acc
        })
        .collect()
}

fn sweep<A: Clone, D>(
    x: &A,
    y: &A,
    max_exp: usize,
    one: A,
    mul: impl Fn(&A, &A) -> A,
    diff: impl Fn(&A, &A) -> D,
) -> Vec<(Vec<usize>, D)> {
    let px = powers(x, max_exp, one.clone(), &mul);
    let py = powers(y, max_exp, one.clone(), &mul);
    let lists = sweep_exponents(max_exp);
    let lhs = alternations(&px, &py, &lists, &one, &mul);
    let rhs = alternations(&py, &px, &lists, &one, &mul);
    lists.into_iter().zip(lhs.iter().zip(&rhs)).map(|(e, (a, b))| (e, diff(a, b))).collect()
}

/// [`check_qident`] and [`check_qident3`] at every exponent list of
/// [`sweep_exponents`], sharing the powers of `x` and `y`.
pub fn qident_sweep<T: Scalar>(max_exp: usize, x: &Quaternion<T>, y: &Quaternion<T>) -> Vec<(Vec<usize>, T)> {
    sweep(x, y, max_exp, Quaternion::one(), |a, b| a * b, |a, b| a.trace() - b.trace())
}

/// The complex counterpart of [`qident_sweep`].
pub fn cident_sweep<T: Scalar>(max_exp: usize, x: &CMatrix<T>, y: &CMatrix<T>) -> Result<Vec<(Vec<usize>, Complex<T>)>> {
    require_2x2(x)?;
    require_2x2(y)?;
    Ok(sweep(x, y, max_exp, CMatrix::identity(2), |a, b| a * b, |a, b| a.trace() - b.trace()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::random;
    use crate::scalar::{rat, Rational};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn equal_letters_give_zero() {
        let p = Q::new(0.0, 0.6, 0.8, 0.0);
        assert_eq!(check_one_param_identity(&p, &p, &[1.0, 2.0], &[0.3, -1.0]).unwrap(), 0.0);
    }

    #[test]
    fn unit_identity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for _ in 0..100 {
            let p = random::unit_pure(&mut rng);
            let q = random::unit_pure(&mut rng);
            let s: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let t: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            assert!(check_one_param_identity(&p, &q, &s, &t).unwrap() < 1e-10);
        }
    }

    #[test]
    fn input_guards() {
        let p = Q::new(0.5, 1.0, 0.0, 0.0);
        assert_eq!(check_one_param_identity(&p, &Q::i(), &[1.0], &[1.0]), Err(Error::NotPure));
        let p2 = Q::new(0.0, 2.0, 0.0, 0.0);
        assert_eq!(check_one_param_identity(&p2, &Q::i(), &[1.0], &[1.0]), Err(Error::NotUnit));
        let case = Prop42Case::B { r: 0.1, s: 0.2, t: 0.3 };
        assert!(matches!(check_prop42(&Q::i(), &Q::j(), case), Err(Error::GuardViolated(_))));
    }

    #[test]
    fn non_unit_identity_fails() {
        let (_, _, _, _, r) = non_unit_witness();
        assert!(r > 1e-3, "residual {r}");
    }

    #[test]
    fn equal_parameter_cases() {
        let p = Q::new(0.0, 3.0, 0.0, 0.0);
        let q = Q::new(0.0, 0.0, 1.0, 1.0);
        assert!(check_prop42(&p, &q, Prop42Case::A { s: 1.3, t: -0.7 }).unwrap() < 1e-10);
        assert_eq!(check_prop42(&p, &q, Prop42Case::A { s: 0.0, t: 0.0 }).unwrap(), 0.0);
        assert!(check_prop42(&p, &q, Prop42Case::B { r: 0.4, s: 0.4, t: 2.0 }).unwrap() < 1e-10);
    }

    #[test]
    fn quaternion_power_identity_examples() {
        let i = Quaternion::<Rational>::i();
        let j = Quaternion::<Rational>::j();
        assert_eq!(alternating_product(&i, &j, &[1, 1]).trace(), rat(-2, 1));
        assert!(check_qident(1, 1, &i, &j).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let x = random::exact_quat(&mut rng, 5);
        let y = random::exact_quat(&mut rng, 5);
        assert!(check_qident(2, 1, &x, &y).is_zero());
        assert!(check_qident(0, 3, &x, &y).is_zero());
        assert!(check_qident3(2, 2, 1, &x, &y).unwrap().is_zero());
        assert!(matches!(check_qident3(1, 2, 3, &x, &y), Err(Error::GuardViolated(_))));
    }

    #[test]
    fn sweeps_match_single_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        let exps = sweep_exponents(3);
        assert_eq!(exps.len(), 16 + 40);
        let x = random::exact_quat(&mut rng, 4);
        let y = random::exact_quat(&mut rng, 4);
        for (e, d) in qident_sweep(3, &x, &y) {
            let single = if e.len() == 2 { check_qident(e[0], e[1], &x, &y) } else { check_qident3(e[0], e[1], e[2], &x, &y).unwrap() };
            assert_eq!(d, single);
            assert!(d.is_zero());
        }
        let c = |v: i64| Complex::new(rat(v, 1), rat(1 - v, 2));
        let xm = CMatrix::new(2, 2, alloc::vec![c(1), c(2), c(-1), c(3)]).unwrap();
        let ym = CMatrix::new(2, 2, alloc::vec![c(0), c(-2), c(5), c(1)]).unwrap();
        for (e, d) in cident_sweep(3, &xm, &ym).unwrap() {
            let single = if e.len() == 2 { check_cident(e[0], e[1], &xm, &ym) } else { check_cident3(e[0], e[1], e[2], &xm, &ym) };
            assert_eq!(d, single.unwrap());
        }
        assert!(cident_sweep(1, &xm, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn complex_power_identity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        let gauss = |rng: &mut ChaCha8Rng| {
            let e: Vec<_> = (0..4).map(|_| Complex::new(random::small_rational(rng, 4), random::small_rational(rng, 4))).collect();
            CMatrix::new(2, 2, e).unwrap()
        };
        let x = gauss(&mut rng);
        let y = gauss(&mut rng);
        assert!(check_cident(3, 2, &x, &y).unwrap().is_zero());
        assert!(check_cident3(2, 2, 1, &x, &y).unwrap().is_zero());
        assert!(check_cident(1, 1, &x, &x.scale(&Complex::new(rat(2, 1), rat(1, 1)))).unwrap().is_zero());
        // The identity is special to 2x2 matrices.
        assert_eq!(check_cident(1, 1, &x, &CMatrix::identity(3)), Err(Error::WrongSize { expected: 2, found: 3 }));
    }
}
