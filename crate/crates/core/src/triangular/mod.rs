//! Triangularizability of quaternionic matrix pairs and algebras.
//!
//! A pair `(A, B)` lies in `W_n` when one invertible `P` makes both
//! `PAP⁻¹` and `PBP⁻¹` upper triangular. For `n = 2` this is the same as a
//! common eigen-direction `v·ℍ` with `Av = vλ`, `Bv = vμ`.

mod algebra;
mod props;
mod w2;

pub use algebra::{
    algebra_closure, cor73_check, is_quasi_triangularizable, is_quasi_triangularizable_with_max, nilpotent_closure_test,
    tr_comm_square_test, AlgebraBasis, NilpotentMode, QtDecision, RefuterOutcome, QT_MAX_DIM,
};
pub use props::{
    friedland_check, pure_imaginary_eig_check, pure_imaginary_eig_check_float, wn_property_suite, FriedlandReport,
    PureImaginaryReport, WnCheck, WnReport,
};
pub use w2::{fiber_check, w2_membership, W2Case, W2Verdict, ENTRY_TOL};

use rand::Rng;

use crate::cmat::CMatrix;
use crate::error::Result;
use crate::qmat::{qmat_i64, random, QMatrix};
use crate::scalar::{Rational, Scalar};

/// `Tr([A,B]³)`.
pub fn tr_comm_cube<T: Scalar>(a: &QMatrix<T>, b: &QMatrix<T>) -> Result<T> {
    let c = a.commutator(b)?;
    Ok(c.pow(3)?.trace())
}

/// The three equal expressions `Tr([A,B]³)`, `3Tr(A²B²AB − B²A²BA)` and
/// `−3Tr(AB²A[A,B])`.
pub fn tr_comm_cube_forms<T: Scalar>(a: &QMatrix<T>, b: &QMatrix<T>) -> Result<[T; 3]> {
    let c = a.commutator(b)?;
    let a2 = a.try_mul(a)?;
    let b2 = b.try_mul(b)?;
    let ab = a.try_mul(b)?;
    let ba = b.try_mul(a)?;
    let three = T::from_i64(3);
    let first = c.pow(3)?.trace();
    let second = three.clone() * (a2.try_mul(&b2)?.try_mul(&ab)?.trace() - b2.try_mul(&a2)?.try_mul(&ba)?.trace());
    let third = -three * a.try_mul(&b2)?.try_mul(a)?.try_mul(&c)?.trace();
    Ok([first, second, third])
}

/// `Tr([A,B]²)`.
pub fn tr_comm_square<T: Scalar>(a: &QMatrix<T>, b: &QMatrix<T>) -> Result<T> {
    Ok(a.commutator(b)?.pow(2)?.trace())
}

/// `A` is nilpotent exactly when `χ(A)^{2n} = 0`.
pub fn is_nilpotent<T: Scalar>(a: &QMatrix<T>) -> Result<bool> {
    let n = a.require_square()?;
    let c: CMatrix<T> = a.chi();
    Ok(c.pow(2 * n as u32).is_zero())
}

/// The real pair with `Tr([A,B]²) = 4`.
pub fn real_square_witness() -> (QMatrix<Rational>, QMatrix<Rational>) {
    (
        qmat_i64(2, 2, &[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
        qmat_i64(2, 2, &[[0, 0, 0, 0], [1, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0]]),
    )
}

/// The quaternionic pair with `Tr([A,B]³) = −12`.
pub fn quaternion_cube_witness() -> (QMatrix<Rational>, QMatrix<Rational>) {
    (
        qmat_i64(2, 2, &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]]),
        qmat_i64(2, 2, &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]),
    )
}

/// The real 3×3 pair with `Tr([A,B]³) = −6`.
pub fn real3_cube_witness() -> (QMatrix<Rational>, QMatrix<Rational>) {
    let z = [0, 0, 0, 0];
    let o = [1, 0, 0, 0];
    (qmat_i64(3, 3, &[z, z, z, z, o, z, o, z, z]), qmat_i64(3, 3, &[o, o, z, z, z, o, z, z, z]))
}

/// `([[1,0],[0,0]], [[0,1],[1,0]])`: outside `W₂`, yet every listed
/// generator of the vanishing ideal is zero on it.
pub fn outside_pair() -> (QMatrix<Rational>, QMatrix<Rational>) {
    (
        qmat_i64(2, 2, &[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
        qmat_i64(2, 2, &[[0, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]]),
    )
}

/// A random exact member of `W_n`: `(gT₁g⁻¹, gT₂g⁻¹)` with small rational
/// upper triangular `Tᵢ` and invertible `g`.
pub fn sample_wn<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> (QMatrix<Rational>, QMatrix<Rational>) {
    loop {
        let g = random::exact_small(rng, n, n, bound);
        let Ok(gi) = g.inverse() else { continue };
        let t1 = random::exact_upper(rng, n, bound);
        let t2 = random::exact_upper(rng, n, bound);
        return (&(&g * &t1) * &gi, &(&g * &t2) * &gi);
    }
}

/// An unconstrained pair of small rational matrices.
pub fn sample_generic_pair<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> (QMatrix<Rational>, QMatrix<Rational>) {
    (random::exact_small(rng, n, n, bound), random::exact_small(rng, n, n, bound))
}

/// `P A P⁻¹` is upper triangular for every `A` in `mats`, with a relative
/// tolerance on the strictly lower part.
pub fn validates_witness(p: &QMatrix<f64>, mats: &[&QMatrix<f64>], tol: f64) -> bool {
    let Ok(pi) = p.inverse() else { return false };
    mats.iter().all(|m| {
        let t = &(p * *m) * &pi;
        t.lower_residual() <= tol * (1.0 + t.max_abs())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn witness_values() {
        let (a, b) = real_square_witness();
        assert_eq!(tr_comm_square(&a, &b).unwrap(), rat(4, 1));
        let (a, b) = quaternion_cube_witness();
        // Hand expansion: the diagonal of [A,B]³ is (−3−𝗂, −3+𝗂).
        assert_eq!(tr_comm_cube_forms(&a, &b).unwrap(), [rat(-12, 1), rat(-12, 1), rat(-12, 1)]);
        let (a, b) = real3_cube_witness();
        assert_eq!(tr_comm_cube_forms(&a, &b).unwrap(), [rat(-6, 1), rat(-6, 1), rat(-6, 1)]);
    }

    #[test]
    fn cube_forms_agree_and_vanish_on_triangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(80);
        for n in 1..=3 {
            let (a, b) = sample_generic_pair(&mut rng, n, 3);
            let [x, y, z] = tr_comm_cube_forms(&a, &b).unwrap();
            assert_eq!(x, y);
            assert_eq!(y, z);
            let t1 = random::exact_upper(&mut rng, n, 3);
            let t2 = random::exact_upper(&mut rng, n, 3);
            assert_eq!(tr_comm_cube(&t1, &t2).unwrap(), rat(0, 1));
        }
        assert!(tr_comm_cube(&QMatrix::<Rational>::identity(2), &QMatrix::identity(3)).is_err());
    }

    #[test]
    fn nilpotency() {
        let e12 = qmat_i64(2, 2, &[[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
        assert!(is_nilpotent(&e12).unwrap());
        assert!(!is_nilpotent(&QMatrix::<Rational>::identity(2)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let g = random::exact_invertible(&mut rng, 3, 3);
        let mut t = random::exact_upper(&mut rng, 3, 3);
        for i in 0..3 {
            t.set(i, i, crate::quat::Quaternion::zero());
        }
        assert!(is_nilpotent(&t.conjugate_by(&g).unwrap()).unwrap());
    }

    #[test]
    fn samples_are_conjugated_triangular_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        let (a, b) = sample_wn(&mut rng, 2, 5);
        assert_eq!(tr_comm_cube(&a, &b).unwrap(), rat(0, 1));
        assert!(!a.is_upper_triangular(0.0) || !b.is_upper_triangular(0.0));
    }
}
