//! Sp(2)-equivalence of 2x2 quaternionic matrices.
//!
//! Every `A ∈ M₂(ℍ)` is unitarily similar to an upper triangular
//! `[[α, z₁ + 𝗃z₃], [0, β]]` with complex `α, β` in the closed upper half
//! plane, `z₁, z₃ ≥ 0`, and `z₃ = 0` as soon as `α` or `β` is real. Two
//! matrices are equivalent exactly when the six traces
//! `Tr(A), Tr(A²), Tr(A³), Tr(A⁴), Tr(AA*), Tr(A²A*²)` agree.

use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::qmat::{schur, QMatrix};
use crate::quat::Quaternion;
use crate::scalar::{approx_eq, Rational, Scalar};

type Q = Quaternion<f64>;

/// Relative tolerance for comparing float invariants.
pub const INVARIANT_REL_TOL: f64 = 1e-7;
/// Absolute floor for comparing float invariants.
pub const INVARIANT_ABS_TOL: f64 = 1e-9;

/// The six separating invariants `p₁…p₆`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSix<T> {
    pub p: [T; 6],
}

pub fn invariants<T: Scalar>(a: &QMatrix<T>) -> Result<InvariantSix<T>> {
    a.require_size(2)?;
    let a2 = a.try_mul(a)?;
    let a3 = a2.try_mul(a)?;
    let a4 = a3.try_mul(a)?;
    let adj = a.adjoint();
    let aa = a.try_mul(&adj)?;
    let a2a2 = a2.try_mul(&adj.try_mul(&adj)?)?;
    Ok(InvariantSix { p: [a.trace(), a2.trace(), a3.trace(), a4.trace(), aa.trace(), a2a2.trace()] })
}

impl<T: Scalar> InvariantSix<T> {
    /// 1-based indices `k` with `p_k` differing, exactly for exact scalars
    /// and up to the relative tolerance `rel` otherwise.
    pub fn differing(&self, other: &Self, rel: f64) -> Vec<usize> {
        (0..6)
            .filter(|&k| {
                if T::EXACT {
                    self.p[k] != other.p[k]
                } else {
                    !approx_eq(self.p[k].to_f64(), other.p[k].to_f64(), rel, INVARIANT_ABS_TOL)
                }
            })
            .map(|k| k + 1)
            .collect()
    }

    pub fn to_f64(&self) -> InvariantSix<f64> {
        InvariantSix { p: core::array::from_fn(|k| self.p[k].to_f64()) }
    }
}

/// Element of the canonical set: `[[α, z₁ + 𝗃z₃], [0, β]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalUpper2<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub z1: T,
    pub z3: T,
}

impl<T: Scalar> CanonicalUpper2<T> {
    pub fn matrix(&self) -> QMatrix<T> {
        QMatrix::m2(
            Quaternion::from_complex(&self.alpha),
            Quaternion::new(self.z1.clone(), T::zero(), self.z3.clone(), T::zero()),
            Quaternion::zero(),
            Quaternion::from_complex(&self.beta),
        )
    }

    /// Membership in the canonical set, with `tol` for float comparisons.
    pub fn is_canonical(&self, tol: f64) -> bool {
        let nonneg = |x: &T| !x.is_negative() || x.to_f64() >= -tol;
        let real = |z: &Complex<T>| z.im.near_zero(tol);
        nonneg(&self.alpha.im)
            && nonneg(&self.beta.im)
            && nonneg(&self.z1)
            && nonneg(&self.z3)
            && (!(real(&self.alpha) || real(&self.beta)) || self.z3.near_zero(tol))
    }
}

impl CanonicalUpper2<f64> {
    /// Same class in the canonical set: equal `z` and equal diagonal sets.
    pub fn same_class(&self, other: &Self, tol: f64) -> bool {
        let close = |a: Complex<f64>, b: Complex<f64>| (a - b).norm() <= tol;
        (self.z1 - other.z1).abs() <= tol
            && (self.z3 - other.z3).abs() <= tol
            && ((close(self.alpha, other.alpha) && close(self.beta, other.beta))
                || (close(self.alpha, other.beta) && close(self.beta, other.alpha)))
    }
}

/// `p₆` of a canonical matrix in closed form:
/// `½p₆ = |α|⁴ + |β|⁴ + |α + β̄|²|z|² + 4z₁² Im α Im β`.
pub fn p6_on_k<T: Scalar>(c: &CanonicalUpper2<T>) -> T {
    let abs2 = |z: &Complex<T>| z.norm_sqr();
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let s = Complex::new(c.alpha.re.clone() + c.beta.re.clone(), c.alpha.im.clone() - c.beta.im.clone());
    let z2 = c.z1.clone() * c.z1.clone() + c.z3.clone() * c.z3.clone();
    let half = abs2(&c.alpha) * abs2(&c.alpha)
        + abs2(&c.beta) * abs2(&c.beta)
        + abs2(&s) * z2
        + four * c.z1.clone() * c.z1.clone() * c.alpha.im.clone() * c.beta.im.clone();
    let p6 = two * half;
    debug_assert!({
        let direct = invariants(&c.matrix()).expect("2x2").p[5].clone();
        if T::EXACT {
            direct == p6
        } else {
            approx_eq(direct.to_f64(), p6.to_f64(), 1e-9, 1e-9)
        }
    });
    p6
}

/// Canonical form together with the unitary `W` realizing it:
/// `W A W* = form.matrix()`.
#[derive(Clone, Debug)]
pub struct CanonicalResult {
    pub form: CanonicalUpper2<f64>,
    pub unitary: QMatrix<f64>,
}

impl CanonicalResult {
    pub fn residual(&self, a: &QMatrix<f64>) -> f64 {
        (&(&self.unitary * a) * &self.unitary.adjoint()).dist(&self.form.matrix())
    }
}

/// Reduces `A` to the canonical set. The diagonal is ordered so that `α`
/// is lexicographically smaller than `β` in `(Re, Im)`.
pub fn canonical_form(a: &QMatrix<f64>) -> Result<CanonicalResult> {
    a.require_size(2)?;
    let s = schur(a, None)?;
    let tol = 1e-9 * (1.0 + a.max_abs());
    let alpha = Complex::new(s.t.get(0, 0).a, s.t.get(0, 0).b);
    let beta = Complex::new(s.t.get(1, 1).a, s.t.get(1, 1).b);
    let z = s.t.get(0, 1).clone();
    let (u, v) = if z.norm() <= tol {
        (Q::one(), Q::one())
    } else if beta.im.abs() <= tol {
        (Q::one(), z.normalized()?)
    } else if alpha.im.abs() <= tol {
        (z.conj().normalized()?, Q::one())
    } else {
        let (c1, c2) = z.complex_parts();
        let phi1 = if c1.norm() <= tol { 0.0 } else { c1.arg() };
        let phi2 = if c2.norm() <= tol { 0.0 } else { c2.arg() };
        let tv = (phi1 + phi2) / 2.0;
        let tu = (phi2 - phi1) / 2.0;
        (Q::new(tu.cos(), tu.sin(), 0.0, 0.0), Q::new(tv.cos(), tv.sin(), 0.0, 0.0))
    };
    let d = QMatrix::diag(&[u, v]);
    let w = &d * &s.u;
    let t = &(&w * a) * &w.adjoint();
    let off = t.get(0, 1);
    let real_diag = alpha.im.abs() <= tol || beta.im.abs() <= tol;
    let form = CanonicalUpper2 {
        alpha: Complex::new(alpha.re, alpha.im.max(0.0)),
        beta: Complex::new(beta.re, beta.im.max(0.0)),
        z1: off.a.abs(),
        z3: if real_diag { 0.0 } else { off.c.abs() },
    };
    Ok(CanonicalResult { form, unitary: w })
}

/// Outcome of the six-invariant comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// 1-based indices of the invariants that differ.
    pub differing: Vec<usize>,
}

pub fn sp2_equivalent<T: Scalar>(a: &QMatrix<T>, b: &QMatrix<T>) -> Result<Equivalence> {
    sp2_equivalent_with_tolerance(a, b, INVARIANT_REL_TOL)
}

pub fn sp2_equivalent_with_tolerance<T: Scalar>(a: &QMatrix<T>, b: &QMatrix<T>, rel: f64) -> Result<Equivalence> {
    let differing = invariants(a)?.differing(&invariants(b)?, rel);
    Ok(Equivalence { equivalent: differing.is_empty(), differing })
}

/// One row of the minimality table: the two matrices agree on every
/// invariant except `p_row`.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub row: usize,
    pub left: QMatrix<f64>,
    pub right: QMatrix<f64>,
    /// Exact entries, present when all entries are rational.
    pub exact: Option<(QMatrix<Rational>, QMatrix<Rational>)>,
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub row: usize,
    pub left: InvariantSix<f64>,
    pub right: InvariantSix<f64>,
    pub differing: Vec<usize>,
    pub exact: bool,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.differing == [self.row]
    }
}

impl Table1Row {
    /// Compares invariants exactly when possible, otherwise with an
    /// absolute tolerance of `1e-9`.
    pub fn check(&self) -> Table1Report {
        if let Some((l, r)) = &self.exact {
            let (il, ir) = (invariants(l).expect("2x2"), invariants(r).expect("2x2"));
            return Table1Report { row: self.row, differing: il.differing(&ir, 0.0), left: il.to_f64(), right: ir.to_f64(), exact: true };
        }
        let (il, ir) = (invariants(&self.left).expect("2x2"), invariants(&self.right).expect("2x2"));
        let differing = (0..6).filter(|&k| (il.p[k] - ir.p[k]).abs() > 1e-9).map(|k| k + 1).collect();
        Table1Report { row: self.row, left: il, right: ir, differing, exact: false }
    }
}

fn cq(a: f64, b: f64) -> Q {
    Q::new(a, b, 0.0, 0.0)
}

fn rq(a: i64, b: i64, c: i64) -> Quaternion<Rational> {
    Quaternion::from_i64s(a, b, c, 0)
}

fn exact_pair(l: [Quaternion<Rational>; 4], r: [Quaternion<Rational>; 4]) -> (QMatrix<Rational>, QMatrix<Rational>) {
    let [a, b, c, d] = l;
    let [e, f, g, h] = r;
    (QMatrix::m2(a, b, c, d), QMatrix::m2(e, f, g, h))
}

/// The six minimality pairs.
pub fn table1_witnesses() -> Vec<Table1Row> {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    let z = Q::zero;
    let mut rows = Vec::with_capacity(6);
    rows.push(Table1Row {
        row: 1,
        left: QMatrix::diag(&[cq(s3, -1.0), cq(-s3, 1.0)]),
        right: QMatrix::diag(&[cq(-s3, 1.0), cq(-s3, -1.0)]),
        exact: None,
    });
    let exact_rows = [
        (
            2,
            exact_pair([rq(2, 1, 0), rq(1, 0, 0), rq(0, 0, 0), rq(-2, -1, 0)], [rq(1, 2, 0), rq(-1, 0, 0), rq(0, 0, 0), rq(-1, -2, 0)]),
        ),
        (
            3,
            exact_pair([rq(-1, 2, 0), rq(0, 0, 0), rq(0, 0, 0), rq(1, 0, 0)], [rq(-1, 0, 0), rq(0, 0, 0), rq(0, 0, 0), rq(1, 2, 0)]),
        ),
        (5, exact_pair([rq(0, 0, 0), rq(0, 0, 0), rq(0, 0, 0), rq(0, 0, 0)], [rq(0, 0, 0), rq(1, 0, 0), rq(0, 0, 0), rq(0, 0, 0)])),
        (6, exact_pair([rq(0, 1, 0), rq(1, 0, 0), rq(0, 0, 0), rq(0, 1, 0)], [rq(0, 1, 0), rq(0, 0, 1), rq(0, 0, 0), rq(0, 1, 0)])),
    ];
    let mut exact_iter = exact_rows.into_iter().peekable();
    for row in 2..=6 {
        if row == 4 {
            rows.push(Table1Row {
                row: 4,
                left: QMatrix::m2(z(), Q::new(s6, 0.0, 1.0, 0.0), z(), cq(0.0, s2)),
                right: QMatrix::m2(cq(0.0, 1.0), Q::new(s3, 0.0, 2.0, 0.0), z(), cq(0.0, -1.0)),
                exact: None,
            });
            continue;
        }
        let (r, (l, rt)) = exact_iter.next().expect("four exact rows");
        debug_assert_eq!(r, row);
        rows.push(Table1Row { row, left: l.to_f64(), right: rt.to_f64(), exact: Some((l, rt)) });
    }
    rows
}

/// Canonical forms of `A` and `B` describe the same class.
pub fn same_canonical_class(a: &QMatrix<f64>, b: &QMatrix<f64>, tol: f64) -> Result<bool> {
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    Ok(ca.form.same_class(&cb.form, tol))
}

impl<T: Scalar> Default for InvariantSix<T> {
    fn default() -> Self {
        InvariantSix { p: core::array::from_fn(|_| T::zero()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::qmat::{qmat_i64, random};
    use num_traits::Zero;
    use num_traits::Signed;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariant_examples() {
        let zero = QMatrix::<Rational>::zeros(2, 2);
        assert_eq!(invariants(&zero).unwrap(), InvariantSix::default());
        let n = qmat_i64(2, 2, &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
        let p = invariants(&n).unwrap().p;
        assert_eq!(p, [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(2, 1), rat(0, 1)]);
        let a = qmat_i64(2, 2, &[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0]]);
        let b = qmat_i64(2, 2, &[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 1, 0, 0]]);
        let (pa, pb) = (invariants(&a).unwrap(), invariants(&b).unwrap());
        assert_eq!(pa.p[5], rat(12, 1));
        assert_eq!(pb.p[5], rat(4, 1));
        assert_eq!(pa.differing(&pb, 0.0), [6]);
        assert!(matches!(invariants(&QMatrix::<Rational>::identity(3)), Err(Error::WrongSize { .. })));
    }

    #[test]
    fn p6_closed_form_examples() {
        let i = Complex::new(rat(0, 1), rat(1, 1));
        let c = CanonicalUpper2 { alpha: i.clone(), beta: i.clone(), z1: rat(1, 1), z3: rat(0, 1) };
        assert_eq!(p6_on_k(&c), rat(12, 1));
        let c = CanonicalUpper2 { alpha: i.clone(), beta: i, z1: rat(0, 1), z3: rat(1, 1) };
        assert_eq!(p6_on_k(&c), rat(4, 1));
        let zero = Complex::new(rat(0, 1), rat(0, 1));
        let c = CanonicalUpper2 { alpha: zero.clone(), beta: zero, z1: rat(0, 1), z3: rat(0, 1) };
        assert_eq!(p6_on_k(&c), rat(0, 1));
    }

    #[test]
    fn p6_closed_form_matches_trace_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for _ in 0..200 {
            let mut c = CanonicalUpper2 {
                alpha: Complex::new(random::small_rational(&mut rng, 5), random::small_rational(&mut rng, 5).abs()),
                beta: Complex::new(random::small_rational(&mut rng, 5), random::small_rational(&mut rng, 5).abs()),
                z1: random::small_rational(&mut rng, 5).abs(),
                z3: random::small_rational(&mut rng, 5).abs(),
            };
            if c.alpha.im.is_zero() || c.beta.im.is_zero() {
                c.z3 = rat(0, 1);
            }
            assert!(c.is_canonical(0.0));
            assert_eq!(p6_on_k(&c), invariants(&c.matrix()).unwrap().p[5]);
        }
    }

    #[test]
    fn canonical_form_examples() {
        let i = cq(0.0, 1.0);
        let k_elem = QMatrix::m2(i.clone(), Q::new(1.0, 0.0, 2.0, 0.0), Q::zero(), cq(0.5, 2.0));
        let c = canonical_form(&k_elem).unwrap();
        assert!(c.residual(&k_elem) < 1e-8);
        assert!((c.form.z1 - 1.0).abs() < 1e-9 && (c.form.z3 - 2.0).abs() < 1e-9);

        let c1 = Complex::new(0.6, -0.8);
        let c2 = Complex::new(-1.0, 1.0);
        let z = Quaternion::from_complex_parts(&c1, &c2);
        let a = QMatrix::m2(i.clone(), z, Q::zero(), cq(0.3, 1.5));
        let c = canonical_form(&a).unwrap();
        assert!((c.form.z1 - 1.0).abs() < 1e-9);
        assert!((c.form.z3 - 2f64.sqrt()).abs() < 1e-9);
        assert!(c.residual(&a) < 1e-8);

        let jk = QMatrix::diag(&[Q::j(), Q::k()]);
        let c = canonical_form(&jk).unwrap();
        assert!(c.form.same_class(&CanonicalUpper2 { alpha: Complex::new(0.0, 1.0), beta: Complex::new(0.0, 1.0), z1: 0.0, z3: 0.0 }, 1e-8));
        assert!(c.residual(&jk) < 1e-8);
    }

    #[test]
    fn real_eigenvalue_forces_real_offdiagonal() {
        let a = QMatrix::m2(cq(2.0, 0.0), Q::new(0.3, -0.4, 1.0, 2.0), Q::zero(), cq(0.0, 1.0));
        let c = canonical_form(&a).unwrap();
        assert!(c.form.is_canonical(1e-9));
        assert_eq!(c.form.z3, 0.0);
        assert!(c.residual(&a) < 1e-8, "{}", c.residual(&a));
    }

    #[test]
    fn equivalence_examples() {
        let e = sp2_equivalent(&QMatrix::diag(&[Q::i(), Q::j()]), &QMatrix::diag(&[Q::i(), Q::i()])).unwrap();
        assert!(e.equivalent);
        let rows = table1_witnesses();
        let e = sp2_equivalent(&rows[0].left, &rows[0].right).unwrap();
        assert_eq!(e.differing, [1]);
    }

    #[test]
    fn table1_rows_differ_in_one_invariant() {
        for row in table1_witnesses() {
            let report = row.check();
            assert!(report.passed(), "row {}: {:?}", row.row, report.differing);
            assert_eq!(report.exact, matches!(row.row, 2 | 3 | 5 | 6));
        }
        let r3 = &table1_witnesses()[2];
        let (l, r) = r3.exact.as_ref().unwrap();
        let (pl, pr) = (invariants(l).unwrap().p, invariants(r).unwrap().p);
        assert_eq!((pl[2].clone(), pr[2].clone()), (rat(24, 1), rat(-24, 1)));
        assert_eq!((pl[0].clone(), pl[1].clone()), (rat(0, 1), rat(-4, 1)));
    }

    #[test]
    fn canonical_form_is_a_class_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..200 {
            let a = random::random_matrix(&mut rng, 2);
            let u = random::random_unitary(&mut rng, 2);
            let b = &(&u * &a) * &u.adjoint();
            assert!(same_canonical_class(&a, &b, 1e-6).unwrap());
            let c = canonical_form(&a).unwrap();
            assert!(c.form.is_canonical(1e-9));
            assert!(c.residual(&a) < 1e-8);
        }
    }

    #[test]
    fn invariants_decide_classes_on_the_canonical_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let draw = |rng: &mut ChaCha8Rng| {
            let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..3) as f64;
            let mut c = CanonicalUpper2 {
                alpha: Complex::new(pick(rng), pick(rng)),
                beta: Complex::new(pick(rng), pick(rng)),
                z1: pick(rng),
                z3: pick(rng),
            };
            if c.alpha.im == 0.0 || c.beta.im == 0.0 {
                c.z3 = 0.0;
            }
            c
        };
        for _ in 0..500 {
            let (a, b) = (draw(&mut rng), draw(&mut rng));
            let inv = sp2_equivalent(&a.matrix(), &b.matrix()).unwrap().equivalent;
            assert_eq!(inv, a.same_class(&b, 1e-12), "{a:?} {b:?}");
        }
    }

    #[test]
    fn exact_unitary_similarity_preserves_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..20 {
            let a = random::exact_small(&mut rng, 2, 2, 4);
            let u = random::exact_unitary(&mut rng, 2, 3);
            let b = &(&u * &a) * &u.adjoint();
            assert_eq!(invariants(&a).unwrap(), invariants(&b).unwrap());
        }
    }
}
