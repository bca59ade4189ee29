//! Unital subalgebras of `M_n(ℍ)` given by a basis, with the refuters for
//! triangularizability and the exact decision for quasi-triangularizability.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::{is_nilpotent, tr_comm_cube, tr_comm_square};
use crate::error::{Error, Result};
use crate::linalg::{is_prime_u64, PrimeField};
use crate::qmat::{random, QMatrix};
use crate::scalar::{Rational, Scalar};

/// Largest algebra dimension accepted by the default qt decision.
pub const QT_MAX_DIM: usize = 12;

/// Basis of a unital real subalgebra of `M_n(ℍ)`; the first element is `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraBasis {
    n: usize,
    elements: Vec<QMatrix<Rational>>,
    /// Echelon rows `(pivot, coords)` of the coordinate vectors.
    echelon: Vec<(usize, Vec<Rational>)>,
}

impl AlgebraBasis {
    fn new(n: usize) -> Self {
        let mut b = AlgebraBasis { n, elements: Vec::new(), echelon: Vec::new() };
        b.try_insert(QMatrix::identity(n));
        b
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMatrix<Rational>] {
        &self.elements
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.echelon {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    /// Membership in the span.
    pub fn contains(&self, m: &QMatrix<Rational>) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.reduce(m.coords()).iter().all(Zero::is_zero)
    }

    fn try_insert(&mut self, m: QMatrix<Rational>) -> bool {
        let v = self.reduce(m.coords());
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let row = v.into_iter().map(|x| x * &inv).collect();
        self.echelon.push((p, row));
        self.elements.push(m);
        true
    }

    /// `Σ cᵢeᵢ` with integer `cᵢ ∈ [−bound, bound]`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> QMatrix<Rational> {
        let mut acc = QMatrix::zeros(self.n, self.n);
        for e in &self.elements {
            let c = random::small_integer(rng, bound);
            if !c.is_zero() {
                acc = &acc + &e.scale(&c);
            }
        }
        acc
    }
}

/// Smallest unital subalgebra containing `gens`, by repeated products.
pub fn algebra_closure(n: usize, gens: &[QMatrix<Rational>]) -> Result<AlgebraBasis> {
    let mut basis = AlgebraBasis::new(n);
    let mut queue = Vec::new();
    for g in gens {
        g.require_size(n)?;
        if basis.try_insert(g.clone()) {
            queue.push(basis.dim() - 1);
        }
    }
    while let Some(i) = queue.pop() {
        let mut j = 0;
        while j < basis.dim() {
            let x = basis.elements[i].clone();
            let y = basis.elements[j].clone();
            for prod in [&x * &y, &y * &x] {
                if basis.try_insert(prod) {
                    queue.push(basis.dim() - 1);
                }
            }
            j += 1;
        }
    }
    debug_assert!(basis.dim() <= 4 * n * n);
    Ok(basis)
}

/// Result of a randomized refuter. `Pass` is evidence, not proof.
#[derive(Clone, Debug, PartialEq)]
pub enum RefuterOutcome {
    Pass { checked: usize },
    Fail { a: QMatrix<Rational>, b: QMatrix<Rational>, value: Option<Rational> },
}

impl RefuterOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, RefuterOutcome::Pass { .. })
    }
}

/// Searches for `A, B` in the algebra with `Tr([A,B]²) > 0`: first over
/// basis pairs, then over `samples` random pairs.
pub fn tr_comm_square_test<R: Rng + ?Sized>(basis: &AlgebraBasis, samples: usize, rng: &mut R) -> RefuterOutcome {
    let els = basis.elements();
    let mut checked = 0;
    let mut pairs: Vec<(QMatrix<Rational>, QMatrix<Rational>)> = Vec::new();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            pairs.push((els[i].clone(), els[j].clone()));
        }
    }
    let random_pairs = (0..samples).map(|_| (basis.random_element(rng, 3), basis.random_element(rng, 3)));
    for (a, b) in pairs.into_iter().chain(random_pairs.collect::<Vec<_>>()) {
        checked += 1;
        let v = tr_comm_square(&a, &b).expect("same size");
        if v.is_positive() {
            return RefuterOutcome::Fail { a, b, value: Some(v) };
        }
    }
    RefuterOutcome::Pass { checked }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotentMode {
    /// Nilpotent `A, B` must give nilpotent `A + B`.
    Sum,
    /// Nilpotent `A` and any `B` must give nilpotent `AB` and `BA`.
    Product,
}

/// Randomized refuter over nilpotent elements found among basis elements,
/// their products and commutators, and random combinations.
pub fn nilpotent_closure_test<R: Rng + ?Sized>(
    basis: &AlgebraBasis,
    mode: NilpotentMode,
    samples: usize,
    rng: &mut R,
) -> RefuterOutcome {
    let els = basis.elements();
    let mut candidates: Vec<QMatrix<Rational>> = els.to_vec();
    for x in els {
        for y in els {
            candidates.push(x * y);
            candidates.push(x.commutator(y).expect("same size"));
        }
    }
    for _ in 0..samples {
        candidates.push(basis.random_element(rng, 2));
    }
    let mut nil: Vec<QMatrix<Rational>> = Vec::new();
    for c in candidates {
        if !c.is_zero() && is_nilpotent(&c).expect("square") && !nil.contains(&c) {
            nil.push(c);
        }
    }
    let mut checked = 0;
    let nilpotent = |m: &QMatrix<Rational>| is_nilpotent(m).expect("square");
    match mode {
        NilpotentMode::Sum => {
            for i in 0..nil.len() {
                for j in i + 1..nil.len() {
                    checked += 1;
                    if !nilpotent(&(&nil[i] + &nil[j])) {
                        return RefuterOutcome::Fail { a: nil[i].clone(), b: nil[j].clone(), value: None };
                    }
                }
            }
        }
        NilpotentMode::Product => {
            let mut partners: Vec<QMatrix<Rational>> = els.to_vec();
            partners.extend((0..samples.min(64)).map(|_| basis.random_element(rng, 2)));
            for a in &nil {
                for b in &partners {
                    checked += 1;
                    if !nilpotent(&(a * b)) || !nilpotent(&(b * a)) {
                        return RefuterOutcome::Fail { a: a.clone(), b: b.clone(), value: None };
                    }
                }
            }
        }
    }
    RefuterOutcome::Pass { checked }
}

/// Outcome of the exact quasi-triangularizability decision.
#[derive(Clone, Debug, PartialEq)]
pub struct QtDecision {
    pub dimension: usize,
    pub quasi_triangularizable: bool,
    /// Index multisets `(I, J)` of a nonvanishing coefficient of
    /// `Tr([Σaᵢeᵢ, Σbⱼeⱼ]³)`.
    pub coefficient: Option<([usize; 3], [usize; 3])>,
    /// An explicit pair with `Tr([A,B]³) ≠ 0` and its value.
    pub witness: Option<(QMatrix<Rational>, QMatrix<Rational>, Rational)>,
}

pub fn is_quasi_triangularizable<R: Rng + ?Sized>(basis: &AlgebraBasis, rng: &mut R) -> Result<QtDecision> {
    is_quasi_triangularizable_with_max(basis, QT_MAX_DIM, rng)
}

/// Decides `Tr([A,B]³) ≡ 0` on the algebra by checking every coefficient of
/// the form of bidegree (3,3) in the basis coordinates. The randomness only
/// serves to produce an explicit witness pair once a coefficient is nonzero.
pub fn is_quasi_triangularizable_with_max<R: Rng + ?Sized>(
    basis: &AlgebraBasis,
    max_dim: usize,
    rng: &mut R,
) -> Result<QtDecision> {
    let d = basis.dim();
    if d > max_dim {
        return Err(Error::DimensionTooLarge { dim: d, max: max_dim });
    }
    let n = basis.size();
    let ints: Vec<QMatrix<BigInt>> = basis.elements().iter().map(|e| e.clear_denominators().1).collect();
    let comms: Vec<QMatrix<BigInt>> =
        (0..d * d).map(|k| ints[k / d].commutator(&ints[k % d]).expect("same size")).collect();
    let m = comms.iter().flat_map(|c| c.coords()).map(|x| x.abs()).max().unwrap_or_default();
    // |coefficient| ≤ 36 · 2n · n² · 16 M³.
    let bound = BigInt::from(1152u64) * BigInt::from(n).pow(3) * m.pow(3);
    let mut modulus = BigInt::from(1u8);
    let mut candidate = (1u64 << 62) - 1;
    let mut coefficient = None;
    while modulus <= BigInt::from(2u8) * &bound {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        let f = PrimeField::new(candidate);
        candidate -= 2;
        modulus *= BigInt::from(f.p);
        if let Some(c) = first_nonzero_coefficient(&comms, d, n, f) {
            coefficient = Some(c);
            break;
        }
    }
    let mut decision = QtDecision { dimension: d, quasi_triangularizable: coefficient.is_none(), coefficient, witness: None };
    if decision.coefficient.is_some() {
        for _ in 0..10_000 {
            let a = basis.random_element(rng, 3);
            let b = basis.random_element(rng, 3);
            let v = tr_comm_cube(&a, &b)?;
            if !v.is_zero() {
                decision.witness = Some((a, b, v));
                break;
            }
        }
    }
    Ok(decision)
}

/// `n×n` quaternionic matrix over `𝔽_p`, coordinates row-major.
type ModQ = Vec<[u64; 4]>;

fn mod_q(m: &QMatrix<BigInt>, f: PrimeField) -> ModQ {
    m.entries().iter().map(|q| q.coeffs().map(|x| f.from_bigint(&x))).collect()
}

fn qmul(f: PrimeField, x: &[u64; 4], y: &[u64; 4]) -> [u64; 4] {
    let m = |a, b| f.mul(a, b);
    let [a1, b1, c1, d1] = *x;
    let [a2, b2, c2, d2] = *y;
    [
        f.sub(f.sub(m(a1, a2), m(b1, b2)), f.add(m(c1, c2), m(d1, d2))),
        f.add(f.add(m(a1, b2), m(b1, a2)), f.sub(m(c1, d2), m(d1, c2))),
        f.add(f.sub(m(a1, c2), m(b1, d2)), f.add(m(c1, a2), m(d1, b2))),
        f.add(f.add(m(a1, d2), m(b1, c2)), f.sub(m(d1, a2), m(c1, b2))),
    ]
}

fn mat_mul_mod(f: PrimeField, n: usize, x: &ModQ, y: &ModQ) -> ModQ {
    let mut out = vec![[0u64; 4]; n * n];
    for r in 0..n {
        for k in 0..n {
            let a = &x[r * n + k];
            if a.iter().all(|&v| v == 0) {
                continue;
            }
            for c in 0..n {
                let p = qmul(f, a, &y[k * n + c]);
                let o = &mut out[r * n + c];
                for t in 0..4 {
                    o[t] = f.add(o[t], p[t]);
                }
            }
        }
    }
    out
}

/// Half the trace of `XY`: `Σ Re(X_rs Y_sr)`.
fn half_trace_mul(f: PrimeField, n: usize, x: &ModQ, y: &ModQ) -> u64 {
    let mut acc = 0;
    for r in 0..n {
        for s in 0..n {
            let [a1, b1, c1, d1] = x[r * n + s];
            let [a2, b2, c2, d2] = y[s * n + r];
            acc = f.add(acc, f.mul(a1, a2));
            acc = f.sub(acc, f.add(f.add(f.mul(b1, b2), f.mul(c1, c2)), f.mul(d1, d2)));
        }
    }
    acc
}

fn multisets3(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            for k in j..d {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn arrangements(s: [usize; 3]) -> Vec<[usize; 3]> {
    let [a, b, c] = s;
    let mut v = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    v.sort_unstable();
    v.dedup();
    v
}

fn first_nonzero_coefficient(comms: &[QMatrix<BigInt>], d: usize, n: usize, f: PrimeField) -> Option<([usize; 3], [usize; 3])> {
    let cm: Vec<ModQ> = comms.iter().map(|c| mod_q(c, f)).collect();
    let dd = d * d;
    let mut prods: Vec<ModQ> = Vec::with_capacity(dd * dd);
    for x in &cm {
        for y in &cm {
            prods.push(mat_mul_mod(f, n, x, y));
        }
    }
    let sets = multisets3(d);
    let arr: Vec<Vec<[usize; 3]>> = sets.iter().map(|s| arrangements(*s)).collect();
    for (si, _) in sets.iter().enumerate() {
        for (sj, _) in sets.iter().enumerate() {
            let mut acc = 0;
            for i in &arr[si] {
                for j in &arr[sj] {
                    let c1 = i[0] * d + j[0];
                    let c2 = i[1] * d + j[1];
                    let c3 = i[2] * d + j[2];
                    acc = f.add(acc, half_trace_mul(f, n, &prods[c1 * dd + c2], &cm[c3]));
                }
            }
            if acc != 0 {
                return Some((sets[si], sets[sj]));
            }
        }
    }
    None
}

/// For `(A,B) ∈ W₂` and random `X, Y` in the algebra generated by `A, B`:
/// `Tr([X,Y]³) = 0`, `Tr([X,Y]²) ≤ 0` and
/// `2Tr([X,Y]⁴) ≤ Tr([X,Y]²)² ≤ 4Tr([X,Y]⁴)`.
pub fn cor73_check<R: Rng + ?Sized>(a: &QMatrix<Rational>, b: &QMatrix<Rational>, samples: usize, rng: &mut R) -> Result<RefuterOutcome> {
    let n = a.require_square()?;
    let basis = algebra_closure(n, &[a.clone(), b.clone()])?;
    for _ in 0..samples {
        let x = basis.random_element(rng, 2);
        let y = basis.random_element(rng, 2);
        let c = x.commutator(&y)?;
        let c2 = c.pow(2)?;
        let t2 = c2.trace();
        let t3 = c.pow(3)?.trace();
        let t4 = c2.try_mul(&c2)?.trace();
        let sq = &t2 * &t2;
        let two = Rational::from_i64(2);
        let four = Rational::from_i64(4);
        let ok = t3.is_zero() && !t2.is_positive() && &two * &t4 <= sq && sq <= &four * &t4;
        if !ok {
            return Ok(RefuterOutcome::Fail { a: x, b: y, value: Some(t3) });
        }
    }
    Ok(RefuterOutcome::Pass { checked: samples })
}
