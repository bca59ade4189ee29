//! Exact and modular linear algebra over ℚ and 𝔽_p.
//!
//! Ranks of large evaluation matrices are taken modulo a few random 62-bit
//! primes; exact fraction-free elimination is the fallback and the reference.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Clears denominators row by row; row scaling does not change the rank.
pub fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn rank_exact(m: &[Vec<Rational>]) -> usize {
    bareiss_rank(integer_rows(m))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_exact(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : M v = 0}`, one vector per free column with a 1 there.
pub fn nullspace_exact(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref_exact(&mut a);
    free_columns(cols, &pivots)
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

fn free_columns(cols: usize, pivots: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..cols).filter(move |c| pivots.binary_search(c).is_err())
}

/// The prime field `𝔽_p` for `p < 2⁶³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < 1 << 63);
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("reduced residue fits")
    }

    /// `None` when the denominator vanishes modulo `p`.
    pub fn from_rational(&self, r: &Rational) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        Some(self.mul(self.from_bigint(r.numer()), self.inv(d)?))
    }

    /// Symmetric lift to `(−p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let f = PrimeField { p: n };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `(2⁶¹, 2⁶²)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61) + 1..1u64 << 62) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

/// `count` distinct random primes in `(2⁶¹, 2⁶²)`.
pub fn random_primes<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_prime(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Dense row-major matrix over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub field: PrimeField,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ModMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        ModMatrix { field, rows: n, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            for row in head.chunks_mut(cols).chain(rest.chunks_mut(cols)) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    if prow[j] != 0 {
                        row[j] = f.sub(row[j], f.mul(factor, prow[j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Nullspace basis, one vector per free column with a 1 there.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let f = self.field;
        free_columns(self.cols, &pivots)
            .map(|fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(a.get(i, fc));
                }
                v
            })
            .collect()
    }
}

/// Rank from several primes together with agreement. Disagreement sends the
/// caller to the exact fallback.
pub fn multi_modular_rank(mats: &[ModMatrix]) -> (usize, bool) {
    let ranks: Vec<usize> = mats.iter().map(ModMatrix::rank).collect();
    let max = ranks.iter().copied().max().unwrap_or(0);
    (max, ranks.iter().all(|&r| r == max))
}

/// Rank with prime agreement, falling back to exact elimination.
pub fn stable_rank(mats: &[ModMatrix], exact: impl FnOnce() -> Vec<Vec<Rational>>) -> Result<(usize, bool)> {
    let (r, agree) = multi_modular_rank(mats);
    if agree {
        return Ok((r, true));
    }
    let e = rank_exact(&exact());
    if e < r {
        // A modular rank can only drop, never exceed the rational rank.
        return Err(Error::RankUnstable);
    }
    Ok((e, false))
}

/// Chinese remaindering of `a mod m` and `b mod p`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> (BigInt, BigInt) {
    let f = PrimeField::new(p);
    let am = f.from_bigint(a);
    let minv = f.inv(f.from_bigint(m)).expect("coprime moduli");
    let t = f.mul(f.sub(b, am), minv);
    let mp = m * BigInt::from(p);
    ((a + m * BigInt::from(t)).mod_floor(&mp), mp)
}

/// Wang's rational reconstruction: `n/d ≡ a (mod m)` with
/// `|n|, d ≤ √(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn exact_ranks() {
        assert_eq!(rank_exact(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_exact(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), 3);
        assert_eq!(rank_exact(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank_exact(&[]), 0);
        let halves = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), rat(1, 1)]];
        assert_eq!(rank_exact(&halves), 1);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ns = nullspace_exact(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let s: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(2_305_843_009_213_693_951));
        assert!(!is_prime_u64(2_305_843_009_213_693_953));
        assert!(!is_prime_u64(561));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in random_primes(&mut rng, 3) {
            assert!(p > 1 << 61 && is_prime_u64(p));
        }
    }

    #[test]
    fn modular_rank_matches_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = random_prime(&mut rng);
        let f = PrimeField::new(p);
        for _ in 0..20 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let k = rng.gen_range(1..4);
            // Low-rank product of small integer factors.
            let l: Vec<Vec<i64>> = (0..rows).map(|_| (0..k).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let r: Vec<Vec<i64>> = (0..k).map(|_| (0..cols).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let prod: Vec<Vec<Rational>> =
                (0..rows).map(|i| (0..cols).map(|j| rat((0..k).map(|t| l[i][t] * r[t][j]).sum(), 1)).collect()).collect();
            let mm = ModMatrix::from_rows(f, prod.iter().map(|row| row.iter().map(|x| f.from_rational(x).unwrap()).collect()).collect(), cols);
            assert_eq!(mm.rank(), rank_exact(&prod));
            for v in mm.nullspace() {
                for i in 0..rows {
                    let s = (0..cols).fold(0, |acc, j| f.add(acc, f.mul(mm.get(i, j), v[j])));
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn reconstruction_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let primes = random_primes(&mut rng, 2);
        for r in [rat(-7, 12), rat(123456789, 1000003), rat(0, 1), rat(5, 1)] {
            let (mut a, mut modulus) = (BigInt::zero(), BigInt::one());
            for &p in &primes {
                let f = PrimeField::new(p);
                (a, modulus) = crt(&a, &modulus, f.from_rational(&r).unwrap(), p);
            }
            assert_eq!(rational_reconstruct(&a, &modulus), Some(r));
        }
    }
}
