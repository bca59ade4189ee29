//! Bigraded invariants of pairs of 2×2 quaternionic matrices and the ideal
//! of those vanishing on simultaneously triangularizable pairs.
//!
//! Invariants of bidegree `(k,l)` are spanned by products of traces of
//! cyclic words with `k` letters `x` and `l` letters `y` in total. Dimensions
//! are ranks of evaluation matrices at random exact points, computed modulo
//! several 62-bit primes.

mod dims;
mod eval;
mod generators;
mod jacobian;
mod msg;

pub use dims::{bidegree_table, dim_bigraded, BidegreeEntry, BidegreeTable, IdealConfig, HARD_CAP};
pub use generators::{
    check_generator, derive_generator, eq5_bridge_residual, table2_generators, vanishes_on, GeneratorCheck, GeneratorSet,
    NamedGenerator,
};
pub use jacobian::{jacobian, jacobian_rank};
pub use msg::{msg_step, msg_steps, Generator, MsgCell, MsgStep};

use alloc::vec::Vec;
use core::fmt;

use num_traits::One;
use rand::Rng;

use crate::qmat::QMatrix;
use crate::scalar::Rational;
use crate::triangular::{sample_generic_pair, sample_wn};
use crate::words::{Letter, TracePolynomial, Word};

/// Entry bound for sampled rational coordinates.
pub const SAMPLE_BOUND: i64 = 10;

/// A cyclic word, stored as its lexicographically minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Necklace {
    word: Word,
    aperiodic: bool,
}

impl Necklace {
    pub fn new(w: &Word) -> Self {
        let word = w.canonical_rotation();
        let aperiodic = word.is_primitive();
        Necklace { word, aperiodic }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.word.bidegree()
    }

    /// Not a proper power of a shorter word.
    pub fn is_aperiodic(&self) -> bool {
        self.aperiodic
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// Word from its letters packed into bits (`y = 1`), least significant first.
fn word_from_bits(len: usize, bits: usize) -> Word {
    Word::new((0..len).map(|i| if bits >> i & 1 == 1 { Letter::Y } else { Letter::X }).collect())
}

/// Every cyclic class of words with `a` letters `x` and `b` letters `y`.
pub fn necklaces(a: usize, b: usize) -> Vec<Necklace> {
    let n = a + b;
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Necklace> = (0usize..1 << n)
        .filter(|bits| bits.count_ones() as usize == b)
        .map(|bits| word_from_bits(n, bits))
        .filter(Word::is_canonical)
        .map(|w| Necklace::new(&w))
        .collect();
    out.sort();
    out
}

/// Product of traces of necklaces; factors sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantMonomial {
    factors: Vec<Necklace>,
}

impl InvariantMonomial {
    pub fn new(mut factors: Vec<Necklace>) -> Self {
        factors.sort();
        InvariantMonomial { factors }
    }

    pub fn factors(&self) -> &[Necklace] {
        &self.factors
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.factors.iter().fold((0, 0), |(a, b), n| {
            let (x, y) = n.bidegree();
            (a + x, b + y)
        })
    }

    pub fn to_trace_polynomial(&self) -> TracePolynomial {
        TracePolynomial::monomial(self.factors.iter().map(|n| n.word.clone()).collect(), Rational::one())
    }
}

impl fmt::Display for InvariantMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_trace_polynomial())
    }
}

/// All necklaces up to a given length, indexed, with a lookup from packed
/// word codes to necklace indices.
#[derive(Clone, Debug)]
pub(crate) struct NecklaceCatalog {
    max_len: usize,
    list: Vec<Necklace>,
    by_code: Vec<u32>,
}

/// Packed code of a word of length `len`: `2^len − 1 + bits`.
#[inline]
pub(crate) fn word_code(len: usize, bits: usize) -> usize {
    (1 << len) - 1 + bits
}

impl NecklaceCatalog {
    pub(crate) fn new(max_len: usize) -> Self {
        let mut list = Vec::new();
        let mut by_code = alloc::vec![u32::MAX; word_code(max_len + 1, 0)];
        for len in 1..=max_len {
            for bits in 0..1usize << len {
                let w = word_from_bits(len, bits);
                if w.is_canonical() {
                    by_code[word_code(len, bits)] = list.len() as u32;
                    list.push(Necklace::new(&w));
                }
            }
        }
        NecklaceCatalog { max_len, list, by_code }
    }

    pub(crate) fn max_len(&self) -> usize {
        self.max_len
    }

    pub(crate) fn len(&self) -> usize {
        self.list.len()
    }

    #[cfg(test)]
    pub(crate) fn get(&self, i: usize) -> &Necklace {
        &self.list[i]
    }

    /// Necklace index of a canonical word code, if any.
    #[inline]
    pub(crate) fn index_of_code(&self, code: usize) -> Option<usize> {
        let v = self.by_code[code];
        (v != u32::MAX).then_some(v as usize)
    }

    #[cfg(test)]
    pub(crate) fn index_of(&self, w: &Word) -> Option<usize> {
        let c = w.canonical_rotation();
        if c.is_empty() || c.len() > self.max_len {
            return None;
        }
        let bits = c.letters().iter().enumerate().fold(0, |acc, (i, &l)| acc | ((l == Letter::Y) as usize) << i);
        self.index_of_code(word_code(c.len(), bits))
    }

    /// Monomials of bidegree `(k,l)` as sorted lists of necklace indices.
    pub(crate) fn monomials(&self, k: usize, l: usize) -> Vec<Vec<usize>> {
        let mut candidates: Vec<usize> = (0..self.list.len())
            .filter(|&i| {
                let (a, b) = self.list[i].bidegree();
                a <= k && b <= l
            })
            .collect();
        candidates.sort_by(|&i, &j| self.list[i].cmp(&self.list[j]));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend(&candidates, 0, k, l, &mut cur, &mut out);
        out
    }

    fn extend(&self, cands: &[usize], start: usize, k: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 && l == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for (pos, &i) in cands.iter().enumerate().skip(start) {
            let (a, b) = self.list[i].bidegree();
            if a <= k && b <= l {
                cur.push(i);
                self.extend(cands, pos, k - a, l - b, cur, out);
                cur.pop();
            }
        }
    }

    pub(crate) fn monomial(&self, idx: &[usize]) -> InvariantMonomial {
        InvariantMonomial::new(idx.iter().map(|&i| self.list[i].clone()).collect())
    }
}

/// Every product of necklace traces with total bidegree `(k,l)`.
pub fn invariant_monomials(k: usize, l: usize) -> Vec<InvariantMonomial> {
    let cat = NecklaceCatalog::new(k + l);
    cat.monomials(k, l).iter().map(|m| cat.monomial(m)).collect()
}

/// `count` exact members of `W₂`, each `g(T₁,T₂)g⁻¹` with rational entries
/// bounded by [`SAMPLE_BOUND`].
pub fn sample_w2<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<(QMatrix<Rational>, QMatrix<Rational>)> {
    (0..count).map(|_| sample_wn(rng, 2, SAMPLE_BOUND)).collect()
}

/// `count` unconstrained exact pairs.
pub fn sample_generic<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<(QMatrix<Rational>, QMatrix<Rational>)> {
    (0..count).map(|_| sample_generic_pair(rng, 2, SAMPLE_BOUND)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ns: &[Necklace]) -> Vec<alloc::string::String> {
        ns.iter().map(|n| alloc::format!("{}", n.word().letters().iter().map(|l| l.symbol()).collect::<alloc::string::String>())).collect()
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(words(&necklaces(1, 1)), ["xy"]);
        assert_eq!(words(&necklaces(2, 2)), ["xxyy", "xyxy"]);
        assert_eq!(words(&necklaces(2, 1)), ["xxy"]);
        assert!(!necklaces(2, 2)[1].is_aperiodic());
        assert!(necklaces(0, 0).is_empty());
    }

    #[test]
    fn necklace_counts_match_burnside() {
        // (1/n) Σ_{d | gcd} φ(d) C(n/d, a/d)
        assert_eq!(necklaces(3, 3).len(), 4);
        assert_eq!(necklaces(4, 4).len(), 10);
        assert_eq!(necklaces(5, 4).len(), 14);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(invariant_monomials(1, 0).len(), 1);
        let two: Vec<_> = invariant_monomials(2, 0).iter().map(|m| alloc::format!("{m}")).collect();
        assert_eq!(two.len(), 2);
        // Coefficients of Π (1 − xᵃyᵇ)^{−N(a,b)} at total degree 6.
        let counts: Vec<usize> = (0..=6).map(|k| invariant_monomials(k, 6 - k).len()).collect();
        assert_eq!(counts, [11, 19, 34, 38, 34, 19, 11]);
        for m in invariant_monomials(3, 2) {
            assert_eq!(m.bidegree(), (3, 2));
        }
    }

    #[test]
    fn catalog_lookup() {
        let cat = NecklaceCatalog::new(6);
        for i in 0..cat.len() {
            let n = cat.get(i);
            assert_eq!(cat.index_of(n.word()), Some(i));
            assert_eq!(cat.index_of(&n.word().rotate(1)), Some(i));
        }
        assert_eq!(cat.index_of(&Word::empty()), None);
    }
}
