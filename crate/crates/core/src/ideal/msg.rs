//! Degree-by-degree search for a minimal system of generators of the
//! vanishing ideal.
//!
//! At total degree `m` the part of the ideal already generated in bidegree
//! `(k,l)` is spanned by products of earlier generators with monomials of the
//! complementary bidegree. Its dimension, subtracted from `d_{k,l}`, counts
//! the new generators. Representatives come from the canonical (reduced row
//! echelon) kernel basis of the `W₂` evaluation matrix, which reduces modulo
//! every good prime to the same vectors, so they are rebuilt over `ℚ` by
//! Chinese remaindering.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::dims::{entry_with, IdealConfig};
use super::eval::{monomial_column, Column, Evaluator, Kind};
use super::generators::vanishes_on;
use super::sample_w2;
use crate::error::{Error, Result};
use crate::linalg::{crt, rational_reconstruct, ModMatrix, PrimeField};
use crate::scalar::Rational;
use crate::words::TracePolynomial;

/// Primes allowed before giving up on rebuilding a kernel vector.
const MAX_PRIMES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub bidegree: (usize, usize),
    pub poly: TracePolynomial,
    column: Column,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MsgCell {
    pub k: usize,
    pub l: usize,
    pub d: usize,
    /// Dimension of the part generated in lower degrees.
    pub known: usize,
    pub new: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsgStep {
    pub m: usize,
    pub cells: Vec<MsgCell>,
    pub generators: Vec<Generator>,
}

impl MsgStep {
    /// `((k,l), count)` for every cell with new generators.
    pub fn counts(&self) -> Vec<((usize, usize), usize)> {
        self.cells.iter().filter(|c| c.new > 0).map(|c| ((c.k, c.l), c.new)).collect()
    }
}

/// Echelon basis over `𝔽_p`, grown one vector at a time.
struct Echelon {
    f: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.f;
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, v));
        true
    }
}

fn column_of(m: &ModMatrix, c: usize) -> Vec<u64> {
    (0..m.rows).map(|r| m.get(r, c)).collect()
}

fn mat_vec(m: &ModMatrix, v: &[u64]) -> Vec<u64> {
    let f = m.field;
    (0..m.rows).map(|r| m.row(r).iter().zip(v).fold(0, |acc, (a, b)| f.add(acc, f.mul(*a, *b)))).collect()
}

/// Canonical kernel vector with a one at the free column `fc`.
fn kernel_vector(rref: &ModMatrix, pivots: &[usize], fc: usize) -> Vec<u64> {
    let f = rref.field;
    let mut v = alloc::vec![0u64; rref.cols];
    v[fc] = 1;
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = f.neg(rref.get(i, fc));
    }
    v
}

fn products(known: &[Generator], k: usize, l: usize, ev: &Evaluator) -> Vec<Column> {
    let mut cols = Vec::new();
    for g in known {
        let (a, b) = g.bidegree;
        if a > k || b > l || (a, b) == (k, l) {
            continue;
        }
        for mu in ev.cat.monomials(k - a, l - b) {
            cols.push(
                g.column
                    .iter()
                    .map(|(c, m)| {
                        let mut f = m.clone();
                        f.extend(&mu);
                        f.sort_unstable();
                        (c.clone(), f)
                    })
                    .collect(),
            );
        }
    }
    cols
}

/// Rebuilds the canonical kernel vectors at the free columns `free` over `ℚ`,
/// adding primes until two consecutive reconstructions agree.
fn reconstruct(ev: &mut Evaluator, n: usize, monos: &[Column], pivots0: &[usize], free: &[usize]) -> Result<Vec<Vec<Rational>>> {
    let mut residues: Vec<Vec<BigInt>> = alloc::vec![alloc::vec![BigInt::zero(); monos.len()]; free.len()];
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<Vec<Rational>>> = None;
    let mut prime = 0;
    loop {
        if prime == ev.fields.len() {
            if prime >= MAX_PRIMES {
                return Err(Error::RankUnstable);
            }
            ev.add_prime();
        }
        let mut w = ev.matrix(prime, Kind::W2, n, monos)?;
        let pivots = w.rref();
        if pivots != pivots0 {
            return Err(Error::RankUnstable);
        }
        let p = ev.fields[prime].p;
        for (res, &fc) in residues.iter_mut().zip(free) {
            for (r, x) in res.iter_mut().zip(kernel_vector(&w, &pivots, fc)) {
                *r = crt(r, &modulus, x, p).0;
            }
        }
        modulus *= BigInt::from(p);
        prime += 1;
        let current: Option<Vec<Vec<Rational>>> =
            residues.iter().map(|res| res.iter().map(|r| rational_reconstruct(r, &modulus)).collect()).collect();
        if let Some(cur) = current {
            if previous.as_ref() == Some(&cur) {
                return Ok(cur);
            }
            previous = Some(cur);
        } else {
            previous = None;
        }
    }
}

/// Scales to integer coefficients with no common factor.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

fn step(ev: &mut Evaluator, m: usize, known: &[Generator], config: &IdealConfig) -> Result<MsgStep> {
    let mut cells = Vec::new();
    let mut generators = Vec::new();
    for k in 0..=m {
        let l = m - k;
        let entry = entry_with(ev, k, l, config)?;
        if entry.d == 0 {
            cells.push(MsgCell { k, l, d: 0, known: 0, new: 0 });
            continue;
        }
        let n = entry.samples_used;
        let mono_idx = ev.cat.monomials(k, l);
        let monos: Vec<Column> = mono_idx.iter().map(|m| monomial_column(m)).collect();
        let prods = products(known, k, l, ev);
        let (known_dim, _) = ev.rank(Kind::Generic, n, &prods)?;
        if known_dim > entry.d {
            return Err(Error::RankUnstable);
        }

        // Selection modulo the first prime.
        let f = ev.fields[0];
        let gen0 = ev.matrix(0, Kind::Generic, n, &monos)?;
        let mut basis = Echelon { f, rows: Vec::new() };
        let jm = ev.matrix(0, Kind::Generic, n, &prods)?;
        for c in 0..jm.cols {
            basis.insert(column_of(&jm, c));
        }
        if basis.rows.len() != known_dim {
            return Err(Error::RankUnstable);
        }
        let mut w0 = ev.matrix(0, Kind::W2, n, &monos)?;
        let pivots = w0.rref();
        let mut free = Vec::new();
        for fc in (0..monos.len()).filter(|c| pivots.binary_search(c).is_err()) {
            if basis.rows.len() == entry.d {
                break;
            }
            if basis.insert(mat_vec(&gen0, &kernel_vector(&w0, &pivots, fc))) {
                free.push(fc);
            }
        }
        if basis.rows.len() != entry.d {
            return Err(Error::RankUnstable);
        }

        let fresh = sample_w2(ev.rng(), config.verify_samples);
        for v in reconstruct(ev, n, &monos, &pivots, &free)? {
            let v = primitive(&v);
            let column: Column = v.iter().zip(&mono_idx).filter(|(c, _)| !c.is_zero()).map(|(c, m)| (c.clone(), m.clone())).collect();
            let mut poly = TracePolynomial::zero();
            for (c, m) in &column {
                poly = poly.add(&ev.cat.monomial(m).to_trace_polynomial().scale(c));
            }
            if !vanishes_on(&poly, &fresh)? {
                return Err(Error::NotInIdeal);
            }
            generators.push(Generator { bidegree: (k, l), poly, column });
        }
        cells.push(MsgCell { k, l, d: entry.d, known: known_dim, new: free.len() });
    }
    Ok(MsgStep { m, cells, generators })
}

/// Steps `1..=max_m`, each using the generators found before it.
pub fn msg_steps(max_m: usize, config: &IdealConfig) -> Result<Vec<MsgStep>> {
    if max_m == 0 {
        return Err(Error::InvalidInput("total degree 0".into()));
    }
    config.check_total(max_m)?;
    let mut ev = Evaluator::new(config.seed, max_m.max(1), config.primes);
    let mut known: Vec<Generator> = Vec::new();
    let mut steps = Vec::new();
    for m in 1..=max_m {
        let s = step(&mut ev, m, &known, config)?;
        known.extend(s.generators.iter().cloned());
        steps.push(s);
    }
    Ok(steps)
}

/// New generators in total degree `m`.
pub fn msg_step(m: usize, config: &IdealConfig) -> Result<MsgStep> {
    Ok(msg_steps(m, config)?.pop().expect("m ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::table2_generators;
    use crate::triangular::outside_pair;
    use rand::SeedableRng;

    #[test]
    fn first_generators() {
        let cfg = IdealConfig { verify_samples: 10, ..IdealConfig::default() };
        let steps = msg_steps(7, &cfg).unwrap();
        for s in &steps[..5] {
            assert!(s.generators.is_empty());
        }
        assert_eq!(steps[5].counts(), [((3, 3), 1)]);
        assert_eq!(steps[6].counts(), [((3, 4), 1), ((4, 3), 1)]);
        // The degree-six generator is a multiple of f₁ as a function.
        let g = &steps[5].generators[0].poly;
        let set = table2_generators();
        let f1 = &set.get("f1").unwrap().poly;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(60);
        let pts = crate::ideal::sample_generic(&mut rng, 4);
        let ratios: Vec<Rational> = pts.iter().map(|(x, y)| g.eval(x, y).unwrap() / f1.eval(x, y).unwrap()).collect();
        assert!(ratios.iter().all(|r| *r == ratios[0]));
        let (a, b) = outside_pair();
        assert!(g.eval(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn primitive_scaling() {
        use crate::scalar::rat;
        assert_eq!(primitive(&[rat(1, 2), rat(-3, 4), rat(0, 1)]), [rat(2, 1), rat(-3, 1), rat(0, 1)]);
    }
}
