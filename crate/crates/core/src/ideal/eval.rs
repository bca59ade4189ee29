//! Evaluation of necklace traces at exact sample pairs, modulo primes and
//! exactly.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{sample_generic, sample_w2, word_code, NecklaceCatalog};
use crate::error::{Error, Result};
use crate::linalg::{random_prime, stable_rank, ModMatrix, PrimeField};
use crate::qmat::QMatrix;
use crate::scalar::Rational;

/// 2×2 quaternionic matrix over `𝔽_p`: entries row-major, coefficients
/// `(1, 𝗂, 𝗃, 𝗄)`.
pub(crate) type ModQMat = [[u64; 4]; 4];

type Pair = (QMatrix<Rational>, QMatrix<Rational>);

fn reduce(f: &PrimeField, m: &QMatrix<Rational>) -> Option<ModQMat> {
    let mut out = [[0u64; 4]; 4];
    for (e, q) in out.iter_mut().zip(m.entries()) {
        for (c, x) in e.iter_mut().zip(q.coeffs()) {
            *c = f.from_rational(&x)?;
        }
    }
    Some(out)
}

/// Product with one reduction per output coefficient: every partial
/// product is below `2¹²⁴` and at most six share a sign.
fn mul(f: &PrimeField, a: &ModQMat, b: &ModQMat) -> ModQMat {
    let p = f.p as u128;
    let mut out = [[0u64; 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            let mut pos = [0u128; 4];
            let mut neg = [0u128; 4];
            for t in 0..2 {
                let x = a[2 * r + t].map(u128::from);
                let y = b[2 * t + c].map(u128::from);
                pos[0] += x[0] * y[0];
                neg[0] += x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
                pos[1] += x[0] * y[1] + x[1] * y[0] + x[2] * y[3];
                neg[1] += x[3] * y[2];
                pos[2] += x[0] * y[2] + x[2] * y[0] + x[3] * y[1];
                neg[2] += x[1] * y[3];
                pos[3] += x[0] * y[3] + x[1] * y[2] + x[3] * y[0];
                neg[3] += x[2] * y[1];
            }
            for i in 0..4 {
                out[2 * r + c][i] = f.sub((pos[i] % p) as u64, (neg[i] % p) as u64);
            }
        }
    }
    out
}

fn mod_trace(f: &PrimeField, m: &ModQMat) -> u64 {
    let s = f.add(m[0][0], m[3][0]);
    f.add(s, s)
}

/// Traces of every catalog necklace at `(x, y)`, by depth-first extension
/// of prefixes.
fn mod_traces(f: &PrimeField, cat: &NecklaceCatalog, x: &ModQMat, y: &ModQMat) -> Vec<u64> {
    fn walk(f: &PrimeField, cat: &NecklaceCatalog, g: [&ModQMat; 2], prefix: &ModQMat, len: usize, bits: usize, out: &mut [u64]) {
        for (letter, m) in g.iter().enumerate() {
            let next = mul(f, prefix, m);
            let nb = bits | letter << len;
            if let Some(i) = cat.index_of_code(word_code(len + 1, nb)) {
                out[i] = mod_trace(f, &next);
            }
            if len + 1 < cat.max_len() {
                walk(f, cat, g, &next, len + 1, nb, out);
            }
        }
    }
    let mut out = alloc::vec![0u64; cat.len()];
    let one = [[1, 0, 0, 0], [0; 4], [0; 4], [1, 0, 0, 0]];
    walk(f, cat, [x, y], &one, 0, 0, &mut out);
    out
}

/// Exact traces of every catalog necklace.
pub(crate) fn exact_traces(cat: &NecklaceCatalog, x: &QMatrix<Rational>, y: &QMatrix<Rational>) -> Vec<Rational> {
    fn walk(cat: &NecklaceCatalog, g: [&QMatrix<Rational>; 2], prefix: &QMatrix<Rational>, len: usize, bits: usize, out: &mut [Rational]) {
        for (letter, m) in g.iter().enumerate() {
            let next = prefix * *m;
            let nb = bits | letter << len;
            if let Some(i) = cat.index_of_code(word_code(len + 1, nb)) {
                out[i] = next.trace();
            }
            if len + 1 < cat.max_len() {
                walk(cat, g, &next, len + 1, nb, out);
            }
        }
    }
    let mut out = alloc::vec![Rational::zero(); cat.len()];
    walk(cat, [x, y], &QMatrix::identity(2), 0, 0, &mut out);
    out
}

/// A linear combination of monomials, each a list of necklace indices.
pub(crate) type Column = Vec<(Rational, Vec<usize>)>;

pub(crate) fn monomial_column(m: &[usize]) -> Column {
    alloc::vec![(Rational::one(), m.to_vec())]
}

fn column_value_mod(f: &PrimeField, col: &[(u64, &[usize])], traces: &[u64]) -> u64 {
    col.iter().fold(0, |acc, (c, m)| f.add(acc, m.iter().fold(*c, |t, &i| f.mul(t, traces[i]))))
}

fn column_value_exact(col: &Column, traces: &[Rational]) -> Rational {
    col.iter().fold(Rational::zero(), |acc, (c, m)| acc + m.iter().fold(c.clone(), |t, &i| t * &traces[i]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Generic,
    W2,
}

/// Sample pools with cached necklace traces for each prime.
pub(crate) struct Evaluator {
    pub(crate) cat: NecklaceCatalog,
    rng: ChaCha8Rng,
    pub(crate) fields: Vec<PrimeField>,
    generic: Vec<Pair>,
    w2: Vec<Pair>,
    /// `[prime][sample][necklace]`.
    generic_tr: Vec<Vec<Vec<u64>>>,
    w2_tr: Vec<Vec<Vec<u64>>>,
}

impl Evaluator {
    pub(crate) fn new(seed: u64, max_len: usize, primes: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut fields: Vec<PrimeField> = Vec::new();
        while fields.len() < primes.max(1) {
            let p = random_prime(&mut rng);
            if fields.iter().all(|f| f.p != p) {
                fields.push(PrimeField::new(p));
            }
        }
        let n = fields.len();
        Evaluator {
            cat: NecklaceCatalog::new(max_len),
            rng,
            fields,
            generic: Vec::new(),
            w2: Vec::new(),
            generic_tr: alloc::vec![Vec::new(); n],
            w2_tr: alloc::vec![Vec::new(); n],
        }
    }

    pub(crate) fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn traces_all(&self, pair: &Pair) -> Option<Vec<Vec<u64>>> {
        self.fields
            .iter()
            .map(|f| {
                let x = reduce(f, &pair.0)?;
                let y = reduce(f, &pair.1)?;
                Some(mod_traces(f, &self.cat, &x, &y))
            })
            .collect()
    }

    /// Grows both pools to at least `n` samples.
    pub(crate) fn ensure(&mut self, n: usize) {
        for kind in [Kind::Generic, Kind::W2] {
            while self.pool(kind).len() < n {
                let pair = match kind {
                    Kind::Generic => sample_generic(&mut self.rng, 1),
                    Kind::W2 => sample_w2(&mut self.rng, 1),
                }
                .pop()
                .expect("one sample");
                // A denominator divisible by one of the primes: draw again.
                let Some(tr) = self.traces_all(&pair) else { continue };
                let (pool, tables) = match kind {
                    Kind::Generic => (&mut self.generic, &mut self.generic_tr),
                    Kind::W2 => (&mut self.w2, &mut self.w2_tr),
                };
                pool.push(pair);
                for (t, v) in tables.iter_mut().zip(tr) {
                    t.push(v);
                }
            }
        }
    }

    pub(crate) fn pool(&self, kind: Kind) -> &[Pair] {
        match kind {
            Kind::Generic => &self.generic,
            Kind::W2 => &self.w2,
        }
    }

    fn tables(&self, kind: Kind) -> &[Vec<Vec<u64>>] {
        match kind {
            Kind::Generic => &self.generic_tr,
            Kind::W2 => &self.w2_tr,
        }
    }

    /// Appends a fresh prime for which every pooled sample reduces.
    pub(crate) fn add_prime(&mut self) -> usize {
        loop {
            let f = PrimeField::new(random_prime(&mut self.rng));
            if self.fields.contains(&f) {
                continue;
            }
            let tab = |pool: &[Pair]| -> Option<Vec<Vec<u64>>> {
                pool.iter().map(|(x, y)| Some(mod_traces(&f, &self.cat, &reduce(&f, x)?, &reduce(&f, y)?))).collect()
            };
            let (Some(g), Some(w)) = (tab(&self.generic), tab(&self.w2)) else { continue };
            self.fields.push(f);
            self.generic_tr.push(g);
            self.w2_tr.push(w);
            return self.fields.len() - 1;
        }
    }

    /// Evaluation matrix: one row per sample among the first `n`, one column
    /// per entry of `cols`.
    pub(crate) fn matrix(&self, prime: usize, kind: Kind, n: usize, cols: &[Column]) -> Result<ModMatrix> {
        let f = self.fields[prime];
        let reduced: Vec<Vec<(u64, &[usize])>> = cols
            .iter()
            .map(|col| col.iter().map(|(c, m)| Ok((f.from_rational(c).ok_or(Error::RankUnstable)?, m.as_slice()))).collect())
            .collect::<Result<_>>()?;
        let tables = &self.tables(kind)[prime];
        let mut m = ModMatrix::zeros(f, n, cols.len());
        for (r, tr) in tables.iter().take(n).enumerate() {
            for (c, col) in reduced.iter().enumerate() {
                m.set(r, c, column_value_mod(&f, col, tr));
            }
        }
        Ok(m)
    }

    pub(crate) fn exact_matrix(&self, kind: Kind, n: usize, cols: &[Column]) -> Vec<Vec<Rational>> {
        self.pool(kind)
            .iter()
            .take(n)
            .map(|(x, y)| {
                let tr = exact_traces(&self.cat, x, y);
                cols.iter().map(|c| column_value_exact(c, &tr)).collect()
            })
            .collect()
    }

    /// Rank of the evaluation matrix, agreed across primes or settled exactly.
    pub(crate) fn rank(&self, kind: Kind, n: usize, cols: &[Column]) -> Result<(usize, bool)> {
        if cols.is_empty() {
            return Ok((0, true));
        }
        let mats = (0..self.fields.len()).map(|p| self.matrix(p, kind, n, cols)).collect::<Result<Vec<_>>>()?;
        stable_rank(&mats, || self.exact_matrix(kind, n, cols))
    }
}
