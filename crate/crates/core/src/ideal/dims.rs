use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::eval::{monomial_column, Column, Evaluator, Kind};
use crate::error::{Error, Result};

/// Largest total degree accepted by the dimension and generator searches.
pub const HARD_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealConfig {
    pub seed: u64,
    /// Samples per cell; `None` uses `2·#monomials + 32`.
    pub samples: Option<usize>,
    pub primes: usize,
    /// Largest `k + l` in a dimension table.
    pub max_total: usize,
    /// Fresh `W₂` samples used to confirm each new generator exactly.
    pub verify_samples: usize,
}

impl Default for IdealConfig {
    fn default() -> Self {
        IdealConfig { seed: 0, samples: None, primes: 3, max_total: 8, verify_samples: 50 }
    }
}

impl IdealConfig {
    pub(crate) fn sample_count(&self, monomials: usize) -> usize {
        self.samples.unwrap_or(2 * monomials + 32)
    }

    pub(crate) fn check_total(&self, total: usize) -> Result<()> {
        if total > HARD_CAP {
            return Err(Error::DegreeTooLarge { total, max: HARD_CAP });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidegreeEntry {
    pub k: usize,
    pub l: usize,
    pub monomials: usize,
    /// Dimension of the invariants of bidegree `(k,l)`.
    pub span_dim: usize,
    /// Rank of the same monomials restricted to `W₂`.
    pub w2_rank: usize,
    /// Dimension of the vanishing ideal in bidegree `(k,l)`.
    pub d: usize,
    pub samples_used: usize,
    /// All primes agreed without exact escalation.
    pub rank_stable: bool,
}

pub(crate) fn entry_with(ev: &mut Evaluator, k: usize, l: usize, config: &IdealConfig) -> Result<BidegreeEntry> {
    let cols: Vec<Column> = ev.cat.monomials(k, l).iter().map(|m| monomial_column(m)).collect();
    let n = config.sample_count(cols.len());
    ev.ensure(n);
    let (span_dim, s1) = ev.rank(Kind::Generic, n, &cols)?;
    let (w2_rank, s2) = ev.rank(Kind::W2, n, &cols)?;
    if w2_rank > span_dim {
        return Err(Error::RankUnstable);
    }
    Ok(BidegreeEntry { k, l, monomials: cols.len(), span_dim, w2_rank, d: span_dim - w2_rank, samples_used: n, rank_stable: s1 && s2 })
}

/// One cell of the dimension table.
pub fn dim_bigraded(k: usize, l: usize, config: &IdealConfig) -> Result<BidegreeEntry> {
    config.check_total(k + l)?;
    if k + l == 0 {
        return Err(Error::InvalidInput("bidegree (0,0)".into()));
    }
    let mut ev = Evaluator::new(config.seed, k + l, config.primes);
    entry_with(&mut ev, k, l, config)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidegreeTable {
    entries: BTreeMap<(usize, usize), BidegreeEntry>,
}

impl BidegreeTable {
    pub fn get(&self, k: usize, l: usize) -> Option<&BidegreeEntry> {
        self.entries.get(&(k, l))
    }

    pub fn d(&self, k: usize, l: usize) -> Option<usize> {
        self.get(k, l).map(|e| e.d)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BidegreeEntry> {
        self.entries.values()
    }

    pub fn insert(&mut self, e: BidegreeEntry) {
        self.entries.insert((e.k, e.l), e);
    }

    /// First cell whose mirror is present and differs.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        self.entries.values().find(|e| self.d(e.l, e.k).is_some_and(|d| d != e.d)).map(|e| (e.k, e.l))
    }
}

/// Every cell with `1 ≤ k + l ≤ max_total`, from one shared sample pool.
pub fn bidegree_table(config: &IdealConfig) -> Result<BidegreeTable> {
    config.check_total(config.max_total)?;
    let mut ev = Evaluator::new(config.seed, config.max_total.max(1), config.primes);
    let mut table = BidegreeTable::default();
    for total in 1..=config.max_total {
        for k in 0..=total {
            table.insert(entry_with(&mut ev, k, total - k, config)?);
        }
    }
    if let Some((k, l)) = table.asymmetry() {
        return Err(Error::Asymmetric { k, l });
    }
    Ok(table)
}
