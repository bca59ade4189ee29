use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::poly::fmt_coefficient;
use super::{Letter, NCPolynomial, Word};
use crate::error::Result;
use crate::qmat::QMatrix;
use crate::scalar::{Field, Rational};

/// Rational linear combination of products `Tr(w₁)···Tr(w_r)`.
///
/// Every factor word is stored as its minimal rotation and the factors of a
/// term are sorted, so two trace polynomials that agree up to cyclicity of
/// the trace compare equal. `Tr` of the empty word is `Tr(I) = 2n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TracePolynomial {
    terms: BTreeMap<Vec<Word>, Rational>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(Vec::new(), c);
        t
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `Tr(w)`.
    pub fn trace_of(w: &Word) -> Self {
        let mut t = Self::zero();
        t.add_term(alloc::vec![w.clone()], Rational::one());
        t
    }

    /// `Tr(w₁)···Tr(w_r)` with coefficient `c`.
    pub fn monomial(factors: Vec<Word>, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(factors, c);
        t
    }

    /// Wraps `Tr` around a noncommutative polynomial.
    pub fn trace_reduce(p: &NCPolynomial) -> Self {
        let mut t = Self::zero();
        for (w, c) in p.terms() {
            t.add_term(alloc::vec![w.clone()], c.clone());
        }
        t
    }

    pub fn add_term(&mut self, mut factors: Vec<Word>, c: Rational) {
        if c.is_zero() {
            return;
        }
        for w in factors.iter_mut() {
            *w = w.canonical_rotation();
        }
        factors.sort();
        match self.terms.get_mut(&factors) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&factors);
                }
            }
            None => {
                self.terms.insert(factors, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &rhs.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        TracePolynomial { terms: self.terms.iter().map(|(f, c)| (f.clone(), c * s)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (f, a) in &self.terms {
            for (g, b) in &rhs.terms {
                let mut factors = f.clone();
                factors.extend(g.iter().cloned());
                out.add_term(factors, a * b);
            }
        }
        out
    }

    /// Bidegree of a term: sum of the factor bidegrees.
    pub fn term_bidegree(factors: &[Word]) -> (usize, usize) {
        factors.iter().fold((0, 0), |(a, b), w| {
            let (x, y) = w.bidegree();
            (a + x, b + y)
        })
    }

    /// Bidegree when the polynomial is bihomogeneous.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|f| Self::term_bidegree(f));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Leibniz rule over the factors, with `∂` acting on each trace factor as
    /// on the underlying word.
    pub fn partial_derivative(&self, l: Letter) -> Self {
        let mut out = Self::zero();
        for (factors, c) in &self.terms {
            for (i, w) in factors.iter().enumerate() {
                for d in w.deletions(l) {
                    let mut f = factors.clone();
                    f[i] = d;
                    out.add_term(f, c.clone());
                }
            }
        }
        out
    }

    /// Distinct factor words appearing anywhere in the polynomial.
    pub fn factor_words(&self) -> Vec<Word> {
        let mut ws: Vec<Word> = self.terms.keys().flatten().cloned().collect();
        ws.sort();
        ws.dedup();
        ws
    }

    /// Evaluation in any commutative ring, given the value of `Tr` on each
    /// canonical word and the image of each rational coefficient.
    pub fn eval_by<V>(&self, mut trace_of: impl FnMut(&Word) -> V, coef: impl Fn(&Rational) -> V) -> V
    where
        V: Clone + Zero + One + Add<Output = V> + Mul<Output = V>,
    {
        let mut cache: BTreeMap<&Word, V> = BTreeMap::new();
        let mut acc = V::zero();
        for (factors, c) in &self.terms {
            let mut term = coef(c);
            for w in factors {
                let v = match cache.get(w) {
                    Some(v) => v.clone(),
                    None => {
                        let v = trace_of(w);
                        cache.insert(w, v.clone());
                        v
                    }
                };
                term = term * v;
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval<T: Field>(&self, a: &QMatrix<T>, b: &QMatrix<T>) -> Result<T> {
        let n = a.require_square()?;
        b.require_size(n).map_err(|_| crate::error::Error::ShapeMismatch)?;
        let mut err = None;
        let v = self.eval_by(
            |w| match w.eval(a, b) {
                Ok(m) => m.trace(),
                Err(e) => {
                    err = Some(e);
                    T::zero()
                }
            },
            T::from_rational,
        );
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (factors, c)) in self.terms.iter().enumerate() {
            fmt_coefficient(f, c, i == 0, factors.is_empty())?;
            for w in factors {
                write!(f, "Tr({w})")?;
            }
        }
        Ok(())
    }
}
