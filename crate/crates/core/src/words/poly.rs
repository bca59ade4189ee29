use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{Letter, Word};
use crate::error::Result;
use crate::qmat::QMatrix;
use crate::scalar::{Field, Rational};

/// Noncommutative polynomial with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Rational>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn x() -> Self {
        Self::from_word(Word::x())
    }

    pub fn y() -> Self {
        Self::from_word(Word::y())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
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
        NCPolynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `[p, q] = pq − qp`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `∂/∂l`: every word is replaced by the sum of the words obtained by
    /// deleting one occurrence of `l`.
    pub fn partial_derivative(&self, l: Letter) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for d in w.deletions(l) {
                out.add_term(d, c.clone());
            }
        }
        out
    }

    /// Bidegree of the polynomial when it is bihomogeneous.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(Word::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The bihomogeneous component of bidegree `(k, l)`.
    pub fn component(&self, k: usize, l: usize) -> Self {
        NCPolynomial {
            terms: self.terms.iter().filter(|(w, _)| w.bidegree() == (k, l)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = self.terms.keys().map(Word::bidegree).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn eval<T: Field>(&self, a: &QMatrix<T>, b: &QMatrix<T>) -> Result<QMatrix<T>> {
        let n = a.require_square()?;
        let mut acc = QMatrix::<T>::zeros(n, n);
        for (w, c) in &self.terms {
            acc = acc.try_add(&w.eval(a, b)?.scale(&T::from_rational(c)))?;
        }
        Ok(acc)
    }
}

pub(crate) fn fmt_coefficient(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool, bare: bool) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if bare || !abs.is_one() {
        write!(f, "{abs}")?;
        if !bare {
            write!(f, " ")?;
        }
    }
    Ok(())
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            fmt_coefficient(f, c, i == 0, w.is_empty())?;
            if !w.is_empty() {
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::random;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        Word::from_str_xy(s).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let p = NCPolynomial::from_word(w("xyxyy"));
        let expect = NCPolynomial::from_word(w("yxyy")).add(&NCPolynomial::from_word(w("xyyy")));
        assert_eq!(p.partial_derivative(Letter::X), expect);
        assert!(NCPolynomial::from_word(w("yyy")).partial_derivative(Letter::X).is_zero());

        let p = NCPolynomial::from_word(w("xxxyyyxxyy")).sub(&NCPolynomial::from_word(w("yyyxxxyyxx")));
        let d = p.partial_derivative(Letter::Y);
        let expect = NCPolynomial::term(w("xxxyyxxyy"), rat(3, 1))
            .add(&NCPolynomial::term(w("xxxyyyxxy"), rat(2, 1)))
            .add(&NCPolynomial::term(w("yyxxxyyxx"), rat(-3, 1)))
            .add(&NCPolynomial::term(w("yyyxxxyxx"), rat(-2, 1)));
        assert_eq!(d, expect);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = NCPolynomial::x().mul(&NCPolynomial::y());
        let q = NCPolynomial::y().mul(&NCPolynomial::x());
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&q).len(), 2);
        assert_eq!(NCPolynomial::x().commutator(&NCPolynomial::x()), NCPolynomial::zero());
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> NCPolynomial {
        let mut p = NCPolynomial::zero();
        for _ in 0..rng.gen_range(1..5) {
            let mut letters = alloc::vec![Letter::X; rng.gen_range(0..=3)];
            letters.extend(alloc::vec![Letter::Y; rng.gen_range(0..=3)]);
            for i in (1..letters.len()).rev() {
                let j = rng.gen_range(0..=i);
                letters.swap(i, j);
            }
            p.add_term(Word::new(letters), rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
        p
    }

    /// The derivative is the coefficient of `α` in `p(x + α, y)`, read off by
    /// Lagrange interpolation of exact evaluations at `α = 0, 1, …, d`.
    #[test]
    fn derivative_is_the_linear_coefficient_of_a_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..30 {
            let p = random_poly(&mut rng);
            let a = random::exact_small(&mut rng, 2, 2, 3);
            let b = random::exact_small(&mut rng, 2, 2, 3);
            let deg = 3usize;
            let nodes: Vec<Rational> = (0..=deg as i64).map(|t| rat(t, 1)).collect();
            let values: Vec<QMatrix<Rational>> = nodes
                .iter()
                .map(|t| p.eval(&a.try_add(&QMatrix::scalar(2, t.clone())).unwrap(), &b).unwrap())
                .collect();
            // Coefficient of α¹ in the interpolating polynomial.
            let mut coeff = QMatrix::<Rational>::zeros(2, 2);
            for (i, vi) in values.iter().enumerate() {
                // Lagrange basis L_i(α) = Π_{j≠i} (α − t_j)/(t_i − t_j); its α¹ coefficient.
                let others: Vec<&Rational> = nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t).collect();
                let denom: Rational = others.iter().fold(Rational::one(), |acc, t| acc * (&nodes[i] - *t));
                let mut lin = Rational::zero();
                for skip in 0..others.len() {
                    let prod = others.iter().enumerate().filter(|&(j, _)| j != skip).fold(Rational::one(), |acc, (_, t)| acc * -(*t).clone());
                    lin += prod;
                }
                coeff = coeff.try_add(&vi.scale(&(lin / denom))).unwrap();
            }
            assert_eq!(p.partial_derivative(Letter::X).eval(&a, &b).unwrap(), coeff);
        }
    }

    #[test]
    fn derivations_on_distinct_letters_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let p = random_poly(&mut rng);
            assert_eq!(
                p.partial_derivative(Letter::X).partial_derivative(Letter::Y),
                p.partial_derivative(Letter::Y).partial_derivative(Letter::X)
            );
        }
    }
}
