//! Words and polynomials in two noncommuting letters `x`, `y`, their traces,
//! and checkers for the quaternionic trace identities.

pub mod identities;
mod parse;
mod poly;
mod trace;

pub use parse::{parse_nc, parse_trace};
pub use poly::NCPolynomial;
pub use trace::TracePolynomial;

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A word over `{x, y}`. The empty word stands for the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: alloc::vec![l] }
    }

    pub fn x() -> Self {
        Self::letter(Letter::X)
    }

    pub fn y() -> Self {
        Self::letter(Letter::Y)
    }

    /// Parses a plain string of `x` and `y` characters.
    pub fn from_str_xy(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(pos, c)| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse { pos, msg: alloc::format!("unexpected character {c:?} in word") }),
            })
            .collect::<Result<_>>()?;
        Ok(Word { letters })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        Word { letters: (0..len).map(|_| if rng.gen_bool(0.5) { Letter::X } else { Letter::Y }).collect() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&c| c == l).count()
    }

    /// `(#x, #y)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.degree(Letter::X), self.degree(Letter::Y))
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { letters }
    }

    pub fn pow(&self, e: usize) -> Word {
        Word { letters: self.letters.repeat(e) }
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.letters.len());
        Word { letters }
    }

    /// Lexicographically minimal rotation (`x < y`), the representative of
    /// the word's necklace.
    pub fn canonical_rotation(&self) -> Word {
        (0..self.len().max(1)).map(|k| self.rotate(k)).min().unwrap_or_default()
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_rotation()
    }

    /// A word is primitive when it is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        n > 0 && (1..n).all(|k| n % k != 0 || self.rotate(k) != *self)
    }

    /// All words obtained by deleting one occurrence of `l`, with multiplicity.
    pub fn deletions(&self, l: Letter) -> Vec<Word> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == l)
            .map(|(i, _)| {
                let mut letters = self.letters.clone();
                letters.remove(i);
                Word { letters }
            })
            .collect()
    }

    /// `w(A, B)`; the empty word evaluates to the identity.
    pub fn eval<T: Scalar>(&self, a: &QMatrix<T>, b: &QMatrix<T>) -> Result<QMatrix<T>> {
        let n = a.require_square()?;
        b.require_size(n).map_err(|_| Error::ShapeMismatch)?;
        let mut acc = QMatrix::identity(n);
        for l in &self.letters {
            acc = acc.try_mul(match l {
                Letter::X => a,
                Letter::Y => b,
            })?;
        }
        Ok(acc)
    }

    /// Generic evaluation in any monoid given by the images of the letters.
    pub fn eval_with<M: Clone>(&self, one: M, x: &M, y: &M, mul: impl Fn(&M, &M) -> M) -> M {
        self.letters.iter().fold(one, |acc, l| {
            mul(
                &acc,
                match l {
                    Letter::X => x,
                    Letter::Y => y,
                },
            )
        })
    }
}

/// Prints runs compactly: `x^2yx`, and `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            write!(f, "{}", l.symbol())?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}
