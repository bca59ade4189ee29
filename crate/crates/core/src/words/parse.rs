//! Text syntax for polynomials and trace polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor+
//! factor := number | atom ['^' int]
//! atom   := 'x' | 'y' | '(' expr ')' | '[' expr ',' expr ']' | 'Tr' '(' expr ')'
//! number := int ['/' int]
//! ```
//!
//! Juxtaposition is the (noncommutative) product; `Tr(...)` factors commute
//! with everything.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Letter, NCPolynomial, TracePolynomial, Word};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Sum of terms `c · Tr(w₁)···Tr(w_r) · w`.
#[derive(Clone, Debug, Default)]
struct Mixed {
    terms: BTreeMap<(Vec<Word>, Word), Rational>,
}

impl Mixed {
    fn add_term(&mut self, mut traces: Vec<Word>, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        for t in traces.iter_mut() {
            *t = t.canonical_rotation();
        }
        traces.sort();
        let key = (traces, w);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn constant(c: Rational) -> Self {
        let mut m = Mixed::default();
        m.add_term(Vec::new(), Word::empty(), c);
        m
    }

    fn letter(l: Letter) -> Self {
        let mut m = Mixed::default();
        m.add_term(Vec::new(), Word::letter(l), Rational::one());
        m
    }

    fn add(mut self, rhs: &Mixed, sign: &Rational) -> Self {
        for ((t, w), c) in &rhs.terms {
            self.add_term(t.clone(), w.clone(), c * sign);
        }
        self
    }

    fn mul(&self, rhs: &Mixed) -> Self {
        let mut out = Mixed::default();
        for ((t1, w1), a) in &self.terms {
            for ((t2, w2), b) in &rhs.terms {
                let mut t = t1.clone();
                t.extend(t2.iter().cloned());
                out.add_term(t, w1.concat(w2), a * b);
            }
        }
        out
    }

    fn trace(&self) -> Self {
        let mut out = Mixed::default();
        for ((t, w), c) in &self.terms {
            let mut t = t.clone();
            t.push(w.clone());
            out.add_term(t, Word::empty(), c.clone());
        }
        out
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).map_err(|_| Error::Parse { pos: start, msg: "invalid utf-8".into() })?;
        digits.parse::<BigInt>().map_err(|_| Error::Parse { pos: start, msg: "invalid integer".into() })
    }

    fn expr(&mut self) -> Result<Mixed> {
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = Mixed::default().add(&self.term()?, &sign);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, &Rational::one());
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, &-Rational::one());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Mixed> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if matches!(c, b'+' | b'-' | b')' | b']' | b',') {
                break;
            }
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Mixed> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                Ok(Mixed::constant(Rational::new(num, den)))
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.integer()?;
                    let e: usize = e.try_into().map_err(|_| Error::Parse { pos: self.pos, msg: "exponent too large".into() })?;
                    if e > 64 {
                        return self.err("exponent too large");
                    }
                    let mut acc = Mixed::constant(Rational::one());
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    Ok(acc)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Mixed> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Mixed::letter(Letter::X))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Mixed::letter(Letter::Y))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(a.mul(&b).add(&b.mul(&a), &-Rational::one()))
            }
            Some(b'T') => {
                if self.src.get(self.pos + 1) != Some(&b'r') {
                    return self.err("expected 'Tr'");
                }
                self.pos += 2;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e.trace())
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_mixed(s: &str) -> Result<Mixed> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let m = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(m)
}

/// Parses a noncommutative polynomial such as `x^2y - 3/2 [x,y]`.
pub fn parse_nc(s: &str) -> Result<NCPolynomial> {
    let m = parse_mixed(s)?;
    let mut out = NCPolynomial::zero();
    for ((t, w), c) in m.terms {
        if !t.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "trace factors are not allowed here".into() });
        }
        out.add_term(w, c);
    }
    Ok(out)
}

/// Parses a trace polynomial such as `Tr(xy^2x[x,y]) - 2 Tr(x)Tr(y)`.
pub fn parse_trace(s: &str) -> Result<TracePolynomial> {
    let m = parse_mixed(s)?;
    let mut out = TracePolynomial::zero();
    for ((t, w), c) in m.terms {
        if !w.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "every noncommutative factor must sit inside Tr(...)".into() });
        }
        out.add_term(t, c);
    }
    Ok(out)
}
