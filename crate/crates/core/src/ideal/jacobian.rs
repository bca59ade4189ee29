use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rank_exact;
use crate::qmat::QMatrix;
use crate::scalar::Rational;
use crate::words::{Letter, TracePolynomial, Word};

/// Real coordinates of a pair of 2×2 quaternionic matrices.
const COORDS: usize = 32;

/// Gradient of `Tr(w)` in the 32 coordinates. Cyclicity turns the
/// derivative along `E` at an occurrence of a letter into `Tr(E·M)` with
/// `M` = (suffix)(prefix), and `Tr(u E_rc M) = 2 Re(u·M_cr)`.
fn trace_gradient(w: &Word, x: &QMatrix<Rational>, y: &QMatrix<Rational>) -> Result<Vec<Rational>> {
    let mut g = alloc::vec![Rational::zero(); COORDS];
    let letters = w.letters();
    for (pos, &l) in letters.iter().enumerate() {
        let rest = Word::new(letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect());
        let m = rest.eval(x, y)?;
        let base = if l == Letter::X { 0 } else { 16 };
        for r in 0..2 {
            for c in 0..2 {
                let q = m.get(c, r);
                let re = [q.a.clone(), -q.b.clone(), -q.c.clone(), -q.d.clone()];
                for (u, v) in re.into_iter().enumerate() {
                    let slot = &mut g[base + (2 * r + c) * 4 + u];
                    *slot += v.clone() + v;
                }
            }
        }
    }
    Ok(g)
}

/// Exact Jacobian: one row per polynomial, one column per coordinate
/// (entries of `x` then `y`, row-major, coefficients `1, 𝗂, 𝗃, 𝗄`).
pub fn jacobian(fs: &[TracePolynomial], x: &QMatrix<Rational>, y: &QMatrix<Rational>) -> Result<Vec<Vec<Rational>>> {
    x.require_size(2)?;
    y.require_size(2).map_err(|_| Error::ShapeMismatch)?;
    fs.iter()
        .map(|f| {
            let mut row = alloc::vec![Rational::zero(); COORDS];
            for (factors, c) in f.terms() {
                let values: Vec<Rational> = factors.iter().map(|w| w.eval(x, y).map(|m| m.trace())).collect::<Result<_>>()?;
                for (i, w) in factors.iter().enumerate() {
                    let others = values.iter().enumerate().filter(|(j, _)| *j != i).fold(c.clone(), |acc, (_, v)| acc * v);
                    if others.is_zero() {
                        continue;
                    }
                    for (r, gi) in row.iter_mut().zip(trace_gradient(w, x, y)?) {
                        *r += &others * gi;
                    }
                }
            }
            Ok(row)
        })
        .collect()
}

pub fn jacobian_rank(fs: &[TracePolynomial], x: &QMatrix<Rational>, y: &QMatrix<Rational>) -> Result<usize> {
    Ok(rank_exact(&jacobian(fs, x, y)?))
}
