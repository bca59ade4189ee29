use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::scalar::{Rational, Scalar};
use crate::triangular::tr_comm_cube;
use crate::words::{parse_trace, Letter, TracePolynomial};

/// Generators of the vanishing ideal up to total degree nine, with their
/// bidegrees.
const TABLE2: [(&str, &str, (usize, usize)); 17] = [
    ("f1", "Tr(xy^2x[x,y])", (3, 3)),
    ("f2", "Tr(xy^3x[x,y])", (3, 4)),
    ("f3", "Tr(yx^3y[x,y])", (4, 3)),
    ("f4", "Tr(y^2x^2y^2[x,y])", (3, 5)),
    ("f5", "Tr(xy^3x[x^2,y])", (4, 4)),
    ("f6", "Tr([x,y][[x^2,y],[x,y^2]])", (4, 4)),
    ("f7", "Tr(x^2y^2x^2[x,y])", (5, 3)),
    ("f8", "Tr(yxy^3xy[x,y])", (3, 6)),
    ("f9", "Tr([[x,y],y]^3)", (3, 6)),
    ("f10", "Tr(y^2x^3y^2[x,y])", (4, 5)),
    ("f11", "Tr([x,y][x,y^2][x^2,y^2])", (4, 5)),
    ("f12", "Tr([[x,y],x][[x,y],y]^2)", (4, 5)),
    ("f13", "Tr(x^2y^3x^2[x,y])", (5, 4)),
    ("f14", "Tr([x,y][x^2,y][x^2,y^2])", (5, 4)),
    ("f15", "Tr([[x,y],y][[x,y],x]^2)", (5, 4)),
    ("f16", "Tr(xyx^3yx[x,y])", (6, 3)),
    ("f17", "Tr([[x,y],x]^3)", (6, 3)),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGenerator {
    pub name: &'static str,
    pub source: &'static str,
    pub bidegree: (usize, usize),
    pub poly: TracePolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<NamedGenerator>,
}

impl GeneratorSet {
    pub fn get(&self, name: &str) -> Option<&NamedGenerator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &NamedGenerator> {
        self.generators.iter()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `f₁, …, f₁₇`.
pub fn table2_generators() -> GeneratorSet {
    let generators = TABLE2
        .iter()
        .map(|&(name, source, bidegree)| NamedGenerator {
            name,
            source,
            bidegree,
            poly: parse_trace(source).expect("generator table parses"),
        })
        .collect();
    GeneratorSet { generators }
}

type Pair = (QMatrix<Rational>, QMatrix<Rational>);

fn value_at<T: Scalar>(f: &TracePolynomial, x: &QMatrix<T>, y: &QMatrix<T>, coef: impl Fn(&Rational) -> T) -> T {
    f.eval_by(|w| w.eval(x, y).expect("2x2 pair").trace(), coef)
}

/// `f` is exactly zero at every pair. A bihomogeneous `f` is evaluated at
/// integer rescalings of the pairs, which does not change vanishing.
pub fn vanishes_on(f: &TracePolynomial, samples: &[Pair]) -> Result<bool> {
    for (x, y) in samples {
        let n = x.require_square()?;
        y.require_size(n).map_err(|_| Error::ShapeMismatch)?;
    }
    if f.bidegree().is_none() {
        return Ok(samples.iter().all(|(x, y)| value_at(f, x, y, Rational::clone).is_zero()));
    }
    let lcm = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = Rational::from_integer(lcm);
    Ok(samples.iter().all(|(x, y)| {
        let (_, xi) = x.clear_denominators();
        let (_, yi) = y.clear_denominators();
        value_at(f, &xi, &yi, |c| (c * &scale).to_integer()).is_zero()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub name: String,
    /// Every term has the declared bidegree.
    pub bidegree_ok: bool,
    pub vanishes: bool,
    pub samples: usize,
}

impl GeneratorCheck {
    pub fn passed(&self) -> bool {
        self.bidegree_ok && self.vanishes
    }
}

pub fn check_generator(g: &NamedGenerator, samples: &[Pair]) -> Result<GeneratorCheck> {
    Ok(GeneratorCheck {
        name: g.name.into(),
        bidegree_ok: g.poly.bidegree() == Some(g.bidegree),
        vanishes: vanishes_on(&g.poly, samples)?,
        samples: samples.len(),
    })
}

/// `∂p/∂var`, after confirming that `p` and the result vanish on `samples`.
pub fn derive_generator(p: &TracePolynomial, var: Letter, samples: &[Pair]) -> Result<TracePolynomial> {
    if !vanishes_on(p, samples)? {
        return Err(Error::NotInIdeal);
    }
    let d = p.partial_derivative(var);
    if !vanishes_on(&d, samples)? {
        return Err(Error::NotInIdeal);
    }
    Ok(d)
}

/// `3·f₁(A,B) + Tr([A,B]³)`, zero for every pair.
pub fn eq5_bridge_residual(a: &QMatrix<Rational>, b: &QMatrix<Rational>) -> Result<Rational> {
    let f1 = parse_trace(TABLE2[0].1)?;
    Ok(f1.eval(a, b)? * Rational::from_i64(3) + tr_comm_cube(a, b)?)
}
