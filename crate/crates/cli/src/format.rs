//! JSON encodings of quaternions and quaternionic matrices.
//!
//! A quaternion is `[a, b, c, d]`. Each coefficient is a JSON number or a
//! string `"p/q"`; strings are exact, and exact output always uses strings.

use quatlab_core::{QMatrix, Quaternion, Rational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

/// A scalar with a JSON encoding.
pub trait JsonScalar: Sized {
    fn from_json(v: &Value) -> Result<Self, CliError>;
    fn to_json(&self) -> Value;
}

impl JsonScalar for f64 {
    fn from_json(v: &Value) -> Result<Self, CliError> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| CliError::input(format!("number {n} is out of range"))),
            Value::String(s) => Ok(quatlab_core::scalar::rational_to_f64(&parse_rational(s)?)),
            other => Err(CliError::input(format!("expected a number or \"p/q\" string, found {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
}

impl JsonScalar for Rational {
    fn from_json(v: &Value) -> Result<Self, CliError> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rational::from_integer(i.into()))
                } else if let Some(u) = n.as_u64() {
                    Ok(Rational::from_integer(u.into()))
                } else {
                    Err(CliError::input(format!("{n} is not an integer; write non-integers as \"p/q\" in exact mode")))
                }
            }
            other => Err(CliError::input(format!("expected an integer or \"p/q\" string, found {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|e| CliError::input(format!("bad rational {s:?}: {e}")))
}

pub fn quat_from_json<T: JsonScalar>(v: &Value) -> Result<Quaternion<T>, CliError> {
    let Value::Array(cs) = v else {
        return Err(CliError::input(format!("expected a quaternion [a, b, c, d], found {v}")));
    };
    let [a, b, c, d] = cs.as_slice() else {
        return Err(CliError::input(format!("a quaternion has 4 coefficients, found {}", cs.len())));
    };
    Ok(Quaternion { a: T::from_json(a)?, b: T::from_json(b)?, c: T::from_json(c)?, d: T::from_json(d)? })
}

pub fn quat_to_json<T: JsonScalar>(q: &Quaternion<T>) -> Value {
    Value::Array(vec![q.a.to_json(), q.b.to_json(), q.c.to_json(), q.d.to_json()])
}

/// `{"rows": n, "cols": m, "entries": [[a,b,c,d], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Value>,
}

impl MatrixJson {
    pub fn encode<T: JsonScalar + Scalar>(m: &QMatrix<T>) -> Self {
        MatrixJson { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(quat_to_json).collect() }
    }

    pub fn decode<T: JsonScalar + Scalar>(&self) -> Result<QMatrix<T>, CliError> {
        if self.entries.len() != self.rows * self.cols {
            return Err(CliError::input(format!(
                "{}x{} matrix needs {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            )));
        }
        let entries = self.entries.iter().map(quat_from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(QMatrix::new(self.rows, self.cols, entries)?)
    }

    /// Every coefficient has an exact reading.
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|q| match q {
            Value::Array(cs) => cs.iter().all(|c| Rational::from_json(c).is_ok()),
            _ => false,
        })
    }
}

pub fn matrix_from_value(v: &Value) -> Result<MatrixJson, CliError> {
    MatrixJson::deserialize(v).map_err(|e| CliError::input(format!("bad matrix: {e}")))
}

/// Exact when asked, or when `mode` is unset and every entry is exact.
pub fn resolve_mode(mode: Option<Mode>, ms: &[&MatrixJson]) -> Mode {
    mode.unwrap_or(if ms.iter().all(|m| m.is_exact()) { Mode::Exact } else { Mode::Float })
}
