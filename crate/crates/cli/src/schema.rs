//! JSON output of every command. Field order is the serialization order.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::format::MatrixJson;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonOut {
    /// `[re, im]`, upper half plane.
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub z1: f64,
    pub z3: f64,
    /// `p1..p6`; strings in exact mode.
    pub p: Vec<Value>,
    pub unitary: MatrixJson,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivOut {
    pub equivalent: bool,
    pub differing_invariants: Vec<usize>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigOut {
    pub eigenvalues: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct W2Out {
    pub member: bool,
    pub case: String,
    pub swapped: bool,
    pub witness: Option<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub a: MatrixJson,
    pub b: MatrixJson,
    /// `Tr([a,b]³)`.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QtOut {
    pub dimension: usize,
    pub quasi_triangularizable: bool,
    pub witness_pair: Option<WitnessPair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub family: String,
    pub sample: usize,
    pub exponents: Vec<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentitiesOut {
    pub exact: bool,
    pub seed: u64,
    pub samples: usize,
    pub checked: usize,
    /// Largest residual in float mode.
    pub max_residual: Option<f64>,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimsRow {
    pub k: usize,
    pub l: usize,
    pub monomials: usize,
    pub span_dim: usize,
    pub w2_rank: usize,
    pub d: usize,
    pub samples_used: usize,
    pub rank_stable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimsOut {
    pub max_total: usize,
    pub seed: u64,
    pub entries: Vec<DimsRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorOut {
    pub k: usize,
    pub l: usize,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MsgOut {
    pub m: usize,
    pub seed: u64,
    pub total: usize,
    pub counts: Vec<CountRow>,
    pub generators: Vec<GeneratorOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobianOut {
    pub generators: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub row: usize,
    pub differing: Vec<usize>,
    pub exact: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Out {
    pub passed: bool,
    pub rows: Vec<Table1Row>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorValue {
    pub name: String,
    pub k: usize,
    pub l: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Problem83Out {
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub all_vanish: bool,
    pub member: bool,
    pub values: Vec<GeneratorValue>,
}
