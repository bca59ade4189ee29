use std::path::Path;

use num_traits::Zero;
use quatlab_core::canon::{canonical_form, invariants, sp2_equivalent, sp2_equivalent_with_tolerance, table1_witnesses, INVARIANT_REL_TOL};
use quatlab_core::ideal::{bidegree_table, jacobian_rank, msg_steps, table2_generators, IdealConfig};
use quatlab_core::qmat::{eigenvalues, random};
use quatlab_core::triangular::{algebra_closure, is_quasi_triangularizable_with_max, outside_pair, w2_membership};
use quatlab_core::words::identities::{check_one_param_identity, check_prop42, cident_sweep, qident_sweep, Prop42Case};
use quatlab_core::{CMatrix, QMatrix, Rational};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::format::{matrix_from_value, resolve_mode, JsonScalar, MatrixJson, Mode};
use crate::schema::*;
use crate::{Cli, Command, Format};

/// Default pair count for `identities`.
const IDENTITY_SAMPLES: usize = 100;
const ONE_PARAM_TOL: f64 = 1e-10;

#[derive(Serialize)]
struct Table1Csv {
    row: usize,
    /// `;`-separated invariant indices.
    differing: String,
    exact: bool,
    passed: bool,
}

#[derive(Serialize)]
struct RankCsv {
    rank: usize,
}

/// Rendered output and the verdict of predicate commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    /// `false` exactly when a predicate command answers no.
    pub holds: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(&name, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{name}: {e}")))
}

fn read_matrix(path: &Path) -> Result<MatrixJson, CliError> {
    matrix_from_value(&read_json(path)?).map_err(|e| CliError::input(format!("{}: {}", path.display(), e.message)))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn csv<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn render<T: Serialize, R: Serialize>(cli: &Cli, out: &T, rows: Option<&[R]>) -> Result<String, CliError> {
    match (cli.format, rows) {
        (Format::Json, _) => Ok(json(out)),
        (Format::Csv, Some(rows)) => csv(rows),
        (Format::Csv, None) => Err(CliError::input(format!("{} has no CSV output", cli.command.name()))),
    }
}

fn render_json<T: Serialize>(cli: &Cli, out: &T) -> Result<String, CliError> {
    render::<T, ()>(cli, out, None)
}

fn ideal_config(cli: &Cli, max_total: usize) -> IdealConfig {
    IdealConfig { seed: cli.seed, samples: cli.samples, max_total, ..IdealConfig::default() }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ok = |text| Ok(Outcome { text, holds: true });
    match &cli.command {
        Command::Canon { matrix } => ok(canon(cli, &read_matrix(matrix)?)?),
        Command::Equiv { a, b } => equiv(cli, &read_matrix(a)?, &read_matrix(b)?),
        Command::Eig { matrix } => {
            let a: QMatrix<f64> = read_matrix(matrix)?.decode()?;
            let out = EigOut { eigenvalues: eigenvalues(&a)?.values().iter().map(|z| [z.re, z.im]).collect() };
            ok(render_json(cli, &out)?)
        }
        Command::W2 { a, b } => {
            let (a, b): (QMatrix<f64>, QMatrix<f64>) = (read_matrix(a)?.decode()?, read_matrix(b)?.decode()?);
            let v = w2_membership(&a, &b)?;
            let out =
                W2Out { member: v.member, case: v.case.name().into(), swapped: v.swapped, witness: v.witness.as_ref().map(MatrixJson::encode) };
            Ok(Outcome { text: render_json(cli, &out)?, holds: v.member })
        }
        Command::Qt { generators, max_dim } => qt(cli, generators, *max_dim),
        Command::Identities { max_exp } => identities(cli, *max_exp),
        Command::Dims => {
            let table = bidegree_table(&ideal_config(cli, cli.max_total.unwrap_or(8)))?;
            let entries: Vec<DimsRow> = table
                .entries()
                .map(|e| DimsRow {
                    k: e.k,
                    l: e.l,
                    monomials: e.monomials,
                    span_dim: e.span_dim,
                    w2_rank: e.w2_rank,
                    d: e.d,
                    samples_used: e.samples_used,
                    rank_stable: e.rank_stable,
                })
                .collect();
            let out = DimsOut { max_total: cli.max_total.unwrap_or(8), seed: cli.seed, entries };
            ok(render(cli, &out, Some(&out.entries))?)
        }
        Command::Msg { m } => {
            let steps = msg_steps(*m, &ideal_config(cli, cli.max_total.unwrap_or(*m)))?;
            let counts: Vec<CountRow> =
                steps.iter().flat_map(|s| s.counts().into_iter().map(|((k, l), count)| CountRow { m: s.m, k, l, count })).collect();
            let generators: Vec<GeneratorOut> = steps
                .iter()
                .flat_map(|s| s.generators.iter())
                .map(|g| GeneratorOut { k: g.bidegree.0, l: g.bidegree.1, poly: g.poly.to_string() })
                .collect();
            let out = MsgOut { m: *m, seed: cli.seed, total: generators.len(), counts, generators };
            ok(render(cli, &out, Some(&out.counts))?)
        }
        Command::Jacobian { point, generators } => jacobian(cli, point, generators),
        Command::Table1 => {
            let rows: Vec<Table1Row> = table1_witnesses()
                .iter()
                .map(|w| {
                    let r = w.check();
                    Table1Row { row: r.row, passed: r.passed(), differing: r.differing, exact: r.exact }
                })
                .collect();
            let out = Table1Out { passed: rows.iter().all(|r| r.passed), rows };
            let flat: Vec<Table1Csv> = out
                .rows
                .iter()
                .map(|r| Table1Csv {
                    row: r.row,
                    differing: r.differing.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";"),
                    exact: r.exact,
                    passed: r.passed,
                })
                .collect();
            Ok(Outcome { text: render(cli, &out, Some(&flat))?, holds: out.passed })
        }
        Command::Problem83 => problem83(cli),
    }
}

fn canon(cli: &Cli, m: &MatrixJson) -> Result<String, CliError> {
    let a: QMatrix<f64> = m.decode()?;
    let c = canonical_form(&a)?;
    let p: Vec<Value> = match resolve_mode(cli.mode, &[m]) {
        Mode::Exact => invariants(&m.decode::<Rational>()?)?.p.iter().map(JsonScalar::to_json).collect(),
        Mode::Float => invariants(&a)?.p.iter().map(JsonScalar::to_json).collect(),
    };
    let f = &c.form;
    let out = CanonOut {
        alpha: [f.alpha.re, f.alpha.im],
        beta: [f.beta.re, f.beta.im],
        z1: f.z1,
        z3: f.z3,
        p,
        unitary: MatrixJson::encode(&c.unitary),
        residual: c.residual(&a),
    };
    render_json(cli, &out)
}

fn equiv(cli: &Cli, a: &MatrixJson, b: &MatrixJson) -> Result<Outcome, CliError> {
    let (e, exact) = match resolve_mode(cli.mode, &[a, b]) {
        Mode::Exact => (sp2_equivalent::<Rational>(&a.decode()?, &b.decode()?)?, true),
        Mode::Float => {
            let rel = cli.tolerance.unwrap_or(INVARIANT_REL_TOL);
            (sp2_equivalent_with_tolerance::<f64>(&a.decode()?, &b.decode()?, rel)?, false)
        }
    };
    let out = EquivOut { equivalent: e.equivalent, differing_invariants: e.differing, exact };
    Ok(Outcome { text: render_json(cli, &out)?, holds: out.equivalent })
}

fn qt(cli: &Cli, path: &Path, max_dim: usize) -> Result<Outcome, CliError> {
    let Value::Array(items) = read_json(path)? else {
        return Err(CliError::input("expected a JSON array of generator matrices"));
    };
    if cli.mode == Some(Mode::Float) {
        return Err(CliError::input("qt is exact only"));
    }
    let gens = items.iter().map(|v| matrix_from_value(v)?.decode::<Rational>()).collect::<Result<Vec<_>, _>>()?;
    let Some(n) = gens.first().map(|g| g.rows()) else {
        return Err(CliError::input("no generators"));
    };
    let basis = algebra_closure(n, &gens)?;
    let d = is_quasi_triangularizable_with_max(&basis, max_dim, &mut ChaCha8Rng::seed_from_u64(cli.seed))?;
    let out = QtOut {
        dimension: d.dimension,
        quasi_triangularizable: d.quasi_triangularizable,
        witness_pair: d.witness.map(|(a, b, v)| WitnessPair { a: MatrixJson::encode(&a), b: MatrixJson::encode(&b), value: v.to_string() }),
    };
    Ok(Outcome { text: render_json(cli, &out)?, holds: out.quasi_triangularizable })
}

fn identities(cli: &Cli, max_exp: usize) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let samples = cli.samples.unwrap_or(IDENTITY_SAMPLES);
    let mut violations = Vec::new();
    let mut checked = 0;
    let exact = cli.mode != Some(Mode::Float);
    let mut max_residual = None;
    if exact {
        if cli.tolerance.is_some() {
            return Err(CliError::input("--tolerance applies to float mode only"));
        }
        for i in 0..samples {
            let x = random::exact_quat(&mut rng, 5);
            let y = random::exact_quat(&mut rng, 5);
            for (exponents, d) in qident_sweep(max_exp, &x, &y) {
                checked += 1;
                if !d.is_zero() {
                    violations.push(Violation { family: "quaternion".into(), sample: i, exponents, residual: d.to_string() });
                }
            }
        }
        let gauss = |rng: &mut ChaCha8Rng| {
            let e = (0..4).map(|_| Complex::new(random::small_rational(rng, 5), random::small_rational(rng, 5))).collect();
            CMatrix::<Rational>::new(2, 2, e).expect("2x2")
        };
        for i in 0..samples {
            let x = gauss(&mut rng);
            let y = gauss(&mut rng);
            for (exponents, d) in cident_sweep(max_exp, &x, &y)? {
                checked += 1;
                if !d.is_zero() {
                    violations.push(Violation { family: "complex".into(), sample: i, exponents, residual: d.to_string() });
                }
            }
        }
    } else {
        let tol = cli.tolerance.unwrap_or(ONE_PARAM_TOL);
        let mut worst: f64 = 0.0;
        let mut record = |family: &str, sample: usize, r: f64, violations: &mut Vec<Violation>| {
            worst = worst.max(r);
            if !(r <= tol) {
                violations.push(Violation { family: family.into(), sample, exponents: Vec::new(), residual: r.to_string() });
            }
        };
        for i in 0..samples {
            let p = random::unit_pure(&mut rng);
            let q = random::unit_pure(&mut rng);
            let k = rng.gen_range(1..=4);
            let s: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let t: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
            record("unit", i, check_one_param_identity(&p, &q, &s, &t)?, &mut violations);
            let p = random::quat(&mut rng).pure_part();
            let q = random::quat(&mut rng).pure_part();
            let (r, s, t) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            record("equal-pair", i, check_prop42(&p, &q, Prop42Case::A { s, t })?, &mut violations);
            record("equal-triple", i, check_prop42(&p, &q, Prop42Case::B { r, s: r, t })?, &mut violations);
            checked += 3;
        }
        max_residual = Some(worst);
    }
    let out = IdentitiesOut { exact, seed: cli.seed, samples, checked, max_residual, violations };
    Ok(Outcome { text: render_json(cli, &out)?, holds: out.violations.is_empty() })
}

fn jacobian(cli: &Cli, point: &Path, names: &[String]) -> Result<Outcome, CliError> {
    let v = read_json(point)?;
    let field = |key: &str| {
        v.get(key).ok_or_else(|| CliError::input(format!("point file needs \"x\" and \"y\" matrices, missing {key:?}")))
    };
    let x: QMatrix<Rational> = matrix_from_value(field("x")?)?.decode()?;
    let y: QMatrix<Rational> = matrix_from_value(field("y")?)?.decode()?;
    let set = table2_generators();
    let fs = names
        .iter()
        .map(|n| set.get(n).map(|g| g.poly.clone()).ok_or_else(|| CliError::input(format!("unknown generator {n:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let out = JacobianOut { generators: names.to_vec(), rank: jacobian_rank(&fs, &x, &y)? };
    Ok(Outcome { text: render(cli, &out, Some(&[RankCsv { rank: out.rank }]))?, holds: true })
}

fn problem83(cli: &Cli) -> Result<Outcome, CliError> {
    let (a, b) = outside_pair();
    let values = table2_generators()
        .iter()
        .map(|g| {
            Ok(GeneratorValue { name: g.name.into(), k: g.bidegree.0, l: g.bidegree.1, value: g.poly.eval(&a, &b)?.to_string() })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let all_vanish = values.iter().all(|v| v.value == "0");
    let member = w2_membership(&a.to_f64(), &b.to_f64())?.member;
    let out = Problem83Out { a: MatrixJson::encode(&a), b: MatrixJson::encode(&b), all_vanish, member, values };
    Ok(Outcome { text: render(cli, &out, Some(&out.values))?, holds: all_vanish && !member })
}
