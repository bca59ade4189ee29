//! Acceptance suite: one PASS/FAIL line per criterion, with the runtime
//! budget of each criterion enforced. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use num_traits::Zero;
use quatlab_core::canon::{canonical_form, sp2_equivalent, table1_witnesses};
use quatlab_core::ideal::{
    bidegree_table, jacobian_rank, msg_steps, sample_generic, sample_w2, table2_generators, vanishes_on, IdealConfig,
};
use quatlab_core::qmat::random;
use quatlab_core::scalar::rat;
use quatlab_core::triangular::{
    algebra_closure, fiber_check, friedland_check, is_quasi_triangularizable, is_quasi_triangularizable_with_max,
    outside_pair, pure_imaginary_eig_check_float, quaternion_cube_witness, real3_cube_witness, real_square_witness,
    sample_wn, tr_comm_cube, tr_comm_square, validates_witness, w2_membership, wn_property_suite, AlgebraBasis,
};
use quatlab_core::words::identities::{
    check_one_param_identity, check_prop42, cident_sweep, non_unit_witness, qident_sweep, sweep_exponents,
    Prop42Case,
};
use quatlab_core::{CMatrix, QMatrix, Quaternion, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Q = Quaternion<f64>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn conj(g: &QMatrix<f64>, a: &QMatrix<f64>) -> QMatrix<f64> {
    &(g * a) * &g.inverse().expect("invertible")
}

fn table1() -> Outcome {
    let mut notes = Vec::new();
    for row in table1_witnesses() {
        let r = row.check();
        ensure(r.passed(), || format!("row {} differs at {:?}", r.row, r.differing))?;
        notes.push(format!("p{}", r.row));
    }
    Ok(format!("each row separated only by {}", notes.join(",")))
}

fn sp2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let a = random::random_matrix(&mut rng, 2);
        let u = random::random_unitary(&mut rng, 2);
        let b = &(&u * &a) * &u.adjoint();
        let e = sp2_equivalent(&a, &b).map_err(|e| e.to_string())?;
        ensure(e.equivalent, || format!("pair {i}: conjugates reported inequivalent at {:?}", e.differing))?;
        let c = canonical_form(&a).map_err(|e| e.to_string())?;
        worst = worst.max(c.residual(&a));
    }
    ensure(worst < 1e-8, || format!("canonical residual {worst:e}"))?;
    for i in 0..1000 {
        let a = random::random_matrix(&mut rng, 2);
        let u = random::random_unitary(&mut rng, 2);
        let mut b = &(&u * &a) * &u.adjoint();
        let (r, c) = (rng.gen_range(0..2), rng.gen_range(0..2));
        let bump = random::quat(&mut rng).scale(&1e-3);
        b.set(r, c, b.get(r, c) + &bump);
        let e = sp2_equivalent(&a, &b).map_err(|e| e.to_string())?;
        ensure(!e.equivalent, || format!("perturbed pair {i} reported equivalent"))?;
    }
    Ok(format!("1000 + 1000 pairs, canonical residual {worst:.1e}"))
}

fn trace_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let exps = sweep_exponents(5);
    for i in 0..1000 {
        let x = random::exact_quat(&mut rng, 5);
        let y = random::exact_quat(&mut rng, 5);
        for (e, d) in qident_sweep(5, &x, &y) {
            ensure(d.is_zero(), || format!("quaternion pair {i}, exponents {e:?}: {d}"))?;
        }
    }
    let gauss = |rng: &mut ChaCha8Rng| {
        let e = (0..4).map(|_| Complex::new(random::small_rational(rng, 5), random::small_rational(rng, 5))).collect();
        CMatrix::<Rational>::new(2, 2, e).expect("2x2")
    };
    for i in 0..500 {
        let x = gauss(&mut rng);
        let y = gauss(&mut rng);
        for (e, d) in cident_sweep(5, &x, &y).map_err(|e| e.to_string())? {
            ensure(d.is_zero(), || format!("complex pair {i}, exponents {e:?}"))?;
        }
    }
    let triples = exps.iter().filter(|e| e.len() == 3).count();
    Ok(format!("1000 quaternion + 500 complex pairs, 36 pairs and {triples} triples of exponents"))
}

fn one_parameter() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let p = random::unit_pure(&mut rng);
        let q = random::unit_pure(&mut rng);
        let k = rng.gen_range(1..=4);
        let s: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let t: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
        worst = worst.max(check_one_param_identity(&p, &q, &s, &t).map_err(|e| e.to_string())?);
    }
    let mut worst42: f64 = 0.0;
    for _ in 0..500 {
        let p = random::unit_pure(&mut rng).scale(&rng.gen_range(0.2..3.0));
        let q = random::unit_pure(&mut rng).scale(&rng.gen_range(0.2..3.0));
        let a = Prop42Case::A { s: rng.gen_range(-3.0..3.0), t: rng.gen_range(-3.0..3.0) };
        let r = rng.gen_range(-3.0..3.0);
        let b = Prop42Case::B { r, s: r, t: rng.gen_range(-3.0..3.0) };
        for case in [a, b] {
            worst42 = worst42.max(check_prop42(&p, &q, case).map_err(|e| e.to_string())?);
        }
    }
    let (_, _, _, _, gap) = non_unit_witness();
    ensure(worst < 1e-10, || format!("unit residual {worst:e}"))?;
    ensure(worst42 < 1e-10, || format!("equal-parameter residual {worst42:e}"))?;
    ensure(gap > 1e-3, || format!("non-unit witness only fails by {gap:e}"))?;
    Ok(format!("max residuals {worst:.1e} / {worst42:.1e}; non-unit witness fails by {gap:.3}"))
}

fn witnesses() -> Outcome {
    let (a, b) = real_square_witness();
    let sq = tr_comm_square(&a, &b).map_err(|e| e.to_string())?;
    let (a, b) = quaternion_cube_witness();
    let qc = tr_comm_cube(&a, &b).map_err(|e| e.to_string())?;
    let (a, b) = real3_cube_witness();
    let rc = tr_comm_cube(&a, &b).map_err(|e| e.to_string())?;
    let summary = format!("square {sq}, quaternionic cube {qc}, real 3x3 cube {rc}");
    ensure(sq == rat(4, 1) && qc == rat(-4, 1) && rc == rat(-6, 1), || format!("{summary}; expected 4, -4, -6"))?;
    Ok(summary)
}

fn e(r: usize, c: usize, u: [i64; 4]) -> QMatrix<Rational> {
    QMatrix::unit(2, 2, r, c, Quaternion::from_i64s(u[0], u[1], u[2], u[3]))
}

const UNITS: [[i64; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

fn samples_agree(basis: &AlgebraBasis, expect_zero: bool, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut nonzero = 0;
    for _ in 0..500 {
        let a = basis.random_element(rng, 3);
        let b = basis.random_element(rng, 3);
        if !tr_comm_cube(&a, &b).map_err(|e| e.to_string())?.is_zero() {
            nonzero += 1;
        }
    }
    ensure(if expect_zero { nonzero == 0 } else { nonzero > 0 }, || format!("{nonzero} nonzero samples"))
}

fn qt() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let upper: Vec<_> = [(0, 0), (0, 1), (1, 1)].iter().flat_map(|&(r, c)| UNITS.iter().map(move |&u| e(r, c, u))).collect();
    let mut decided = 0;
    for _ in 0..3 {
        let g = random::exact_invertible(&mut rng, 2, 3);
        let gens: Vec<_> = upper.iter().map(|m| m.conjugate_by(&g).expect("invertible")).collect();
        let basis = algebra_closure(2, &gens).map_err(|e| e.to_string())?;
        let d = is_quasi_triangularizable(&basis, &mut rng).map_err(|e| e.to_string())?;
        ensure(d.quasi_triangularizable, || "conjugated upper triangular closure rejected".into())?;
        samples_agree(&basis, true, &mut rng)?;
        decided += 1;
    }
    let complex: Vec<_> =
        [(0, 0), (0, 1), (1, 0), (1, 1)].iter().flat_map(|&(r, c)| UNITS[..2].iter().map(move |&u| e(r, c, u))).collect();
    let basis = algebra_closure(2, &complex).map_err(|e| e.to_string())?;
    let d = is_quasi_triangularizable(&basis, &mut rng).map_err(|e| e.to_string())?;
    ensure(d.quasi_triangularizable, || "complex block algebra rejected".into())?;
    samples_agree(&basis, true, &mut rng)?;
    let (a, b) = quaternion_cube_witness();
    let full = algebra_closure(2, &[a, b]).map_err(|e| e.to_string())?;
    let d = is_quasi_triangularizable_with_max(&full, 16, &mut rng).map_err(|e| e.to_string())?;
    ensure(!d.quasi_triangularizable, || "closure of the quaternionic witness accepted".into())?;
    samples_agree(&full, false, &mut rng)?;
    Ok(format!("{} true, 1 false (dimension {}), all matching 500 samples", decided + 1, full.dim()))
}

fn w2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let (a, b) = sample_wn(&mut rng, 2, 5);
        let (a, b) = (a.to_f64(), b.to_f64());
        let v = w2_membership(&a, &b).map_err(|e| e.to_string())?;
        ensure(v.member, || format!("member {i} rejected"))?;
        let w = v.witness.ok_or_else(|| format!("member {i} without witness"))?;
        ensure(validates_witness(&w, &[&a, &b], 1e-7), || format!("witness {i} does not triangularize"))?;
    }
    for i in 0..200 {
        let (a, b) = if i % 2 == 0 {
            let (a, b) = sample_wn(&mut rng, 2, 5);
            (a.to_f64(), b.to_f64())
        } else {
            (random::random_matrix(&mut rng, 2), random::random_matrix(&mut rng, 2))
        };
        let g = random::random_invertible(&mut rng, 2);
        let v1 = w2_membership(&a, &b).map_err(|e| e.to_string())?;
        let v2 = w2_membership(&conj(&g, &a), &conj(&g, &b)).map_err(|e| e.to_string())?;
        ensure(v1.member == v2.member, || format!("conjugation {i} changed the verdict"))?;
    }
    let (a, b) = outside_pair();
    let v = w2_membership(&a.to_f64(), &b.to_f64()).map_err(|e| e.to_string())?;
    ensure(!v.member, || "outside pair accepted".into())?;
    for i in 0..500 {
        let a = QMatrix::diag(&[random::quat(&mut rng), random::quat(&mut rng)]);
        let mut b = random::random_matrix(&mut rng, 2);
        match i % 3 {
            0 => b.set(1, 0, Q::zero()),
            1 => b.set(0, 1, Q::zero()),
            _ => {}
        }
        let f = fiber_check(&a, &b, 0.0).map_err(|e| e.to_string())?;
        let m = w2_membership(&a, &b).map_err(|e| e.to_string())?.member;
        ensure(f == m, || format!("fiber instance {i}: fiber {f}, membership {m}"))?;
    }
    Ok("1000 members, 200 conjugations, outside pair rejected, 500 fiber instances".into())
}

fn wn_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for (n, count) in [(2, 500), (3, 100)] {
        for i in 0..count {
            let (x, y) = sample_wn(&mut rng, n, 3);
            let r = wn_property_suite(&x, &y, 3, 3, 0.0).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("n={n} sample {i}: {:?}", r.violations))?;
            checked += r.checked;
        }
    }
    Ok(format!("{checked} exact checks"))
}

fn friedland() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let gauss = |rng: &mut ChaCha8Rng| {
        let e = (0..4).map(|_| Complex::new(random::small_integer(rng, 3), random::small_integer(rng, 3))).collect();
        CMatrix::<Rational>::new(2, 2, e).expect("2x2")
    };
    let (mut members, mut others) = (0, 0);
    while members + others < 1000 {
        let (a, b) = if (members + others) % 2 == 0 {
            let s = gauss(&mut rng);
            let det = s.get(0, 0) * s.get(1, 1) - s.get(0, 1) * s.get(1, 0);
            if det.is_zero() {
                continue;
            }
            let si = CMatrix::new(2, 2, vec![s.get(1, 1) / &det, -(s.get(0, 1) / &det), -(s.get(1, 0) / &det), s.get(0, 0) / &det])
                .expect("2x2");
            let mut t1 = gauss(&mut rng);
            let mut t2 = gauss(&mut rng);
            t1.set(1, 0, Complex::zero());
            t2.set(1, 0, Complex::zero());
            (&(&s * &t1) * &si, &(&s * &t2) * &si)
        } else {
            (gauss(&mut rng), gauss(&mut rng))
        };
        let r = friedland_check(&a, &b).map_err(|e| e.to_string())?;
        ensure(r.all_agree(), || format!("conditions disagree: {r:?}"))?;
        if r.a {
            members += 1
        } else {
            others += 1
        }
    }
    let mut pure_count = 0;
    for i in 0..1000 {
        let m = if i % 2 == 0 {
            let mut t = random::random_upper(&mut rng, 2);
            for k in 0..2 {
                let mut d = t.get(k, k).clone();
                d.a = 0.0;
                t.set(k, k, d);
            }
            let u = random::random_unitary(&mut rng, 2);
            &(&u * &t) * &u.adjoint()
        } else {
            random::random_matrix(&mut rng, 2)
        };
        let (r, pure) = pure_imaginary_eig_check_float(&m, 1e-7).map_err(|e| e.to_string())?;
        ensure(r.holds() == pure, || format!("sample {i}: conditions {} but spectrum pure = {pure}", r.holds()))?;
        ensure(i % 2 == 1 || pure, || format!("constructed sample {i} has a non-pure eigenvalue"))?;
        pure_count += pure as usize;
    }
    Ok(format!("{members} common-eigenvector pairs, {others} others; {pure_count}/1000 pure spectra"))
}

fn figure1() -> Outcome {
    let run = |seed| bidegree_table(&IdealConfig { seed, max_total: 8, ..IdealConfig::default() }).map_err(|e| e.to_string());
    let t1 = run(1)?;
    let t2 = run(2)?;
    for e in t1.entries() {
        ensure(t2.d(e.k, e.l) == Some(e.d), || format!("seed dependence at ({},{})", e.k, e.l))?;
        if e.k + e.l < 6 {
            ensure(e.d == 0, || format!("d({},{}) = {}", e.k, e.l, e.d))?;
        }
    }
    let expected = [((3, 3), 1), ((3, 4), 2), ((4, 3), 2), ((3, 5), 4), ((5, 3), 4), ((4, 4), 6)];
    for ((k, l), d) in expected {
        ensure(t1.d(k, l) == Some(d), || format!("d({k},{l}) = {:?}, expected {d}", t1.d(k, l)))?;
    }
    let stable = t1.entries().chain(t2.entries()).all(|e| e.rank_stable);
    let row: Vec<String> = (0..=8).map(|k| format!("{}", t1.d(k, 8 - k).unwrap_or(0))).collect();
    Ok(format!("two seeds agree, primes agree: {stable}; total degree 8 row {}", row.join(" ")))
}

fn table2() -> Outcome {
    let steps = msg_steps(9, &IdealConfig::default()).map_err(|e| e.to_string())?;
    let expected: [&[((usize, usize), usize)]; 4] = [
        &[((3, 3), 1)],
        &[((3, 4), 1), ((4, 3), 1)],
        &[((3, 5), 1), ((4, 4), 2), ((5, 3), 1)],
        &[((3, 6), 2), ((4, 5), 3), ((5, 4), 3), ((6, 3), 2)],
    ];
    for s in &steps[..5] {
        ensure(s.generators.is_empty(), || format!("generators in degree {}", s.m))?;
    }
    for (s, want) in steps[5..].iter().zip(expected) {
        ensure(s.counts() == want, || format!("degree {}: {:?}", s.m, s.counts()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fresh = sample_w2(&mut rng, 50);
    let (a, b) = outside_pair();
    for g in table2_generators().iter() {
        ensure(g.poly.bidegree() == Some(g.bidegree), || format!("{} has the wrong bidegree", g.name))?;
        ensure(vanishes_on(&g.poly, &fresh).map_err(|e| e.to_string())?, || format!("{} nonzero on W2", g.name))?;
        ensure(g.poly.eval(&a, &b).map_err(|e| e.to_string())?.is_zero(), || format!("{} nonzero at outside pair", g.name))?;
    }
    let total: usize = steps.iter().map(|s| s.generators.len()).sum();
    Ok(format!("{total} generators through degree 9; 17 listed generators vanish on 50 samples and the outside pair"))
}

fn jacobian() -> Outcome {
    let set = table2_generators();
    let fs: Vec<_> = ["f1", "f2", "f3", "f6"].iter().map(|n| set.get(n).expect("listed").poly.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut ranks = Vec::new();
    for (x, y) in sample_generic(&mut rng, 5) {
        ranks.push(jacobian_rank(&fs, &x, &y).map_err(|e| e.to_string())?);
    }
    ensure(ranks.iter().all(|&r| r == 4), || format!("ranks {ranks:?}"))?;
    Ok(format!("ranks {ranks:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("invariant minimality", table1, 1),
        ("Sp(2) equivalence", sp2, 30),
        ("exact trace identities", trace_identities, 60),
        ("one-parameter identities", one_parameter, 10),
        ("commutator witnesses", witnesses, 1),
        ("quasi-triangularizability", qt, 60),
        ("W2 membership", w2, 60),
        ("W_n trace properties", wn_suites, 60),
        ("common eigenvector conditions", friedland, 30),
        ("ideal dimensions", figure1, 600),
        ("generator counts", table2, 900),
        ("Jacobian rank", jacobian, 30),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*budget) => Err(format!("{msg}; over the {budget} s budget")),
            other => other,
        };
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {:>2} {tag} {name}: {msg} ({:.2} s)", i + 1, took.as_secs_f64());
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
