//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails if any criterion fails, except criterion 8, whose literal
//! `2^s` constant is false for `s ≥ 2`. That failure is printed as FAIL and
//! tolerated only if it has exactly the known shape: the literal identity
//! breaks only at `s ≥ 2`, and `4^s / C(2s, s)` holds on every tested form.

use std::time::{Duration, Instant};

use hk_core::cli::{run, Command, RunConfig};
use hk_core::io::{dump_op, form_from_json, form_to_json, load_form, load_op, op_from_json, op_to_json, write_form};
use hk_core::lefschetz::{
    bracket_table, build_basis, hodge_check, root_records, root_system, structure_records, su2_check, weight_decompose,
    weight_records, OpName, OperatorBasis,
};
use hk_core::quaternionic::{standard_triple, Quaternion, SpherePoint};
use hk_core::replib::random::{random_integer_form, rng};
use hk_core::replib::{
    ao_invariants_check, c_equivariance_records, c_operator, c_power_det, central_constant_check, fix_locus,
    fix_locus_bound_check, highest_weight_check, invariance_type_check, invariant_degrees, random::random_combination,
    theorem21_check, FixLocus,
};
use hk_core::report::CheckRecord;
use hk_core::{Form, MultiIndex, Result, Scalar};

struct Outcome {
    ok: bool,
    detail: String,
    /// Failure of the documented, tolerated kind.
    known: bool,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into(), known: false }
    }
}

fn basis(q: usize) -> OperatorBasis {
    build_basis(&standard_triple(q).expect("triple")).expect("basis")
}

fn failed(recs: &[CheckRecord]) -> Vec<String> {
    recs.iter().filter(|r| !r.passed()).map(|r| r.check.clone()).collect()
}

fn or_fail(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")))
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn c1_su2() -> Result<Outcome> {
    let limits = [(1, Duration::from_secs(5)), (2, Duration::from_secs(5)), (3, Duration::from_secs(300))];
    let mut bad = Vec::new();
    let mut times = Vec::new();
    for (q, limit) in limits {
        let start = Instant::now();
        let recs = su2_check(&basis(q))?;
        let t = start.elapsed();
        times.push(format!("q={q} {}", secs(t)));
        bad.extend(failed(&recs).into_iter().map(|c| format!("q={q}: {c}")));
        if t > limit {
            bad.push(format!("q={q} took {} (limit {})", secs(t), secs(limit)));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("[adR,adS] = 2adT on all monomials, {}; {bad:?}", times.join(", "))))
}

fn c2_so5() -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in [1, 2] {
        let b = basis(q);
        let tbl = bracket_table(&b)?;
        let mut recs = structure_records(&tbl);
        recs.extend(root_records(&root_system(&tbl)?));
        bad.extend(failed(&recs).into_iter().map(|c| format!("q={q}: {c}")));
    }
    Ok(Outcome::new(bad.is_empty(), format!("10 independent, 45 brackets closed, Jacobi, Killing, B2 roots; {bad:?}")))
}

fn c3_hodge() -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in [1, 2, 3] {
        bad.extend(failed(&hodge_check(&basis(q))?).into_iter().map(|c| format!("q={q}: {c}")));
    }
    Ok(Outcome::new(bad.is_empty(), format!("H = (m - r) on r-forms, same from I, J, K, q=1..3; {bad:?}")))
}

fn c4_weights() -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in [1, 2] {
        let b = basis(q);
        let tbl = weight_decompose(&b, 0..=b.dim())?;
        bad.extend(failed(&weight_records(&b, &tbl)).into_iter().map(|c| format!("q={q}: {c}")));
    }
    Ok(Outcome::new(bad.is_empty(), format!("joint eigenspaces C(m,p)C(m,p'), total 2^(4q); {bad:?}")))
}

fn c5_invariance() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut tested = 0;
    for q in [1, 2] {
        let b = basis(q);
        let mut r = rng(500 + q as u64);
        for d in 0..=b.dim() {
            let rec = invariance_type_check(&b, d, 50, 5, &mut r)?;
            tested += 50;
            if !rec.passed() {
                bad.push(format!("q={q} degree {d}: {}", rec.data["mismatches"]));
            }
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("{tested} forms, 5 sample structures each, mismatches {bad:?}")))
}

fn c6_fix_locus() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut tallies = Vec::new();
    for q in [1, 2] {
        let b = basis(q);
        let rec = fix_locus_bound_check(&b, 100, &mut rng(600 + q as u64))?;
        tallies.push(format!("q={q} pair={} none={}", rec.data["antipodal_pair"], rec.data["none"]));
        if !rec.passed() {
            bad.push(format!("q={q}: {}", rec.witness));
        }
        let locus = fix_locus(&b, &b.kaehler(Quaternion::I))?;
        if !(matches!(locus, FixLocus::AntipodalPair(_)) && locus.contains(&SpherePoint::from_ints(1, 0, 0)?)) {
            bad.push(format!("q={q}: omega_I gives {}", locus.to_json()));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("100 forms per q, {}; omega_I -> ±(1,0,0); {bad:?}", tallies.join(", "))))
}

fn c7_highest_weight() -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in [1, 2] {
        let b = basis(q);
        let rs = root_system(&bracket_table(&b)?)?;
        let mut recs = highest_weight_check(&b, &rs, &b.det())?;
        recs.extend(c_equivariance_records(&b, &c_operator(&b)?)?);
        recs.extend(ao_invariants_check(&b)?);
        bad.extend(failed(&recs).into_iter().map(|c| format!("q={q}: {c}")));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("det highest weight, A_o invariants = span C^k det, C^k det != 0; {bad:?}"),
    ))
}

/// Runs the top-form identity on `C^k det` and 20 random invariant forms per
/// admissible degree. Returns (criterion 8, criterion 9).
fn c8_c9_theorem() -> Result<(Outcome, Outcome)> {
    let mut literal_bad = Vec::new();
    let mut unexplained = Vec::new();
    let mut odd_bad = Vec::new();
    let mut even_count = 0;
    let mut odd_count = 0;
    for q in [1, 2] {
        let b = basis(q);
        let c = c_operator(&b)?;
        let mut forms: Vec<(String, Form)> = Vec::new();
        for k in 0..=q {
            forms.push((format!("C^{k} det"), c_power_det(&b, &c, k)?));
        }
        let mut r = rng(800 + q as u64);
        for (d, inv) in invariant_degrees(&b)? {
            for n in 0..20 {
                forms.push((format!("random #{n} degree {d}"), random_combination(&mut r, &inv).expect("nonempty")));
            }
        }
        for (label, alpha) in forms {
            let rec = theorem21_check(&b, &alpha)?;
            let even = rec.data["case"] == "even";
            if even {
                even_count += 1;
                let s = rec.data["s"].as_u64().unwrap_or(0);
                let constant_ok = central_constant_check(&b, &alpha)?.is_some_and(|c| c.passed());
                if !rec.passed() {
                    literal_bad.push(format!(
                        "q={q} {label} (s={s}, ratio {})",
                        rec.data["lhs_over_L_pow"]["re"].as_str().unwrap_or("?")
                    ));
                }
                if !constant_ok || (!rec.passed() && s < 2) {
                    unexplained.push(format!("q={q} {label}"));
                }
            } else {
                odd_count += 1;
                if !rec.passed() {
                    odd_bad.push(format!("q={q} {label}"));
                }
            }
        }
    }
    // q = 1 witnesses
    let b = basis(1);
    let omega = b.omega();
    let one = Form::one(4);
    let four_det = Form::top(4).scale(&Scalar::from_int(4));
    let lhs = omega.wedge(&omega.conj())?.wedge(&one)?;
    let rhs = b.l(Quaternion::I).apply_pow(&one, 2)?.scale(&Scalar::from_int(2));
    if !(lhs == four_det && rhs == four_det) {
        unexplained.push("q=1 witness Omega^Omegabar = 4e1234".into());
    }
    let e = |ix: &[usize]| Form::monomial(4, MultiIndex::new(ix, 4).expect("index"), Scalar::from_int(1));
    let asd = e(&[1, 2]).sub(&e(&[3, 4]))?;
    if !b.l(Quaternion::I).apply(&asd)?.is_zero() {
        odd_bad.push("q=1 witness L_I(e12 - e34) = 0".into());
    }

    let ok8 = literal_bad.is_empty() && unexplained.is_empty();
    let mut c8 = Outcome::new(
        ok8,
        format!(
            "{even_count} even-case forms; literal 2^s fails on {}: {:?}; corrected 4^s/C(2s,s) fails on {unexplained:?}",
            literal_bad.len(),
            literal_bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
    c8.known = !ok8 && unexplained.is_empty();
    let c9 = Outcome::new(odd_bad.is_empty(), format!("{odd_count} odd-case forms, L_I^(m-p) alpha = 0; {odd_bad:?}"));
    Ok((c8, c9))
}

fn c10_round_trip() -> Result<Outcome> {
    let dir = tempdir();
    let mut bad = Vec::new();
    let b = basis(1);
    for name in OpName::ALL {
        let op = b.op(name);
        let path = dir.join(format!("{}.json", name.label()));
        dump_op(&path, &name.label(), op)?;
        if &load_op(&path)? != op || &op_from_json(&op_to_json(Some(&name.label()), op))? != op {
            bad.push(name.label());
        }
    }
    let mut r = rng(1000);
    for n in 0..20 {
        let dim = if n % 2 == 0 { 4 } else { 8 };
        let re = random_integer_form(&mut r, dim, n % (dim + 1), 0.4);
        let im = random_integer_form(&mut r, dim, n % (dim + 1), 0.4);
        let f = re.scale(&Scalar::from_frac(1, 3)).add(&im.scale(&Scalar::complex(0, -7)))?;
        let path = dir.join(format!("form{n}.json"));
        write_form(&path, &f)?;
        if load_form(&path)? != f || form_from_json(&form_to_json(&f))? != f {
            bad.push(format!("form {n}"));
        }
    }
    let configs = [
        Command::Invariants { degree: 2, forms: 9, points: 3 },
        Command::Fixlocus { form: None, random: 20 },
        Command::Thm21 { k: None, random_invariant: true, degree: Some(2), count: 5 },
    ];
    for cmd in configs {
        let mut cfg = RunConfig::new(1, cmd.clone());
        cfg.seed = 42;
        let first = run(&cfg)?.0.to_json();
        let again = run(&cfg)?.0.to_json();
        cfg.threads = 3;
        let threaded = run(&cfg)?.0.to_json();
        if first != again || first != threaded {
            bad.push(format!("nondeterministic report for {cmd:?}"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(Outcome::new(bad.is_empty(), format!("10 operators, 20 forms, 3 seeded reports x3 runs; {bad:?}")))
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn main() {
    let start = Instant::now();
    let (c8, c9) = c8_c9_theorem()
        .unwrap_or_else(|e| (Outcome::new(false, format!("error: {e}")), Outcome::new(false, format!("error: {e}"))));
    let mut outcomes: Vec<(usize, &str, Outcome)> = vec![
        (1, "su(2) relations", or_fail(c1_su2())),
        (2, "so(5) structure and B2 roots", or_fail(c2_so5())),
        (3, "Hodge operator", or_fail(c3_hodge())),
        (4, "weight = Hodge decomposition", or_fail(c4_weights())),
        (5, "invariant <=> (p,p) for sampled structures", or_fail(c5_invariance())),
        (6, "fix locus bound", or_fail(c6_fix_locus())),
        (7, "highest weight and A_o invariants", or_fail(c7_highest_weight())),
    ];
    outcomes.push((8, "top-form identity, even case", c8));
    outcomes.push((9, "top-form identity, odd case", c9));
    outcomes.push((10, "round trip and determinism", or_fail(c10_round_trip())));

    let mut unexpected = 0;
    for (n, name, o) in &outcomes {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        let note = if o.known { " (known: literal constant is false for s >= 2, see README)" } else { "" };
        println!("criterion {n:>2} {tag}  {name}{note}: {}", o.detail);
        if !o.ok && !o.known {
            unexpected += 1;
        }
    }
    let passed = outcomes.iter().filter(|(_, _, o)| o.ok).count();
    println!("acceptance: {passed}/10 pass, {unexpected} unexpected failures, {}", secs(start.elapsed()));
    if unexpected > 0 {
        std::process::exit(1);
    }
}
