//! Seeded randomized suites built from the single-form checks.

use serde_json::{json, Value};

use super::fixlocus::{fix_locus, sphere_json, FixLocus};
use super::invariants::{ad_induced, gm_invariants, is_pure_pp};
use super::random::{distinct_sphere_points, random_combination, random_integer_form, SeededRng};
use super::theorem::{central_constant, central_constant_check, theorem21_check};
use crate::error::Result;
use crate::exterior::{kernel, Form};
use crate::io::form_json;
use crate::lefschetz::{is_gm_invariant, OperatorBasis};
use crate::report::CheckRecord;

/// Invariance under `adI, adJ, adK` agrees with pure `(p, p)` type under every
/// sampled induced structure. The forms per degree are a third invariant, a
/// third of pure type for one sampled structure only, and a third generic.
pub fn invariance_type_check(
    b: &OperatorBasis,
    degree: usize,
    forms: usize,
    points: usize,
    rng: &mut SeededRng,
) -> Result<CheckRecord> {
    let dim = b.dim();
    let samples = distinct_sphere_points(rng, points);
    let ad_samples = samples.iter().map(|s| ad_induced(b, s)).collect::<Result<Vec<_>>>()?;
    let invariants = gm_invariants(b, degree)?.slice(degree);
    let first_pp = kernel(&ad_samples[0], degree)?;
    let mut mismatches = Vec::new();
    let mut counts = [0usize; 2];
    for n in 0..forms {
        let f = match n % 3 {
            0 => random_combination(rng, &invariants),
            1 => random_combination(rng, &first_pp),
            _ => None,
        }
        .unwrap_or_else(|| random_integer_form(rng, dim, degree, 0.3));
        let invariant = is_gm_invariant(b, &f)?;
        let mut pp_everywhere = true;
        for ad_l in &ad_samples {
            if !is_pure_pp(ad_l, b.m(), &f)? {
                pp_everywhere = false;
                break;
            }
        }
        counts[invariant as usize] += 1;
        if invariant != pp_everywhere {
            mismatches.push(f);
        }
    }
    Ok(CheckRecord::new(
        format!("invariance: degree {degree}, invariant <=> (p,p) for every sampled structure"),
        mismatches.is_empty(),
        mismatches.first().map_or(Value::Null, form_json),
        json!({
            "degree": degree,
            "forms": forms,
            "invariant": counts[1],
            "non_invariant": counts[0],
            "mismatches": mismatches.len(),
            "samples": samples.iter().map(sphere_json).collect::<Vec<_>>(),
        }),
    ))
}

/// Random non-invariant real forms never have a two-dimensional annihilator.
/// Half are generic; half are of pure type for a random induced structure and
/// must report that structure's axis.
pub fn fix_locus_bound_check(b: &OperatorBasis, forms: usize, rng: &mut SeededRng) -> Result<CheckRecord> {
    use rand::Rng;
    let dim = b.dim();
    let mut tally = [0usize; 2];
    let mut failure = None;
    let mut n = 0;
    while n < forms {
        let degree = rng.gen_range(1..dim);
        let (f, axis) = if n % 2 == 0 {
            (random_integer_form(rng, dim, degree, 0.3), None)
        } else {
            let s = distinct_sphere_points(rng, 1).remove(0);
            let ker = kernel(&ad_induced(b, &s)?, degree)?;
            match random_combination(rng, &ker) {
                Some(f) => (f, Some(s)),
                None => continue,
            }
        };
        if is_gm_invariant(b, &f)? {
            continue;
        }
        n += 1;
        match fix_locus(b, &f) {
            Ok(FixLocus::All) => failure = failure.or(Some(json!({"form": form_json(&f), "reason": "All"}))),
            Ok(locus) => {
                tally[matches!(locus, FixLocus::AntipodalPair(_)) as usize] += 1;
                if let Some(s) = axis {
                    if !locus.contains(&s) {
                        failure = failure.or(Some(json!({
                            "form": form_json(&f),
                            "reason": "axis missing",
                            "point": sphere_json(&s),
                        })));
                    }
                }
            }
            Err(e) => failure = failure.or(Some(json!({"form": form_json(&f), "reason": e.to_string()}))),
        }
    }
    Ok(CheckRecord::new(
        "fixlocus bound: fix locus of non-invariant forms is an antipodal pair or empty",
        failure.is_none(),
        failure.unwrap_or(Value::Null),
        json!({ "forms": forms, "antipodal_pair": tally[1], "none": tally[0], "kernel_dim_2": 0 }),
    ))
}

/// Degrees `d` with a nonzero invariant space, split by whether `d ≡ 0 (mod 4)`.
pub fn invariant_degrees(b: &OperatorBasis) -> Result<Vec<(usize, Vec<Form>)>> {
    let mut out = Vec::new();
    for d in (0..=b.dim()).step_by(2) {
        let basis = gm_invariants(b, d)?.slice(d);
        if !basis.is_empty() {
            out.push((d, basis));
        }
    }
    Ok(out)
}

/// `count` random invariant forms in each degree with invariants, each run through [`theorem21_check`].
pub fn theorem21_random(b: &OperatorBasis, count: usize, rng: &mut SeededRng) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (d, basis) in invariant_degrees(b)? {
        let mut failures = Vec::new();
        let mut constant_failures = Vec::new();
        let mut ratios = std::collections::BTreeSet::new();
        for _ in 0..count {
            let f = random_combination(rng, &basis).expect("nonempty basis");
            let rec = theorem21_check(b, &f)?;
            if let Some(r) = rec.data.get("lhs_over_L_pow").filter(|r| !r.is_null()) {
                ratios.insert(r.to_string());
            }
            if !rec.passed() {
                failures.push(rec);
            }
            if let Some(c) = central_constant_check(b, &f)? {
                if !c.passed() {
                    constant_failures.push(c);
                }
            }
        }
        let case = if (b.m() - d / 2).is_multiple_of(2) { "even" } else { "odd" };
        out.push(CheckRecord::new(
            format!("thm21: {count} random invariant forms of degree {d} ({case} case)"),
            failures.is_empty(),
            failures.first().map_or(Value::Null, |r| r.witness.clone()),
            json!({
                "degree": d,
                "invariant_dim": basis.len(),
                "case": case,
                "failures": failures.len(),
                "observed_ratios": ratios,
            }),
        ));
        if case == "even" {
            let s = (b.m() - d / 2) / 2;
            out.push(CheckRecord::new(
                format!("thm21 constant: {count} random invariant forms of degree {d}, ratio 4^{s}/C({},{s})", 2 * s),
                constant_failures.is_empty(),
                constant_failures.first().map_or(Value::Null, |r| r.witness.clone()),
                json!({ "degree": d, "constant": crate::io::scalar_json(&central_constant(s)), "failures": constant_failures.len() }),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::build_basis;
    use crate::quaternionic::standard_triple;
    use crate::replib::random::rng;

    #[test]
    fn suites_pass_q1() {
        let b = build_basis(&standard_triple(1).unwrap()).unwrap();
        let mut r = rng(11);
        for d in 0..=4 {
            assert!(invariance_type_check(&b, d, 12, 5, &mut r).unwrap().passed());
        }
        assert!(fix_locus_bound_check(&b, 20, &mut r).unwrap().passed());
        assert!(theorem21_random(&b, 5, &mut r).unwrap().iter().all(CheckRecord::passed));
    }

    #[test]
    fn literal_constant_fails_only_at_s2_for_q2() {
        let b = build_basis(&standard_triple(2).unwrap()).unwrap();
        let recs = theorem21_random(&b, 3, &mut rng(4)).unwrap();
        let failed: Vec<&str> = recs.iter().filter(|r| !r.passed()).map(|r| r.check.as_str()).collect();
        assert_eq!(failed, ["thm21: 3 random invariant forms of degree 0 (even case)"]);
        assert!(recs.iter().filter(|r| r.check.starts_with("thm21 constant")).all(CheckRecord::passed));
    }
}
