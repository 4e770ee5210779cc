//! The degree functional, the top-form identity for invariant forms, and the
//! highest-weight property of the top form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

use crate::error::{check_dims, Error, Result};
use crate::exterior::{binomial, Form};
use crate::io::{form_json, scalar_json};
use crate::lefschetz::{is_gm_invariant, OperatorBasis, RootSystemReport};
use crate::quaternionic::Quaternion;
use crate::report::CheckRecord;
use crate::scalar::Scalar;

/// Top-degree coefficient of the Lefschetz saturation of a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeValue(pub Scalar);

/// `deg(α)`: the coefficient of `det` in `L_I^{(4q − d)/2}(α)` for `α` of degree `d`.
pub fn degree_functional(b: &OperatorBasis, alpha: &Form) -> Result<DegreeValue> {
    check_dims(b.dim(), alpha.dim())?;
    if alpha.is_zero() {
        return Ok(DegreeValue(Scalar::zero()));
    }
    let d =
        alpha.homogeneous_degree().ok_or_else(|| Error::Input("degree functional needs a homogeneous form".into()))?;
    let codeg = b.dim() - d;
    if !codeg.is_multiple_of(2) {
        return Err(Error::Input(format!("form of degree {d} has odd codegree {codeg}")));
    }
    let sat = b.l(Quaternion::I).apply_pow(alpha, codeg / 2)?;
    Ok(DegreeValue(sat.top_coeff()))
}

/// For an invariant `α` of degree `2p` (with `m = 2q`):
/// if `m − p = 2s` is even, `Ω^s ∧ Ω̄^s ∧ α = 2^s · L_I^{2s}(α)`;
/// if `m − p` is odd, `L_I^{m−p}(α) = 0`.
pub fn theorem21_check(b: &OperatorBasis, alpha: &Form) -> Result<CheckRecord> {
    check_dims(b.dim(), alpha.dim())?;
    if alpha.is_zero() {
        return Err(Error::Input("form must be nonzero".into()));
    }
    let d = alpha.homogeneous_degree().ok_or_else(|| Error::Input("form must be homogeneous".into()))?;
    if d % 2 != 0 || !is_gm_invariant(b, alpha)? {
        return Err(Error::Input("form is not invariant under adI, adJ, adK".into()));
    }
    let m = b.m();
    let p = d / 2;
    let power = m - p;
    let l_pow = b.l(Quaternion::I).apply_pow(alpha, power)?;
    let deg = l_pow.top_coeff();
    if power.is_multiple_of(2) {
        let s = power / 2;
        let omega = b.omega();
        let lhs = omega.wedge_pow(s).wedge(&omega.conj().wedge_pow(s))?.wedge(alpha)?;
        let rhs = l_pow.scale(&Scalar::real(BigRational::from_integer(BigInt::from(1u64 << s))));
        let ok = lhs == rhs;
        let ratio = (!deg.is_zero()).then(|| scalar_json(&(&lhs.top_coeff() / &deg)));
        Ok(CheckRecord::new(
            format!("thm21: degree {d}, Omega^{s} ^ conj(Omega)^{s} ^ alpha = 2^{s} L_I^{power} alpha"),
            ok,
            if ok { Value::Null } else { json!({ "lhs": form_json(&lhs), "rhs": form_json(&rhs) }) },
            json!({
                "case": "even",
                "degree": d,
                "s": s,
                "lhs": form_json(&lhs),
                "rhs": form_json(&rhs),
                "deg": scalar_json(&deg),
                "lhs_over_L_pow": ratio,
            }),
        ))
    } else {
        let ok = l_pow.is_zero();
        Ok(CheckRecord::new(
            format!("thm21: degree {d} not divisible by 4, L_I^{power} alpha = 0"),
            ok,
            if ok { Value::Null } else { form_json(&l_pow) },
            json!({ "case": "odd", "degree": d, "L_pow": form_json(&l_pow) }),
        ))
    }
}

/// `4^s / C(2s, s)`, the constant that actually relates `Ω^s ∧ Ω̄^s ∧ α` to
/// `L_I^{2s}(α)` for invariant `α`. It agrees with `2^s` only for `s ≤ 1`.
pub fn central_constant(s: usize) -> Scalar {
    let num = BigInt::from(4u8).pow(s as u32);
    let den = BigInt::from(binomial(2 * s, s));
    Scalar::real(BigRational::new(num, den))
}

/// For invariant `α` with `m − p = 2s` even: `Ω^s ∧ Ω̄^s ∧ α = (4^s / C(2s, s)) · L_I^{2s}(α)`.
/// Returns `None` in the odd case.
pub fn central_constant_check(b: &OperatorBasis, alpha: &Form) -> Result<Option<CheckRecord>> {
    let d = alpha.homogeneous_degree().ok_or_else(|| Error::Input("form must be homogeneous".into()))?;
    if d % 2 != 0 || !is_gm_invariant(b, alpha)? {
        return Err(Error::Input("form is not invariant under adI, adJ, adK".into()));
    }
    let power = b.m() - d / 2;
    if !power.is_multiple_of(2) {
        return Ok(None);
    }
    let s = power / 2;
    let omega = b.omega();
    let lhs = omega.wedge_pow(s).wedge(&omega.conj().wedge_pow(s))?.wedge(alpha)?;
    let c = central_constant(s);
    let rhs = b.l(Quaternion::I).apply_pow(alpha, power)?.scale(&c);
    let ok = lhs == rhs;
    Ok(Some(CheckRecord::new(
        format!(
            "thm21 constant: degree {d}, Omega^{s} ^ conj(Omega)^{s} ^ alpha = 4^{s}/C({0},{s}) L_I^{power} alpha",
            2 * s
        ),
        ok,
        if ok { Value::Null } else { json!({ "lhs": form_json(&lhs), "rhs": form_json(&rhs) }) },
        json!({ "degree": d, "s": s, "constant": scalar_json(&c) }),
    )))
}

/// Generic linear functionals; each picks out one positive system of B₂.
const FUNCTIONALS: [(i64, i64); 8] = [(-2, 1), (-2, -1), (-1, 2), (-1, -2), (1, 2), (1, -2), (2, 1), (2, -1)];

/// The roots whose root vectors annihilate `det` contain a full positive
/// system `{β : f(β) > 0}`, and `L_I, L_J, L_K` all kill `det`.
pub fn highest_weight_check(b: &OperatorBasis, rs: &RootSystemReport, det: &Form) -> Result<Vec<CheckRecord>> {
    let mut annihilating = Vec::new();
    for r in &rs.roots {
        let x = b.combination(&r.vector.0)?;
        if x.apply(det)?.is_zero() {
            annihilating.push(r.coords());
        }
    }
    let positive = FUNCTIONALS.iter().find_map(|&(fx, fy)| {
        let pos: Vec<(i64, i64)> = rs.roots.iter().map(|r| r.coords()).filter(|(h, t)| fx * h + fy * t > 0).collect();
        pos.iter().all(|c| annihilating.contains(c)).then_some(((fx, fy), pos))
    });
    let l_kill = Quaternion::ALL.iter().all(|r| b.l(*r).apply(det).map(|f| f.is_zero()).unwrap_or(false));
    let m = b.m() as i64;
    let weight_ok = b.h().apply(det)? == det.scale(&Scalar::from_int(-m)) && b.ad(Quaternion::I).apply(det)?.is_zero();
    Ok(vec![
        CheckRecord::new("highest weight: L_I, L_J, L_K annihilate det", l_kill, Value::Null, json!({})),
        CheckRecord::new(
            "highest weight: det has weight (-m, 0)",
            weight_ok,
            Value::Null,
            json!({ "weight": [-m, 0] }),
        ),
        CheckRecord::new(
            "highest weight: annihilating roots contain a positive system of 4 roots",
            positive.as_ref().is_some_and(|(_, p)| p.len() == 4),
            Value::Null,
            json!({
                "annihilating": annihilating,
                "positive_system": positive.as_ref().map(|(_, p)| p.clone()),
                "functional": positive.as_ref().map(|(f, _)| [f.0, f.1]),
            }),
        ),
    ])
}
