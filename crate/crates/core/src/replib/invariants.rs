//! Invariants of the isotropy algebra spanned by `adI, adJ, adK`, Hodge-type
//! projections for induced structures, and the invariant part of the
//! submodule generated by the top form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::subspace::{submodule_closure, Subspace};
use crate::error::{check_dims, Error, Result};
use crate::exterior::{joint_kernel, Form, Matrix, SparseOp};
use crate::io::form_json;
use crate::lefschetz::{is_gm_invariant, OperatorBasis};
use crate::quaternionic::{induced, rational_sphere_point, Quaternion, SpherePoint};
use crate::report::CheckRecord;
use crate::scalar::Scalar;

/// Fixed induced structures used to cross-check every invariant basis vector.
pub fn reference_points() -> Vec<SpherePoint> {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    [(r(1, 2), r(1, 3)), (r(2, 1), r(-1, 1)), (r(-3, 4), r(5, 2)), (r(1, 5), r(-2, 7)), (r(3, 1), r(3, 2))]
        .iter()
        .map(|(u, v)| rational_sphere_point(u, v))
        .collect()
}

/// `ad L` for the induced structure `L = aI + bJ + cK`, lifted directly from the matrix of `L`.
pub fn ad_induced(b: &OperatorBasis, s: &SpherePoint) -> Result<SparseOp> {
    Ok(induced(b.triple(), s)?.ad())
}

/// Component of `f` of type `(p, p̄)` with `p̄ − p = k` for the complex structure
/// whose derivation is `ad_l`, computed by Lagrange interpolation in `ad_l`
/// over the eigenvalues `i·k′` that occur in each degree.
pub fn hodge_component(ad_l: &SparseOp, m: usize, f: &Form, k: i64) -> Result<Form> {
    check_dims(ad_l.dim(), f.dim())?;
    let mut out = Form::zero(f.dim());
    for (d, part) in f.by_degree() {
        let lo = d.saturating_sub(m);
        let hi = d.min(m);
        // eigenvalues p̄ − p = d − 2p for p in lo..=hi
        let eigen: Vec<i64> = (lo..=hi).map(|p| d as i64 - 2 * p as i64).collect();
        if !eigen.contains(&k) {
            continue;
        }
        let mut acc = part;
        for &j in eigen.iter().filter(|&&j| j != k) {
            // (ad_l − i j) / (i k − i j)
            let shifted = ad_l.apply(&acc)?.sub(&acc.scale(&Scalar::complex(0, j)))?;
            acc = shifted.scale(&Scalar::complex(0, k - j).inv().expect("k ≠ j"));
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// `true` if `f` equals its own `(p, p)` component for the structure with derivation `ad_l`.
pub fn is_pure_pp(ad_l: &SparseOp, m: usize, f: &Form) -> Result<bool> {
    Ok(&hodge_component(ad_l, m, f, 0)? == f)
}

/// Exact basis of the `adI, adJ, adK` joint kernel on `Λ^d`. Each basis vector
/// is confirmed to be of pure type `(d/2, d/2)` for five fixed induced structures.
pub fn gm_invariants(b: &OperatorBasis, degree: usize) -> Result<Subspace> {
    let ops: Vec<SparseOp> = Quaternion::ALL.iter().map(|r| b.ad(*r).clone()).collect();
    let kernel = joint_kernel(&ops, degree)?;
    for s in reference_points() {
        let ad_l = ad_induced(b, &s)?;
        for f in &kernel {
            if !is_pure_pp(&ad_l, b.m(), f)? {
                return Err(Error::InvariantViolation(format!(
                    "invariant {f} is not of type (p,p) for an induced structure"
                )));
            }
        }
    }
    Subspace::from_forms(b.dim(), &kernel)
}

/// `C = Λ_I² + Λ_J² + Λ_K²`.
pub fn c_operator(b: &OperatorBasis) -> Result<SparseOp> {
    let squares: Vec<SparseOp> =
        Quaternion::ALL.iter().map(|r| b.lambda(*r).compose(b.lambda(*r))).collect::<Result<_>>()?;
    squares[0].add(&squares[1])?.add(&squares[2])
}

/// Records that `C` lowers degree by 4 and commutes with `adI, adJ, adK`.
pub fn c_equivariance_records(b: &OperatorBasis, c: &SparseOp) -> Result<Vec<CheckRecord>> {
    let mut out = vec![CheckRecord::new(
        "C: degree shift -4",
        c.degree_shift() == Some(-4),
        Value::Null,
        json!({ "shift": c.degree_shift() }),
    )];
    for r in Quaternion::ALL {
        let br = c.bracket(b.ad(r))?;
        out.push(CheckRecord::new(
            format!("C: [C, ad{}] = 0", r.name()),
            br.is_zero(),
            br.columns().keys().next().map_or(Value::Null, |m| json!(m.indices())),
            json!({}),
        ));
    }
    Ok(out)
}

/// `C^k(det)`.
pub fn c_power_det(b: &OperatorBasis, c: &SparseOp, k: usize) -> Result<Form> {
    c.apply_pow(&b.det(), k)
}

/// The invariant part of a subspace slice: forms in `slice` killed by `adI, adJ, adK`.
pub fn invariant_part(b: &OperatorBasis, slice: &[Form]) -> Result<Vec<Form>> {
    if slice.is_empty() {
        return Ok(Vec::new());
    }
    // Columns are ad_R(v_i) written in monomials; solve Σ x_i ad_R(v_i) = 0.
    let mut rows: std::collections::BTreeMap<(usize, crate::exterior::MultiIndex), Vec<Scalar>> = Default::default();
    for (i, v) in slice.iter().enumerate() {
        for (r_idx, r) in Quaternion::ALL.iter().enumerate() {
            for (m, c) in b.ad(*r).apply(v)?.terms() {
                rows.entry((r_idx, *m)).or_insert_with(|| vec![Scalar::zero(); slice.len()])[i] = c.clone();
            }
        }
    }
    let mat = if rows.is_empty() {
        Matrix::zeros(0, slice.len())
    } else {
        let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
        Matrix::from_fn(rows.len(), slice.len(), |i, j| rows[i][j].clone())
    };
    let dim = b.dim();
    Ok(mat
        .kernel()
        .into_iter()
        .map(|x| {
            let mut f = Form::zero(dim);
            for (c, v) in x.iter().zip(slice) {
                f.add_scaled(c, v);
            }
            f
        })
        .collect())
}

/// Within the submodule generated by `det`: the invariant slice in degree
/// `4q − 4k` is spanned by `C^k(det)`, and every other degree has none.
pub fn ao_invariants_check(b: &OperatorBasis) -> Result<Vec<CheckRecord>> {
    let dim = b.dim();
    let q = b.triple().q;
    let c = c_operator(b)?;
    let a_o = submodule_closure(b, &b.det())?;
    let mut out = vec![CheckRecord::new("ao: closure of det", true, Value::Null, a_o.to_json())];
    let mut powers = Vec::new();
    for k in 0..=q {
        let ck = c_power_det(b, &c, k)?;
        let ok = !ck.is_zero()
            && ck.homogeneous_degree() == Some(dim - 4 * k)
            && is_gm_invariant(b, &ck)?
            && a_o.contains(&ck);
        out.push(CheckRecord::new(
            format!("ao: C^{k}(det) nonzero, invariant, degree {}", dim - 4 * k),
            ok,
            Value::Null,
            json!({ "k": k, "form": form_json(&ck) }),
        ));
        powers.push(ck);
    }
    let mut slices = Vec::new();
    let mut extra = None;
    for d in 0..=dim {
        let inv = invariant_part(b, &a_o.slice(d))?;
        let expected = if (dim - d).is_multiple_of(4) { Some(&powers[(dim - d) / 4]) } else { None };
        let ok = match expected {
            Some(ck) => inv.len() == 1 && Subspace::from_forms(dim, &inv)?.contains(ck),
            None => inv.is_empty(),
        };
        if !ok && extra.is_none() {
            extra = Some(json!({ "degree": d, "found": inv.iter().map(form_json).collect::<Vec<_>>() }));
        }
        slices.push(json!({ "degree": d, "ao_dim": a_o.slice_dim(d), "invariant_dim": inv.len() }));
    }
    out.push(CheckRecord::new(
        "ao: invariant slice = span{C^k det} in degree 4q-4k, zero elsewhere",
        extra.is_none(),
        extra.unwrap_or(Value::Null),
        json!(slices),
    ));
    Ok(out)
}
