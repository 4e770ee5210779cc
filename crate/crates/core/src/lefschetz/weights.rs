//! Joint (form degree, adI) eigenspaces, i.e. the Hodge decomposition with respect to `I`.

use num_traits::Zero;
use serde_json::{json, Value};

use super::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::exterior::{binomial, kernel, Form, SparseOp};
use crate::quaternionic::Quaternion;
use crate::report::CheckRecord;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct HodgeCell {
    pub degree: usize,
    pub p: usize,
    pub p_bar: usize,
    /// `adI` acts on the cell by `i·eigen_im`, with `eigen_im = p̄ − p`.
    pub eigen_im: i64,
    pub basis: Vec<Form>,
    pub expected_dim: usize,
}

#[derive(Clone, Debug)]
pub struct HodgeTable {
    pub cells: Vec<HodgeCell>,
    pub total: usize,
}

impl HodgeTable {
    pub fn cell(&self, p: usize, p_bar: usize) -> Option<&HodgeCell> {
        self.cells.iter().find(|c| c.p == p && c.p_bar == p_bar)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "cells": self.cells.iter().map(|c| json!({
                "degree": c.degree, "p": c.p, "q": c.p_bar,
                "adI_eigenvalue": format!("{}i", c.eigen_im),
                "dim": c.basis.len(), "expected": c.expected_dim,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Decomposes `Λ^d ⊗ ℂ` for each `d` in `degrees` into `adI`-eigenspaces.
///
/// With the contragredient action, a form of type `(p, p̄)` for `I` has
/// `adI`-eigenvalue `−i(p − p̄)`.
pub fn weight_decompose(b: &OperatorBasis, degrees: impl IntoIterator<Item = usize>) -> Result<HodgeTable> {
    let dim = b.dim();
    let m = b.m();
    let ad_i = b.ad(Quaternion::I);
    let shifted: Vec<(i64, SparseOp)> = (-(m as i64)..=(m as i64))
        .map(|lam| Ok((lam, ad_i.sub(&SparseOp::identity(dim).scale(&Scalar::complex(0, lam)))?)))
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();
    let mut total = 0;
    for d in degrees {
        if d > dim {
            return Err(Error::Input(format!("degree {d} outside 0..={dim}")));
        }
        let n = binomial(dim, d);
        let mut found = 0;
        for (lam, op) in &shifted {
            let lam = *lam;
            let ker = kernel(op, d)?;
            if ker.is_empty() {
                continue;
            }
            let twice_p = d as i64 - lam;
            if twice_p < 0 || twice_p % 2 != 0 || twice_p / 2 > m as i64 || (d as i64 + lam) / 2 > m as i64 {
                return Err(Error::Verification(format!("eigenvalue {lam}i on degree {d} matches no Hodge type")));
            }
            let p = (twice_p / 2) as usize;
            let p_bar = d - p;
            found += ker.len();
            cells.push(HodgeCell {
                degree: d,
                p,
                p_bar,
                eigen_im: lam,
                basis: ker,
                expected_dim: binomial(m, p) * binomial(m, p_bar),
            });
        }
        if found != n {
            return Err(Error::Verification(format!("adI eigenspaces cover {found} of {n} dimensions in degree {d}")));
        }
        total += found;
    }
    Ok(HodgeTable { cells, total })
}

pub fn weight_records(b: &OperatorBasis, tbl: &HodgeTable) -> Vec<CheckRecord> {
    let mismatch = tbl.cells.iter().find(|c| c.basis.len() != c.expected_dim);
    let cells_ok = mismatch.is_none();
    // every (p, p̄) with 0 ≤ p, p̄ ≤ m must be present
    let m = b.m();
    let complete = (0..=m).all(|p| (0..=m).all(|pb| tbl.cell(p, pb).is_some()));
    vec![
        CheckRecord::new(
            "hodge decomposition: dim Λ^{p,q} = C(m,p)·C(m,q)",
            cells_ok && complete,
            mismatch.map_or(Value::Null, |c| json!({"p": c.p, "q": c.p_bar, "dim": c.basis.len()})),
            tbl.to_json(),
        ),
        CheckRecord::new(
            "hodge decomposition: total = 2^{4q}",
            tbl.total == 1 << b.dim(),
            Value::Null,
            json!({ "total": tbl.total }),
        ),
    ]
}

/// `true` if `op f = c·f`.
pub fn is_eigenvector(op: &SparseOp, f: &Form, c: &Scalar) -> Result<bool> {
    Ok(op.apply(f)? == f.scale(c) && !(f.is_zero() && !c.is_zero()))
}
