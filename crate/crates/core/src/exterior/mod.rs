//! Sparse exact exterior algebra over `ℝ^dim ⊗ ℂ`.

mod form;
pub mod linalg;
mod monomial;
mod op;

pub use form::Form;
pub use linalg::{Echelon, Matrix};
pub use monomial::{sign_merge, MultiIndex, MAX_DIM};
pub use op::{lift_derivation, lift_multiplicative, SparseOp};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_degree(dim: usize, degree: usize) -> Result<()> {
    if degree > dim {
        return Err(Error::Input(format!("degree {degree} outside 0..={dim}")));
    }
    Ok(())
}

/// Forms in `Λ^degree` with the given coefficient vector (monomial order).
pub fn form_from_vector(dim: usize, degree: usize, v: &[Scalar]) -> Form {
    let basis = MultiIndex::all_of_degree(dim, degree);
    Form::from_terms(dim, basis.into_iter().zip(v.iter().cloned())).expect("basis monomials fit")
}

/// Coefficient vector of the degree-`degree` part of `f` in monomial order.
pub fn vector_of_form(f: &Form, degree: usize) -> Vec<Scalar> {
    MultiIndex::all_of_degree(f.dim(), degree).into_iter().map(|m| f.coeff(m)).collect()
}

/// Restriction of a homogeneous operator to `Λ^degree` as a dense matrix.
fn restricted_block(op: &SparseOp, degree: usize) -> Matrix {
    let shift = op.degree_shift().unwrap_or(0);
    let to = degree as isize + shift;
    if to < 0 || to as usize > op.dim() {
        return Matrix::zeros(0, binomial(op.dim(), degree));
    }
    if op.degree_shift().is_none() {
        // inhomogeneous: stack every target degree
        let blocks: Vec<Matrix> = (0..=op.dim()).map(|t| op.block(degree, t)).collect();
        return Matrix::vstack(&blocks);
    }
    op.block(degree, to as usize)
}

/// Exact basis of `{f ∈ Λ^degree : A f = 0}`.
pub fn kernel(op: &SparseOp, degree: usize) -> Result<Vec<Form>> {
    joint_kernel(std::slice::from_ref(op), degree)
}

/// Exact basis of the common kernel of several operators on `Λ^degree`.
pub fn joint_kernel(ops: &[SparseOp], degree: usize) -> Result<Vec<Form>> {
    let dim = ops.first().map(SparseOp::dim).ok_or_else(|| Error::Input("no operators".into()))?;
    check_degree(dim, degree)?;
    for op in ops {
        crate::error::check_dims(dim, op.dim())?;
    }
    let cols = MultiIndex::all_of_degree(dim, degree);
    // one sparse row per (operator, target monomial)
    let mut rows: BTreeMap<(usize, MultiIndex), BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (k, op) in ops.iter().enumerate() {
        for (j, m) in cols.iter().enumerate() {
            if let Some(img) = op.columns().get(m) {
                for (t, c) in img.terms() {
                    rows.entry((k, *t)).or_default().insert(j, c.clone());
                }
            }
        }
    }
    Ok(linalg::sparse_kernel(rows.values(), cols.len()).iter().map(|v| form_from_vector(dim, degree, v)).collect())
}

/// Rank of `A` restricted to `Λ^degree`.
pub fn rank(op: &SparseOp, degree: usize) -> Result<usize> {
    check_degree(op.dim(), degree)?;
    Ok(restricted_block(op, degree).rank())
}
