//! Column-sparse linear operators on `Λ*(ℝ^dim) ⊗ ℂ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::form::Form;
use super::linalg::Matrix;
use super::monomial::{sign_merge, MultiIndex};
use crate::error::{check_dims, Error, Result};
use crate::scalar::Scalar;

/// A linear operator given by the images of basis monomials. A missing
/// column means the monomial is sent to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseOp {
    dim: usize,
    columns: BTreeMap<MultiIndex, Form>,
}

impl SparseOp {
    pub fn zero(dim: usize) -> Self {
        SparseOp { dim, columns: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        SparseOp::from_fn(dim, |m| Form::monomial(dim, m, Scalar::one()))
    }

    /// Builds every column by evaluating `f` on each basis monomial.
    pub fn from_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(MultiIndex) -> Form + Sync,
    {
        let columns: Vec<(MultiIndex, Form)> =
            MultiIndex::all(dim).into_par_iter().map(|m| (m, f(m))).filter(|(_, img)| !img.is_zero()).collect();
        SparseOp { dim, columns: columns.into_iter().collect() }
    }

    pub fn from_columns<I>(dim: usize, cols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Form)>,
    {
        let mut columns = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (m, img) in cols {
            if !m.fits(dim) {
                return Err(Error::Schema(format!("column {m} outside dimension {dim}")));
            }
            check_dims(dim, img.dim())?;
            if !seen.insert(m) {
                return Err(Error::Schema(format!("duplicate column {m}")));
            }
            if !img.is_zero() {
                columns.insert(m, img);
            }
        }
        Ok(SparseOp { dim, columns })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &BTreeMap<MultiIndex, Form> {
        &self.columns
    }

    pub fn column(&self, m: MultiIndex) -> Form {
        self.columns.get(&m).cloned().unwrap_or_else(|| Form::zero(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn apply(&self, f: &Form) -> Result<Form> {
        check_dims(self.dim, f.dim())?;
        let mut out = Form::zero(self.dim);
        for (m, c) in f.terms() {
            if let Some(img) = self.columns.get(m) {
                out.add_scaled(c, img);
            }
        }
        Ok(out)
    }

    /// `self^k (f)`.
    pub fn apply_pow(&self, f: &Form, k: usize) -> Result<Form> {
        let mut acc = f.clone();
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = self.apply(&acc)?;
        }
        Ok(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseOp) -> Result<SparseOp> {
        check_dims(self.dim, other.dim)?;
        let columns: Vec<(MultiIndex, Form)> = other
            .columns
            .par_iter()
            .map(|(m, img)| (*m, self.apply(img).expect("dims checked")))
            .filter(|(_, img)| !img.is_zero())
            .collect();
        Ok(SparseOp { dim: self.dim, columns: columns.into_iter().collect() })
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn bracket(&self, other: &SparseOp) -> Result<SparseOp> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn linear_combination(dim: usize, terms: &[(Scalar, &SparseOp)]) -> Result<SparseOp> {
        let mut cols: BTreeMap<MultiIndex, Form> = BTreeMap::new();
        for (c, op) in terms {
            check_dims(dim, op.dim)?;
            if c.is_zero() {
                continue;
            }
            for (m, img) in &op.columns {
                cols.entry(*m).or_insert_with(|| Form::zero(dim)).add_scaled(c, img);
            }
        }
        cols.retain(|_, f| !f.is_zero());
        Ok(SparseOp { dim, columns: cols })
    }

    pub fn add(&self, other: &SparseOp) -> Result<SparseOp> {
        SparseOp::linear_combination(self.dim, &[(Scalar::one(), self), (Scalar::one(), other)])
    }

    pub fn sub(&self, other: &SparseOp) -> Result<SparseOp> {
        SparseOp::linear_combination(self.dim, &[(Scalar::one(), self), (Scalar::from_int(-1), other)])
    }

    pub fn scale(&self, c: &Scalar) -> SparseOp {
        SparseOp::linear_combination(self.dim, &[(c.clone(), self)]).expect("same dimension")
    }

    /// Conjugate transpose with respect to the orthonormal monomial basis.
    pub fn adjoint(&self) -> SparseOp {
        let mut cols: BTreeMap<MultiIndex, Form> = BTreeMap::new();
        for (src, img) in &self.columns {
            for (dst, c) in img.terms() {
                cols.entry(*dst).or_insert_with(|| Form::zero(self.dim)).add_term(*src, c.conj());
            }
        }
        SparseOp { dim: self.dim, columns: cols }
    }

    /// Exterior multiplication `f ↦ w ∧ f`.
    pub fn left_mult(w: &Form) -> SparseOp {
        let dim = w.dim();
        SparseOp::from_fn(dim, |m| {
            let mut out = Form::zero(dim);
            for (s, c) in w.terms() {
                if let Some((sign, u)) = sign_merge(*s, m) {
                    out.add_term(u, if sign < 0 { -c } else { c.clone() });
                }
            }
            out
        })
    }

    /// First monomial column on which `self` and `other` differ.
    pub fn first_difference(&self, other: &SparseOp) -> Option<MultiIndex> {
        let keys: std::collections::BTreeSet<_> = self.columns.keys().chain(other.columns.keys()).collect();
        keys.into_iter().copied().find(|m| self.columns.get(m) != other.columns.get(m))
    }

    /// The block `Λ^from → Λ^to` as a dense matrix, rows and columns in monomial order.
    pub fn block(&self, from: usize, to: usize) -> Matrix {
        let cols = MultiIndex::all_of_degree(self.dim, from);
        let rows = MultiIndex::all_of_degree(self.dim, to);
        let row_pos: BTreeMap<MultiIndex, usize> = rows.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut mat = Matrix::zeros(rows.len(), cols.len());
        for (j, m) in cols.iter().enumerate() {
            if let Some(img) = self.columns.get(m) {
                for (r, c) in img.terms() {
                    if let Some(&i) = row_pos.get(r) {
                        mat.set(i, j, c.clone());
                    }
                }
            }
        }
        mat
    }

    /// The shift `d` such that every column of degree `r` lands in degree `r + d`,
    /// or `None` if the operator is not degree-homogeneous. The zero operator reports `Some(0)`.
    pub fn degree_shift(&self) -> Option<isize> {
        let mut shift = None;
        for (m, img) in &self.columns {
            for r in img.terms().keys() {
                let d = r.degree() as isize - m.degree() as isize;
                match shift {
                    None => shift = Some(d),
                    Some(s) if s != d => return None,
                    _ => {}
                }
            }
        }
        Some(shift.unwrap_or(0))
    }
}

/// Extends a 1-form endomorphism to a degree-preserving derivation (Leibniz rule).
///
/// `m` acts on coefficient vectors: the image of `e^a` is `Σ_b m[b][a] e^b`.
pub fn lift_derivation(m: &Matrix) -> Result<SparseOp> {
    let dim = square_dim(m)?;
    Ok(SparseOp::from_fn(dim, |s| {
        let mut out = Form::zero(dim);
        // e^{s1}∧…∧D(e^{sk})∧…: replacing the k-th factor by e^b.
        for a in s.indices() {
            let rest = s.without(MultiIndex::single(a));
            // position sign: moving e^a to the front of e^S
            let (pos_sign, _) = sign_merge(MultiIndex::single(a), rest).expect("disjoint");
            for b in 1..=dim {
                let c = m.get(b - 1, a - 1);
                if c.is_zero() {
                    continue;
                }
                if let Some((sign, u)) = sign_merge(MultiIndex::single(b), rest) {
                    let c = if sign * pos_sign < 0 { -c } else { c.clone() };
                    out.add_term(u, c);
                }
            }
        }
        out
    }))
}

/// Extends a 1-form endomorphism multiplicatively: on `Λ^r` it is the r-th exterior power.
pub fn lift_multiplicative(m: &Matrix) -> Result<SparseOp> {
    let dim = square_dim(m)?;
    let images: Vec<Form> = (1..=dim)
        .map(|a| {
            let mut f = Form::zero(dim);
            for b in 1..=dim {
                f.add_term(MultiIndex::single(b), m.get(b - 1, a - 1).clone());
            }
            f
        })
        .collect();
    Ok(SparseOp::from_fn(dim, |s| {
        s.indices().into_iter().fold(Form::one(dim), |acc, a| acc.wedge(&images[a - 1]).expect("same dimension"))
    }))
}

fn square_dim(m: &Matrix) -> Result<usize> {
    if m.rows() != m.cols() {
        return Err(Error::Input(format!("matrix is {}x{}, expected square", m.rows(), m.cols())));
    }
    Ok(m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> Form {
        Form::monomial(dim, MultiIndex::new(idx, dim).unwrap(), Scalar::one())
    }

    #[test]
    fn trivial_brackets_vanish() {
        let dim = 4;
        let w = e(dim, &[1, 2]).add(&e(dim, &[3, 4])).unwrap();
        let a = SparseOp::left_mult(&w);
        assert!(a.bracket(&a).unwrap().is_zero());
        assert!(SparseOp::identity(dim).bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn identity_derivation_counts_degree() {
        let d = lift_derivation(&Matrix::identity(4)).unwrap();
        for m in MultiIndex::all(4) {
            let f = Form::monomial(4, m, Scalar::one());
            assert_eq!(d.apply(&f).unwrap(), f.scale(&Scalar::from_int(m.degree() as i64)));
        }
    }

    #[test]
    fn multiplicative_lifts_of_scalars() {
        assert_eq!(lift_multiplicative(&Matrix::identity(4)).unwrap(), SparseOp::identity(4));
        let neg = lift_multiplicative(&Matrix::identity(4).scale(&Scalar::from_int(-1))).unwrap();
        for m in MultiIndex::all(4) {
            let sign = if m.degree() % 2 == 0 { 1 } else { -1 };
            assert_eq!(neg.column(m), Form::monomial(4, m, Scalar::from_int(sign)));
        }
    }

    #[test]
    fn adjoint_of_left_mult_contracts() {
        let w = e(4, &[1, 2]);
        let lam = SparseOp::left_mult(&w).adjoint();
        assert_eq!(lam.apply(&e(4, &[1, 2, 3])).unwrap(), e(4, &[3]));
        assert_eq!(lam.apply(&e(4, &[1, 3])).unwrap(), Form::zero(4));
        assert_eq!(lam.degree_shift(), Some(-2));
    }

    #[test]
    fn non_square_matrix_is_rejected() {
        assert!(lift_derivation(&Matrix::zeros(3, 4)).is_err());
    }
}
