use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use crate::error::{check_dims, Error, Result};
use crate::exterior::{Echelon, Form, MultiIndex};
use crate::lefschetz::OperatorBasis;

/// A graded subspace of `Λ*`, stored as one reduced echelon basis per degree
/// (pivots are the smallest monomials in `MultiIndex` order).
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    slices: BTreeMap<usize, Echelon<MultiIndex>>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, slices: BTreeMap::new() }
    }

    pub fn from_forms<'a>(dim: usize, forms: impl IntoIterator<Item = &'a Form>) -> Result<Self> {
        let mut s = Subspace::new(dim);
        for f in forms {
            s.insert(f)?;
        }
        Ok(s)
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    /// Adds every homogeneous component of `f`; `true` if the span grew.
    pub fn insert(&mut self, f: &Form) -> Result<bool> {
        check_dims(self.dim, f.dim())?;
        let mut grew = false;
        for (d, part) in f.by_degree() {
            grew |= self.slices.entry(d).or_default().insert(part.terms());
        }
        Ok(grew)
    }

    pub fn contains(&self, f: &Form) -> bool {
        f.by_degree().into_iter().all(|(d, part)| self.slices.get(&d).is_some_and(|e| e.contains(part.terms())))
    }

    pub fn total_dim(&self) -> usize {
        self.slices.values().map(Echelon::rank).sum()
    }

    pub fn slice_dim(&self, degree: usize) -> usize {
        self.slices.get(&degree).map_or(0, Echelon::rank)
    }

    /// Reduced basis of the degree-`degree` slice.
    pub fn slice(&self, degree: usize) -> Vec<Form> {
        self.slices
            .get(&degree)
            .map(|e| {
                e.basis()
                    .map(|row| Form::from_terms(self.dim, row.iter().map(|(m, c)| (*m, c.clone()))).expect("fits"))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn basis(&self) -> Vec<Form> {
        self.slices.keys().flat_map(|d| self.slice(*d)).collect()
    }

    /// Degrees with a nonzero slice, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        self.slices.iter().filter(|(_, e)| e.rank() > 0).map(|(d, _)| *d).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total_dim": self.total_dim(),
            "slices": self.degrees().iter().map(|d| json!({"degree": d, "dim": self.slice_dim(*d)})).collect::<Vec<_>>(),
        })
    }
}

/// The smallest subspace containing `seed` and stable under all ten basis operators.
pub fn submodule_closure(b: &OperatorBasis, seed: &Form) -> Result<Subspace> {
    if seed.is_zero() {
        return Err(Error::Input("closure seed must be nonzero".into()));
    }
    check_dims(b.dim(), seed.dim())?;
    let mut space = Subspace::new(b.dim());
    let mut queue = VecDeque::new();
    // H separates degrees, so each homogeneous part of the seed lies in the closure.
    for part in seed.by_degree().into_values() {
        if space.insert(&part)? {
            queue.push_back(part);
        }
    }
    while let Some(v) = queue.pop_front() {
        for op in b.ops() {
            let w = op.apply(&v)?;
            if !w.is_zero() && space.insert(&w)? {
                queue.push_back(w);
            }
        }
    }
    Ok(space)
}

/// `Some(op)` naming the first operator that moves a basis vector outside `space`.
pub fn first_escape(b: &OperatorBasis, space: &Subspace) -> Result<Option<(String, Form)>> {
    for v in space.basis() {
        for name in crate::lefschetz::OpName::ALL {
            let w = b.op(name).apply(&v)?;
            if !space.contains(&w) {
                return Ok(Some((name.label(), v)));
            }
        }
    }
    Ok(None)
}
