//! Structure constants of the ten-dimensional operator algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::basis::{OpName, OperatorBasis};
use crate::error::{Error, Result};
use crate::exterior::{Echelon, Matrix, MultiIndex, SparseOp};
use crate::quaternionic::Quaternion;
use crate::report::CheckRecord;
use crate::scalar::Scalar;

pub const DIM: usize = 10;

/// An element `Σ c_k b_k` of the algebra, in the order of [`OpName::ALL`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElt(pub Vec<Scalar>);

impl LieElt {
    pub fn zero() -> Self {
        LieElt(vec![Scalar::zero(); DIM])
    }

    pub fn basis(name: OpName) -> Self {
        let mut v = LieElt::zero();
        v.0[name.index()] = Scalar::one();
        v
    }

    pub fn from_coords(coords: &BTreeMap<usize, Scalar>) -> Self {
        let mut v = LieElt::zero();
        for (k, c) in coords {
            v.0[*k] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LieElt) -> LieElt {
        LieElt(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> LieElt {
        LieElt(self.0.iter().map(|a| a * c).collect())
    }

    /// Rescaled so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> LieElt {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .0
            .iter()
            .zip(OpName::ALL)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| json!({ "op": n.label(), "coeff": c.to_string() }))
            .collect();
        json!(terms)
    }
}

/// `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct BracketTable {
    constants: Vec<Vec<Vec<Scalar>>>,
    /// Sign `ε` in `[Λ_J, L_K] = ε·adI` under the conventions in use.
    pub epsilon: i8,
}

fn flatten(op: &SparseOp) -> BTreeMap<(MultiIndex, MultiIndex), Scalar> {
    let mut out = BTreeMap::new();
    for (src, img) in op.columns() {
        for (dst, c) in img.terms() {
            out.insert((*src, *dst), c.clone());
        }
    }
    out
}

/// Closes all 45 brackets in the span of the ten operators and records the structure constants.
pub fn bracket_table(b: &OperatorBasis) -> Result<BracketTable> {
    let mut span = Echelon::new();
    for name in OpName::ALL {
        if !span.insert(&flatten(b.op(name))) {
            return Err(Error::Verification(format!("{name} is linearly dependent on the preceding operators")));
        }
    }
    let mut constants = vec![vec![vec![Scalar::zero(); DIM]; DIM]; DIM];
    #[allow(clippy::needless_range_loop)]
    for i in 0..DIM {
        for j in i + 1..DIM {
            let br = b.ops()[i].bracket(&b.ops()[j])?;
            let coords = span.coordinates(&flatten(&br)).ok_or_else(|| {
                Error::Verification(format!("[{}, {}] leaves the span of the basis", OpName::ALL[i], OpName::ALL[j]))
            })?;
            for (k, c) in coords {
                constants[j][i][k] = -&c;
                constants[i][j][k] = c;
            }
        }
    }
    let tbl = BracketTable { constants, epsilon: 0 };
    let probe = tbl.bracket_basis(OpName::Lambda(Quaternion::J), OpName::L(Quaternion::K));
    let ad_i = OpName::Ad(Quaternion::I).index();
    let only_ad_i = probe.0.iter().enumerate().all(|(k, c)| k == ad_i || c.is_zero());
    let coeff = &probe.0[ad_i];
    let epsilon = if only_ad_i && *coeff == Scalar::one() {
        1
    } else if only_ad_i && *coeff == Scalar::from_int(-1) {
        -1
    } else {
        return Err(Error::Verification(format!("[Lambda_J, L_K] = {} is not ±adI", probe.to_json())));
    };
    Ok(BracketTable { epsilon, ..tbl })
}

impl BracketTable {
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[i][j][k]
    }

    pub fn bracket_basis(&self, x: OpName, y: OpName) -> LieElt {
        LieElt(self.constants[x.index()][y.index()].clone())
    }

    pub fn bracket(&self, x: &LieElt, y: &LieElt) -> LieElt {
        let mut out = LieElt::zero();
        for i in 0..DIM {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                if y.0[j].is_zero() {
                    continue;
                }
                let c = &x.0[i] * &y.0[j];
                for k in 0..DIM {
                    let s = &self.constants[i][j][k];
                    if !s.is_zero() {
                        out.0[k] += &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` on the algebra: column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &LieElt) -> Matrix {
        let mut m = Matrix::zeros(DIM, DIM);
        for j in 0..DIM {
            let col = self.bracket(x, &LieElt::basis(OpName::ALL[j]));
            for k in 0..DIM {
                m.set(k, j, col.0[k].clone());
            }
        }
        m
    }

    /// Triples `(i, j, l)` with `i < j < l` where the Jacobi identity fails.
    pub fn jacobi_defects(&self) -> Vec<(usize, usize, usize)> {
        let e = |i: usize| LieElt::basis(OpName::ALL[i]);
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                for l in j + 1..DIM {
                    let a = self.bracket(&self.bracket(&e(i), &e(j)), &e(l));
                    let b = self.bracket(&self.bracket(&e(j), &e(l)), &e(i));
                    let c = self.bracket(&self.bracket(&e(l), &e(i)), &e(j));
                    if !a.add(&b).add(&c).is_zero() {
                        out.push((i, j, l));
                    }
                }
            }
        }
        out
    }

    pub fn antisymmetric(&self) -> bool {
        (0..DIM).all(|i| (0..DIM).all(|j| (0..DIM).all(|k| self.constants[i][j][k] == -&self.constants[j][i][k])))
    }

    /// `κ(b_i, b_j) = tr(ad b_i ∘ ad b_j)`.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = OpName::ALL.iter().map(|n| self.ad_matrix(&LieElt::basis(*n))).collect();
        Matrix::from_fn(DIM, DIM, |i, j| {
            let p = ads[i].mul(&ads[j]);
            (0..DIM).fold(Scalar::zero(), |acc, k| &acc + p.get(k, k))
        })
    }

    pub fn to_json(&self) -> Value {
        let mut rows = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let v = LieElt(self.constants[i][j].clone());
                if !v.is_zero() {
                    rows.push(json!({
                        "lhs": format!("[{}, {}]", OpName::ALL[i], OpName::ALL[j]),
                        "rhs": v.to_json(),
                    }));
                }
            }
        }
        json!(rows)
    }
}

/// Closure, independence, Jacobi and Killing-form records for the table.
pub fn structure_records(tbl: &BracketTable) -> Vec<CheckRecord> {
    let defects = tbl.jacobi_defects();
    let det = tbl.killing_form().determinant();
    vec![
        CheckRecord::new(
            "so5: 10 independent operators, 45 brackets closed",
            true,
            Value::Null,
            json!({ "dimension": DIM, "epsilon": tbl.epsilon, "table": tbl.to_json() }),
        ),
        CheckRecord::new("so5: antisymmetry", tbl.antisymmetric(), Value::Null, json!({})),
        CheckRecord::new(
            "so5: Jacobi identity",
            defects.is_empty(),
            defects.first().map_or(Value::Null, |(i, j, l)| {
                json!([OpName::ALL[*i].label(), OpName::ALL[*j].label(), OpName::ALL[*l].label()])
            }),
            json!({ "triples_checked": 120 }),
        ),
        CheckRecord::new(
            "so5: Killing form non-degenerate",
            !det.is_zero(),
            Value::Null,
            json!({ "determinant": det.to_string() }),
        ),
    ]
}
