//! Cartan subalgebra `span{H, adI}` and the root decomposition of the algebra.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde_json::{json, Value};

use super::algebra::{BracketTable, LieElt, DIM};
use super::basis::OpName;
use crate::error::{Error, Result};
use crate::exterior::Matrix;
use crate::quaternionic::Quaternion;
use crate::report::CheckRecord;
use crate::scalar::Scalar;

/// Eigenvalue search window for both Cartan generators.
const WINDOW: i64 = 6;

#[derive(Clone, Debug)]
pub struct Root {
    /// Eigenvalue of `ad H`.
    pub h: i64,
    /// Eigenvalue of `−i·ad(adI)`.
    pub t: i64,
    pub vector: LieElt,
}

impl Root {
    pub fn coords(&self) -> (i64, i64) {
        (self.h, self.t)
    }

    pub fn length_sqr(&self) -> i64 {
        self.h * self.h + self.t * self.t
    }
}

#[derive(Clone, Debug)]
pub struct RootSystemReport {
    pub cartan: [LieElt; 2],
    pub zero_weight_dim: usize,
    /// Sorted lexicographically by coordinates.
    pub roots: Vec<Root>,
    /// Distinct squared lengths, ascending.
    pub length_classes: Vec<(i64, usize)>,
    pub type_label: String,
}

impl RootSystemReport {
    pub fn coords(&self) -> Vec<(i64, i64)> {
        self.roots.iter().map(Root::coords).collect()
    }

    pub fn root(&self, coords: (i64, i64)) -> Option<&Root> {
        self.roots.iter().find(|r| r.coords() == coords)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cartan": ["H", "adI"],
            "zero_weight_dim": self.zero_weight_dim,
            "roots": self.roots.iter().map(|r| json!({
                "coords": [r.h, r.t],
                "length_sqr": r.length_sqr(),
                "vector": r.vector.to_json(),
            })).collect::<Vec<_>>(),
            "length_classes": self.length_classes.iter().map(|(l, n)| json!({"length_sqr": l, "count": n})).collect::<Vec<_>>(),
            "type": self.type_label,
        })
    }
}

/// Joint eigendecomposition of `ad H` and `ad(adI)` on the ten-dimensional algebra,
/// by exact kernels of `ad H − h` stacked on `ad(adI) − i·t`.
pub fn root_system(tbl: &BracketTable) -> Result<RootSystemReport> {
    let h = LieElt::basis(OpName::H);
    let a = LieElt::basis(OpName::Ad(Quaternion::I));
    if !tbl.bracket(&h, &a).is_zero() {
        return Err(Error::Verification("H and adI do not commute".into()));
    }
    let ad_h = tbl.ad_matrix(&h);
    let ad_a = tbl.ad_matrix(&a);
    let id = Matrix::identity(DIM);
    let mut zero_space = Vec::new();
    let mut roots = Vec::new();
    let mut total = 0;
    for hv in -WINDOW..=WINDOW {
        let mh = ad_h.sub(&id.scale(&Scalar::from_int(hv)));
        for tv in -WINDOW..=WINDOW {
            let ma = ad_a.sub(&id.scale(&Scalar::complex(0, tv)));
            let ker = Matrix::vstack(&[mh.clone(), ma]).kernel();
            if ker.is_empty() {
                continue;
            }
            total += ker.len();
            if hv == 0 && tv == 0 {
                zero_space = ker;
                continue;
            }
            if ker.len() != 1 {
                return Err(Error::Verification(format!("root ({hv}, {tv}) has multiplicity {}", ker.len())));
            }
            roots.push(Root { h: hv, t: tv, vector: LieElt(ker[0].clone()).normalized() });
        }
    }
    if total != DIM {
        return Err(Error::Verification(format!(
            "joint eigenspaces span {total} of {DIM} dimensions; the Cartan action is not semisimple"
        )));
    }
    // The zero-weight space must be exactly span{H, adI}.
    let mut span = crate::exterior::Echelon::new();
    for v in &zero_space {
        span.insert(&v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect());
    }
    for x in [&h, &a] {
        if !span.contains(&x.0.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()) {
            return Err(Error::Verification("zero-weight space does not contain the Cartan generators".into()));
        }
    }
    roots.sort_by_key(Root::coords);
    let mut lengths: Vec<(i64, usize)> = Vec::new();
    for r in &roots {
        match lengths.iter_mut().find(|(l, _)| *l == r.length_sqr()) {
            Some(e) => e.1 += 1,
            None => lengths.push((r.length_sqr(), 1)),
        }
    }
    lengths.sort();
    let coords: BTreeSet<(i64, i64)> = roots.iter().map(Root::coords).collect();
    let symmetric = coords.iter().all(|&(x, y)| coords.contains(&(-x, -y)));
    let is_b2 = zero_space.len() == 2
        && roots.len() == 8
        && symmetric
        && lengths.len() == 2
        && lengths[1].0 == 2 * lengths[0].0
        && lengths[0].1 == 4
        && lengths[1].1 == 4;
    Ok(RootSystemReport {
        cartan: [h, a],
        zero_weight_dim: zero_space.len(),
        roots,
        length_classes: lengths,
        type_label: if is_b2 { "B2" } else { "unknown" }.to_string(),
    })
}

/// The coordinates expected for `B₂` in the `(H, −i·adI)` frame.
pub fn expected_b2_coords() -> BTreeSet<(i64, i64)> {
    [(-2, -2), (-2, 0), (-2, 2), (0, -2), (0, 2), (2, -2), (2, 0), (2, 2)].into_iter().collect()
}

pub fn root_records(rs: &RootSystemReport) -> Vec<CheckRecord> {
    let coords: BTreeSet<(i64, i64)> = rs.coords().into_iter().collect();
    vec![
        CheckRecord::new(
            "roots: Cartan dimension 2, 8 roots",
            rs.zero_weight_dim == 2 && rs.roots.len() == 8,
            Value::Null,
            json!({ "zero_weight_dim": rs.zero_weight_dim, "root_count": rs.roots.len() }),
        ),
        CheckRecord::new(
            "roots: coordinates {(±2,0),(0,±2),(±2,±2)}",
            coords == expected_b2_coords(),
            Value::Null,
            json!(rs.coords()),
        ),
        CheckRecord::new("roots: type B2", rs.type_label == "B2", Value::Null, rs.to_json()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::{bracket_table, build_basis};
    use crate::quaternionic::standard_triple;

    #[test]
    fn b2_at_q1() {
        let b = build_basis(&standard_triple(1).unwrap()).unwrap();
        let rs = root_system(&bracket_table(&b).unwrap()).unwrap();
        assert_eq!(rs.type_label, "B2");
        assert_eq!(rs.coords().into_iter().collect::<BTreeSet<_>>(), expected_b2_coords());
        // [H, L_I] = −2 L_I and [adI, L_I] = 0
        assert_eq!(rs.root((-2, 0)).unwrap().vector, LieElt::basis(OpName::L(Quaternion::I)));
        assert_eq!(rs.root((2, 0)).unwrap().vector, LieElt::basis(OpName::Lambda(Quaternion::I)));
    }

    #[test]
    fn lambda_j_plus_i_lambda_k_is_a_root_vector() {
        let b = build_basis(&standard_triple(1).unwrap()).unwrap();
        let rs = root_system(&bracket_table(&b).unwrap()).unwrap();
        let mut v = LieElt::basis(OpName::Lambda(Quaternion::J));
        v.0[OpName::Lambda(Quaternion::K).index()] = Scalar::i();
        let hit = rs.roots.iter().find(|r| r.vector == v).expect("Λ_J + iΛ_K is a root vector");
        assert_eq!(hit.h, 2);
        assert_eq!(hit.t.abs(), 2);
    }
}
