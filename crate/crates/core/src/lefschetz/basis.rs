use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{Form, MultiIndex, SparseOp};
use crate::io::form_json;
use crate::quaternionic::{holo_symplectic, kaehler_form, HyperTriple, Quaternion};
use crate::report::CheckRecord;
use crate::scalar::Scalar;

/// Names of the ten basis operators, in storage order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum OpName {
    L(Quaternion),
    Lambda(Quaternion),
    Ad(Quaternion),
    H,
}

impl OpName {
    pub const ALL: [OpName; 10] = [
        OpName::L(Quaternion::I),
        OpName::L(Quaternion::J),
        OpName::L(Quaternion::K),
        OpName::Lambda(Quaternion::I),
        OpName::Lambda(Quaternion::J),
        OpName::Lambda(Quaternion::K),
        OpName::Ad(Quaternion::I),
        OpName::Ad(Quaternion::J),
        OpName::Ad(Quaternion::K),
        OpName::H,
    ];

    pub fn index(self) -> usize {
        OpName::ALL.iter().position(|n| *n == self).expect("listed")
    }

    pub fn label(self) -> String {
        match self {
            OpName::L(r) => format!("L_{}", r.name()),
            OpName::Lambda(r) => format!("Lambda_{}", r.name()),
            OpName::Ad(r) => format!("ad{}", r.name()),
            OpName::H => "H".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<OpName> {
        OpName::ALL.into_iter().find(|n| n.label().eq_ignore_ascii_case(s))
    }

    /// Form-degree shift of the operator.
    pub fn degree_shift(self) -> isize {
        match self {
            OpName::L(_) => 2,
            OpName::Lambda(_) => -2,
            OpName::Ad(_) | OpName::H => 0,
        }
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `L_R, Λ_R, ad R` for `R ∈ {I, J, K}` and the Hodge operator `H`.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    triple: HyperTriple,
    ops: Vec<SparseOp>,
}

/// Builds the ten operators. `H` is `[Λ_I, L_I]`, which acts by `+m` on 0-forms.
pub fn build_basis(t: &HyperTriple) -> Result<OperatorBasis> {
    let mut ops = Vec::with_capacity(10);
    let mut lambdas = Vec::with_capacity(3);
    let mut ls = Vec::with_capacity(3);
    for r in Quaternion::ALL {
        let l = SparseOp::left_mult(&kaehler_form(t.get(r))?);
        lambdas.push(l.adjoint());
        ls.push(l);
    }
    ops.extend(ls.iter().cloned());
    ops.extend(lambdas.iter().cloned());
    for r in Quaternion::ALL {
        ops.push(t.get(r).ad());
    }
    ops.push(lambdas[0].bracket(&ls[0])?);
    let basis = OperatorBasis { triple: t.clone(), ops };
    for name in OpName::ALL {
        if basis.op(name).degree_shift() != Some(name.degree_shift()) {
            return Err(Error::InvariantViolation(format!("{name} is not homogeneous of its expected degree")));
        }
    }
    Ok(basis)
}

impl OperatorBasis {
    pub fn triple(&self) -> &HyperTriple {
        &self.triple
    }

    pub fn dim(&self) -> usize {
        self.triple.dim()
    }

    /// Complex dimension `m = 2q`.
    pub fn m(&self) -> usize {
        self.triple.complex_dim()
    }

    pub fn op(&self, name: OpName) -> &SparseOp {
        &self.ops[name.index()]
    }

    pub fn ops(&self) -> &[SparseOp] {
        &self.ops
    }

    pub fn l(&self, r: Quaternion) -> &SparseOp {
        self.op(OpName::L(r))
    }

    pub fn lambda(&self, r: Quaternion) -> &SparseOp {
        self.op(OpName::Lambda(r))
    }

    pub fn ad(&self, r: Quaternion) -> &SparseOp {
        self.op(OpName::Ad(r))
    }

    pub fn h(&self) -> &SparseOp {
        self.op(OpName::H)
    }

    pub fn kaehler(&self, r: Quaternion) -> Form {
        kaehler_form(self.triple.get(r)).expect("standard structures are skew")
    }

    pub fn omega(&self) -> Form {
        holo_symplectic(&self.triple)
    }

    /// The top form `e^{1..4q}`.
    pub fn det(&self) -> Form {
        Form::top(self.dim())
    }

    /// `Σ c_k b_k` as an operator.
    pub fn combination(&self, coeffs: &[Scalar]) -> Result<SparseOp> {
        let terms: Vec<(Scalar, &SparseOp)> = coeffs.iter().cloned().zip(self.ops.iter()).collect();
        SparseOp::linear_combination(self.dim(), &terms)
    }
}

fn op_equality_record(name: &str, lhs: &SparseOp, rhs: &SparseOp, columns: usize) -> CheckRecord {
    let diff = lhs.first_difference(rhs);
    let witness = diff.map_or(Value::Null, |m| {
        json!({
            "column": m.indices(),
            "lhs": form_json(&lhs.column(m)),
            "rhs": form_json(&rhs.column(m)),
        })
    });
    CheckRecord::new(name, diff.is_none(), witness, json!({ "columns_checked": columns }))
}

/// `[adI, adJ] = 2adK` and cyclic permutations, on every basis monomial.
pub fn su2_check(b: &OperatorBasis) -> Result<Vec<CheckRecord>> {
    use Quaternion::*;
    let two = Scalar::from_int(2);
    let columns = 1usize << b.dim();
    let mut out = Vec::new();
    for (x, y, z) in [(I, J, K), (J, K, I), (K, I, J)] {
        let lhs = b.ad(x).bracket(b.ad(y))?;
        let rhs = b.ad(z).scale(&two);
        out.push(op_equality_record(
            &format!("su2: [ad{}, ad{}] = 2 ad{}", x.name(), y.name(), z.name()),
            &lhs,
            &rhs,
            columns,
        ));
    }
    Ok(out)
}

/// `H` acts on `Λ^r` as `(m − r)`, and `[Λ_R, L_R]` is the same operator for each `R`.
pub fn hodge_check(b: &OperatorBasis) -> Result<Vec<CheckRecord>> {
    let dim = b.dim();
    let m = b.m() as i64;
    let scalar_op = SparseOp::from_fn(dim, |s| Form::monomial(dim, s, Scalar::from_int(m - s.degree() as i64)));
    let mut out = vec![op_equality_record("hodge: H = (m - r) on r-forms", b.h(), &scalar_op, 1 << dim)];
    for r in [Quaternion::J, Quaternion::K] {
        let hr = b.lambda(r).bracket(b.l(r))?;
        out.push(op_equality_record(&format!("hodge: [Lambda_{0}, L_{0}] = H", r.name()), &hr, b.h(), 1 << dim));
    }
    // Scalar values per degree, as a readable table.
    let per_degree: Vec<Value> = (0..=dim)
        .map(|r| {
            let m0 = MultiIndex::all_of_degree(dim, r)[0];
            let img = b.h().column(m0);
            json!({ "degree": r, "eigenvalue": img.coeff(m0).to_string() })
        })
        .collect();
    out.push(CheckRecord::new(
        "hodge: per-degree eigenvalues",
        per_degree.iter().enumerate().all(|(r, v)| v["eigenvalue"] == json!((m - r as i64).to_string())),
        Value::Null,
        json!(per_degree),
    ));
    Ok(out)
}

/// `true` when `f` is killed by `adI`, `adJ` and `adK`.
pub fn is_gm_invariant(b: &OperatorBasis, f: &Form) -> Result<bool> {
    for r in Quaternion::ALL {
        if !b.ad(r).apply(f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
