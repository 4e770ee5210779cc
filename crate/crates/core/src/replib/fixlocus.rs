//! Which induced structures make a given form of pure type `(p, p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::invariants::ad_induced;
use crate::error::{check_dims, Error, Result};
use crate::exterior::{Form, Matrix, MultiIndex};
use crate::io::form_json;
use crate::lefschetz::OperatorBasis;
use crate::quaternionic::{Quaternion, SpherePoint};
use crate::report::CheckRecord;
use crate::scalar::{format_rational, Scalar};

/// Points `s ∈ S²` with `ad(aI + bJ + cK)(α) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixLocus {
    /// `α` is invariant: every induced structure.
    All,
    /// Exactly `±direction`; stored as a primitive integer vector whose first nonzero entry is positive.
    AntipodalPair([BigInt; 3]),
    None,
}

impl FixLocus {
    pub fn label(&self) -> &'static str {
        match self {
            FixLocus::All => "All",
            FixLocus::AntipodalPair(_) => "AntipodalPair",
            FixLocus::None => "None",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FixLocus::AntipodalPair(d) => json!({
                "tag": self.label(),
                "direction": d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
            _ => json!({ "tag": self.label() }),
        }
    }

    /// Whether the sphere point lies in the locus.
    pub fn contains(&self, s: &SpherePoint) -> bool {
        match self {
            FixLocus::All => true,
            FixLocus::None => false,
            FixLocus::AntipodalPair(d) => {
                // s ∥ d  ⇔  s × d = 0
                let d: Vec<BigRational> = d.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                let [a, b, c] = s.coords();
                (b * &d[2] - c * &d[1]).is_zero()
                    && (c * &d[0] - a * &d[2]).is_zero()
                    && (a * &d[1] - b * &d[0]).is_zero()
            }
        }
    }
}

/// Primitive integer representative of a rational direction, first nonzero entry positive.
fn primitive_direction(v: &[Scalar]) -> [BigInt; 3] {
    let den = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.re.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (&x.re * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        ints = ints.into_iter().map(|x| -x).collect();
    }
    [ints[0].clone(), ints[1].clone(), ints[2].clone()]
}

/// Kernel of `(a, b, c) ↦ a·adI(α) + b·adJ(α) + c·adK(α)` over the reals.
/// Complex `α` is handled by stacking real and imaginary parts as separate equations.
pub fn fix_locus(b: &OperatorBasis, alpha: &Form) -> Result<FixLocus> {
    check_dims(b.dim(), alpha.dim())?;
    let mut rows: BTreeMap<(MultiIndex, bool), [BigRational; 3]> = BTreeMap::new();
    for (col, r) in Quaternion::ALL.iter().enumerate() {
        for (m, c) in b.ad(*r).apply(alpha)?.terms() {
            for (is_im, part) in [(false, &c.re), (true, &c.im)] {
                if !part.is_zero() {
                    rows.entry((*m, is_im)).or_insert_with(|| std::array::from_fn(|_| BigRational::zero()))[col] =
                        part.clone();
                }
            }
        }
    }
    let rows: Vec<[BigRational; 3]> = rows.into_values().collect();
    let mat = Matrix::from_fn(rows.len(), 3, |i, j| Scalar::real(rows[i][j].clone()));
    let ker = mat.kernel();
    match ker.len() {
        3 => Ok(FixLocus::All),
        1 => Ok(FixLocus::AntipodalPair(primitive_direction(&ker[0]))),
        0 => Ok(FixLocus::None),
        n => {
            Err(Error::InvariantViolation(format!("annihilator of {alpha} in the isotropy algebra has dimension {n}")))
        }
    }
}

/// For each class: its fix locus and the samples at which it is of pure
/// `(p, p)` type. Samples avoided by every non-invariant class are general-type witnesses.
pub fn general_type_scan(b: &OperatorBasis, classes: &[Form], samples: &[SpherePoint]) -> Result<Vec<CheckRecord>> {
    for (i, c) in classes.iter().enumerate() {
        check_dims(b.dim(), c.dim())?;
        if c.terms().values().any(|x| x.as_integer().is_none()) {
            return Err(Error::Input(format!("class {i} has non-integer coefficients")));
        }
    }
    let ad_samples = samples.iter().map(|s| ad_induced(b, s)).collect::<Result<Vec<_>>>()?;
    let mut hit_by_noninvariant = vec![false; samples.len()];
    let mut out = Vec::new();
    for (i, alpha) in classes.iter().enumerate() {
        let locus = fix_locus(b, alpha)?;
        let mut hits = Vec::new();
        let mut consistent = true;
        for (k, ad_l) in ad_samples.iter().enumerate() {
            let pp = ad_l.apply(alpha)?.is_zero();
            if pp {
                hits.push(k);
            }
            consistent &= pp == locus.contains(&samples[k]);
        }
        let invariant = locus == FixLocus::All;
        if !invariant {
            for &k in &hits {
                hit_by_noninvariant[k] = true;
            }
        }
        let bound_ok = invariant || hits.len() <= 2;
        out.push(CheckRecord::new(
            format!("scan: class {i}"),
            consistent && bound_ok,
            if consistent { Value::Null } else { form_json(alpha) },
            json!({
                "fix_locus": locus.to_json(),
                "pp_samples": hits,
                "invariant": invariant,
            }),
        ));
    }
    let witnesses: Vec<usize> = (0..samples.len()).filter(|k| !hit_by_noninvariant[*k]).collect();
    out.push(CheckRecord::new(
        "scan: general-type witnesses",
        true,
        Value::Null,
        json!({
            "samples": samples.iter().map(sphere_json).collect::<Vec<_>>(),
            "witnesses": witnesses,
        }),
    ));
    Ok(out)
}

pub fn sphere_json(s: &SpherePoint) -> Value {
    json!(s.coords().iter().map(|x| format_rational(x)).collect::<Vec<_>>())
}
