//! The standard quaternionic structure on `ℝ^{4q}` and the forms it induces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{lift_derivation, Form, Matrix, MultiIndex, SparseOp};
use crate::scalar::Scalar;

/// A real endomorphism of `ℝ^{4q}`; column `a` is the image of `e_a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endo(Matrix);

impl Endo {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn compose(&self, other: &Endo) -> Endo {
        Endo(self.0.mul(&other.0))
    }

    pub fn is_complex_structure(&self) -> bool {
        self.0.mul(&self.0) == Matrix::identity(self.dim()).scale(&Scalar::from_int(-1))
    }

    /// Matrix of the induced action on 1-forms, in the basis `e^a`: `ξ ↦ −ξ∘R`.
    ///
    /// This is the contragredient action, so `R ↦ ad R` is a Lie algebra
    /// homomorphism. For an orthogonal complex structure it coincides with `R`.
    pub fn coform_action(&self) -> Matrix {
        self.0.transpose().scale(&Scalar::from_int(-1))
    }

    /// The derivation `ad R` on all forms.
    pub fn ad(&self) -> SparseOp {
        lift_derivation(&self.coform_action()).expect("square matrix")
    }
}

/// Endomorphisms `I, J, K` with `I² = J² = K² = −1` and `IJ = −JI = K`.
#[derive(Clone, Debug)]
pub struct HyperTriple {
    pub q: usize,
    pub i: Endo,
    pub j: Endo,
    pub k: Endo,
}

// Images of e1..e4 under one 4×4 block, as (target, sign).
const BLOCK_I: [(usize, i64); 4] = [(1, 1), (0, -1), (3, 1), (2, -1)];
const BLOCK_J: [(usize, i64); 4] = [(2, 1), (3, -1), (0, -1), (1, 1)];
const BLOCK_K: [(usize, i64); 4] = [(3, 1), (2, 1), (1, -1), (0, -1)];

fn block_diag(q: usize, block: &[(usize, i64); 4]) -> Endo {
    let n = 4 * q;
    let mut m = Matrix::zeros(n, n);
    for b in 0..q {
        for (src, &(dst, sign)) in block.iter().enumerate() {
            m.set(4 * b + dst, 4 * b + src, Scalar::from_int(sign));
        }
    }
    Endo(m)
}

/// The block-diagonal triple on `ℝ^{4q}`.
pub fn standard_triple(q: usize) -> Result<HyperTriple> {
    if q < 1 {
        return Err(Error::Input("quaternionic dimension q must be at least 1".into()));
    }
    if 4 * q > crate::exterior::MAX_DIM {
        return Err(Error::Input(format!("q = {q} exceeds the supported maximum of 16")));
    }
    let t = HyperTriple { q, i: block_diag(q, &BLOCK_I), j: block_diag(q, &BLOCK_J), k: block_diag(q, &BLOCK_K) };
    t.check_relations()?;
    Ok(t)
}

impl HyperTriple {
    pub fn dim(&self) -> usize {
        4 * self.q
    }

    /// Complex dimension `2q`.
    pub fn complex_dim(&self) -> usize {
        2 * self.q
    }

    pub fn check_relations(&self) -> Result<()> {
        for (name, r) in [("I", &self.i), ("J", &self.j), ("K", &self.k)] {
            if !r.is_complex_structure() {
                return Err(Error::InvariantViolation(format!("{name}² ≠ −Id")));
            }
        }
        if self.i.compose(&self.j) != self.k {
            return Err(Error::InvariantViolation("I∘J ≠ K".into()));
        }
        let neg_k = Endo(self.k.0.scale(&Scalar::from_int(-1)));
        if self.j.compose(&self.i) != neg_k {
            return Err(Error::InvariantViolation("J∘I ≠ −K".into()));
        }
        Ok(())
    }

    pub fn get(&self, r: Quaternion) -> &Endo {
        match r {
            Quaternion::I => &self.i,
            Quaternion::J => &self.j,
            Quaternion::K => &self.k,
        }
    }
}

/// Names of the three basic complex structures.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Quaternion {
    I,
    J,
    K,
}

impl Quaternion {
    pub const ALL: [Quaternion; 3] = [Quaternion::I, Quaternion::J, Quaternion::K];

    pub fn name(self) -> &'static str {
        match self {
            Quaternion::I => "I",
            Quaternion::J => "J",
            Quaternion::K => "K",
        }
    }
}

/// A rational point `(a, b, c)` with `a² + b² + c² = 1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SpherePoint {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl SpherePoint {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        let n = &a * &a + &b * &b + &c * &c;
        if !n.is_one() {
            return Err(Error::Input(format!("({a}, {b}, {c}) is not on the unit sphere")));
        }
        Ok(SpherePoint { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        SpherePoint::new(r(a), r(b), r(c))
    }

    pub fn coords(&self) -> [&BigRational; 3] {
        [&self.a, &self.b, &self.c]
    }
}

/// Inverse stereographic projection from `(0, 0, −1)`:
/// `(u, v) ↦ (2u, 2v, 1 − u² − v²) / (1 + u² + v²)`.
pub fn rational_sphere_point(u: &BigRational, v: &BigRational) -> SpherePoint {
    let s = u * u + v * v;
    let den = BigRational::one() + &s;
    let two = BigRational::from_integer(BigInt::from(2));
    SpherePoint { a: &two * u / &den, b: &two * v / &den, c: (BigRational::one() - &s) / &den }
}

/// `L = aI + bJ + cK`.
pub fn induced(t: &HyperTriple, s: &SpherePoint) -> Result<Endo> {
    SpherePoint::new(s.a.clone(), s.b.clone(), s.c.clone())?;
    let m =
        t.i.0
            .scale(&Scalar::real(s.a.clone()))
            .add(&t.j.0.scale(&Scalar::real(s.b.clone())))
            .add(&t.k.0.scale(&Scalar::real(s.c.clone())));
    Ok(Endo(m))
}

/// Kähler form `ω_R = ⟨R·, ·⟩`: the coefficient of `e^{ab}` (a < b) is `⟨R e_a, e_b⟩`.
pub fn kaehler_form(r: &Endo) -> Result<Form> {
    let n = r.dim();
    let m = r.matrix();
    let mut f = Form::zero(n);
    for a in 0..n {
        for b in a..n {
            let upper = m.get(b, a);
            let lower = m.get(a, b);
            if upper != &-lower {
                return Err(Error::InvariantViolation(format!(
                    "⟨R e_{}, e_{}⟩ = {upper} but ⟨R e_{}, e_{}⟩ = {lower}; R is not skew",
                    a + 1,
                    b + 1,
                    b + 1,
                    a + 1
                )));
            }
            if a < b {
                f.add_term(MultiIndex::new(&[a + 1, b + 1], n)?, upper.clone());
            }
        }
    }
    Ok(f)
}

/// `Ω = ω_J + i·ω_K`.
pub fn holo_symplectic(t: &HyperTriple) -> Form {
    let wj = kaehler_form(&t.j).expect("standard J is skew");
    let wk = kaehler_form(&t.k).expect("standard K is skew");
    let mut out = wj;
    out.add_scaled(&Scalar::i(), &wk);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> Form {
        Form::monomial(dim, MultiIndex::new(idx, dim).unwrap(), Scalar::one())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quaternion_relations() {
        for q in 1..=3 {
            standard_triple(q).unwrap().check_relations().unwrap();
        }
        assert!(standard_triple(0).is_err());
    }

    #[test]
    fn ij_on_first_basis_vector() {
        let t = standard_triple(1).unwrap();
        let e1: Vec<Scalar> = (0..4).map(|k| Scalar::from_int((k == 0) as i64)).collect();
        let ij = t.i.compose(&t.j);
        let e4: Vec<Scalar> = (0..4).map(|k| Scalar::from_int((k == 3) as i64)).collect();
        assert_eq!(ij.matrix().mul_vec(&e1), e4);
        assert_eq!(t.k.matrix().mul_vec(&e1), e4);
    }

    #[test]
    fn sphere_points() {
        let p = rational_sphere_point(&rat(0, 1), &rat(0, 1));
        assert_eq!(p, SpherePoint::from_ints(0, 0, 1).unwrap());
        let p = rational_sphere_point(&rat(1, 1), &rat(0, 1));
        assert_eq!(p, SpherePoint::from_ints(1, 0, 0).unwrap());
        let p = rational_sphere_point(&rat(1, 2), &rat(1, 2));
        assert_eq!(p.coords(), [&rat(2, 3), &rat(2, 3), &rat(1, 3)]);
        assert!(SpherePoint::new(rat(1, 1), rat(1, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn induced_structures() {
        let t = standard_triple(1).unwrap();
        assert_eq!(induced(&t, &SpherePoint::from_ints(1, 0, 0).unwrap()).unwrap(), t.i);
        assert_eq!(induced(&t, &SpherePoint::from_ints(0, 0, 1).unwrap()).unwrap(), t.k);
        let s = SpherePoint::new(rat(3, 5), rat(0, 1), rat(4, 5)).unwrap();
        assert!(induced(&t, &s).unwrap().is_complex_structure());
    }

    #[test]
    fn kaehler_forms_q1() {
        let t = standard_triple(1).unwrap();
        assert_eq!(kaehler_form(&t.i).unwrap(), e(4, &[1, 2]).add(&e(4, &[3, 4])).unwrap());
        assert_eq!(kaehler_form(&t.j).unwrap(), e(4, &[1, 3]).sub(&e(4, &[2, 4])).unwrap());
        assert_eq!(kaehler_form(&t.k).unwrap(), e(4, &[1, 4]).add(&e(4, &[2, 3])).unwrap());
    }

    #[test]
    fn kaehler_form_rejects_non_skew() {
        let id = Endo(Matrix::identity(4));
        assert!(matches!(kaehler_form(&id), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn omega_factorizes_q1() {
        // (e1 + i e2) ∧ (e3 + i e4)
        let t = standard_triple(1).unwrap();
        let mut dz1 = Form::basis1(4, 1);
        dz1.add_scaled(&Scalar::i(), &Form::basis1(4, 2));
        let mut dz2 = Form::basis1(4, 3);
        dz2.add_scaled(&Scalar::i(), &Form::basis1(4, 4));
        let omega = holo_symplectic(&t);
        assert_eq!(omega, dz1.wedge(&dz2).unwrap());
        assert!(omega.wedge(&omega).unwrap().is_zero());
    }

    #[test]
    fn omega_top_power() {
        let t = standard_triple(2).unwrap();
        let omega = holo_symplectic(&t);
        assert!(!omega.wedge_pow(2).is_zero());
        assert!(omega.wedge_pow(3).is_zero());
    }

    #[test]
    fn ad_i_on_coforms() {
        // ξ ↦ −ξ∘I sends e¹ to e² and dz = e¹ + i e² to −i·dz.
        let t = standard_triple(1).unwrap();
        let ad_i = t.i.ad();
        assert_eq!(ad_i.apply(&Form::basis1(4, 1)).unwrap(), Form::basis1(4, 2));
        assert!(ad_i.apply(&e(4, &[1, 2])).unwrap().is_zero());
        let mut dz = Form::basis1(4, 1);
        dz.add_scaled(&Scalar::i(), &Form::basis1(4, 2));
        assert_eq!(ad_i.apply(&dz).unwrap(), dz.scale(&-Scalar::i()));
        let omega = holo_symplectic(&t);
        assert_eq!(ad_i.apply(&omega).unwrap(), omega.scale(&Scalar::complex(0, -2)));
    }
}
