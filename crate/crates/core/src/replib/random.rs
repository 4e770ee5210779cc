//! Seeded sampling of forms and sphere points. Every draw goes through a
//! `ChaCha8Rng`, so a seed fixes the whole stream.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Form, MultiIndex};
use crate::quaternionic::{rational_sphere_point, SpherePoint};
use crate::scalar::Scalar;

pub use rand::SeedableRng;
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// A random homogeneous real form with integer coefficients in `[-3, 3]`;
/// each monomial is kept with probability `density`. Never zero.
pub fn random_integer_form<R: Rng>(rng: &mut R, dim: usize, degree: usize, density: f64) -> Form {
    let monomials = MultiIndex::all_of_degree(dim, degree);
    loop {
        let mut f = Form::zero(dim);
        for m in &monomials {
            if rng.gen_bool(density) {
                f.add_term(*m, Scalar::from_int(small_int(rng, 3)));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random nonzero integer combination of `basis`, coefficients in `[-4, 4]`.
/// Returns `None` for an empty basis.
pub fn random_combination<R: Rng>(rng: &mut R, basis: &[Form]) -> Option<Form> {
    let dim = basis.first()?.dim();
    loop {
        let mut f = Form::zero(dim);
        for b in basis {
            f.add_scaled(&Scalar::from_int(small_int(rng, 4)), b);
        }
        if !f.is_zero() {
            return Some(f);
        }
    }
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n = small_int(rng, 6);
    let d = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A random rational point of the unit sphere via stereographic coordinates.
pub fn random_sphere_point<R: Rng>(rng: &mut R) -> SpherePoint {
    let u = random_rational(rng);
    let v = random_rational(rng);
    rational_sphere_point(&u, &v)
}

/// `n` pairwise distinct random sphere points.
pub fn distinct_sphere_points<R: Rng>(rng: &mut R, n: usize) -> Vec<SpherePoint> {
    let mut out: Vec<SpherePoint> = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_sphere_point(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}
