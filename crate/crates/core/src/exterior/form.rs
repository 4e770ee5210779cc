use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::{sign_merge, MultiIndex, MAX_DIM};
use crate::error::{check_dims, Error, Result};
use crate::scalar::Scalar;

/// A sparse element of `Λ*(ℝ^dim) ⊗ ℂ`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form { dim, terms: BTreeMap::new() }
    }

    /// The unit 0-form.
    pub fn one(dim: usize) -> Self {
        Form::monomial(dim, MultiIndex::EMPTY, Scalar::one())
    }

    pub fn monomial(dim: usize, m: MultiIndex, c: Scalar) -> Self {
        let mut f = Form::zero(dim);
        f.add_term(m, c);
        f
    }

    /// `e^{a}` for a 1-based index.
    pub fn basis1(dim: usize, a: usize) -> Self {
        Form::monomial(dim, MultiIndex::single(a), Scalar::one())
    }

    /// `e^{1..dim}`.
    pub fn top(dim: usize) -> Self {
        Form::monomial(dim, MultiIndex::top(dim), Scalar::one())
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut f = Form::zero(dim);
        for (m, c) in terms {
            if !m.fits(dim) {
                return Err(Error::Schema(format!("monomial {m} outside dimension {dim}")));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, Scalar> {
        self.terms
    }

    /// Number of stored (nonzero) terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: MultiIndex) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.fits(self.dim));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Form) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(*m, c * v);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.dim);
        }
        Form { dim: self.dim, terms: self.terms.iter().map(|(m, v)| (*m, c * v)).collect() }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        check_dims(self.dim, other.dim)?;
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        check_dims(self.dim, other.dim)?;
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), other);
        Ok(out)
    }

    pub fn neg(&self) -> Form {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn conj(&self) -> Form {
        Form { dim: self.dim, terms: self.terms.iter().map(|(m, v)| (*m, v.conj())).collect() }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        check_dims(self.dim, other.dim)?;
        let mut out = Form::zero(self.dim);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let Some((sign, u)) = sign_merge(*s, *t) {
                    let c = a * b;
                    out.add_term(u, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0 = 1`.
    pub fn wedge_pow(&self, k: usize) -> Form {
        let mut acc = Form::one(self.dim);
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// The single degree if the form is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Components by degree, zero components omitted.
    pub fn by_degree(&self) -> BTreeMap<usize, Form> {
        let mut out: BTreeMap<usize, Form> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| Form::zero(self.dim)).terms.insert(*m, c.clone());
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    /// Real and imaginary parts as two real forms.
    pub fn split_re_im(&self) -> (Form, Form) {
        let mut re = Form::zero(self.dim);
        let mut im = Form::zero(self.dim);
        for (m, c) in &self.terms {
            re.add_term(*m, Scalar::real(c.re.clone()));
            im.add_term(*m, Scalar::real(c.im.clone()));
        }
        (re, im)
    }

    /// Hermitian pairing `⟨f, g⟩ = Σ f_S · conj(g_S)` with orthonormal monomials.
    pub fn inner(&self, other: &Form) -> Result<Scalar> {
        check_dims(self.dim, other.dim)?;
        let mut acc = Scalar::zero();
        for (m, a) in &self.terms {
            if let Some(b) = other.terms.get(m) {
                acc += &(a * &b.conj());
            }
        }
        Ok(acc)
    }

    /// Coefficient of the top monomial.
    pub fn top_coeff(&self) -> Scalar {
        self.coeff(MultiIndex::top(self.dim))
    }

    /// The positive rational multiple whose real and imaginary parts are
    /// coprime integers, with the first nonzero part of the leading term positive.
    pub fn primitive(&self) -> Form {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_rational::BigRational;
        use num_traits::Signed;
        let Some(lead) = self.terms.values().next() else {
            return self.clone();
        };
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
        let den = BigRational::from_integer(den);
        let content = self.terms.values().fold(BigInt::zero(), |acc, c| {
            let re = (&c.re * &den).to_integer();
            let im = (&c.im * &den).to_integer();
            acc.gcd(&re).gcd(&im)
        });
        let mut factor = den / BigRational::from_integer(content);
        if lead.re.is_negative() || (lead.re.is_zero() && lead.im.is_negative()) {
            factor = -factor;
        }
        self.scale(&Scalar::real(factor))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{m}")?;
        }
        Ok(())
    }
}
