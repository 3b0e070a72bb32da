use super::vector::Vector;
use crate::polyring::{Monomial, Polynomial, PrimeField};

/// The coefficient ring `S/I` of module computations: the prime field, the
/// variable count and the reduced Gröbner basis of `I` (monic, possibly empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    field: PrimeField,
    nvars: usize,
    ideal: Vec<Polynomial>,
    leads: Vec<Monomial>,
}

impl RingContext {
    /// The polynomial ring itself (`I = 0`).
    pub fn polynomial(field: PrimeField, nvars: usize) -> Self {
        RingContext {
            field,
            nvars,
            ideal: Vec::new(),
            leads: Vec::new(),
        }
    }

    /// `S/I` for arbitrary generators of `I`; computes the reduced basis.
    pub fn quotient(field: PrimeField, nvars: usize, gens: &[Polynomial]) -> Self {
        let ideal = super::ideal_basis(field, nvars, gens);
        let leads = ideal.iter().map(|g| *g.leading_monomial().unwrap()).collect();
        RingContext {
            field,
            nvars,
            ideal,
            leads,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Reduced Gröbner basis of `I`.
    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub(crate) fn ideal_leads(&self) -> &[Monomial] {
        &self.leads
    }

    #[inline]
    pub(crate) fn ideal_divisor(&self, m: &Monomial) -> Option<&Polynomial> {
        self.leads
            .iter()
            .position(|w| w.divides(m))
            .map(|i| &self.ideal[i])
    }

    /// Whether `m` is a leading monomial of `I`, i.e. zero modulo leading terms.
    pub fn in_ideal_leads(&self, m: &Monomial) -> bool {
        self.leads.iter().any(|w| w.divides(m))
    }

    /// Normal form of a polynomial modulo `I`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.ideal.is_empty() {
            return f.clone();
        }
        let v = Vector::from_components(std::slice::from_ref(f));
        self.reduce_vector(&v).component(0)
    }

    /// Componentwise normal form modulo `I`.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.ideal.is_empty() || !v.terms.iter().any(|t| self.in_ideal_leads(&t.mono)) {
            return v.clone();
        }
        let mut v = v.clone();
        let mut k = 0;
        while k < v.terms.len() {
            let term = v.terms[k];
            if let Some(g) = self.ideal_divisor(&term.mono) {
                let q = g.leading_monomial().unwrap().quotient_of(&term.mono);
                v.add_poly_scaled_from(self.field, k, g, term.pos, self.field.neg(term.coef), &q);
            } else {
                k += 1;
            }
        }
        v
    }

    /// Product in `S/I`.
    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(f.terms().len() * g.terms().len());
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                terms.push((a.mul(b), self.field.mul(*ca, *cb)));
            }
        }
        self.reduce(&Polynomial::from_terms(self.field, terms))
    }

    /// `v * f` reduced modulo `I`.
    pub fn mul_vector(&self, v: &Vector, f: &Polynomial) -> Vector {
        self.reduce_vector(&v.mul_poly(self.field, f))
    }

    /// Whether the polynomial is zero in `S/I`.
    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }
}
