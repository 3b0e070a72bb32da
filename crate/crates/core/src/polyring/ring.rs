use super::field::PrimeField;
use super::monomial::{Monomial, EXPONENT_LIMIT, MAX_VARS};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// The polynomial ring `F_p[x_1, ..., x_n]` with grevlex order and positive
/// variable weights (all 1 for the standard grading).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(p: u64, names: Vec<String>) -> Result<Self> {
        let n = names.len();
        PolyRing::with_weights(p, names, vec![1; n])
    }

    pub fn with_weights(p: u64, names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                found: names.len(),
                max: MAX_VARS,
            });
        }
        if weights.len() != names.len() {
            return Err(Error::VariableCountMismatch {
                expected: names.len(),
                found: weights.len(),
            });
        }
        if weights.contains(&0) {
            return Err(Error::ShapeMismatch("variable weights must be positive".into()));
        }
        Ok(PolyRing {
            field,
            names,
            weights,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.nvars(), 1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field.reduce(c))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Monomial::var(self.nvars(), i), 1)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn check(&self, f: &Polynomial) -> Result<()> {
        match f.terms.first() {
            Some((m, _)) if m.nvars() != self.nvars() => Err(Error::VariableCountMismatch {
                expected: self.nvars(),
                found: m.nvars(),
            }),
            _ => Ok(()),
        }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, g, 1, &Monomial::one(self.nvars()))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, g, self.field.neg(1), &Monomial::one(self.nvars()))
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, a)| (*m, self.field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, f: &Polynomial, m: &Monomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(u, a)| (u.mul(m), self.field.mul(*a, c)))
                .collect(),
        }
    }

    /// `f + c * m * g`, merging the sorted term lists.
    pub fn add_scaled(&self, f: &Polynomial, g: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let fl = self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < f.terms.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.extend_from_slice(&f.terms[i..]);
                break;
            }
            let gm = g.terms[j].0.mul(m);
            if i == f.terms.len() {
                out.push((gm, fl.mul(g.terms[j].1, c)));
                j += 1;
                continue;
            }
            match f.terms[i].0.cmp(&gm) {
                std::cmp::Ordering::Greater => {
                    out.push(f.terms[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((gm, fl.mul(g.terms[j].1, c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = fl.add(f.terms[i].1, fl.mul(g.terms[j].1, c));
                    if s != 0 {
                        out.push((gm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
        for (a, ca) in &f.terms {
            for (b, cb) in &g.terms {
                terms.push((a.mul(b), self.field.mul(*ca, *cb)));
            }
        }
        Polynomial::from_terms(self.field, terms)
    }

    /// Checked product: both factors must belong to this ring.
    pub fn multiply(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let bound = f.terms.iter().map(|t| max_exp(&t.0)).max().unwrap_or(0)
            + g.terms.iter().map(|t| max_exp(&t.0)).max().unwrap_or(0);
        if bound >= EXPONENT_LIMIT {
            return Err(Error::ExponentOverflow(bound));
        }
        Ok(self.mul(f, g))
    }

    pub fn pow(&self, f: &Polynomial, mut k: u64) -> Result<Polynomial> {
        let bound = f.terms.iter().map(|t| max_exp(&t.0)).max().unwrap_or(0) as u128 * k as u128;
        if bound >= EXPONENT_LIMIT as u128 {
            return Err(Error::ExponentOverflow(bound.min(u64::MAX as u128) as u64));
        }
        let mut base = f.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Replaces each variable `x_i` by `images[i]` and expands.
    pub fn substitute(&self, f: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::ImageCountMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        self.check(f)?;
        for g in images {
            self.check(g)?;
        }
        let image_max: Vec<u64> = images
            .iter()
            .map(|g| g.terms.iter().map(|t| max_exp(&t.0)).max().unwrap_or(0))
            .collect();
        // cache of powers images[i]^k
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|g| vec![self.one(), g.clone()]).collect();
        let mut out = Vec::new();
        for (m, c) in &f.terms {
            let bound: u64 = (0..self.nvars())
                .map(|i| m.exponent(i) as u64 * image_max[i])
                .sum();
            if bound >= EXPONENT_LIMIT {
                return Err(Error::ExponentOverflow(bound));
            }
            let mut term = Polynomial::constant(self.nvars(), *c);
            for i in 0..self.nvars() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = self.mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                term = self.mul(&term, &powers[i][e]);
                if term.is_zero() {
                    break;
                }
            }
            out.extend(term.terms);
        }
        Ok(Polynomial::from_terms(self.field, out))
    }

    /// `f^(p^e)`. Over a prime field Frobenius fixes coefficients, so this is
    /// exponent scaling term by term.
    pub fn frobenius_apply(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        self.check(f)?;
        let q = (self.characteristic() as u64)
            .checked_pow(e)
            .filter(|&q| q < EXPONENT_LIMIT)
            .ok_or(Error::ExponentOverflow(u64::MAX))?;
        let mut terms = Vec::with_capacity(f.terms.len());
        for (m, c) in &f.terms {
            let mq = m
                .checked_pow(q)
                .ok_or_else(|| Error::ExponentOverflow(max_exp(m) * q))?;
            terms.push((mq, *c));
        }
        // m -> m^q is strictly monotone for grevlex, so the order is preserved
        Ok(Polynomial { terms })
    }

    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        let mut degs = f.terms.iter().map(|(m, _)| m.weighted_degree(&self.weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.weights)
    }

    /// Degree-one part of `f` as a coefficient vector over the variables.
    pub fn linear_part(&self, f: &Polynomial) -> Vec<u32> {
        let mut v = vec![0; self.nvars()];
        for (m, c) in &f.terms {
            if m.degree() == 1 {
                v[m.pure_power_variable().unwrap()] = *c;
            }
        }
        v
    }

    /// All monomials of total degree exactly `d`, in decreasing order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i + 1 == n {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for a in (0..=left).rev() {
                exps[i] = a;
                rec(i + 1, left - a, exps, out);
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

fn max_exp(m: &Monomial) -> u64 {
    m.exponents().iter().copied().max().unwrap_or(0) as u64
}
