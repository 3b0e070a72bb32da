use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, RingContext};
use crate::modules::{non_pivot_columns, ChainComplex, Matrix, QuotientRing};
use crate::polyring::{Monomial, Polynomial};

/// Default bound on the number of iterations searched for a certificate.
pub const DEFAULT_CERTIFICATE_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoKind {
    /// `x_i ↦ x_i^(p^e)`.
    Frobenius(u32),
    /// Arbitrary images.
    Substitution,
    /// Every variable maps to zero (the graded splitting through `k`).
    Projection,
}

/// Proof that the map is contracting: `φ^steps(x_i) ∈ m^2 + I` for every
/// variable, with the images `φ^steps(x_i)` kept as the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub steps: usize,
    pub witness: Vec<Polynomial>,
}

/// A local endomorphism of a quotient ring given by the images of the
/// variables, certified contracting at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMap {
    ring: Arc<QuotientRing>,
    images: Vec<Polynomial>,
    kind: EndoKind,
    certificate: Certificate,
}

/// Builds the endomorphism `x_i ↦ images[i]` of `ring`.
///
/// Images must lie in `m` and carry `I` into `I`. The map is accepted only if
/// some `s ≤ s_max` has `φ^s(m) ⊆ m^2`.
pub fn make_endomorphism(ring: Arc<QuotientRing>, images: Vec<Polynomial>, s_max: usize) -> Result<EndoMap> {
    EndoMap::build(ring, images, EndoKind::Substitution, s_max)
}

impl EndoMap {
    fn build(ring: Arc<QuotientRing>, images: Vec<Polynomial>, kind: EndoKind, s_max: usize) -> Result<Self> {
        let poly = ring.poly();
        if images.len() != ring.nvars() {
            return Err(Error::ImageCountMismatch {
                expected: ring.nvars(),
                found: images.len(),
            });
        }
        for g in &images {
            poly.check(g)?;
        }
        let images: Vec<Polynomial> = images.iter().map(|g| ring.reduce(g)).collect();
        if let Some(g) = images.iter().find(|g| !ring.in_maximal_ideal(g)) {
            return Err(Error::NotInMaximalIdeal(poly.format(g)));
        }
        let mut subst = Substituter::new(&ring, &images);
        for g in ring.ideal_basis() {
            if !subst.apply(g).is_zero() {
                return Err(Error::NotEndomorphism(poly.format(g)));
            }
        }
        let certificate = certify(&ring, &images, s_max)?;
        Ok(EndoMap {
            ring,
            images,
            kind,
            certificate,
        })
    }

    /// The Frobenius `r ↦ r^(p^e)`.
    pub fn frobenius(ring: Arc<QuotientRing>, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::NotCertifiedContracting(0));
        }
        let images = ring
            .poly()
            .vars()
            .iter()
            .map(|x| ring.poly().frobenius_apply(x, e))
            .collect::<Result<Vec<_>>>()?;
        EndoMap::build(ring, images, EndoKind::Frobenius(e), DEFAULT_CERTIFICATE_BOUND)
    }

    /// The map sending every variable to zero.
    pub fn projection(ring: Arc<QuotientRing>) -> Result<Self> {
        let images = vec![Polynomial::zero(); ring.nvars()];
        EndoMap::build(ring, images, EndoKind::Projection, DEFAULT_CERTIFICATE_BOUND)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn kind(&self) -> EndoKind {
        self.kind
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// `φ(f)` reduced modulo `I`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        self.substituter().apply(f)
    }

    fn substituter(&self) -> Substituter<'_> {
        Substituter::new(&self.ring, &self.images)
    }

    /// `φ^e`.
    pub fn power(&self, e: u32) -> Result<EndoMap> {
        if e == 0 {
            return Err(Error::NotCertifiedContracting(0));
        }
        if let EndoKind::Frobenius(f) = self.kind {
            return EndoMap::frobenius(self.ring.clone(), f * e);
        }
        let mut images = self.images.clone();
        let mut subst = self.substituter();
        for _ in 1..e {
            images = images.iter().map(|g| subst.apply(g)).collect();
        }
        let bound = self.certificate.steps.max(DEFAULT_CERTIFICATE_BOUND);
        EndoMap::build(self.ring.clone(), images, self.kind, bound)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &EndoMap) -> Result<EndoMap> {
        if self.ring != inner.ring {
            return Err(Error::RingMismatch);
        }
        let kind = match (self.kind, inner.kind) {
            (EndoKind::Frobenius(a), EndoKind::Frobenius(b)) => return EndoMap::frobenius(self.ring.clone(), a + b),
            (EndoKind::Projection, _) | (_, EndoKind::Projection) => EndoKind::Projection,
            _ => EndoKind::Substitution,
        };
        let mut subst = self.substituter();
        let images = inner.images.iter().map(|g| subst.apply(g)).collect();
        let bound = self.certificate.steps.max(inner.certificate.steps).max(DEFAULT_CERTIFICATE_BOUND);
        EndoMap::build(self.ring.clone(), images, kind, bound)
    }

    /// Entrywise `φ`, reduced modulo `I`.
    pub fn twist_matrix(&self, a: &Matrix) -> Matrix {
        let mut subst = self.substituter();
        a.map_entries(|f| subst.apply(f))
    }

    /// `C` with every differential twisted by `φ`; for a complex of free
    /// modules this computes `C ⊗_R S` with `S` acting through `φ`.
    pub fn twist_complex(&self, c: &ChainComplex) -> ChainComplex {
        let mut subst = self.substituter();
        c.map_differentials(|f| subst.apply(f))
    }

    /// Indices of variables forming a minimal generating set of `m` modulo
    /// `φ(m)R`, found by elimination on `m / (m^2 + I + φ(m)R)`.
    pub fn cokernel_generators(&self) -> Vec<usize> {
        let poly = self.ring.poly();
        let rows: Vec<Vec<u32>> = self
            .ring
            .generators()
            .iter()
            .chain(self.images.iter())
            .map(|g| poly.linear_part(g))
            .collect();
        non_pivot_columns(self.ring.field(), rows, self.ring.nvars())
    }

    /// The variables returned by [`EndoMap::cokernel_generators`].
    pub fn cokernel_generator_polys(&self) -> Vec<Polynomial> {
        let poly = self.ring.poly();
        self.cokernel_generators().into_iter().map(|i| poly.var(i)).collect()
    }

    /// `edim φ`: minimal number of generators of `m` modulo `φ(m)R`.
    pub fn edim(&self) -> usize {
        self.cokernel_generators().len()
    }

    /// `ℓ(R/φ(m)R)`, or `None` when that ring is not artinian.
    pub fn image_quotient_length(&self) -> Option<usize> {
        let mut gens = self.ring.generators().to_vec();
        gens.extend(self.images.iter().cloned());
        let ctx = RingContext::quotient(self.ring.field(), self.ring.nvars(), &gens);
        GroebnerBasis::zero(Arc::new(ctx), 1).quotient_length()
    }
}

/// Least `s ≤ s_max` with `φ^s(x_i) ∈ m^2 + I` for all `i`.
fn certify(ring: &QuotientRing, images: &[Polynomial], s_max: usize) -> Result<Certificate> {
    let mut subst = Substituter::new(ring, images);
    let mut current = images.to_vec();
    for steps in 1..=s_max {
        if current.iter().all(|g| ring.in_maximal_ideal_squared(g)) {
            return Ok(Certificate {
                steps,
                witness: current,
            });
        }
        if steps < s_max {
            current = current.iter().map(|g| subst.apply(g)).collect();
        }
    }
    Err(Error::NotCertifiedContracting(s_max))
}

/// Evaluates `f(images)` in `R`, caching the reduced powers of each image.
struct Substituter<'a> {
    ring: &'a QuotientRing,
    powers: Vec<Vec<Polynomial>>,
}

impl<'a> Substituter<'a> {
    fn new(ring: &'a QuotientRing, images: &[Polynomial]) -> Self {
        let one = ring.poly().one();
        Substituter {
            ring,
            powers: images.iter().map(|g| vec![one.clone(), ring.reduce(g)]).collect(),
        }
    }

    fn power(&mut self, i: usize, e: u32) -> &Polynomial {
        let e = e as usize;
        while self.powers[i].len() <= e {
            let next = self.ring.mul(self.powers[i].last().unwrap(), &self.powers[i][1]);
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }

    fn image_of_monomial(&mut self, m: &Monomial) -> Polynomial {
        let mut acc = self.ring.poly().one();
        for i in 0..m.nvars() {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let p = self.power(i, e).clone();
            acc = self.ring.mul(&acc, &p);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    fn apply(&mut self, f: &Polynomial) -> Polynomial {
        let poly = self.ring.poly().clone();
        let mut acc = Polynomial::zero();
        for (m, c) in f.terms() {
            let img = self.image_of_monomial(m);
            acc = poly.add(&acc, &poly.scale(&img, *c));
        }
        acc
    }
}
