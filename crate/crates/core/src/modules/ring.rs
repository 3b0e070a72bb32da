use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, RingContext, Vector};
use crate::polyring::{Monomial, PolyRing, Polynomial, PrimeField};

use super::Matrix;

/// `R = F_p[x_1..x_n]/I` for a homogeneous ideal `I` (with respect to the
/// ring's variable weights), viewed as a graded-local ring at `m = (x_1..x_n)`.
#[derive(Debug)]
pub struct QuotientRing {
    poly: PolyRing,
    generators: Vec<Polynomial>,
    ctx: Arc<RingContext>,
    square_ctx: Arc<RingContext>,
    dim: usize,
    resolution_cache: Mutex<ResolutionPrefix>,
}

/// Minimal differentials `d_1..d_n` of a resolution and the next candidate
/// differential, whose columns generate the kernel of `d_n` but may be
/// redundant.
#[derive(Clone, Debug)]
pub(crate) struct ResolutionPrefix {
    pub diffs: Vec<Matrix>,
    pub next: Matrix,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.ctx == other.ctx
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    pub fn new(poly: PolyRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            poly.check(g)?;
            if !poly.is_homogeneous(g) {
                return Err(Error::NonHomogeneousIdeal(poly.format(g)));
            }
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let field = poly.field();
        let n = poly.nvars();
        let ctx = RingContext::quotient(field, n, &generators);
        if ctx.ideal().iter().any(|g| g.is_constant()) {
            return Err(Error::UnitIdeal);
        }
        let mut sq = generators.clone();
        for i in 0..n {
            for j in i..n {
                sq.push(Polynomial::monomial(
                    Monomial::var(n, i).mul(&Monomial::var(n, j)),
                    1,
                ));
            }
        }
        let square_ctx = RingContext::quotient(field, n, &sq);
        let dim = krull_dimension(n, &ctx);
        Ok(QuotientRing {
            poly,
            generators,
            ctx: Arc::new(ctx),
            square_ctx: Arc::new(square_ctx),
            dim,
            resolution_cache: Mutex::new(ResolutionPrefix {
                diffs: Vec::new(),
                next: residue_presentation(&poly_vars(n)),
            }),
        })
    }

    /// The polynomial ring itself.
    pub fn polynomial(poly: PolyRing) -> Self {
        QuotientRing::new(poly, Vec::new()).expect("zero ideal is valid")
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn field(&self) -> PrimeField {
        self.poly.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.poly.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// The ideal generators as given (zeros dropped).
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis of `I`.
    pub fn ideal_basis(&self) -> &[Polynomial] {
        self.ctx.ideal()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.ctx.reduce(f)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.ctx.mul(f, g)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.ctx.is_zero(f)
    }

    /// `f ∈ m`, i.e. the constant term vanishes (`I ⊆ m`).
    pub fn in_maximal_ideal(&self, f: &Polynomial) -> bool {
        f.constant_term() == 0
    }

    /// `f ∈ m^2 + I`.
    pub fn in_maximal_ideal_squared(&self, f: &Polynomial) -> bool {
        self.square_ctx.is_zero(f)
    }

    /// Embedding dimension: `n` minus the rank of the linear parts of `I`.
    pub fn edim(&self) -> usize {
        self.maximal_ideal_generators().len()
    }

    /// Variables forming a minimal generating set of `m`.
    pub fn maximal_ideal_generators(&self) -> Vec<Polynomial> {
        let rows: Vec<Vec<u32>> = self.generators.iter().map(|g| self.poly.linear_part(g)).collect();
        non_pivot_columns(self.field(), rows, self.nvars())
            .into_iter()
            .map(|i| self.poly.var(i))
            .collect()
    }

    /// Krull dimension, from the leading monomials of `I`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_regular(&self) -> bool {
        self.edim() == self.dim
    }

    pub fn is_artinian(&self) -> bool {
        self.dim == 0
    }

    /// `ℓ(R)` when finite.
    pub fn length(&self) -> Option<usize> {
        GroebnerBasis::zero(self.ctx.clone(), 1).quotient_length()
    }

    /// Minimal number of generators of `I`, by a degree-ordered greedy pass.
    pub fn minimal_generator_count(&self) -> usize {
        let mut gens = self.generators.clone();
        gens.sort_by_key(|g| {
            g.terms()
                .iter()
                .map(|(m, _)| self.poly.weighted_degree(m))
                .max()
                .unwrap_or(0)
        });
        let ctx = Arc::new(RingContext::polynomial(self.field(), self.nvars()));
        let mut kept: Vec<Vector> = Vec::new();
        for g in gens {
            let g = Vector::from_components(std::slice::from_ref(&g));
            if !crate::groebner::buchberger(&ctx, 1, &kept).contains(&g) {
                kept.push(g);
            }
        }
        kept.len()
    }

    /// Complete intersection test: `ν(I) = n - dim R`.
    pub fn is_complete_intersection(&self) -> bool {
        self.minimal_generator_count() == self.nvars() - self.dim
    }

    /// Cached prefix of the minimal free resolution of the residue field.
    pub(crate) fn residue_resolution_cache(&self) -> &Mutex<ResolutionPrefix> {
        &self.resolution_cache
    }
}

fn poly_vars(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::monomial(Monomial::var(n, i), 1)).collect()
}

/// The `1 x n` matrix of variables presenting `k`.
fn residue_presentation(vars: &[Polynomial]) -> Matrix {
    Matrix::new(
        1,
        vars.iter().map(|x| Vector::from_components(std::slice::from_ref(x))).collect(),
    )
}

/// Largest set of variables containing the support of no leading monomial.
fn krull_dimension(n: usize, ctx: &RingContext) -> usize {
    let leads: Vec<u32> = ctx
        .ideal()
        .iter()
        .map(|g| {
            let m = g.leading_monomial().unwrap();
            (0..n).filter(|&i| m.exponent(i) > 0).fold(0u32, |s, i| s | (1 << i))
        })
        .collect();
    (0u32..(1 << n))
        .filter(|&u| leads.iter().all(|&s| s & !u != 0))
        .map(|u| u.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Columns without a pivot in the row-reduced form of a dense matrix; the
/// corresponding coordinate vectors span a complement of the row space.
pub(crate) fn non_pivot_columns(field: PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..ncols).filter(|c| !pivots.contains(c)).collect()
}
