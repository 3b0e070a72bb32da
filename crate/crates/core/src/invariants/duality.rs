use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, ModTerm, Vector};
use crate::modules::{ChainComplex, Matrix};
use crate::polyring::Monomial;

/// A `k`-basis of a finite-length term `coker(rels)` on a frame.
struct LinearBasis {
    gb: GroebnerBasis,
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl LinearBasis {
    fn new(c: &ChainComplex, n: i64) -> Result<Self> {
        let gb = buchberger(c.ring().context(), c.rank(n), c.relations(n).cols());
        let basis = gb.standard_monomials().ok_or(Error::NotArtinianRing)?;
        let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        Ok(LinearBasis { gb, basis, index })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v`, as a sparse list.
    fn coords(&self, v: &Vector) -> Vec<(usize, u32)> {
        self.gb
            .normal_form(v)
            .terms()
            .iter()
            .map(|t| (self.index[&(t.pos as usize, t.mono)], t.coef))
            .collect()
    }
}

fn basis_vector(pos: usize, mono: Monomial) -> Vector {
    Vector {
        terms: vec![ModTerm {
            pos: pos as u32,
            mono,
            coef: 1,
        }],
    }
}

/// The `k`-linear dual of a complex of finite-length modules over an artinian
/// ring: `N_(-n) = Hom_k(C_n, k)` with `R` acting by transposes. For such
/// rings this is `Hom_R(C, E)` with `E` the injective hull of `k`.
///
/// `N_(-n)` is presented on the dual basis `e*_c` with the relations
/// `x_i e*_c - Σ_b [x_i]_(c,b) e*_b`, and the differentials are transposes.
pub fn matlis_dual(c: &ChainComplex) -> Result<ChainComplex> {
    let ring = c.ring();
    if !ring.is_artinian() {
        return Err(Error::NotArtinianRing);
    }
    let field = ring.field();
    let nv = ring.nvars();
    let ctx = ring.context();
    let bases: Vec<LinearBasis> = (c.lo()..=c.hi()).map(|n| LinearBasis::new(c, n)).collect::<Result<_>>()?;
    let basis = |n: i64| &bases[(n - c.lo()) as usize];

    // relations of the dual of C_n, for n from hi down to lo
    let mut rels = Vec::new();
    let mut ranks = Vec::new();
    for n in (c.lo()..=c.hi()).rev() {
        let b = basis(n);
        let mut cols = Vec::new();
        for i in 0..nv {
            let x = Monomial::var(nv, i);
            // column b of [x_i] gives the coefficients A[c][b]
            let mut dual_terms: Vec<Vec<ModTerm>> = vec![Vec::new(); b.dim()];
            for (bi, &(pos, mono)) in b.basis.iter().enumerate() {
                let img = ctx.reduce_vector(&basis_vector(pos, mono.mul(&x)));
                for (ci, a) in b.coords(&img) {
                    dual_terms[ci].push(ModTerm {
                        pos: bi as u32,
                        mono: Monomial::one(nv),
                        coef: field.neg(a),
                    });
                }
            }
            for (ci, mut terms) in dual_terms.into_iter().enumerate() {
                terms.push(ModTerm {
                    pos: ci as u32,
                    mono: x,
                    coef: 1,
                });
                cols.push(Vector::from_terms(field, terms));
            }
        }
        ranks.push(b.dim());
        rels.push(Matrix::new(b.dim(), cols));
    }

    // N_j -> N_(j-1) is the transpose of d_(1-j): C_(1-j) -> C_(-j)
    let mut diffs = Vec::new();
    for n in (c.lo()..c.hi()).rev() {
        let (src, dst) = (basis(n), basis(n + 1));
        let d = c.differential(n + 1);
        let mut dual_cols: Vec<Vec<ModTerm>> = vec![Vec::new(); src.dim()];
        for (bi, &(pos, mono)) in dst.basis.iter().enumerate() {
            let img = d.col(pos).mul_term(field, &mono, 1);
            for (ci, a) in src.coords(&ctx.reduce_vector(&img)) {
                dual_cols[ci].push(ModTerm {
                    pos: bi as u32,
                    mono: Monomial::one(nv),
                    coef: a,
                });
            }
        }
        let cols = dual_cols.into_iter().map(|t| Vector::from_terms(field, t)).collect();
        diffs.push(Matrix::new(dst.dim(), cols));
    }
    ChainComplex::new(ring.clone(), -c.hi(), ranks, diffs, rels)
}
