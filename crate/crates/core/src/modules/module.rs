use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Vector};
use crate::polyring::Polynomial;

use super::{Matrix, QuotientRing};

/// `M = coker(A)` for a matrix `A` over `R`: the rows of `A` index the
/// generators (the frame) and the columns are relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule {
    ring: Arc<QuotientRing>,
    relations: Matrix,
}

impl FinModule {
    /// Module with the given relation matrix; entries are reduced modulo `I`.
    pub fn new(ring: Arc<QuotientRing>, relations: Matrix) -> Self {
        let ctx = ring.context().clone();
        let rank = relations.nrows();
        let cols = relations
            .into_cols()
            .into_iter()
            .map(|c| ctx.reduce_vector(&c))
            .collect();
        FinModule {
            ring,
            relations: Matrix::new(rank, cols),
        }
    }

    /// Builds `coker` of a matrix given by rows (one row per generator).
    pub fn from_rows(ring: Arc<QuotientRing>, rows: &[Vec<Polynomial>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("presentation rows differ in length".into()));
        }
        for f in rows.iter().flatten() {
            ring.poly().check(f)?;
        }
        Ok(FinModule::new(ring, Matrix::from_rows(rows.len(), ncols, rows)))
    }

    /// The free module `R^rank`.
    pub fn free(ring: Arc<QuotientRing>, rank: usize) -> Self {
        FinModule {
            relations: Matrix::empty(rank),
            ring,
        }
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: Arc<QuotientRing>) -> Self {
        let cols = ring
            .poly()
            .vars()
            .iter()
            .map(|x| Vector::from_components(std::slice::from_ref(x)))
            .collect();
        let relations = Matrix::new(1, cols);
        FinModule::new(ring, relations)
    }

    /// The cyclic module `R/J` for `J` generated by `gens`.
    pub fn cyclic(ring: Arc<QuotientRing>, gens: &[Polynomial]) -> Self {
        let cols = gens
            .iter()
            .map(|g| Vector::from_components(std::slice::from_ref(g)))
            .collect();
        FinModule::new(ring, Matrix::new(1, cols))
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    /// Number of generators of this presentation.
    pub fn rank(&self) -> usize {
        self.relations.nrows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Gröbner basis of the relation submodule of the frame.
    pub fn relation_basis(&self) -> GroebnerBasis {
        buchberger(self.ring.context(), self.rank(), self.relations.cols())
    }

    /// `ℓ(M)` when finite.
    pub fn length(&self) -> Option<usize> {
        self.relation_basis().quotient_length()
    }

    /// Cancels unit entries of the presentation until every relation entry lies
    /// in `m`; the frame rank is then the minimal number of generators.
    pub fn minimal_presentation(&self) -> FinModule {
        let c = cancel_units(&self.ring, self.rank(), self.relations.cols().to_vec());
        FinModule {
            ring: self.ring.clone(),
            relations: Matrix::new(c.kept_rows.len(), c.cols),
        }
    }

    /// Minimal number of generators.
    pub fn minimal_generator_count(&self) -> usize {
        self.minimal_presentation().rank()
    }

    pub fn is_zero(&self) -> bool {
        self.minimal_generator_count() == 0
    }

    /// Errors with `ZeroModule` when `M = 0`.
    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroModule)
        } else {
            Ok(())
        }
    }
}

/// `M ⊗_R N`: frame `(i, u) ↦ i * rank(N) + u`, relations `A_M ⊗ 1` and `1 ⊗ A_N`.
pub fn tensor_modules(m: &FinModule, n: &FinModule) -> Result<FinModule> {
    if m.ring != n.ring {
        return Err(Error::RingMismatch);
    }
    let rel = m
        .relations
        .kron_identity_right(n.rank())
        .hstack(&n.relations.kron_identity_left(m.rank()));
    Ok(FinModule::new(m.ring.clone(), rel))
}

/// Whether `f` is a unit of the local ring that the elimination may invert:
/// in an artinian ring any element with a nonzero constant term, otherwise
/// only nonzero constants.
pub(crate) fn is_unit(ring: &QuotientRing, f: &Polynomial) -> bool {
    if ring.is_artinian() {
        f.constant_term() != 0
    } else {
        !f.is_zero() && f.is_constant()
    }
}

/// Inverse of a unit accepted by [`is_unit`].
pub(crate) fn unit_inverse(ring: &QuotientRing, f: &Polynomial) -> Polynomial {
    let field = ring.field();
    let poly = ring.poly();
    let c = f.constant_term();
    let ci = field.inv(c);
    // f = c (1 - n) with n nilpotent, so f^{-1} = c^{-1} (1 + n + n^2 + ...)
    let nil = poly.sub(&poly.one(), &poly.scale(f, ci));
    let mut acc = poly.one();
    let mut power = ring.reduce(&nil);
    while !power.is_zero() {
        acc = poly.add(&acc, &power);
        power = ring.mul(&power, &nil);
    }
    poly.scale(&ring.reduce(&acc), ci)
}

pub(crate) struct Cancelled {
    /// Surviving row indices of the input, increasing.
    pub kept_rows: Vec<usize>,
    /// Remaining non-zero columns, re-indexed to the kept rows.
    pub cols: Vec<Vector>,
}

/// Gaussian cancellation of unit entries in the matrix with `nrows` rows and
/// the given columns: a unit at `(i, j)` removes row `i` and column `j`.
pub(crate) fn cancel_units(ring: &QuotientRing, nrows: usize, mut cols: Vec<Vector>) -> Cancelled {
    let ctx = ring.context();
    let field = ring.field();
    let mut alive = vec![true; cols.len()];
    let mut removed = vec![false; nrows];
    let find = |cols: &[Vector], alive: &[bool], range: std::ops::Range<usize>| {
        for j in range {
            if !alive[j] {
                continue;
            }
            for (i, f) in cols[j].entries() {
                if is_unit(ring, &f) {
                    return Some((i, j, f));
                }
            }
        }
        None
    };
    let mut start = 0;
    loop {
        let hit = find(&cols, &alive, start..cols.len()).or_else(|| find(&cols, &alive, 0..start));
        let Some((i, j, u)) = hit else {
            break;
        };
        start = j;
        let w = unit_inverse(ring, &u);
        let pivot = std::mem::take(&mut cols[j]);
        alive[j] = false;
        removed[i] = true;
        for (l, col) in cols.iter_mut().enumerate() {
            if !alive[l] {
                continue;
            }
            let a = col.component(i);
            if a.is_zero() {
                continue;
            }
            let factor = ring.poly().neg(&ring.mul(&a, &w));
            let delta = pivot.mul_poly(field, &factor);
            *col = ctx.reduce_vector(&col.add(field, &delta));
        }
    }
    let kept: Vec<usize> = (0..nrows).filter(|&i| !removed[i]).collect();
    let mut index = vec![usize::MAX; nrows];
    for (new, &old) in kept.iter().enumerate() {
        index[old] = new;
    }
    let out: Vec<Vector> = cols
        .into_iter()
        .zip(alive)
        .filter(|(c, a)| *a && !c.is_zero())
        .map(|(c, _)| c.map_positions(field, |p| index[p]))
        .collect();
    Cancelled {
        kept_rows: kept,
        cols: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyRing;

    pub(crate) fn quotient(p: u64, vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let poly = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect()).unwrap();
        let gens = ideal.iter().map(|s| poly.parse(s).unwrap()).collect();
        Arc::new(QuotientRing::new(poly, gens).unwrap())
    }

    fn module(r: &Arc<QuotientRing>, rows: &[&[&str]]) -> FinModule {
        let rows: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|row| row.iter().map(|s| r.poly().parse(s).unwrap()).collect())
            .collect();
        FinModule::from_rows(r.clone(), &rows).unwrap()
    }

    #[test]
    fn minimal_presentation_examples() {
        let r = quotient(2, &["x", "y"], &[]);
        assert_eq!(module(&r, &[&["1"]]).minimal_presentation().rank(), 0);
        let m = module(&r, &[&["1", "x"], &["0", "y"]]).minimal_presentation();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.relations().ncols(), 1);
        assert_eq!(r.poly().format(&m.relations().entry(0, 0)), "y");

        let r1 = quotient(2, &["x"], &[]);
        let m = module(&r1, &[&["x"]]);
        assert_eq!(m.minimal_presentation(), m);
    }

    #[test]
    fn artinian_units_with_nilpotent_parts() {
        let r = quotient(3, &["x"], &["x^3"]);
        let u = r.poly().parse("2 + x").unwrap();
        let w = unit_inverse(&r, &u);
        assert_eq!(r.mul(&u, &w), r.poly().one());
        let m = module(&r, &[&["1 + x", "x"], &["x", "x^2"]]).minimal_presentation();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn ring_invariants() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        assert_eq!((r2.edim(), r2.dim()), (1, 0));
        assert!(!r2.is_regular() && r2.is_complete_intersection());
        let r3 = quotient(2, &["x", "y"], &["x*y"]);
        assert_eq!((r3.edim(), r3.dim()), (2, 1));
        assert!(r3.is_complete_intersection());
        let r4 = quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(r4.minimal_generator_count(), 3);
        assert!(!r4.is_complete_intersection());
        let s = quotient(2, &["x", "y"], &[]);
        assert!(s.is_regular());
        let lin = quotient(2, &["x", "y"], &["x"]);
        assert_eq!((lin.edim(), lin.dim()), (1, 1));
        assert!(lin.is_regular());
        assert_eq!(r4.length(), Some(3));
    }

    #[test]
    fn tensor_examples() {
        let r = quotient(2, &["x", "y"], &[]);
        let k = FinModule::residue_field(r.clone());
        let free = FinModule::free(r.clone(), 1);
        let kk = tensor_modules(&k, &k).unwrap().minimal_presentation();
        assert_eq!(kk.rank(), 1);
        assert_eq!(kk.length(), Some(1));
        let kr = tensor_modules(&k, &free).unwrap();
        assert_eq!(kr.length(), Some(1));
        let a = FinModule::cyclic(r.clone(), &[r.poly().var(0)]);
        let b = FinModule::cyclic(r.clone(), &[r.poly().var(1)]);
        assert_eq!(tensor_modules(&a, &b).unwrap().length(), Some(1));
        let other = quotient(2, &["x"], &[]);
        assert!(matches!(
            tensor_modules(&k, &FinModule::free(other, 1)),
            Err(Error::RingMismatch)
        ));
    }
}
