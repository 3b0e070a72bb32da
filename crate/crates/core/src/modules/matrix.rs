use crate::groebner::{ModTerm, RingContext, Vector};
use crate::polyring::{Polynomial, PrimeField};

/// A matrix over `R` stored by sparse columns; column `j` is the image of the
/// `j`-th basis vector of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    nrows: usize,
    cols: Vec<Vector>,
}

impl Matrix {
    pub fn new(nrows: usize, cols: Vec<Vector>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_position().is_none_or(|p| p < nrows)));
        Matrix { nrows, cols }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            cols: vec![Vector::zero(); ncols],
        }
    }

    /// A matrix with no columns.
    pub fn empty(nrows: usize) -> Self {
        Matrix::new(nrows, Vec::new())
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        Matrix {
            nrows: n,
            cols: (0..n).map(|i| Vector::unit(nvars, i)).collect(),
        }
    }

    /// Builds a matrix from its rows.
    pub fn from_rows(nrows: usize, ncols: usize, rows: &[Vec<Polynomial>]) -> Self {
        let cols = (0..ncols)
            .map(|j| {
                let comps: Vec<Polynomial> = (0..nrows).map(|i| rows[i][j].clone()).collect();
                Vector::from_components(&comps)
            })
            .collect();
        Matrix { nrows, cols }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[Vector] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn into_cols(self) -> Vec<Vector> {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.cols[j].component(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Rows as dense polynomial lists.
    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        let mut out = vec![vec![Polynomial::zero(); self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, f) in c.entries() {
                out[i][j] = f;
            }
        }
        out
    }

    pub fn transpose(&self, field: PrimeField) -> Matrix {
        let mut terms: Vec<Vec<ModTerm>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for t in c.terms() {
                terms[t.pos as usize].push(ModTerm { pos: j as u32, ..*t });
            }
        }
        Matrix {
            nrows: self.ncols(),
            cols: terms.into_iter().map(|t| Vector::from_terms(field, t)).collect(),
        }
    }

    /// `self * v` in `R`.
    pub fn apply(&self, ctx: &RingContext, v: &Vector) -> Vector {
        let field = ctx.field();
        let mut acc = Vector::zero();
        for t in v.terms() {
            acc.add_scaled_from(field, 0, &self.cols[t.pos as usize], t.coef, &t.mono, None);
        }
        ctx.reduce_vector(&acc)
    }

    /// `self * other` in `R`.
    pub fn mul(&self, ctx: &RingContext, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows, "matrix product shape mismatch");
        Matrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(ctx, c)).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix {
            nrows: self.nrows,
            cols,
        }
    }

    /// Applies `f` to every entry (the image must stay a valid entry).
    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Matrix {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut comps = Vec::new();
                for (i, e) in c.entries() {
                    comps.push((i, f(&e)));
                }
                let mut terms = Vec::new();
                for (i, e) in comps {
                    for (m, a) in e.terms() {
                        terms.push(ModTerm {
                            pos: i as u32,
                            mono: *m,
                            coef: *a,
                        });
                    }
                }
                Vector { terms }
            })
            .collect();
        Matrix {
            nrows: self.nrows,
            cols,
        }
    }

    /// Kronecker product `self ⊗ other`: row `(i, u)` maps to `i * other.nrows + u`
    /// and column `(j, v)` to `j * other.ncols + v`.
    pub fn kron(&self, ctx: &RingContext, other: &Matrix) -> Matrix {
        let field = ctx.field();
        let (r2, c2) = (other.nrows, other.ncols());
        let mut cols = Vec::with_capacity(self.ncols() * c2);
        for a in &self.cols {
            for b in &other.cols {
                let mut terms = Vec::with_capacity(a.terms().len() * b.terms().len());
                for ta in a.terms() {
                    for tb in b.terms() {
                        terms.push(ModTerm {
                            pos: ta.pos * r2 as u32 + tb.pos,
                            mono: ta.mono.mul(&tb.mono),
                            coef: field.mul(ta.coef, tb.coef),
                        });
                    }
                }
                cols.push(ctx.reduce_vector(&Vector::from_terms(field, terms)));
            }
        }
        Matrix {
            nrows: self.nrows * r2,
            cols,
        }
    }

    /// `self ⊗ I_n` without multiplying out.
    pub fn kron_identity_right(&self, n: usize) -> Matrix {
        let mut cols = Vec::with_capacity(self.ncols() * n);
        for a in &self.cols {
            for v in 0..n {
                cols.push(Vector {
                    terms: a
                        .terms()
                        .iter()
                        .map(|t| ModTerm {
                            pos: t.pos * n as u32 + v as u32,
                            ..*t
                        })
                        .collect(),
                });
            }
        }
        Matrix {
            nrows: self.nrows * n,
            cols,
        }
    }

    /// `I_n ⊗ self`, i.e. `n` diagonal copies.
    pub fn kron_identity_left(&self, n: usize) -> Matrix {
        let r = self.nrows;
        let mut cols = Vec::with_capacity(self.ncols() * n);
        for i in 0..n {
            for b in &self.cols {
                cols.push(b.shift_positions(i * r));
            }
        }
        Matrix {
            nrows: self.nrows * n,
            cols,
        }
    }

    /// Scales every entry by a field element.
    pub fn scale(&self, field: PrimeField, c: u32) -> Matrix {
        Matrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|v| v.scale(field, c)).collect(),
        }
    }

    /// Whether every entry lies in `m` (no nonzero constant terms).
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.cols
            .iter()
            .all(|c| c.terms().iter().all(|t| !t.mono.is_one()))
    }
}
