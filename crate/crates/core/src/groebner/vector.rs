use std::cmp::Ordering;

use crate::polyring::{Monomial, Polynomial, PrimeField};

/// One term `c * m * e_pos` of a free-module vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModTerm {
    pub pos: u32,
    pub mono: Monomial,
    pub coef: u32,
}

/// Position-over-term: a smaller position index is larger; ties compare the
/// monomials in grevlex.
#[inline]
pub fn pot_cmp(a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial) -> Ordering {
    match b_pos.cmp(&a_pos) {
        Ordering::Equal => a.cmp(b),
        o => o,
    }
}

/// A sparse vector of a free module `S^r`, terms sorted decreasingly in the
/// position-over-term order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub(crate) terms: Vec<ModTerm>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    /// The standard basis vector `e_pos`.
    pub fn unit(nvars: usize, pos: usize) -> Self {
        Vector {
            terms: vec![ModTerm {
                pos: pos as u32,
                mono: Monomial::one(nvars),
                coef: 1,
            }],
        }
    }

    pub fn from_terms(field: PrimeField, mut terms: Vec<ModTerm>) -> Self {
        terms.sort_by(|a, b| pot_cmp(b.pos, &b.mono, a.pos, &a.mono));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => {
                    l.coef = field.add(l.coef, t.coef)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        Vector { terms: out }
    }

    /// Builds `Σ_i components[i] e_i`.
    pub fn from_components(components: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in components.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(ModTerm {
                    pos: i as u32,
                    mono: *m,
                    coef: *c,
                });
            }
        }
        // already in POT order: positions ascending, monomials descending
        Vector { terms }
    }

    /// Dense component list of length `rank`.
    pub fn to_components(&self, rank: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); rank];
        for (pos, f) in self.entries() {
            out[pos] = f;
        }
        out
    }

    /// Non-zero components as `(position, polynomial)` pairs, positions ascending.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Polynomial)> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            if i >= self.terms.len() {
                return None;
            }
            let pos = self.terms[i].pos;
            let start = i;
            while i < self.terms.len() && self.terms[i].pos == pos {
                i += 1;
            }
            Some((
                pos as usize,
                Polynomial {
                    terms: self.terms[start..i].iter().map(|t| (t.mono, t.coef)).collect(),
                },
            ))
        })
    }

    pub fn component(&self, pos: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mono, t.coef))
                .collect(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    #[inline]
    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos as usize).max()
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    coef: field.mul(t.coef, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, field: PrimeField, m: &Monomial, c: u32) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coef: field.mul(t.coef, c),
                })
                .collect(),
        }
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, field: PrimeField, f: &Polynomial) -> Vector {
        let mut terms = Vec::with_capacity(self.terms.len() * f.terms().len());
        for (m, c) in f.terms() {
            for t in &self.terms {
                terms.push(ModTerm {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coef: field.mul(t.coef, *c),
                });
            }
        }
        Vector::from_terms(field, terms)
    }

    pub fn add(&self, field: PrimeField, other: &Vector) -> Vector {
        let one = match (self.terms.first(), other.terms.first()) {
            (Some(t), _) | (None, Some(t)) => Monomial::one(t.mono.nvars()),
            (None, None) => return Vector::zero(),
        };
        let mut out = self.clone();
        out.add_scaled_from(field, 0, other, 1, &one, None);
        out
    }

    pub fn sub(&self, field: PrimeField, other: &Vector) -> Vector {
        let one = match (self.terms.first(), other.terms.first()) {
            (Some(t), _) | (None, Some(t)) => Monomial::one(t.mono.nvars()),
            (None, None) => return Vector::zero(),
        };
        let mut out = self.clone();
        out.add_scaled_from(field, 0, other, field.neg(1), &one, None);
        out
    }

    /// Relabels positions by `f(pos)`; `f` must be strictly increasing on the
    /// positions present so the order is preserved.
    pub fn shift_positions(&self, offset: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos + offset as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Arbitrary relabelling of positions; re-sorts.
    pub fn map_positions(&self, field: PrimeField, f: impl Fn(usize) -> usize) -> Vector {
        Vector::from_terms(
            field,
            self.terms
                .iter()
                .map(|t| ModTerm {
                    pos: f(t.pos as usize) as u32,
                    ..*t
                })
                .collect(),
        )
    }

    /// In place: `self[k..] += c * m * g (restricted to pos_filter)`, keeping
    /// `self[..k]` untouched. Every term of `c*m*g` must be smaller than
    /// `self[k-1]`.
    pub(crate) fn add_scaled_from(
        &mut self,
        field: PrimeField,
        k: usize,
        g: &Vector,
        c: u32,
        m: &Monomial,
        pos_override: Option<u32>,
    ) {
        if c == 0 || g.terms.is_empty() {
            return;
        }
        let tail = self.terms.split_off(k);
        let mut out = std::mem::take(&mut self.terms);
        out.reserve(tail.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < tail.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.extend_from_slice(&tail[i..]);
                break;
            }
            let gt = &g.terms[j];
            let gpos = pos_override.unwrap_or(gt.pos);
            let gm = gt.mono.mul(m);
            if i == tail.len() {
                out.push(ModTerm {
                    pos: gpos,
                    mono: gm,
                    coef: field.mul(gt.coef, c),
                });
                j += 1;
                continue;
            }
            let a = &tail[i];
            match pot_cmp(a.pos, &a.mono, gpos, &gm) {
                Ordering::Greater => {
                    out.push(*a);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(ModTerm {
                        pos: gpos,
                        mono: gm,
                        coef: field.mul(gt.coef, c),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(a.coef, field.mul(gt.coef, c));
                    if s != 0 {
                        out.push(ModTerm {
                            pos: gpos,
                            mono: gm,
                            coef: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        self.terms = out;
    }

    /// `self += c * m * f * e_pos` for a polynomial `f`.
    pub(crate) fn add_poly_scaled_from(
        &mut self,
        field: PrimeField,
        k: usize,
        f: &Polynomial,
        pos: u32,
        c: u32,
        m: &Monomial,
    ) {
        let g = Vector {
            terms: f
                .terms()
                .iter()
                .map(|(u, a)| ModTerm {
                    pos,
                    mono: *u,
                    coef: *a,
                })
                .collect(),
        };
        self.add_scaled_from(field, k, &g, c, m, None);
    }
}

impl std::fmt::Debug for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*{:?}e{}", t.coef, t.mono, t.pos))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
