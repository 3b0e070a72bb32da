//! Buchberger's algorithm for submodules of `(S/I)^r`.
//!
//! The ideal `I` is never materialised as module columns: every vector is
//! kept reduced modulo the reduced basis of `I`, and for each basis element
//! the S-pairs against the generators of `I` are formed directly. An optional
//! untracked "base" basis (already a Gröbner basis) plays the same role for
//! relative computations such as syzygies modulo a submodule.

use std::collections::{BTreeSet, HashSet};

use super::context::RingContext;
use super::vector::{ModTerm, Vector};
use crate::polyring::Monomial;

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: Vector,
    /// Combination of the input generators equal to `v`; `None` for base elements.
    pub t: Option<Vector>,
    pub pos: u32,
    pub lead: Monomial,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Partner {
    Elem(u32),
    Ideal(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Pair {
    lcm: Monomial,
    pos: u32,
    i: u32,
    partner: Partner,
}

pub(crate) struct Engine<'a> {
    ctx: &'a RingContext,
    pub elems: Vec<Elem>,
    by_pos: Vec<Vec<u32>>,
    pending: BTreeSet<Pair>,
    pending_elem_pairs: HashSet<(u32, u32)>,
    pub syzygies: Vec<Vector>,
}

impl<'a> Engine<'a> {
    pub fn new(ctx: &'a RingContext, rank: usize) -> Self {
        Engine {
            ctx,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); rank],
            pending: BTreeSet::new(),
            pending_elem_pairs: HashSet::new(),
            syzygies: Vec::new(),
        }
    }

    /// Adds elements of an existing Gröbner basis; no pairs among them are formed.
    pub fn add_base(&mut self, basis: &[Vector]) {
        for v in basis {
            if let Some(lt) = v.lead() {
                let idx = self.elems.len() as u32;
                self.by_pos[lt.pos as usize].push(idx);
                self.elems.push(Elem {
                    v: v.clone(),
                    t: None,
                    pos: lt.pos,
                    lead: lt.mono,
                });
            }
        }
    }

    /// Runs the algorithm on `gens`. With `track`, the combination expressing
    /// each new element is carried along and every reduction to zero records a
    /// syzygy of `gens` (relative to the base and to `I`).
    pub fn run(&mut self, gens: &[Vector], track: bool) {
        let nv = self.ctx.nvars();
        for (j, g) in gens.iter().enumerate() {
            let t = track.then(|| Vector::unit(nv, j));
            self.insert_reduced(g.clone(), t);
            self.drain_pairs();
        }
    }

    fn insert_reduced(&mut self, v: Vector, t: Option<Vector>) {
        let (v, t) = self.reduce(v, t, true);
        if v.is_zero() {
            if let Some(t) = t {
                let t = self.ctx.reduce_vector(&t);
                if !t.is_zero() {
                    self.syzygies.push(t);
                }
            }
            return;
        }
        self.insert(v, t);
    }

    fn insert(&mut self, v: Vector, t: Option<Vector>) {
        let field = self.ctx.field();
        let lt = *v.lead().unwrap();
        let inv = field.inv(lt.coef);
        let v = v.scale(field, inv);
        let t = t.map(|t| self.ctx.reduce_vector(&t.scale(field, inv)));
        let idx = self.elems.len() as u32;
        for &k in &self.by_pos[lt.pos as usize] {
            let lcm = self.elems[k as usize].lead.lcm(&lt.mono);
            self.pending.insert(Pair {
                lcm,
                pos: lt.pos,
                i: k,
                partner: Partner::Elem(idx),
            });
            self.pending_elem_pairs.insert((k, idx));
        }
        for (gi, w) in self.ctx.ideal_leads().iter().enumerate() {
            if lt.mono.gcd_is_one(w) {
                continue;
            }
            self.pending.insert(Pair {
                lcm: lt.mono.lcm(w),
                pos: lt.pos,
                i: idx,
                partner: Partner::Ideal(gi as u32),
            });
        }
        self.by_pos[lt.pos as usize].push(idx);
        self.elems.push(Elem {
            v,
            t,
            pos: lt.pos,
            lead: lt.mono,
        });
    }

    fn chain_redundant(&self, i: u32, j: u32, pos: u32, lcm: &Monomial) -> bool {
        self.by_pos[pos as usize].iter().any(|&k| {
            k != i
                && k != j
                && self.elems[k as usize].lead.divides(lcm)
                && !self.pending_elem_pairs.contains(&(i.min(k), i.max(k)))
                && !self.pending_elem_pairs.contains(&(j.min(k), j.max(k)))
        })
    }

    fn drain_pairs(&mut self) {
        let field = self.ctx.field();
        while let Some(pair) = self.pending.pop_first() {
            let ei = &self.elems[pair.i as usize];
            let (v, t) = match pair.partner {
                Partner::Elem(j) => {
                    self.pending_elem_pairs.remove(&(pair.i, j));
                    if self.chain_redundant(pair.i, j, pair.pos, &pair.lcm) {
                        continue;
                    }
                    let ej = &self.elems[j as usize];
                    let mi = ei.lead.quotient_of(&pair.lcm);
                    let mj = ej.lead.quotient_of(&pair.lcm);
                    let mut v = ei.v.mul_term(field, &mi, 1);
                    v.add_scaled_from(field, 0, &ej.v, field.neg(1), &mj, None);
                    let t = match (&ei.t, &ej.t) {
                        (None, None) => None,
                        (a, b) => {
                            let mut t = a
                                .as_ref()
                                .map(|a| a.mul_term(field, &mi, 1))
                                .unwrap_or_default();
                            if let Some(b) = b {
                                t.add_scaled_from(field, 0, b, field.neg(1), &mj, None);
                            }
                            Some(t)
                        }
                    };
                    (v, t)
                }
                Partner::Ideal(_) => {
                    // the ideal generator's multiple vanishes modulo I; what is
                    // left is the multiple of the element, reduced below
                    let mi = ei.lead.quotient_of(&pair.lcm);
                    let v = ei.v.mul_term(field, &mi, 1);
                    let t = ei.t.as_ref().map(|a| a.mul_term(field, &mi, 1));
                    (v, t)
                }
            };
            self.insert_reduced(v, t);
        }
    }

    fn divisor(&self, pos: u32, m: &Monomial) -> Option<&Elem> {
        self.by_pos[pos as usize]
            .iter()
            .map(|&k| &self.elems[k as usize])
            .find(|e| e.lead.divides(m))
    }

    /// Reduces `v` (carrying `t`) by `I` and by the current elements. With
    /// `full`, every term is reduced; otherwise only the leading term.
    pub fn reduce(&self, mut v: Vector, mut t: Option<Vector>, full: bool) -> (Vector, Option<Vector>) {
        let field = self.ctx.field();
        let mut k = 0;
        while k < v.terms.len() {
            let term: ModTerm = v.terms[k];
            if let Some(g) = self.ctx.ideal_divisor(&term.mono) {
                let q = g.leading_monomial().unwrap().quotient_of(&term.mono);
                v.add_poly_scaled_from(field, k, g, term.pos, field.neg(term.coef), &q);
                continue;
            }
            if let Some(h) = self.divisor(term.pos, &term.mono) {
                let q = h.lead.quotient_of(&term.mono);
                let c = field.neg(term.coef);
                v.add_scaled_from(field, k, &h.v, c, &q, None);
                if let (Some(t), Some(ht)) = (t.as_mut(), h.t.as_ref()) {
                    t.add_scaled_from(field, 0, ht, c, &q, None);
                }
                continue;
            }
            if !full {
                break;
            }
            k += 1;
        }
        (v, t)
    }

    /// Indices of elements forming a minimal basis: leading terms pairwise
    /// non-divisible, earliest index kept among equal leading terms.
    pub fn minimal_indices(&self) -> Vec<usize> {
        let mut keep = Vec::new();
        for (i, e) in self.elems.iter().enumerate() {
            let redundant = self.by_pos[e.pos as usize].iter().any(|&k| {
                let k = k as usize;
                let o = &self.elems[k];
                k != i && o.lead.divides(&e.lead) && (o.lead != e.lead || k < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        keep
    }
}
