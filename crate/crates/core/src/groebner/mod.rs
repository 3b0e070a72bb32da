//! Gröbner bases of ideals and of submodules of free modules over `S/I`,
//! normal forms, syzygies and standard-monomial length counting.
//!
//! Modules use the position-over-term extension of grevlex. Computations over
//! a quotient ring keep every vector reduced modulo `I` and pair each element
//! with the generators of `I` (see [`RingContext`]).

mod context;
mod engine;
mod vector;

use std::sync::Arc;

pub use context::RingContext;
pub use vector::{pot_cmp, ModTerm, Vector};

use crate::polyring::{Monomial, Polynomial, PrimeField};
use engine::Engine;

/// A Gröbner basis of a submodule of `(S/I)^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ctx: Arc<RingContext>,
    rank: usize,
    elements: Vec<Vector>,
    reduced: bool,
    by_pos: Vec<Vec<u32>>,
}

impl GroebnerBasis {
    fn from_elements(ctx: Arc<RingContext>, rank: usize, elements: Vec<Vector>, reduced: bool) -> Self {
        let mut by_pos = vec![Vec::new(); rank];
        for (i, v) in elements.iter().enumerate() {
            by_pos[v.lead().unwrap().pos as usize].push(i as u32);
        }
        GroebnerBasis {
            ctx,
            rank,
            elements,
            reduced,
            by_pos,
        }
    }

    /// The basis of the zero submodule.
    pub fn zero(ctx: Arc<RingContext>, rank: usize) -> Self {
        GroebnerBasis::from_elements(ctx, rank, Vec::new(), true)
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// For a rank-one basis, the elements as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|v| v.component(0)).collect()
    }

    /// Leading monomials at one position, including those of `I`.
    fn leads_at(&self, pos: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.by_pos[pos]
            .iter()
            .map(|&k| self.elements[k as usize].lead().unwrap().mono)
            .collect();
        out.extend_from_slice(self.ctx.ideal_leads());
        out
    }

    /// The remainder of `v` on division by the basis and by `I`.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        let field = self.ctx.field();
        let mut v = v.clone();
        let mut k = 0;
        while k < v.terms.len() {
            let term = v.terms[k];
            if let Some(g) = self.ctx.ideal_divisor(&term.mono) {
                let q = g.leading_monomial().unwrap().quotient_of(&term.mono);
                v.add_poly_scaled_from(field, k, g, term.pos, field.neg(term.coef), &q);
                continue;
            }
            let hit = self.by_pos[term.pos as usize]
                .iter()
                .map(|&i| &self.elements[i as usize])
                .find(|h| h.lead().unwrap().mono.divides(&term.mono));
            if let Some(h) = hit {
                let q = h.lead().unwrap().mono.quotient_of(&term.mono);
                v.add_scaled_from(field, k, h, field.neg(term.coef), &q, None);
                continue;
            }
            k += 1;
        }
        v
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// `dim_k` of `(S/I)^rank / span`, or `None` when infinite.
    pub fn quotient_length(&self) -> Option<usize> {
        let mut total = 0usize;
        for pos in 0..self.rank {
            total += count_standard(self.ctx.nvars(), &self.leads_at(pos), None)?;
        }
        Some(total)
    }

    /// The standard monomials `(position, monomial)` in increasing position and
    /// decreasing monomial order, or `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<(usize, Monomial)>> {
        let mut out = Vec::new();
        for pos in 0..self.rank {
            let mut ms = Vec::new();
            count_standard(self.ctx.nvars(), &self.leads_at(pos), Some(&mut ms))?;
            ms.sort_by(|a, b| b.cmp(a));
            out.extend(ms.into_iter().map(|m| (pos, m)));
        }
        Some(out)
    }

    /// `dim_k(self / sub)` for a submodule `sub ⊆ self` of the same free module,
    /// counted as leading monomials of `self` that are not leading monomials of
    /// `sub`. `None` when infinite.
    pub fn length_over(&self, sub: &GroebnerBasis) -> Option<usize> {
        assert_eq!(self.rank, sub.rank, "length_over: rank mismatch");
        let nvars = self.ctx.nvars();
        let mut total = 0usize;
        for pos in 0..self.rank {
            let mut tops: Vec<Monomial> = self.by_pos[pos]
                .iter()
                .map(|&k| self.elements[k as usize].lead().unwrap().mono)
                .collect();
            if tops.is_empty() {
                continue;
            }
            tops.sort();
            tops.dedup();
            let bottom = sub.leads_at(pos);
            for (ui, u) in tops.iter().enumerate() {
                if bottom.iter().any(|w| w.divides(u)) {
                    continue;
                }
                // every direction must eventually enter the smaller module
                for i in 0..nvars {
                    let ok = bottom.iter().any(|w| {
                        (0..nvars).all(|j| j == i || w.exponent(j) <= u.exponent(j))
                    });
                    if !ok {
                        return None;
                    }
                }
                let earlier = &tops[..ui];
                let mut exps = u.exponents().to_vec();
                total += count_above(0, &mut exps, &bottom, earlier);
            }
        }
        Some(total)
    }
}

/// Counts (and optionally lists) monomials divisible by none of `leads`.
fn count_standard(nvars: usize, leads: &[Monomial], mut out: Option<&mut Vec<Monomial>>) -> Option<usize> {
    if leads.iter().any(|w| w.is_one()) {
        return Some(0);
    }
    for i in 0..nvars {
        if !leads.iter().any(|w| w.pure_power_variable() == Some(i)) {
            return None;
        }
    }
    fn rec(
        i: usize,
        exps: &mut Vec<u32>,
        leads: &[Monomial],
        out: &mut Option<&mut Vec<Monomial>>,
    ) -> usize {
        if i == exps.len() {
            if let Some(o) = out.as_mut() {
                o.push(Monomial::from_exponents(exps));
            }
            return 1;
        }
        let mut n = 0;
        loop {
            let m = Monomial::from_exponents(exps);
            if leads.iter().any(|w| w.divides(&m)) {
                break;
            }
            n += rec(i + 1, exps, leads, out);
            exps[i] += 1;
        }
        exps[i] = 0;
        n
    }
    let mut exps = vec![0u32; nvars];
    Some(rec(0, &mut exps, leads, &mut out))
}

/// Monomials `u * x^a` outside `bottom` whose first divisor among the sorted
/// leading monomials is `u` itself (so that each is counted once).
fn count_above(i: usize, exps: &mut [u32], bottom: &[Monomial], earlier: &[Monomial]) -> usize {
    if i == exps.len() {
        let m = Monomial::from_exponents(exps);
        return usize::from(!earlier.iter().any(|w| w.divides(&m)));
    }
    let base = exps[i];
    let mut n = 0;
    loop {
        let m = Monomial::from_exponents(exps);
        if bottom.iter().any(|w| w.divides(&m)) {
            break;
        }
        n += count_above(i + 1, exps, bottom, earlier);
        exps[i] += 1;
    }
    exps[i] = base;
    n
}

fn reduced_basis(engine: &Engine<'_>, ctx: &RingContext, rank: usize) -> Vec<Vector> {
    let field = ctx.field();
    let keep = engine.minimal_indices();
    let mut minimal = Engine::new(ctx, rank);
    let leads: Vec<Vector> = keep.iter().map(|&i| engine.elems[i].v.clone()).collect();
    minimal.add_base(&leads);
    let mut out: Vec<Vector> = leads
        .iter()
        .map(|v| {
            let head = Vector {
                terms: vec![v.terms[0]],
            };
            let tail = Vector {
                terms: v.terms[1..].to_vec(),
            };
            let (tail, _) = minimal.reduce(tail, None, true);
            let w = head.add(field, &tail);
            let inv = field.inv(w.terms[0].coef);
            w.scale(field, inv)
        })
        .collect();
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        pot_cmp(y.pos, &y.mono, x.pos, &x.mono)
    });
    out
}

/// Reduced Gröbner basis of the submodule of `(S/I)^rank` generated by `gens`.
pub fn buchberger(ctx: &Arc<RingContext>, rank: usize, gens: &[Vector]) -> GroebnerBasis {
    let mut engine = Engine::new(ctx, rank);
    engine.run(gens, false);
    let elems = reduced_basis(&engine, ctx, rank);
    GroebnerBasis::from_elements(ctx.clone(), rank, elems, true)
}

/// Reduced Gröbner basis of `base + span(gens)`, reusing `base` as is.
pub fn extend_basis(base: &GroebnerBasis, gens: &[Vector]) -> GroebnerBasis {
    let ctx = base.context();
    let mut engine = Engine::new(ctx, base.rank);
    engine.add_base(&base.elements);
    engine.run(gens, false);
    let elems = reduced_basis(&engine, ctx, base.rank);
    GroebnerBasis::from_elements(ctx.clone(), base.rank, elems, true)
}

/// Generators of `{c : Σ c_j gens_j ∈ base}` (with `base = 0` when absent),
/// as vectors of rank `gens.len()` reduced modulo `I`.
pub fn syzygies(ctx: &Arc<RingContext>, rank: usize, gens: &[Vector], base: Option<&GroebnerBasis>) -> Vec<Vector> {
    let mut engine = Engine::new(ctx, rank);
    if let Some(b) = base {
        assert_eq!(b.rank, rank, "syzygies: base rank mismatch");
        engine.add_base(&b.elements);
    }
    engine.run(gens, true);
    let mut out = engine.syzygies;
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        pot_cmp(y.pos, &y.mono, x.pos, &x.mono)
    });
    out.dedup();
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `F_p[x_1..x_n]`.
pub fn ideal_basis(field: PrimeField, nvars: usize, gens: &[Polynomial]) -> Vec<Polynomial> {
    let ctx = Arc::new(RingContext::polynomial(field, nvars));
    let vecs: Vec<Vector> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Vector::from_components(std::slice::from_ref(g)))
        .collect();
    buchberger(&ctx, 1, &vecs).polynomials()
}
