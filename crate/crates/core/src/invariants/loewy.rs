use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{syzygies, ModTerm, Vector};
use crate::modules::{ChainComplex, Matrix, QuotientRing};
use crate::polyring::Monomial;

/// Largest truncation index tried by [`loewy_bound`].
pub const LOEWY_SEARCH_LIMIT: usize = 64;

/// Lexicographic `a`-subsets of `0..d`.
fn subsets(d: usize, a: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, a, &mut Vec::new(), &mut out);
    out
}

/// All monomials of total degree `deg` in the given variables (as monomials
/// of the ambient ring).
fn monomials(nvars: usize, vars: &[usize], deg: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &out {
            for &v in vars {
                next.push(m.mul(&Monomial::var(nvars, v)));
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// The subcomplex `J^i` of the Koszul complex on the minimal generators of
/// `m`, with `J^i_n = m^(i-n) K_n` (`m^j = R` for `j ≤ 0`).
///
/// `J^i_n` is presented on generators `u e_S` for monomials `u` of degree
/// `max(i - n, 0)` in the generators, with the syzygies of their images in
/// `K_n` as relations.
pub fn loewy_truncation(ring: &Arc<QuotientRing>, i: usize) -> Result<ChainComplex> {
    let nv = ring.nvars();
    let field = ring.field();
    let ctx = ring.context();
    let vars: Vec<usize> = ring
        .maximal_ideal_generators()
        .iter()
        .map(|x| (0..nv).find(|&j| x.leading_monomial() == Some(&Monomial::var(nv, j))).unwrap())
        .collect();
    let d = vars.len();
    let subs: Vec<Vec<Vec<usize>>> = (0..=d).map(|a| subsets(d, a)).collect();
    let index_of: Vec<HashMap<Vec<usize>, usize>> = subs
        .iter()
        .map(|s| s.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect())
        .collect();
    let mons: Vec<Vec<Monomial>> = (0..=d).map(|n| monomials(nv, &vars, i.saturating_sub(n))).collect();
    let mon_index: Vec<HashMap<Monomial, usize>> = mons
        .iter()
        .map(|m| m.iter().enumerate().map(|(k, &u)| (u, k)).collect())
        .collect();
    // generator (u, S) of J_n sits at position u_index * |subs_n| + S_index
    let gen_pos = |n: usize, u: usize, s: usize| u * subs[n].len() + s;

    let mut ranks = Vec::new();
    let mut rels = Vec::new();
    for n in 0..=d {
        let images: Vec<Vector> = mons[n]
            .iter()
            .flat_map(|u| {
                (0..subs[n].len()).map(move |s| {
                    Vector::from_terms(
                        field,
                        vec![ModTerm {
                            pos: s as u32,
                            mono: *u,
                            coef: 1,
                        }],
                    )
                })
            })
            .map(|v| ctx.reduce_vector(&v))
            .collect();
        let rel = syzygies(ctx, subs[n].len(), &images, None);
        ranks.push(images.len());
        rels.push(Matrix::new(images.len(), rel));
    }

    let mut diffs = Vec::new();
    for n in 1..=d {
        let mut cols = Vec::new();
        for u in &mons[n] {
            for s in &subs[n] {
                let mut terms = Vec::new();
                for (k, &v) in s.iter().enumerate() {
                    let coef = if k % 2 == 0 { 1 } else { field.neg(1) };
                    let mut rest = s.clone();
                    rest.remove(k);
                    let t = index_of[n - 1][&rest];
                    let x = Monomial::var(nv, vars[v]);
                    let (pos, mono) = if i >= n {
                        // J_(n-1) is generated in degree i - n + 1 ≥ 1
                        (gen_pos(n - 1, mon_index[n - 1][&u.mul(&x)], t), Monomial::one(nv))
                    } else {
                        (gen_pos(n - 1, 0, t), x)
                    };
                    terms.push(ModTerm { pos: pos as u32, mono, coef });
                }
                cols.push(Vector::from_terms(field, terms));
            }
        }
        diffs.push(Matrix::new(ranks[n - 1], cols));
    }
    ChainComplex::new(ring.clone(), 0, ranks, diffs, rels)
}

/// Least `i ≥ 1` such that the truncation `J^i` of the Koszul complex on the
/// minimal generators of `m` is exact; an upper bound for the homotopical
/// Loewy length of that complex.
pub fn loewy_bound(ring: &Arc<QuotientRing>) -> Result<usize> {
    for i in 1..=LOEWY_SEARCH_LIMIT {
        let j = loewy_truncation(ring, i)?;
        if (j.lo()..=j.hi()).all(|n| j.homology_length(n) == Some(0)) {
            return Ok(i);
        }
    }
    Err(Error::IterationLimit(LOEWY_SEARCH_LIMIT))
}
