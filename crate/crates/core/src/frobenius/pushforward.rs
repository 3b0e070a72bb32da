use crate::error::{Error, Result};
use crate::groebner::{ModTerm, Vector};
use crate::modules::{FinModule, Matrix};
use crate::polyring::Monomial;

/// Largest frame a pushforward or bimodule power may build before minimizing.
pub const SIZE_BUDGET: usize = 4096;

/// `F^e_* M`: `M` with `R` acting through `r ↦ r^(p^e)`, presented over `R`.
#[derive(Clone, Debug)]
pub struct PushforwardPresentation {
    /// Minimal presentation of the pushforward.
    pub module: FinModule,
    /// Exponent vectors `a` with `0 ≤ a_i < p^e`; frame generator
    /// `t * rank(M) + j` of the unminimized presentation is `x^a e_j` for
    /// `a = basis_tags[t]`.
    pub basis_tags: Vec<Monomial>,
    /// Frame rank before minimization, `p^(e n) * rank(M)`.
    pub frame_rank: usize,
}

/// Presents `F^e_* M` over the same ring.
///
/// Over `S = F_p[x]`, `F_* S` is free on the monomials `x^a` with all
/// `a_i < q`. Each relation `ρ` of `M` over `S` (the columns of its matrix and
/// `g e_j` for `g` in the basis of `I`) yields relations `x^b ρ` for all such
/// `b`, rewritten by `x^(qv + a) e_j ↦ x^v (x^a e_j)`.
pub fn pushforward(m: &FinModule, e: u32) -> Result<PushforwardPresentation> {
    let ring = m.ring();
    let n = ring.nvars();
    let f = m.rank();
    let q = (ring.characteristic() as usize)
        .checked_pow(e)
        .ok_or(Error::SizeBudgetExceeded {
            size: usize::MAX,
            budget: SIZE_BUDGET,
        })?;
    let blocks = u32::try_from(n)
        .ok()
        .and_then(|n| q.checked_pow(n))
        .unwrap_or(usize::MAX);
    let size = blocks.saturating_mul(f);
    if size > SIZE_BUDGET {
        return Err(Error::SizeBudgetExceeded {
            size,
            budget: SIZE_BUDGET,
        });
    }
    let field = ring.field();
    let tags: Vec<Monomial> = (0..blocks).map(|t| Monomial::from_exponents(&digits(t, q, n))).collect();

    let mut over_s: Vec<Vector> = m.relations().cols().to_vec();
    for g in ring.ideal_basis() {
        for j in 0..f {
            over_s.push(Vector::from_components(std::slice::from_ref(g)).shift_positions(j));
        }
    }

    let mut cols = Vec::with_capacity(over_s.len() * blocks);
    for rho in &over_s {
        for b in &tags {
            let mut terms = Vec::with_capacity(rho.terms().len());
            for t in rho.terms() {
                let u = t.mono.mul(b);
                let mut low = vec![0u32; n];
                let mut high = vec![0u32; n];
                for i in 0..n {
                    low[i] = u.exponent(i) % q as u32;
                    high[i] = u.exponent(i) / q as u32;
                }
                let block = low.iter().rev().fold(0usize, |acc, &a| acc * q + a as usize);
                terms.push(ModTerm {
                    pos: (block * f + t.pos as usize) as u32,
                    mono: Monomial::from_exponents(&high),
                    coef: t.coef,
                });
            }
            let v = Vector::from_terms(field, terms);
            if !v.is_zero() {
                cols.push(v);
            }
        }
    }
    let module = FinModule::new(ring.clone(), Matrix::new(size, cols)).minimal_presentation();
    Ok(PushforwardPresentation {
        module,
        basis_tags: tags,
        frame_rank: size,
    })
}

/// Base-`q` digits of `t`, least significant first, padded to `n`.
fn digits(mut t: usize, q: usize, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for d in out.iter_mut() {
        *d = (t % q) as u32;
        t /= q;
    }
    out
}
