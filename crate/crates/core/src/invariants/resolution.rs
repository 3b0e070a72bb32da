use std::sync::Arc;

use crate::error::Result;
use crate::groebner::syzygies;
use crate::modules::{cancel_units, ChainComplex, FinModule, Matrix, QuotientRing, ResolutionPrefix};

/// One step: minimizes the columns of `prefix.next` using its syzygies and
/// turns the syzygies into the next candidate.
fn step(ring: &QuotientRing, prefix: &mut ResolutionPrefix) {
    let d = std::mem::replace(&mut prefix.next, Matrix::empty(0));
    let w = syzygies(ring.context(), d.nrows(), d.cols(), None);
    let c = cancel_units(ring, d.ncols(), w);
    let kept: Vec<_> = c.kept_rows.iter().map(|&j| d.col(j).clone()).collect();
    prefix.next = Matrix::new(kept.len(), c.cols);
    prefix.diffs.push(Matrix::new(d.nrows(), kept));
}

fn extend_to(ring: &QuotientRing, prefix: &mut ResolutionPrefix, len: usize) {
    while prefix.diffs.len() < len {
        step(ring, prefix);
    }
}

fn prefix_for(m: &FinModule, len: usize) -> (usize, ResolutionPrefix) {
    let ring = m.ring();
    let min = m.minimal_presentation();
    let mut prefix = ResolutionPrefix {
        diffs: Vec::new(),
        next: min.relations().clone(),
    };
    extend_to(ring, &mut prefix, len);
    (min.rank(), prefix)
}

/// Minimal differentials `d_1..d_len` of the resolution of `k` and the next
/// candidate, extending the ring's cache as needed.
fn residue_prefix(ring: &QuotientRing, len: usize) -> ResolutionPrefix {
    let mut cache = ring
        .residue_resolution_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    extend_to(ring, &mut cache, len);
    ResolutionPrefix {
        diffs: cache.diffs[..len].to_vec(),
        next: if cache.diffs.len() == len {
            cache.next.clone()
        } else {
            cache.diffs[len].clone()
        },
    }
}

fn assemble(ring: &Arc<QuotientRing>, rank0: usize, diffs: Vec<Matrix>) -> Result<ChainComplex> {
    let mut ranks = vec![rank0];
    ranks.extend(diffs.iter().map(|d| d.ncols()));
    ChainComplex::free(ring.clone(), 0, ranks, diffs)
}

/// Minimal free resolution of `M` in homological degrees `0..=nmax`.
///
/// Every differential entry lies in `m`.
pub fn free_resolution(m: &FinModule, nmax: usize) -> Result<ChainComplex> {
    m.require_nonzero()?;
    let (rank0, prefix) = prefix_for(m, nmax);
    assemble(m.ring(), rank0, prefix.diffs)
}

/// Resolution of `k` through degree `top`, minimal in degrees below `top`;
/// the top differential generates the kernel but need not be minimal. This
/// is what homology through degree `top - 1` needs.
pub(crate) fn residue_resolution_through(ring: &Arc<QuotientRing>, top: usize) -> Result<ChainComplex> {
    if top == 0 {
        return assemble(ring, 1, Vec::new());
    }
    let prefix = residue_prefix(ring, top - 1);
    let mut diffs = prefix.diffs;
    diffs.push(prefix.next);
    assemble(ring, 1, diffs)
}

/// Minimal free resolution of `k`, cached on the ring.
pub fn residue_resolution(ring: &Arc<QuotientRing>, nmax: usize) -> Result<ChainComplex> {
    let prefix = residue_prefix(ring, nmax);
    assemble(ring, 1, prefix.diffs)
}
