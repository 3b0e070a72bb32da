use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{EndoKind, EndoMap};
use crate::modules::{hom_complex, koszul_complex, tensor_complexes, ChainComplex, FinModule, QuotientRing};

use super::resolution::{free_resolution, residue_resolution_through};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Betti,
    Bass,
}

/// The map the numbers are taken over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Over {
    /// Over `R` itself (`φ` the identity).
    Ring,
    /// Over the `e`-th iterate of an endomorphism.
    Endo { kind: EndoKind, e: u32, images: Vec<String> },
}

/// Betti or Bass numbers in degrees `0..=nmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub kind: TableKind,
    pub over: Over,
    pub module_id: String,
    pub nmax: usize,
    /// All values are exact through this degree.
    pub exact_upto: usize,
    /// `values[n]` for `0 ≤ n ≤ nmax`.
    pub values: Vec<usize>,
}

impl BettiTable {
    fn new(kind: TableKind, over: Over, m: &FinModule, values: Vec<usize>) -> Self {
        let nmax = values.len().saturating_sub(1);
        BettiTable {
            kind,
            over,
            module_id: module_id(m),
            nmax,
            exact_upto: nmax,
            values,
        }
    }

    /// The value in degree `n` (zero outside the table and below 0).
    pub fn get(&self, n: i64) -> usize {
        usize::try_from(n).ok().and_then(|n| self.values.get(n).copied()).unwrap_or(0)
    }
}

/// A short description of a presentation: `R^r` for free modules, `k` for the
/// residue field, otherwise the relation matrix by rows.
pub fn module_id(m: &FinModule) -> String {
    let ring = m.ring();
    let poly = ring.poly();
    let rel = m.relations();
    if rel.ncols() == 0 {
        return if m.rank() == 1 { "R".into() } else { format!("R^{}", m.rank()) };
    }
    if m.rank() == 1 && m.relation_basis() == FinModule::residue_field(ring.clone()).relation_basis() {
        return "k".into();
    }
    let rows: Vec<String> = rel
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|f| poly.format(f)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Records the base map and the iterate count, not the iterate itself.
fn over_endo(phi: &EndoMap, e: u32) -> Over {
    let poly = phi.ring().poly();
    Over::Endo {
        kind: phi.kind(),
        e,
        images: phi.images().iter().map(|g| poly.format(g)).collect(),
    }
}

/// Finite homology lengths of `c` in the given degrees, computed in parallel.
pub(crate) fn lengths(c: &ChainComplex, degrees: impl IntoIterator<Item = i64>) -> Result<Vec<usize>> {
    let degrees: Vec<i64> = degrees.into_iter().collect();
    degrees
        .par_iter()
        .map(|&n| c.homology_length(n).ok_or(Error::InfiniteLength { degree: n }))
        .collect()
}

/// `β_n(M)` for `0 ≤ n ≤ nmax`: ranks of the minimal free resolution.
pub fn betti_numbers(m: &FinModule, nmax: usize) -> Result<BettiTable> {
    let f = free_resolution(m, nmax)?;
    let values = (0..=nmax as i64).map(|n| f.rank(n)).collect();
    Ok(BettiTable::new(TableKind::Betti, Over::Ring, m, values))
}

/// The resolution of `k` twisted by `ψ`, through degree `top`.
fn twisted_residue(psi: &EndoMap, top: usize) -> Result<ChainComplex> {
    Ok(psi.twist_complex(&residue_resolution_through(psi.ring(), top)?))
}

/// `rank_k Tor_n(k, K(y; C))` over `ψ` for each requested degree, where `C`
/// is a bounded complex and `y` generates `m` modulo `ψ(m)R`.
pub(crate) fn betti_over_complex(psi: &EndoMap, c: &ChainComplex, degrees: &[i64]) -> Result<Vec<usize>> {
    let ring = psi.ring();
    let Some(&top) = degrees.iter().max() else {
        return Ok(Vec::new());
    };
    let y = psi.cokernel_generator_polys();
    let ky = koszul_complex(&y, &FinModule::free(ring.clone(), 1))?;
    let kc = tensor_complexes(&ky, c)?;
    let need = (top - kc.lo() + 1).max(0) as usize;
    let t = tensor_complexes(&twisted_residue(psi, need)?, &kc)?;
    lengths(&t, degrees.iter().copied())
}

/// `β^φ_n(M)` for the `e`-th iterate, `0 ≤ n ≤ nmax`.
pub fn betti_over(phi: &EndoMap, e: u32, m: &FinModule, nmax: usize) -> Result<BettiTable> {
    m.require_nonzero()?;
    same_ring(phi, m)?;
    let psi = phi.power(e)?;
    let y = psi.cokernel_generator_polys();
    let k = koszul_complex(&y, m)?;
    let t = tensor_complexes(&twisted_residue(&psi, nmax + 1)?, &k)?;
    let values = lengths(&t, 0..=nmax as i64)?;
    Ok(BettiTable::new(TableKind::Betti, over_endo(phi, e), m, values))
}

/// `μ_φ^n(M) = rank Ext^(n - edim φ)(k, K(y; M))` for the `e`-th iterate,
/// `0 ≤ n ≤ nmax`, computed from `Hom(F ⊗ φ, K(y; M))`.
pub fn bass_over(phi: &EndoMap, e: u32, m: &FinModule, nmax: usize) -> Result<BettiTable> {
    m.require_nonzero()?;
    same_ring(phi, m)?;
    let psi = phi.power(e)?;
    let y = psi.cokernel_generator_polys();
    let d = y.len() as i64;
    let k = koszul_complex(&y, m)?;
    let h = hom_complex(&twisted_residue(&psi, nmax + 1)?, &k)?;
    let values = lengths(&h, (0..=nmax as i64).map(|n| d - n))?;
    Ok(BettiTable::new(TableKind::Bass, over_endo(phi, e), m, values))
}

/// `ℓ Tor_n(k, M)` with `R` acting on `M` through `φ^e`, `0 ≤ n ≤ nmax`.
/// Requires `R/φ^e(m)R` artinian.
pub fn tor_lengths(phi: &EndoMap, e: u32, m: &FinModule, nmax: usize) -> Result<Vec<usize>> {
    m.require_nonzero()?;
    same_ring(phi, m)?;
    let psi = phi.power(e)?;
    if psi.image_quotient_length().is_none() {
        return Err(Error::NotArtinianCondition);
    }
    let t = tensor_complexes(&twisted_residue(&psi, nmax + 1)?, &ChainComplex::from_module(m))?;
    lengths(&t, 0..=nmax as i64)
}

/// `ℓ Tor_n(k, N)` for `0 ≤ n ≤ nmax` over `R` itself.
pub fn tor_lengths_over_ring(n: &FinModule, nmax: usize) -> Result<Vec<usize>> {
    let ring: &Arc<QuotientRing> = n.ring();
    let t = tensor_complexes(&residue_resolution_through(ring, nmax + 1)?, &ChainComplex::from_module(n))?;
    lengths(&t, 0..=nmax as i64)
}

fn same_ring(phi: &EndoMap, m: &FinModule) -> Result<()> {
    if phi.ring() == m.ring() {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}
