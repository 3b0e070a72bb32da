//! Contracting endomorphisms, twists by them, Frobenius pushforwards and
//! Frobenius powers of ideals, and iterated bimodule tensor powers.

mod endo;
mod pushforward;

pub use endo::{make_endomorphism, Certificate, EndoKind, EndoMap, DEFAULT_CERTIFICATE_BOUND};
pub use pushforward::{pushforward, PushforwardPresentation, SIZE_BUDGET};

use crate::error::{Error, Result};
use crate::modules::FinModule;
use crate::polyring::{PolyRing, Polynomial};

/// Generators `f^(p^e)` of the Frobenius power `I^[p^e]`.
pub fn frobenius_power_ideal(poly: &PolyRing, gens: &[Polynomial], e: u32) -> Result<Vec<Polynomial>> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| poly.frobenius_apply(g, e))
        .collect()
}

/// `L ⊗_R M` where `M` is an `R`-module through `φ`; the result keeps the
/// original structure of `M`. Frame `(i, u) ↦ i * rank(M) + u`, relations
/// `φ(A_L) ⊗ 1` and `1 ⊗ A_M`.
pub fn twisted_tensor(l: &FinModule, m: &FinModule, phi: &EndoMap) -> Result<FinModule> {
    if l.ring() != m.ring() || l.ring() != phi.ring() {
        return Err(Error::RingMismatch);
    }
    let size = l.rank().saturating_mul(m.rank());
    if size > SIZE_BUDGET {
        return Err(Error::SizeBudgetExceeded {
            size,
            budget: SIZE_BUDGET,
        });
    }
    let rel = phi
        .twist_matrix(l.relations())
        .kron_identity_right(m.rank())
        .hstack(&m.relations().kron_identity_left(l.rank()));
    Ok(FinModule::new(m.ring().clone(), rel))
}

/// `M^(n)`, with `M^(1) = M` and `M^(k+1) = M ⊗_R M^(k)`, where `M^(k)` is a
/// module on the left through `φ^k`. Each power is minimized before the next
/// step.
pub fn bimodule_tensor_power(m: &FinModule, phi: &EndoMap, n: u32) -> Result<FinModule> {
    if n == 0 {
        return Err(Error::ShapeMismatch("tensor powers start at 1".into()));
    }
    let mut acc = m.minimal_presentation();
    for k in 1..n {
        let twist = phi.power(k)?;
        acc = twisted_tensor(m, &acc, &twist)?.minimal_presentation();
    }
    Ok(acc)
}
