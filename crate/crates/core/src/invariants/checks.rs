use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frobenius::{bimodule_tensor_power, twisted_tensor, EndoMap};
use crate::groebner::Vector;
use crate::modules::{koszul_complex, tensor_complexes, FinModule, Matrix, QuotientRing};
use crate::polyring::Polynomial;

use super::duality::matlis_dual;
use super::growth::{curvature_estimate, Complexity, GrowthEstimate};
use super::report::{CheckReport, Series};
use super::resolution::residue_resolution_through;
use super::tables::{bass_over, betti_numbers, betti_over, betti_over_complex, lengths, module_id};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients `0..=nmax` of `a(t) (1+t)^d`.
fn times_binomial(a: &[usize], d: usize, nmax: usize) -> Vec<usize> {
    (0..=nmax)
        .map(|n| (0..=d.min(n)).map(|j| binomial(d, j) * a.get(n - j).copied().unwrap_or(0)).sum())
        .collect()
}

fn first_mismatch(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// Regularity through Frobenius: `R` is declared regular when
/// `β^(F^e)_n(M)` vanishes for every `n` in `[edim R + edim F^e + 1, nmax]`,
/// and this is compared with the `edim R = dim R` criterion.
pub fn kunz_regularity_test(m: &FinModule, e: u32, nmax: usize) -> Result<CheckReport> {
    let ring = m.ring();
    let frob = EndoMap::frobenius(ring.clone(), 1)?;
    let psi = frob.power(e)?;
    let start = ring.edim() + psi.edim() + 1;
    if nmax < start {
        return Err(Error::TableTooShort {
            needed: start + 1,
            have: nmax + 1,
        });
    }
    let table = betti_over(&frob, e, m, nmax)?;
    let nonzero = (start..=nmax).find(|&n| table.values[n] != 0);
    let engine_regular = nonzero.is_none();
    let oracle_regular = ring.is_regular();
    let mut r = CheckReport::new("kunz");
    r.input("module", module_id(m))
        .input("e", e)
        .input("nmax", nmax)
        .input("window_start", start)
        .series("betti_phi", Series::from_zero(&table.values))
        .flag("engine_regular", engine_regular)
        .flag("oracle_regular", oracle_regular)
        .flag("agree", engine_regular == oracle_regular);
    if engine_regular != oracle_regular {
        r.violated_at(nonzero.unwrap_or(nmax) as i64);
    }
    Ok(r)
}

/// Complete-intersection decision: `ν(I) = n - dim R` against the growth of
/// the Betti numbers of `k` (over `φ^e` when given).
pub fn ci_test(
    ring: &Arc<QuotientRing>,
    phi: Option<(&EndoMap, u32)>,
    nmax: usize,
    window: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    let k = FinModule::residue_field(ring.clone());
    let table = match phi {
        Some((phi, e)) => betti_over(phi, e, &k, nmax)?,
        None => betti_numbers(&k, nmax)?,
    };
    let est = curvature_estimate(&table.values, window, tolerance)?;
    let codim = ring.edim() - ring.dim();
    let oracle_ci = ring.is_complete_intersection();
    let degree_bound = (codim as f64 - 1.0).max(0.0) + tolerance;
    let empirical_ci =
        est.fitted_rate <= 1.0 + tolerance && (est.fitted_rate == 0.0 || est.poly_degree_fit <= degree_bound);
    let mut r = CheckReport::new("ci");
    r.input("nmax", nmax)
        .input("window", window)
        .input("over", if phi.is_some() { "endo" } else { "ring" })
        .series("betti", Series::from_zero(&table.values))
        .scalar("codim", codim as f64)
        .scalar("ideal_generators", ring.minimal_generator_count() as f64)
        .flag("oracle_ci", oracle_ci)
        .flag("empirical_ci", empirical_ci)
        .estimate("betti", est);
    r.tolerance = Some(tolerance);
    if oracle_ci != empirical_ci {
        r.violated_at(nmax as i64);
    }
    Ok(r)
}

/// Fitted rates of `β^(φ^e)(M)`, `β(k)` and `μ_(φ^e)(M)` must agree within
/// the tolerance.
pub fn check_main_theorem(
    phi: &EndoMap,
    e: u32,
    m: &FinModule,
    nmax: usize,
    window: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    let ring = m.ring();
    let beta = betti_over(phi, e, m, nmax)?;
    let beta_k = betti_numbers(&FinModule::residue_field(ring.clone()), nmax)?;
    let mu = bass_over(phi, e, m, nmax)?;
    let ests = [
        ("betti_phi", curvature_estimate(&beta.values, window, tolerance)?),
        ("betti_k", curvature_estimate(&beta_k.values, window, tolerance)?),
        ("bass_phi", curvature_estimate(&mu.values, window, tolerance)?),
    ];
    let mut discrepancy: f64 = 0.0;
    for (i, a) in ests.iter().enumerate() {
        for b in &ests[i + 1..] {
            discrepancy = discrepancy.max((a.1.fitted_rate - b.1.fitted_rate).abs());
        }
    }
    let mut r = CheckReport::new("main_theorem");
    r.input("module", module_id(m))
        .input("e", e)
        .input("nmax", nmax)
        .input("window", window)
        .series("betti_phi", Series::from_zero(&beta.values))
        .series("betti_k", Series::from_zero(&beta_k.values))
        .series("bass_phi", Series::from_zero(&mu.values))
        .scalar("max_rate_discrepancy", discrepancy);
    for (name, est) in ests {
        r.estimate(name, est);
    }
    r.tolerance = Some(tolerance);
    if discrepancy > tolerance {
        r.violated_at(nmax as i64);
    }
    Ok(r)
}

/// Over an artinian ring, with `N` the `k`-dual of the Koszul complex `K^M`
/// on a minimal generating set of `m` (`d = edim R` elements), compares
/// `β^φ_(n-d)(N)` with the coefficient of `t^n` in `I^φ_M(t) (1+t)^d` for
/// `0 ≤ n ≤ nmax`.
///
/// With Bass numbers indexed by `Ext^(n - edim φ)`, the Poincaré series of `N`
/// starts in degree `-d`, hence the shift.
pub fn check_duality(phi: &EndoMap, e: u32, m: &FinModule, nmax: usize) -> Result<CheckReport> {
    let ring = m.ring();
    if !ring.is_artinian() {
        return Err(Error::NotArtinianRing);
    }
    m.require_nonzero()?;
    let psi = phi.power(e)?;
    let x = ring.maximal_ideal_generators();
    let d = x.len();
    let n_dual = matlis_dual(&koszul_complex(&x, m)?)?;
    let degrees: Vec<i64> = (-(d as i64)..=nmax as i64 - d as i64).collect();
    let left = betti_over_complex(&psi, &n_dual, &degrees)?;
    let below = betti_over_complex(&psi, &n_dual, &[-(d as i64) - 1])?[0];
    let mu = bass_over(phi, e, m, nmax)?;
    let right = times_binomial(&mu.values, d, nmax);
    let unshifted = betti_over_complex(&psi, &n_dual, &(0..=nmax as i64).collect::<Vec<_>>())?;
    let mut r = CheckReport::new("duality");
    r.input("module", module_id(m))
        .input("e", e)
        .input("nmax", nmax)
        .input("edim", d)
        .series(
            "betti_phi_dual",
            Series {
                start: -(d as i64),
                values: left.iter().map(|&v| v as u64).collect(),
            },
        )
        .series("bass_phi", Series::from_zero(&mu.values))
        .series("bass_times_binomial", Series::from_zero(&right))
        .flag("vanishes_below_shift", below == 0)
        .flag("unshifted_identity", unshifted == right);
    if let Some(n) = first_mismatch(&left, &right) {
        r.violated_at(n as i64);
    } else if below != 0 {
        r.violated_at(-(d as i64) - 1);
    }
    Ok(r)
}

/// Rates and complexities of `β^(φ∘ρ)(L ⊗_R M)` (with `M` a module through
/// `φ`) against those of `β^ρ(L)` and `β^φ(M)`. Consistent when
/// `max(rate_ρ, rate_φ) - rate_composite ≥ -tolerance` and the complexity
/// of the composite is at most the sum.
pub fn check_composition(
    rho: &EndoMap,
    phi: &EndoMap,
    l: &FinModule,
    m: &FinModule,
    nmax: usize,
    window: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    l.require_nonzero()?;
    m.require_nonzero()?;
    let composite = phi.compose(rho)?;
    let product = twisted_tensor(l, m, phi)?.minimal_presentation();
    let lhs = if product.is_zero() {
        vec![0; nmax + 1]
    } else {
        betti_over(&composite, 1, &product, nmax)?.values
    };
    let a = betti_over(rho, 1, l, nmax)?.values;
    let b = betti_over(phi, 1, m, nmax)?.values;
    let est_lhs = curvature_estimate(&lhs, window, tolerance)?;
    let est_a = curvature_estimate(&a, window, tolerance)?;
    let est_b = curvature_estimate(&b, window, tolerance)?;
    let slack = est_a.fitted_rate.max(est_b.fitted_rate) - est_lhs.fitted_rate;
    let cx_ok = match (est_lhs.complexity, est_a.complexity, est_b.complexity) {
        (_, Complexity::Infinite, _) | (_, _, Complexity::Infinite) => true,
        (Complexity::Infinite, _, _) => false,
        (Complexity::Finite(c), Complexity::Finite(x), Complexity::Finite(y)) => c <= x + y,
    };
    let mut r = CheckReport::new("composition");
    r.input("left_module", module_id(l))
        .input("right_module", module_id(m))
        .input("nmax", nmax)
        .input("window", window)
        .series("betti_composite", Series::from_zero(&lhs))
        .series("betti_left", Series::from_zero(&a))
        .series("betti_right", Series::from_zero(&b))
        .scalar("rate_slack", slack)
        .flag("complexity_bound", cx_ok);
    for (name, est) in [("composite", est_lhs), ("left", est_a), ("right", est_b)] {
        r.estimate(name, est);
    }
    r.tolerance = Some(tolerance);
    if slack < -tolerance || !cx_ok {
        r.violated_at(nmax as i64);
    }
    Ok(r)
}

/// `ℓ(coker[A | φ(x_i) e_j])` for a module `coker A`, i.e. `ℓ(M / M φ(m))`.
fn length_mod_image(m: &FinModule, images: &[Polynomial]) -> Result<usize> {
    let ring = m.ring();
    let mut cols = m.relations().cols().to_vec();
    for j in 0..m.rank() {
        for g in images {
            cols.push(Vector::from_components(std::slice::from_ref(g)).shift_positions(j));
        }
    }
    FinModule::new(ring.clone(), Matrix::new(m.rank(), cols))
        .length()
        .ok_or(Error::NotArtinianCondition)
}

/// `f = ℓ(k ⊗_R M)` with `M` a left module through `φ^e`, `g = ν(M)` and
/// `ℓ(k ⊗_R M^(n))` for `1 ≤ n ≤ n_upto`. When `R` is regular and `M` free
/// the lengths must equal `f^n`; otherwise the report records `f` against
/// `g`.
pub fn flat_length_check(phi: &EndoMap, e: u32, m: &FinModule, n_upto: u32) -> Result<CheckReport> {
    m.require_nonzero()?;
    let psi = phi.power(e)?;
    let f = length_mod_image(m, psi.images())?;
    let g = m.minimal_generator_count();
    let mut powers = Vec::new();
    for n in 1..=n_upto {
        let mn = bimodule_tensor_power(m, &psi, n)?;
        powers.push(length_mod_image(&mn, psi.power(n)?.images())?);
    }
    let flat = m.ring().is_regular() && m.minimal_presentation().relations().ncols() == 0;
    let expected: Vec<usize> = (1..=n_upto).map(|n| f.pow(n)).collect();
    let mut r = CheckReport::new("flat_length");
    r.input("module", module_id(m))
        .input("e", e)
        .input("n_upto", n_upto)
        .scalar("f", f as f64)
        .scalar("g", g as f64)
        .flag("flat_case", flat)
        .flag("strict", f > g)
        .series(
            "tensor_power_lengths",
            Series {
                start: 1,
                values: powers.iter().map(|&v| v as u64).collect(),
            },
        );
    if flat {
        if let Some(i) = first_mismatch(&powers, &expected) {
            r.violated_at(i as i64 + 1);
        }
    } else if f < g {
        r.violated_at(0);
    }
    Ok(r)
}

/// `P^φ_M(t) (1+t)^(q - edim φ) = Σ rank Tor_n(k, K(x; M)) t^n` where `x`
/// is the cokernel generator set `y` of `φ^e` extended by `extra`
/// (`q = |x|`).
pub fn poincare_identity_check(
    phi: &EndoMap,
    e: u32,
    m: &FinModule,
    extra: &[Polynomial],
    nmax: usize,
) -> Result<CheckReport> {
    let ring = m.ring();
    let poly = ring.poly();
    let psi = phi.power(e)?;
    let mut x = psi.cokernel_generator_polys();
    let edim_phi = x.len();
    for g in extra {
        poly.check(g)?;
        let g = ring.reduce(g);
        if !ring.in_maximal_ideal(&g) {
            return Err(Error::GeneratorSetInvalid(format!("`{}` is not in the maximal ideal", poly.format(&g))));
        }
        if g.is_zero() {
            return Err(Error::GeneratorSetInvalid("zero generator".into()));
        }
        if x.contains(&g) {
            return Err(Error::GeneratorSetInvalid(format!("`{}` is listed twice", poly.format(&g))));
        }
        x.push(g);
    }
    let q = x.len();
    let beta = betti_over(phi, e, m, nmax)?;
    let left = times_binomial(&beta.values, q - edim_phi, nmax);
    let kx = koszul_complex(&x, m)?;
    let t = tensor_complexes(&psi.twist_complex(&residue_resolution_through(ring, nmax + 1)?), &kx)?;
    let right = lengths(&t, 0..=nmax as i64)?;
    let mut r = CheckReport::new("poincare_identity");
    r.input("module", module_id(m))
        .input("e", e)
        .input("nmax", nmax)
        .input("q", q)
        .input("edim_phi", edim_phi)
        .input(
            "generators",
            x.iter().map(|g| poly.format(g)).collect::<Vec<_>>().join(", "),
        )
        .series("betti_phi", Series::from_zero(&beta.values))
        .series("left", Series::from_zero(&left))
        .series("right", Series::from_zero(&right));
    if let Some(n) = first_mismatch(&left, &right) {
        r.violated_at(n as i64);
    }
    Ok(r)
}

/// Growth estimate for a table, re-exported for callers that only hold values.
pub fn estimate(values: &[usize], window: usize, tolerance: f64) -> Result<GrowthEstimate> {
    curvature_estimate(values, window, tolerance)
}
