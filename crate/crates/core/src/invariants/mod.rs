//! Betti and Bass numbers over endomorphisms, growth estimates and the
//! executable consistency checks built on them.

mod checks;
mod duality;
mod growth;
mod loewy;
mod report;
mod resolution;
mod tables;

pub use checks::{
    check_composition, check_duality, check_main_theorem, ci_test, estimate, flat_length_check,
    kunz_regularity_test, poincare_identity_check,
};
pub use duality::matlis_dual;
pub use growth::{
    complexity_estimate, curvature_estimate, Complexity, GrowthEstimate, DEFAULT_TOLERANCE, DEFAULT_WINDOW,
};
pub use loewy::{loewy_bound, loewy_truncation, LOEWY_SEARCH_LIMIT};
pub use report::{CheckReport, Series, Verdict};
pub use resolution::{free_resolution, residue_resolution};
pub use tables::{
    bass_over, betti_numbers, betti_over, module_id, tor_lengths, tor_lengths_over_ring, BettiTable, Over,
    TableKind,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::frobenius::{make_endomorphism, EndoMap};
    use crate::modules::{FinModule, QuotientRing};
    use crate::polyring::{PolyRing, Polynomial};

    fn quotient(p: u64, vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let poly = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect()).unwrap();
        let gens = ideal.iter().map(|s| poly.parse(s).unwrap()).collect();
        Arc::new(QuotientRing::new(poly, gens).unwrap())
    }

    fn parse_all(r: &QuotientRing, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| r.poly().parse(t).unwrap()).collect()
    }

    fn k(r: &Arc<QuotientRing>) -> FinModule {
        FinModule::residue_field(r.clone())
    }

    fn free(r: &Arc<QuotientRing>) -> FinModule {
        FinModule::free(r.clone(), 1)
    }

    fn frob(r: &Arc<QuotientRing>) -> EndoMap {
        EndoMap::frobenius(r.clone(), 1).unwrap()
    }

    #[test]
    fn betti_numbers_of_residue_fields() {
        let a1 = quotient(2, &["x"], &[]);
        assert_eq!(betti_numbers(&k(&a1), 2).unwrap().values, vec![1, 1, 0]);
        let r2 = quotient(2, &["x"], &["x^2"]);
        assert_eq!(betti_numbers(&k(&r2), 5).unwrap().values, vec![1; 6]);
        let r3 = quotient(2, &["x", "y"], &["x*y"]);
        assert_eq!(betti_numbers(&k(&r3), 5).unwrap().values, vec![1, 2, 2, 2, 2, 2]);
        let r4 = quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(betti_numbers(&k(&r4), 5).unwrap().values, vec![1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn betti_numbers_over_frobenius() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        let f = frob(&r2);
        assert_eq!(betti_over(&f, 1, &free(&r2), 5).unwrap().values, vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(betti_over(&f, 1, &k(&r2), 5).unwrap().values, vec![1, 2, 2, 2, 2, 2]);
        let a2 = quotient(2, &["x", "y"], &[]);
        assert_eq!(betti_over(&frob(&a2), 1, &free(&a2), 4).unwrap().values, vec![1, 2, 1, 0, 0]);
        let r4 = quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let expected: Vec<usize> = (0..=4usize)
            .map(|n| (0..=n.min(2)).map(|j| [1, 2, 1][j] << (n - j)).sum())
            .collect();
        assert_eq!(betti_over(&frob(&r4), 1, &k(&r4), 4).unwrap().values, expected);
    }

    #[test]
    fn tor_lengths_through_frobenius() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        assert_eq!(tor_lengths(&frob(&r2), 1, &free(&r2), 4).unwrap(), vec![2; 5]);
        let a1 = quotient(2, &["x"], &[]);
        assert_eq!(tor_lengths(&frob(&a1), 1, &free(&a1), 3).unwrap(), vec![2, 0, 0, 0]);
        let proj = EndoMap::projection(a1.clone()).unwrap();
        assert_eq!(tor_lengths(&proj, 1, &free(&a1), 2), Err(Error::NotArtinianCondition));
    }

    #[test]
    fn bass_numbers_of_a_regular_ring() {
        // Over F_2[x], K(x; R) has homology k in degree 0, so
        // μ^n = rank Ext^(n-1)(k, k) computed along R --x^2--> R.
        let a1 = quotient(2, &["x"], &[]);
        assert_eq!(bass_over(&frob(&a1), 1, &free(&a1), 3).unwrap().values, vec![0, 1, 1, 0]);
    }

    #[test]
    fn formality_for_dual_numbers() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        let f = frob(&r2);
        let m = k(&r2);
        let bk = betti_numbers(&m, 6).unwrap().values;
        let c = crate::modules::koszul_complex(&f.cokernel_generator_polys(), &m).unwrap();
        let h: Vec<usize> = (0..=1).map(|j| c.homology_length(j).unwrap()).collect();
        let expected: Vec<usize> = (0..=6usize)
            .map(|n| (0..=n.min(1)).map(|j| bk[n - j] * h[j]).sum())
            .collect();
        assert_eq!(betti_over(&f, 1, &m, 6).unwrap().values, expected);
    }

    #[test]
    fn kunz_examples() {
        let a2 = quotient(2, &["x", "y"], &[]);
        let rep = kunz_regularity_test(&k(&a2), 1, 6).unwrap();
        assert_eq!(rep.series["betti_phi"].values, vec![1, 4, 6, 4, 1, 0, 0]);
        assert!(rep.flags["engine_regular"] && rep.is_consistent());
        let r2 = quotient(2, &["x"], &["x^2"]);
        let rep = kunz_regularity_test(&k(&r2), 1, 6).unwrap();
        assert!(!rep.flags["engine_regular"] && rep.is_consistent());
        assert!(matches!(kunz_regularity_test(&k(&r2), 1, 2), Err(Error::TableTooShort { .. })));
    }

    #[test]
    fn complete_intersection_examples() {
        let r3 = quotient(2, &["x", "y"], &["x*y"]);
        let rep = ci_test(&r3, None, 8, 4, 0.3).unwrap();
        assert!(rep.flags["oracle_ci"] && rep.flags["empirical_ci"]);
        let r4 = quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let rep = ci_test(&r4, None, 8, 4, 0.3).unwrap();
        assert!(!rep.flags["oracle_ci"] && !rep.flags["empirical_ci"]);
        assert!(rep.is_consistent());
    }

    #[test]
    fn main_theorem_rates_agree() {
        let r4 = quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let rep = check_main_theorem(&frob(&r4), 1, &k(&r4), 7, 4, 0.3).unwrap();
        assert!(rep.is_consistent(), "{rep:?}");
        let r2 = quotient(2, &["x"], &["x^2"]);
        let rep = check_main_theorem(&frob(&r2), 1, &free(&r2), 8, 4, 0.3).unwrap();
        assert!(rep.is_consistent(), "{rep:?}");
    }

    #[test]
    fn duality_with_shift() {
        let r4 = quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let rep = check_duality(&frob(&r4), 1, &k(&r4), 4).unwrap();
        assert!(rep.is_consistent(), "{rep:?}");
        assert_eq!(rep.series["betti_phi_dual"].start, -2);
        assert_eq!(rep.series["betti_phi_dual"].values[0], 1);
        let r2 = quotient(2, &["x"], &["x^2"]);
        assert!(check_duality(&frob(&r2), 1, &free(&r2), 4).unwrap().is_consistent());
        let a1 = quotient(2, &["x"], &[]);
        assert_eq!(check_duality(&frob(&a1), 1, &k(&a1), 3), Err(Error::NotArtinianRing));
    }

    #[test]
    fn composition_of_frobenius_maps() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        let f = frob(&r2);
        let rep = check_composition(&f, &f, &k(&r2), &k(&r2), 8, 4, 0.3).unwrap();
        assert!(rep.is_consistent(), "{rep:?}");
    }

    #[test]
    fn flat_lengths() {
        let a1 = quotient(2, &["x"], &[]);
        let rep = flat_length_check(&frob(&a1), 1, &free(&a1), 3).unwrap();
        assert_eq!(rep.scalars["f"], 2.0);
        assert_eq!(rep.series["tensor_power_lengths"].values, vec![2, 4, 8]);
        assert!(rep.flags["flat_case"] && rep.is_consistent());
        let r2 = quotient(2, &["x"], &["x^2"]);
        let rep = flat_length_check(&frob(&r2), 1, &free(&r2), 2).unwrap();
        assert_eq!((rep.scalars["f"], rep.scalars["g"]), (2.0, 1.0));
        assert!(rep.flags["strict"]);
    }

    #[test]
    fn poincare_identity() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        let f = frob(&r2);
        assert!(poincare_identity_check(&f, 1, &k(&r2), &[], 5).unwrap().is_consistent());
        let a2 = quotient(2, &["x", "y"], &["x*y"]);
        let phi = make_endomorphism(a2.clone(), parse_all(&a2, &["x^2", "y^2"]), 8).unwrap();
        let extra = parse_all(&a2, &["x^2"]);
        assert!(poincare_identity_check(&phi, 1, &free(&a2), &extra, 4).unwrap().is_consistent());
        let bad = parse_all(&a2, &["1"]);
        assert!(matches!(
            poincare_identity_check(&phi, 1, &free(&a2), &bad, 4),
            Err(Error::GeneratorSetInvalid(_))
        ));
    }

    #[test]
    fn loewy_examples() {
        assert_eq!(loewy_bound(&quotient(2, &["x"], &[])).unwrap(), 1);
        assert_eq!(loewy_bound(&quotient(2, &["x"], &["x^2"])).unwrap(), 3);
        assert_eq!(loewy_bound(&quotient(2, &["x", "y"], &[])).unwrap(), 1);
    }
}
