use std::collections::BTreeSet;

use equifix_core::catalog::{linear_cpn, linear_cpn_su2};
use equifix_core::ci::{scan_non_semi_negative, CompleteIntersection, SemiNegativity};
use equifix_core::finiteness::{
    bordism_fingerprint, distinct_point_types, enumerate_admissible_models, fingerprint_partition, lattice_point_types,
};
use equifix_core::hcp::{check_weight_identity, enumerate_hcp_models, top_power};
use equifix_core::localization::{equivariant_twisted_signature, BundleExpr, CharMonomial};
use equifix_core::search::DEFAULT_MAX_BRANCHES;
use equifix_core::{Partition, Rat};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn hcp_candidates_in_dimension_four() {
    let found = enumerate_hcp_models(2, DEFAULT_MAX_BRANCHES).unwrap();
    assert!(!found.is_empty());
    for c in &found {
        assert_eq!(c.pontryagin, vec![Rat::from(3)]);
        let f = equivariant_twisted_signature(&c.model, &BundleExpr::one(1)).unwrap();
        assert_eq!(f.is_constant(), Some(Rat::one()));
        assert_eq!(top_power(&c.model), Ok(Rat::one()));
    }
    let witness = linear_cpn_su2(2).unwrap().canonical_key();
    assert!(found.iter().any(|c| c.model.canonical_key() == witness));
}

#[test]
fn hcp_candidates_in_dimension_eight() {
    let found = enumerate_hcp_models(4, DEFAULT_MAX_BRANCHES).unwrap();
    let witness = linear_cpn_su2(4).unwrap().canonical_key();
    assert!(found.iter().any(|c| c.model.canonical_key() == witness));
    let keys: BTreeSet<_> = found.iter().map(|c| c.model.canonical_key()).collect();
    assert_eq!(keys.len(), found.len());
    for c in &found {
        assert_eq!(check_weight_identity(&c.model), Ok(true));
        assert!(c.model.validate().is_empty());
        assert_eq!(top_power(&c.model), Ok(Rat::one()));
        assert_eq!(c.model.euler_characteristic(), 5);
        assert!(c.pontryagin.iter().all(Rat::is_integer));
    }
    // deterministic
    assert_eq!(found, enumerate_hcp_models(4, DEFAULT_MAX_BRANCHES).unwrap());
}

#[test]
fn hcp_is_empty_in_odd_dimensions() {
    for n in [1, 3, 5, 7] {
        assert!(enumerate_hcp_models(n, DEFAULT_MAX_BRANCHES).unwrap().is_empty());
    }
}

/// Nondecreasing lists of `r` degrees in `2..=dmax`.
fn all_multidegrees(r: usize, dmax: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for tail in all_multidegrees(r - 1, dmax) {
        let lo = tail.last().copied().unwrap_or(2);
        for d in lo..=dmax {
            let mut v = tail.clone();
            v.push(d);
            out.push(v);
        }
    }
    out
}

fn brute_force_scan(n: u32, rmax: usize, dmax: u32) -> Vec<Vec<u32>> {
    (1..=rmax)
        .flat_map(|r| all_multidegrees(r, dmax))
        .filter(|d| !CompleteIntersection::new(n, d.clone()).unwrap().is_semi_negative().holds())
        .collect()
}

#[test]
fn scanner_matches_brute_force() {
    for n in 2..=8u32 {
        let scanned: Vec<Vec<u32>> = scan_non_semi_negative(n).iter().map(|c| c.degrees().to_vec()).collect();
        let r = n as usize + 1;
        assert_eq!(scanned, brute_force_scan(n, r, n + r as u32 + 1), "n = {n}");
        assert_eq!(scanned, brute_force_scan(n, 4, 8), "n = {n}");
    }
}

/// Smooth degree-`d` hypersurface in `CP^{n+1}`: `χ = ((1−d)^{n+2} − 1)/d + n + 2`.
fn hypersurface_euler(n: u32, d: u32) -> BigInt {
    let d = BigInt::from(d);
    let one = BigInt::from(1);
    ((&one - &d).pow(n + 2) - &one) / &d + BigInt::from(n + 2)
}

#[test]
fn hypersurface_invariants_match_closed_forms() {
    for n in 1..=6 {
        for d in 2..=7 {
            let ci = CompleteIntersection::new(n, vec![d]).unwrap();
            assert_eq!(ci.euler_characteristic(), hypersurface_euler(n, d), "V_{n}^({d})");
        }
    }
    // surfaces in CP³: σ = −d(d² − 4)/3
    for d in 2..=9i64 {
        let ci = CompleteIntersection::new(2, vec![d as u32]).unwrap();
        assert_eq!(ci.signature(), Ok(Rat::new(-d * (d * d - 4), 3)));
    }
}

#[test]
fn quadrics_and_products() {
    // V_2^(2) = CP1 × CP1 and V_1^(2,2) is an elliptic curve
    let q = CompleteIntersection::new(2, vec![2]).unwrap();
    assert_eq!(q.signature(), Ok(Rat::zero()));
    assert_eq!(CompleteIntersection::new(1, vec![2, 2]).unwrap().euler_characteristic(), BigInt::from(0));
}

fn multidegree() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (1u32..=8, prop::collection::vec(2u32..=9, 1..=4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ci_signature_is_integral((half, degrees) in (1u32..=2, prop::collection::vec(2u32..=6, 1..=3))) {
        let ci = CompleteIntersection::new(2 * half, degrees).unwrap();
        prop_assert!(ci.signature().unwrap().is_integer());
    }

    #[test]
    fn ci_witnesses_verify((n, degrees) in multidegree()) {
        let ci = CompleteIntersection::new(n, degrees).unwrap();
        match ci.is_semi_negative() {
            SemiNegativity::SemiNegative(w) => {
                prop_assert!(w.verify(&ci));
                prop_assert!(w.ks.len() <= 4);
            }
            SemiNegativity::NotSemiNegative => prop_assert!(ci.first_pontryagin_coefficient() > 0),
        }
    }

    #[test]
    fn ci_top_power_is_the_degree((n, degrees) in multidegree()) {
        let ci = CompleteIntersection::new(n, degrees).unwrap();
        prop_assert_eq!(ci.char_number(n, &Partition::empty()).unwrap(), ci.degree());
    }
}

fn run(n: u32, c: usize, k: usize, mult: u32) -> Vec<equifix_core::FixedPointModel> {
    enumerate_admissible_models(n, c, k, mult, DEFAULT_MAX_BRANCHES).unwrap()
}

/// Distinct `2·Σeps` over all eps assignments: the S³ point has eps −1, every further point
/// of type `m = (1,1)` carries either sign, and there are at most `c − 1` of them.
fn p1_values_by_brute_force(c: usize) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for extra in 0..c {
        for mask in 0u32..(1 << extra) {
            let plus = mask.count_ones() as i64;
            let sum = -1 + plus - (extra as i64 - plus);
            out.insert(2 * sum);
        }
    }
    out
}

#[test]
fn dimension_four_groups_match_eps_oracle() {
    let p1 = CharMonomial::pontryagin_only(0, Partition::single(1));
    for c in 1..=6 {
        let models = run(2, c, 0, 1);
        let groups = fingerprint_partition(&models);
        assert_eq!(groups.len(), p1_values_by_brute_force(c).len(), "C = {c}");
        for m in &models {
            assert!(m.validate().is_empty());
            let sum: i64 = m.points().iter().map(|p| p.eps().to_i64()).sum();
            assert_eq!(bordism_fingerprint(m).get(&p1), Some(&Rat::from(2 * sum)));
        }
    }
}

#[test]
fn enumeration_grows_with_the_bound() {
    for (n, k, mult) in [(2, 0, 1), (2, 1, 1), (2, 1, 2), (4, 0, 1)] {
        let mut previous: Vec<_> = Vec::new();
        for c in 1..=4 {
            let models = run(n, c, k, mult);
            let keys: BTreeSet<_> = models.iter().map(|m| m.canonical_key()).collect();
            assert_eq!(keys.len(), models.len(), "duplicates at n={n} k={k} N={mult} C={c}");
            for old in &previous {
                assert!(keys.contains(old), "lost a model at C = {c}");
            }
            previous = keys.into_iter().collect();
        }
    }
}

#[test]
fn point_types_are_bounded_by_the_lattice_count() {
    for (n, k, mult) in [(2, 0, 1), (2, 1, 1), (2, 2, 3), (4, 1, 1)] {
        let models = run(n, 3, k, mult);
        let types = distinct_point_types(&models);
        let origins: BTreeSet<_> = models.iter().map(|m| m.points()[0].key()).collect();
        let values: BTreeSet<u64> = models
            .iter()
            .map(|m| m.points()[0].eq1_value(mult) as u64)
            .collect();
        let lattice: usize = values.iter().map(|&v| 2 * lattice_point_types(n, k, mult, v).len()).sum();
        assert!(types.len() <= origins.len() + lattice);
    }
}

#[test]
fn linear_projective_plane_with_trivial_multiplier_is_not_semi_negative() {
    let model = linear_cpn(2).without_line_bundles().with_multiplier(Some(1)).unwrap();
    let v = model.validate();
    assert!(v.iter().any(|v| v.constraint.name() == "eq1-constancy"));
}
