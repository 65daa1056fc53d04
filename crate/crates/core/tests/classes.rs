//! Completeness of the loxodromic class lists.

use kleinian_selberg::arith::{complete_loxodromic_classes, enumerate_elements, primitive_loxodromic_classes, Group};

/// `Σ log N(T0)` over primitive classes and powers with `N(T) ≤ x`.
fn psi(group: Group, x: f64) -> f64 {
    let rep = complete_loxodromic_classes(group, x).unwrap();
    rep.classes
        .iter()
        .map(|c| {
            let powers = (x.ln() / c.n0.ln() + 1e-12).floor();
            powers * c.n0.ln()
        })
        .sum()
}

#[test]
fn prime_geodesic_theorem() {
    // ψ(x) ~ x²/2 from the simple pole of Z'/Z at s = 1
    for group in [Group::Picard, Group::Eisenstein] {
        let x = 40.0;
        let ratio = psi(group, x) / (x * x / 2.0);
        assert!((ratio - 1.0).abs() < 0.05, "{group}: ψ({x})/(x²/2) = {ratio}");
    }
}

#[test]
fn lists_are_stable_in_the_norm_bound() {
    for group in [Group::Picard, Group::Eisenstein] {
        let small = complete_loxodromic_classes(group, 15.0).unwrap();
        let large = complete_loxodromic_classes(group, 25.0).unwrap();
        let mut a: Vec<f64> = small.classes.iter().map(|c| c.n0).collect();
        let mut b: Vec<f64> = large.classes.iter().filter(|c| c.n0 <= 15.0 * (1.0 + 1e-12)).map(|c| c.n0).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a.len(), b.len(), "{group}");
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9 * x);
        }
    }
}

#[test]
fn enumeration_finds_a_subset() {
    for group in [Group::Picard, Group::Eisenstein] {
        let bound = 20.0;
        let complete = complete_loxodromic_classes(group, bound).unwrap();
        for h in [6, 12, 20] {
            let els = enumerate_elements(group.ring(), h).unwrap();
            let partial = primitive_loxodromic_classes(group, bound, &els).unwrap();
            assert!(partial.classes.len() <= complete.classes.len(), "{group} height {h}");
            for c in &partial.classes {
                let same_norm = complete.classes.iter().filter(|d| (d.n0 - c.n0).abs() < 1e-9 * c.n0).count();
                let partial_same = partial.classes.iter().filter(|d| (d.n0 - c.n0).abs() < 1e-9 * c.n0).count();
                assert!(partial_same <= same_norm, "{group} height {h}: N0 = {}", c.n0);
            }
        }
    }
}

#[test]
fn inverse_orientation_is_listed() {
    for group in [Group::Picard, Group::Eisenstein] {
        let rep = complete_loxodromic_classes(group, 30.0).unwrap();
        for c in rep.classes.iter().filter(|c| !c.self_inverse) {
            let partners = rep.classes.iter().filter(|d| d.reduced_class == c.reduced_class).count();
            assert_eq!(partners, 2, "{group}: {}", c.t0);
        }
        for c in rep.classes.iter().filter(|c| c.self_inverse) {
            assert_eq!(rep.classes.iter().filter(|d| d.reduced_class == c.reduced_class).count(), 1);
        }
    }
}
