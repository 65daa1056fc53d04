//! The loxodromic term of the resolvent pair is a difference of zeta
//! log-derivatives at the same truncation.

use kleinian_selberg::arith::{enumerate_elements, Group};
use kleinian_selberg::representation::UnitaryRep;
use kleinian_selberg::trace_formula::{loxodromic_term, GroupData, TraceSetting, KAPPA_X_MAX};
use kleinian_selberg::zeta::log_derivative_series;
use num_complex::Complex64;

#[test]
fn resolvent_loxodromic_term_matches_zeta_log_derivatives() {
    let (s, b, bound) = (2.0, 3.0, 30.0);
    let g = |x: f64| (-s * x.abs()).exp() / (2.0 * s) - (-b * x.abs()).exp() / (2.0 * b);
    for (group, reps) in [(Group::Picard, ["trivial", "sign", "perm"]), (Group::Eisenstein, ["trivial", "cubic", "perm"])] {
        let els = enumerate_elements(group.ring(), 10).unwrap();
        for name in reps {
            let data = GroupData::from_elements(group, 10, &els, bound).unwrap();
            let st = TraceSetting::new(data, UnitaryRep::builtin(group, name).unwrap(), KAPPA_X_MAX).unwrap();
            let term = loxodromic_term(&g, &st.zeta_data, bound, 1e-10).unwrap().value;
            let zs = log_derivative_series(Complex64::new(s, 0.0), &st.zeta_data, bound).unwrap();
            let zb = log_derivative_series(Complex64::new(b, 0.0), &st.zeta_data, bound).unwrap();
            let expected = zs / (2.0 * s) - zb / (2.0 * b);
            // both orientations of every axis: the class sum is real
            assert!(expected.im.abs() <= 1e-12 * expected.norm().max(1e-3), "{group}/{name}: {expected}");
            assert!((term - expected.re).abs() <= 1e-9 * expected.re.abs().max(1e-3), "{group}/{name}: {term} vs {expected}");
        }
    }
}
