//! Classification of elements by their trace.

use super::element::GroupElement;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Kind and invariants of a group element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum ElementClassification {
    Identity,
    Parabolic,
    /// Finite order `order`; `rotation` is the eigenvalue `e^{iθ}` with
    /// `Im ≥ 0` and `Re ≥ 0`, where `2cos θ = ±tr`.
    Elliptic { order: u32, cuspidal: bool, rotation: Complex64 },
    /// Conjugate to `diag(a, 1/a)` with `|a| > 1`; `norm = |a|²`.
    Loxodromic { a: Complex64, norm: f64, hyperbolic: bool },
}

impl ElementClassification {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ElementClassification::Identity => "identity",
            ElementClassification::Parabolic => "parabolic",
            ElementClassification::Elliptic { .. } => "elliptic",
            ElementClassification::Loxodromic { .. } => "loxodromic",
        }
    }
}

/// The eigenvalue `λ` of `T` with `|λ| > 1` (or `Im λ > 0` for elliptics).
pub fn dominant_eigenvalue(t: &GroupElement) -> Complex64 {
    let tr = t.trace().to_complex();
    let disc = (tr * tr - 4.0).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    if (l1.norm() - l2.norm()).abs() > 1e-12 {
        if l1.norm() > l2.norm() {
            l1
        } else {
            l2
        }
    } else if l1.im >= l2.im {
        l1
    } else {
        l2
    }
}

/// Classify `t` from its trace.
pub fn classify(t: &GroupElement) -> ElementClassification {
    let ring = t.ring();
    let tr = t.trace();
    let disc = tr * tr - ring.int(4);
    if disc.is_zero() {
        return if t.is_identity() { ElementClassification::Identity } else { ElementClassification::Parabolic };
    }
    if tr.is_real() && tr.x.abs() < 2 {
        let mut order = 1;
        let mut p = *t;
        while !p.is_identity() {
            p = p * *t;
            order += 1;
            assert!(order <= 12, "elliptic element of unexpected order");
        }
        // ±M give θ and π - θ; report the one with cos θ ≥ 0
        let x = tr.x.abs() as f64 / 2.0;
        let rotation = Complex64::new(x, (1.0 - x * x).sqrt());
        let cuspidal = t.c.is_zero() || disc.sqrt_exact().is_some();
        return ElementClassification::Elliptic { order, cuspidal, rotation };
    }
    let a = dominant_eigenvalue(t);
    ElementClassification::Loxodromic { a, norm: a.norm_sqr(), hyperbolic: tr.is_real() }
}

/// Whether an elliptic element fixes a cusp, i.e. both fixed points lie in
/// `ℙ¹(K)`. For class number one this is exactly the cusp set.
pub fn is_cuspidal(t: &GroupElement) -> Result<bool> {
    match classify(t) {
        ElementClassification::Elliptic { cuspidal, .. } => Ok(cuspidal),
        _ => Err(Error::NotElliptic),
    }
}

/// The two fixed points of `t` on the boundary (`None` for `∞`), the
/// attracting one first for loxodromic elements.
pub fn fixed_points(t: &GroupElement) -> (Option<Complex64>, Option<Complex64>) {
    let (a, b, c, d) = (t.a.to_complex(), t.b.to_complex(), t.c.to_complex(), t.d.to_complex());
    let lam = dominant_eigenvalue(t);
    let mu = lam.inv();
    // eigenvector (λ - d, c) for c ≠ 0 gives the fixed point (λ - d)/c
    if c.norm() > 0.0 {
        (Some((lam - d) / c), Some((mu - d) / c))
    } else {
        // upper triangular: fixed points ∞ and b/(d - a)
        let finite = if (d - a).norm() > 0.0 { Some(b / (d - a)) } else { None };
        if (a - lam).norm() < (d - lam).norm() {
            (None, finite)
        } else {
            (finite, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::Ring;

    fn el(ring: Ring, v: [i64; 8]) -> GroupElement {
        GroupElement::from_coords(ring, v).unwrap()
    }

    #[test]
    fn basic_kinds() {
        let g = Ring::Gauss;
        assert_eq!(classify(&el(g, [1, 0, 1, 0, 0, 0, 1, 0])), ElementClassification::Parabolic);
        assert_eq!(classify(&GroupElement::identity(g)), ElementClassification::Identity);
        match classify(&el(g, [0, 0, -1, 0, 1, 0, 0, 0])) {
            ElementClassification::Elliptic { order, cuspidal, .. } => {
                assert_eq!(order, 2);
                assert!(cuspidal);
            }
            other => panic!("{other:?}"),
        }
        match classify(&el(g, [2, 0, 1, 0, 1, 0, 1, 0])) {
            ElementClassification::Loxodromic { a, norm, hyperbolic } => {
                let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
                assert!((a.re - phi2).abs() < 1e-12 && a.im.abs() < 1e-15);
                assert!((norm - phi2 * phi2).abs() < 1e-11);
                assert!(hyperbolic);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_elliptic_is_cuspidal() {
        let g = Ring::Gauss;
        assert_eq!(is_cuspidal(&el(g, [0, 1, 0, 0, 0, 0, 0, -1])).unwrap(), true);
    }

    #[test]
    fn order_three_in_picard_is_not_cuspidal() {
        // [[1, -1], [1, 0]] has trace 1 and discriminant -3, not a square in ℚ(i)
        let g = Ring::Gauss;
        let t = el(g, [1, 0, -1, 0, 1, 0, 0, 0]);
        assert_eq!(is_cuspidal(&t).unwrap(), false);
        // in ℚ(ω) the same matrix fixes a cusp
        let t = el(Ring::Eisenstein, [1, 0, -1, 0, 1, 0, 0, 0]);
        assert_eq!(is_cuspidal(&t).unwrap(), true);
    }
}
