//! Reduction of points of `ℍ³` into the standard fundamental region.

use super::element::GroupElement;
use super::ring::Ring;
use crate::geometry::{apply, Point3};

/// Reduce `p` to the region `{z in the Voronoi cell of 𝒪, |z|² + r² ≥ 1}`.
///
/// Returns `γ` with `γp` reduced, together with `γp`. The region is a union
/// of translates of a fundamental domain under the torsion of `Γ∞`.
pub fn reduce_point(ring: Ring, p: Point3) -> (GroupElement, Point3) {
    let inv = GroupElement::new(ring.zero(), -ring.one(), ring.one(), ring.zero()).unwrap();
    let inv_m = inv.to_moebius();
    let mut gamma = GroupElement::identity(ring);
    let mut q = p;
    for _ in 0..10_000 {
        let n = ring.nearest(q.z);
        if !n.is_zero() {
            let t = GroupElement::new(ring.one(), -n, ring.zero(), ring.one()).unwrap();
            gamma = t * gamma;
            q = Point3 { z: q.z - n.to_complex(), r: q.r };
        }
        if q.z.norm_sqr() + q.r * q.r < 1.0 - 1e-13 {
            gamma = inv * gamma;
            q = apply(&inv_m, q);
        } else {
            return (gamma, q);
        }
    }
    panic!("point reduction did not terminate for {p:?}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn reduced_points_lie_in_region() {
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            for (x, y, r) in [(3.3, -1.7, 0.01), (0.2, 0.1, 0.3), (-5.0, 2.0, 0.002)] {
                let p = Point3 { z: Complex64::new(x, y), r };
                let (g, q) = reduce_point(ring, p);
                let image = apply(&g.to_moebius(), p);
                assert!((image.z - q.z).norm() < 1e-9 && (image.r - q.r).abs() < 1e-9);
                assert!(q.z.norm_sqr() + q.r * q.r >= 1.0 - 1e-12);
                assert_eq!(ring.nearest(q.z), ring.zero());
            }
        }
    }
}
