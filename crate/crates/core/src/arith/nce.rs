//! Conjugacy classes of elliptic elements that fix no cusp.

use super::axis::Registry;
use super::centralizer::centralizer;
use super::classify::{classify, ElementClassification};
use super::element::GroupElement;
use super::group::Group;
use crate::error::Result;
use serde::Serialize;

/// A class of non-cuspidal elliptic elements with the data entering the
/// trace formula.
#[derive(Clone, Debug, Serialize)]
pub struct NonCuspidalEllipticClass {
    #[serde(serialize_with = "ser_el")]
    pub representative: GroupElement,
    /// Order of the element in `PSL`.
    pub order: u32,
    /// Order of the group of rotations about the axis.
    pub rotation_group_order: u32,
    /// `sin²(θ/2)` for the rotation angle `θ`, i.e. `1 - tr²/4`.
    pub sin_sq: f64,
    /// Primitive loxodromic element on the same axis.
    #[serde(serialize_with = "ser_el")]
    pub t0: GroupElement,
    /// `N(T0)`.
    pub n_t0: f64,
}

fn ser_el<S: serde::Serializer>(g: &GroupElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

/// Classes of non-cuspidal elliptic elements met in the enumeration.
pub fn non_cuspidal_elliptic_classes(group: Group, elements: &[GroupElement]) -> Result<Vec<NonCuspidalEllipticClass>> {
    let stab = group.stabilizer_data();
    let mut reg = Registry::new();
    for r in elements {
        let ElementClassification::Elliptic { cuspidal: false, .. } = classify(r) else { continue };
        let c = centralizer(r)?;
        reg.register(&stab, &c.primitive, &[*r], c.norm().ln());
    }
    let mut out = Vec::new();
    for rep in reg.class_representatives() {
        let c = centralizer(&rep)?;
        let ElementClassification::Elliptic { order, .. } = classify(&rep) else { unreachable!() };
        let t = rep.trace().to_complex().re;
        out.push(NonCuspidalEllipticClass {
            representative: rep,
            order,
            rotation_group_order: c.torsion_order(),
            sin_sq: 1.0 - t * t / 4.0,
            t0: c.primitive,
            n_t0: c.norm(),
        });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::enumerate::enumerate_elements;

    #[test]
    fn picard_has_order_three_classes_only() {
        let els = enumerate_elements(Group::Picard.ring(), 4).unwrap();
        let cl = non_cuspidal_elliptic_classes(Group::Picard, &els).unwrap();
        assert!(!cl.is_empty());
        for c in &cl {
            assert_eq!(c.order, 3);
            assert!((c.sin_sq - 0.75).abs() < 1e-15);
            assert!(c.n_t0 > 1.0);
        }
    }
}
