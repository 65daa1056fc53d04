//! Primitive loxodromic conjugacy classes.

use super::axis::Registry;
use super::centralizer::{centralizer, Centralizer};
use super::classify::{classify, ElementClassification};
use super::element::GroupElement;
use super::group::Group;
use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// A primitive loxodromic conjugacy class: `T0` with its centralizer
/// `⟨T0⟩ × ℰ`. `T0` and `T0⁻¹` appear separately unless they are conjugate.
#[derive(Clone, Debug, Serialize)]
pub struct PrimitiveLoxodromicClass {
    /// Primitive generator.
    #[serde(serialize_with = "ser_el")]
    pub t0: GroupElement,
    /// Eigenvalue of `T0` at its attracting fixed point, `|a0| > 1`.
    pub a0: Complex64,
    /// `N(T0) = |a0|²`.
    pub n0: f64,
    /// Number of rotations about the axis (identity included).
    pub torsion_order: u32,
    /// Generator `E_T` of the rotations.
    #[serde(serialize_with = "ser_el")]
    pub torsion_generator: GroupElement,
    /// Eigenvalue of `E_T` at the attracting fixed point of `T0`; a
    /// primitive `2m`-th root of unity up to sign.
    pub zeta0: Complex64,
    /// `(attracting, repelling)` fixed points of `T0`.
    pub axis: (Complex64, Complex64),
    pub hyperbolic: bool,
    /// Index of the centralizer class; `T0` and `T0⁻¹` share it.
    pub reduced_class: usize,
    /// Whether `T0` is conjugate to `T0⁻¹`.
    pub self_inverse: bool,
}

fn ser_el<S: serde::Serializer>(g: &GroupElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

/// Two classes with equal invariants that were not shown to be conjugate.
#[derive(Clone, Debug, Serialize)]
pub struct Ambiguity {
    pub first: usize,
    pub second: usize,
    pub n0: f64,
}

/// Result of the class reduction.
#[derive(Clone, Debug, Serialize)]
pub struct LoxodromicClassReport {
    pub classes: Vec<PrimitiveLoxodromicClass>,
    pub ambiguities: Vec<Ambiguity>,
    pub norm_bound: f64,
    /// Enumerated loxodromic elements with `N(T) ≤ norm_bound`.
    pub elements_examined: usize,
}

fn centralizer_set(c: &Centralizer) -> Vec<GroupElement> {
    let inv = c.primitive.inverse();
    let mut v = vec![c.primitive];
    for e in &c.torsion {
        v.push(c.primitive * *e);
        v.push(inv * *e);
    }
    v
}

fn oriented_set(c: &Centralizer) -> Vec<GroupElement> {
    c.torsion.iter().map(|e| c.primitive * *e).collect()
}

fn class_of(c: &Centralizer, reduced_class: usize, self_inverse: bool) -> PrimitiveLoxodromicClass {
    let (att, repel) = super::axis::axis_of(&c.primitive);
    PrimitiveLoxodromicClass {
        t0: c.primitive,
        a0: c.a0,
        n0: c.norm(),
        torsion_order: c.torsion_order(),
        torsion_generator: c.torsion_generator,
        zeta0: c.zeta,
        axis: (att, repel),
        hyperbolic: c.primitive.trace().is_real(),
        reduced_class,
        self_inverse,
    }
}

/// Primitive loxodromic conjugacy classes with `N(T0) ≤ norm_bound` whose
/// axes are met by `elements`, both orientations of each axis included.
pub fn primitive_loxodromic_classes(group: Group, norm_bound: f64, elements: &[GroupElement]) -> Result<LoxodromicClassReport> {
    if !(norm_bound > 1.0) {
        return Err(Error::InvalidParameter(format!("norm bound must exceed 1, got {norm_bound}")));
    }
    let stab = group.stabilizer_data();
    let mut reg = Registry::new();
    let mut examined = 0;
    for t in elements {
        let ElementClassification::Loxodromic { norm, .. } = classify(t) else { continue };
        if norm > norm_bound * (1.0 + 1e-12) {
            continue;
        }
        examined += 1;
        let c = centralizer(t)?;
        reg.register(&stab, &c.primitive, &centralizer_set(&c), c.norm().ln());
    }
    let mut classes = Vec::new();
    for (k, rep) in reg.class_representatives().into_iter().enumerate() {
        let c = centralizer(&rep)?;
        let ci = centralizer(&c.primitive.inverse())?;
        // T0 and T0⁻¹ are separate classes unless some element reverses the axis
        let mut oriented = Registry::new();
        let period = c.norm().ln();
        let a = oriented.register(&stab, &c.primitive, &oriented_set(&c), period);
        let b = oriented.register(&stab, &ci.primitive, &oriented_set(&ci), period);
        let self_inverse = oriented.uf.find(a) == oriented.uf.find(b);
        classes.push(class_of(&c, k, self_inverse));
        if !self_inverse {
            classes.push(class_of(&ci, k, false));
        }
    }
    classes.sort_by(|a, b| a.n0.partial_cmp(&b.n0).unwrap().then(a.t0.cmp(&b.t0)));
    let mut renumber = std::collections::HashMap::new();
    for c in classes.iter_mut() {
        let next = renumber.len();
        c.reduced_class = *renumber.entry(c.reduced_class).or_insert(next);
    }
    let ambiguities = find_ambiguities(&classes);
    Ok(LoxodromicClassReport { classes, ambiguities, norm_bound, elements_examined: examined })
}

/// Elements `T` with `c ≠ 0`, `|tr T| ≤ tr_max` and `keep(T)`, including a
/// conjugate of every such element with an axis whose `M` (below) has
/// `‖M‖² ≤ m_sq`.
///
/// Every axis meets the region `{z in the Voronoi cell, |z|² + r² ≥ 1}`. If
/// `P = (z, r)` is such a point on the axis of `T`, then `T = A M A⁻¹` with
/// `A = [[√r, z/√r], [0, 1/√r]]`. Then `c = m21/r`, so `|c| ≤ ‖M‖/r_min`, and
/// `|a|, |d| ≤ ‖M‖ + ρ|c|` with `ρ` the cell's circumradius and
/// `r_min² = 1 - ρ²`.
fn axis_candidates(group: Group, m_sq: f64, tr_max: f64, keep: impl Fn(&GroupElement) -> bool + Sync) -> Vec<GroupElement> {
    let ring = group.ring();
    let rho2: f64 = match ring {
        Ring::Gauss => 0.5,
        Ring::Eisenstein => 1.0 / 3.0,
    };
    let slack = 1.0 + 1e-9;
    let m = (m_sq * slack).sqrt();
    let c_max = m / (1.0 - rho2).sqrt();
    let origin = Complex64::new(0.0, 0.0);
    let traces = ring.elements_in_disc(origin, tr_max * slack);
    let cs: Vec<RingElement> = ring.elements_in_disc(origin, c_max).into_iter().filter(|c| !c.is_zero()).collect();
    let mut out: Vec<GroupElement> = cs
        .par_iter()
        .flat_map_iter(|&c| {
            let ad_max = (m + rho2.sqrt() * c.to_complex().norm()) * slack;
            let ad_max2 = ad_max * ad_max;
            let mut v = Vec::new();
            for a in ring.elements_in_disc(origin, ad_max) {
                for &tr in &traces {
                    let d = tr - a;
                    if d.to_complex().norm_sqr() > ad_max2 {
                        continue;
                    }
                    let Some(b) = (a * d - ring.one()).exact_div(&c) else { continue };
                    let t = GroupElement::new(a, b, c, d).expect("det 1 by construction");
                    if keep(&t) {
                        v.push(t);
                    }
                }
            }
            v
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Loxodromic elements with `N(T) ≤ norm_bound` that include a conjugate of
/// every such element. On the axis `‖M‖² = N + 1/N`.
pub fn loxodromic_candidates(group: Group, norm_bound: f64) -> Result<Vec<GroupElement>> {
    if !(norm_bound > 1.0) {
        return Err(Error::InvalidParameter(format!("norm bound must exceed 1, got {norm_bound}")));
    }
    let tr_max = norm_bound.sqrt() + 1.0 / norm_bound.sqrt();
    Ok(axis_candidates(group, norm_bound + 1.0 / norm_bound, tr_max, |t| {
        matches!(classify(t), ElementClassification::Loxodromic { norm, .. } if norm <= norm_bound * (1.0 + 1e-12))
    }))
}

/// Elliptic elements fixing no cusp, including a conjugate of every such
/// element. On the axis `M` is a rotation, `‖M‖² = 2`.
pub fn non_cuspidal_elliptic_candidates(group: Group) -> Vec<GroupElement> {
    axis_candidates(group, 2.0, 2.0, |t| matches!(classify(t), ElementClassification::Elliptic { cuspidal: false, .. }))
}

/// Primitive loxodromic classes with `N(T0) ≤ norm_bound`, complete by
/// construction (see [`loxodromic_candidates`]).
pub fn complete_loxodromic_classes(group: Group, norm_bound: f64) -> Result<LoxodromicClassReport> {
    let candidates = loxodromic_candidates(group, norm_bound)?;
    primitive_loxodromic_classes(group, norm_bound, &candidates)
}

/// Invariant of a class: traces of the centralizer set up to sign and
/// complex conjugation, with the norm.
fn invariant(c: &PrimitiveLoxodromicClass) -> (i64, Vec<(i64, i64)>) {
    let mut tr: Vec<(i64, i64)> = Vec::new();
    for k in 0..c.torsion_order as i64 {
        let x = c.t0 * c.torsion_generator.pow(k);
        let t = x.trace();
        for v in [t, -t, t.conj(), -t.conj()] {
            tr.push((v.x, v.y));
        }
    }
    tr.sort();
    tr.dedup();
    ((c.n0 * 1e6).round() as i64, tr)
}

fn find_ambiguities(classes: &[PrimitiveLoxodromicClass]) -> Vec<Ambiguity> {
    let inv: Vec<_> = classes.iter().map(invariant).collect();
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if inv[i] == inv[j] && classes[i].reduced_class != classes[j].reduced_class {
                out.push(Ambiguity { first: i, second: j, n0: classes[i].n0 });
            }
        }
    }
    out
}
