//! Centralizers of loxodromic and elliptic elements.
//!
//! Every element commuting with `T` (not parabolic, not the identity) has the
//! form `xI + yM` with `M = (T - aI)/g`, `g = gcd(b, c, d - a)`, and the
//! determinant condition `x² + tr(M)xy + det(M)y² = 1` is a norm equation
//! solved over `𝒪` by bounding `|y|`.

use super::classify::dominant_eigenvalue;
use super::element::GroupElement;
use super::ring::RingElement;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// The centralizer `⟨T0⟩ × ℰ` of an element with an axis.
#[derive(Clone, Debug)]
pub struct Centralizer {
    /// Primitive loxodromic generator, attracting on the reference eigenvector.
    pub primitive: GroupElement,
    /// Eigenvalue of `primitive` on the reference eigenvector, `|a0| > 1`.
    pub a0: Complex64,
    /// Rotations about the axis, identity included.
    pub torsion: Vec<GroupElement>,
    /// Generator of the rotations.
    pub torsion_generator: GroupElement,
    /// Eigenvalue of the torsion generator on the reference eigenvector.
    pub zeta: Complex64,
}

impl Centralizer {
    pub fn norm(&self) -> f64 {
        self.a0.norm_sqr()
    }

    pub fn torsion_order(&self) -> u32 {
        self.torsion.len() as u32
    }
}

/// Eigenvector of `t` for `lambda`.
fn eigenvector(t: &GroupElement, lambda: Complex64) -> (Complex64, Complex64) {
    let (a, b, c, d) = (t.a.to_complex(), t.b.to_complex(), t.c.to_complex(), t.d.to_complex());
    let v1 = (b, lambda - a);
    let v2 = (lambda - d, c);
    let n = |v: (Complex64, Complex64)| v.0.norm_sqr() + v.1.norm_sqr();
    if n(v1) >= n(v2) {
        v1
    } else {
        v2
    }
}

fn eigenvalue_on(x: &GroupElement, v: (Complex64, Complex64)) -> Complex64 {
    let (a, b, c, d) = (x.a.to_complex(), x.b.to_complex(), x.c.to_complex(), x.d.to_complex());
    let w0 = a * v.0 + b * v.1;
    let w1 = c * v.0 + d * v.1;
    if v.0.norm() >= v.1.norm() {
        w0 / v.0
    } else {
        w1 / v.1
    }
}

struct Solution {
    el: GroupElement,
    lambda: Complex64,
}

fn solve_norm_equation(t: &GroupElement, v: (Complex64, Complex64), ymax: f64) -> Vec<Solution> {
    let ring = t.ring();
    let g = t.b.gcd(&t.c).gcd(&(t.d - t.a));
    let bp = t.b.exact_div(&g).unwrap();
    let cp = t.c.exact_div(&g).unwrap();
    let trm = (t.d - t.a).exact_div(&g).unwrap();
    let detm = -(bp * cp);
    let delta = trm * trm - detm.scale(4);
    let two = ring.int(2);
    let mut out = Vec::new();
    let origin = Complex64::new(0.0, 0.0);
    for y in ring.elements_in_disc(origin, ymax) {
        let disc = y * y * delta + ring.int(4);
        let Some(r) = disc.sqrt_exact() else { continue };
        let signs: &[i64] = if r.is_zero() { &[1] } else { &[1, -1] };
        for &sg in signs {
            let num = -(trm * y) + r.scale(sg);
            let Some(x) = num.exact_div(&two) else { continue };
            let el = GroupElement::new(x, y * bp, y * cp, x + y * trm);
            let Ok(el) = el else { continue };
            out.push(Solution { el, lambda: eigenvalue_on(&el, v) });
        }
    }
    out
}

fn is_rotation(l: Complex64) -> bool {
    (l.norm().ln()).abs() < 1e-9
}

/// Compute the centralizer of a loxodromic or elliptic element.
///
/// The reference eigenvector is the one for [`dominant_eigenvalue`]. For a
/// loxodromic `t` the search radius is chosen so that `t` itself is a
/// solution; for an elliptic `t` the radius doubles until a loxodromic
/// solution appears.
pub fn centralizer(t: &GroupElement) -> Result<Centralizer> {
    let lam = dominant_eigenvalue(t);
    let v = eigenvector(t, lam);
    let g = t.b.gcd(&t.c).gcd(&(t.d - t.a));
    let delta_m = {
        let tr = t.trace().to_complex();
        // disc(M) = (tr² - 4)/g²
        ((tr * tr - 4.0) / (g.to_complex() * g.to_complex())).norm()
    };
    let loxodromic = !is_rotation(lam);
    let mut ymax = if loxodromic { (lam.norm() + 1.0) / delta_m.sqrt() + 1e-6 } else { 2.0 };
    loop {
        let sols = solve_norm_equation(t, v, ymax);
        let mut torsion: Vec<(GroupElement, Complex64)> = Vec::new();
        let mut best: Option<(GroupElement, Complex64)> = None;
        for s in sols {
            if is_rotation(s.lambda) {
                if !torsion.iter().any(|(e, _)| *e == s.el) {
                    torsion.push((s.el, s.lambda));
                }
                continue;
            }
            let (el, l) = if s.lambda.norm() > 1.0 { (s.el, s.lambda) } else { (s.el.inverse(), s.lambda.inv()) };
            let better = match &best {
                None => true,
                Some((bel, bl)) => {
                    let d = l.norm() - bl.norm();
                    d < -1e-9 * bl.norm() || (d.abs() <= 1e-9 * bl.norm() && el.coords() < bel.coords())
                }
            };
            if better {
                best = Some((el, l));
            }
        }
        if let Some((primitive, a0)) = best {
            torsion.sort_by(|x, y| x.0.cmp(&y.0));
            let m = torsion.len();
            let target = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / m as f64);
            let (torsion_generator, zeta) = torsion
                .iter()
                .copied()
                .min_by(|x, y| {
                    let dx = (x.1 * x.1 - target).norm();
                    let dy = (y.1 * y.1 - target).norm();
                    dx.partial_cmp(&dy).unwrap().then(x.0.cmp(&y.0))
                })
                .expect("identity is always a solution");
            return Ok(Centralizer {
                primitive,
                a0,
                torsion: torsion.into_iter().map(|x| x.0).collect(),
                torsion_generator,
                zeta,
            });
        }
        if ymax > 1024.0 {
            return Err(Error::BoundInsufficient(format!("no loxodromic element found on the axis of {t}")));
        }
        ymax *= 2.0;
    }
}

/// `|1 - ε²|²` for a unit `ε`, exactly.
pub fn one_minus_square_norm(eps: &RingElement) -> i64 {
    (eps.ring.one() - *eps * *eps).norm()
}
