//! Enumeration of group elements of bounded entry norm.

use super::element::GroupElement;
use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 5_000_000;

/// All elements of `PSL(2, 𝒪)` whose entries have norm at most `height`,
/// each once, sorted by their integer coordinates.
pub fn enumerate_elements(ring: Ring, height: i64) -> Result<Vec<GroupElement>> {
    enumerate_elements_capped(ring, height, DEFAULT_ELEMENT_CAP)
}

pub fn enumerate_elements_capped(ring: Ring, height: i64, cap: usize) -> Result<Vec<GroupElement>> {
    if height < 1 {
        return Err(Error::InvalidParameter(format!("height must be at least 1, got {height}")));
    }
    let pts = ring.elements_with_norm_at_most(height);
    // rough size estimate: pairs (a, c) times the admissible translates
    let estimate: f64 = pts.len() as f64 * pts.len() as f64 * 0.6;
    if estimate > 4.0 * cap as f64 {
        return Err(Error::ElementCapExceeded { height, cap });
    }
    let hf = height as f64;
    let mut out: Vec<GroupElement> = pts
        .par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for c in &pts {
                if a.is_zero() && c.is_zero() {
                    continue;
                }
                solve_row(ring, *a, *c, height, hf, &mut local);
            }
            local
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    if out.len() > cap {
        return Err(Error::ElementCapExceeded { height, cap });
    }
    Ok(out)
}

/// Push every element with first column `(a, c)` and entry norms ≤ height.
fn solve_row(ring: Ring, a: RingElement, c: RingElement, height: i64, hf: f64, out: &mut Vec<GroupElement>) {
    let (g, s, t) = a.xgcd(&c);
    if !g.is_unit() {
        return;
    }
    let ginv = g.conj();
    let d0 = s * ginv;
    let b0 = -(t * ginv);
    // (b, d) = (b0 + k a, d0 + k c)
    let (pivot, base) = if !a.is_zero() { (a, b0) } else { (c, d0) };
    let center = -(base.to_complex() / pivot.to_complex());
    let radius = (hf / pivot.norm() as f64).sqrt();
    for k in ring.elements_in_disc(center, radius) {
        let b = b0 + k * a;
        let d = d0 + k * c;
        if b.norm() <= height && d.norm() <= height {
            out.push(GroupElement::from_entries_unchecked(a, b, c, d));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(ring: Ring, h: i64) -> usize {
        let pts = ring.elements_with_norm_at_most(h);
        let mut set = std::collections::HashSet::new();
        for a in &pts {
            for b in &pts {
                for c in &pts {
                    for d in &pts {
                        if *a * *d - *b * *c == ring.one() {
                            set.insert(GroupElement::from_entries_unchecked(*a, *b, *c, *d));
                        }
                    }
                }
            }
        }
        set.len()
    }

    #[test]
    fn height_one_contents() {
        let g = Ring::Gauss;
        let els = enumerate_elements(g, 1).unwrap();
        let t = GroupElement::from_coords(g, [1, 0, 1, 0, 0, 0, 1, 0]).unwrap();
        let s = GroupElement::from_coords(g, [0, 0, -1, 0, 1, 0, 0, 0]).unwrap();
        assert!(els.contains(&t) && els.contains(&s));
        let big = GroupElement::from_coords(g, [2, 0, 1, 0, 1, 0, 1, 0]).unwrap();
        assert!(!els.contains(&big));
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn matches_brute_force() {
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            for h in [1, 2, 3] {
                let n = enumerate_elements(ring, h).unwrap().len();
                assert_eq!(n, brute_force(ring, h), "{ring:?} height {h}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_elements_capped(Ring::Gauss, 10, 50),
            Err(Error::ElementCapExceeded { .. })
        ));
    }
}
