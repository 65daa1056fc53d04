//! Walking a geodesic axis through the fundamental region.
//!
//! Points of the axis of `T` are reduced into the standard region; the
//! reducing elements conjugate `T` (and its centralizer) to elements whose
//! axes cross the region. These finitely many reduced conjugates identify the
//! conjugacy class of the axis.

use super::element::GroupElement;
use super::classify::fixed_points;
use super::group::StabilizerData;
use super::reduce::reduce_point;
use crate::geometry::Point3;
use num_complex::Complex64;

/// Canonical key of a set of elements up to conjugation by the torsion of
/// `Γ∞`: the smallest coordinate vector over the conjugates.
pub fn key_of_set(set: &[GroupElement], stab: &StabilizerData) -> [i64; 8] {
    let tors = stab.torsion();
    let mut best: Option<[i64; 8]> = None;
    for x in set {
        for e in &tors {
            let c = x.conj_by(e).coords();
            if best.map_or(true, |b| c < b) {
                best = Some(c);
            }
        }
    }
    best.expect("nonempty set")
}

/// The point at signed arclength `sigma` from the top of the geodesic with
/// endpoints `p` and `q`.
pub fn axis_point(p: Complex64, q: Complex64, sigma: f64) -> Point3 {
    let m = (p + q) / 2.0;
    let rho = (q - p).norm() / 2.0;
    let u = (q - p) / (2.0 * rho);
    Point3 { z: m + u * (rho * sigma.tanh()), r: rho / sigma.cosh() }
}

/// Reducing elements met when walking one period of the axis.
///
/// `period` is the translation length of the primitive element along the
/// axis, `step` the arclength spacing of samples.
pub fn walk(stab: &StabilizerData, p: Complex64, q: Complex64, period: f64, step: f64) -> Vec<GroupElement> {
    let ring = stab.r.ring();
    let n = (period / step).ceil().max(1.0) as usize;
    let mut out: Vec<GroupElement> = Vec::new();
    for i in 0..n {
        let sigma = period * i as f64 / n as f64;
        let (g, _) = reduce_point(ring, axis_point(p, q, sigma));
        if out.last() != Some(&g) {
            out.push(g);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Reducing element of the top point of the axis.
pub fn reduce_top(stab: &StabilizerData, p: Complex64, q: Complex64) -> GroupElement {
    reduce_point(stab.r.ring(), axis_point(p, q, 0.0)).0
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new() -> Self {
        UnionFind(Vec::new())
    }
    pub fn push(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
    pub fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let n = self.0[j];
            self.0[j] = r;
            j = n;
        }
        r
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// `(attracting, repelling)` fixed points of an element moving `∞`.
pub fn axis_of(t: &GroupElement) -> (Complex64, Complex64) {
    match fixed_points(t) {
        (Some(p), Some(q)) => (p, q),
        _ => unreachable!("elements with an axis in these groups move ∞"),
    }
}

fn conj_set(set: &[GroupElement], g: &GroupElement) -> Vec<GroupElement> {
    set.iter().map(|x| x.conj_by(g)).collect()
}

/// Walk step used by the class registries.
pub const WALK_STEP: f64 = 0.02;

/// Classes of axes identified through shared reduced conjugates.
pub(crate) struct Registry {
    keys: std::collections::HashMap<[i64; 8], usize>,
    pub uf: UnionFind,
    /// First element of the registered set, conjugated into the region.
    pub reps: Vec<GroupElement>,
}

impl Registry {
    pub fn new() -> Self {
        Registry { keys: std::collections::HashMap::new(), uf: UnionFind::new(), reps: Vec::new() }
    }

    /// Register the class of the axis of `primitive` (with centralizer set
    /// `set`), walking its axis if its key is new. Returns the class id.
    pub fn register(&mut self, stab: &StabilizerData, primitive: &GroupElement, set: &[GroupElement], period: f64) -> usize {
        let (att, rep) = axis_of(primitive);
        let g = reduce_top(stab, rep, att);
        let key = key_of_set(&conj_set(set, &g), stab);
        if let Some(&id) = self.keys.get(&key) {
            return self.uf.find(id);
        }
        let id = self.uf.push();
        self.reps.push(set[0].conj_by(&g));
        for g in walk(stab, rep, att, period, WALK_STEP) {
            let k = key_of_set(&conj_set(set, &g), stab);
            match self.keys.get(&k) {
                Some(&other) => self.uf.union(id, other),
                None => {
                    self.keys.insert(k, id);
                }
            }
        }
        self.keys.insert(key, id);
        self.uf.find(id)
    }
}


impl Registry {
    /// Class ids (union-find roots) in increasing order.
    pub fn roots(&mut self) -> Vec<usize> {
        let mut roots: Vec<usize> = (0..self.reps.len()).map(|i| self.uf.find(i)).collect();
        roots.sort();
        roots.dedup();
        roots
    }

    /// Smallest representative of each class.
    pub fn class_representatives(&mut self) -> Vec<GroupElement> {
        let roots = self.roots();
        roots
            .iter()
            .map(|&r| (0..self.reps.len()).filter(|&i| self.uf.find(i) == r).map(|i| self.reps[i]).min().unwrap())
            .collect()
    }
}
