//! Character sums over rank-two lattices `Λ = ℤ ⊕ ℤτ`.
//!
//! `Z(x, Λ, ψ) = Σ ψ(μ)/|μ|²` over `0 < |μ|² ≤ x`. For nontrivial `ψ` the
//! partial sums converge to `L(Λ, ψ)` with error `O(x^{-1/2})`; for trivial `ψ`
//! they grow like `(π/|Λ|)(log x + κ_Λ)`. The closed form through Siegel
//! functions gives an independent value of `L(Λ, ψ)`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The lattice `ℤ ⊕ ℤτ` with `Im τ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub tau: Complex64,
    /// Area of a fundamental cell, `Im τ`.
    pub area: f64,
}

impl Lattice {
    pub fn new(tau: Complex64) -> Result<Lattice> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::InvalidParameter(format!("Im tau must be positive, got {tau}")));
        }
        Ok(Lattice { tau, area: tau.im })
    }

    /// `ℤ ⊕ ℤi`.
    pub fn gaussian() -> Lattice {
        Lattice { tau: Complex64::new(0.0, 1.0), area: 1.0 }
    }

    /// `ℤ ⊕ ℤω`.
    pub fn eisenstein() -> Lattice {
        let t = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        Lattice { tau: t, area: t.im }
    }

    /// `ℤ ⊕ ℤ(1 + ω)`, the same point set as `ℤ ⊕ ℤω` with another basis.
    pub fn one_plus_omega() -> Lattice {
        let t = Complex64::new(0.5, 3f64.sqrt() / 2.0);
        Lattice { tau: t, area: t.im }
    }

    /// `|m + nτ|² = m² + B·mn + A·n²` with integer `A, B` when available.
    fn integer_form(&self) -> Option<(i64, i64)> {
        let a = self.tau.norm_sqr();
        let b = 2.0 * self.tau.re;
        let (ar, br) = (a.round(), b.round());
        if (a - ar).abs() < 1e-12 && (b - br).abs() < 1e-12 {
            Some((ar as i64, br as i64))
        } else {
            None
        }
    }

    /// `|m + nτ|²`.
    pub fn norm(&self, m: i64, n: i64) -> f64 {
        match self.integer_form() {
            Some((a, b)) => (m * m + b * m * n + a * n * n) as f64,
            None => (Complex64::new(m as f64, 0.0) + self.tau * n as f64).norm_sqr(),
        }
    }
}

/// A character `ψ(m + nτ) = e^{2πi(mu + nv)}` of `Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeCharacter {
    pub u: f64,
    pub v: f64,
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl LatticeCharacter {
    /// The character with parameters reduced into `[0, 1)`.
    pub fn new(u: f64, v: f64) -> LatticeCharacter {
        LatticeCharacter { u: frac(u), v: frac(v) }
    }

    /// `(un/ud, vn/vd)` reduced exactly.
    pub fn from_fractions(un: i64, ud: i64, vn: i64, vd: i64) -> LatticeCharacter {
        LatticeCharacter { u: un.rem_euclid(ud) as f64 / ud as f64, v: vn.rem_euclid(vd) as f64 / vd as f64 }
    }

    pub fn trivial() -> LatticeCharacter {
        LatticeCharacter { u: 0.0, v: 0.0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.u == 0.0 && self.v == 0.0
    }

    pub fn conj(&self) -> LatticeCharacter {
        LatticeCharacter::new(-self.u, -self.v)
    }

    pub fn eval(&self, m: i64, n: i64) -> Complex64 {
        // reduce the phase before scaling to keep it accurate
        let ph = frac(m as f64 * self.u + n as f64 * self.v);
        Complex64::from_polar(1.0, 2.0 * PI * ph)
    }
}

/// Lattice points `0 < |m + nτ|² ≤ x_max`, sorted by `(|μ|², m, n)`.
#[derive(Clone, Debug)]
pub struct LatticePoints {
    pub lattice: Lattice,
    pub x_max: f64,
    pts: Vec<(f64, i32, i32)>,
}

impl LatticePoints {
    pub fn new(lattice: Lattice, x_max: f64) -> LatticePoints {
        let y = lattice.tau.im;
        let nmax = (x_max.sqrt() / y).floor() as i64 + 1;
        let sx = x_max.sqrt();
        let mut pts = Vec::with_capacity((PI * x_max / lattice.area * 1.05) as usize + 16);
        for n in -nmax..=nmax {
            let c = -(n as f64) * lattice.tau.re;
            let (m0, m1) = ((c - sx).floor() as i64 - 1, (c + sx).ceil() as i64 + 1);
            for m in m0..=m1 {
                if m == 0 && n == 0 {
                    continue;
                }
                let q = lattice.norm(m, n);
                if q <= x_max {
                    pts.push((q, m as i32, n as i32));
                }
            }
        }
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        LatticePoints { lattice, x_max, pts }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, i64, i64)> + '_ {
        self.pts.iter().map(|&(q, m, n)| (q, m as i64, n as i64))
    }

    /// Smallest nonzero `|μ|²`.
    pub fn min_norm(&self) -> f64 {
        self.pts.first().map_or(f64::INFINITY, |p| p.0)
    }

    /// `Z(x, Λ, ψ)` for `x ≤ x_max`.
    pub fn partial_sum(&self, x: f64, psi: &LatticeCharacter) -> Complex64 {
        let end = self.pts.partition_point(|p| p.0 <= x);
        self.pts[..end].iter().map(|&(q, m, n)| psi.eval(m as i64, n as i64) / q).sum()
    }
}

/// `Z(x, Λ, ψ)` directly.
pub fn partial_sum_z(x: f64, lattice: &Lattice, psi: &LatticeCharacter) -> Complex64 {
    LatticePoints::new(*lattice, x).partial_sum(x, psi)
}

/// A value of `L(Λ, ψ)` with an error estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LValue {
    pub value: Complex64,
    pub error: f64,
}

/// Average of `Z(x)` for `x` uniform on `[x_max/10, x_max]`, plus samples of
/// `Z` at `k` geometric points of that window.
fn windowed(points: &LatticePoints, psi: &LatticeCharacter, x_max: f64, k: usize) -> (Complex64, Vec<(f64, Complex64)>) {
    let lo = x_max / 10.0;
    let span = x_max - lo;
    let samples: Vec<f64> = (0..k).map(|i| lo * 10f64.powf(i as f64 / (k - 1) as f64)).collect();
    let mut out = Vec::with_capacity(k);
    let mut si = 0;
    let mut z = Complex64::new(0.0, 0.0);
    let mut avg = Complex64::new(0.0, 0.0);
    for (q, m, n) in points.iter() {
        if q > x_max {
            break;
        }
        while si < k && samples[si] < q {
            out.push((samples[si], z));
            si += 1;
        }
        let t = psi.eval(m, n) / q;
        z += t;
        let w = if q <= lo { 1.0 } else { (x_max - q) / span };
        avg += t * w;
    }
    while si < k {
        out.push((samples[si], z));
        si += 1;
    }
    (avg, out)
}

/// `L(Λ, ψ)` by averaged partial sums over the last decade of `x`.
///
/// The error estimate is `C·x_max^{-1/2}` with `C` the largest observed
/// `|Z(x) - L|·√x` over the window.
pub fn l_value_direct(lattice: &Lattice, psi: &LatticeCharacter, x_max: f64) -> Result<LValue> {
    let points = LatticePoints::new(*lattice, x_max);
    l_value_direct_with(&points, psi, x_max)
}

/// As [`l_value_direct`], reusing precomputed points.
pub fn l_value_direct_with(points: &LatticePoints, psi: &LatticeCharacter, x_max: f64) -> Result<LValue> {
    if psi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    if x_max > points.x_max {
        return Err(Error::InvalidParameter("x_max exceeds the precomputed points".into()));
    }
    let (avg, samples) = windowed(points, psi, x_max, 200);
    let c = samples.iter().map(|(x, z)| (z - avg).norm() * x.sqrt()).fold(0.0, f64::max);
    Ok(LValue { value: avg, error: c / x_max.sqrt() })
}

/// Fit of `Z(x) ≈ (π/|Λ|)(log x + κ)` for the trivial character.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KappaFit {
    pub kappa: f64,
    /// Fitted coefficient of `log x`, expected `π/|Λ|`.
    pub slope: f64,
    pub error_band: f64,
}

/// The lattice Euler constant `κ_Λ`.
///
/// The value uses the window average of `Z(x) - (π/|Λ|) log x`; a least
/// squares fit `β + δ x^{-1/2}` over a geometric ladder supplies the error band
/// and is checked against the `x^{-1/2}` law.
pub fn kappa_lattice(lattice: &Lattice, x_max: f64) -> Result<KappaFit> {
    if x_max < 1e3 {
        return Err(Error::InvalidParameter(format!("x_max must be at least 1e3, got {x_max}")));
    }
    let points = LatticePoints::new(*lattice, x_max);
    let psi = LatticeCharacter::trivial();
    let c0 = PI / lattice.area;
    let (avg, samples) = windowed(&points, &psi, x_max, 60);
    let lo = x_max / 10.0;
    let mean_log = (x_max * x_max.ln() - x_max - lo * lo.ln() + lo) / (x_max - lo);
    let kappa = (avg.re - c0 * mean_log) / c0;

    // least squares of y = β + δ x^{-1/2} on a wider ladder
    let mut wide = Vec::new();
    for i in 0..80 {
        let x = x_max / 100.0 * 100f64.powf(i as f64 / 79.0);
        wide.push((x, points.partial_sum(x, &psi).re));
    }
    let rows: Vec<(f64, f64)> = wide.iter().map(|&(x, z)| (x.powf(-0.5), z - c0 * x.ln())).collect();
    let n = rows.len() as f64;
    let (sx, sy) = rows.iter().fold((0.0, 0.0), |a, r| (a.0 + r.0, a.1 + r.1));
    let (sxx, sxy) = rows.iter().fold((0.0, 0.0), |a, r| (a.0 + r.0 * r.0, a.1 + r.0 * r.1));
    let delta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let beta = (sy - delta * sx) / n;
    let mut worst = 0.0f64;
    for (&(x, _), &(t, y)) in wide.iter().zip(&rows) {
        let r = y - beta - delta * t;
        worst = worst.max(r.abs() * x.sqrt());
    }
    if worst > 50.0 {
        return Err(Error::FitInconsistent(format!("max |residual|·√x = {worst:.3}")));
    }
    // slope from a two-parameter fit against log x
    let (lx, ly): (Vec<f64>, Vec<f64>) = wide.iter().map(|&(x, z)| (x.ln(), z)).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = cov / var;
    let spread = samples.iter().map(|(x, z)| (z.re - c0 * x.ln() - c0 * kappa).abs()).fold(0.0, f64::max);
    let error_band = (spread / c0).max((beta / c0 - kappa).abs());
    Ok(KappaFit { kappa, slope, error_band })
}

/// A value of a Siegel function with the truncation bound of its product.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SiegelValue {
    pub value: Complex64,
    pub truncation_bound: f64,
    pub terms: usize,
}

/// `B₂(x) = x² - x + 1/6`.
pub fn bernoulli2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

/// The Siegel function
/// `g_{a1,a2}(τ) = -q_τ^{B₂(a1)/2} e^{πi a2(a1-1)} (1 - q_z) Π_{n≥1} (1 - q_τ^n q_z)(1 - q_τ^n/q_z)`
/// with `z = a1 τ + a2`.
pub fn siegel_g(a1: f64, a2: f64, tau: Complex64) -> Result<SiegelValue> {
    siegel_g_terms(a1, a2, tau, None)
}

/// As [`siegel_g`] with an explicit number of product terms.
pub fn siegel_g_terms(a1: f64, a2: f64, tau: Complex64, terms: Option<usize>) -> Result<SiegelValue> {
    if a1.fract() == 0.0 && a2.fract() == 0.0 {
        return Err(Error::IntegralSiegelParameters);
    }
    if !(tau.im > 0.0) {
        return Err(Error::InvalidParameter("Im tau must be positive".into()));
    }
    let i = Complex64::new(0.0, 1.0);
    let qt = (2.0 * PI * i * tau).exp();
    let z = a1 * tau + a2;
    let qz = (2.0 * PI * i * z).exp();
    let big = qz.norm().max(1.0 / qz.norm());
    let r = qt.norm();
    let n_terms = terms.unwrap_or_else(|| {
        // smallest n with r^n·big below 1e-18
        let n = ((1e-18f64).ln() - big.ln()) / r.ln();
        n.ceil().max(1.0) as usize + 1
    });
    let mut prod = Complex64::new(1.0, 0.0) - qz;
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..n_terms {
        qn *= qt;
        prod *= (Complex64::new(1.0, 0.0) - qn * qz) * (Complex64::new(1.0, 0.0) - qn / qz);
    }
    let pre = -(PI * i * tau * bernoulli2(a1)).exp() * (PI * i * a2 * (a1 - 1.0)).exp();
    let rn = r.powi(n_terms as i32 + 1);
    let truncation_bound = prod.norm() * 2.0 * rn * big / (1.0 - r) * pre.norm();
    Ok(SiegelValue { value: pre * prod, truncation_bound, terms: n_terms })
}

/// `L(Λ, ψ) = (-2π/Im τ) log |g_{-u, v}(τ)|` for `ψ(1) = e^{2πiu}`,
/// `ψ(τ) = e^{2πiv}`.
pub fn l_value_kronecker(lattice: &Lattice, psi: &LatticeCharacter) -> Result<f64> {
    if psi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let g = siegel_g(-psi.u, psi.v, lattice.tau)?;
    Ok(-2.0 * PI / lattice.tau.im * g.value.norm().ln())
}

/// A partial sum with its tail estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail: f64,
}

/// `E_{u,v}(τ, s) = Σ' e^{2πi(mu + nv)} y^s / |mτ + n|^{2s}` over
/// `|mτ + n|² ≤ cutoff`, `y = Im τ`.
pub fn eisenstein_kronecker_e(u: f64, v: f64, tau: Complex64, s: Complex64, cutoff: f64) -> Result<SeriesValue> {
    if s.re <= 1.0 {
        return Err(Error::InvalidParameter(format!("Re s must exceed 1, got {s}")));
    }
    if u.fract() == 0.0 && v.fract() == 0.0 {
        return Err(Error::TrivialCharacter);
    }
    let lattice = Lattice::new(tau)?;
    let y = tau.im;
    // points m + nτ of LatticePoints are relabelled: here μ = mτ + n
    let pts = LatticePoints::new(lattice, cutoff);
    let psi = LatticeCharacter::new(v, u);
    let mut acc = Complex64::new(0.0, 0.0);
    for (q, n, m) in pts.iter() {
        acc += psi.eval(n, m) * (-s * q.ln()).exp();
    }
    let ys = (s * y.ln()).exp();
    let tail = ys.norm() * PI * cutoff.powf(1.0 - s.re) / (lattice.area * (s.re - 1.0));
    Ok(SeriesValue { value: ys * acc, tail })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_disc_counts() {
        let l = Lattice::gaussian();
        assert_eq!(partial_sum_z(1.0, &l, &LatticeCharacter::trivial()), Complex64::new(4.0, 0.0));
        let z = partial_sum_z(1.0, &l, &LatticeCharacter::new(0.5, 0.5));
        assert!((z - Complex64::new(-4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn partial_sum_matches_double_loop() {
        for l in [Lattice::gaussian(), Lattice::one_plus_omega(), Lattice::new(Complex64::new(0.3, 1.1)).unwrap()] {
            let psi = LatticeCharacter::new(0.25, 1.0 / 3.0);
            let x = 1e4;
            let fast = partial_sum_z(x, &l, &psi);
            let mut slow = Complex64::new(0.0, 0.0);
            let b = 200;
            for m in -b..=b {
                for n in -b..=b {
                    if (m, n) == (0, 0) {
                        continue;
                    }
                    let mu = Complex64::new(m as f64, 0.0) + l.tau * n as f64;
                    if mu.norm_sqr() <= x * (1.0 + 1e-12) {
                        slow += psi.eval(m, n) / mu.norm_sqr();
                    }
                }
            }
            assert!((fast - slow).norm() < 1e-12, "{fast} vs {slow}");
        }
    }

    #[test]
    fn bernoulli_and_nome() {
        assert_eq!(bernoulli2(0.0), 1.0 / 6.0);
        assert!((bernoulli2(0.5) + 1.0 / 12.0).abs() < 1e-16);
        let q = (-2.0 * PI).exp();
        assert!((q - 1.8674427317079893e-3).abs() < 1e-15);
    }

    #[test]
    fn siegel_periodicity_and_truncation() {
        let tau = Complex64::new(0.2, 0.9);
        let a = siegel_g(-0.3, 0.45, tau).unwrap();
        let b = siegel_g(-0.3, 1.45, tau).unwrap();
        assert!((a.value.norm() - b.value.norm()).abs() < 1e-14);
        let c = siegel_g_terms(-0.3, 0.45, tau, Some(2 * a.terms)).unwrap();
        assert!((c.value - a.value).norm() <= a.truncation_bound.max(1e-15));
        assert!(matches!(siegel_g(1.0, 2.0, tau), Err(Error::IntegralSiegelParameters)));
    }

    #[test]
    fn direct_rejects_trivial() {
        assert!(matches!(
            l_value_direct(&Lattice::gaussian(), &LatticeCharacter::trivial(), 1e3),
            Err(Error::TrivialCharacter)
        ));
    }

    #[test]
    fn periodicity_and_conjugation() {
        let l = Lattice::gaussian();
        let p = LatticeCharacter::new(1.0 / 3.0, 0.25);
        let a = l_value_direct(&l, &p, 2e4).unwrap();
        let b = l_value_direct(&l, &LatticeCharacter::new(1.0 / 3.0 + 1.0, 0.25), 2e4).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
        let c = l_value_direct(&l, &p.conj(), 2e4).unwrap();
        assert!((c.value - a.value.conj()).norm() < 1e-12);
    }

    #[test]
    fn kronecker_e_against_double_loop() {
        let tau = Complex64::new(0.1, 1.2);
        let s = Complex64::new(2.0, 0.0);
        let e = eisenstein_kronecker_e(0.25, 0.5, tau, s, 400.0).unwrap();
        let mut slow = Complex64::new(0.0, 0.0);
        for m in -40i64..=40 {
            for n in -40i64..=40 {
                if (m, n) == (0, 0) {
                    continue;
                }
                let mu = tau * m as f64 + n as f64;
                if mu.norm_sqr() <= 400.0 {
                    let ph = 2.0 * PI * (m as f64 * 0.25 + n as f64 * 0.5);
                    slow += Complex64::from_polar(1.0, ph) * tau.im.powi(2) / mu.norm_sqr().powi(2);
                }
            }
        }
        assert!((e.value - slow).norm() < 1e-13);
        let c = eisenstein_kronecker_e(-0.25, -0.5, tau, s, 400.0).unwrap();
        assert!((c.value - e.value.conj()).norm() < 1e-13);
    }
}
