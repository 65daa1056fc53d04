//! Test functions for the trace formula: the Selberg–Harish-Chandra
//! transform `k ↦ h` and the Fourier pair `h ↦ g`.

use crate::error::{Error, Result};
use crate::quad::{self, Quad};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Point-pair kernel `k(δ)` for `δ ≥ 1`.
pub type Kernel = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Spectral multiplier `h(λ)`.
pub type Multiplier = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
/// Even function `g(x)` on `ℝ`.
pub type FourierPartner = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Whether a member of a triple is known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Numerical,
    Absent,
}

/// A kernel `k`, its transform `h` and the Fourier partner `g`.
#[derive(Clone)]
pub struct TestFunctionTriple {
    pub k: Option<Kernel>,
    pub h: Multiplier,
    pub g: FourierPartner,
    pub k_provenance: Provenance,
    pub h_provenance: Provenance,
    pub g_provenance: Provenance,
    /// `(s, B)` when the triple is the resolvent pair.
    pub resolvent: Option<(f64, f64)>,
}

impl std::fmt::Debug for TestFunctionTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunctionTriple")
            .field("k", &self.k_provenance)
            .field("h", &self.h_provenance)
            .field("g", &self.g_provenance)
            .field("resolvent", &self.resolvent)
            .finish()
    }
}

impl TestFunctionTriple {
    /// `h(1 + t²)` for real `t`, real part.
    pub fn h_t(&self, t: f64) -> f64 {
        (self.h)(Complex64::new(1.0 + t * t, 0.0)).re
    }

    pub fn g0(&self) -> f64 {
        (self.g)(0.0)
    }

    /// A triple from a kernel, with `h` and `g` computed by quadrature;
    /// `g(x) = 2π ∫_{cosh x}^∞ k(δ) dδ`.
    pub fn from_kernel(k: Kernel, tol: f64) -> TestFunctionTriple {
        let kh = k.clone();
        let h: Multiplier = Arc::new(move |l| shc_h_from_k(&*kh, l, tol).map(|q| q.0).unwrap_or(Complex64::new(f64::NAN, 0.0)));
        let kg = k.clone();
        let g: FourierPartner = Arc::new(move |x| {
            quad::semi_infinite(&*kg, x.cosh(), tol).map(|q| 2.0 * PI * q.value).unwrap_or(f64::NAN)
        });
        TestFunctionTriple {
            k: Some(k),
            h,
            g,
            k_provenance: Provenance::ClosedForm,
            h_provenance: Provenance::Numerical,
            g_provenance: Provenance::Numerical,
            resolvent: None,
        }
    }

    /// `h ≡ 0`, `g ≡ 0`.
    pub fn zero() -> TestFunctionTriple {
        TestFunctionTriple {
            k: Some(Arc::new(|_| 0.0)),
            h: Arc::new(|_| Complex64::new(0.0, 0.0)),
            g: Arc::new(|_| 0.0),
            k_provenance: Provenance::ClosedForm,
            h_provenance: Provenance::ClosedForm,
            g_provenance: Provenance::ClosedForm,
            resolvent: None,
        }
    }
}

/// `h(λ)` from `k` with `λ = 1 - s²`, `Re s ≥ 0`:
/// `h = (4π/s) ∫_0^∞ k(cosh u) sinh(su) sinh u du`, which is the integral
/// over `t = e^u` of `(π/s) k((t + 1/t)/2)(t^s - t^{-s})(t - 1/t) dt/t`.
///
/// Returns the value with an error estimate.
pub fn shc_h_from_k(k: &dyn Fn(f64) -> f64, lambda: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    let s = (Complex64::new(1.0, 0.0) - lambda).sqrt();
    let s = if s.re < 0.0 { -s } else { s };
    // sinh(su)/s, with the limit u at s = 0
    let ratio = move |u: f64| -> Complex64 {
        if s.norm() < 1e-8 {
            Complex64::new(u, 0.0)
        } else {
            (s * u).sinh() / s
        }
    };
    let f_re = |u: f64| 4.0 * PI * k(u.cosh()) * ratio(u).re * u.sinh();
    let f_im = |u: f64| 4.0 * PI * k(u.cosh()) * ratio(u).im * u.sinh();
    let re = quad::semi_infinite(&f_re, 0.0, tol)?;
    let im = if s.im == 0.0 { Quad { value: 0.0, error: 0.0 } } else { quad::semi_infinite(&f_im, 0.0, tol)? };
    Ok((Complex64::new(re.value, im.value), re.error + im.error))
}

/// `g(x) = (1/2π) ∫ h(1 + t²) e^{-itx} dt = (1/π) ∫_0^∞ h(1 + t²) cos(tx) dt`
/// for `h(1 + t²)` given as an even real function of `t`.
pub fn g_from_h(h_t: &dyn Fn(f64) -> f64, x: f64, tol: f64) -> Result<Quad> {
    let q = quad::fourier_cos(h_t, x, tol * PI)?;
    Ok(Quad { value: q.value / PI, error: q.error / PI })
}

/// Advisory growth check of `h(1 + t²)`: `t³ |h(1 + t²)|` should decrease on
/// a ladder of large `t`. Returns a warning when it does not.
pub fn admissibility_warning(h_t: &dyn Fn(f64) -> f64) -> Option<String> {
    let ladder: [f64; 4] = [1e1, 1e2, 1e3, 1e4];
    let w: Vec<f64> = ladder.iter().map(|&t| t.powi(3) * h_t(t).abs()).collect();
    if w.iter().any(|v| !v.is_finite()) {
        return Some("h(1 + t²) is not finite on the sampled ladder".into());
    }
    if w.windows(2).any(|p| p[1] > p[0] * (1.0 + 1e-9) && p[1] > 1e-300) {
        return Some(format!("t³|h(1 + t²)| does not decrease on t = 10..1e4: {w:?}"));
    }
    None
}

/// `h(λ) = 1/(s² + λ - 1) - 1/(B² + λ - 1)`,
/// `g(x) = e^{-s|x|}/(2s) - e^{-B|x|}/(2B)`.
pub fn resolvent_pair(s: f64, b: f64) -> Result<TestFunctionTriple> {
    if !(s > 1.0 && b > s) {
        return Err(Error::InvalidParameter(format!("the resolvent pair needs 1 < s < B, got s = {s}, B = {b}")));
    }
    Ok(TestFunctionTriple {
        k: None,
        // single fraction: no cancellation for large λ
        h: Arc::new(move |l| (b * b - s * s) / ((s * s + l - 1.0) * (b * b + l - 1.0))),
        g: Arc::new(move |x| (-s * x.abs()).exp() / (2.0 * s) - (-b * x.abs()).exp() / (2.0 * b)),
        k_provenance: Provenance::Absent,
        h_provenance: Provenance::ClosedForm,
        g_provenance: Provenance::ClosedForm,
        resolvent: Some((s, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolvent_closed_forms() {
        let p = resolvent_pair(2.0, 3.0).unwrap();
        assert!(((p.h)(Complex64::new(1.0, 0.0)).re - 5.0 / 36.0).abs() < 1e-15);
        assert!((p.g0() - 1.0 / 12.0).abs() < 1e-15);
        assert!(admissibility_warning(&|t| p.h_t(t)).is_none());
        assert!(resolvent_pair(3.0, 2.0).is_err());
        assert!(resolvent_pair(0.5, 2.0).is_err());
    }

    #[test]
    fn resolvent_g_by_quadrature() {
        let p = resolvent_pair(2.0, 3.0).unwrap();
        for x in [0.0, 0.5, 1.0, 2.0, 5.0] {
            let q = g_from_h(&|t| p.h_t(t), x, 1e-10).unwrap();
            assert!((q.value - (p.g)(x)).abs() < 1e-8, "x = {x}: {} vs {}", q.value, (p.g)(x));
            let qm = g_from_h(&|t| p.h_t(t), -x, 1e-10).unwrap();
            assert!((q.value - qm.value).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_kernel() {
        let (v, _) = shc_h_from_k(&|_| 0.0, Complex64::new(0.3, 0.0), 1e-10).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gaussian_kernel_consistency() {
        // k(δ) = e^{-(δ-1)²}; g(0) = 2π ∫_1^∞ k(δ) dδ. h(1 + t²) is below
        // 1e-14 beyond t = 40, where only rounding noise is left.
        let k = |d: f64| (-(d - 1.0) * (d - 1.0)).exp();
        let hk = |t: f64| shc_h_from_k(&k, Complex64::new(1.0 + t * t, 0.0), 1e-12).unwrap().0.re;
        let g0 = quad::finite(&hk, 0.0, 40.0, 1e-11).unwrap().value / PI;
        let direct = 2.0 * PI * quad::semi_infinite(&k, 1.0, 1e-13).unwrap().value;
        assert!((g0 - direct).abs() < 1e-8, "{g0} vs {direct}");
        let t = TestFunctionTriple::from_kernel(Arc::new(k), 1e-12);
        assert!((t.g0() - direct).abs() < 1e-12);
    }

    #[test]
    fn linearity_and_s_symmetry() {
        let k1 = |d: f64| (-(d - 1.0) * (d - 1.0)).exp();
        let k2 = |d: f64| (-2.0 * d).exp();
        let l = Complex64::new(-3.0, 0.0);
        let a = shc_h_from_k(&k1, l, 1e-13).unwrap().0;
        let b = shc_h_from_k(&k2, l, 1e-13).unwrap().0;
        let c = shc_h_from_k(&|d| k1(d) + k2(d), l, 1e-13).unwrap().0;
        assert!((a + b - c).norm() < 1e-12);
        // λ depends on s², so the branch of the square root is immaterial
        let lc = Complex64::new(0.2, 0.7);
        let v = shc_h_from_k(&k1, lc, 1e-12).unwrap().0;
        let s = (Complex64::new(1.0, 0.0) - lc).sqrt();
        let w = shc_h_from_k(&k1, Complex64::new(1.0, 0.0) - (-s) * (-s), 1e-12).unwrap().0;
        assert!((v - w).norm() < 1e-12);
    }
}
