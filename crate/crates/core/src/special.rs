//! Special functions: digamma and log-gamma on the complex plane, plus
//! acceleration of alternating series.

use num_complex::Complex64;
use std::f64::consts::PI;

/// The Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// Catalan's constant `L(2, χ₋₄)`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_11;

/// `L(2, χ₋₃)` for the character of conductor 3.
pub const L2_CHI3: f64 = 0.781_302_412_896_486_296_867_425_889_620_750_95;

const SHIFT: f64 = 15.0;

/// Digamma function `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ψ(z) = ψ(1 - z) - π cot(πz)
        let pz = PI * z;
        return digamma(Complex64::new(1.0, 0.0) - z) - PI * pz.cos() / pz.sin();
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < SHIFT {
        acc -= z.inv();
        z += 1.0;
    }
    let w = z.inv();
    let w2 = w * w;
    // Bernoulli tail B_{2k}/(2k z^{2k})
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = w2;
    for c in C {
        series += c * p;
        p *= w2;
    }
    acc + z.ln() - 0.5 * w - series
}

/// Real digamma function.
pub fn digamma_real(x: f64) -> f64 {
    digamma(Complex64::new(x, 0.0)).re
}

/// A branch of `log Γ(z)`. Only `exp` of the result is branch independent.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let s = (PI * z).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < SHIFT {
        acc -= z.ln();
        z += 1.0;
    }
    let w = z.inv();
    let w2 = w * w;
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = w;
    for c in C {
        series += c * p;
        p *= w2;
    }
    acc + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// Sum `Σ_{k≥0} (-1)^k a_k` with the Cohen–Rodriguez Villegas–Zagier
/// acceleration using `n` terms.
///
/// Exact for totally monotone sequences up to an error of about `5.8^{-n}`.
pub fn sum_alternating(a: impl Fn(usize) -> f64, n: usize) -> f64 {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        s += c * a(k);
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}
