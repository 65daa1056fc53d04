//! Exact arithmetic in cyclotomic fields `ℚ(ζ_n)`.
//!
//! Elements are polynomials in `ζ_n` reduced modulo the cyclotomic
//! polynomial `Φ_n`, so equality is coefficient equality.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `ℚ(ζ_n)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u64,
    coeffs: Vec<Rational64>,
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn reduce(mut p: Vec<Rational64>, phi: &[i64]) -> Vec<Rational64> {
    let deg = phi.len() - 1;
    while p.len() > deg {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = p.len() - deg;
        for (j, &c) in phi.iter().enumerate().take(deg) {
            p[shift + j] -= top * Rational64::from_integer(c);
        }
    }
    p.resize(deg, Rational64::zero());
    p
}

impl Cyclo {
    fn from_poly(n: u64, p: Vec<Rational64>) -> Cyclo {
        let phi = cyclotomic_polynomial(n);
        Cyclo { n, coeffs: reduce(p, &phi) }
    }

    /// The rational number `r`.
    pub fn rational(r: Rational64) -> Cyclo {
        Cyclo { n: 1, coeffs: vec![r] }
    }

    pub fn integer(k: i64) -> Cyclo {
        Cyclo::rational(Rational64::from_integer(k))
    }

    pub fn zero() -> Cyclo {
        Cyclo::integer(0)
    }

    /// `ζ_n^k = e^{2πik/n}`.
    pub fn root(k: i64, n: u64) -> Cyclo {
        let k = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rational64::zero(); k + 1];
        p[k] = Rational64::one();
        Cyclo::from_poly(n, p)
    }

    /// Conductor `n` of the ambient field `ℚ(ζ_n)`.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Re-express in `ℚ(ζ_m)`; `m` must be a multiple of the current order.
    pub fn lift(&self, m: u64) -> Cyclo {
        assert!(m % self.n == 0, "cannot lift from order {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut p = vec![Rational64::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = *c;
        }
        Cyclo::from_poly(m, p)
    }

    fn common(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational number when it lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rational64> {
        // ζ_n^0 = 1 is the only rational basis element
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().copied().unwrap_or_else(Rational64::zero))
        } else {
            None
        }
    }

    pub fn scale(&self, r: Rational64) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = *c.numer() as f64 / *c.denom() as f64;
            z += x * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / self.n as f64);
        }
        z
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        (self - other).is_zero()
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.common(rhs);
        Cyclo { n: a.n, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.common(rhs);
        let mut p = vec![Rational64::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        Cyclo::from_poly(a.n, p)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}/{})", c.numer(), c.denom())?;
            if k > 0 {
                write!(f, "*z{}^{}", self.n, k)?;
            }
        }
        Ok(())
    }
}
