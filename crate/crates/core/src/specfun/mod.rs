//! Complex special functions and the polynomial families built on them.

mod gamma;
mod zeta;

pub use gamma::{digamma, gamma, gauss_2f1_unit, gauss_2f1_unit_tail, ln_gamma, rgamma, DIGAMMA_HALF};
pub use zeta::{
    hurwitz_vector, hurwitz_zeta, periodic_zeta, periodic_zeta_vector, riemann_zeta, scaled_hurwitz_vector,
    scaled_hurwitz_vector_mod_constant, BernoulliTable,
};
pub(crate) use zeta::hurwitz_zeta_shifted;

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{finite, Error, Result};

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ζ(½).
pub const ZETA_HALF: f64 = -1.460_354_508_809_586_8;

pub(crate) fn is_nonpositive_integer(s: Complex64, tol: f64) -> bool {
    s.re <= tol && s.im.abs() <= tol && (s.re - s.re.round()).abs() <= tol
}

/// (sin πt, cos πt) for real `t`, exact at multiples of ½.
pub(crate) fn sincos_pi_real(t: f64) -> (f64, f64) {
    let r = t - 2.0 * (t / 2.0).round(); // r ∈ [−1, 1]
    if r == 0.0 {
        (0.0, 1.0)
    } else if r == 0.5 {
        (1.0, 0.0)
    } else if r == -0.5 {
        (-1.0, 0.0)
    } else if r.abs() == 1.0 {
        (0.0, -1.0)
    } else {
        (PI * r).sin_cos()
    }
}

/// sin(πz) with the real part reduced exactly before scaling by π.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi_real(z.re);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// cos(πz) with the real part reduced exactly before scaling by π.
pub fn cos_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi_real(z.re);
    let y = PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

/// e(x) = e^{2πix} for real `x`.
pub fn e_of(x: f64) -> Complex64 {
    let (s, c) = sincos_pi_real(2.0 * (x - x.round()));
    Complex64::new(c, s)
}

/// e(z) = e^{2πiz} for complex `z`.
pub fn e_of_complex(z: Complex64) -> Complex64 {
    (-2.0 * PI * z.im).exp() * e_of(z.re)
}

/// `[e(r/q)]_{r=0..q-1}`.
pub fn unit_roots(q: usize) -> Vec<Complex64> {
    (0..q).map(|r| e_of(r as f64 / q as f64)).collect()
}

/// Which of the two branch conventions of [`directed_power`] to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerBase {
    /// (i/z)^s := e^{s(πi/2 − log z)}
    IOverZ,
    /// (−iz)^s := e^{s(log z − πi/2)}
    MinusIZ,
}

/// log z for `0 ≤ arg z ≤ π`, treating a signed-zero imaginary part as zero.
pub(crate) fn log_upper(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("directed power of zero".into()));
    }
    let arg = if z.im == 0.0 {
        if z.re > 0.0 {
            0.0
        } else {
            PI
        }
    } else {
        z.im.atan2(z.re)
    };
    if arg < 0.0 {
        return Err(Error::Domain(format!("arg z = {arg} lies outside [0, π]")));
    }
    Ok(Complex64::new(z.norm().ln(), arg))
}

/// Powers of i/z and −iz on the closed upper half-plane, with the branch
/// fixed by the principal logarithm of `z` rather than of the base.
pub fn directed_power(base: PowerBase, z: Complex64, s: Complex64) -> Result<Complex64> {
    let log_z = log_upper(z)?;
    let half_pi_i = Complex64::new(0.0, PI / 2.0);
    let exponent = match base {
        PowerBase::IOverZ => s * (half_pi_i - log_z),
        PowerBase::MinusIZ => s * (log_z - half_pi_i),
    };
    finite(exponent.exp(), "directed_power")
}

/// Q_{2j}(s) = Π_{ℓ=0}^{j−1} ((½+ℓ)² − s²).
pub fn q_poly(j: usize, s: Complex64) -> Complex64 {
    let s2 = s * s;
    (0..j).fold(Complex64::new(1.0, 0.0), |acc, l| {
        let h = 0.5 + l as f64;
        acc * (h * h - s2)
    })
}

/// binom(j − ½, ℓ − ½) = Γ(j+½) / ((j−ℓ)! Γ(ℓ+½)) for 0 ≤ ℓ ≤ j.
pub fn binom_half_shift(j: usize, l: usize) -> f64 {
    debug_assert!(l <= j);
    (l..j).fold(1.0, |acc, k| acc * (k as f64 + 0.5) / (k - l + 1) as f64)
}

/// binom(j − ½, j) = Γ(j+½)/(j! √π).
pub fn binom_half(j: usize) -> f64 {
    let mut value = 1.0;
    for k in 1..=j {
        value *= (k as f64 - 0.5) / k as f64;
    }
    value
}

/// P_j(x) = Σ_{ℓ=0}^{j} binom(j−½, ℓ−½) ζ(½+ℓ) ζ(½−ℓ) x^ℓ.
pub fn p_poly(j: usize, x: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut xp = Complex64::new(1.0, 0.0);
    for l in 0..=j {
        let zz = riemann_zeta(Complex64::new(0.5 + l as f64, 0.0))? * riemann_zeta(Complex64::new(0.5 - l as f64, 0.0))?;
        sum += binom_half_shift(j, l) * zz * xp;
        xp *= x;
    }
    finite(sum, "p_poly")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn e_of_exact_points() {
        assert_eq!(e_of(0.0), c(1.0));
        assert_eq!(e_of(0.5), c(-1.0));
        assert_eq!(e_of(0.25), Complex64::new(0.0, 1.0));
        assert_eq!(e_of(-0.25), Complex64::new(0.0, -1.0));
        assert!((e_of_complex(Complex64::new(0.25, 1.0)) - Complex64::new(0.0, (-2.0 * PI).exp())).norm() < 1e-18);
    }

    #[test]
    fn directed_powers() {
        let i = Complex64::new(0.0, 1.0);
        assert!((directed_power(PowerBase::IOverZ, c(1.0), c(1.0)).unwrap() - i).norm() < 1e-15);
        assert!((directed_power(PowerBase::MinusIZ, c(1.0), c(1.0)).unwrap() + i).norm() < 1e-15);
        assert!((directed_power(PowerBase::IOverZ, i, c(0.5)).unwrap() - c(1.0)).norm() < 1e-15);
        // On the negative axis the branch is arg z = π, not −π.
        let v = directed_power(PowerBase::MinusIZ, c(-2.0), c(0.5)).unwrap();
        assert!((v - (2.0f64).sqrt() * i.sqrt()).norm() < 1e-15);
        assert!(directed_power(PowerBase::IOverZ, Complex64::new(1.0, -0.1), c(1.0)).is_err());
    }

    #[test]
    fn q_poly_values() {
        assert_eq!(q_poly(0, Complex64::new(0.3, 0.2)), c(1.0));
        assert_eq!(q_poly(1, c(0.0)), c(0.25));
        assert_eq!(q_poly(2, c(0.0)), c(0.5625));
    }

    #[test]
    fn binomials() {
        assert!((binom_half_shift(1, 1) - 1.0).abs() < 1e-15);
        assert!((binom_half_shift(1, 0) - 0.5).abs() < 1e-15);
        assert!((binom_half_shift(3, 1) - 1.875).abs() < 1e-15);
        assert!((binom_half(2) - 0.375).abs() < 1e-16);
        for j in 0..30 {
            assert!((binom_half_shift(j, 0) - binom_half(j)).abs() < 1e-13 * binom_half(j));
        }
    }

    #[test]
    fn p_poly_values() {
        let z2 = ZETA_HALF * ZETA_HALF;
        assert!((p_poly(0, c(3.0)).unwrap().re - z2).abs() < 1e-14);
        assert!((p_poly(1, c(0.0)).unwrap().re - 0.5 * z2).abs() < 1e-14);
        let expected = 0.5 * z2 + riemann_zeta(c(1.5)).unwrap().re * riemann_zeta(c(-0.5)).unwrap().re;
        assert!((p_poly(1, c(1.0)).unwrap().re - expected).abs() < 1e-14);
    }
}
