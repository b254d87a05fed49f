//! Vertical-line Mellin–Barnes integrals and their closed-form companions.
//!
//! Every integral here is written as `(1/2πi)∫_{(c)} f(w) dw` and evaluated
//! by the trapezoid rule in `t = Im w` on `[−T, T]`. The integrands are
//! analytic in a strip around the line and decay exponentially (or, for the
//! hypergeometric remainders, super-polynomially), so the rule converges
//! spectrally in the step.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{finite, Error, Result};
use crate::specfun::{
    cos_pi, digamma, directed_power, gamma, gauss_2f1_unit_tail, riemann_zeta, sin_pi, PowerBase, EULER_GAMMA,
    ZETA_HALF,
};
use crate::Sign;

/// A truncated vertical line `c + it`, `|t| ≤ T`, sampled with step `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegralSpec {
    pub abscissa: f64,
    pub truncation: f64,
    pub step: f64,
}

impl LineIntegralSpec {
    pub fn new(abscissa: f64, truncation: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step <= 0.05) {
            return Err(Error::Domain(format!("step {step} must lie in (0, 0.05]")));
        }
        if truncation < 20.0 {
            return Err(Error::Domain(format!("truncation {truncation} must be at least 20")));
        }
        let ratio = truncation / step;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio {
            return Err(Error::Domain(format!("T/h = {ratio} is not an integer")));
        }
        Ok(LineIntegralSpec {
            abscissa,
            truncation,
            step,
        })
    }

    /// The line `Re w = −½` used by W±.
    pub fn w_default() -> Self {
        LineIntegralSpec {
            abscissa: -0.5,
            truncation: 40.0,
            step: 0.02,
        }
    }

    /// The line `Re w = ¾` used by Z± (δ = ¼).
    pub fn z_default() -> Self {
        LineIntegralSpec {
            abscissa: 0.75,
            truncation: 40.0,
            step: 0.02,
        }
    }

    /// The line `Re w = −0.6` used by the hypergeometric remainders.
    pub fn remainder_default() -> Self {
        LineIntegralSpec {
            abscissa: -0.6,
            truncation: 60.0,
            step: 0.05,
        }
    }

    pub fn with_abscissa(self, abscissa: f64) -> Self {
        LineIntegralSpec { abscissa, ..self }
    }

    pub fn with_truncation(self, truncation: f64) -> Self {
        LineIntegralSpec { truncation, ..self }
    }

    fn nodes(&self) -> usize {
        (self.truncation / self.step).round() as usize
    }
}

/// `(1/2πi)∫ f(w) dw` along the line described by `spec`.
pub fn line_integral<F>(spec: &LineIntegralSpec, mut f: F) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let n = spec.nodes() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let w = Complex64::new(spec.abscissa, k as f64 * spec.step);
        let weight = if k.abs() == n { 0.5 } else { 1.0 };
        sum += weight * f(w)?;
    }
    // dw = i dt, so (1/2πi) dw = dt / 2π.
    finite(sum * spec.step / (2.0 * PI), "line_integral")
}

/// W±(x) = (1/2πi)∫_{(−½)} Γ(w)/sin(πw) ζ(½+w)² (cos(πw/2) ± sin(πw/2)) (2πx)^{−w} dw.
pub fn w_integral(sign: Sign, x: f64, spec: &LineIntegralSpec) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("W±(x) needs x > 0, got {x}")));
    }
    if !(spec.abscissa > -1.0 && spec.abscissa < 0.0) {
        return Err(Error::Domain(format!("abscissa {} leaves the strip (−1, 0)", spec.abscissa)));
    }
    let log_base = (2.0 * PI * x).ln();
    let sg = sign.as_f64();
    line_integral(spec, |w| {
        let z = riemann_zeta(w + 0.5)?;
        let trig = cos_pi(w / 2.0) + sg * sin_pi(w / 2.0);
        Ok(gamma(w)? / sin_pi(w) * z * z * trig * (-w * log_base).exp())
    })
}

/// Z(s, z) = (1/2πi)∫ Γ(w) cos(πs)/sin(πw) ζ(½+w−s)ζ(½+w+s) (−2πiz)^{−w} dw
/// for `0 ≤ arg z ≤ π`, with the directed power (−iz)^{−w}.
pub fn z_integral_complex(s: Complex64, z: Complex64, spec: &LineIntegralSpec) -> Result<Complex64> {
    if s.re.abs() >= spec.abscissa - 0.5 || spec.abscissa >= 1.0 {
        return Err(Error::Domain(format!(
            "need |Re s| < c − ½ < ½, got Re s = {} on c = {}",
            s.re, spec.abscissa
        )));
    }
    let cos_s = cos_pi(s);
    let ln_2pi = (2.0 * PI).ln();
    line_integral(spec, |w| {
        let zz = riemann_zeta(w + 0.5 - s)? * riemann_zeta(w + 0.5 + s)?;
        let power = (-w * ln_2pi).exp() * directed_power(PowerBase::MinusIZ, z, -w)?;
        Ok(gamma(w)? * cos_s / sin_pi(w) * zz * power)
    })
}

/// Z±(s, x): the boundary value of Z(s, ±x) for real `x > 0`, i.e. the
/// integrand carries `(2πx)^{−w} e^{±πiw/2}`.
pub fn z_integral(sign: Sign, s: Complex64, zarg: f64, spec: &LineIntegralSpec) -> Result<Complex64> {
    if !(zarg > 0.0) {
        return Err(Error::Domain(format!("Z±(s, x) needs x > 0, got {zarg}")));
    }
    z_integral_complex(s, Complex64::new(sign.as_f64() * zarg, 0.0), spec)
}

/// r±,j(z): `(π/2)√z` for `+`, `(log(2π/z) − Ψ(½−j) − 2γ)√z` for `−`.
pub fn r_term(sign: Sign, j: usize, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("r±,j(z) needs z > 0, got {z}")));
    }
    Ok(match sign {
        Sign::Plus => PI / 2.0 * z.sqrt(),
        Sign::Minus => {
            let psi = digamma(Complex64::new(0.5 - j as f64, 0.0))?.re;
            ((2.0 * PI / z).ln() - psi - 2.0 * EULER_GAMMA) * z.sqrt()
        }
    })
}

/// g±(x) = ζ(½)²(½ ± ½ − log(x/4)/π), the residue of the W-integrand at w = 0.
pub fn g_pm(sign: Sign, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("g±(x) needs x > 0, got {x}")));
    }
    Ok(ZETA_HALF * ZETA_HALF * (0.5 + 0.5 * sign.as_f64() - (x / 4.0).ln() / PI))
}

/// Γ(1−w)Γ(−w)/(Γ(½−w−s)Γ(½−w+s)) minus its hypergeometric expansion
/// Σ_{j≤J} Q_{2j}(s)/(j!(1−w)_j): the part of the kernel not yet accounted
/// for by the first `J + 1` reciprocal terms.
pub fn kernel_remainder(w: Complex64, s: Complex64, terms: usize) -> Result<Complex64> {
    gauss_2f1_unit_tail(0.5 + s, 0.5 - s, 1.0 - w, terms)
}

/// The tail of the reciprocal series for the central moment after `J + 1`
/// terms: (1/2πi)∫ Γ(w) R_J(w, 0) ζ(½+w)² (2π/x)^{−w} (cos(πw/2) ∓ sin(πw/2)) dw
/// on a line in `(−1, 0)`.
pub fn series_tail(sign: Sign, x: f64, terms: usize, spec: &LineIntegralSpec) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("series tail needs x > 0, got {x}")));
    }
    if !(spec.abscissa > -1.0 && spec.abscissa < -0.5) {
        return Err(Error::Domain(format!("abscissa {} leaves (−1, −½)", spec.abscissa)));
    }
    let log_base = (2.0 * PI / x).ln();
    let sg = sign.as_f64();
    let zero = Complex64::new(0.0, 0.0);
    line_integral(spec, |w| {
        let z = riemann_zeta(w + 0.5)?;
        let trig = cos_pi(w / 2.0) - sg * sin_pi(w / 2.0);
        Ok(gamma(w)? * kernel_remainder(w, zero, terms)? * z * z * trig * (-w * log_base).exp())
    })
}

/// The same remainder in the open upper half-plane:
/// (1/2πi)∫ Γ(w) R_J(w, s) ζ(½+w−s)ζ(½+w+s) (2πi/z)^{−w} dw, with (i/z)^{−w} directed.
pub fn series_tail_complex(s: Complex64, z: Complex64, terms: usize, spec: &LineIntegralSpec) -> Result<Complex64> {
    if !(spec.abscissa > -1.0 && spec.abscissa < -0.5) {
        return Err(Error::Domain(format!("abscissa {} leaves (−1, −½)", spec.abscissa)));
    }
    let ln_2pi = (2.0 * PI).ln();
    line_integral(spec, |w| {
        let zz = riemann_zeta(w + 0.5 - s)? * riemann_zeta(w + 0.5 + s)?;
        let power = (-w * ln_2pi).exp() * directed_power(PowerBase::IOverZ, z, -w)?;
        Ok(gamma(w)? * kernel_remainder(w, s, terms)? * zz * power)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn spec_validation() {
        assert!(LineIntegralSpec::new(-0.5, 40.0, 0.02).is_ok());
        assert!(LineIntegralSpec::new(-0.5, 10.0, 0.02).is_err());
        assert!(LineIntegralSpec::new(-0.5, 40.0, 0.1).is_err());
        assert!(LineIntegralSpec::new(-0.5, 40.0, 0.03).is_err());
    }

    #[test]
    fn trapezoid_reproduces_a_gaussian_line_integral() {
        // (1/2πi)∫_{(0)} e^{w²} dw = (1/2π)∫ e^{−t²} dt = 1/(2√π).
        let spec = LineIntegralSpec::new(0.0, 20.0, 0.05).unwrap();
        let v = line_integral(&spec, |w| Ok((w * w).exp())).unwrap();
        assert!((v.re - 0.5 / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn closed_forms() {
        assert!((r_term(Sign::Plus, 0, 0.25).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((r_term(Sign::Minus, 0, 1.0).unwrap() - 2.646_955_762_627_703_2).abs() < 1e-14);
        assert_eq!(r_term(Sign::Plus, 5, 0.7).unwrap(), r_term(Sign::Plus, 0, 0.7).unwrap());
        let z2 = ZETA_HALF * ZETA_HALF;
        assert!((g_pm(Sign::Plus, 4.0).unwrap() - z2).abs() < 1e-15);
        assert!(g_pm(Sign::Minus, 4.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn w_integral_is_real_and_truncation_stable() {
        let spec = LineIntegralSpec::w_default();
        let v40 = w_integral(Sign::Minus, 0.1, &spec).unwrap();
        assert!(v40.im.abs() < 1e-9);
        let v30 = w_integral(Sign::Plus, 0.1, &spec.with_truncation(30.0)).unwrap();
        let v40p = w_integral(Sign::Plus, 0.1, &spec).unwrap();
        assert!((v30 - v40p).norm() < 1e-10);
        assert!(w_integral(Sign::Plus, 0.001, &spec).unwrap().norm() <= 0.05);
        assert!(w_integral(Sign::Plus, 0.0, &spec).is_err());
    }

    #[test]
    fn w_integral_shift_invariance() {
        let a = w_integral(Sign::Plus, 0.3, &LineIntegralSpec::w_default()).unwrap();
        let b = w_integral(Sign::Plus, 0.3, &LineIntegralSpec::w_default().with_abscissa(-0.3)).unwrap();
        assert!((a - b).norm() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn z_integral_shift_invariance() {
        let s = c(0.1);
        let a = z_integral(Sign::Plus, s, 1.0, &LineIntegralSpec::z_default()).unwrap();
        let b = z_integral(Sign::Plus, s, 1.0, &LineIntegralSpec::z_default().with_abscissa(0.8)).unwrap();
        assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        let t30 = z_integral(Sign::Plus, c(0.0), 0.5, &LineIntegralSpec::z_default().with_truncation(30.0)).unwrap();
        let t40 = z_integral(Sign::Plus, c(0.0), 0.5, &LineIntegralSpec::z_default()).unwrap();
        assert!((t30 - t40).norm() < 1e-10);
    }

    #[test]
    fn residue_bookkeeping_moves_z_to_w() {
        // ½(1−i)Z₊(0, x) + ½(1+i)Z₋(0, x) = W₊(x) + g₊(x) − r₋,₀(1/x).
        for (a, q) in [(1.0, 5.0), (2.0, 7.0), (3.0, 4.0)] {
            let x: f64 = a / q;
            let zp = z_integral(Sign::Plus, c(0.0), x, &LineIntegralSpec::z_default()).unwrap();
            let zm = z_integral(Sign::Minus, c(0.0), x, &LineIntegralSpec::z_default()).unwrap();
            let i = Complex64::new(0.0, 1.0);
            let lhs = 0.5 * (1.0 - i) * zp + 0.5 * (1.0 + i) * zm;
            let rhs = w_integral(Sign::Plus, x, &LineIntegralSpec::w_default()).unwrap()
                + g_pm(Sign::Plus, x).unwrap()
                - r_term(Sign::Minus, 0, 1.0 / x).unwrap();
            assert!((lhs - rhs).norm() < 1e-8, "x = {x}: {lhs} vs {rhs}");
            // And the opposite twist.
            let lhs_m = 0.5 * (1.0 - i) * zm + 0.5 * (1.0 + i) * zp;
            let rhs_m = w_integral(Sign::Minus, x, &LineIntegralSpec::w_default()).unwrap()
                + g_pm(Sign::Minus, x).unwrap()
                - r_term(Sign::Plus, 0, 1.0 / x).unwrap();
            assert!((lhs_m - rhs_m).norm() < 1e-8, "x = {x}: {lhs_m} vs {rhs_m}");
        }
    }

    #[test]
    fn complex_z_matches_boundary_values() {
        let s = c(0.05);
        let z = z_integral_complex(s, c(0.4), &LineIntegralSpec::z_default()).unwrap();
        let zp = z_integral(Sign::Plus, s, 0.4, &LineIntegralSpec::z_default()).unwrap();
        assert!((z - zp).norm() < 1e-15);
    }
}
