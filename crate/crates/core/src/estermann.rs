//! The Estermann function D(s, α; h/k), its shifts D_j, the Eichler-type
//! series 𝒮_j(s, z), and the residuals left by the reciprocity formula.
//!
//! D is evaluated through the finite Hurwitz decomposition
//!
//! ```text
//! D(s, α; h/k) = Σ_{m=1}^{k} k^{α−s} ζ(s−α, m/k) · F(s, mh/k),
//! ```
//!
//! where F is the periodic zeta function. For fixed `(s, α, k)` both vectors
//! are computed once ([`EstermannKernel`]), after which each numerator `h`
//! costs O(k).

use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::contour::{series_tail_complex, z_integral_complex, LineIntegralSpec};
use crate::error::{finite, Error, Result};
use crate::primes::require_coprime;
use crate::specfun::{
    digamma, directed_power, e_of, e_of_complex, gamma, periodic_zeta_vector, q_poly, riemann_zeta,
    scaled_hurwitz_vector, PowerBase, EULER_GAMMA,
};
use crate::Sign;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Both Hurwitz-side vectors of D(s, α; ·/k).
#[derive(Debug, Clone)]
pub struct EstermannKernel {
    pub s: Complex64,
    pub alpha: Complex64,
    pub modulus: u64,
    /// `k^{α−s} ζ(s−α, m/k)` for `m = 1..=k`.
    left: Vec<Complex64>,
    /// `F(s, r/k)` for `r = 0..k`.
    right: Vec<Complex64>,
}

impl EstermannKernel {
    pub fn new(s: Complex64, alpha: Complex64, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("denominator must be positive".into()));
        }
        for pole in [s, s - alpha] {
            if (pole - 1.0).norm() < 1e-6 {
                return Err(Error::PoleAt(if (s - 1.0).norm() < 1e-6 { s } else { s - alpha }));
            }
        }
        let ku = k as usize;
        Ok(EstermannKernel {
            s,
            alpha,
            modulus: k,
            left: scaled_hurwitz_vector(s - alpha, ku)?,
            right: periodic_zeta_vector(s, ku)?,
        })
    }

    /// D(s, α; h/k).
    pub fn eval(&self, h: i64) -> Result<Complex64> {
        let k = self.modulus;
        require_coprime(h, k as i64)?;
        let h_mod = h.rem_euclid(k as i64) as u64;
        let mut sum = Complex64::new(0.0, 0.0);
        for (idx, a) in self.left.iter().enumerate() {
            let m = idx as u64 + 1;
            sum += a * self.right[((m * h_mod) % k) as usize];
        }
        finite(sum, "estermann_d")
    }
}

type KernelKey = (u64, u64, u64, u64, u64);

fn kernel_cache() -> &'static Mutex<HashMap<KernelKey, Arc<EstermannKernel>>> {
    static CACHE: OnceLock<Mutex<HashMap<KernelKey, Arc<EstermannKernel>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

const KERNEL_CACHE_LIMIT: usize = 2048;

/// The shared kernel for `(s, α, k)`.
pub fn kernel(s: Complex64, alpha: Complex64, k: u64) -> Result<Arc<EstermannKernel>> {
    let key = (s.re.to_bits(), s.im.to_bits(), alpha.re.to_bits(), alpha.im.to_bits(), k);
    if let Some(kern) = kernel_cache().lock().unwrap().get(&key) {
        return Ok(kern.clone());
    }
    let kern = Arc::new(EstermannKernel::new(s, alpha, k)?);
    let mut map = kernel_cache().lock().unwrap();
    if map.len() >= KERNEL_CACHE_LIMIT {
        map.clear();
    }
    map.insert(key, kern.clone());
    Ok(kern)
}

/// A point `(s, α, h/k)` at which to evaluate the Estermann function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstermannPoint {
    pub s: Complex64,
    pub alpha: Complex64,
    pub h: i64,
    pub k: u64,
}

impl EstermannPoint {
    pub fn value(&self) -> Result<Complex64> {
        estermann_d(self.s, self.alpha, self.h, self.k)
    }
}

/// D(s, α; h/k) = Σ_n σ_α(n) e(nh/k) n^{−s}, analytically continued.
pub fn estermann_d(s: Complex64, alpha: Complex64, h: i64, k: u64) -> Result<Complex64> {
    require_coprime(h, k as i64)?;
    kernel(s, alpha, k)?.eval(h)
}

/// D_j(s; h/k) = D(s + j, 2s − 1; h/k).
pub fn estermann_dj(j: usize, s: Complex64, h: i64, k: u64) -> Result<Complex64> {
    estermann_d(s + j as f64, 2.0 * s - 1.0, h, k)
}

/// η(a/q) = ½(1−i)D(½, 0; a/q) + ½(1+i)D(½, 0; −a/q).
pub fn eta_value(a: i64, q: u64) -> Result<Complex64> {
    let kern = kernel(c(0.5), c(0.0), q)?;
    Ok(0.5 * (1.0 - I) * kern.eval(a)? + 0.5 * (1.0 + I) * kern.eval(-a)?)
}

/// D(0, −1+ε; h/k) + ½ζ(1−ε), Richardson-extrapolated from ε and ε/2
/// towards its limit πi·s(h/k).
pub fn dedekind_limit_check(h: i64, k: u64, eps: f64) -> Result<Complex64> {
    if !(1e-4..=1e-2).contains(&eps) {
        return Err(Error::Domain(format!("ε = {eps} must lie in [1e−4, 1e−2]")));
    }
    let f = |e: f64| -> Result<Complex64> {
        Ok(estermann_d(c(0.0), c(-1.0 + e), h, k)? + 0.5 * riemann_zeta(c(1.0 - e))?)
    };
    Ok(2.0 * f(eps / 2.0)? - f(eps)?)
}

/// A point of the closed upper half-plane together with the cut-off used
/// when summing a q-series there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    pub z: Complex64,
    /// Index of the last term kept by the most recent summation.
    pub terms: usize,
}

impl UpperHalfPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.im < 0.0 {
            return Err(Error::Domain(format!("Im z = {} is negative", z.im)));
        }
        Ok(UpperHalfPoint { z, terms: 0 })
    }
}

/// Number of terms after which e^{−2πn·y} n^{σ} < 1e−16.
fn q_series_length(y: f64, sigma: f64) -> usize {
    let mut n = 1usize;
    loop {
        let log_bound = -2.0 * PI * n as f64 * y + sigma * (n as f64).ln();
        if log_bound < -36.9 && n as f64 * 2.0 * PI * y > sigma {
            return n;
        }
        n += 1 + n / 8;
    }
}

/// σ_{α}(n) for `n = 0..=n_max` (entry 0 unused).
fn divisor_sums(alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for d in 1..=n_max {
        let dp = (alpha * (d as f64).ln()).exp();
        let mut m = d;
        while m <= n_max {
            out[m] += dp;
            m += d;
        }
    }
    out
}

/// 𝒮_j(s, z) = (2πi)^{−j} Σ_{n≥1} e(nz) σ_{2s}(n) n^{−s−½−j}.
///
/// On the real axis the series converges only conditionally; there it is
/// evaluated as (2πi)^{−j} D(s+½+j, 2s; h/k) for the rational `z = h/k`
/// (denominators up to 10⁴ are recognised).
pub fn series_s(j: usize, s: Complex64, point: &mut UpperHalfPoint) -> Result<Complex64> {
    let z = point.z;
    let prefactor = (2.0 * PI * I).powi(-(j as i32));
    if z.im < 0.0 {
        return Err(Error::Domain(format!("Im z = {} is negative", z.im)));
    }
    if z.im == 0.0 {
        if s.re.abs() >= j as f64 - 0.5 {
            return Err(Error::DivergentSeries(format!(
                "𝒮_{j}(s, x) on the real axis needs |Re s| < j − ½, got Re s = {}",
                s.re
            )));
        }
        let (h, k) = rational_of(z.re)
            .ok_or_else(|| Error::NonConvergent(format!("{} is not a small-denominator rational", z.re)))?;
        point.terms = 0;
        return Ok(prefactor * estermann_d(s + 0.5 + j as f64, 2.0 * s, h, k)?);
    }
    let sigma = (2.0 * s.re).abs() + 1.0;
    let n_max = q_series_length(z.im, sigma);
    if n_max > 50_000_000 {
        return Err(Error::NonConvergent(format!("Im z = {} needs {n_max} terms", z.im)));
    }
    let sigmas = divisor_sums(2.0 * s, n_max);
    let exponent = -(s + 0.5 + j as f64);
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, sig) in sigmas.iter().enumerate().skip(1) {
        let nf = n as f64;
        sum += e_of_complex(z * nf) * sig * (exponent * nf.ln()).exp();
    }
    point.terms = n_max;
    finite(prefactor * sum, "series_s")
}

/// `x = h/k` with `k ≤ 10⁴`, if `x` is such a rational to machine precision.
fn rational_of(x: f64) -> Option<(i64, u64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let b = y.floor();
        let bi = b as i64;
        let (h2, k2) = (bi * h1 + h0, bi * k1 + k0);
        if k2 > 10_000 {
            return None;
        }
        if (h2 as f64 / k2 as f64 - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Some((h2, k2 as u64));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - b;
        if frac == 0.0 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

/// Evaluates `f`, analytic in a disc of radius > 0.1 around `s`, by the
/// mean over a circle of radius 0.1. Used where `f` is a sum of two terms
/// whose poles at `s = 0` cancel.
fn circle_mean<F>(s: Complex64, f: F) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const NODES: usize = 64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..NODES {
        sum += f(s + 0.1 * e_of(k as f64 / NODES as f64))?;
    }
    Ok(sum / NODES as f64)
}

const SMALL_S: f64 = 0.05;

/// Γ(½+s)ζ(1+2s)·u(½+s) + Γ(½−s)ζ(1−2s)·u(½−s) for a power function `u`
/// (`u(e) = base^{−e}`), regular at `s = 0`.
fn pole_pair<U>(s: Complex64, j: usize, u: U) -> Result<Complex64>
where
    U: Fn(Complex64) -> Result<Complex64>,
{
    let jf = j as f64;
    let raw = |t: Complex64| -> Result<Complex64> {
        Ok(gamma(0.5 + t - jf)? * riemann_zeta(1.0 + 2.0 * t)? * u(0.5 + t)?
            + gamma(0.5 - t - jf)? * riemann_zeta(1.0 - 2.0 * t)? * u(0.5 - t)?)
    };
    if s.norm() < SMALL_S {
        circle_mean(s, raw)
    } else {
        raw(s)
    }
}

/// The boundary pole pair of the reciprocity formula at `x = a/q`:
/// Γ(½+s)ζ(1+2s)(2πx)^{−(½+s)}e^{±(½+s)πi/2} + (s ↦ −s).
pub fn boundary_pole_pair(s: Complex64, x: f64, sign: Sign) -> Result<Complex64> {
    let log_base = (2.0 * PI * x).ln();
    let phase = sign.as_f64() * PI / 2.0;
    pole_pair(s, 0, |e| Ok((-e * log_base + I * phase * e).exp()))
}

/// The s → 0 value of [`boundary_pole_pair`]:
/// ½√(1/x)(L − π/2) ± (i/2)√(1/x)(L + π/2), with L = log(1/x) + γ − log 8π.
pub fn boundary_pole_pair_at_zero(x: f64, sign: Sign) -> Complex64 {
    let l = (1.0 / x).ln() + EULER_GAMMA - (8.0 * PI).ln();
    let root = (1.0 / x).sqrt();
    Complex64::new(0.5 * root * (l - PI / 2.0), sign.as_f64() * 0.5 * root * (l + PI / 2.0))
}

fn factorial(j: usize) -> f64 {
    (1..=j).fold(1.0, |acc, k| acc * k as f64)
}

/// 𝓔_N(s, ±a/q): D₀(s+½, ±a/q) minus the truncated reciprocal expansion.
///
/// ```text
/// 𝓔_N = D₀(s+½, ±a/q)
///     − Σ_{j≤2N} (−1)^j Q_{2j}(s)/j! [ (±a/(2πiq))^j D_j(s+½, ∓q/a) + ζ(½+j+s)ζ(½+j−s)(±a/(2πiq))^j ]
///     − Γ(½+s)ζ(1+2s)(2πa/q)^{−(½+s)} e^{±(½+s)πi/2} − (s ↦ −s)
/// ```
pub fn residual_en(n: usize, s: Complex64, a: i64, q: u64, sign: Sign) -> Result<Complex64> {
    let expansion = reciprocal_expansion(n, s, a, q, sign)?;
    let lhs = estermann_d(s + 0.5, 2.0 * s, sign.as_i64() * a, q)?;
    finite(lhs - expansion.terms - expansion.pole_pair, "residual_en")
}

/// The explicit right-hand side of the truncated reciprocity formula at
/// `±a/q`, split into the reciprocal terms and the Γζ pole pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalExpansion {
    /// Σ_{j≤2N} (−1)^j Q_{2j}(s)/j! [(±a/(2πiq))^j D_j(s+½, ∓q/a) + ζζ(±a/(2πiq))^j].
    pub terms: Complex64,
    pub pole_pair: Complex64,
}

/// See [`residual_en`]; D₀(s+½, ±a/q) = terms + pole_pair + 𝓔_N.
pub fn reciprocal_expansion(n: usize, s: Complex64, a: i64, q: u64, sign: Sign) -> Result<ReciprocalExpansion> {
    if s.re.abs() >= 0.5 {
        return Err(Error::Domain(format!("|Re s| = {} must be below ½", s.re.abs())));
    }
    if a <= 0 {
        return Err(Error::Domain(format!("numerator {a} must be positive")));
    }
    require_coprime(a, q as i64)?;
    let sg = sign.as_i64();
    let x = a as f64 / q as f64;
    let ratio = sign.as_f64() * x / (2.0 * PI * I);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut ratio_pow = c(1.0);
    for j in 0..=2 * n {
        let dj = estermann_dj(j, s + 0.5, -sg * q as i64, a as u64)?;
        let zz = riemann_zeta(0.5 + j as f64 + s)? * riemann_zeta(0.5 + j as f64 - s)?;
        let weight = if j % 2 == 0 { 1.0 } else { -1.0 } / factorial(j);
        sum += weight * q_poly(j, s) * ratio_pow * (dj + zz);
        ratio_pow *= ratio;
    }
    let pole_pair = if s == c(0.0) {
        boundary_pole_pair_at_zero(x, sign)
    } else {
        boundary_pole_pair(s, x, sign)?
    };
    Ok(ReciprocalExpansion { terms: sum, pole_pair })
}

/// 𝓔_N(s, z) for `Im z > 0`, by the same rearrangement with the q-series
/// 𝒮_j in place of the Estermann values.
///
/// The ζζ polynomial carries a single 1/j!: it is the constant part of the
/// j-th reciprocal term, and only with this weight does 𝓔_N vanish to
/// order 2N + 1 at z = 0.
pub fn residual_en_uhp(n: usize, s: Complex64, z: Complex64) -> Result<Complex64> {
    if s.re.abs() >= 0.5 {
        return Err(Error::Domain(format!("|Re s| = {} must be below ½", s.re.abs())));
    }
    if z.im <= 0.0 {
        return Err(Error::Domain(format!("Im z = {} must be positive", z.im)));
    }
    let s0 = series_s(0, s, &mut UpperHalfPoint::new(z)?)?;
    let mut inverse = UpperHalfPoint::new(-1.0 / z)?;
    let ratio = z / (2.0 * PI * I);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=2 * n {
        let jf = j as f64;
        let sj = series_s(j, s, &mut inverse)?;
        let zz = riemann_zeta(0.5 + jf + s)? * riemann_zeta(0.5 + jf - s)?;
        let weight = if j % 2 == 0 { 1.0 } else { -1.0 } / factorial(j);
        sum += weight * q_poly(j, s) * (z.powi(j as i32) * sj + zz * ratio.powi(j as i32));
    }
    let ln_2pi = (2.0 * PI).ln();
    let pair = pole_pair(s, 0, |e| Ok((-e * ln_2pi).exp() * directed_power(PowerBase::MinusIZ, z, -e)?))?;
    finite(s0 - sum - pair, "residual_en_uhp")
}

/// ψ_N(±a/q) = ½(1−i)𝓔_N(0, ±a/q) + ½(1+i)𝓔_N(0, ∓a/q), which is real.
pub fn psi_n(n: usize, a: i64, q: u64, sign: Sign) -> Result<f64> {
    let zero = c(0.0);
    let v = 0.5 * (1.0 - I) * residual_en(n, zero, a, q, sign)? + 0.5 * (1.0 + I) * residual_en(n, zero, a, q, sign.flip())?;
    if v.im.abs() > 1e-8 * v.re.abs().max(1.0) {
        return Err(Error::Domain(format!("ψ_N has imaginary part {:e}", v.im)));
    }
    Ok(v.re)
}

/// The j-th reciprocal term of the exact upper half-plane formula:
/// z^j 𝒮_j(s, −1/z) − Σ_{ℓ≤j} (−1)^{j−ℓ}/(j−ℓ)! ζ(½+ℓ+s)ζ(½+ℓ−s)(z/2πi)^ℓ
/// − Γ(½+s−j)ζ(1+2s)(2πi/z)^{−½−s} − Γ(½−s−j)ζ(1−2s)(2πi/z)^{−½+s}.
fn reciprocal_term(j: usize, s: Complex64, z: Complex64, inverse: &mut UpperHalfPoint) -> Result<Complex64> {
    let sj = series_s(j, s, inverse)?;
    let ratio = z / (2.0 * PI * I);
    let mut poly = Complex64::new(0.0, 0.0);
    for l in 0..=j {
        let lf = l as f64;
        let zz = riemann_zeta(0.5 + lf + s)? * riemann_zeta(0.5 + lf - s)?;
        let sign = if (j - l).is_multiple_of(2) { 1.0 } else { -1.0 };
        poly += sign / factorial(j - l) * zz * ratio.powi(l as i32);
    }
    let ln_2pi = (2.0 * PI).ln();
    let pair = pole_pair(s, j, |e| Ok((-e * ln_2pi).exp() * directed_power(PowerBase::IOverZ, z, -e)?))?;
    Ok(z.powi(j as i32) * sj - poly - pair)
}

/// The right-hand side of the exact reciprocity formula for 𝒮₀(s, z) in the
/// upper half-plane: `terms + 1` reciprocal terms, the hypergeometric
/// remainder integral, and Z(s, z).
pub fn eichler_reciprocity_rhs(s: Complex64, z: Complex64, terms: usize) -> Result<Complex64> {
    if s.re.abs() >= 0.25 {
        return Err(Error::Domain(format!("|Re s| = {} must be below ¼", s.re.abs())));
    }
    if z.im <= 0.0 {
        return Err(Error::Domain(format!("Im z = {} must be positive", z.im)));
    }
    let mut inverse = UpperHalfPoint::new(-1.0 / z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=terms {
        let weight = if j % 2 == 0 { 1.0 } else { -1.0 } / factorial(j);
        sum += weight * q_poly(j, s) * reciprocal_term(j, s, z, &mut inverse)?;
    }
    let tail = series_tail_complex(s, z, terms, &LineIntegralSpec::remainder_default())?;
    let zpart = z_integral_complex(s, z, &LineIntegralSpec::z_default())?;
    finite(sum + tail + zpart, "eichler_reciprocity_rhs")
}

/// Ψ(½ − j), exposed for the closed forms at `s = 0`.
pub fn digamma_half_shift(j: usize) -> Result<f64> {
    Ok(digamma(c(0.5 - j as f64))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithsums::{cotangent_sum, dedekind_sum, to_f64};
    use crate::specfun::ZETA_HALF;

    fn direct_series(s: Complex64, alpha: Complex64, h: i64, k: u64, n_max: usize) -> Complex64 {
        let sig = divisor_sums(alpha, n_max);
        (1..=n_max)
            .map(|n| sig[n] * e_of((n as i64 * h).rem_euclid(k as i64) as f64 / k as f64) * (-s * (n as f64).ln()).exp())
            .sum()
    }

    #[test]
    fn zero_fraction_is_a_zeta_product() {
        let (s, alpha) = (c(3.0), c(0.5));
        let d = estermann_d(s, alpha, 0, 1).unwrap();
        let expected = riemann_zeta(s).unwrap() * riemann_zeta(s - alpha).unwrap();
        assert!((d - expected).norm() < 1e-12);
        for j in 0..4 {
            let v = estermann_dj(j, c(0.5), 0, 1).unwrap();
            let z = riemann_zeta(c(0.5 + j as f64)).unwrap();
            assert!((v - z * z).norm() < 1e-12 * z.norm_sqr().max(1.0));
        }
    }

    #[test]
    fn value_at_the_origin_is_the_cotangent_sum() {
        let d = estermann_d(c(0.0), c(0.0), 1, 3).unwrap();
        assert!((d - Complex64::new(0.25, 0.096_225_044_864_937_7)).norm() < 1e-12, "{d}");
        for k in 1..=40u64 {
            for h in 0..k as i64 {
                if crate::arithsums::gcd(h, k as i64) != 1 {
                    continue;
                }
                let d = estermann_d(c(0.0), c(0.0), h, k).unwrap();
                let expected = Complex64::new(0.25, 0.5 * cotangent_sum(h, k).unwrap());
                assert!((d - expected).norm() < 1e-9, "{h}/{k}: {d} vs {expected}");
            }
        }
    }

    #[test]
    fn matches_the_dirichlet_series() {
        let (s, alpha) = (c(2.5), c(0.3));
        // Σ_{n>N} σ_α(n) n^{−5/2} ≈ N^{−6/5}: about 1e−6 at N = 10⁵.
        let direct = direct_series(s, alpha, 2, 5, 100_000);
        let d = estermann_d(s, alpha, 2, 5).unwrap();
        assert!((d - direct).norm() < 2e-6, "{d} vs {direct}");
        let s4 = Complex64::new(4.0, 1.5);
        let direct4 = direct_series(s4, alpha, -3, 7, 200_000);
        let d4 = estermann_d(s4, alpha, -3, 7).unwrap();
        assert!((d4 - direct4).norm() < 1e-12, "{d4} vs {direct4}");
        // Σ d(n)(−1)^n n^{−s} = −ζ(s)²(2(1 − 2^{−s})² − 1).
        let d1 = estermann_dj(1, c(0.5), 1, 2).unwrap();
        let z = riemann_zeta(c(1.5)).unwrap();
        let x = 2f64.powf(-1.5);
        let closed = -z * z * (2.0 * (1.0 - x) * (1.0 - x) - 1.0);
        assert!((d1 - closed).norm() < 1e-12, "{d1} vs {closed}");
    }

    #[test]
    fn poles_and_coprimality() {
        assert!(matches!(estermann_d(c(1.0), c(0.3), 1, 3), Err(Error::PoleAt(_))));
        assert!(matches!(estermann_d(c(1.3), c(0.3), 1, 3), Err(Error::PoleAt(_))));
        assert!(matches!(estermann_d(c(2.0), c(0.3), 2, 4), Err(Error::NotCoprime(2, 4))));
    }

    #[test]
    fn eta_small_cases() {
        let z2 = ZETA_HALF * ZETA_HALF;
        assert!((eta_value(1, 1).unwrap() - c(z2)).norm() < 1e-12);
        assert!(eta_value(2, 7).unwrap().im.abs() < 1e-9);
    }

    #[test]
    fn dedekind_limit() {
        let v = dedekind_limit_check(1, 3, 1e-3).unwrap();
        assert!((v - I * PI / 18.0).norm() < 1e-4, "{v}");
        assert!(dedekind_limit_check(1, 2, 1e-3).unwrap().norm() < 1e-4);
        let a = dedekind_limit_check(2, 5, 1e-3).unwrap();
        let b = dedekind_limit_check(3, 5, 1e-3).unwrap();
        assert!((a + b).norm() < 1e-4);
        let s25 = to_f64(&dedekind_sum(2, 5).unwrap());
        assert!((a - I * PI * s25).norm() < 1e-4);
    }

    #[test]
    fn series_leading_term() {
        let mut p = UpperHalfPoint::new(Complex64::new(0.0, 10.0)).unwrap();
        let v = series_s(0, c(0.1), &mut p).unwrap();
        let first = (-20.0 * PI).exp();
        assert!((v - first).norm() <= (-40.0 * PI).exp() * 10.0);
        assert!(p.terms >= 1);
    }

    #[test]
    fn series_on_the_real_axis_uses_the_estermann_value() {
        let mut p = UpperHalfPoint::new(Complex64::new(0.4, 0.0)).unwrap();
        let s = c(0.1);
        let v = series_s(2, s, &mut p).unwrap();
        let expected = (2.0 * PI * I).powi(-2) * estermann_d(s + 2.5, 2.0 * s, 2, 5).unwrap();
        assert!((v - expected).norm() < 1e-14);
        let mut q = UpperHalfPoint::new(Complex64::new(0.4, 0.0)).unwrap();
        assert!(matches!(series_s(0, s, &mut q), Err(Error::DivergentSeries(_))));
    }

    #[test]
    fn pole_pair_limit_matches_closed_form() {
        for (x, sign) in [(0.3, Sign::Plus), (2.0 / 7.0, Sign::Minus), (1.0 / 11.0, Sign::Plus)] {
            let numeric = boundary_pole_pair(c(0.0), x, sign).unwrap();
            let closed = boundary_pole_pair_at_zero(x, sign);
            assert!((numeric - closed).norm() < 1e-12, "{numeric} vs {closed}");
        }
    }

    #[test]
    fn eichler_formula_in_the_upper_half_plane() {
        let z = Complex64::new(0.3, 0.5);
        for s in [c(0.0), c(0.1)] {
            let direct = series_s(0, s, &mut UpperHalfPoint::new(z).unwrap()).unwrap();
            let rhs = eichler_reciprocity_rhs(s, z, 20).unwrap();
            assert!((direct - rhs).norm() < 1e-8, "s = {s}: {direct} vs {rhs}");
        }
    }

    #[test]
    fn residual_vanishes_to_order_2n_plus_1() {
        for s in [c(0.0), Complex64::new(0.2, 0.1)] {
            for (n, expected) in [(0usize, 2.0), (1, 8.0)] {
                let coarse = residual_en(n, s, 1, 50, Sign::Plus).unwrap().norm();
                let fine = residual_en(n, s, 1, 100, Sign::Plus).unwrap().norm();
                let ratio = coarse / fine;
                assert!(ratio > expected / 1.5 && ratio < expected * 1.5, "N = {n}, s = {s}: ratio {ratio}");
            }
        }
    }

    #[test]
    fn boundary_residual_is_the_limit_from_the_upper_half_plane() {
        // The approach is slow (roughly y^{0.3}), so the three samples are
        // Aitken-extrapolated towards y = 0.
        let s = c(0.2);
        let boundary = residual_en(0, s, 2, 7, Sign::Minus).unwrap();
        let u: Vec<Complex64> = [1e-4, 1e-5, 1e-6]
            .iter()
            .map(|&y| residual_en_uhp(0, s, Complex64::new(-2.0 / 7.0, y)).unwrap())
            .collect();
        assert!((boundary - u[2]).norm() < (boundary - u[0]).norm());
        let (d1, d2) = (u[1] - u[0], u[2] - u[1]);
        let limit = u[2] - d2 * d2 / (d2 - d1);
        assert!((boundary - limit).norm() < 2e-3, "{boundary} vs {limit}");
    }

    #[test]
    fn psi_is_real_and_small() {
        let v = psi_n(0, 1, 100, Sign::Plus).unwrap();
        assert!(v.abs() < 0.05);
        let w = psi_n(1, 2, 101, Sign::Minus).unwrap();
        assert!(w.abs() < 1e-4);
        assert!(residual_en(0, c(0.5), 1, 3, Sign::Plus).is_err());
    }
}
