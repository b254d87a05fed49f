//! Riemann, Hurwitz and periodic zeta functions.
//!
//! Single values come from Euler–Maclaurin summation. Moment and Estermann
//! sums only ever need Hurwitz values at the rationals `r/q`, so this module
//! also produces whole vectors `[ζ(s, r/q)]_{r=1..q}`; for `Re s < −1` those
//! vectors are obtained from Hurwitz's functional equation, which is free of
//! the cancellation Euler–Maclaurin suffers there.

use num_complex::Complex64;
use num_rational::Rational64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::gamma::ln_gamma;
use super::{e_of, sin_pi};
use crate::error::{finite, Error, Result};

/// Exact Bernoulli numbers B_2, B_4, …, B_24.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    pub values: [Rational64; 12],
}

impl BernoulliTable {
    pub fn new() -> Self {
        const RAW: [(i64, i64); 12] = [
            (1, 6),
            (-1, 30),
            (1, 42),
            (-1, 30),
            (5, 66),
            (-691, 2730),
            (7, 6),
            (-3617, 510),
            (43867, 798),
            (-174611, 330),
            (854513, 138),
            (-236364091, 2730),
        ];
        BernoulliTable {
            values: RAW.map(|(n, d)| Rational64::new(n, d)),
        }
    }

    /// B_{2k} for `k = 1..=12`.
    pub fn b2k(&self, k: usize) -> Rational64 {
        self.values[k - 1]
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Euler–Maclaurin correction order.
const EM_ORDER: usize = 12;

/// B_{2k}/(2k)! as floating point, k = 1..=EM_ORDER.
fn em_coefficients() -> &'static [f64; EM_ORDER] {
    static COEF: OnceLock<[f64; EM_ORDER]> = OnceLock::new();
    COEF.get_or_init(|| {
        let table = BernoulliTable::new();
        let mut out = [0.0; EM_ORDER];
        let mut fact = 1.0;
        for k in 1..=EM_ORDER {
            fact *= ((2 * k - 1) * (2 * k)) as f64;
            let b = table.b2k(k);
            out[k - 1] = *b.numer() as f64 / *b.denom() as f64 / fact;
        }
        out
    })
}

/// (e^u − 1)/u without cancellation for small |u|.
fn exprel(u: Complex64) -> Complex64 {
    if u.norm() < 0.1 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..18 {
            term *= u / k as f64;
            sum += term;
        }
        sum
    } else {
        (u.exp() - 1.0) / u
    }
}

/// ζ(s, x) − 1/(s−1) by Euler–Maclaurin. Regular at `s = 1`.
fn hurwitz_regular_em(s: Complex64, x: f64, head: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..head {
        sum += (-s * (n as f64 + x).ln()).exp();
    }
    let big = head as f64 + x;
    let ln_big = big.ln();
    // ((M+x)^{1−s} − 1)/(s − 1) = −ln(M+x) · exprel((1−s) ln(M+x))
    sum -= ln_big * exprel((1.0 - s) * ln_big);
    let pow = (-s * ln_big).exp();
    sum += 0.5 * pow;
    let inv_sq = 1.0 / (big * big);
    let mut poch = s;
    let mut pw = pow / big;
    for (k, c) in em_coefficients().iter().enumerate() {
        sum += *c * poch * pw;
        let m = (2 * k + 1) as f64;
        poch *= (s + m) * (s + m + 1.0);
        pw *= inv_sq;
    }
    sum
}

fn head_length(s: Complex64) -> usize {
    15 + s.im.abs().ceil() as usize
}

fn near_one(s: Complex64) -> bool {
    (s - 1.0).norm() < 1e-14
}

/// Recognise `x` as an exact small-denominator rational `m/k`.
fn as_small_rational(x: f64) -> Option<(u64, u64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0u64, 1u64, 1u64, 0u64);
    let mut y = x;
    for _ in 0..40 {
        let b = y.floor();
        if b > 1e9 {
            break;
        }
        let bi = b as u64;
        let (h2, k2) = (bi * h1 + h0, bi * k1 + k0);
        if k2 > 5000 {
            return None;
        }
        if (h2 as f64 / k2 as f64 - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - b;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

/// Hurwitz zeta ζ(s, x) for `0 < x ≤ 1`.
///
/// For `Re s < −1` the Euler–Maclaurin head sum cancels heavily; rationals
/// with denominators up to 5000 are therefore routed through Hurwitz's
/// functional equation. Other `x` keep Euler–Maclaurin and lose accuracy
/// to roughly 1e−10 relative at `Re s ≈ −3`.
pub fn hurwitz_zeta(s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain(format!("hurwitz_zeta requires 0 < x <= 1, got {x}")));
    }
    if near_one(s) {
        return Err(Error::PoleAt(s));
    }
    if s.re < -1.0 {
        if let Some((m, k)) = as_small_rational(x) {
            let scaled = scaled_hurwitz_vector(1.0 - s, k as usize)?;
            return finite(functional_equation_entry(s, m as usize, k as usize, &scaled)?, "hurwitz_zeta");
        }
        // Generic abscissa: enlarge the head so the correction terms stay small.
        let head = head_length(s) + s.norm().ceil() as usize;
        return finite(hurwitz_regular_em(s, x, head) + 1.0 / (s - 1.0), "hurwitz_zeta");
    }
    finite(hurwitz_regular_em(s, x, head_length(s)) + 1.0 / (s - 1.0), "hurwitz_zeta")
}

/// ζ(s, x) for any `x > 0` straight from Euler–Maclaurin with `extra_head`
/// more explicit terms than usual; used to cross-check the recurrence.
pub(crate) fn hurwitz_zeta_shifted(s: Complex64, x: f64, extra_head: usize) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("shift point {x} must be positive")));
    }
    if near_one(s) {
        return Err(Error::PoleAt(s));
    }
    let head = head_length(s) + s.norm().ceil() as usize + extra_head;
    finite(hurwitz_regular_em(s, x, head) + 1.0 / (s - 1.0), "hurwitz_zeta_shifted")
}

/// Riemann zeta ζ(s).
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if near_one(s) {
        return Err(Error::PoleAt(s));
    }
    if s.re < -1.0 {
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let log_factor = s * (2.0f64).ln() + (s - 1.0) * PI.ln() + ln_gamma(1.0 - s)?;
        let value = log_factor.exp() * sin_pi(s / 2.0) * riemann_zeta(1.0 - s)?;
        return finite(value, "riemann_zeta");
    }
    if s.re > 12.0 {
        return finite(direct_scaled(s, 1, 1), "riemann_zeta");
    }
    finite(hurwitz_regular_em(s, 1.0, head_length(s)) + 1.0 / (s - 1.0), "riemann_zeta")
}

/// Σ_{n≥0} (r + n q)^{−s} for `Re s` large, i.e. q^{−s} ζ(s, r/q).
fn direct_scaled(s: Complex64, r: usize, q: usize) -> Complex64 {
    let first = (-s * (r as f64).ln()).exp();
    let mut sum = first;
    let mut n = 1usize;
    loop {
        let base = (r + n * q) as f64;
        let term = (-s * base.ln()).exp();
        sum += term;
        if term.norm() <= 1e-18 * first.norm() {
            break;
        }
        n += 1;
    }
    sum
}

/// One entry of Hurwitz's functional equation at a rational point:
/// ζ(s, m/k) = 2Γ(1−s)(2π)^{s−1} Σ_r sin(2πrm/k + πs/2) k^{s−1}ζ(1−s, r/k),
/// given `scaled[r-1] = k^{s−1} ζ(1−s, r/k)`.
fn functional_equation_entry(s: Complex64, m: usize, k: usize, scaled: &[Complex64]) -> Result<Complex64> {
    let prefactor = 2.0 * (ln_gamma(1.0 - s)? + (s - 1.0) * (2.0 * PI).ln()).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    for (idx, value) in scaled.iter().enumerate() {
        let r = idx + 1;
        let phase = 2.0 * ((r * m) % k) as f64 / k as f64 + s / 2.0;
        sum += sin_pi(phase) * value;
    }
    Ok(prefactor * sum)
}

/// `[q^{−s} ζ(s, r/q)]_{r=1..q}`.
///
/// The scaling keeps entries representable when `Re s` is large, which is
/// exactly how they enter `L(s, χ)` and the Estermann double sum.
pub fn scaled_hurwitz_vector(s: Complex64, q: usize) -> Result<Vec<Complex64>> {
    if near_one(s) {
        return Err(Error::PoleAt(s));
    }
    let lnq = (q as f64).ln();
    if s.re >= 12.0 {
        return Ok((1..=q).map(|r| direct_scaled(s, r, q)).collect());
    }
    let scale = (-s * lnq).exp();
    let raw = hurwitz_vector(s, q)?;
    raw.into_iter().map(|v| finite(v * scale, "scaled_hurwitz_vector")).collect()
}

/// `[ζ(s, r/q)]_{r=1..q}`.
pub fn hurwitz_vector(s: Complex64, q: usize) -> Result<Vec<Complex64>> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    if near_one(s) {
        return Err(Error::PoleAt(s));
    }
    if s.re < -1.0 {
        let scaled = scaled_hurwitz_vector(1.0 - s, q)?;
        return (1..=q)
            .map(|m| functional_equation_entry(s, m, q, &scaled).and_then(|v| finite(v, "hurwitz_vector")))
            .collect();
    }
    let head = head_length(s);
    let pole = 1.0 / (s - 1.0);
    (1..=q)
        .map(|r| finite(hurwitz_regular_em(s, r as f64 / q as f64, head) + pole, "hurwitz_vector"))
        .collect()
}

/// A vector differing from `scaled_hurwitz_vector(s, q)` by a constant
/// independent of `r`; well defined at `s = 1`. Any sum Σ_r c_r v_r with
/// Σ_r c_r = 0 (a non-principal character, a non-trivial additive twist)
/// can use it in place of the scaled vector.
pub fn scaled_hurwitz_vector_mod_constant(s: Complex64, q: usize) -> Result<Vec<Complex64>> {
    if (s - 1.0).norm() > 0.5 {
        return scaled_hurwitz_vector(s, q);
    }
    let head = head_length(s);
    let scale = (-s * (q as f64).ln()).exp();
    Ok((1..=q)
        .map(|r| scale * hurwitz_regular_em(s, r as f64 / q as f64, head))
        .collect())
}

/// Periodic zeta F(s, r/q) = Σ_{n≥1} e(nr/q) n^{−s}, analytically continued
/// through F(s, r/q) = q^{−s} Σ_m e(mr/q) ζ(s, m/q).
pub fn periodic_zeta(s: Complex64, r: i64, q: u64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let q_us = q as usize;
    let r_mod = r.rem_euclid(q as i64) as usize;
    if r_mod == 0 {
        return riemann_zeta(s);
    }
    let v = scaled_hurwitz_vector_mod_constant(s, q_us)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (idx, value) in v.iter().enumerate() {
        let m = idx + 1;
        sum += e_of(((m * r_mod) % q_us) as f64 / q as f64) * value;
    }
    finite(sum, "periodic_zeta")
}

/// `[F(s, ℓ/q)]_{ℓ=0..q-1}`; entry 0 is ζ(s) and is NaN at `s = 1`.
pub fn periodic_zeta_vector(s: Complex64, q: usize) -> Result<Vec<Complex64>> {
    let v = scaled_hurwitz_vector_mod_constant(s, q)?;
    let roots = super::unit_roots(q);
    let mut out = Vec::with_capacity(q);
    out.push(if near_one(s) {
        Complex64::new(f64::NAN, f64::NAN)
    } else {
        riemann_zeta(s)?
    });
    for l in 1..q {
        let mut sum = Complex64::new(0.0, 0.0);
        for (idx, value) in v.iter().enumerate() {
            sum += roots[((idx + 1) * l) % q] * value;
        }
        out.push(sum);
    }
    Ok(out)
}
