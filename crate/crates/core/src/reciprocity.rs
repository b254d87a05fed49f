//! Moment-side reciprocity: M*₀(±a, q) expressed through the shifted
//! moments M*_j(∓q, a) of the reciprocal twist.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::contour::{g_pm, r_term, series_tail, w_integral, LineIntegralSpec};
use crate::error::{Error, Result};
use crate::moments::{moment_m, moment_mstar_j};
use crate::primes::{require_coprime, require_prime};
use crate::specfun::{binom_half, p_poly, riemann_zeta, EULER_GAMMA, ZETA_HALF};
use crate::Sign;

/// Largest number of reciprocal terms ever summed explicitly. Beyond
/// roughly j = 50 the shifted moments M*_j lose digits to cancellation
/// between their own character sums.
pub const MAX_TERMS: usize = 60;

/// Number of explicit terms used when the caller does not choose.
pub const DEFAULT_TERMS: usize = 20;

/// Individual pieces of a bracket are allowed to reach this size before the
/// explicit sum stops; beyond it their cancellation costs too many digits.
const CANCELLATION_LIMIT: f64 = 1e3;

fn require_pair(a: u64, q: u64) -> Result<()> {
    require_prime(a)?;
    require_prime(q)?;
    if a == q {
        return Err(Error::Domain(format!("a = q = {a}")));
    }
    require_coprime(a as i64, q as i64)
}

/// 𝓔(a, q) = M(a,q) − M(−q,a) − (q/a)^{½}(log(q/a) + γ − log 8π)
/// − ζ(½)²(1 − 2(√q/φ(q))(1 − q^{−½}) + 2(√a/φ(a))(1 − a^{−½})).
pub fn young_error(a: u64, q: u64) -> Result<f64> {
    require_pair(a, q)?;
    if a > q {
        return Err(Error::Domain(format!("need a < q, got a = {a}, q = {q}")));
    }
    let (af, qf) = (a as f64, q as f64);
    let main = (qf / af).sqrt() * ((qf / af).ln() + EULER_GAMMA - (8.0 * PI).ln());
    let correction = 1.0 - 2.0 * qf.sqrt() / (qf - 1.0) * (1.0 - 1.0 / qf.sqrt()) + 2.0 * af.sqrt() / (af - 1.0) * (1.0 - 1.0 / af.sqrt());
    Ok(moment_m(a as i64, q)? - moment_m(-(q as i64), a)? - main - ZETA_HALF * ZETA_HALF * correction)
}

/// The pieces of the j-th reciprocal term
/// binom(j−½, j)[(∓x)^j M*_j(∓q, a) + r_{±,j}(x) − P_j(∓x)].
fn mt_bracket(a: u64, q: u64, sign: Sign, j: usize) -> Result<(f64, f64)> {
    let x = a as f64 / q as f64;
    let y = -sign.as_f64() * x;
    let moment = y.powi(j as i32) * moment_mstar_j(j as i64, -sign.as_i64() * q as i64, a)?;
    let poly = p_poly(j, Complex64::new(y, 0.0))?.re;
    let r = r_term(sign, j, x)?;
    let scale = binom_half(j);
    let size = scale * moment.abs().max(poly.abs()).max(r.abs());
    Ok((scale * (moment + r - poly), size))
}

/// The value of the reciprocal series for M*₀(±a, q) and how it was summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvaluation {
    pub value: f64,
    /// Number of explicitly summed terms minus one (J).
    pub last_term: usize,
    /// Magnitude of the J-th term.
    pub last_term_size: f64,
    /// The Mellin–Barnes remainder after J.
    pub tail: f64,
}

/// The infinite reciprocal series for M*₀(±a, q):
///
/// ```text
/// Σ_{j≥0} binom(j−½, j)[(∓x)^j M*_j(∓q, a) + r_{±,j}(x) − P_j(∓x)] + W±(x) + g±(x) − r_{∓,0}(1/x)
/// ```
///
/// with `x = a/q`. The terms decay only algebraically, so the first
/// `J + 1` are summed and the rest is added as the exact remainder integral
/// [`series_tail`]. `J` is `max_terms` if given (at most [`MAX_TERMS`]),
/// otherwise [`DEFAULT_TERMS`], lowered if the pieces of a term exceed 10³.
pub fn mt_series_rhs(a: u64, q: u64, sign: Sign, max_terms: Option<usize>) -> Result<SeriesEvaluation> {
    require_pair(a, q)?;
    if a >= q {
        return Err(Error::NonConvergent(format!("the reciprocal series needs a < q, got {a}/{q}")));
    }
    let x = a as f64 / q as f64;
    let limit = max_terms.unwrap_or(DEFAULT_TERMS).min(MAX_TERMS);
    let mut sum = 0.0;
    let mut last = (0, 0.0);
    for j in 0..=limit {
        let (term, size) = mt_bracket(a, q, sign, j)?;
        if max_terms.is_none() && j > 0 && size > CANCELLATION_LIMIT {
            break;
        }
        sum += term;
        last = (j, term.abs());
    }
    let tail = series_tail(sign, x, last.0, &LineIntegralSpec::remainder_default().with_truncation(tail_truncation(last.0)))?.re;
    let closing = w_integral(sign, x, &LineIntegralSpec::w_default())?.re + g_pm(sign, x)? - r_term(sign.flip(), 0, 1.0 / x)?;
    Ok(SeriesEvaluation { value: sum + tail + closing, last_term: last.0, last_term_size: last.1, tail })
}

/// Height of the remainder contour. Beyond |t| ≈ J the integrand decays
/// only like J!/|t|^{J+1}, which is fast enough at height 60 once J ≥ 10.
fn tail_truncation(terms: usize) -> f64 {
    if terms >= 10 {
        60.0
    } else {
        400.0
    }
}

/// The explicit part of the truncated reciprocity formula,
/// Σ_{j≤last} binom(j−½, j)[(∓x)^j M*_j(∓q, a) + ζ(½+j)ζ(½−j)(∓x)^j] − r_∓(1/x).
fn truncated_main(a: u64, q: u64, sign: Sign, last: usize) -> Result<f64> {
    let x = a as f64 / q as f64;
    let y = -sign.as_f64() * x;
    let mut sum = 0.0;
    for j in 0..=last {
        let jf = j as f64;
        let zz = (riemann_zeta(Complex64::new(0.5 + jf, 0.0))? * riemann_zeta(Complex64::new(0.5 - jf, 0.0))?).re;
        let moment = moment_mstar_j(j as i64, -sign.as_i64() * q as i64, a)?;
        sum += binom_half(j) * y.powi(j as i32) * (moment + zz);
    }
    Ok(sum - r_term(sign.flip(), 0, 1.0 / x)?)
}

/// The main term and remainder ψ_N of the truncated formula
/// M*₀(±a, q) = main + ψ_N(±a/q), with 2N + 1 reciprocal terms.
pub fn mtc_truncated(a: u64, q: u64, sign: Sign, n: usize) -> Result<(f64, f64)> {
    require_pair(a, q)?;
    let main = truncated_main(a, q, sign, 2 * n)?;
    let moment = moment_mstar_j(0, sign.as_i64() * a as i64, q)?;
    Ok((main, moment - main))
}

/// ψ̃_N(±a/q): the remainder when the formula is truncated after N + 1
/// terms instead of 2N + 1.
pub fn psi_tilde(a: u64, q: u64, sign: Sign, n: usize) -> Result<f64> {
    require_pair(a, q)?;
    let main = truncated_main(a, q, sign, n)?;
    Ok(moment_mstar_j(0, sign.as_i64() * a as i64, q)? - main)
}
