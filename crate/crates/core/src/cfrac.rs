//! Continued fractions and the Euclid-chain formulas built on them.
//!
//! Applying the reciprocity formula at `s = 0`, `N = 0` once per Euclid
//! step expresses D₀(½, ±a/q) — and hence M*₀(±a, q) — through the
//! convergent denominators of a/q.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::estermann::{boundary_pole_pair_at_zero, psi_n, residual_en};
use crate::primes::{mod_inverse, require_coprime, require_prime};
use crate::specfun::{EULER_GAMMA, ZETA_HALF};
use crate::Sign;

/// [b₀; b₁, …, b_κ] together with its convergents α_j/v_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    quotients: Vec<u64>,
    conv_num: Vec<i64>,
    conv_den: Vec<u64>,
}

impl ContinuedFraction {
    /// Builds the expansion from its partial quotients.
    pub fn from_quotients(quotients: Vec<u64>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::Domain("a continued fraction needs b₀".into()));
        }
        if quotients[1..].contains(&0) {
            return Err(Error::Domain("partial quotients after b₀ must be positive".into()));
        }
        let (mut num, mut den) = (Vec::with_capacity(quotients.len()), Vec::with_capacity(quotients.len()));
        let (mut p_prev, mut p) = (1i64, quotients[0] as i64);
        let (mut q_prev, mut q) = (0u64, 1u64);
        num.push(p);
        den.push(q);
        for &b in &quotients[1..] {
            (p_prev, p) = (p, b as i64 * p + p_prev);
            (q_prev, q) = (q, b * q + q_prev);
            num.push(p);
            den.push(q);
        }
        Ok(ContinuedFraction { quotients, conv_num: num, conv_den: den })
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// α_0, …, α_κ.
    pub fn numerators(&self) -> &[i64] {
        &self.conv_num
    }

    /// v_0, …, v_κ.
    pub fn denominators(&self) -> &[u64] {
        &self.conv_den
    }

    /// κ, the number of partial quotients after b₀.
    pub fn kappa(&self) -> usize {
        self.quotients.len() - 1
    }

    /// The value as a reduced pair `(α_κ, v_κ)`.
    pub fn value(&self) -> (i64, u64) {
        (*self.conv_num.last().unwrap(), *self.conv_den.last().unwrap())
    }

    /// v_{j−1} for `j = 0..=κ`, with v_{−1} = 0.
    pub fn den_before(&self, j: usize) -> u64 {
        if j == 0 {
            0
        } else {
            self.conv_den[j - 1]
        }
    }
}

impl std::fmt::Display for ContinuedFraction {
    /// `b0;b1,b2,…`, the form printed by the command-line tool.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.quotients[0])?;
        if self.quotients.len() > 1 {
            let tail: Vec<String> = self.quotients[1..].iter().map(|b| b.to_string()).collect();
            write!(f, ";{}", tail.join(","))?;
        }
        Ok(())
    }
}

/// The canonical expansion of `a/q` (last quotient ≥ 2 when κ ≥ 1).
pub fn expand(a: i64, q: u64) -> Result<ContinuedFraction> {
    if q == 0 {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    if a < 0 {
        return Err(Error::Domain(format!("numerator {a} must be non-negative")));
    }
    require_coprime(a, q as i64)?;
    let (mut num, mut den) = (a as u64, q);
    let mut quotients = Vec::new();
    loop {
        quotients.push(num / den);
        let r = num % den;
        if r == 0 {
            break;
        }
        (num, den) = (den, r);
    }
    ContinuedFraction::from_quotients(quotients)
}

/// Toggles the parity of κ through [.., b_κ] ↔ [.., b_κ − 1, 1] when it
/// differs from the requested one; the value is unchanged.
pub fn adjust_parity(cf: &ContinuedFraction, want_even: bool) -> Result<ContinuedFraction> {
    if cf.kappa().is_multiple_of(2) && want_even || cf.kappa() % 2 == 1 && !want_even {
        return Ok(cf.clone());
    }
    if cf.kappa() == 0 {
        return Err(Error::PreconditionFailed("κ = 0 has no parity-toggled form".into()));
    }
    let mut q = cf.quotients.clone();
    let last = *q.last().unwrap();
    if last == 1 {
        q.pop();
        *q.last_mut().unwrap() += 1;
    } else {
        *q.last_mut().unwrap() = last - 1;
        q.push(1);
    }
    ContinuedFraction::from_quotients(q)
}

/// Checks {(−1)^{κ+1} ā/q} = [0; b_κ, …, b₁] by exact comparison of values.
pub fn reversal_identity_check(a: i64, q: u64) -> Result<bool> {
    let cf = expand(a, q)?;
    if cf.kappa() == 0 {
        return Ok(true);
    }
    let kappa = cf.kappa();
    let inverse = mod_inverse(a, q as i64)?;
    let sign = if (kappa + 1) % 2 == 0 { 1 } else { -1 };
    let target = (sign * inverse).rem_euclid(q as i64);
    let mut reversed = vec![0];
    reversed.extend(cf.quotients[1..].iter().rev());
    let (num, den) = ContinuedFraction::from_quotients(reversed)?.value();
    Ok(den == q && num == target)
}

/// The ratio v_j/v_{j−1} and the step fraction v_{j−1}/v_j for `j = 1..=κ`.
fn steps(cf: &ContinuedFraction) -> impl Iterator<Item = (usize, u64, u64)> + '_ {
    (1..=cf.kappa()).map(move |j| (j, cf.den_before(j), cf.conv_den[j]))
}

/// The sign of the j-th Euclid step for D₀(½, ±a/q).
fn step_sign(sign: Sign, j: usize) -> Sign {
    sign.times_power_of_minus_one(j + 1)
}

/// D₀(½, ±a/q) through the Euclid chain of a/q:
///
/// ```text
/// ζ(½)²(κ+1) + Σ_{j=1}^{κ} [ ½ρ_j(L_j − π/2) + σ_j (i/2) ρ_j (L_j + π/2) + 𝓔₀(0, σ_j v_{j−1}/v_j) ]
/// ```
///
/// with ρ_j = (v_j/v_{j−1})^{½}, L_j = log(v_j/v_{j−1}) + γ − log 8π and the
/// step signs σ_j = ∓(−1)^j.
pub fn exact_d_formula(a: i64, q: u64, sign: Sign) -> Result<Complex64> {
    let a = a.rem_euclid(q.max(1) as i64);
    let cf = expand(a, q)?;
    let mut total = Complex64::new(ZETA_HALF * ZETA_HALF * (cf.kappa() + 1) as f64, 0.0);
    for (j, prev, cur) in steps(&cf) {
        let sigma = step_sign(sign, j);
        let x = prev as f64 / cur as f64;
        total += boundary_pole_pair_at_zero(x, sigma);
        total += residual_en(0, Complex64::new(0.0, 0.0), prev as i64, cur, sigma)?;
    }
    Ok(total)
}

/// M*₀(±a, q) through the Euclid chain:
///
/// ```text
/// Σ_{σ_j = +} ρ_j L_j − (π/2) Σ_{σ_j = −} ρ_j + ζ(½)²(κ+1) + Σ_j ψ₀(σ_j v_{j−1}/v_j)
/// ```
pub fn rhs_ypo(a: i64, q: u64, sign: Sign) -> Result<f64> {
    require_prime(q)?;
    rhs_ypo_expansion(&expand(a.rem_euclid(q as i64), q)?, sign)
}

/// [`rhs_ypo`] along a given expansion of a/q, which may end in a 1.
pub fn rhs_ypo_expansion(cf: &ContinuedFraction, sign: Sign) -> Result<f64> {
    let mut total = ZETA_HALF * ZETA_HALF * (cf.kappa() + 1) as f64;
    for (j, prev, cur) in steps(cf) {
        let sigma = step_sign(sign, j);
        let ratio = cur as f64 / prev as f64;
        total += match sigma {
            Sign::Plus => ratio.sqrt() * log_term(ratio),
            Sign::Minus => -PI / 2.0 * ratio.sqrt(),
        };
        total += psi_n(0, prev as i64, cur, sigma)?;
    }
    Ok(total)
}

fn log_term(ratio: f64) -> f64 {
    ratio.ln() + EULER_GAMMA - (8.0 * PI).ln()
}

/// The two parity-filtered main sums of the moment, without the ψ₀ terms:
/// Σ_{σ_j=+} ρ_j L_j − (π/2) Σ_{σ_j=−} ρ_j.
pub fn ypo_main_terms(a: i64, q: u64, sign: Sign) -> Result<f64> {
    let cf = expand(a.rem_euclid(q as i64), q)?;
    Ok(steps(&cf)
        .map(|(j, prev, cur)| {
            let ratio = cur as f64 / prev as f64;
            match step_sign(sign, j) {
                Sign::Plus => ratio.sqrt() * log_term(ratio),
                Sign::Minus => -PI / 2.0 * ratio.sqrt(),
            }
        })
        .sum())
}

/// f±(a/q) = Σ_{j=1}^{κ} (±1)^j b_j^{½}(log b_j + γ − log 8π ∓ π/2).
pub fn f_pm(sign: Sign, a: i64, q: u64) -> Result<f64> {
    if a < 1 || a as u64 > q {
        return Err(Error::Domain(format!("need 1 ≤ a ≤ q, got a = {a}, q = {q}")));
    }
    let cf = expand(a, q)?;
    let sg = sign.as_f64();
    Ok(cf.quotients[1..]
        .iter()
        .enumerate()
        .map(|(idx, &b)| {
            let bf = b as f64;
            sg.powi(idx as i32 + 1) * bf.sqrt() * (log_term(bf) - sg * PI / 2.0)
        })
        .sum())
}

/// The continued fraction of {h k̄/q} split around its middle quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTwistStructure {
    /// The canonical expansion of {h k̄/q}.
    pub full: ContinuedFraction,
    /// {−h q̄/k} with an even number of quotients.
    pub left: ContinuedFraction,
    /// {−k q̄/h} with an even number of quotients.
    pub right: ContinuedFraction,
    /// The quotient following the left block, if there is one.
    pub middle: Option<u64>,
    pub h: u64,
    pub k: u64,
    pub q: u64,
}

impl TwoTwistStructure {
    /// Whether `full` (in either parity) is exactly
    /// [0; left, middle, reversed right] with |middle − q/(hk)| < 2.
    pub fn holds(&self) -> bool {
        let Some(middle) = self.middle else { return false };
        let mut expected = vec![0];
        expected.extend_from_slice(&self.left.quotients[1..]);
        expected.push(middle);
        expected.extend(self.right.quotients[1..].iter().rev());
        let in_window = (middle as f64 - self.q as f64 / (self.h * self.k) as f64).abs() < 2.0;
        let matches = |cf: &ContinuedFraction| cf.quotients == expected;
        in_window && (matches(&self.full) || adjust_parity(&self.full, self.full.kappa() % 2 == 1).is_ok_and(|t| matches(&t)))
    }
}

fn fractional_expansion(num: i64, den: u64) -> Result<ContinuedFraction> {
    let reduced = num.rem_euclid(den as i64);
    let cf = expand(reduced, den)?;
    if cf.kappa() % 2 == 0 {
        Ok(cf)
    } else {
        adjust_parity(&cf, true)
    }
}

/// The expansion of {h k̄/q} together with the two blocks it is built from.
pub fn two_twist_cf_structure(h: u64, k: u64, q: u64) -> Result<TwoTwistStructure> {
    let (hi, ki, qi) = (h as i64, k as i64, q as i64);
    require_coprime(hi, ki)?;
    require_coprime(hi, qi)?;
    require_coprime(ki, qi)?;
    if q < 4 * h * k {
        return Err(Error::PreconditionFailed(format!("q = {q} is below 4hk = {}", 4 * h * k)));
    }
    let k_inv = mod_inverse(ki, qi)?;
    let full = expand((hi * k_inv).rem_euclid(qi), q)?;
    let left = if k == 1 {
        expand(0, 1)?
    } else {
        fractional_expansion(-hi * mod_inverse(qi, ki)?, k)?
    };
    let right = if h == 1 {
        expand(0, 1)?
    } else {
        fractional_expansion(-ki * mod_inverse(qi, hi)?, h)?
    };
    let middle = full.quotients.get(left.kappa() + 1).copied();
    Ok(TwoTwistStructure { full, left, right, middle, h, k, q })
}

/// ½(q/hk)^{½}(log(q/hk) + γ − log 8π ∓ π/2), the main term of M±(h, k; q).
pub fn moment_via_cf(sign: Sign, h: u64, k: u64, q: u64) -> Result<f64> {
    require_prime(q)?;
    if q < 4 * h * k {
        return Err(Error::PreconditionFailed(format!("q = {q} is below 4hk = {}", 4 * h * k)));
    }
    require_coprime(h as i64, k as i64)?;
    let ratio = q as f64 / (h * k) as f64;
    Ok(0.5 * ratio.sqrt() * (log_term(ratio) - sign.as_f64() * PI / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estermann::estermann_d;
    use crate::moments::moment_mstar_j;

    #[test]
    fn expansions() {
        let cf = expand(7, 17).unwrap();
        assert_eq!(cf.quotients(), &[0, 2, 2, 3]);
        assert_eq!(cf.denominators(), &[1, 2, 5, 17]);
        assert_eq!(cf.value(), (7, 17));
        assert_eq!(cf.to_string(), "0;2,2,3");
        assert_eq!(expand(1, 5).unwrap().quotients(), &[0, 5]);
        let zero = expand(0, 1).unwrap();
        assert_eq!((zero.quotients(), zero.kappa()), (&[0u64][..], 0));
        assert!(matches!(expand(2, 4), Err(Error::NotCoprime(2, 4))));
    }

    #[test]
    fn determinant_identity() {
        for q in 1..300u64 {
            for a in 0..q as i64 {
                let Ok(cf) = expand(a, q) else { continue };
                let (num, den) = (cf.numerators(), cf.denominators());
                for j in 1..=cf.kappa() {
                    let det = num[j] * den[j - 1] as i64 - num[j - 1] * den[j] as i64;
                    assert_eq!(det, if j % 2 == 1 { 1 } else { -1 });
                }
                assert_eq!(cf.value(), (a, q));
            }
        }
    }

    #[test]
    fn parity_toggle() {
        let cf = expand(7, 17).unwrap();
        let even = adjust_parity(&cf, true).unwrap();
        assert_eq!(even.quotients(), &[0, 2, 2, 2, 1]);
        assert_eq!(even.value(), (7, 17));
        assert_eq!(adjust_parity(&even, false).unwrap(), cf);
        let one = expand(1, 5).unwrap();
        assert_eq!(adjust_parity(&one, false).unwrap(), one);
    }

    #[test]
    fn reversal() {
        assert!(reversal_identity_check(7, 17).unwrap());
        assert!(reversal_identity_check(0, 1).unwrap());
        for q in 2..200u64 {
            for a in 1..q as i64 {
                if crate::arithsums::gcd(a, q as i64) == 1 {
                    assert!(reversal_identity_check(a, q).unwrap(), "{a}/{q}");
                }
            }
        }
    }

    #[test]
    fn euclid_chain_reproduces_the_estermann_value() {
        let half = Complex64::new(0.5, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        for (a, q) in [(7, 17), (1, 9), (2, 7), (5, 13), (11, 30)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let chain = exact_d_formula(a, q, sign).unwrap();
                let direct = estermann_d(half, zero, sign.as_i64() * a, q).unwrap();
                assert!((chain - direct).norm() < 1e-7, "{sign}{a}/{q}: {chain} vs {direct}");
            }
        }
        let z2 = ZETA_HALF * ZETA_HALF;
        assert!((exact_d_formula(0, 1, Sign::Plus).unwrap() - z2).norm() < 1e-14);
    }

    #[test]
    fn euclid_chain_reproduces_the_moment() {
        for (a, q) in [(2i64, 7u64), (1, 3), (5, 13), (10, 31)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let rhs = rhs_ypo(a, q, sign).unwrap();
                let moment = moment_mstar_j(0, sign.as_i64() * a, q).unwrap();
                assert!((rhs - moment).abs() < 1e-7, "{sign}{a}/{q}: {rhs} vs {moment}");
            }
        }
    }

    #[test]
    fn f_values() {
        let expected = 2f64.sqrt() * (2f64.ln() + EULER_GAMMA - (8.0 * PI).ln() - PI / 2.0);
        assert!((f_pm(Sign::Plus, 1, 2).unwrap() - expected).abs() < 1e-14);
        let minus: f64 = [(1, 2.0f64), (2, 2.0), (3, 3.0)]
            .iter()
            .map(|&(j, b)| (-1f64).powi(j) * b.sqrt() * (log_term(b) + PI / 2.0))
            .sum();
        assert!((f_pm(Sign::Minus, 7, 17).unwrap() - minus).abs() < 1e-14);
    }

    #[test]
    fn two_twist_examples() {
        let st = two_twist_cf_structure(1, 2, 11).unwrap();
        assert_eq!(st.full.quotients(), &[0, 1, 1, 5]);
        assert_eq!(st.left.quotients(), &[0, 1, 1]);
        assert_eq!(st.right.kappa(), 0);
        assert_eq!(st.middle, Some(5));
        assert!(st.holds());
        let trivial = two_twist_cf_structure(1, 1, 13).unwrap();
        assert_eq!(trivial.middle, Some(13));
        assert!(trivial.holds());
        assert!(two_twist_cf_structure(2, 3, 29).unwrap().holds());
        assert!(matches!(two_twist_cf_structure(2, 3, 23), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn main_term_of_two_twists() {
        let v = moment_via_cf(Sign::Plus, 1, 1, 101).unwrap();
        let l = 101f64.ln() + EULER_GAMMA - (8.0 * PI).ln();
        assert!((v - 0.5 * 101f64.sqrt() * (l - PI / 2.0)).abs() < 1e-13);
    }
}
