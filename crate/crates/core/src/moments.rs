//! Twisted moments of Dirichlet L-functions computed by direct character
//! sums. This is the brute-force side of every identity in the crate.

use num_complex::Complex64;
use num_integer::Integer;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::characters::{CharacterTable, Parity};
use crate::error::{finite, Error, Result};
use crate::primes::{require_coprime, require_prime};
use crate::specfun::{hurwitz_vector, periodic_zeta_vector, riemann_zeta, scaled_hurwitz_vector_mod_constant};
use crate::Sign;

/// A coprime pair `(a, q)` representing the twist `a/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    pub a: i64,
    pub q: u64,
}

impl ReducedFraction {
    pub fn new(a: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("denominator must be positive".into()));
        }
        require_coprime(a, q as i64)?;
        Ok(ReducedFraction { a, q })
    }

    /// The representative of `a` in `0..q`.
    pub fn canonical(&self) -> u64 {
        self.a.rem_euclid(self.q as i64) as u64
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.q as f64
    }
}

/// The shift parameters of M*(s, z; a, q); M*_j is `(s, z) = (½, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentParams {
    pub s: Complex64,
    pub z: Complex64,
}

impl MomentParams {
    pub fn shifted(j: i64) -> Self {
        MomentParams {
            s: Complex64::new(0.5, 0.0),
            z: Complex64::new(j as f64, 0.0),
        }
    }
}

type Key = (u64, u64, u64, u8);

struct Caches {
    tables: Mutex<HashMap<u64, Arc<CharacterTable>>>,
    values: Mutex<HashMap<Key, Arc<Vec<Complex64>>>>,
}

fn caches() -> &'static Caches {
    static CACHES: OnceLock<Caches> = OnceLock::new();
    CACHES.get_or_init(|| Caches {
        tables: Mutex::new(HashMap::new()),
        values: Mutex::new(HashMap::new()),
    })
}

const CACHE_LIMIT: usize = 50_000;

/// Shared character table for a prime modulus.
pub fn character_table(q: u64) -> Result<Arc<CharacterTable>> {
    if let Some(t) = caches().tables.lock().unwrap().get(&q) {
        return Ok(t.clone());
    }
    let table = Arc::new(CharacterTable::new(q)?);
    caches().tables.lock().unwrap().insert(q, table.clone());
    Ok(table)
}

fn memoized(key: Key, build: impl FnOnce() -> Result<Vec<Complex64>>) -> Result<Arc<Vec<Complex64>>> {
    if let Some(v) = caches().values.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let value = Arc::new(build()?);
    let mut map = caches().values.lock().unwrap();
    if map.len() > CACHE_LIMIT {
        map.clear();
    }
    map.insert(key, value.clone());
    Ok(value)
}

fn near(s: Complex64, p: f64) -> bool {
    (s - p).norm() < 1e-6
}

/// `[L(s, χ_t)]_t`. The principal entry is NaN at `s = 1`.
pub fn l_values(q: u64, s: Complex64) -> Result<Arc<Vec<Complex64>>> {
    memoized((q, s.re.to_bits(), s.im.to_bits(), 0), || {
        let table = character_table(q)?;
        let v = scaled_hurwitz_vector_mod_constant(s, q as usize)?;
        let mut out = table.transform(&v);
        out[0] = if (s - 1.0).norm() < 1e-14 {
            Complex64::new(f64::NAN, f64::NAN)
        } else {
            riemann_zeta(s)? * (1.0 - (-s * (q as f64).ln()).exp())
        };
        Ok(out)
    })
}

/// `[q^s L(s, χ_t)]_t = [Σ_r χ_t(r) ζ(s, r/q)]_t`, which stays representable
/// for very negative `Re s` where `q^s` alone would underflow the product.
fn unscaled_l_values(q: u64, s: Complex64) -> Result<Arc<Vec<Complex64>>> {
    memoized((q, s.re.to_bits(), s.im.to_bits(), 1), || {
        let table = character_table(q)?;
        let v = hurwitz_vector(s, q as usize)?;
        let mut out = table.transform(&v);
        out[0] = riemann_zeta(s)? * ((s * (q as f64).ln()).exp() - 1.0);
        Ok(out)
    })
}

/// L(s, χ_t) through the finite Hurwitz decomposition.
pub fn dirichlet_l(table: &CharacterTable, t: usize, s: Complex64) -> Result<Complex64> {
    let t = t % table.len();
    if t == 0 && (s - 1.0).norm() < 1e-14 {
        return Err(Error::PoleAt(s));
    }
    Ok(l_values(table.modulus, s)?[t])
}

fn central_abs2(q: u64) -> Result<Arc<Vec<Complex64>>> {
    memoized((q, 0, 0, 2), || {
        let l = l_values(q, Complex64::new(0.5, 0.0))?;
        Ok(l.iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect())
    })
}

fn real_or_err(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > 1e-9 * z.re.abs().max(1.0) {
        return Err(Error::Domain(format!("{what} has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// M(a, q) = (√q/φ(q)) Σ*_χ |L(½, χ)|² χ(a).
///
/// For `q = 2` there are no primitive characters and the value is 0.
pub fn moment_m(a: i64, q: u64) -> Result<f64> {
    require_prime(q)?;
    require_coprime(a, q as i64)?;
    let table = character_table(q)?;
    let abs2 = central_abs2(q)?;
    let sum: Complex64 = (1..table.len()).map(|t| abs2[t] * table.chi(t, a)).sum();
    let phi = (q - 1) as f64;
    real_or_err(sum * (q as f64).sqrt() / phi, "M(a, q)")
}

/// M*(s, z; a, q) in its all-characters form
/// (q^{s−z}/φ) Σ_χ L(s−z, χ̄) L(s+z, χ) χ(a) + (q^{−z}/φ) ζ(s+z)ζ(s−z)(q^{1−s} − q^{−s}).
pub fn moment_mstar(s: Complex64, z: Complex64, a: i64, q: u64) -> Result<Complex64> {
    require_prime(q)?;
    require_coprime(a, q as i64)?;
    if near(s + z, 1.0) || near(s - z, 1.0) {
        return Err(Error::NearPole(format!("s ± z = {} / {} is within 1e-6 of 1", s + z, s - z)));
    }
    let table = character_table(q)?;
    let minus = unscaled_l_values(q, s - z)?;
    let plus = l_values(q, s + z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for t in 0..table.len() {
        sum += minus[table.conj_index(t)] * plus[t] * table.chi(t, a);
    }
    let phi = (q - 1) as f64;
    let lnq = (q as f64).ln();
    let zz = riemann_zeta(s + z)? * riemann_zeta(s - z)?;
    let correction = (-z * lnq).exp() / phi * zz * (((1.0 - s) * lnq).exp() - (-s * lnq).exp());
    finite(sum / phi + correction, "moment_mstar")
}

/// M*(s, z; a, q) from the primitive-characters form
/// (q^{s−z}/φ) Σ*_χ L(s−z, χ̄) L(s+z, χ) χ(a) + (q^{−z}/φ) ζζ (q^{1−s} + q^s − q^z − q^{−z}).
pub fn moment_mstar_primitive(s: Complex64, z: Complex64, a: i64, q: u64) -> Result<Complex64> {
    require_prime(q)?;
    require_coprime(a, q as i64)?;
    if near(s + z, 1.0) || near(s - z, 1.0) {
        return Err(Error::NearPole(format!("s ± z = {} / {} is within 1e-6 of 1", s + z, s - z)));
    }
    let table = character_table(q)?;
    let minus = unscaled_l_values(q, s - z)?;
    let plus = l_values(q, s + z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for t in 1..table.len() {
        sum += minus[table.conj_index(t)] * plus[t] * table.chi(t, a);
    }
    let phi = (q - 1) as f64;
    let lnq = (q as f64).ln();
    let zz = riemann_zeta(s + z)? * riemann_zeta(s - z)?;
    let pw = |e: Complex64| (e * lnq).exp();
    let correction = pw(-z) / phi * zz * (pw(1.0 - s) + pw(s) - pw(z) - pw(-z));
    finite(sum / phi + correction, "moment_mstar_primitive")
}

/// M*_j(a, q) = M*(½, j; a, q), which is real.
pub fn moment_mstar_j(j: i64, a: i64, q: u64) -> Result<f64> {
    let v = moment_mstar(Complex64::new(0.5, 0.0), Complex64::new(j as f64, 0.0), a, q)?;
    real_or_err(v, "M*_j")
}

/// A(s, z; a, q) = (1/q) Σ_{ℓ=1}^{q} F(s−z, ℓ/q) F(s+z, aℓ/q).
pub fn bilinear_a(s: Complex64, z: Complex64, a: i64, q: u64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    require_coprime(a, q as i64)?;
    if near(s + z, 1.0) || near(s - z, 1.0) {
        return Err(Error::PoleAt(if near(s + z, 1.0) { s + z } else { s - z }));
    }
    let qs = q as usize;
    let f_minus = periodic_zeta_vector(s - z, qs)?;
    let f_plus = periodic_zeta_vector(s + z, qs)?;
    let a_mod = a.rem_euclid(q as i64) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for l in 1..=qs {
        sum += f_minus[l % qs] * f_plus[(a_mod * l) % qs];
    }
    finite(sum / q as f64, "bilinear_a")
}

/// M_±(h, k; q) = (√q/φ(q)) Σ*_{χ(−1)=±1} |L(½, χ)|² χ(h) χ̄(k).
pub fn moment_two_twists(sign: Sign, h: i64, k: i64, q: u64) -> Result<f64> {
    require_prime(q)?;
    require_coprime(h, q as i64)?;
    require_coprime(k, q as i64)?;
    require_coprime(h, k)?;
    let table = character_table(q)?;
    let abs2 = central_abs2(q)?;
    let want = match sign {
        Sign::Plus => Parity::Even,
        Sign::Minus => Parity::Odd,
    };
    let sum: Complex64 = (1..table.len())
        .filter(|&t| table.parity(t) == want)
        .map(|t| abs2[t] * table.chi(t, h) * table.chi(t, k).conj())
        .sum();
    real_or_err(sum * (q as f64).sqrt() / (q - 1) as f64, "M±(h, k; q)")
}

/// ½(M*₀(a, q) ± M*₀(−a, q)): the even- and odd-character parts.
pub fn parity_split_mstar(a: i64, q: u64) -> Result<(f64, f64)> {
    let plus = moment_mstar_j(0, a, q)?;
    let minus = moment_mstar_j(0, -a, q)?;
    Ok((0.5 * (plus + minus), 0.5 * (plus - minus)))
}

/// Σ*_{parity} |L(½, χ)|⁴ over primitive characters of one parity.
pub fn fourth_moment(sign: Sign, q: u64) -> Result<f64> {
    require_prime(q)?;
    let table = character_table(q)?;
    let abs2 = central_abs2(q)?;
    let want = match sign {
        Sign::Plus => Parity::Even,
        Sign::Minus => Parity::Odd,
    };
    Ok((1..table.len())
        .filter(|&t| table.parity(t) == want)
        .map(|t| abs2[t].re * abs2[t].re)
        .sum())
}

/// (1/q) Σ_{a=1}^{q−1} |M(a, q)|.
pub fn first_moment_bound_check(q: u64) -> Result<f64> {
    require_prime(q)?;
    if q > 500 {
        return Err(Error::PreconditionFailed(format!("q = {q} exceeds 500")));
    }
    let mut total = 0.0;
    for a in 1..q as i64 {
        total += moment_m(a, q)?.abs();
    }
    Ok(total / q as f64)
}

/// gcd helper re-exported for callers building twists.
pub fn coprime(a: i64, b: i64) -> bool {
    a.gcd(&b) == 1
}
