//! Exact Dedekind sums and the floating cotangent / Vasyunin sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::error::Result;
use crate::primes::{mod_inverse, require_coprime};

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type ExactRational = BigRational;

/// The sawtooth ((x)) = x − ⌊x⌋ − ½, and 0 at integers.
pub fn sawtooth(x: &ExactRational) -> ExactRational {
    if x.is_integer() {
        return ExactRational::zero();
    }
    x - x.floor() - ExactRational::new(BigInt::one(), BigInt::from(2))
}

/// s(h/k) = Σ_{m=1}^{k−1} ((mh/k))((m/k)).
///
/// With `((n/k)) = (2(n mod k) − k)/(2k)` for `k ∤ n`, the whole sum is an
/// integer over `4k²`, so it is accumulated in `i128` and reduced once.
pub fn dedekind_sum(h: i64, k: u64) -> Result<ExactRational> {
    require_coprime(h, k as i64)?;
    let k_i = k as i128;
    let h_mod = (h as i128).rem_euclid(k_i);
    let mut numerator: i128 = 0;
    for m in 1..k_i {
        let r = (m * h_mod) % k_i;
        numerator += (2 * r - k_i) * (2 * m - k_i);
    }
    Ok(ExactRational::new(BigInt::from(numerator), BigInt::from(4 * k_i * k_i)))
}

/// s(h/k) through the reciprocity law and h ↦ h mod k, in O(log k) steps.
pub fn dedekind_sum_reciprocity(h: i64, k: u64) -> Result<ExactRational> {
    require_coprime(h, k as i64)?;
    let one = || BigInt::one();
    let mut sign = ExactRational::one();
    let mut acc = ExactRational::zero();
    let (mut h, mut k) = ((h as i128).rem_euclid(k as i128), k as i128);
    // s(h,k) = −¼ + (h/k + k/h + 1/(hk))/12 − s(k,h)
    while h > 0 && k > 1 {
        let (hb, kb) = (BigInt::from(h), BigInt::from(k));
        let term = ExactRational::new(-one(), BigInt::from(4))
            + (ExactRational::new(hb.clone(), kb.clone())
                + ExactRational::new(kb.clone(), hb.clone())
                + ExactRational::new(one(), &hb * &kb))
                / ExactRational::from_integer(BigInt::from(12));
        acc += &sign * term;
        sign = -sign;
        let next_h = k % h;
        k = h;
        h = next_h;
    }
    Ok(acc)
}

/// c₀(h/k) = −Σ_{m=1}^{k−1} (m/k) cot(πmh/k).
pub fn cotangent_sum(h: i64, k: u64) -> Result<f64> {
    require_coprime(h, k as i64)?;
    let h_mod = h.rem_euclid(k as i64) as u64;
    let kf = k as f64;
    let mut sum = 0.0;
    for m in 1..k {
        // Reduce mh mod k before scaling so the angle stays in (0, π).
        let r = (m * h_mod) % k;
        let angle = PI * r as f64 / kf;
        sum += (m as f64 / kf) * angle.cos() / angle.sin();
    }
    Ok(-sum)
}

/// V(h/k) = −c₀(h̄/k), the Vasyunin sum.
pub fn vasyunin_sum(h: i64, k: u64) -> Result<f64> {
    let inverse = mod_inverse(h, k as i64)?;
    Ok(-cotangent_sum(inverse, k)?)
}

/// The exact value as an `f64`.
pub fn to_f64(x: &ExactRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` as a reduced exact rational.
pub fn ratio(p: i64, q: i64) -> ExactRational {
    ExactRational::new(BigInt::from(p), BigInt::from(q))
}

/// gcd re-exported for callers that build coprime grids.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(&ratio(0, 1)), ratio(0, 1));
        assert_eq!(sawtooth(&ratio(1, 4)), ratio(-1, 4));
        assert_eq!(sawtooth(&ratio(1, 3)), ratio(-1, 6));
        assert_eq!(sawtooth(&ratio(-1, 3)), ratio(1, 6));
        assert_eq!(sawtooth(&ratio(7, 1)), ratio(0, 1));
    }

    #[test]
    fn dedekind_small_values() {
        assert_eq!(dedekind_sum(1, 3).unwrap(), ratio(1, 18));
        assert_eq!(dedekind_sum(1, 1).unwrap(), ratio(0, 1));
        assert_eq!(dedekind_sum(-1, 3).unwrap(), ratio(-1, 18));
        assert_eq!(dedekind_sum(1, 2).unwrap(), ratio(0, 1));
        assert!(dedekind_sum(2, 4).is_err());
    }

    #[test]
    fn direct_matches_sawtooth_definition() {
        for k in 1..25i64 {
            for h in -k..2 * k {
                if gcd(h, k) != 1 {
                    continue;
                }
                let mut by_definition = ExactRational::zero();
                for m in 1..k {
                    by_definition += sawtooth(&ratio(m * h, k)) * sawtooth(&ratio(m, k));
                }
                assert_eq!(dedekind_sum(h, k as u64).unwrap(), by_definition, "s({h}/{k})");
            }
        }
    }

    #[test]
    fn reciprocity_law() {
        for k in 1..=200i64 {
            for h in 1..k {
                if gcd(h, k) != 1 {
                    continue;
                }
                let lhs = dedekind_sum(h, k as u64).unwrap() + dedekind_sum(k, h as u64).unwrap();
                let rhs = ratio(-1, 4) + (ratio(h, k) + ratio(k, h) + ratio(1, h * k)) / ratio(12, 1);
                assert_eq!(lhs, rhs, "h = {h}, k = {k}");
                assert_eq!(dedekind_sum_reciprocity(h, k as u64).unwrap(), dedekind_sum(h, k as u64).unwrap());
            }
        }
    }

    #[test]
    fn cotangent_values() {
        assert!(cotangent_sum(1, 2).unwrap().abs() < 1e-15);
        assert!((cotangent_sum(1, 3).unwrap() - 0.192_450_089_729_875_3).abs() < 1e-15);
        assert_eq!(cotangent_sum(1, 1).unwrap(), 0.0);
        assert!((vasyunin_sum(1, 3).unwrap() + 0.192_450_089_729_875_3).abs() < 1e-15);
        assert!(vasyunin_sum(1, 2).unwrap().abs() < 1e-15);
        // c₀ is odd in h.
        assert!((cotangent_sum(-2, 7).unwrap() + cotangent_sum(2, 7).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn exact_to_float() {
        assert_eq!(to_f64(&ratio(1, 18)), 1.0 / 18.0);
        assert_eq!(to_f64(&ratio(-3, 4)), -0.75);
    }
}
