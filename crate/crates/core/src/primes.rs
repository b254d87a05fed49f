//! Small integer utilities: primality, sieving, modular inverses.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `p` with `lo <= p <= hi`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        if p as u64 >= lo {
            out.push(p as u64);
        }
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
    }
    out
}

pub fn primes_up_to(hi: u64) -> Vec<u64> {
    primes_between(2, hi)
}

/// Distinct prime factors of `n`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// The inverse of `a` modulo `m` in `0..m`; `m = 1` gives 0.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m <= 0 {
        return Err(Error::Domain(format!("modulus {m} must be positive")));
    }
    let ext = a.rem_euclid(m).extended_gcd(&m);
    if ext.gcd != 1 {
        return Err(Error::NotCoprime(a, m));
    }
    Ok(ext.x.rem_euclid(m))
}

pub fn require_coprime(a: i64, b: i64) -> Result<()> {
    if a.gcd(&b) == 1 {
        Ok(())
    } else {
        Err(Error::NotCoprime(a, b))
    }
}

pub fn require_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}
