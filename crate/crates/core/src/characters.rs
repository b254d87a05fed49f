//! Dirichlet characters modulo a prime, realised through a primitive root.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::primes::{is_prime, pow_mod, prime_factors};
use crate::specfun::unit_roots;

/// Parity of a character: χ(−1) = +1 (even) or −1 (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// All φ(q) = q − 1 characters modulo a prime `q`:
/// χ_t(n) = e(t·dlog(n)/(q−1)).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub modulus: u64,
    pub generator: u64,
    /// `dlog[n]` for `1 <= n < q`; `dlog[0]` is unused.
    pub dlog: Vec<u32>,
    pub order: u64,
    roots: Vec<Complex64>,
}

fn smallest_primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = prime_factors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1))
        .expect("a prime modulus has a primitive root")
}

impl CharacterTable {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q > 100_000 {
            return Err(Error::Domain(format!("modulus {q} exceeds 10^5")));
        }
        let generator = smallest_primitive_root(q);
        let order = q - 1;
        let mut dlog = vec![0u32; q as usize];
        let mut x = 1u64;
        for k in 0..order {
            dlog[x as usize] = k as u32;
            x = x * generator % q;
        }
        Ok(CharacterTable {
            modulus: q,
            generator,
            dlog,
            order,
            roots: unit_roots(order as usize),
        })
    }

    /// Number of characters, φ(q).
    pub fn len(&self) -> usize {
        self.order as usize
    }

    pub fn is_empty(&self) -> bool {
        self.order == 0
    }

    /// χ_t(n); zero when q divides n.
    pub fn chi(&self, t: usize, n: i64) -> Complex64 {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        if r == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let k = (t as u64 * self.dlog[r] as u64) % self.order;
        self.roots[k as usize]
    }

    /// Index of the conjugate character χ̄_t = χ_{−t}.
    pub fn conj_index(&self, t: usize) -> usize {
        (self.len() - t % self.len()) % self.len()
    }

    /// dlog(−1) = (q−1)/2, so χ_t is even exactly when t is even.
    pub fn parity(&self, t: usize) -> Parity {
        if self.modulus == 2 || t.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Every non-principal character modulo a prime is primitive.
    pub fn is_primitive(&self, t: usize) -> bool {
        !t.is_multiple_of(self.len())
    }

    /// `[Σ_{r=1}^{q−1} χ_t(r) v_r]_{t}` for `v` indexed by `r = 1..=q`
    /// (the entry at `r = q` is ignored since χ(q) = 0).
    pub fn transform(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        // Reorder along the generator so the sum becomes a length-n DFT.
        let along: Vec<Complex64> = {
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for r in 1..self.modulus as usize {
                out[self.dlog[r] as usize] = v[r - 1];
            }
            out
        };
        (0..n)
            .map(|t| {
                along
                    .iter()
                    .enumerate()
                    .map(|(k, x)| self.roots[(t * k) % n] * x)
                    .sum()
            })
            .collect()
    }
}

/// Build the character table of a prime modulus.
pub fn build_table(q: u64) -> Result<CharacterTable> {
    CharacterTable::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t3 = build_table(3).unwrap();
        assert_eq!(t3.len(), 2);
        assert!((t3.chi(1, 2) + 1.0).norm() < 1e-15);

        let t5 = build_table(5).unwrap();
        assert_eq!(t5.generator, 2);
        assert!((t5.chi(1, 2) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(t5.parity(2), Parity::Even);
        assert_eq!(t5.parity(1), Parity::Odd);

        let t7 = build_table(7).unwrap();
        let primitive: Vec<_> = (0..6).filter(|&t| t7.is_primitive(t)).collect();
        assert_eq!(primitive.len(), 5);
        assert_eq!(primitive.iter().filter(|&&t| t7.parity(t) == Parity::Even).count(), 2);
        assert_eq!(primitive.iter().filter(|&&t| t7.parity(t) == Parity::Odd).count(), 3);

        assert!(matches!(build_table(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn values_and_parity() {
        let t = build_table(11).unwrap();
        for k in 0..10 {
            assert!((t.chi(k, 1) - 1.0).norm() < 1e-15);
            assert_eq!(t.chi(k, 11), Complex64::new(0.0, 0.0));
            let minus_one = t.chi(k, -1);
            let expected = if t.parity(k) == Parity::Even { 1.0 } else { -1.0 };
            assert!((minus_one - expected).norm() < 1e-14);
        }
        for n in 1..11 {
            assert!((t.chi(0, n) - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn dlog_is_a_bijection() {
        let t = build_table(101).unwrap();
        let mut seen = [false; 100];
        for n in 1..101 {
            seen[t.dlog[n] as usize] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn transform_matches_direct_sum() {
        let t = build_table(13).unwrap();
        let v: Vec<Complex64> = (1..=13).map(|r| Complex64::new(r as f64, (r * r) as f64 * 0.1)).collect();
        let fast = t.transform(&v);
        for (k, value) in fast.iter().enumerate() {
            let direct: Complex64 = (1..13).map(|r| t.chi(k, r as i64) * v[r - 1]).sum();
            assert!((value - direct).norm() < 1e-12);
        }
    }
}
