//! Data behind the two scatter plots: M(a, q) and the residuals ψ̃_N(a/q)
//! over prime pairs `a < q`.
//!
//! Rows come out ordered by `q`, then `a` (and, for the residuals, by `N`
//! first), regardless of how many threads computed them.

use rayon::prelude::*;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::moments::moment_m;
use crate::primes::primes_up_to;
use crate::reciprocity::psi_tilde;
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub a: u64,
    pub q: u64,
    pub m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRow {
    pub a: u64,
    pub q: u64,
    pub n: usize,
    pub psi: f64,
}

/// Restricts the residual plot to fractions within `width` of `num/den`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub num: u64,
    pub den: u64,
    pub width: f64,
}

impl Window {
    pub fn new(num: u64, den: u64, width: f64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Domain(format!("window centre {num}/{den} must lie in [0, 1]")));
        }
        if !(width > 0.0) {
            return Err(Error::Domain(format!("window width {width} must be positive")));
        }
        Ok(Window { num, den, width })
    }

    pub fn contains(&self, a: u64, q: u64) -> bool {
        (a as f64 / q as f64 - self.num as f64 / self.den as f64).abs() <= self.width
    }
}

fn check_qmax(qmax: u64) -> Result<()> {
    if qmax < 3 {
        return Err(Error::Domain(format!("qmax = {qmax} must be at least 3")));
    }
    Ok(())
}

/// Prime pairs `a < q ≤ qmax`, grouped by `q` in ascending order.
fn pairs_by_modulus(qmax: u64, window: Option<&Window>) -> Vec<(u64, Vec<u64>)> {
    let primes = primes_up_to(qmax);
    primes
        .iter()
        .map(|&q| {
            let numerators = primes.iter().copied().take_while(|&a| a < q).filter(|&a| window.is_none_or(|w| w.contains(a, q))).collect();
            (q, numerators)
        })
        .filter(|(_, v): &(u64, Vec<u64>)| !v.is_empty())
        .collect()
}

/// M(a, q) for all primes `a < q ≤ qmax`.
pub fn moment_rows(qmax: u64) -> Result<Vec<MomentRow>> {
    check_qmax(qmax)?;
    let groups = pairs_by_modulus(qmax, None);
    let rows: Result<Vec<Vec<MomentRow>>> = groups
        .par_iter()
        .map(|(q, numerators)| numerators.iter().map(|&a| Ok(MomentRow { a, q: *q, m: moment_m(a as i64, *q)? })).collect())
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// ψ̃_N(a/q) for each `N` in `ns` and all primes `a < q ≤ qmax`, optionally
/// only inside a window around a rational.
pub fn residual_rows(qmax: u64, ns: &[usize], window: Option<Window>) -> Result<Vec<ResidualRow>> {
    check_qmax(qmax)?;
    if ns.is_empty() {
        return Err(Error::Domain("no values of N requested".into()));
    }
    let groups = pairs_by_modulus(qmax, window.as_ref());
    let mut out = Vec::new();
    for &n in ns {
        let rows: Result<Vec<Vec<ResidualRow>>> = groups
            .par_iter()
            .map(|(q, numerators)| {
                numerators
                    .iter()
                    .map(|&a| Ok(ResidualRow { a, q: *q, n, psi: psi_tilde(a, *q, Sign::Plus, n)? }))
                    .collect()
            })
            .collect();
        out.extend(rows?.into_iter().flatten());
    }
    Ok(out)
}

/// `a/q` in decimal with `digits` places, correctly rounded, computed
/// exactly in integer arithmetic.
pub fn decimal_fraction(a: u64, q: u64, digits: u32) -> String {
    assert!(q > 0 && digits <= 30);
    let scale = 10u128.pow(digits);
    let scaled = (2 * a as u128 * scale + q as u128) / (2 * q as u128);
    format!("{}.{:0width$}", scaled / scale, scaled % scale, width = digits as usize)
}

/// A float with 17 significant digits, which round-trips every `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_moment_csv<W: Write>(rows: &[MomentRow], mut out: W) -> io::Result<()> {
    out.write_all(b"a,q,x,M\n")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.a, r.q, decimal_fraction(r.a, r.q, 20), format_value(r.m))?;
    }
    out.flush()
}

pub fn write_residual_csv<W: Write>(rows: &[ResidualRow], mut out: W) -> io::Result<()> {
    out.write_all(b"a,q,x,N,psi_tilde\n")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.a, r.q, decimal_fraction(r.a, r.q, 20), r.n, format_value(r.psi))?;
    }
    out.flush()
}
