//! Twisted second moments of Dirichlet L-functions at the central point,
//! the Estermann function, and the exact reciprocity formulas linking them.
//!
//! Every identity is implemented twice where possible: once through direct
//! character sums (the [`moments`] module) and once through the Estermann
//! function or continued fractions ([`estermann`], [`cfrac`],
//! [`reciprocity`]), so that the two sides can be compared numerically.

pub mod arithsums;
pub mod cfrac;
pub mod characters;
pub mod contour;
pub mod error;
pub mod estermann;
pub mod figures;
pub mod moments;
pub mod primes;
pub mod reciprocity;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// The scalar type of every analytic quantity in the crate.
pub type ComplexValue = Complex64;

/// A sign `±` attached to a twist or to a parity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `Plus` for even exponents, `Minus` for odd ones, times `self`.
    pub fn times_power_of_minus_one(self, j: usize) -> Sign {
        if j.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "even" => Ok(Sign::Plus),
            "-" | "minus" | "odd" => Ok(Sign::Minus),
            other => Err(Error::Domain(format!("unknown sign {other:?}"))),
        }
    }
}
