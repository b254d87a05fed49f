//! `eval <object> <params…>`: one value, printed as a CSV line.

use twisted_moments::arithsums::{cotangent_sum, dedekind_sum};
use twisted_moments::cfrac::{expand, f_pm};
use twisted_moments::estermann::{estermann_d, eta_value, psi_n};
use twisted_moments::figures::format_value;
use twisted_moments::moments::{moment_m, moment_mstar};
use twisted_moments::{Complex64, Sign};

use crate::{complex_csv, Failure};

const USAGE: &str = "M a q | Mstar s z a q | D s alpha h k | eta a q | psi N a q [+|-] | f +|- a q | dedekind h k | c0 h k | cf a q";

fn arity(object: &str, params: &[String], want: std::ops::RangeInclusive<usize>) -> Result<(), Failure> {
    if want.contains(&params.len()) {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{object} takes {want:?} parameters, got {}; usage: {USAGE}", params.len())))
    }
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T, Failure>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| Failure::Invalid(format!("'{s}' is not an integer: {e}")))
}

fn complex(s: &str) -> Result<Complex64, Failure> {
    s.parse().map_err(|e| Failure::Invalid(format!("'{s}' is not a number: {e}")))
}

fn sign(s: &str) -> Result<Sign, Failure> {
    Ok(s.parse()?)
}

pub fn run(object: &str, p: &[String]) -> Result<String, Failure> {
    Ok(match object {
        "M" => {
            arity(object, p, 2..=2)?;
            format_value(moment_m(int(&p[0])?, int(&p[1])?)?)
        }
        "Mstar" => {
            arity(object, p, 4..=4)?;
            complex_csv(moment_mstar(complex(&p[0])?, complex(&p[1])?, int(&p[2])?, int(&p[3])?)?)
        }
        "D" => {
            arity(object, p, 4..=4)?;
            complex_csv(estermann_d(complex(&p[0])?, complex(&p[1])?, int(&p[2])?, int(&p[3])?)?)
        }
        "eta" => {
            arity(object, p, 2..=2)?;
            complex_csv(eta_value(int(&p[0])?, int(&p[1])?)?)
        }
        "psi" => {
            arity(object, p, 3..=4)?;
            let sg = p.get(3).map(|s| sign(s)).transpose()?.unwrap_or(Sign::Plus);
            format_value(psi_n(int(&p[0])?, int(&p[1])?, int(&p[2])?, sg)?)
        }
        "f" => {
            arity(object, p, 3..=3)?;
            format_value(f_pm(sign(&p[0])?, int(&p[1])?, int(&p[2])?)?)
        }
        "dedekind" => {
            arity(object, p, 2..=2)?;
            dedekind_sum(int(&p[0])?, int(&p[1])?)?.to_string()
        }
        "c0" => {
            arity(object, p, 2..=2)?;
            format_value(cotangent_sum(int(&p[0])?, int(&p[1])?)?)
        }
        "cf" => {
            arity(object, p, 2..=2)?;
            expand(int(&p[0])?, int(&p[1])?)?.to_string()
        }
        other => return Err(Failure::Invalid(format!("unknown object '{other}'; usage: {USAGE}"))),
    })
}
