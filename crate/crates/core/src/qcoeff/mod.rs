//! Exact scalars: rationals, Laurent polynomials in `q`, and the field Q(q).
//!
//! The base field is fixed to Q(q) with `q` transcendental, so `q` is never a
//! root of unity. Rewriting in quantum matrices only ever needs
//! [`LaurentQ`]; [`RatFuncQ`] appears where linear systems are solved.

mod laurent;
pub(crate) mod parse;
mod poly;
mod ratfunc;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

pub use laurent::LaurentQ;
pub use poly::Poly;
pub use ratfunc::{RatFuncQ, SignedQPower};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `a * b` in the Laurent ring.
pub fn lq_mul(a: &LaurentQ, b: &LaurentQ) -> LaurentQ {
    a * b
}

/// Canonical representative of `n / d`.
pub fn rf_normalize(n: Poly, d: Poly) -> Result<RatFuncQ> {
    RatFuncQ::normalize(n, d)
}

/// Reports `e` (and the sign) when `a = ±q^e`.
pub fn is_power_of_q(a: &RatFuncQ) -> Option<SignedQPower> {
    a.is_power_of_q()
}

/// Write terms `c*q^e`, given in descending exponent order, as `q^2 - 3/2*q + 1`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let a = c.abs();
        match e {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl FromStr for RatFuncQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_with(s, &parse::ScalarContext)
    }
}

impl FromStr for LaurentQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r: RatFuncQ = s.parse()?;
        r.to_laurent().ok_or_else(|| Error::Parse { pos: 0, msg: format!("'{s}' is not a Laurent polynomial in q") })
    }
}
