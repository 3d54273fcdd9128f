use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{LaurentQ, Poly, Rational};
use crate::error::{Error, Result};

/// Element of the rational function field Q(q), kept in canonical form:
/// numerator and denominator coprime, denominator monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: Poly,
    den: Poly,
}

/// Sign and exponent of a scalar of the form `±q^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedQPower {
    pub negative: bool,
    pub exponent: i64,
}

impl RatFuncQ {
    pub fn zero() -> Self {
        RatFuncQ { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFuncQ { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFuncQ { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// Reduce `n / d` to canonical form.
    pub fn normalize(n: Poly, d: Poly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&n, &d);
        let (n, d) = if g.is_one() { (n, d) } else { (n.div_rem(&g).0, d.div_rem(&g).0) };
        let lc_inv = d.leading().expect("nonzero").recip();
        Ok(RatFuncQ { num: n.scale(&lc_inv), den: d.scale(&lc_inv) })
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFuncQ) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// The Laurent polynomial equal to this element, when the denominator is a power of `q`.
    pub fn to_laurent(&self) -> Option<LaurentQ> {
        let k = self.den.degree()?;
        if self.den.term_count() != 1 {
            return None;
        }
        Some(LaurentQ::from_poly(&self.num).shift(-(k as i64)))
    }

    /// `Some` exactly when the element equals `±q^e`.
    pub fn is_power_of_q(&self) -> Option<SignedQPower> {
        let l = self.to_laurent()?;
        let (c, e) = l.as_monomial()?;
        if c.is_one() {
            Some(SignedQPower { negative: false, exponent: e })
        } else if (-c).is_one() {
            Some(SignedQPower { negative: true, exponent: e })
        } else {
            None
        }
    }

    /// Specialize `q` to a rational value; errors when the denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    fn from_parts_unchecked(num: Poly, den: Poly) -> Self {
        Self::normalize(num, den).expect("denominator of a product of nonzero denominators is nonzero")
    }
}

impl From<&LaurentQ> for RatFuncQ {
    fn from(l: &LaurentQ) -> Self {
        let (shift, p) = l.to_shifted_poly();
        if shift >= 0 {
            RatFuncQ { num: p.shift(shift as usize), den: Poly::one() }
        } else {
            // p is not divisible by q, so p / q^k is already reduced
            RatFuncQ { num: p, den: Poly::monomial(Rational::one(), (-shift) as usize) }
        }
    }
}

impl From<LaurentQ> for RatFuncQ {
    fn from(l: LaurentQ) -> Self {
        RatFuncQ::from(&l)
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.den == rhs.den {
            return RatFuncQ::from_parts_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFuncQ::from_parts_unchecked(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        // cross-cancel first to keep the gcd inputs small
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.div_rem(&g1).0;
        let d = rhs.den.div_rem(&g1).0;
        let c = rhs.num.div_rem(&g2).0;
        let b = self.den.div_rem(&g2).0;
        let num = &a * &c;
        let den = &b * &d;
        let lc_inv = den.leading().expect("nonzero").recip();
        RatFuncQ { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    /// Panics on division by zero; use [`RatFuncQ::checked_div`] otherwise.
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

impl Zero for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: RatFuncQ) -> RatFuncQ {
        &self + &rhs
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.to_laurent() {
            return write!(f, "{l}");
        }
        let simple_num = self.num.term_count() == 1 && self.num.coeffs().iter().all(|c| c.is_integer());
        if simple_num {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        write!(f, "/({})", self.den)
    }
}
