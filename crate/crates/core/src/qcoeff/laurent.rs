use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Poly, Rational};

/// Laurent polynomial in `q` with rational coefficients.
///
/// This is the coefficient ring of the rewriting engine: every defining
/// relation of quantum matrices, and every torus commutation, has Laurent
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentQ {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// `c * q^e`
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentQ { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `q - q^{-1}`, the scalar in the diagonal relation.
    pub fn q_minus_q_inv() -> Self {
        &Self::q() - &Self::q_pow(-1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term `(c, e)` when this is `c * q^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }

    pub(crate) fn leading_is_negative(&self) -> bool {
        self.terms.values().next_back().is_some_and(Signed::is_negative)
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQ { terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentQ { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        LaurentQ { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Inverse when this is a unit of the Laurent ring, i.e. `c * q^e` with `c != 0`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero() || self.min_exponent().is_none_or(|e| e >= 0), "negative power of zero");
        self.terms.iter().map(|(&e, c)| c * x.pow(e as i32)).fold(Rational::zero(), |a, b| a + b)
    }

    /// Write as `q^shift * p(q)` with `p` a polynomial not divisible by `q`.
    pub fn to_shifted_poly(&self) -> (i64, Poly) {
        let Some(lo) = self.min_exponent() else {
            return (0, Poly::zero());
        };
        let hi = self.max_exponent().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (&e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (lo, Poly::from_coeffs(coeffs))
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(e, c)| (e as i64, c.clone())))
    }
}

impl From<i64> for LaurentQ {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        self + &(-rhs)
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, self.terms.iter().rev().map(|(&e, c)| (e, c)))
    }
}
