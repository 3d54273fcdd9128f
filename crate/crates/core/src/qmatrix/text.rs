//! Canonical text and JSON forms of elements.
//!
//! Text form: terms in increasing PBW order, e.g.
//! `x[1,1]*x[2,2] - (q - q^-1)*x[1,2]*x[2,1]`. Parsing evaluates the
//! expression in the algebra, so any word is accepted and printing the
//! result gives the canonical form back.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Element, MatrixAlgebra, MatrixShape, Partition, PbwMonomial, VarIndex};
use crate::error::{Error, Result};
use crate::qcoeff::parse::{parse_with, ExprContext};
use crate::qcoeff::{LaurentQ, RatFuncQ};

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.exponents().iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn coeff_text(c: &LaurentQ) -> Option<String> {
    if c.is_one() {
        None
    } else if c.term_count() == 1 {
        Some(c.to_string())
    } else {
        Some(format!("({c})"))
    }
}

/// `c1*m1 + c2*m2 - ...`, with `None` marking the empty monomial.
pub(crate) fn write_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Option<String>, &'a LaurentQ)>,
) -> fmt::Result {
    let mut empty = true;
    for (k, (m, c)) in terms.enumerate() {
        empty = false;
        let neg = c.leading_is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (k == 0, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        match (coeff_text(&abs), m) {
            (None, None) => write!(f, "1")?,
            (None, Some(m)) => write!(f, "{m}")?,
            (Some(s), None) => write!(f, "{s}")?,
            (Some(s), Some(m)) => write!(f, "{s}*{m}")?,
        }
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms().map(|(m, c)| ((!m.is_one()).then(|| m.to_string()), c)))
    }
}

struct ElementContext<'a> {
    alg: &'a MatrixAlgebra,
}

impl ElementContext<'_> {
    fn as_unit_scalar(e: &Element) -> Option<LaurentQ> {
        match e.term_count() {
            1 => {
                let (m, c) = e.terms().next()?;
                if m.is_one() {
                    c.unit_inverse()
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl ExprContext for ElementContext<'_> {
    type Value = Element;

    fn scalar(&self, c: RatFuncQ) -> Element {
        // the scalar grammar only builds integers and q, which are Laurent
        self.alg.scalar(c.to_laurent().expect("integer or q literal"))
    }

    fn ident(&self, name: &str, indices: &[i64], pos: usize) -> Result<Element> {
        if name != "x" || indices.len() != 2 || indices.iter().any(|&i| i < 1) {
            return Err(Error::Parse { pos, msg: format!("expected a generator x[i,j], found '{name}'") });
        }
        self.alg.gen(indices[0] as usize, indices[1] as usize)
    }

    fn add(&self, a: Element, b: Element) -> Result<Element> {
        a.try_add(&b)
    }

    fn neg(&self, a: Element) -> Element {
        -&a
    }

    fn mul(&self, a: Element, b: Element) -> Result<Element> {
        a.try_mul(&b)
    }

    fn div(&self, a: Element, b: Element, pos: usize) -> Result<Element> {
        let inv = Self::as_unit_scalar(&b)
            .ok_or_else(|| Error::Parse { pos, msg: "can only divide by a nonzero c*q^e".into() })?;
        Ok(a.scale(&inv))
    }

    fn pow(&self, a: Element, e: i64, pos: usize) -> Result<Element> {
        let base = if e < 0 {
            let inv = Self::as_unit_scalar(&a)
                .ok_or_else(|| Error::Parse { pos, msg: "negative powers only of c*q^e".into() })?;
            self.alg.scalar(inv)
        } else {
            a
        };
        let mut acc = self.alg.one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }
}

impl Element {
    /// Parse and evaluate an expression in the generators of `alg`.
    pub fn parse(src: &str, alg: &MatrixAlgebra) -> Result<Element> {
        parse_with(src, &ElementContext { alg })
    }

    pub fn to_json(&self) -> ElementJson {
        let shape = self.shape();
        ElementJson {
            shape: [shape.m(), shape.n()],
            partition: self.algebra().partition().map(|p| p.parts().to_vec()),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exponents: m.exponents().iter().map(|&(v, e)| [v.row, v.col, e as usize]).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &ElementJson) -> Result<Element> {
        let shape = MatrixShape::new(doc.shape[0], doc.shape[1])?;
        let alg = match &doc.partition {
            None => MatrixAlgebra::quantum_matrices(shape),
            Some(p) => MatrixAlgebra::partition_in(shape, Partition::new(p.clone())?)?,
        };
        let mut terms = BTreeMap::new();
        for t in &doc.terms {
            let c: LaurentQ = t.coeff.parse()?;
            let mut pairs = Vec::new();
            for &[i, j, e] in &t.exponents {
                let v = VarIndex::new(i, j);
                alg.check_var(v)?;
                pairs.push((v, e as u32));
            }
            super::add_into(&mut terms, PbwMonomial::from_exponents(pairs), &c);
        }
        Ok(Element::from_terms(alg, terms))
    }
}

/// JSON document for an element: exponent triples `[row, col, exponent]` per term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub shape: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exponents: Vec<[usize; 3]>,
}
