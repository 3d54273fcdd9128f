//! Recursive-descent parser shared by scalar and element text formats.
//!
//! Grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | '+' unary | power
//! power := atom ('^' ['-'] int)?
//! atom  := int | ident ('[' int (',' int)* ']')? | '(' expr ')'
//! ```
//!
//! The identifier `q` always denotes the deformation parameter; other
//! identifiers are resolved by the [`ExprContext`].

use num_bigint::BigInt;

use super::{Poly, RatFuncQ, Rational};
use crate::error::{Error, Result};

pub(crate) trait ExprContext {
    type Value;

    fn scalar(&self, c: RatFuncQ) -> Self::Value;
    fn ident(&self, name: &str, indices: &[i64], pos: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, e: i64, pos: usize) -> Result<Self::Value>;
}

pub(crate) fn parse_with<C: ExprContext>(src: &str, ctx: &C) -> Result<C::Value> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ctx };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a, C> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a C,
}

impl<C: ExprContext> Parser<'_, C> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<C::Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = self.ctx.add(acc, rhs)?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = self.ctx.add(acc, self.ctx.neg(rhs))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<C::Value> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = self.ctx.mul(acc, rhs)?;
            } else if self.peek() == Some(b'/') {
                let pos = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = self.ctx.div(acc, rhs, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<C::Value> {
        if self.eat(b'-') {
            let v = self.unary()?;
            Ok(self.ctx.neg(v))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<C::Value> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let pos = self.pos;
            self.pos += 1;
            let neg = self.eat(b'-');
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return self.ctx.pow(base, if neg { -e } else { e }, pos);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<C::Value> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.ctx.scalar(RatFuncQ::constant(Rational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                if name == "q" {
                    return Ok(self.ctx.scalar(RatFuncQ::from_poly(Poly::q())));
                }
                let mut indices = Vec::new();
                if self.eat(b'[') {
                    loop {
                        let neg = self.eat(b'-');
                        let v: i64 = self.integer()?.try_into().map_err(|_| self.err("index too large"))?;
                        indices.push(if neg { -v } else { v });
                        if self.eat(b']') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                self.ctx.ident(name, &indices, start)
            }
            _ => Err(self.err("expected a number, identifier or '('")),
        }
    }
}

/// Context for plain scalars in Q(q).
pub(crate) struct ScalarContext;

impl ExprContext for ScalarContext {
    type Value = RatFuncQ;

    fn scalar(&self, c: RatFuncQ) -> RatFuncQ {
        c
    }

    fn ident(&self, name: &str, _indices: &[i64], pos: usize) -> Result<RatFuncQ> {
        Err(Error::Parse { pos, msg: format!("unknown identifier '{name}'") })
    }

    fn add(&self, a: RatFuncQ, b: RatFuncQ) -> Result<RatFuncQ> {
        Ok(&a + &b)
    }

    fn neg(&self, a: RatFuncQ) -> RatFuncQ {
        -&a
    }

    fn mul(&self, a: RatFuncQ, b: RatFuncQ) -> Result<RatFuncQ> {
        Ok(&a * &b)
    }

    fn div(&self, a: RatFuncQ, b: RatFuncQ, pos: usize) -> Result<RatFuncQ> {
        a.checked_div(&b).map_err(|_| Error::Parse { pos, msg: "division by zero".into() })
    }

    fn pow(&self, a: RatFuncQ, e: i64, pos: usize) -> Result<RatFuncQ> {
        let base =
            if e < 0 { a.inv().map_err(|_| Error::Parse { pos, msg: "zero to a negative power".into() })? } else { a };
        let mut acc = RatFuncQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}
