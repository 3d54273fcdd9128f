//! The quantum torus on generators `t_ij`, `(i,j) ∈ Y_λ`, with
//! `t_ij t_il = q t_il t_ij` (`j < l`), `t_ij t_kj = q t_kj t_ij` (`i < k`),
//! and all other pairs commuting.
//!
//! Monomials are stored as exponent vectors in row-major order over `Y_λ`,
//! meaning the ordered product `t_1^{a_1} t_2^{a_2} ...`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::qcoeff::{LaurentQ, Rational};
use crate::qmatrix::{write_combination, HWeight, MatrixShape, Partition, VarIndex};

pub type Exponents = Vec<i64>;

#[derive(Debug, PartialEq, Eq)]
pub struct QTorus {
    lambda: Partition,
    vars: Vec<VarIndex>,
    index: HashMap<VarIndex, usize>,
    /// `t_u t_v = q^{c[u][v]} t_v t_u`
    c: Vec<Vec<i64>>,
}

impl QTorus {
    pub fn new(lambda: &Partition) -> Arc<Self> {
        let lambda = lambda.trimmed();
        let vars: Vec<VarIndex> = lambda.squares().collect();
        let index = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let k = vars.len();
        let mut c = vec![vec![0; k]; k];
        for u in 0..k {
            for v in u + 1..k {
                if vars[u].row == vars[v].row || vars[u].col == vars[v].col {
                    c[u][v] = 1;
                    c[v][u] = -1;
                }
            }
        }
        Arc::new(QTorus { lambda, vars, index, c })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn vars(&self) -> &[VarIndex] {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// Commutation exponent `c(a, b)` with `t_a t_b = q^{c(a,b)} t_b t_a`.
    pub fn commutation(&self, a: VarIndex, b: VarIndex) -> Option<i64> {
        Some(self.c[*self.index.get(&a)?][*self.index.get(&b)?])
    }

    fn slot(&self, v: VarIndex) -> Result<usize> {
        match self.index.get(&v) {
            Some(&k) => Ok(k),
            None => domain(format!("t[{},{}] is not a generator for {}", v.row, v.col, self.lambda)),
        }
    }

    /// `q`-exponent picked up when merging `t^a t^b` into `t^{a+b}`.
    pub fn merge_exponent(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0;
        for (u, &au) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (v, &bv) in b.iter().enumerate().take(u).filter(|(_, &x)| x != 0) {
                e += au * bv * self.c[u][v];
            }
        }
        e
    }

    /// Torus weight of a monomial: row and column exponent sums.
    pub fn weight(&self, a: &[i64]) -> HWeight {
        let rows = self.lambda.len().max(1);
        let cols = self.lambda.part(1).max(rows);
        let mut w = HWeight::zero(MatrixShape::new(rows, cols).expect("rows <= cols"));
        for (k, &e) in a.iter().enumerate() {
            w.add_var(self.vars[k], e);
        }
        w
    }

    fn mono_text(&self, a: &[i64]) -> Option<String> {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| {
                let v = self.vars[k];
                if e == 1 {
                    format!("t[{},{}]", v.row, v.col)
                } else {
                    format!("t[{},{}]^{e}", v.row, v.col)
                }
            })
            .collect();
        (!parts.is_empty()).then(|| parts.join("*"))
    }
}

/// Element of the quantum torus: exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    torus: Arc<QTorus>,
    terms: BTreeMap<Exponents, LaurentQ>,
}

impl TorusElement {
    pub fn zero(torus: &Arc<QTorus>) -> Self {
        TorusElement { torus: torus.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(torus: &Arc<QTorus>, c: LaurentQ) -> Self {
        Self::monomial(torus, vec![0; torus.rank()], c)
    }

    pub fn one(torus: &Arc<QTorus>) -> Self {
        Self::scalar(torus, LaurentQ::one())
    }

    pub fn monomial(torus: &Arc<QTorus>, exps: Exponents, c: LaurentQ) -> Self {
        let mut e = Self::zero(torus);
        if !c.is_zero() {
            e.terms.insert(exps, c);
        }
        e
    }

    /// `t_v^e`.
    pub fn gen_pow(torus: &Arc<QTorus>, v: VarIndex, e: i64) -> Result<Self> {
        let mut exps = vec![0; torus.rank()];
        exps[torus.slot(v)?] = e;
        Ok(Self::monomial(torus, exps, LaurentQ::one()))
    }

    pub fn gen(torus: &Arc<QTorus>, v: VarIndex) -> Result<Self> {
        Self::gen_pow(torus, v, 1)
    }

    pub fn torus(&self) -> &Arc<QTorus> {
        &self.torus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Is this `t_v` on the nose?
    pub fn is_generator(&self, v: VarIndex) -> bool {
        Self::gen(&self.torus, v).is_ok_and(|g| &g == self)
    }

    fn add_term(&mut self, e: Exponents, c: LaurentQ) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TorusElement) -> TorusElement {
        self.add(&rhs.scale(&-LaurentQ::one()))
    }

    pub fn scale(&self, c: &LaurentQ) -> TorusElement {
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).filter(|(_, a)| !a.is_zero()).collect();
        TorusElement { torus: self.torus.clone(), terms }
    }

    pub fn mul(&self, rhs: &TorusElement) -> TorusElement {
        let mut out = Self::zero(&self.torus);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e = self.torus.merge_exponent(a, b);
                let sum: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(sum, &(ca * cb) * &LaurentQ::q_pow(e));
            }
        }
        out
    }

    /// Common weight of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_weight(&self) -> Option<HWeight> {
        let mut it = self.terms.keys().map(|e| self.torus.weight(e));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Specialize `q` to a nonzero rational.
    pub fn eval_q(&self, q0: &Rational) -> SpecializedTorusElement {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = c.eval(q0);
            if !num_traits::Zero::is_zero(&v) {
                terms.insert(e.clone(), v);
            }
        }
        SpecializedTorusElement { torus: self.torus.clone(), q0: q0.clone(), terms }
    }
}

/// Torus element with `q` replaced by a rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedTorusElement {
    torus: Arc<QTorus>,
    q0: Rational,
    terms: BTreeMap<Exponents, Rational>,
}

impl SpecializedTorusElement {
    pub fn q0(&self) -> Rational {
        self.q0.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn combine(&self, rhs: &Self, sign: i64) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let v = terms.remove(e).unwrap_or_default() + c * Rational::from_integer(sign.into());
            if !num_traits::Zero::is_zero(&v) {
                terms.insert(e.clone(), v);
            }
        }
        SpecializedTorusElement { torus: self.torus.clone(), q0: self.q0.clone(), terms }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, -1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let terms = if num_traits::Zero::is_zero(c) {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect()
        };
        SpecializedTorusElement { torus: self.torus.clone(), q0: self.q0.clone(), terms }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out =
            SpecializedTorusElement { torus: self.torus.clone(), q0: self.q0.clone(), terms: BTreeMap::new() };
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e = self.torus.merge_exponent(a, b);
                let sum: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let v = ca * cb * self.q0.pow(e as i32);
                let single = SpecializedTorusElement {
                    torus: self.torus.clone(),
                    q0: self.q0.clone(),
                    terms: [(sum, v)].into(),
                };
                out = out.add(&single);
            }
        }
        out
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().rev().map(|(e, c)| (self.torus.mono_text(e), c)))
    }
}

/// See [`TorusElement::mul`].
pub fn torus_mul(a: &TorusElement, b: &TorusElement) -> TorusElement {
    a.mul(b)
}
