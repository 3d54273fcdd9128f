//! PBW normal forms in quantum matrices `O_q(M_{m,n})` and their partition
//! subalgebras `A_λ`.
//!
//! Monomials are products of generators in increasing lexicographic order of
//! `(row, col)`; every element has a unique expansion in these monomials.

mod rewrite;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::qcoeff::{LaurentQ, Rational};

pub use rewrite::normal_form_by;
pub(crate) use text::write_combination;
pub use text::ElementJson;

/// Dimensions of the generic matrix, always with `1 <= m <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixShape {
    m: usize,
    n: usize,
}

impl MatrixShape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return domain("matrix shape needs at least one row");
        }
        if m > n {
            return domain(format!("shape ({m},{n}) has m > n; transpose it first (see MatrixShape::oriented)"));
        }
        Ok(MatrixShape { m, n })
    }

    /// Orient an arbitrary shape so that `m <= n`, reporting whether a transpose was needed.
    pub fn oriented(rows: usize, cols: usize) -> Result<(Self, bool)> {
        if rows <= cols {
            Ok((Self::new(rows, cols)?, false))
        } else {
            Ok((Self::new(cols, rows)?, true))
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: VarIndex) -> bool {
        (1..=self.m).contains(&v.row) && (1..=self.n).contains(&v.col)
    }
}

/// Weakly decreasing list of non-negative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts {parts:?} are not weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `rows` copies of `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of stored parts, zeros included.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Number of squares.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1).and_then(|k| self.0.get(k)).copied().unwrap_or(0)
    }

    pub fn trimmed(&self) -> Partition {
        let k = self.0.iter().rposition(|&p| p > 0).map_or(0, |k| k + 1);
        Partition(self.0[..k].to_vec())
    }

    pub fn contains(&self, v: VarIndex) -> bool {
        v.row >= 1 && v.col >= 1 && v.col <= self.part(v.row)
    }

    /// Squares in row-major order.
    pub fn squares(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.0.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |c| VarIndex::new(r + 1, c)))
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        Partition((1..=cols).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.trimmed().len() <= rows && self.part(1) <= cols
    }

    /// All partitions fitting inside a `rows x cols` box, each with exactly `rows` parts.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if prefix.len() == rows {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (0..=max).rev() {
                prefix.push(p);
                rec(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Generator `x[row, col]`, 1-based. Ordered lexicographically, rows major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarIndex {
    pub row: usize,
    pub col: usize,
}

impl VarIndex {
    pub const fn new(row: usize, col: usize) -> Self {
        VarIndex { row, col }
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

/// Which defining relation governs a pair of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationClass {
    /// `x_ij x_il = q x_il x_ij` for `j < l`.
    SameRow,
    /// `x_ij x_kj = q x_kj x_ij` for `i < k`.
    SameCol,
    /// `x_ij x_kl = x_kl x_ij` for `k < i`, `j < l`.
    Antidiagonal,
    /// `x_ij x_kl - x_kl x_ij = (q - q^-1) x_il x_kj` for `i < k`, `j < l`.
    Diagonal,
    Equal,
}

/// Classify the unordered pair `{a, b}`.
pub fn relation_class(a: VarIndex, b: VarIndex) -> RelationClass {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo == hi {
        RelationClass::Equal
    } else if lo.row == hi.row {
        RelationClass::SameRow
    } else if lo.col == hi.col {
        RelationClass::SameCol
    } else if lo.col > hi.col {
        RelationClass::Antidiagonal
    } else {
        RelationClass::Diagonal
    }
}

/// Torus weight: one row exponent per row and one column exponent per column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HWeight {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
}

impl HWeight {
    pub fn zero(shape: MatrixShape) -> Self {
        HWeight { rows: vec![0; shape.m], cols: vec![0; shape.n] }
    }

    pub fn of_var(shape: MatrixShape, v: VarIndex) -> Self {
        let mut w = Self::zero(shape);
        w.rows[v.row - 1] = 1;
        w.cols[v.col - 1] = 1;
        w
    }

    pub fn add_var(&mut self, v: VarIndex, times: i64) {
        self.rows[v.row - 1] += times;
        self.cols[v.col - 1] += times;
    }
}

impl Add for &HWeight {
    type Output = HWeight;
    fn add(self, rhs: &HWeight) -> HWeight {
        HWeight {
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a + b).collect(),
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Ordered PBW monomial: generators with positive exponents, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(Vec<(VarIndex, u32)>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Build from a word that is already sorted (weakly increasing).
    pub fn from_sorted_word(word: &[VarIndex]) -> Self {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        let mut out: Vec<(VarIndex, u32)> = Vec::new();
        for &v in word {
            match out.last_mut() {
                Some((last, e)) if *last == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        PbwMonomial(out)
    }

    /// Build from `(generator, exponent)` pairs in any order; zero exponents are dropped.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (VarIndex, u32)>) -> Self {
        let mut map: BTreeMap<VarIndex, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        PbwMonomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(VarIndex, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarIndex) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// The generators with repetition, in PBW order.
    pub fn word(&self) -> Vec<VarIndex> {
        self.0.iter().flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize)).collect()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

/// Torus weight of a monomial.
pub fn h_weight(mono: &PbwMonomial, shape: MatrixShape) -> HWeight {
    let mut w = HWeight::zero(shape);
    for &(v, e) in mono.exponents() {
        w.add_var(v, e as i64);
    }
    w
}

/// The ambient algebra an element lives in: full quantum matrices of a
/// shape, or the partition subalgebra `A_λ` inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixAlgebra {
    shape: MatrixShape,
    partition: Option<Partition>,
}

impl MatrixAlgebra {
    pub fn quantum_matrices(shape: MatrixShape) -> Self {
        MatrixAlgebra { shape, partition: None }
    }

    /// `A_λ`, embedded in quantum matrices with `len(λ)` rows and
    /// `max(λ_1, len(λ))` columns. `A_()` is the base field.
    pub fn partition_subalgebra(lambda: Partition) -> Self {
        let rows = lambda.len().max(1);
        let cols = lambda.part(1).max(rows);
        let shape = MatrixShape { m: rows, n: cols };
        MatrixAlgebra { shape, partition: Some(lambda) }
    }

    /// `A_λ` inside a given ambient shape.
    pub fn partition_in(shape: MatrixShape, lambda: Partition) -> Result<Self> {
        if lambda.len() > shape.m || lambda.part(1) > shape.n {
            return domain(format!("partition {lambda} does not fit in shape ({},{})", shape.m, shape.n));
        }
        Ok(MatrixAlgebra { shape, partition: Some(lambda) })
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn contains(&self, v: VarIndex) -> bool {
        self.shape.contains(v) && self.partition.as_ref().is_none_or(|p| p.contains(v))
    }

    /// Generators in lexicographic order.
    pub fn variables(&self) -> Vec<VarIndex> {
        let mut out = Vec::new();
        for i in 1..=self.shape.m {
            for j in 1..=self.shape.n {
                let v = VarIndex::new(i, j);
                if self.contains(v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn check_var(&self, v: VarIndex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            domain(format!("{v} is not a generator of {self}"))
        }
    }

    pub fn zero(&self) -> Element {
        Element { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Element {
        self.scalar(LaurentQ::one())
    }

    pub fn scalar(&self, c: LaurentQ) -> Element {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(PbwMonomial::one(), c);
        }
        e
    }

    pub fn gen(&self, row: usize, col: usize) -> Result<Element> {
        let v = VarIndex::new(row, col);
        self.check_var(v)?;
        Ok(self.monomial(PbwMonomial::from_sorted_word(&[v]), LaurentQ::one()))
    }

    pub(crate) fn monomial(&self, mono: PbwMonomial, c: LaurentQ) -> Element {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(mono, c);
        }
        e
    }

    /// Expand `scalar * w_1 w_2 ... w_k` in the PBW basis.
    pub fn normal_form(&self, word: &[VarIndex], scalar: LaurentQ) -> Result<Element> {
        for &v in word {
            self.check_var(v)?;
        }
        let terms = rewrite::normal_form(std::iter::once((word.to_vec(), scalar)));
        Ok(Element { alg: self.clone(), terms })
    }

    /// Expand `Σ c_k w_k` in the PBW basis.
    pub fn normal_form_sum(&self, words: Vec<(Vec<VarIndex>, LaurentQ)>) -> Result<Element> {
        for v in words.iter().flat_map(|(w, _)| w) {
            self.check_var(*v)?;
        }
        Ok(Element { alg: self.clone(), terms: rewrite::normal_form(words) })
    }

    /// Number of PBW monomials of total degree `d`.
    pub fn graded_dimension(&self, d: u32) -> usize {
        self.pbw_basis(d).len()
    }

    /// All PBW monomials of total degree `d`, in increasing order.
    pub fn pbw_basis(&self, d: u32) -> Vec<PbwMonomial> {
        fn rec(vars: &[VarIndex], start: usize, left: u32, word: &mut Vec<VarIndex>, out: &mut Vec<PbwMonomial>) {
            if left == 0 {
                out.push(PbwMonomial::from_sorted_word(word));
                return;
            }
            for k in start..vars.len() {
                word.push(vars[k]);
                rec(vars, k, left - 1, word, out);
                word.pop();
            }
        }
        let vars = self.variables();
        let mut out = Vec::new();
        rec(&vars, 0, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.partition {
            None => write!(f, "O_q(M_{{{},{}}})", self.shape.m, self.shape.n),
            Some(p) => write!(f, "A_{p}"),
        }
    }
}

/// Number of PBW monomials of degree `d` in the free variables of `alg`.
pub fn graded_dimension(alg: &MatrixAlgebra, d: u32) -> usize {
    alg.graded_dimension(d)
}

/// Sparse linear combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    alg: MatrixAlgebra,
    terms: BTreeMap<PbwMonomial, LaurentQ>,
}

impl Element {
    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.alg
    }

    pub fn shape(&self) -> MatrixShape {
        self.alg.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &LaurentQ)> {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<PbwMonomial, LaurentQ> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &PbwMonomial) -> LaurentQ {
        self.terms.get(mono).cloned().unwrap_or_else(LaurentQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn from_terms(alg: MatrixAlgebra, terms: BTreeMap<PbwMonomial, LaurentQ>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element { alg, terms }
    }

    fn check_same(&self, rhs: &Element) -> Result<()> {
        if self.alg == rhs.alg {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{} vs {}", self.alg, rhs.alg)))
        }
    }

    pub fn try_add(&self, rhs: &Element) -> Result<Element> {
        self.check_same(rhs)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_into(&mut terms, m.clone(), c);
        }
        Ok(Element { alg: self.alg.clone(), terms })
    }

    pub fn try_sub(&self, rhs: &Element) -> Result<Element> {
        self.try_add(&-rhs)
    }

    pub fn scale(&self, c: &LaurentQ) -> Element {
        if c.is_zero() {
            return self.alg.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).filter(|(_, a)| !a.is_zero()).collect();
        Element { alg: self.alg.clone(), terms }
    }

    /// Product in PBW normal form.
    pub fn try_mul(&self, rhs: &Element) -> Result<Element> {
        self.check_same(rhs)?;
        let words = self.terms.iter().flat_map(|(m1, c1)| {
            rhs.terms.iter().map(move |(m2, c2)| {
                let mut w = m1.word();
                w.extend(m2.word());
                (w, c1 * c2)
            })
        });
        Ok(Element { alg: self.alg.clone(), terms: rewrite::normal_form(words) })
    }

    /// `self * rhs - c * rhs * self`
    pub fn q_commutator(&self, rhs: &Element, c: &LaurentQ) -> Result<Element> {
        let ab = self.try_mul(rhs)?;
        let ba = rhs.try_mul(self)?;
        ab.try_sub(&ba.scale(c))
    }

    /// Move into a larger ambient algebra (for instance from `A_λ` to full quantum matrices).
    pub fn embed(&self, target: &MatrixAlgebra) -> Result<Element> {
        for m in self.terms.keys() {
            for v in m.vars() {
                target.check_var(v)?;
            }
        }
        Ok(Element { alg: target.clone(), terms: self.terms.clone() })
    }

    /// Common torus weight of all terms, or `None` when the element is zero or not homogeneous.
    pub fn homogeneous_weight(&self) -> Option<HWeight> {
        let mut it = self.terms.keys().map(|m| h_weight(m, self.alg.shape));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn weights(&self) -> impl Iterator<Item = HWeight> + '_ {
        self.terms.keys().map(|m| h_weight(m, self.alg.shape))
    }

    /// Specialize `q` to a nonzero rational.
    pub fn eval_q(&self, q0: &Rational) -> BTreeMap<PbwMonomial, Rational> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.eval(q0))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Image under the 180° rotation `x_ij -> x_{m+1-i, n+1-j}` combined with `q -> q^-1`.
    ///
    /// The rotation alone is an isomorphism `O_q -> O_{q^-1}`; twisting the
    /// coefficients as well turns it into a ring automorphism of `O_q`, so
    /// the image is returned as an element of the full quantum matrix
    /// algebra of the same shape. It is an involution.
    pub fn rotate180(&self) -> Element {
        let MatrixShape { m, n } = self.alg.shape;
        let words = self.terms.iter().map(|(mono, c)| {
            let w = mono.word().into_iter().map(|v| VarIndex::new(m + 1 - v.row, n + 1 - v.col)).collect();
            (w, c.invert_q())
        });
        let alg = MatrixAlgebra::quantum_matrices(self.alg.shape);
        Element { alg, terms: rewrite::normal_form(words) }
    }

    /// Transpose isomorphism `O_q(M_{m,n}) -> O_q(M_{n,m})`, `x_ij -> x_ji`.
    ///
    /// The target shape has more rows than columns when `m < n`, so the result
    /// is returned as a plain term map over transposed generators rather than
    /// as an [`Element`].
    pub fn transpose_terms(&self) -> BTreeMap<PbwMonomial, LaurentQ> {
        let words = self
            .terms
            .iter()
            .map(|(mono, c)| (mono.word().into_iter().map(|v| VarIndex::new(v.col, v.row)).collect(), c.clone()));
        rewrite::normal_form(words)
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<PbwMonomial, LaurentQ>, m: PbwMonomial, c: &LaurentQ) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Product of two elements of the same algebra.
pub fn mul(a: &Element, b: &Element) -> Result<Element> {
    a.try_mul(b)
}

/// Expand a word of generators in the PBW basis of `alg`.
pub fn normal_form(alg: &MatrixAlgebra, word: &[VarIndex], scalar: LaurentQ) -> Result<Element> {
    alg.normal_form(word, scalar)
}

/// See [`Element::rotate180`].
pub fn rotate180(e: &Element) -> Element {
    e.rotate180()
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

/// Panics when the operands live in different algebras; use [`Element::try_add`] otherwise.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

/// Panics when the operands live in different algebras; use [`Element::try_sub`] otherwise.
impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

/// Panics when the operands live in different algebras; use [`Element::try_mul`] otherwise.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("multiplying elements of different algebras")
    }
}
