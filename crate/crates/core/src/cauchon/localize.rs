//! `A_λ[y^{-1}]` for `y = x_{m,λ_m}`, and the first deleting-derivation step
//! `A_λ[y^{-1}] ≅ A_{λ'}[y^{±1}; σ]`.
//!
//! `y` is the largest generator, so every element is a sum of
//! `(y-free PBW monomial) * y^k` with `k ∈ Z`. Inverses are moved to the
//! right with rules read off from the normal form of `y x`:
//! if `y x = s x y + R` then `y^{-1} x = s^{-1} x y^{-1} - s^{-1} y^{-1} R y^{-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::restore::{check_relations, RelationRing};
use crate::error::{domain, Error, Result};
use crate::qcoeff::LaurentQ;
use crate::qmatrix::{write_combination, MatrixAlgebra, Partition, PbwMonomial, VarIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    Gen(VarIndex),
    YInv,
}

type SignedWord = Vec<Letter>;

const STEP_LIMIT: usize = 1 << 22;

/// The localization of `A_λ` at the powers of its last generator.
#[derive(Debug)]
pub struct Localization {
    alg: MatrixAlgebra,
    y: VarIndex,
    rules: BTreeMap<VarIndex, Vec<(SignedWord, LaurentQ)>>,
}

impl Localization {
    pub fn new(lambda: &Partition) -> Result<Arc<Self>> {
        let lambda = lambda.trimmed();
        let m = lambda.len();
        if m == 0 {
            return domain("cannot localize the base field");
        }
        let y = VarIndex::new(m, lambda.part(m));
        let alg = MatrixAlgebra::partition_subalgebra(lambda);
        let mut rules = BTreeMap::new();
        for g in alg.variables().into_iter().filter(|&g| g != y) {
            rules.insert(g, primitive_rule(&alg, y, g)?);
        }
        Ok(Arc::new(Localization { alg, y, rules }))
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.alg
    }

    /// The inverted generator.
    pub fn y(&self) -> VarIndex {
        self.y
    }

    fn reduce(self: &Arc<Self>, words: Vec<(SignedWord, LaurentQ)>) -> Result<LocalElement> {
        let mut out = LocalElement::zero(self);
        let mut stack = words;
        let mut steps = 0usize;
        while let Some((w, c)) = stack.pop() {
            steps += 1;
            if steps > STEP_LIMIT {
                return Err(Error::InternalInconsistency("pushing y^-1 did not terminate".into()));
            }
            let hit =
                (0..w.len().saturating_sub(1)).find(|&p| w[p] == Letter::YInv && matches!(w[p + 1], Letter::Gen(_)));
            let Some(p) = hit else {
                let d = w.iter().filter(|l| **l == Letter::YInv).count() as i64;
                let gens: Vec<VarIndex> = w
                    .iter()
                    .filter_map(|l| match l {
                        Letter::Gen(v) => Some(*v),
                        Letter::YInv => None,
                    })
                    .collect();
                let nf = self.alg.normal_form(&gens, c)?;
                for (mono, coeff) in nf.terms() {
                    let e = mono.exponent(self.y) as i64;
                    let rest =
                        PbwMonomial::from_exponents(mono.exponents().iter().copied().filter(|(v, _)| *v != self.y));
                    out.add_term((rest, e - d), coeff.clone());
                }
                continue;
            };
            let Letter::Gen(g) = w[p + 1] else { unreachable!() };
            if g == self.y {
                let mut nw = w[..p].to_vec();
                nw.extend_from_slice(&w[p + 2..]);
                stack.push((nw, c));
                continue;
            }
            for (rep, rc) in &self.rules[&g] {
                let mut nw = w[..p].to_vec();
                nw.extend_from_slice(rep);
                nw.extend_from_slice(&w[p + 2..]);
                stack.push((nw, &c * rc));
            }
        }
        Ok(out)
    }

    pub fn zero(self: &Arc<Self>) -> LocalElement {
        LocalElement::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> LocalElement {
        self.y_pow(0)
    }

    pub fn y_pow(self: &Arc<Self>, k: i64) -> LocalElement {
        let mut e = LocalElement::zero(self);
        e.add_term((PbwMonomial::one(), k), LaurentQ::one());
        e
    }

    pub fn gen(self: &Arc<Self>, v: VarIndex) -> Result<LocalElement> {
        self.alg.check_var(v)?;
        if v == self.y {
            return Ok(self.y_pow(1));
        }
        let mut e = LocalElement::zero(self);
        e.add_term((PbwMonomial::from_exponents([(v, 1)]), 0), LaurentQ::one());
        Ok(e)
    }

    /// `y^{-1} g` with every inverse moved to the right.
    pub fn push_rule(self: &Arc<Self>, g: VarIndex) -> Result<LocalElement> {
        self.alg.check_var(g)?;
        self.reduce(vec![(vec![Letter::YInv, Letter::Gen(g)], LaurentQ::one())])
    }
}

/// `y^{-1} g` one step: from `y g = s g y + R`.
fn primitive_rule(alg: &MatrixAlgebra, y: VarIndex, g: VarIndex) -> Result<Vec<(SignedWord, LaurentQ)>> {
    let nf = alg.normal_form(&[y, g], LaurentQ::one())?;
    let key = PbwMonomial::from_sorted_word(&[g, y]);
    let s_inv = nf
        .coeff(&key)
        .unit_inverse()
        .ok_or_else(|| Error::InternalInconsistency(format!("{y}{g} has no unit multiple of {g}{y}")))?;
    let mut rule = vec![(vec![Letter::Gen(g), Letter::YInv], s_inv.clone())];
    for (mono, rc) in nf.terms().filter(|(m, _)| **m != key) {
        let mut w = vec![Letter::YInv];
        w.extend(mono.word().into_iter().map(Letter::Gen));
        w.push(Letter::YInv);
        rule.push((w, -&(&s_inv * rc)));
    }
    Ok(rule)
}

fn letters(mono: &PbwMonomial, k: i64, y: VarIndex, out: &mut SignedWord) {
    out.extend(mono.word().into_iter().map(Letter::Gen));
    if k >= 0 {
        out.extend(std::iter::repeat_n(Letter::Gen(y), k as usize));
    } else {
        out.extend(std::iter::repeat_n(Letter::YInv, k.unsigned_abs() as usize));
    }
}

/// `Σ c * (y-free PBW monomial) * y^k`.
#[derive(Clone, Debug)]
pub struct LocalElement {
    loc: Arc<Localization>,
    terms: BTreeMap<(PbwMonomial, i64), LaurentQ>,
}

impl PartialEq for LocalElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.loc, &other.loc) && self.terms == other.terms
    }
}

impl LocalElement {
    fn zero(loc: &Arc<Localization>) -> Self {
        LocalElement { loc: loc.clone(), terms: BTreeMap::new() }
    }

    fn add_term(&mut self, key: (PbwMonomial, i64), c: LaurentQ) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(PbwMonomial, i64), &LaurentQ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &LocalElement) -> LocalElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LocalElement) -> LocalElement {
        self.add(&rhs.scale(&-LaurentQ::one()))
    }

    pub fn scale(&self, c: &LaurentQ) -> LocalElement {
        let terms = self.terms.iter().map(|(k, a)| (k.clone(), a * c)).filter(|(_, a)| !a.is_zero()).collect();
        LocalElement { loc: self.loc.clone(), terms }
    }

    pub fn try_mul(&self, rhs: &LocalElement) -> Result<LocalElement> {
        let y = self.loc.y;
        let mut words = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for ((m1, k1), c1) in &self.terms {
            for ((m2, k2), c2) in &rhs.terms {
                let mut w = Vec::new();
                letters(m1, *k1, y, &mut w);
                letters(m2, *k2, y, &mut w);
                words.push((w, c1 * c2));
            }
        }
        self.loc.reduce(words)
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = self.loc.y;
        write_combination(
            f,
            self.terms.iter().map(|((m, k), c)| {
                let mut parts = Vec::new();
                if !m.is_one() {
                    parts.push(m.to_string());
                }
                match *k {
                    0 => {}
                    1 => parts.push(y.to_string()),
                    k => parts.push(format!("{y}^{k}")),
                }
                ((!parts.is_empty()).then(|| parts.join("*")), c)
            }),
        )
    }
}

impl RelationRing for LocalElement {
    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("generators of the same localization")
    }
    fn sub(&self, rhs: &Self) -> Self {
        LocalElement::sub(self, rhs)
    }
    fn scale_q_pow(&self, e: i64) -> Self {
        self.scale(&LaurentQ::q_pow(e))
    }
    fn scale_q_minus_q_inv(&self) -> Self {
        self.scale(&LaurentQ::q_minus_q_inv())
    }
    fn is_zero(&self) -> bool {
        LocalElement::is_zero(self)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// Images of the generators of `A_{λ'}` inside `A_λ[y^{-1}]`.
#[derive(Clone, Debug)]
pub struct DeletionStep {
    loc: Arc<Localization>,
    lambda: Partition,
    lambda_prime: Partition,
    images: BTreeMap<VarIndex, LocalElement>,
}

impl DeletionStep {
    /// `x'_iα = x_iα - x_{i,λ_m} y^{-1} x_{m,α}` for `i < m`, `α < λ_m`; `x'_iα = x_iα` otherwise.
    pub fn new(lambda: &Partition) -> Result<Self> {
        let lambda = lambda.trimmed();
        let m = lambda.len();
        if m == 0 {
            return domain("single-step deletion needs λ_m >= 1");
        }
        let mu = lambda.part(m);
        let mut parts = lambda.parts().to_vec();
        parts[m - 1] -= 1;
        let lambda_prime = Partition::new(parts)?.trimmed();
        let loc = Localization::new(&lambda)?;
        let y_inv = loc.y_pow(-1);
        let mut images = BTreeMap::new();
        for v in lambda_prime.squares() {
            let x = loc.gen(v)?;
            let img = if v.row < m && v.col < mu {
                let corr =
                    loc.gen(VarIndex::new(v.row, mu))?.try_mul(&y_inv)?.try_mul(&loc.gen(VarIndex::new(m, v.col))?)?;
                x.sub(&corr)
            } else {
                x
            };
            images.insert(v, img);
        }
        Ok(DeletionStep { loc, lambda, lambda_prime, images })
    }

    pub fn localization(&self) -> &Arc<Localization> {
        &self.loc
    }

    pub fn lambda_prime(&self) -> &Partition {
        &self.lambda_prime
    }

    pub fn image(&self, v: VarIndex) -> Option<&LocalElement> {
        self.images.get(&v)
    }

    /// `σ(x'_iα) = q^{-1} x'_iα` if `i = m` or `α = λ_m`, else `x'_iα`.
    pub fn sigma_exponent(&self, v: VarIndex) -> i64 {
        let m = self.lambda.len();
        if v.row == m || v.col == self.lambda.part(m) {
            -1
        } else {
            0
        }
    }

    pub fn verify(&self) -> Result<DeletionReport> {
        let rel = check_relations(&self.lambda_prime, &|v| self.images[&v].clone());
        let mut report = DeletionReport {
            lambda: self.lambda.parts().to_vec(),
            lambda_prime: self.lambda_prime.parts().to_vec(),
            checked: rel.checked,
            failures: rel.failures,
        };
        let y = self.loc.y_pow(1);
        let y_inv = self.loc.y_pow(-1);
        let m = self.lambda.len();
        let mu = self.lambda.part(m);
        for (&v, img) in &self.images {
            let conj = y.try_mul(img)?.try_mul(&y_inv)?;
            let sigma = img.scale(&LaurentQ::q_pow(self.sigma_exponent(v)));
            report.checked += 1;
            let diff = conj.sub(&sigma);
            if !diff.is_zero() {
                report.failures.push(format!("y x'{v} y^-1 - σ(x'{v}) = {diff}"));
            }
            if v.row < m && v.col < mu {
                let back = img.add(
                    &self
                        .loc
                        .gen(VarIndex::new(v.row, mu))?
                        .try_mul(&y_inv)?
                        .try_mul(&self.loc.gen(VarIndex::new(m, v.col))?)?,
                );
                report.checked += 1;
                let diff = back.sub(&self.loc.gen(v)?);
                if !diff.is_zero() {
                    report.failures.push(format!("{v} is not recovered from x'{v}: residual {diff}"));
                }
            }
        }
        Ok(report)
    }
}

/// Report for one deletion step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionReport {
    pub lambda: Vec<usize>,
    pub lambda_prime: Vec<usize>,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DeletionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn single_step_deletion(lambda: &Partition) -> Result<DeletionReport> {
    DeletionStep::new(lambda)?.verify()
}
