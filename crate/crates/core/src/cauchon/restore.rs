//! Restoration of derivations: rebuild the generators of `A_λ` inside the
//! quantum torus on the `t_ij`, running the deleting-derivations algorithm
//! backwards.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::torus::{QTorus, SpecializedTorusElement, TorusElement};
use crate::error::{domain, Error, Result};
use crate::qcoeff::{LaurentQ, Rational};
use crate::qmatrix::{HWeight, MatrixShape, Partition, RelationClass, VarIndex};

/// The index set `E`: squares of `Y_λ` plus `(m, λ_m + 1)`, minus `(1,1)`, ascending.
pub fn step_indices(lambda: &Partition) -> Vec<VarIndex> {
    let lambda = lambda.trimmed();
    let m = lambda.len();
    let mut e: Vec<VarIndex> = lambda.squares().filter(|&s| s != VarIndex::new(1, 1)).collect();
    if m > 0 {
        e.push(VarIndex::new(m, lambda.part(m) + 1));
    }
    e
}

/// Restored generators `x_iα` as torus elements.
#[derive(Clone, Debug)]
pub struct Restoration {
    torus: Arc<QTorus>,
    x: BTreeMap<VarIndex, TorusElement>,
}

impl Restoration {
    pub fn torus(&self) -> &Arc<QTorus> {
        &self.torus
    }

    pub fn lambda(&self) -> &Partition {
        self.torus.lambda()
    }

    pub fn get(&self, v: VarIndex) -> Option<&TorusElement> {
        self.x.get(&v)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&VarIndex, &TorusElement)> {
        self.x.iter()
    }

    /// `x[1,1] = t[1,1] + ...`, one line per generator.
    pub fn lines(&self) -> Vec<String> {
        self.x.iter().map(|(v, e)| format!("{v} = {e}")).collect()
    }
}

/// Walk `E` upward from `x = t`: at `r = (j,β)`, `x_iα += x_iβ t_jβ^{-1} x_jα` for `i < j`, `α < β`.
pub fn restore(lambda: &Partition) -> Result<Restoration> {
    let lambda = lambda.trimmed();
    if lambda.is_empty() {
        return domain("restoration needs a nonempty partition");
    }
    let torus = QTorus::new(&lambda);
    let mut x: BTreeMap<VarIndex, TorusElement> =
        lambda.squares().map(|v| TorusElement::gen(&torus, v).map(|t| (v, t))).collect::<Result<_>>()?;
    let steps = step_indices(&lambda);
    // the last index only marks the end
    for &r in &steps[..steps.len() - 1] {
        let (j, beta) = (r.row, r.col);
        let pivot = &x[&r];
        if !pivot.is_generator(r) {
            return Err(Error::InternalInconsistency(format!("x{r} is no longer t[{j},{beta}] at its own step")));
        }
        let pivot_inv = TorusElement::gen_pow(&torus, r, -1)?;
        for i in 1..j {
            for alpha in 1..beta {
                let (ia, ib, ja) = (VarIndex::new(i, alpha), VarIndex::new(i, beta), VarIndex::new(j, alpha));
                let extra = x[&ib].mul(&pivot_inv).mul(&x[&ja]);
                let updated = x[&ia].add(&extra);
                x.insert(ia, updated);
            }
        }
    }
    Ok(Restoration { torus, x })
}

/// `{ "lambda": [2,2], "checked": 6, "failures": [] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub lambda: Vec<usize>,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Generic ring operations needed to evaluate the defining relations.
pub(crate) trait RelationRing: Clone {
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn scale_q_pow(&self, e: i64) -> Self;
    fn scale_q_minus_q_inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn describe(&self) -> String;
}

impl RelationRing for TorusElement {
    fn mul(&self, rhs: &Self) -> Self {
        TorusElement::mul(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        TorusElement::sub(self, rhs)
    }
    fn scale_q_pow(&self, e: i64) -> Self {
        self.scale(&LaurentQ::q_pow(e))
    }
    fn scale_q_minus_q_inv(&self) -> Self {
        self.scale(&LaurentQ::q_minus_q_inv())
    }
    fn is_zero(&self) -> bool {
        TorusElement::is_zero(self)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

impl RelationRing for SpecializedTorusElement {
    fn mul(&self, rhs: &Self) -> Self {
        SpecializedTorusElement::mul(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        SpecializedTorusElement::sub(self, rhs)
    }
    fn scale_q_pow(&self, e: i64) -> Self {
        let q0 = self.q0();
        self.scale(&q0.pow(e as i32))
    }
    fn scale_q_minus_q_inv(&self) -> Self {
        let q0 = self.q0();
        let d = &q0 - q0.recip();
        self.scale(&d)
    }
    fn is_zero(&self) -> bool {
        SpecializedTorusElement::is_zero(self)
    }
    fn describe(&self) -> String {
        "nonzero rational residual".into()
    }
}

/// Residual of the defining relation between `x_a` and `x_b` (`a < b`).
pub(crate) fn relation_residual<R: RelationRing>(
    a: VarIndex,
    b: VarIndex,
    get: &dyn Fn(VarIndex) -> R,
) -> (R, &'static str) {
    let (xa, xb) = (get(a), get(b));
    let ab = xa.mul(&xb);
    let ba = xb.mul(&xa);
    match crate::qmatrix::relation_class(a, b) {
        RelationClass::SameRow | RelationClass::SameCol => (ab.sub(&ba.scale_q_pow(1)), "x_a x_b = q x_b x_a"),
        RelationClass::Antidiagonal => (ab.sub(&ba), "x_a x_b = x_b x_a"),
        RelationClass::Diagonal => {
            let extra = get(VarIndex::new(a.row, b.col)).mul(&get(VarIndex::new(b.row, a.col)));
            (ab.sub(&ba).sub(&extra.scale_q_minus_q_inv()), "x_a x_b - x_b x_a = (q - q^-1) x_il x_kj")
        }
        RelationClass::Equal => unreachable!("pairs are distinct"),
    }
}

/// Check every defining relation of `A_λ` on generators supplied by `get`.
pub(crate) fn check_relations<R: RelationRing>(lambda: &Partition, get: &dyn Fn(VarIndex) -> R) -> RelationReport {
    let squares: Vec<VarIndex> = lambda.squares().collect();
    let mut report = RelationReport { lambda: lambda.trimmed().parts().to_vec(), checked: 0, failures: Vec::new() };
    for (k, &a) in squares.iter().enumerate() {
        for &b in &squares[k + 1..] {
            let (res, name) = relation_residual(a, b, get);
            report.checked += 1;
            if !res.is_zero() {
                report.failures.push(format!("{a}, {b}: {name} fails, residual {}", res.describe()));
            }
        }
    }
    report
}

/// Restore, then check all relations of `A_λ` in the torus.
pub fn verify_restored_relations(lambda: &Partition) -> Result<RelationReport> {
    let r = restore(lambda)?;
    let mut report = check_relations(r.lambda(), &|v| r.x[&v].clone());
    for (v, e) in &r.x {
        let rows = r.lambda().len();
        let cols = r.lambda().part(1).max(rows);
        let expected = HWeight::of_var(MatrixShape::new(rows, cols)?, *v);
        if e.homogeneous_weight() != Some(expected) {
            report.failures.push(format!("{v} is not homogeneous of the weight of t[{},{}]", v.row, v.col));
        }
    }
    Ok(report)
}

/// Same relations after specializing `q` to `q0`.
pub fn verify_restored_relations_at(lambda: &Partition, q0: &Rational) -> Result<RelationReport> {
    if num_traits::Zero::is_zero(q0) {
        return domain("q cannot be specialized to 0");
    }
    let r = restore(lambda)?;
    let spec: BTreeMap<VarIndex, SpecializedTorusElement> = r.x.iter().map(|(v, e)| (*v, e.eval_q(q0))).collect();
    Ok(check_relations(r.lambda(), &|v| spec[&v].clone()))
}
