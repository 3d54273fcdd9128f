//! Quantum minors, the quantum grassmannian `O_q(G_{m,n})` as the subalgebra
//! of `O_q(M_{m,n})` generated by maximal minors, and exact checks of its
//! graded A.S.L. structure in degree two.
//!
//! Everything is computed inside the ambient PBW basis. A product of two
//! maximal minors is homogeneous for the column grading, so its standard
//! expansion only involves chains `[λ][μ]` with the same column content;
//! each such block is solved on its own.

mod linsolve;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::posets::{index_sets, GammaCell, IndexSet};
use crate::qcoeff::{LaurentQ, RatFuncQ};
use crate::qmatrix::{Element, MatrixAlgebra, MatrixShape, VarIndex};

use linsolve::SolveFailure;

/// Row set `I` and column set `J` of a square minor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl IndexPair {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return domain(format!("row set {rows:?} and column set {cols:?} must be nonempty of equal size"));
        }
        for s in [&rows, &cols] {
            if s[0] == 0 || s.windows(2).any(|w| w[0] >= w[1]) {
                return domain(format!("{s:?} is not strictly increasing"));
            }
        }
        Ok(IndexPair { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Permutations of `0..t` with their inversion counts.
fn permutations(t: usize) -> Vec<(Vec<usize>, usize)> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, inv: usize, out: &mut Vec<(Vec<usize>, usize)>) {
        if left.is_empty() {
            out.push((cur.clone(), inv));
            return;
        }
        for k in 0..left.len() {
            // picking the k-th smallest remaining value creates k inversions
            let v = left.remove(k);
            cur.push(v);
            rec(left, cur, inv + k, out);
            cur.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..t).collect(), &mut Vec::new(), 0, &mut out);
    out
}

/// `[I|J] = Σ_σ (-q)^{ℓ(σ)} x_{i_1 j_σ(1)} ... x_{i_t j_σ(t)}` in PBW normal form.
pub fn minor(p: &IndexPair, shape: MatrixShape) -> Result<Element> {
    minor_in(p, &MatrixAlgebra::quantum_matrices(shape))
}

fn minor_in(p: &IndexPair, alg: &MatrixAlgebra) -> Result<Element> {
    let minus_q = -LaurentQ::q();
    let words = permutations(p.size())
        .into_iter()
        .map(|(sigma, len)| {
            let word = sigma.iter().enumerate().map(|(k, &s)| VarIndex::new(p.rows[k], p.cols[s])).collect();
            let mut c = LaurentQ::one();
            for _ in 0..len {
                c = &c * &minus_q;
            }
            (word, c)
        })
        .collect();
    alg.normal_form_sum(words)
}

/// `[I] = [{1..m} | I]`.
pub fn maximal_minor(i: &IndexSet, shape: MatrixShape) -> Result<Element> {
    let p = IndexPair::new((1..=shape.m()).collect(), i.entries().to_vec())?;
    minor(&p, shape)
}

/// Weakly `≤_st`-increasing chain of index sets; the empty chain is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StdMonomial(Vec<IndexSet>);

impl StdMonomial {
    pub fn new(chain: Vec<IndexSet>) -> Result<Self> {
        if chain.windows(2).any(|w| !w[0].leq_st(&w[1])) {
            let text: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
            return domain(format!("{} is not a standard chain", text.concat()));
        }
        Ok(StdMonomial(chain))
    }

    pub fn one() -> Self {
        StdMonomial(Vec::new())
    }

    pub fn chain(&self) -> &[IndexSet] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Smallest index set of the chain.
    pub fn head(&self) -> Option<&IndexSet> {
        self.0.first()
    }

    /// Survives in `S(γ)`: every factor is `≥_st γ`.
    pub fn above(&self, gamma: &IndexSet) -> bool {
        self.head().is_none_or(|h| gamma.leq_st(h))
    }

    fn strictly_below_both(&self, a: &IndexSet, b: &IndexSet) -> bool {
        self.head().is_some_and(|h| h.lt_st(a) && h.lt_st(b))
    }
}

impl fmt::Display for StdMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Standard monomials of the given degree (at most 2), optionally only those with head `≥_st floor`.
pub fn std_basis(degree: usize, shape: MatrixShape, floor: Option<&IndexSet>) -> Result<Vec<StdMonomial>> {
    let sets: Vec<IndexSet> = index_sets(shape).filter(|s| floor.is_none_or(|g| g.leq_st(s))).collect();
    Ok(match degree {
        0 => vec![StdMonomial::one()],
        1 => sets.into_iter().map(|s| StdMonomial(vec![s])).collect(),
        2 => {
            let mut out = Vec::new();
            for a in &sets {
                for b in &sets {
                    if a.leq_st(b) {
                        out.push(StdMonomial(vec![a.clone(), b.clone()]));
                    }
                }
            }
            out
        }
        d => return domain(format!("standard monomials are only materialized up to degree 2, not {d}")),
    })
}

/// Standard expansion: chain -> nonzero coefficient.
pub type Expansion = BTreeMap<StdMonomial, RatFuncQ>;

/// `αβ - c βα` with every chain head strictly below both `α` and `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiCommutation {
    pub c: RatFuncQ,
    pub lower: Expansion,
}

/// Degree-two part of `O_q(G_{m,n})` with all maximal minors expanded once.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    shape: MatrixShape,
    alg: MatrixAlgebra,
    minors: BTreeMap<IndexSet, Element>,
}

impl Grassmannian {
    pub fn new(shape: MatrixShape) -> Result<Self> {
        let alg = MatrixAlgebra::quantum_matrices(shape);
        let mut minors = BTreeMap::new();
        for s in index_sets(shape) {
            let p = IndexPair::new((1..=shape.m()).collect(), s.entries().to_vec())?;
            minors.insert(s, minor_in(&p, &alg)?);
        }
        Ok(Grassmannian { shape, alg, minors })
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.alg
    }

    pub fn index_sets(&self) -> impl Iterator<Item = &IndexSet> {
        self.minors.keys()
    }

    pub fn minor(&self, s: &IndexSet) -> Result<&Element> {
        self.minors.get(s).ok_or_else(|| {
            Error::Domain(format!("{s} is not an element of Π_{{{},{}}}", self.shape.m(), self.shape.n()))
        })
    }

    pub fn product(&self, a: &IndexSet, b: &IndexSet) -> Result<Element> {
        self.minor(a)?.try_mul(self.minor(b)?)
    }

    /// PBW expansion of a standard monomial.
    pub fn std_element(&self, s: &StdMonomial) -> Result<Element> {
        let mut acc = self.alg.one();
        for f in s.chain() {
            acc = acc.try_mul(self.minor(f)?)?;
        }
        Ok(acc)
    }

    /// Degree-two chains whose column content is the multiset `a ⊎ b`.
    pub fn block_chains(&self, a: &IndexSet, b: &IndexSet) -> Vec<StdMonomial> {
        let content = multiset(a, b);
        let mut out = Vec::new();
        for x in self.minors.keys() {
            for y in self.minors.keys() {
                if x.leq_st(y) && multiset(x, y) == content {
                    out.push(StdMonomial(vec![x.clone(), y.clone()]));
                }
            }
        }
        out
    }

    /// Standard expansion of `[α][β]`.
    pub fn straighten(&self, a: &IndexSet, b: &IndexSet) -> Result<Expansion> {
        let target = self.product(a, b)?;
        let chains = self.block_chains(a, b);
        let elems = chains.iter().map(|c| self.std_element(c)).collect::<Result<Vec<_>>>()?;
        let cols: Vec<_> = elems.iter().map(Element::term_map).collect();
        let x = linsolve::solve(&cols, target.term_map()).map_err(|f| {
            Error::InternalInconsistency(match f {
                SolveFailure::Singular => format!("standard monomials for [{a}][{b}] are dependent"),
                SolveFailure::Inconsistent => format!("[{a}][{b}] is outside the span of standard monomials"),
            })
        })?;
        Ok(chains.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Re-expand a standard expansion in the PBW basis; coefficients must be Laurent.
    pub fn expand(&self, e: &Expansion) -> Result<Element> {
        let mut acc = self.alg.zero();
        for (s, c) in e {
            let c = c.to_laurent().ok_or_else(|| {
                Error::InternalInconsistency(format!("coefficient {c} of {s} is not a Laurent polynomial"))
            })?;
            acc = acc.try_add(&self.std_element(s)?.scale(&c))?;
        }
        Ok(acc)
    }

    pub fn quasi_commutator(&self, a: &IndexSet, b: &IndexSet) -> Result<QuasiCommutation> {
        if a == b {
            return Ok(QuasiCommutation { c: RatFuncQ::one(), lower: Expansion::new() });
        }
        let ab = self.straighten(a, b)?;
        let ba = self.straighten(b, a)?;
        let c = if a.comparable(b) {
            let (lo, hi) = if a.leq_st(b) { (a, b) } else { (b, a) };
            let key = StdMonomial(vec![lo.clone(), hi.clone()]);
            let den = ba
                .get(&key)
                .ok_or_else(|| Error::AxiomViolation(format!("[{b}][{a}] has no {key} term, so no constant exists")))?;
            ab.get(&key).cloned().unwrap_or_else(RatFuncQ::zero).checked_div(den)?
        } else {
            best_cancelling_constant(&ab, &ba)
        };
        let lower = combine(&ab, &ba, &c);
        if let Some(bad) = lower.keys().find(|s| !s.strictly_below_both(a, b)) {
            return Err(Error::AxiomViolation(format!(
                "[{a}][{b}] - ({c})[{b}][{a}] contains {bad}, whose head is not below both factors"
            )));
        }
        if c.is_power_of_q().is_none() {
            return Err(Error::AxiomViolation(format!("quasi-commutation constant {c} for [{a}],[{b}] is not ±q^e")));
        }
        Ok(QuasiCommutation { c, lower })
    }

    /// Full degree-two A.S.L. check.
    pub fn check_asl(&self) -> AslReport {
        let sets: Vec<IndexSet> = self.minors.keys().cloned().collect();
        let mut report = AslReport { shape: [self.shape.m(), self.shape.n()], ..Default::default() };

        let mut blocks: BTreeMap<Vec<usize>, Vec<StdMonomial>> = BTreeMap::new();
        for a in &sets {
            for b in sets.iter().filter(|b| a.leq_st(b)) {
                blocks.entry(multiset(a, b)).or_default().push(StdMonomial(vec![a.clone(), b.clone()]));
            }
        }
        let rank_failures: Vec<Option<String>> = blocks
            .par_iter()
            .map(|(content, chains)| {
                let elems = match chains.iter().map(|c| self.std_element(c)).collect::<Result<Vec<_>>>() {
                    Ok(e) => e,
                    Err(e) => return Some(e.to_string()),
                };
                let cols: Vec<_> = elems.iter().map(Element::term_map).collect();
                let r = linsolve::rank(&cols);
                (r != chains.len()).then(|| format!("axiom 3: block {content:?} has rank {r} < {}", chains.len()))
            })
            .collect();
        report.blocks = blocks.len();
        report.chains = blocks.values().map(Vec::len).sum();
        report.failures.extend(rank_failures.into_iter().flatten());

        let pairs: Vec<(&IndexSet, &IndexSet)> = sets.iter().flat_map(|a| sets.iter().map(move |b| (a, b))).collect();
        let product_failures: Vec<Vec<String>> = pairs.par_iter().map(|&(a, b)| self.check_product(a, b)).collect();
        report.products = pairs.len();
        report.incomparable = pairs.iter().filter(|(a, b)| !a.comparable(b)).count();
        report.failures.extend(product_failures.into_iter().flatten());

        let unordered: Vec<(&IndexSet, &IndexSet)> = pairs.iter().copied().filter(|(a, b)| a < b).collect();
        let constants: Vec<std::result::Result<RatFuncQ, String>> = unordered
            .par_iter()
            .map(|&(a, b)| self.quasi_commutator(a, b).map(|qc| qc.c).map_err(|e| e.to_string()))
            .collect();
        report.commutations = unordered.len();
        for c in constants {
            match c {
                Ok(c) => report.constants.push(c.to_string()),
                Err(e) => report.failures.push(format!("axiom 5: {e}")),
            }
        }
        report.constants.sort();
        report.constants.dedup();
        report
    }

    fn check_product(&self, a: &IndexSet, b: &IndexSet) -> Vec<String> {
        let mut out = Vec::new();
        let e = match self.straighten(a, b) {
            Ok(e) => e,
            Err(err) => return vec![format!("[{a}][{b}]: {err}")],
        };
        if !a.comparable(b) {
            for s in e.keys().filter(|s| !s.strictly_below_both(a, b)) {
                out.push(format!("axiom 4: [{a}][{b}] has term {s}"));
            }
        }
        match (self.expand(&e), self.product(a, b)) {
            (Ok(lhs), Ok(rhs)) if lhs == rhs => {}
            (Ok(_), Ok(_)) => out.push(format!("re-expansion of [{a}][{b}] differs from the product")),
            (Err(err), _) | (_, Err(err)) => out.push(format!("[{a}][{b}]: {err}")),
        }
        out
    }

    /// Standard expansion of `[α][β]` in `S(γ)`.
    pub fn straighten_mod(&self, a: &IndexSet, b: &IndexSet, gamma: &IndexSet) -> Result<Expansion> {
        let mut e = self.straighten(a, b)?;
        e.retain(|s, _| s.above(gamma));
        Ok(e)
    }

    /// `[γ] m_ij = q m_ij [γ]` in `S(γ)` for every ladder position.
    pub fn check_gamma_normality(&self, cell: &GammaCell) -> Result<CellReport> {
        let gamma = cell.gamma();
        let q = RatFuncQ::from(LaurentQ::q());
        let mut report = CellReport::new(gamma);
        for &pos in cell.ladder() {
            let m = cell.displaced_set(pos)?;
            let lhs = self.straighten_mod(gamma, &m, gamma)?;
            let rhs = self.straighten_mod(&m, gamma, gamma)?;
            report.checked += 1;
            let diff = combine(&lhs, &rhs, &q);
            if !diff.is_empty() {
                report.failures.push(format!(
                    "γ·m{} - q·m{}·γ = {}",
                    pos_text(pos),
                    pos_text(pos),
                    expansion_text(&diff)
                ));
            }
        }
        Ok(report)
    }

    /// Relations among the `m_ij` in `S(γ)` against the quantum matrix relations of the ladder.
    ///
    /// Since `γ^{-1} m_ij = q^{-1} m_ij γ^{-1}` for every ladder minor, each quadratic
    /// monomial in the `m̃_ij = m_ij γ^{-1}` equals `q^{-1}` times the same monomial
    /// in the `m_ij`, followed by `γ^{-2}`; the relations transfer unchanged.
    pub fn check_ladder_relations(&self, cell: &GammaCell) -> Result<CellReport> {
        let gamma = cell.gamma();
        let mut report = self.check_gamma_normality(cell)?;
        let q = LaurentQ::q();
        let diff = LaurentQ::q_minus_q_inv();
        let ladder = cell.ladder();
        for (k, &a) in ladder.iter().enumerate() {
            for &b in &ladder[k + 1..] {
                let ma = cell.displaced_set(a)?;
                let mb = cell.displaced_set(b)?;
                let ab = self.straighten_mod(&ma, &mb, gamma)?;
                let ba = self.straighten_mod(&mb, &ma, gamma)?;
                let (lhs, name) = if a.row == b.row || a.col == b.col {
                    (combine(&ab, &ba, &RatFuncQ::from(&q)), "q-commute")
                } else if a.col > b.col {
                    (combine(&ab, &ba, &RatFuncQ::one()), "commute")
                } else {
                    let mi = cell.displaced_set(VarIndex::new(a.row, b.col))?;
                    let mj = cell.displaced_set(VarIndex::new(b.row, a.col))?;
                    let extra = self.straighten_mod(&mi, &mj, gamma)?;
                    let base = combine(&ab, &ba, &RatFuncQ::one());
                    (combine(&base, &extra, &RatFuncQ::from(&diff)), "diagonal relation")
                };
                report.checked += 1;
                if !lhs.is_empty() {
                    report.failures.push(format!(
                        "m{} and m{} should {name}; residue {}",
                        pos_text(a),
                        pos_text(b),
                        expansion_text(&lhs)
                    ));
                }
            }
        }
        Ok(report)
    }
}

fn multiset(a: &IndexSet, b: &IndexSet) -> Vec<usize> {
    let mut v: Vec<usize> = a.entries().iter().chain(b.entries()).copied().collect();
    v.sort_unstable();
    v
}

/// `x - c y`, dropping zeros.
fn combine(x: &Expansion, y: &Expansion, c: &RatFuncQ) -> Expansion {
    let mut out = x.clone();
    for (s, v) in y {
        let t = &out.get(s).cloned().unwrap_or_else(RatFuncQ::zero) - &(c * v);
        if t.is_zero() {
            out.remove(s);
        } else {
            out.insert(s.clone(), t);
        }
    }
    out
}

/// Among `±q^e` ratios of shared coefficients, the one cancelling the most
/// terms, preferring small `|e|`, then positive sign, then positive `e`.
fn best_cancelling_constant(ab: &Expansion, ba: &Expansion) -> RatFuncQ {
    let mut best: Option<(usize, RatFuncQ, (u64, bool, bool))> = None;
    for (s, x) in ab {
        let Some(y) = ba.get(s) else { continue };
        let Ok(r) = x.checked_div(y) else { continue };
        let Some(p) = r.is_power_of_q() else { continue };
        let cancelled = ab.iter().filter(|(t, v)| ba.get(*t).is_some_and(|w| &(&r * w) == *v)).count();
        let rank = (p.exponent.unsigned_abs(), p.negative, p.exponent < 0);
        let better = match &best {
            None => true,
            Some((n, _, rk)) => cancelled > *n || (cancelled == *n && rank < *rk),
        };
        if better {
            best = Some((cancelled, r, rank));
        }
    }
    best.map_or_else(RatFuncQ::one, |(_, r, _)| r)
}

fn pos_text(v: VarIndex) -> String {
    format!("[{},{}]", v.row, v.col)
}

pub fn expansion_text(e: &Expansion) -> String {
    if e.is_empty() {
        return "0".into();
    }
    e.iter().map(|(s, c)| format!("({c})*{s}")).collect::<Vec<_>>().join(" + ")
}

/// Result of [`Grassmannian::check_asl`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AslReport {
    pub shape: [usize; 2],
    /// Column-content blocks of degree-two standard monomials.
    pub blocks: usize,
    pub chains: usize,
    pub products: usize,
    pub incomparable: usize,
    pub commutations: usize,
    /// Distinct quasi-commutation constants seen.
    pub constants: Vec<String>,
    pub failures: Vec<String>,
}

impl AslReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of a per-cell check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub gamma: Vec<usize>,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CellReport {
    fn new(gamma: &IndexSet) -> Self {
        CellReport { gamma: gamma.entries().to_vec(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// See [`Grassmannian::straighten`].
pub fn straighten_product(a: &IndexSet, b: &IndexSet, shape: MatrixShape) -> Result<Vec<(RatFuncQ, StdMonomial)>> {
    let g = Grassmannian::new(shape)?;
    Ok(g.straighten(a, b)?.into_iter().map(|(s, c)| (c, s)).collect())
}

/// See [`Grassmannian::quasi_commutator`].
pub fn quasi_commutator(a: &IndexSet, b: &IndexSet, shape: MatrixShape) -> Result<QuasiCommutation> {
    Grassmannian::new(shape)?.quasi_commutator(a, b)
}

/// `m_ij`: the maximal minor on `γ` with `γ_{m+1-i}` replaced by `j`.
pub fn schubert_minor(gamma: &IndexSet, i: usize, j: usize, shape: MatrixShape) -> Result<Element> {
    let cell = GammaCell::new(gamma.clone(), shape)?;
    maximal_minor(&cell.displaced_set(VarIndex::new(i, j))?, shape)
}

pub fn verify_gamma_normality(gamma: &IndexSet, shape: MatrixShape) -> Result<CellReport> {
    let cell = GammaCell::new(gamma.clone(), shape)?;
    Grassmannian::new(shape)?.check_gamma_normality(&cell)
}

pub fn verify_ladder_relations(gamma: &IndexSet, shape: MatrixShape) -> Result<CellReport> {
    let cell = GammaCell::new(gamma.clone(), shape)?;
    Grassmannian::new(shape)?.check_ladder_relations(&cell)
}

/// `{ "alpha": [..], "beta": [..], "terms": [{ "coeff": "..", "chain": [[..],[..]] }] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StraighteningJson {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub terms: Vec<ChainTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub coeff: String,
    pub chain: Vec<Vec<usize>>,
}

pub fn straightening_json(a: &IndexSet, b: &IndexSet, e: &Expansion) -> StraighteningJson {
    StraighteningJson {
        alpha: a.entries().to_vec(),
        beta: b.entries().to_vec(),
        terms: e
            .iter()
            .map(|(s, c)| ChainTermJson {
                coeff: c.to_string(),
                chain: s.chain().iter().map(|x| x.entries().to_vec()).collect(),
            })
            .collect(),
    }
}
