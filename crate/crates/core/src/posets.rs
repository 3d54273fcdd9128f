//! The poset `(Π_{m,n}, ≤_st)` of `m`-subsets of `{1..n}`, its ideals, and
//! the Schubert data attached to each `γ ∈ Π_{m,n}`: the partition `λ` with
//! `λ_i + γ_i = n - m + i`, and the ladder `L_γ`.
//!
//! Two index conventions meet here. Ladder positions `(i, j)` live in the
//! `m x n` matrix with row `i` governed by `γ_{m+1-i}`; squares of the Young
//! diagram `Y_λ` are the ladder rotated through 180° with the columns in
//! `γ` squeezed out. [`GammaCell`] owns the conversion between the two.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::qmatrix::{MatrixShape, Partition, VarIndex};

/// Strictly increasing subset `{i_1 < ... < i_m}` of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return domain("index set must be nonempty");
        }
        if entries[0] == 0 || entries.windows(2).any(|w| w[0] >= w[1]) {
            return domain(format!("{entries:?} is not a strictly increasing subset of positive integers"));
        }
        Ok(IndexSet(entries))
    }

    /// Checked construction inside `Π_{m,n}`.
    pub fn in_shape(entries: Vec<usize>, shape: MatrixShape) -> Result<Self> {
        let s = Self::new(entries)?;
        if s.len() != shape.m() || s.last() > shape.n() {
            return domain(format!("{s} is not an element of Π_{{{},{}}}", shape.m(), shape.n()));
        }
        Ok(s)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `s` (1-based).
    pub fn get(&self, s: usize) -> usize {
        self.0[s - 1]
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `I ≤_st J` iff `i_s ≤ j_s` for every `s`. Sets of different sizes are incomparable.
    pub fn leq_st(&self, other: &IndexSet) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lt_st(&self, other: &IndexSet) -> bool {
        self != other && self.leq_st(other)
    }

    pub fn comparable(&self, other: &IndexSet) -> bool {
        self.leq_st(other) || other.leq_st(self)
    }

    /// `{n + 1 - i : i ∈ I}`, which reverses `≤_st`.
    pub fn complement_reflection(&self, n: usize) -> IndexSet {
        let mut v: Vec<usize> = self.0.iter().map(|&i| n + 1 - i).collect();
        v.reverse();
        IndexSet(v)
    }

    /// Replace `old` by `new` and re-sort.
    pub fn displaced(&self, old: usize, new: usize) -> Result<IndexSet> {
        if !self.contains(old) || self.contains(new) {
            return domain(format!("cannot replace {old} by {new} in {self}"));
        }
        let mut v: Vec<usize> = self.0.iter().map(|&x| if x == old { new } else { x }).collect();
        v.sort_unstable();
        Ok(IndexSet(v))
    }

    /// Node identifier for DOT output.
    fn dot_id(&self) -> String {
        if self.last() < 10 {
            self.0.iter().map(|d| d.to_string()).collect()
        } else {
            self.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("_")
        }
    }
}

impl fmt::Display for IndexSet {
    /// `[135]`, or `[1,3,10]` once an entry has two digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.last() < 10 { "" } else { "," };
        let body: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", body.join(sep))
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = crate::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

/// Componentwise comparison.
pub fn leq_st(i: &IndexSet, j: &IndexSet) -> bool {
    i.leq_st(j)
}

/// All `m`-subsets of `{1..n}` in lexicographic order.
pub fn index_sets(shape: MatrixShape) -> impl Iterator<Item = IndexSet> {
    let (m, n) = (shape.m(), shape.n());
    let mut cur: Option<Vec<usize>> = Some((1..=m).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        // advance to the next combination
        let mut next = out.clone();
        let mut k = m;
        loop {
            if k == 0 {
                cur = None;
                break;
            }
            k -= 1;
            if next[k] < n - (m - 1 - k) {
                next[k] += 1;
                for t in k + 1..m {
                    next[t] = next[t - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(IndexSet(out))
    })
}

/// Largest `n` for which [`PiPoset`] stores its elements.
pub const EAGER_LIMIT: usize = 12;

/// `(Π_{m,n}, ≤_st)`. Elements are stored for `n ≤ 12` and regenerated on demand beyond.
#[derive(Clone, Debug)]
pub struct PiPoset {
    shape: MatrixShape,
    elements: Option<Vec<IndexSet>>,
}

impl PiPoset {
    pub fn new(shape: MatrixShape) -> Self {
        let elements = (shape.n() <= EAGER_LIMIT).then(|| index_sets(shape).collect());
        PiPoset { shape, elements }
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn elements(&self) -> Box<dyn Iterator<Item = IndexSet> + '_> {
        match &self.elements {
            Some(v) => Box::new(v.iter().cloned()),
            None => Box::new(index_sets(self.shape)),
        }
    }

    pub fn len(&self) -> usize {
        match &self.elements {
            Some(v) => v.len(),
            None => index_sets(self.shape).count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn minimum(&self) -> IndexSet {
        IndexSet((1..=self.shape.m()).collect())
    }

    pub fn maximum(&self) -> IndexSet {
        let (m, n) = (self.shape.m(), self.shape.n());
        IndexSet((n - m + 1..=n).collect())
    }

    /// Elements in DOT order: by entry sum, then lexicographically.
    pub fn sorted_for_display(&self) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = self.elements().collect();
        v.sort_by(|a, b| (a.sum(), a).cmp(&(b.sum(), b)));
        v
    }

    /// Covering pairs `(I, J)` with `I ⋖ J`.
    ///
    /// `J` covers `I` exactly when `J` is `I` with one entry raised by one.
    pub fn hasse_edges(&self) -> Vec<(IndexSet, IndexSet)> {
        let n = self.shape.n();
        let mut edges = Vec::new();
        for i in self.elements() {
            for s in 0..i.len() {
                let x = i.0[s];
                if x < n && !i.contains(x + 1) {
                    let mut j = i.0.clone();
                    j[s] = x + 1;
                    edges.push((i.clone(), IndexSet(j)));
                }
            }
        }
        sort_edges(&mut edges);
        edges
    }

    pub fn to_dot(&self) -> String {
        let name = format!("pi_{}_{}", self.shape.m(), self.shape.n());
        render_dot(&name, &self.sorted_for_display(), &self.hasse_edges())
    }
}

fn sort_edges(edges: &mut [(IndexSet, IndexSet)]) {
    edges.sort_by(|(a, b), (c, d)| ((a.sum(), a), (b.sum(), b)).cmp(&((c.sum(), c), (d.sum(), d))));
}

fn render_dot(name: &str, nodes: &[IndexSet], edges: &[(IndexSet, IndexSet)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for v in nodes {
        writeln!(out, "  \"{}\" [label=\"{}\"];", v.dot_id(), v).unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "  \"{}\" -> \"{}\";", a.dot_id(), b.dot_id()).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Covering pairs of `Π_{m,n}`.
pub fn hasse_edges(p: &PiPoset) -> Vec<(IndexSet, IndexSet)> {
    p.hasse_edges()
}

/// `Π^γ = {α : α ≱_st γ}`, the ideal killed in the Schubert variety `S(γ)`.
pub fn pi_ideal_for_gamma(gamma: &IndexSet, shape: MatrixShape) -> BTreeSet<IndexSet> {
    index_sets(shape).filter(|a| !gamma.leq_st(a)).collect()
}

/// Is `set` a down-set of `Π_{m,n}`?
pub fn is_pi_ideal(set: &BTreeSet<IndexSet>, shape: MatrixShape) -> bool {
    let all: Vec<IndexSet> = index_sets(shape).collect();
    set.iter().all(|a| all.iter().filter(|b| b.leq_st(a)).all(|b| set.contains(b)))
}

/// Schubert data for one `γ ∈ Π_{m,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCell {
    shape: MatrixShape,
    gamma: IndexSet,
    lambda: Partition,
    ladder: Vec<VarIndex>,
    /// Columns outside `γ`, largest first; Young column `c` is `free_cols[c-1]`.
    free_cols: Vec<usize>,
}

impl GammaCell {
    pub fn new(gamma: IndexSet, shape: MatrixShape) -> Result<Self> {
        let (m, n) = (shape.m(), shape.n());
        if gamma.len() != m || gamma.last() > n {
            return domain(format!("{gamma} is not an element of Π_{{{m},{n}}}"));
        }
        let lambda = Partition::new((1..=m).map(|i| n - m + i - gamma.get(i)).collect())?;
        let mut ladder = Vec::new();
        for i in 1..=m {
            let pivot = gamma.get(m + 1 - i);
            for j in pivot + 1..=n {
                if !gamma.contains(j) {
                    ladder.push(VarIndex::new(i, j));
                }
            }
        }
        let free_cols = (1..=n).rev().filter(|&j| !gamma.contains(j)).collect();
        Ok(GammaCell { shape, gamma, lambda, ladder, free_cols })
    }

    /// Inverse of `λ(γ)`: `γ_i = n - m + i - λ_i`.
    pub fn from_partition(lambda: &Partition, shape: MatrixShape) -> Result<Self> {
        let (m, n) = (shape.m(), shape.n());
        if !lambda.fits_in_box(m, n - m) {
            return domain(format!("{lambda} does not fit in a {m} x {} box", n - m));
        }
        let gamma = IndexSet::new((1..=m).map(|i| n - m + i - lambda.part(i)).collect())?;
        Self::new(gamma, shape)
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn gamma(&self) -> &IndexSet {
        &self.gamma
    }

    /// `λ` with exactly `m` parts.
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Ladder positions in lexicographic order.
    pub fn ladder(&self) -> &[VarIndex] {
        &self.ladder
    }

    pub fn in_ladder(&self, pos: VarIndex) -> bool {
        self.ladder.binary_search(&pos).is_ok()
    }

    /// `γ \ {γ_{m+1-i}} ∪ {j}` for a ladder position `(i, j)`.
    pub fn displaced_set(&self, pos: VarIndex) -> Result<IndexSet> {
        if !self.in_ladder(pos) {
            return domain(format!("({},{}) is not in the ladder of {}", pos.row, pos.col, self.gamma));
        }
        let m = self.shape.m();
        self.gamma.displaced(self.gamma.get(m + 1 - pos.row), pos.col)
    }

    /// Square of `Y_λ` matching a ladder position.
    pub fn young_square(&self, pos: VarIndex) -> Result<VarIndex> {
        if !self.in_ladder(pos) {
            return domain(format!("({},{}) is not in the ladder of {}", pos.row, pos.col, self.gamma));
        }
        let c = self.free_cols.iter().position(|&j| j == pos.col).expect("ladder column is free") + 1;
        Ok(VarIndex::new(self.shape.m() + 1 - pos.row, c))
    }

    /// Ladder position matching a square of `Y_λ`.
    pub fn ladder_position(&self, square: VarIndex) -> Result<VarIndex> {
        if !self.lambda.contains(square) {
            return domain(format!("({},{}) is not a square of {}", square.row, square.col, self.lambda));
        }
        Ok(VarIndex::new(self.shape.m() + 1 - square.row, self.free_cols[square.col - 1]))
    }

    /// `{α : α ≥_st γ}`, the index sets surviving in `S(γ)`.
    pub fn up_set(&self) -> Vec<IndexSet> {
        index_sets(self.shape).filter(|a| self.gamma.leq_st(a)).collect()
    }

    /// Hasse diagram of the up-set of `γ`.
    pub fn to_dot(&self) -> String {
        let up = self.up_set();
        let mut nodes = up.clone();
        nodes.sort_by(|a, b| (a.sum(), a).cmp(&(b.sum(), b)));
        let mut edges: Vec<(IndexSet, IndexSet)> =
            PiPoset::new(self.shape).hasse_edges().into_iter().filter(|(a, _)| self.gamma.leq_st(a)).collect();
        sort_edges(&mut edges);
        let name = format!("cell_{}", self.gamma.dot_id());
        render_dot(&name, &nodes, &edges)
    }

    pub fn to_json(&self) -> CellJson {
        CellJson {
            gamma: self.gamma.entries().to_vec(),
            lambda: self.lambda.parts().to_vec(),
            ladder: self.ladder.iter().map(|v| [v.row, v.col]).collect(),
        }
    }
}

/// See [`GammaCell::new`].
pub fn gamma_to_cell(gamma: &IndexSet, shape: MatrixShape) -> Result<GammaCell> {
    GammaCell::new(gamma.clone(), shape)
}

/// JSON cell descriptor `{ "gamma": [...], "lambda": [...], "ladder": [[i,j], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub gamma: Vec<usize>,
    pub lambda: Vec<usize>,
    pub ladder: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    fn shape(m: usize, n: usize) -> MatrixShape {
        MatrixShape::new(m, n).unwrap()
    }

    #[test]
    fn comparisons() {
        assert!(leq_st(&set(&[1, 3, 5]), &set(&[2, 4, 6])));
        assert!(!leq_st(&set(&[1, 4]), &set(&[2, 3])));
        assert!(!leq_st(&set(&[2, 3]), &set(&[1, 4])));
        let i = set(&[2, 5]);
        assert!(leq_st(&i, &i));
        assert!(IndexSet::new(vec![2, 2]).is_err());
        assert!(IndexSet::in_shape(vec![2, 5], shape(2, 4)).is_err());
    }

    #[test]
    fn hasse_small() {
        let p = PiPoset::new(shape(2, 3));
        let edges = p.hasse_edges();
        assert_eq!(edges, vec![(set(&[1, 2]), set(&[1, 3])), (set(&[1, 3]), set(&[2, 3]))]);
        let big = PiPoset::new(shape(3, 6));
        assert_eq!(big.len(), 20);
        assert!(big.hasse_edges().contains(&(set(&[1, 3, 5]), set(&[1, 4, 5]))));
    }

    #[test]
    fn ideals() {
        let s = shape(2, 4);
        assert!(pi_ideal_for_gamma(&set(&[1, 2]), s).is_empty());
        let top = pi_ideal_for_gamma(&set(&[3, 4]), s);
        assert_eq!(top.len(), 5);
        assert!(!top.contains(&set(&[3, 4])));
        let mid = pi_ideal_for_gamma(&set(&[1, 3]), s);
        assert_eq!(mid.into_iter().collect::<Vec<_>>(), vec![set(&[1, 2])]);
    }

    #[test]
    fn ladder_example() {
        let cell = gamma_to_cell(&set(&[1, 3, 6]), shape(3, 7)).unwrap();
        assert_eq!(cell.lambda().parts(), &[4, 3, 1]);
        let expected: Vec<VarIndex> = [(1, 7), (2, 4), (2, 5), (2, 7), (3, 2), (3, 4), (3, 5), (3, 7)]
            .iter()
            .map(|&(i, j)| VarIndex::new(i, j))
            .collect();
        assert_eq!(cell.ladder(), expected.as_slice());
        // the rotated ladder fills Y_λ
        let squares: BTreeSet<VarIndex> = cell.ladder().iter().map(|&p| cell.young_square(p).unwrap()).collect();
        let young: BTreeSet<VarIndex> = cell.lambda().squares().collect();
        assert_eq!(squares, young);
        for sq in cell.lambda().squares() {
            let pos = cell.ladder_position(sq).unwrap();
            assert_eq!(cell.young_square(pos).unwrap(), sq);
        }
        assert_eq!(cell.displaced_set(VarIndex::new(3, 2)).unwrap(), set(&[2, 3, 6]));
        assert!(cell.displaced_set(VarIndex::new(1, 2)).is_err());
    }

    #[test]
    fn extreme_cells() {
        let s = shape(2, 5);
        let top = gamma_to_cell(&set(&[4, 5]), s).unwrap();
        assert_eq!(top.lambda().parts(), &[0, 0]);
        assert!(top.ladder().is_empty());
        let bottom = gamma_to_cell(&set(&[1, 2]), s).unwrap();
        assert_eq!(bottom.lambda().parts(), &[3, 3]);
        assert_eq!(bottom.ladder().len(), 6);
    }

    #[test]
    fn dot_output() {
        let dot = PiPoset::new(shape(2, 3)).to_dot();
        assert_eq!(
            dot,
            "digraph pi_2_3 {\n  rankdir=BT;\n  node [shape=plaintext];\n  \"12\" [label=\"[12]\"];\n  \"13\" [label=\"[13]\"];\n  \"23\" [label=\"[23]\"];\n  \"12\" -> \"13\";\n  \"13\" -> \"23\";\n}\n"
        );
        let single = PiPoset::new(shape(2, 2)).to_dot();
        assert_eq!(single.matches("label").count(), 1);
        assert!(!single.contains("->"));
    }

    #[test]
    fn json_descriptor() {
        let cell = gamma_to_cell(&set(&[1, 3, 6]), shape(3, 7)).unwrap();
        let js = serde_json::to_string(&cell.to_json()).unwrap();
        assert!(js.starts_with(r#"{"gamma":[1,3,6],"lambda":[4,3,1],"ladder":[[1,7],"#));
    }

    #[test]
    fn lazy_poset_beyond_limit() {
        let p = PiPoset::new(shape(2, 13));
        assert_eq!(p.len(), 78);
        assert_eq!(p.minimum(), set(&[1, 2]));
        assert_eq!(p.maximum(), set(&[12, 13]));
        assert_eq!(p.maximum().to_string(), "[12,13]");
        assert_eq!(p.elements().next().unwrap().to_string(), "[12]");
    }
}
