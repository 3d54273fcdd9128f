//! Cauchon diagrams on Young diagrams, their enumeration and counting, and
//! the cell-by-cell count of torus-invariant primes of `O_q(G_{m,n})`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::posets::{index_sets, GammaCell};
use crate::qmatrix::{MatrixShape, Partition, VarIndex};

/// Black/white coloring of `Y_λ`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CauchonDiagram {
    lambda: Partition,
    black: Vec<bool>,
}

impl CauchonDiagram {
    /// Any coloring; validity is checked separately.
    pub fn from_bits(lambda: &Partition, black: Vec<bool>) -> Result<Self> {
        let lambda = lambda.trimmed();
        if black.len() != lambda.size() {
            return domain(format!("{} colors given for {} squares", black.len(), lambda.size()));
        }
        Ok(CauchonDiagram { lambda, black })
    }

    pub fn all_white(lambda: &Partition) -> Self {
        CauchonDiagram { lambda: lambda.trimmed(), black: vec![false; lambda.size()] }
    }

    pub fn all_black(lambda: &Partition) -> Self {
        CauchonDiagram { lambda: lambda.trimmed(), black: vec![true; lambda.size()] }
    }

    pub fn from_black_squares(lambda: &Partition, squares: &[VarIndex]) -> Result<Self> {
        let mut d = Self::all_white(lambda);
        for &s in squares {
            let k = d
                .offset(s)
                .ok_or_else(|| Error::Domain(format!("({},{}) is not a square of {lambda}", s.row, s.col)))?;
            d.black[k] = true;
        }
        Ok(d)
    }

    /// Parse the `parts/bits` label, e.g. `22/1100`.
    pub fn from_label(label: &str) -> Result<Self> {
        let (parts, bits) =
            label.split_once('/').ok_or_else(|| Error::Domain(format!("bad diagram label '{label}'")))?;
        let parts: Vec<usize> = if parts.contains(',') {
            parts.split(',').map(str::parse).collect::<std::result::Result<_, _>>()
        } else {
            parts.chars().map(|c| c.to_string().parse()).collect::<std::result::Result<_, _>>()
        }
        .map_err(|_| Error::Domain(format!("bad partition in label '{label}'")))?;
        let black = bits
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(Error::Domain(format!("bad color '{c}' in label '{label}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&Partition::new(parts)?, black)
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn bits(&self) -> &[bool] {
        &self.black
    }

    fn offset(&self, s: VarIndex) -> Option<usize> {
        self.lambda.contains(s).then(|| (1..s.row).map(|r| self.lambda.part(r)).sum::<usize>() + s.col - 1)
    }

    pub fn is_black(&self, s: VarIndex) -> bool {
        self.offset(s).is_some_and(|k| self.black[k])
    }

    /// Every black square has only black squares above it or only black squares to its left.
    pub fn is_valid(&self) -> bool {
        self.lambda.squares().all(|s| {
            !self.is_black(s)
                || (1..s.row).all(|r| self.is_black(VarIndex::new(r, s.col)))
                || (1..s.col).all(|c| self.is_black(VarIndex::new(s.row, c)))
        })
    }

    pub fn black_squares(&self) -> Vec<VarIndex> {
        self.lambda.squares().zip(&self.black).filter(|(_, &b)| b).map(|(s, _)| s).collect()
    }

    pub fn black_count(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }

    /// Positions of the `t_ij` generating `K_C`.
    pub fn kc_generators(&self) -> Result<Vec<VarIndex>> {
        if !self.is_valid() {
            return domain(format!("{} is not a Cauchon diagram", self.label()));
        }
        Ok(self.black_squares())
    }

    /// `22/1100`: parts, then row-major colors with 1 for black.
    pub fn label(&self) -> String {
        let parts = self.lambda.parts();
        let sep = if parts.iter().any(|&p| p >= 10) { "," } else { "" };
        let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
        let bits: String = self.black.iter().map(|&b| if b { '1' } else { '0' }).collect();
        format!("{}/{}", parts.join(sep), bits)
    }

    /// Monospaced grid, `■` for black and `·` for white.
    pub fn art(&self) -> String {
        let mut out = String::new();
        let mut k = 0;
        for &len in self.lambda.parts() {
            let row: Vec<&str> = self.black[k..k + len].iter().map(|&b| if b { "■" } else { "·" }).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
            k += len;
        }
        out
    }
}

impl fmt::Display for CauchonDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn is_valid(d: &CauchonDiagram) -> bool {
    d.is_valid()
}

pub fn black_count(d: &CauchonDiagram) -> usize {
    d.black_count()
}

pub fn kc_generators(d: &CauchonDiagram) -> Result<Vec<VarIndex>> {
    d.kc_generators()
}

/// Valid diagrams on `Y_λ` in increasing order of their row-major bitstrings (white before black).
pub struct Enumerate {
    lambda: Partition,
    squares: Vec<VarIndex>,
    /// Row-major offset of the first square of each row.
    row_start: Vec<usize>,
    bits: Vec<bool>,
    started: bool,
    done: bool,
}

impl Enumerate {
    fn new(lambda: &Partition) -> Self {
        let lambda = lambda.trimmed();
        let squares: Vec<VarIndex> = lambda.squares().collect();
        let mut row_start = Vec::with_capacity(lambda.len());
        let mut acc = 0;
        for &p in lambda.parts() {
            row_start.push(acc);
            acc += p;
        }
        Enumerate { lambda, squares, row_start, bits: Vec::new(), started: false, done: false }
    }

    fn bit(&self, s: VarIndex) -> bool {
        self.bits[self.row_start[s.row - 1] + s.col - 1]
    }

    /// Can the square at `bits.len()` be black, given the prefix?
    fn black_allowed(&self) -> bool {
        let s = self.squares[self.bits.len()];
        (1..s.row).all(|r| self.bit(VarIndex::new(r, s.col))) || (1..s.col).all(|c| self.bit(VarIndex::new(s.row, c)))
    }

    fn emit(&self) -> CauchonDiagram {
        CauchonDiagram { lambda: self.lambda.clone(), black: self.bits.clone() }
    }
}

impl Iterator for Enumerate {
    type Item = CauchonDiagram;

    fn next(&mut self) -> Option<CauchonDiagram> {
        if self.done {
            return None;
        }
        if !self.started {
            // all white is always valid
            self.started = true;
            self.bits = vec![false; self.squares.len()];
            return Some(self.emit());
        }
        loop {
            match self.bits.pop() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(true) => continue,
                Some(false) => {
                    if self.black_allowed() {
                        self.bits.push(true);
                        self.bits.resize(self.squares.len(), false);
                        return Some(self.emit());
                    }
                }
            }
        }
    }
}

pub fn enumerate(lambda: &Partition) -> Enumerate {
    Enumerate::new(lambda)
}

fn memo() -> &'static Mutex<HashMap<Vec<usize>, u128>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, u128>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of Cauchon diagrams on `Y_λ` by the four-term recurrence on the last row.
pub fn count_recurrence(lambda: &Partition) -> Result<u128> {
    let mut cache = memo().lock().unwrap_or_else(|e| e.into_inner());
    count_rec(lambda.trimmed().parts(), &mut cache)
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn count_rec(parts: &[usize], cache: &mut HashMap<Vec<usize>, u128>) -> Result<u128> {
    if parts.is_empty() {
        return Ok(1);
    }
    if let Some(&v) = cache.get(parts) {
        return Ok(v);
    }
    let m = parts.len();
    let all_minus: Vec<usize> = parts.iter().map(|p| p - 1).collect();
    let head = &parts[..m - 1];
    let head_minus: Vec<usize> = head.iter().map(|p| p - 1).collect();
    let mut shortened = parts.to_vec();
    shortened[m - 1] -= 1;

    let a = count_rec(&trim(all_minus), cache)?;
    let b = count_rec(head, cache)?;
    let c = count_rec(&trim(head_minus), cache)?;
    let d = count_rec(&trim(shortened), cache)?;
    let overflow = Error::Overflow("Cauchon diagram count exceeds u128");
    let v = a
        .checked_add(b)
        .and_then(|s| s.checked_add(d))
        .ok_or(overflow.clone())?
        .checked_sub(c)
        .ok_or(Error::InternalInconsistency(format!("negative count for {parts:?}")))?;
    cache.insert(parts.to_vec(), v);
    Ok(v)
}

/// `1 + Σ_{i<m} C(n,i) ((i-m)^i (m-i+1)^{n-i} - (i-m+1)^i (m-i)^{n-i})`.
pub fn williams_total(m: usize, n: usize) -> Result<BigInt> {
    if m == 0 || m > n {
        return domain(format!("williams_total needs 1 <= m <= n, got ({m},{n})"));
    }
    let big = |x: i64| BigInt::from(x);
    let (mi, ni) = (m as i64, n as i64);
    let mut total = BigInt::one();
    let mut binom = BigInt::one();
    for i in 0..m {
        let ii = i as i64;
        let e1 = i as u32;
        let e2 = (n - i) as u32;
        let t1 = big(ii - mi).pow(e1) * big(mi - ii + 1).pow(e2);
        let t2 = big(ii - mi + 1).pow(e1) * big(mi - ii).pow(e2);
        total += &binom * (t1 - t2);
        binom = binom * big(ni - ii) / big(ii + 1);
    }
    Ok(total)
}

/// Number of torus-invariant primes in one Schubert cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCell {
    pub gamma: Vec<usize>,
    pub lambda: Vec<usize>,
    pub count: u128,
}

/// Per-cell counts plus the irrelevant ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCensus {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<CensusCell>,
    pub irrelevant: u128,
    pub total: u128,
}

impl CellCensus {
    pub fn count_for(&self, gamma: &[usize]) -> Option<u128> {
        self.cells.iter().find(|c| c.gamma == gamma).map(|c| c.count)
    }
}

/// Count each cell by its partition, check the sum against the closed formula.
pub fn hspec_census(m: usize, n: usize) -> Result<CellCensus> {
    let shape = MatrixShape::new(m, n)?;
    let cells: Vec<GammaCell> = index_sets(shape).map(|g| GammaCell::new(g, shape)).collect::<Result<_>>()?;
    let cells: Vec<CensusCell> = cells
        .par_iter()
        .map(|cell| {
            Ok(CensusCell {
                gamma: cell.gamma().entries().to_vec(),
                lambda: cell.lambda().trimmed().parts().to_vec(),
                count: count_recurrence(cell.lambda())?,
            })
        })
        .collect::<Result<_>>()?;
    let mut total: u128 = 1;
    for c in &cells {
        total = total.checked_add(c.count).ok_or(Error::Overflow("census total exceeds u128"))?;
    }
    let expected = williams_total(m, n)?;
    if BigInt::from(total) != expected {
        return Err(Error::Consistency(format!(
            "census of G({m},{n}) totals {total}, closed formula gives {expected}"
        )));
    }
    Ok(CellCensus { m, n, cells, irrelevant: 1, total })
}

/// `1 + Σ_λ count(λ)` over partitions in an `m x (n-m)` box.
pub fn box_total(m: usize, n: usize) -> Result<BigInt> {
    let mut total = BigInt::one();
    for lambda in Partition::all_in_box(m, n - m) {
        total += BigInt::from(count_recurrence(&lambda)?);
    }
    if total.is_zero() {
        return Err(Error::InternalInconsistency("empty box total".into()));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validity() {
        let l = part(&[2, 2]);
        assert!(CauchonDiagram::all_white(&l).is_valid());
        assert!(CauchonDiagram::all_black(&l).is_valid());
        let d = CauchonDiagram::from_black_squares(&l, &[VarIndex::new(2, 2)]).unwrap();
        assert!(!d.is_valid());
        assert!(d.kc_generators().is_err());
        // first row and first column are always legal
        let d = CauchonDiagram::from_black_squares(&l, &[VarIndex::new(1, 2), VarIndex::new(2, 1)]).unwrap();
        assert!(d.is_valid());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate(&part(&[1])).count(), 2);
        assert_eq!(enumerate(&part(&[2, 2])).count(), 14);
        assert_eq!(enumerate(&Partition::empty()).count(), 1);
        assert_eq!(count_recurrence(&part(&[1])).unwrap(), 2);
        assert_eq!(count_recurrence(&part(&[1, 1])).unwrap(), 4);
        assert_eq!(count_recurrence(&part(&[2, 2])).unwrap(), 14);
        assert_eq!(count_recurrence(&part(&[3, 3, 3])).unwrap(), 230);
        assert_eq!(count_recurrence(&part(&[2, 0])).unwrap(), 4);
    }

    #[test]
    fn enumeration_order() {
        let labels: Vec<String> = enumerate(&part(&[1, 1])).map(|d| d.label()).collect();
        assert_eq!(labels, ["11/00", "11/01", "11/10", "11/11"]);
    }

    #[test]
    fn closed_formula() {
        assert_eq!(williams_total(2, 4).unwrap(), BigInt::from(34));
        assert_eq!(williams_total(3, 6).unwrap(), BigInt::from(884));
        assert_eq!(williams_total(1, 1).unwrap(), BigInt::from(2));
        assert_eq!(williams_total(1, 2).unwrap(), BigInt::from(4));
        assert!(williams_total(3, 2).is_err());
    }

    #[test]
    fn census() {
        let c = hspec_census(2, 4).unwrap();
        assert_eq!(c.total, 34);
        assert_eq!(c.count_for(&[1, 2]), Some(14));
        assert_eq!(c.count_for(&[1, 3]), Some(8));
        assert_eq!(c.count_for(&[3, 4]), Some(1));
        let c = hspec_census(1, 2).unwrap();
        assert_eq!(c.cells.iter().map(|x| x.count).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(c.total, 4);
        assert_eq!(hspec_census(3, 6).unwrap().total, 884);
        assert_eq!(box_total(3, 6).unwrap(), BigInt::from(884));
    }

    #[test]
    fn statistics_and_art() {
        let l = part(&[2, 1]);
        let d = CauchonDiagram::from_black_squares(&l, &[VarIndex::new(1, 1), VarIndex::new(1, 2)]).unwrap();
        assert_eq!(d.black_count(), 2);
        assert_eq!(d.art(), "■ ■\n·\n");
        assert_eq!(d.label(), "21/110");
        assert_eq!(CauchonDiagram::from_label("21/110").unwrap(), d);
        let sq = part(&[2, 2]);
        let top = CauchonDiagram::from_black_squares(&sq, &[VarIndex::new(1, 1), VarIndex::new(1, 2)]).unwrap();
        assert_eq!(top.kc_generators().unwrap(), vec![VarIndex::new(1, 1), VarIndex::new(1, 2)]);
        assert_eq!(CauchonDiagram::all_black(&sq).black_count(), 4);
        assert!(CauchonDiagram::from_label("22/11").is_err());
    }
}
