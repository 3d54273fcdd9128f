//! Bubble-sort rewriting of generator words into PBW order.
//!
//! Each step takes an adjacent inversion `a b` (with `b < a`) and replaces it
//! by `b a` times a scalar, plus for the diagonal case one extra word. Every
//! word produced is lexicographically smaller than the word it came from, so
//! processing the pending words largest-first visits each word once, with all
//! of its contributions already merged.

use std::collections::BTreeMap;

use super::{add_into, Element, MatrixAlgebra, PbwMonomial, RelationClass, VarIndex};
use crate::error::Result;
use crate::qcoeff::LaurentQ;

type Word = Vec<VarIndex>;

pub(crate) fn normal_form(words: impl IntoIterator<Item = (Word, LaurentQ)>) -> BTreeMap<PbwMonomial, LaurentQ> {
    rewrite_all(words, &mut |_| 0)
}

/// Expand a word, letting `choose` pick which adjacent inversion to rewrite
/// at each step. `choose` receives the number of inversions `k` and must
/// return an index below `k`. The result does not depend on the choices.
pub fn normal_form_by(
    alg: &MatrixAlgebra,
    word: &[VarIndex],
    scalar: LaurentQ,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<Element> {
    for &v in word {
        alg.check_var(v)?;
    }
    let terms = rewrite_all(std::iter::once((word.to_vec(), scalar)), choose);
    Ok(Element::from_terms(alg.clone(), terms))
}

fn rewrite_all(
    words: impl IntoIterator<Item = (Word, LaurentQ)>,
    choose: &mut dyn FnMut(usize) -> usize,
) -> BTreeMap<PbwMonomial, LaurentQ> {
    let mut pending: BTreeMap<Word, LaurentQ> = BTreeMap::new();
    for (w, c) in words {
        push(&mut pending, w, &c);
    }
    let mut out = BTreeMap::new();
    let q_inv = LaurentQ::q_pow(-1);
    let minus_q_diff = -LaurentQ::q_minus_q_inv();
    let mut inversions = Vec::new();
    while let Some((w, c)) = pending.pop_last() {
        inversions.clear();
        inversions.extend((0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]));
        if inversions.is_empty() {
            add_into(&mut out, PbwMonomial::from_sorted_word(&w), &c);
            continue;
        }
        let pick = choose(inversions.len());
        let p = inversions[pick.min(inversions.len() - 1)];
        let (a, b) = (w[p], w[p + 1]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        match super::relation_class(a, b) {
            RelationClass::SameRow | RelationClass::SameCol => push(&mut pending, swapped, &(&c * &q_inv)),
            RelationClass::Antidiagonal => push(&mut pending, swapped, &c),
            RelationClass::Diagonal => {
                // a b = b a - (q - q^-1) x[b.row, a.col] x[a.row, b.col]
                let mut extra = w;
                extra[p] = VarIndex::new(b.row, a.col);
                extra[p + 1] = VarIndex::new(a.row, b.col);
                push(&mut pending, swapped, &c);
                push(&mut pending, extra, &(&c * &minus_q_diff));
            }
            RelationClass::Equal => unreachable!("equal generators are never inverted"),
        }
    }
    out
}

fn push(pending: &mut BTreeMap<Word, LaurentQ>, w: Word, c: &LaurentQ) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match pending.entry(w) {
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
