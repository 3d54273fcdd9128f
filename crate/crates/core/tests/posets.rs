use std::collections::BTreeSet;

use proptest::prelude::*;
use qgrass::posets::{index_sets, is_pi_ideal, pi_ideal_for_gamma, GammaCell, IndexSet, PiPoset};
use qgrass::qmatrix::{MatrixShape, Partition, VarIndex};

fn shape(m: usize, n: usize) -> MatrixShape {
    MatrixShape::new(m, n).unwrap()
}

fn digits(s: &str) -> IndexSet {
    IndexSet::new(s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).unwrap()
}

fn brute_leq(a: &IndexSet, b: &IndexSet) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y)
}

// covers straight from the definition: a < b with nothing strictly between
fn brute_covers(m: usize, n: usize) -> BTreeSet<(IndexSet, IndexSet)> {
    let all: Vec<IndexSet> = index_sets(shape(m, n)).collect();
    let mut out = BTreeSet::new();
    for a in &all {
        for b in &all {
            if a == b || !brute_leq(a, b) {
                continue;
            }
            let between = all.iter().any(|c| c != a && c != b && brute_leq(a, c) && brute_leq(c, b));
            if !between {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[test]
fn hasse_edges_match_brute_force() {
    for n in 1..=7 {
        for m in 1..=n {
            let got: BTreeSet<_> = PiPoset::new(shape(m, n)).hasse_edges().into_iter().collect();
            assert_eq!(got, brute_covers(m, n), "G({m},{n})");
        }
    }
}

#[test]
fn drawn_adjacencies_for_g36() {
    let fixture = include_str!("fixtures/pi_3_6_covers.txt");
    let expected: BTreeSet<(IndexSet, IndexSet)> = fixture
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            (digits(it.next().unwrap()), digits(it.next().unwrap()))
        })
        .collect();
    assert_eq!(expected.len(), 30);
    let p = PiPoset::new(shape(3, 6));
    assert_eq!(p.len(), 20);
    let got: BTreeSet<_> = p.hasse_edges().into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn golden_dot_for_g36() {
    let dot = PiPoset::new(shape(3, 6)).to_dot();
    assert_eq!(dot, include_str!("fixtures/pi_3_6.dot"));
    assert_eq!(dot, PiPoset::new(shape(3, 6)).to_dot());
    assert_eq!(dot.matches("[label=").count(), 20);
    assert_eq!(dot.matches(" -> ").count(), 30);
}

#[test]
fn ladder_of_136_in_3_by_7() {
    let cell = GammaCell::new(IndexSet::new(vec![1, 3, 6]).unwrap(), shape(3, 7)).unwrap();
    assert_eq!(cell.lambda(), &Partition::new(vec![4, 3, 1]).unwrap());
    let expected: Vec<VarIndex> = [(1, 7), (2, 4), (2, 5), (2, 7), (3, 2), (3, 4), (3, 5), (3, 7)]
        .into_iter()
        .map(|(i, j)| VarIndex::new(i, j))
        .collect();
    assert_eq!(cell.ladder(), &expected[..]);
}

#[test]
fn every_cell_partition_fits_and_ladder_is_a_bijection() {
    for n in 1..=7 {
        for m in 1..=n {
            let s = shape(m, n);
            for gamma in index_sets(s) {
                let cell = GammaCell::new(gamma.clone(), s).unwrap();
                let lambda = cell.lambda();
                assert!(lambda.fits_in_box(m, n - m));
                assert_eq!(cell.ladder().len(), lambda.size());
                let squares: BTreeSet<VarIndex> =
                    cell.ladder().iter().map(|&p| cell.young_square(p).unwrap()).collect();
                let expected: BTreeSet<VarIndex> = lambda.squares().collect();
                assert_eq!(squares, expected);
                for &p in cell.ladder() {
                    assert_eq!(cell.ladder_position(cell.young_square(p).unwrap()).unwrap(), p);
                }
                let back = GammaCell::from_partition(lambda, s).unwrap();
                assert_eq!(back.gamma(), &gamma);
            }
        }
    }
}

proptest! {
    #[test]
    fn order_is_a_partial_order(n in 2usize..9, m_seed in 0usize..8, picks in proptest::collection::vec(0usize..200, 3)) {
        let m = 1 + m_seed % n;
        let all: Vec<IndexSet> = index_sets(shape(m, n)).collect();
        let [a, b, c] = [&all[picks[0] % all.len()], &all[picks[1] % all.len()], &all[picks[2] % all.len()]];
        prop_assert!(a.leq_st(a));
        if a.leq_st(b) && b.leq_st(a) {
            prop_assert_eq!(a, b);
        }
        if a.leq_st(b) && b.leq_st(c) {
            prop_assert!(a.leq_st(c));
        }
        prop_assert_eq!(a.leq_st(b), brute_leq(a, b));
        // complement reflection reverses the order
        let (ra, rb) = (a.complement_reflection(n), b.complement_reflection(n));
        prop_assert_eq!(a.leq_st(b), rb.leq_st(&ra));
    }

    #[test]
    fn gamma_ideals_are_ideals(n in 2usize..8, m_seed in 0usize..8, pick in 0usize..100) {
        let m = 1 + m_seed % n;
        let s = shape(m, n);
        let all: Vec<IndexSet> = index_sets(s).collect();
        let gamma = &all[pick % all.len()];
        let ideal = pi_ideal_for_gamma(gamma, s);
        prop_assert!(is_pi_ideal(&ideal, s));
        prop_assert!(!ideal.contains(gamma));
        let expected: BTreeSet<IndexSet> = all.iter().filter(|a| !gamma.leq_st(a)).cloned().collect();
        prop_assert_eq!(ideal, expected);
    }
}
