use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgrass::qcoeff::{rational, LaurentQ, Rational};
use qgrass::qmatrix::{normal_form_by, Element, MatrixAlgebra, MatrixShape, Partition, PbwMonomial, VarIndex};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_word(rng: &mut ChaCha8Rng, vars: &[VarIndex], len: usize) -> Vec<VarIndex> {
    (0..len).map(|_| vars[rng.gen_range(0..vars.len())]).collect()
}

fn random_coeff(rng: &mut ChaCha8Rng) -> LaurentQ {
    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    LaurentQ::monomial(Rational::from_integer(c.into()), rng.gen_range(-2..=2))
}

fn random_element(rng: &mut ChaCha8Rng, alg: &MatrixAlgebra) -> Element {
    let vars = alg.variables();
    let terms = rng.gen_range(1..=2);
    let words = (0..terms)
        .map(|_| {
            let len = rng.gen_range(1..=2);
            (random_word(rng, &vars, len), random_coeff(rng))
        })
        .collect();
    alg.normal_form_sum(words).unwrap()
}

// Plain bubble-sort rewriting with q specialized to a number, written
// directly from the relation table.
fn oracle_normal_form(word: &[VarIndex], q: &Rational) -> BTreeMap<Vec<VarIndex>, Rational> {
    let qi = q.recip();
    let mut todo = vec![(word.to_vec(), Rational::one())];
    let mut out: BTreeMap<Vec<VarIndex>, Rational> = BTreeMap::new();
    while let Some((w, c)) = todo.pop() {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            *out.entry(w).or_insert_with(Rational::zero) += c;
            continue;
        };
        let (a, b) = (w[k], w[k + 1]);
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        if a.row == b.row || a.col == b.col {
            todo.push((swapped, &c * &qi));
        } else if a.col < b.col {
            todo.push((swapped, c));
        } else {
            let mut extra = w.clone();
            extra[k] = VarIndex::new(b.row, a.col);
            extra[k + 1] = VarIndex::new(a.row, b.col);
            todo.push((extra, -(&c * &(q - &qi))));
            todo.push((swapped, c));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn specialized(e: &Element, q: &Rational) -> BTreeMap<Vec<VarIndex>, Rational> {
    e.eval_q(q).into_iter().map(|(m, c)| (m.word(), c)).collect()
}

fn shapes() -> Vec<MatrixShape> {
    [(1, 2), (2, 2), (2, 3), (3, 3), (2, 4), (3, 4)].into_iter().map(|(m, n)| MatrixShape::new(m, n).unwrap()).collect()
}

#[test]
fn associativity_on_a_thousand_random_triples() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shapes = shapes();
    for k in 0..1000 {
        let alg = MatrixAlgebra::quantum_matrices(shapes[k % shapes.len()]);
        let (a, b, c) =
            (random_element(&mut rng, &alg), random_element(&mut rng, &alg), random_element(&mut rng, &alg));
        let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        assert_eq!(left, right, "triple {k}: ({a}) ({b}) ({c})");
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn engine_agrees_with_numeric_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = rational(3, 2);
    for shape in shapes() {
        let alg = MatrixAlgebra::quantum_matrices(shape);
        let vars = alg.variables();
        for _ in 0..40 {
            let len = rng.gen_range(2..=5);
            let w = random_word(&mut rng, &vars, len);
            let e = alg.normal_form(&w, LaurentQ::one()).unwrap();
            assert_eq!(specialized(&e, &q), oracle_normal_form(&w, &q), "word {w:?}");
        }
    }
}

#[test]
fn rewrite_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for shape in shapes() {
        let alg = MatrixAlgebra::quantum_matrices(shape);
        let vars = alg.variables();
        for _ in 0..25 {
            let len = rng.gen_range(2..=6);
            let w = random_word(&mut rng, &vars, len);
            let canonical = alg.normal_form(&w, LaurentQ::one()).unwrap();
            let mut pick = |k: usize| rng.gen_range(0..k);
            let shuffled = normal_form_by(&alg, &w, LaurentQ::one(), &mut pick).unwrap();
            assert_eq!(canonical, shuffled);
            let mut first = |_: usize| 0;
            assert_eq!(canonical, normal_form_by(&alg, &w, LaurentQ::one(), &mut first).unwrap());
        }
    }
}

fn words(vars: &[VarIndex], d: usize) -> Vec<Vec<VarIndex>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|w| vars.iter().map(move |&v| [w.clone(), vec![v]].concat())).collect();
    }
    out
}

#[test]
fn graded_dimensions() {
    for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3)] {
        let alg = MatrixAlgebra::quantum_matrices(MatrixShape::new(m, n).unwrap());
        let vars = alg.variables();
        let v = vars.len();
        for d in 0..=4usize {
            if v.pow(d as u32) > 2000 {
                continue;
            }
            // every word lands in the span of the sorted monomials
            let mut support = BTreeSet::new();
            for w in words(&vars, d) {
                let e = alg.normal_form(&w, LaurentQ::one()).unwrap();
                support.extend(e.terms().map(|(mono, _)| mono.clone()));
            }
            let expected = binom(v + d - 1, d);
            assert_eq!(support.len(), expected, "({m},{n}) degree {d}");
            assert_eq!(alg.graded_dimension(d as u32), expected);
            // sorted monomials are fixed, hence independent
            for mono in alg.pbw_basis(d as u32) {
                let e = alg.normal_form(&mono.word(), LaurentQ::one()).unwrap();
                assert_eq!(e.term_count(), 1);
                assert!(e.coeff(&mono).is_one());
            }
        }
    }
    for (m, n) in [(3, 3), (3, 4)] {
        let alg = MatrixAlgebra::quantum_matrices(MatrixShape::new(m, n).unwrap());
        let v = m * n;
        for d in 0..=4u32 {
            assert_eq!(alg.graded_dimension(d), binom(v + d as usize - 1, d as usize));
        }
    }
}

#[test]
fn q_one_is_the_commutative_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for shape in shapes() {
        let alg = MatrixAlgebra::quantum_matrices(shape);
        let vars = alg.variables();
        for _ in 0..30 {
            let len = rng.gen_range(1..=6);
            let w = random_word(&mut rng, &vars, len);
            let e = alg.normal_form(&w, LaurentQ::one()).unwrap();
            let at_one = e.eval_q(&Rational::one());
            let mut sorted = w.clone();
            sorted.sort();
            let expected: BTreeMap<PbwMonomial, Rational> =
                [(PbwMonomial::from_sorted_word(&sorted), Rational::one())].into_iter().collect();
            assert_eq!(at_one, expected);
        }
    }
}

#[test]
fn rotation_is_a_multiplicative_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for shape in shapes() {
        let alg = MatrixAlgebra::quantum_matrices(shape);
        for _ in 0..20 {
            let (a, b) = (random_element(&mut rng, &alg), random_element(&mut rng, &alg));
            let ab = a.try_mul(&b).unwrap();
            assert_eq!(ab.rotate180(), a.rotate180().try_mul(&b.rotate180()).unwrap());
            assert_eq!(a.rotate180().rotate180(), a);
        }
    }
}

#[test]
fn partition_subalgebras_are_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for parts in [vec![2, 1], vec![3, 2, 2], vec![2, 2]] {
        let lambda = Partition::new(parts).unwrap();
        let sub = MatrixAlgebra::partition_subalgebra(lambda.clone());
        for _ in 0..20 {
            let (a, b) = (random_element(&mut rng, &sub), random_element(&mut rng, &sub));
            let ab = a.try_mul(&b).unwrap();
            for (mono, _) in ab.terms() {
                assert!(mono.vars().all(|v| lambda.contains(v)), "{ab}");
            }
        }
    }
}
