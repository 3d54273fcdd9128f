use std::time::Instant;

use qgrass::cauchon::{
    diagram_to_hprime_label, restore, single_step_deletion, verify_restored_relations, verify_restored_relations_at,
    DeletionStep, TorusElement,
};
use qgrass::diagrams::enumerate;
use qgrass::qcoeff::rational;
use qgrass::qmatrix::{Partition, VarIndex};

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn v(i: usize, j: usize) -> VarIndex {
    VarIndex::new(i, j)
}

#[test]
fn restoration_over_three_by_three_box() {
    let start = Instant::now();
    for lambda in Partition::all_in_box(3, 3) {
        if lambda.is_empty() {
            continue;
        }
        let r = verify_restored_relations(&lambda).unwrap();
        let n = lambda.size();
        assert_eq!(r.checked, n * (n - 1) / 2);
        assert!(r.passed(), "{lambda}: {:?}", r.failures);
        for q0 in [rational(2, 1), rational(-3, 5)] {
            assert!(verify_restored_relations_at(&lambda, &q0).unwrap().passed());
        }
    }
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn restored_x11_for_two_by_two() {
    let r = restore(&part(&[2, 2])).unwrap();
    let t = r.torus();
    let g = |i, j| TorusElement::gen(t, v(i, j)).unwrap();
    let inv = TorusElement::gen_pow(t, v(2, 2), -1).unwrap();
    // t11 + t12 t22^-1 t21, in the order it is usually written
    let expected = g(1, 1).add(&g(1, 2).mul(&inv).mul(&g(2, 1)));
    assert_eq!(r.get(v(1, 1)).unwrap(), &expected);
}

#[test]
fn single_step_deletions() {
    let start = Instant::now();
    for parts in [vec![2, 2], vec![3, 3], vec![2, 2, 2], vec![3, 2, 1], vec![1]] {
        let lambda = part(&parts);
        let r = single_step_deletion(&lambda).unwrap();
        assert!(r.passed(), "{lambda}: {:?}", r.failures);
        let step = DeletionStep::new(&lambda).unwrap();
        let m = lambda.len();
        for s in step.lambda_prime().squares() {
            let expected = if s.row == m || s.col == lambda.part(m) { -1 } else { 0 };
            assert_eq!(step.sigma_exponent(s), expected);
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn labels_for_every_diagram() {
    for lambda in Partition::all_in_box(2, 3) {
        for d in enumerate(&lambda) {
            let h = diagram_to_hprime_label(&d).unwrap();
            assert_eq!(h.label, d.label());
            assert_eq!(h.k_generators.len(), d.black_count());
        }
    }
}
