mod common;

use arbor::agroup::{product_a, DEFAULT_BOUND};
use arbor::completion::{check_completion, complete_to_alternating, plan, smallest_prime_greater};
use arbor::corpus::corpus;
use common::*;

#[test]
fn corpus_completions_hold_all_properties() {
    for (i, a) in corpus(99, 30, 3..=8).unwrap().iter().enumerate() {
        let q = smallest_prime_greater(a.n() as u64) as usize;
        let n = a.n() + q + 2 + i % 3;
        let c = complete_to_alternating(a, n, i as u64).unwrap();
        assert!(check_completion(a, &c).all(), "instance {i}");
        assert_eq!(c.automaton.n(), n);
        assert!(c.automaton.is_complete());
    }
}

#[test]
fn m5_n14_uses_q7() {
    let a = corpus(5, 40, 5..=5).unwrap().remove(0);
    let c = complete_to_alternating(&a, 14, 0).unwrap();
    assert_eq!((c.plan.q, c.plan.k), (7, 0));
    assert!(c.certificate.valid());
}

#[test]
fn seeds_are_reproducible() {
    let a = corpus(3, 1, 6..=6).unwrap().remove(0);
    assert_eq!(
        complete_to_alternating(&a, 17, 4).unwrap().automaton,
        complete_to_alternating(&a, 17, 4).unwrap().automaton
    );
    assert_eq!(corpus(8, 5, 3..=8).unwrap(), corpus(8, 5, 3..=8).unwrap());
}

#[test]
fn plan_rejects_small_targets() {
    let a = corpus(1, 1, 4..=4).unwrap().remove(0);
    let err = plan(&a, 4 + 5 + 1).unwrap_err().to_string();
    assert!(err.contains("n < m+q+2 = 11"), "{err}");
}

#[test]
fn alternating_factor_is_the_kernel() {
    let a5 = grp("perm(5; a=(0 1 2), b=(0 1 2 3 4))");
    assert_eq!(a5.order(), 60);
    let (p, pairs) = product_a(&a5, &grp(Z2), DEFAULT_BOUND).unwrap();
    assert_eq!(p.order(), 120);
    let kernel: Vec<usize> = pairs.iter().filter(|x| x.1 == 0).map(|x| x.0).collect();
    assert_eq!(kernel.len(), 60);
    let mut distinct = kernel.clone();
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(distinct.len(), 60);
}
