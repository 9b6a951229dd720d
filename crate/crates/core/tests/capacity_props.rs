//! The random simplex-power construction and the point-set property.

mod common;

use common::*;
use gpt_capacity::capacity::{
    component_discriminates, danzer_grunbaum_check, failure_probability_bound, nwise_failures_by_lp,
    randomized_search, sample_random_code, RandomCode, SearchParams,
};
use gpt_capacity::discrimination::is_perfectly_distinguishable_indices;
use gpt_capacity::hypergraph::combinations;
use gpt_capacity::theories::simplex_power;
use gpt_capacity::{Exec, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn has_component(code: &RandomCode, subset: &[usize]) -> bool {
    (0..code.l).any(|c| component_discriminates(code, subset, c).unwrap())
}

/// N-subsets of `simplex_power(q, l)` on which the component test and the
/// LP disagree.
fn component_and_lp_disagreements(q: usize, l: usize, arity: usize) -> Vec<Vec<usize>> {
    let t = simplex_power(q, l).unwrap();
    let words: Vec<Vec<usize>> = (0..t.len())
        .map(|mut i| {
            let mut w = vec![0; l];
            for k in (0..l).rev() {
                w[k] = i % q + 1;
                i /= q;
            }
            w
        })
        .collect();
    let code = RandomCode::new(q, l, words).unwrap();
    combinations(t.len(), arity)
        .filter(|s| has_component(&code, s) != is_perfectly_distinguishable_indices(&t, s).unwrap().is_perfect())
        .collect()
}

// An effect on a product of simplices is a sum of per-component functions,
// and summing the δ-conditions shows some component must carry all N
// symbols. So the exhaustive search for a counterexample comes up empty.
#[test]
fn component_condition_is_exact_on_small_simplex_powers() {
    for (q, l, arity) in [(2, 2, 3), (2, 3, 3), (3, 2, 3), (3, 2, 4), (4, 2, 3), (3, 2, 2)] {
        assert_eq!(component_and_lp_disagreements(q, l, arity), Vec::<Vec<usize>>::new(), "q={q} l={l} N={arity}");
    }
}

#[test]
fn square_points_have_the_property_and_five_random_points_do_not() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4usize {
        let cube: Vec<Vec<Rational>> = (0..1usize << n)
            .map(|k| (0..n).map(|i| q(if k >> i & 1 == 1 { 1 } else { 0 })).collect())
            .collect();
        for _ in 0..10 {
            let subset: Vec<Vec<Rational>> = cube.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
            assert!(danzer_grunbaum_check(&subset).unwrap());
        }
        assert!(danzer_grunbaum_check(&cube).unwrap());
    }
    for _ in 0..100 {
        let pts = random_points(&mut rng, 5, 2, 6);
        assert!(!danzer_grunbaum_check(&pts).unwrap());
    }
    let two = random_points(&mut rng, 2, 3, 6);
    assert!(danzer_grunbaum_check(&two).unwrap());
}

#[test]
fn monte_carlo_does_not_depend_on_worker_count() {
    let p = SearchParams { q: 5, l: 4, codewords: 6, arity: 3, trials: 200, seed: 77 };
    let a = randomized_search(p, Exec::Sequential).unwrap();
    let b = randomized_search(p, Exec::Parallel).unwrap();
    let c = randomized_search(p, Exec::Workers(3)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 150, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn discriminating_components_imply_lp_distinguishability(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = rng.gen_range(2..=4usize);
        let l = rng.gen_range(1..=3usize);
        let total = q.pow(l as u32);
        let m = rng.gen_range(2..=total.min(8));
        let arity = rng.gen_range(2..=3usize).min(m);
        let code = sample_random_code(q, l, m, seed).unwrap();
        let lp_failures = nwise_failures_by_lp(&code, arity, Exec::Parallel).unwrap();
        for s in combinations(code.len(), arity) {
            if has_component(&code, &s) {
                prop_assert!(!lp_failures.contains(&s));
            }
        }
        if arity == 2 {
            prop_assert!(lp_failures.is_empty());
        }
    }

    #[test]
    fn bound_is_monotone(q in 2u64..8, l in 0u64..20, m in 2u64..40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arity = rng.gen_range(2..=q);
        let b = failure_probability_bound(q, l, m, arity).unwrap();
        prop_assert!(failure_probability_bound(q, l + 1, m, arity).unwrap() <= b);
        prop_assert!(failure_probability_bound(q, l, m + 1, arity).unwrap() >= b);
        if arity < q {
            prop_assert!(b.is_positive() || m < arity);
        }
    }

    #[test]
    fn sampled_codes_are_valid(q in 1usize..6, l in 1usize..4, seed in any::<u64>()) {
        let total = q.pow(l as u32);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=total.min(30));
        let code = sample_random_code(q, l, m, seed).unwrap();
        prop_assert_eq!(code.len(), m);
        prop_assert!(RandomCode::new(q, l, code.codewords.clone()).is_ok());
        prop_assert_eq!(code, sample_random_code(q, l, m, seed).unwrap());
    }
}
