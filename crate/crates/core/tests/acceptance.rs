//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gpt_capacity::capacity::{
    failure_probability_bound, kappa_pairwise, nwise_failures_by_lp, probabilistic_params,
    randomized_search, sample_random_code, sig12, verify_hypercube_memory,
    verify_nwise_by_components, SearchParams,
};
use gpt_capacity::discrimination::{
    delta_conditions, is_perfectly_distinguishable, max_success_probability, perfect_program,
    pairwise_distinguishable, verify_witness,
};
use gpt_capacity::fixtures::fixture;
use gpt_capacity::gpt::linearly_independent;
use gpt_capacity::hypergraph::{
    build_hypergraph, build_hypergraph_any, build_hypergraph_unpruned, combinations,
    exact_max_clique, greedy_max_clique, Hypergraph, DEFAULT_NODE_BUDGET,
};
use gpt_capacity::lp::{check_certificate, linalg::mat_vec};
use gpt_capacity::theories::{classical_simplex, hypercube_theory, prism_product};
use gpt_capacity::{AnyTheory, Exec, Measurement, Rational, Theory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn hypercube_memories() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for m in 1..=6 {
        let rep = verify_hypercube_memory(m, Exec::Parallel).map_err(err)?;
        ensure(rep.verified, || format!("m = {m} failed"))?;
        ensure(rep.pairs_checked == (1u64 << m) * ((1 << m) - 1) / 2, || format!("m = {m}: wrong pair count"))?;
        pairs += rep.pairs_checked;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("{pairs} pairs by LP and closed form in {took:.2?}"))
}

fn compression_table() -> Outcome {
    for m in 1..=20u64 {
        let k = kappa_pairwise(m).map_err(err)?;
        let oracle = m as f64 * std::f64::consts::LN_2 / ((m + 1) as f64).ln();
        ensure(k.dimension == m + 1, || format!("d(2,{m}) = {}", k.dimension))?;
        ensure(sig12(k.value()) == sig12(oracle), || {
            format!("m = {m}: {} vs {}", sig12(k.value()), sig12(oracle))
        })?;
    }
    let k3 = kappa_pairwise(3).map_err(err)?.exact();
    ensure(k3 == Some(Rational::new(3, 2)), || format!("κ(2,3) = {k3:?}"))?;
    Ok("m = 1..20 agree to 12 digits; κ(2,3) = 3/2".into())
}

fn planar_bound() -> Outcome {
    let sq = hypercube_theory(2).map_err(err)?;
    let h = build_hypergraph(&sq, 2, Exec::Sequential).map_err(err)?;
    let c = exact_max_clique(&h, DEFAULT_NODE_BUDGET).map_err(err)?;
    ensure(c.len() == 4, || format!("square clique {}", c.len()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut largest = 0;
    for i in 0..200 {
        let count = rng.gen_range(4..=12);
        let t = random_polytope(&mut rng, count, 2);
        let h = build_hypergraph(&t, 2, Exec::Parallel).map_err(err)?;
        let c = exact_max_clique(&h, DEFAULT_NODE_BUDGET).map_err(err)?;
        ensure(c.len() <= 4, || format!("polytope {i} has a pairwise clique of {}", c.len()))?;
        largest = largest.max(c.len());
    }
    Ok(format!("square = 4; 200 random polygons, largest clique {largest}"))
}

fn normalization_counterexample() -> Outcome {
    let f = fixture("appendix-c-triple").map_err(err)?;
    let t = f.theory.as_exact().ok_or("fixture is not exact")?;
    let out = is_perfectly_distinguishable(t, &f.states).map_err(err)?;
    ensure(!out.is_perfect(), || "triple reported distinguishable".into())?;
    let cert = out.certificate.ok_or("no certificate")?;
    ensure(check_certificate(&perfect_program(t, &f.states), &cert, 0.0), || "certificate fails substitution".into())?;
    ensure(delta_conditions(&f.states, &f.effects, 0.0), || "δ-conditions fail".into())?;
    ensure(f.effects.iter().all(|e| t.is_effect(e).unwrap_or(false)), || "not all effects valid".into())?;
    let m = Measurement::new(f.effects.clone());
    ensure(!t.is_measurement(&m).map_err(err)?, || "effects form a measurement".into())?;
    let half = |v: &[i64]| v.iter().map(|&x| Rational::new(x, 2)).collect::<Vec<_>>();
    ensure(m.total(4) == half(&[3, 1, -1, -1]), || "effect sum differs".into())?;
    ensure(!verify_witness(t, &f.states, &m).map_err(err)?, || "witness check accepted a non-measurement".into())?;
    Ok("not distinguishable, Farkas certificate verified; δ holds, Σe = ½(3,1,-1,-1) ≠ u".into())
}

fn prism_counterexample() -> Outcome {
    let f = fixture("example-10-triple").map_err(err)?;
    let t = f.theory.as_exact().ok_or("fixture is not exact")?;
    let out = is_perfectly_distinguishable(t, &f.states).map_err(err)?;
    ensure(!out.is_perfect(), || "triple reported distinguishable".into())?;
    let cert = out.certificate.ok_or("no certificate")?;
    ensure(check_certificate(&perfect_program(t, &f.states), &cert, 0.0), || "certificate fails substitution".into())?;
    let s = &f.states;
    let order: Vec<Rational> = (0..t.dim())
        .map(|k| s[1][k].clone() + s[2][k].clone() - s[0][k].clone())
        .collect();
    ensure(t.in_cone(&order).map_err(err)?, || "ω2 + ω3 - ω1 is not in the cone".into())?;
    Ok("not distinguishable; ω2 + ω3 - ω1 ∈ C by cone LP".into())
}

fn square_hypergraphs() -> Outcome {
    let sq = hypercube_theory(2).map_err(err)?;
    let h3 = build_hypergraph(&sq, 3, Exec::Sequential).map_err(err)?;
    let b3 = build_hypergraph_unpruned(&sq, 3, Exec::Sequential).map_err(err)?;
    ensure(h3.edges().is_empty() && h3 == b3, || format!("N = 3 edges {:?}", h3.edges()))?;
    let h2 = build_hypergraph(&sq, 2, Exec::Sequential).map_err(err)?;
    let b2 = build_hypergraph_unpruned(&sq, 2, Exec::Sequential).map_err(err)?;
    let k4: Vec<Vec<usize>> = combinations(4, 2).collect();
    ensure(h2.edges() == &k4[..] && h2 == b2, || format!("N = 2 edges {:?}", h2.edges()))?;
    Ok("N = 3 empty, N = 2 is K4, both equal to subset enumeration".into())
}

fn clique_oracles() -> Outcome {
    let s3 = classical_simplex(3).map_err(err)?;
    let mut cases: Vec<(String, AnyTheory)> = ["square", "pentagon", "cube"]
        .iter()
        .map(|n| fixture(n).map(|f| (n.to_string(), f.theory)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    cases.push(("S3+S3".into(), AnyTheory::Exact(prism_product(&s3, &s3).map_err(err)?)));
    let mut report = Vec::new();
    for (name, t) in &cases {
        for n in 2..=3 {
            let h: Hypergraph = build_hypergraph_any(t, n, Exec::Parallel).map_err(err)?;
            let g = greedy_max_clique(&h, Exec::Parallel);
            let e = exact_max_clique(&h, 16).map_err(err)?;
            ensure(g.len() == e.len(), || format!("{name} N = {n}: greedy {} vs exact {}", g.len(), e.len()))?;
            report.push(format!("{name}/{n}={}", e.len()));
        }
    }
    Ok(report.join(" "))
}

fn random_construction() -> Outcome {
    let start = Instant::now();
    let p1 = probabilistic_params(3, 16).map_err(err)?;
    ensure(p1 == (16, 39, 586), || format!("params(3,16) = {p1:?}"))?;
    let p2 = probabilistic_params(2, 4).map_err(err)?;
    ensure(p2 == (4, 8, 25), || format!("params(2,4) = {p2:?}"))?;
    let b = failure_probability_bound(4, 10, 4, 2).map_err(err)?;
    ensure(b == Rational::new(6, 1048576), || format!("bound = {b}"))?;

    let params = SearchParams { q: 9, l: 12, codewords: 8, arity: 3, trials: 1000, seed: 20240 };
    let rep = randomized_search(params, Exec::Parallel).map_err(err)?;
    let exact = Rational::from(56) * Rational::new(25, 81).pow(12);
    ensure(rep.bound == exact, || format!("Monte Carlo bound {}", rep.bound))?;
    ensure(rep.within_bound, || {
        format!("empirical {} > bound {} + 3σ {}", rep.empirical_failure, rep.bound_f64, rep.sigma)
    })?;

    let mut checked = 0;
    let mut seed = 0u64;
    for (q, l, m, n) in [(3, 2, 5, 2), (3, 2, 4, 3), (4, 2, 6, 3), (3, 3, 8, 3), (4, 3, 8, 3), (5, 2, 8, 3)] {
        for _ in 0..4 {
            seed += 1;
            let code = sample_random_code(q, l, m, seed).map_err(err)?;
            if verify_nwise_by_components(&code, n) {
                let bad = nwise_failures_by_lp(&code, n, Exec::Parallel).map_err(err)?;
                ensure(bad.is_empty(), || format!("code {:?} fails LP on {bad:?}", code.codewords))?;
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no component-verified code sampled".into())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!(
        "params exact; empirical {}/1000 vs bound {}; {checked} codes LP-verified; {took:.2?}",
        rep.failures,
        sig12(rep.bound_f64)
    ))
}

fn perfect(t: &Theory, states: &[Vec<Rational>]) -> Result<bool, String> {
    Ok(is_perfectly_distinguishable(t, states).map_err(err)?.is_perfect())
}

fn property_suites() -> Outcome {
    let mut distinguishable = 0;
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = theory_pool(&mut rng);
        let k = rng.gen_range(2..=4);
        let states = random_states(&mut rng, &t, k);
        let priors = random_priors(&mut rng, states.len());
        let ctx = || format!("instance {seed}");

        let r = max_success_probability(&t, &states, &priors).map_err(err)?;
        let top = priors.iter().max().unwrap().clone();
        ensure(top <= r.p_success && r.p_success <= Rational::one(), || format!("{}: range", ctx()))?;

        let out = is_perfectly_distinguishable(&t, &states).map_err(err)?;
        let uni = max_success_probability(&t, &states, &uniform(states.len())).map_err(err)?;
        ensure(out.is_perfect() == (uni.p_success == Rational::one()), || format!("{}: consistency", ctx()))?;

        if out.is_perfect() {
            distinguishable += 1;
            let w = out.witness.as_ref().ok_or("missing witness")?;
            ensure(verify_witness(&t, &states, w).map_err(err)?, || format!("{}: witness", ctx()))?;
            ensure(linearly_independent(&states, 0.0), || format!("{}: linear independence", ctx()))?;
        } else {
            let cert = out.certificate.as_ref().ok_or("missing certificate")?;
            ensure(check_certificate(&perfect_program(&t, &states), cert, 0.0), || format!("{}: certificate", ctx()))?;
        }

        let map = random_invertible(&mut rng, t.dim());
        let image = t.transform(&map).map_err(err)?;
        let moved: Vec<Vec<Rational>> = states.iter().map(|s| mat_vec(&map, s)).collect();
        ensure(perfect(&image, &moved)? == out.is_perfect(), || format!("{}: affine verdict", ctx()))?;
        let pi = max_success_probability(&image, &moved, &priors).map_err(err)?.p_success;
        ensure(pi == r.p_success, || format!("{}: affine p_success", ctx()))?;
    }

    let mut edges = 0;
    for seed in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let t = theory_pool(&mut rng);
        let n = rng.gen_range(3..=4).min(t.len());
        let h = build_hypergraph(&t, n, Exec::Parallel).map_err(err)?;
        for e in h.edges() {
            edges += 1;
            for p in combinations(n, 2) {
                let ok = pairwise_distinguishable(&t, e[p[0]], e[p[1]]).map_err(err)?;
                ensure(ok, || format!("hyperedge {e:?} of {} not pairwise", t.name()))?;
            }
            let states: Vec<Vec<Rational>> = e.iter().map(|&i| t.generator(i).to_vec()).collect();
            ensure(linearly_independent(&states, 0.0), || format!("hyperedge {e:?} dependent"))?;
        }
    }

    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        let ca = rng.gen_range(3..=5);
        let a = random_polytope(&mut rng, ca, 2);
        let cb = rng.gen_range(4..=6);
        let b = random_polytope(&mut rng, cb, 3);
        let p = prism_product(&a, &b).map_err(err)?;
        ensure(p.dim() == a.dim() + b.dim() - 1, || format!("prism {seed}: dimension"))?;
        ensure(p.len() == a.len() * b.len(), || format!("prism {seed}: generator count"))?;
        let kept = p.reduce_to_pure_states().map_err(err)?.len();
        ensure(kept == p.len(), || format!("prism {seed}: {kept} of {} generators extreme", p.len()))?;
    }
    Ok(format!("500 discrimination instances ({distinguishable} distinguishable), {edges} hyperedges, 100 prisms"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("hypercube memories m = 1..6", hypercube_memories),
        ("pairwise compression factors", compression_table),
        ("planar pairwise bound", planar_bound),
        ("normalization counterexample", normalization_counterexample),
        ("prism counterexample", prism_counterexample),
        ("square hypergraphs", square_hypergraphs),
        ("greedy vs exact cliques", clique_oracles),
        ("random construction ingredients", random_construction),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
