#![allow(dead_code)]

use gpt_capacity::theories::{
    classical_simplex, hypercube_theory, prism_product, simplex_power,
};
use gpt_capacity::{Rational, Theory};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Random integer points in `[-range, range]^n`, pairwise distinct.
pub fn random_points(rng: &mut ChaCha8Rng, count: usize, n: usize, range: i64) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    while pts.len() < count {
        let p: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(-range..=range))).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// The theory whose state space is the convex hull of `points`, with only
/// the hull vertices kept as generators.
pub fn polytope_theory(points: &[Vec<Rational>]) -> Theory {
    let n = points[0].len();
    let gens = points
        .iter()
        .map(|p| std::iter::once(q(1)).chain(p.iter().cloned()).collect())
        .collect();
    let mut unit = vec![q(0); n + 1];
    unit[0] = q(1);
    Theory::new("polytope", unit, gens).unwrap().reduce_to_pure_states().unwrap()
}

/// A full-dimensional random polytope in `R^n` (retries until the hull
/// spans).
pub fn random_polytope(rng: &mut ChaCha8Rng, count: usize, n: usize) -> Theory {
    loop {
        let t = polytope_theory(&random_points(rng, count, n, 4));
        if t.validate().spanning && t.len() > n {
            return t;
        }
    }
}

pub fn theory_pool(rng: &mut ChaCha8Rng) -> Theory {
    match rng.gen_range(0..8) {
        0 => hypercube_theory(2).unwrap(),
        1 => hypercube_theory(3).unwrap(),
        2 => classical_simplex(rng.gen_range(2..=4)).unwrap(),
        3 => simplex_power(3, 2).unwrap(),
        4 => prism_product(&classical_simplex(2).unwrap(), &classical_simplex(3).unwrap()).unwrap(),
        5 | 6 => {
            let count = rng.gen_range(4..=7);
            random_polytope(rng, count, 2)
        }
        _ => {
            let count = rng.gen_range(5..=8);
            random_polytope(rng, count, 3)
        }
    }
}

/// A random mixture of one or two generators.
pub fn random_state(rng: &mut ChaCha8Rng, t: &Theory) -> Vec<Rational> {
    let a = t.generator(rng.gen_range(0..t.len()));
    if rng.gen_bool(0.6) {
        return a.to_vec();
    }
    let b = t.generator(rng.gen_range(0..t.len()));
    let w = Rational::new(rng.gen_range(1..=4), 5);
    a.iter()
        .zip(b)
        .map(|(x, y)| w.clone() * x.clone() + (q(1) - w.clone()) * y.clone())
        .collect()
}

/// `count` distinct states, or fewer if the theory runs out.
pub fn random_states(rng: &mut ChaCha8Rng, t: &Theory, count: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..50 * count {
        if out.len() == count {
            break;
        }
        let s = random_state(rng, t);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// `count` distinct indices below `n` in random order.
pub fn random_indices(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(count.min(n));
    idx
}

pub fn random_priors(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| Rational::new(x, total)).collect()
}

pub fn uniform(n: usize) -> Vec<Rational> {
    vec![Rational::new(1, n as i64); n]
}

/// A random invertible integer matrix.
pub fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<Rational>> {
    loop {
        let m: Vec<Vec<Rational>> = (0..d)
            .map(|_| (0..d).map(|_| q(rng.gen_range(-3..=3))).collect())
            .collect();
        if gpt_capacity::lp::linalg::rank(&m, 0.0) == d {
            return m;
        }
    }
}
