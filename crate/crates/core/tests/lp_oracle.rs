//! The simplex solver against brute-force vertex enumeration.

use gpt_capacity::hypergraph::combinations;
use gpt_capacity::lp::{
    check_certificate, satisfies, solve_exact, solve_float, LpProblem, LpStatus, Rational, Relation,
    DEFAULT_FLOAT_TOL,
};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOX: i64 = 10;

fn big(r: &Rational) -> BigRational {
    r.to_big()
}

/// Solves the square system `a x = b` by Gauss-Jordan; `None` if singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn feasible(p: &LpProblem, x: &[BigRational]) -> bool {
    p.constraints.iter().all(|c| {
        let lhs: BigRational = c.row.iter().zip(x).map(|(a, v)| big(a) * v).sum();
        let rhs = big(&c.rhs);
        match c.relation {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    })
}

/// Best objective over all basic feasible points, or `None` if there are
/// none. Only meaningful for bounded problems.
fn vertex_oracle(p: &LpProblem) -> Option<BigRational> {
    let n = p.num_vars;
    let mut best: Option<BigRational> = None;
    for rows in combinations(p.constraints.len(), n) {
        let a = rows.iter().map(|&r| p.constraints[r].row.iter().map(big).collect()).collect();
        let b = rows.iter().map(|&r| big(&p.constraints[r].rhs)).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if !feasible(p, &x) {
            continue;
        }
        let val: BigRational = p.objective.iter().zip(&x).map(|(c, v)| big(c) * v).sum();
        if best.as_ref().is_none_or(|b| &val > b) {
            best = Some(val);
        }
    }
    best
}

fn boxed(n: usize) -> LpProblem {
    let mut p = LpProblem::new(n);
    for j in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[j] = Rational::one();
        p.add_le(row.clone(), Rational::from(BOX));
        p.add_ge(row, Rational::from(-BOX));
    }
    p
}

fn random_lp(rng: &mut ChaCha8Rng) -> LpProblem {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=8 - 2 * n.min(3)).max(1);
    let mut p = boxed(n);
    for _ in 0..m {
        let row = (0..n).map(|_| Rational::from(rng.gen_range(-4i64..=4))).collect();
        let rhs = Rational::from(rng.gen_range(-6i64..=6));
        let rel = match rng.gen_range(0..5) {
            0 => Relation::Eq,
            1 | 2 => Relation::Ge,
            _ => Relation::Le,
        };
        p.push(row, rel, rhs);
    }
    p.objective = (0..n).map(|_| Rational::from(rng.gen_range(-3i64..=3))).collect();
    p
}

fn check_against_oracle(p: &LpProblem) {
    let out = solve_exact(p).unwrap();
    match vertex_oracle(p) {
        Some(best) => {
            assert_eq!(out.status, LpStatus::Optimal, "{p:?}");
            let x = out.solution.as_ref().unwrap();
            assert!(satisfies(p, x, 0.0));
            assert_eq!(out.value.as_ref().unwrap().to_big(), best);
            let obj: Rational = p.objective.iter().zip(x).map(|(c, v)| c.clone() * v.clone()).sum();
            assert_eq!(&obj, out.value.as_ref().unwrap());
        }
        None => {
            assert_eq!(out.status, LpStatus::Infeasible, "{p:?}");
            let y = out.infeasibility_certificate.as_ref().unwrap();
            assert!(check_certificate(p, y, 0.0));
        }
    }
}

fn textbook() -> LpProblem {
    let q = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
    let mut p = LpProblem::new(2).maximize(q(&[1, 1]));
    p.add_le(q(&[1, 2]), Rational::from(4));
    p.add_le(q(&[3, 1]), Rational::from(6));
    p.nonneg(0);
    p.nonneg(1);
    p
}

#[test]
fn textbook_polygon() {
    let p = textbook();
    let out = solve_exact(&p).unwrap();
    assert_eq!(out.value, Some(Rational::new(14, 5)));
    assert_eq!(out.solution, Some(vec![Rational::new(8, 5), Rational::new(6, 5)]));
    assert_eq!(vertex_oracle(&p).unwrap(), Rational::new(14, 5).to_big());

    let f = solve_float(&p.to_f64(), DEFAULT_FLOAT_TOL).unwrap();
    assert!((f.value.unwrap() - 2.8).abs() < 1e-9);
    let x = f.solution.unwrap();
    assert!((x[0] - 1.6).abs() < 1e-9 && (x[1] - 1.2).abs() < 1e-9);
}

#[test]
fn float_backend_on_trivial_examples() {
    let mut p = LpProblem::<f64>::new(1).maximize(vec![1.0]);
    p.add_le(vec![1.0], 3.0);
    assert_eq!(solve_float(&p, 1e-9).unwrap().value, Some(3.0));

    let mut p = LpProblem::<f64>::new(1).maximize(vec![1.0]);
    p.add_ge(vec![1.0], 1.0);
    p.add_le(vec![1.0], 0.0);
    let out = solve_float(&p, 1e-9).unwrap();
    assert_eq!(out.status, LpStatus::Infeasible);
    assert!(check_certificate(&p, out.infeasibility_certificate.as_ref().unwrap(), 1e-9));
}

#[test]
fn float_status_matches_exact_on_seeded_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let p = random_lp(&mut rng);
        let exact = solve_exact(&p).unwrap();
        let float = solve_float(&p.to_f64(), DEFAULT_FLOAT_TOL).unwrap();
        assert_eq!(exact.status, float.status, "{p:?}");
        if let (Some(a), Some(b)) = (&exact.value, &float.value) {
            assert!((a.to_f64() - b).abs() < 1e-7);
        }
    }
}

#[test]
fn solving_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let p = random_lp(&mut rng);
        assert_eq!(solve_exact(&p).unwrap(), solve_exact(&p).unwrap());
    }
}

#[test]
fn degenerate_vertex_with_many_tight_rows() {
    // five rows through the origin, maximize y
    let q = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
    let mut p = boxed(2).maximize(q(&[0, 1]));
    for row in [[1, 1], [-1, 1], [2, 1], [-2, 1], [0, 1]] {
        p.add_le(q(&row), Rational::zero());
    }
    check_against_oracle(&p);
    assert_eq!(solve_exact(&p).unwrap().value, Some(Rational::zero()));
}

fn lp_strategy() -> impl Strategy<Value = LpProblem> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let rows = proptest::collection::vec(
                (proptest::collection::vec(-4i64..=4, n), 0u8..5, -6i64..=6),
                0..=(8 - 2 * n),
            );
            (Just(n), rows, proptest::collection::vec(-3i64..=3, n))
        })
        .prop_map(|(n, rows, obj)| {
            let mut p = boxed(n).maximize(obj.into_iter().map(Rational::from).collect());
            for (row, rel, rhs) in rows {
                let rel = match rel {
                    0 => Relation::Eq,
                    1 | 2 => Relation::Ge,
                    _ => Relation::Le,
                };
                p.push(row.into_iter().map(Rational::from).collect(), rel, Rational::from(rhs));
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn optimum_equals_best_vertex(p in lp_strategy()) {
        check_against_oracle(&p);
    }

    #[test]
    fn certificates_survive_substitution(p in lp_strategy()) {
        let out = solve_exact(&p).unwrap();
        if out.status == LpStatus::Infeasible {
            prop_assert!(check_certificate(&p, out.infeasibility_certificate.as_ref().unwrap(), 0.0));
        }
        prop_assert!(out.status != LpStatus::Unbounded);
        if let Some(v) = out.value {
            prop_assert!(v.abs().to_big().abs() <= BigRational::from_integer((3 * 3 * BOX).into()));
        }
    }
}
