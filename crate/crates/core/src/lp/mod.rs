//! Exact rational arithmetic, dense linear algebra and a simplex LP solver.
//!
//! Problems are stated as `maximize c·x` subject to rows `a·x (<=|=|>=) b`
//! over free variables. [`solve_exact`] works over [`Rational`] and returns
//! answers with zero residual; [`solve_float`] runs the same pivoting code
//! over `f64` with a tolerance.
//!
//! Infeasibility certificates use one multiplier `y_i` per row, with
//! `y_i >= 0` on every inequality row. Writing `s_i = -1` for `>=` rows and
//! `s_i = +1` otherwise, a valid certificate satisfies `Σ y_i s_i a_i = 0`
//! and `Σ y_i s_i b_i < 0`.

pub mod linalg;
mod rational;
mod scalar;
mod simplex;

use std::cmp::Ordering;

pub use rational::{ParseRationalError, Rational};
pub use scalar::{dot, dot_exact, Scalar};

/// Default tolerance of the floating-point backend.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    pub row: Vec<S>,
    pub relation: Relation,
    pub rhs: S,
}

/// `maximize objective·x` subject to `constraints`, all variables free.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem<S = Rational> {
    pub num_vars: usize,
    pub objective: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> LpProblem<S> {
    /// A pure feasibility problem (zero objective).
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            objective: vec![S::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn maximize(mut self, objective: Vec<S>) -> Self {
        self.objective = objective;
        self
    }

    pub fn push(&mut self, row: Vec<S>, relation: Relation, rhs: S) {
        self.constraints.push(Constraint { row, relation, rhs });
    }

    pub fn add_le(&mut self, row: Vec<S>, rhs: S) {
        self.push(row, Relation::Le, rhs);
    }

    pub fn add_ge(&mut self, row: Vec<S>, rhs: S) {
        self.push(row, Relation::Ge, rhs);
    }

    pub fn add_eq(&mut self, row: Vec<S>, rhs: S) {
        self.push(row, Relation::Eq, rhs);
    }

    /// Adds `x_j >= 0`.
    pub fn nonneg(&mut self, j: usize) {
        let mut row = vec![S::zero(); self.num_vars];
        row[j] = S::one();
        self.add_ge(row, S::zero());
    }
}

impl LpProblem<Rational> {
    pub fn to_f64(&self) -> LpProblem<f64> {
        let conv = |v: &[Rational]| v.iter().map(Rational::to_f64).collect::<Vec<_>>();
        LpProblem {
            num_vars: self.num_vars,
            objective: conv(&self.objective),
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint {
                    row: conv(&c.row),
                    relation: c.relation,
                    rhs: c.rhs.to_f64(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The floating-point backend hit its pivot limit without a verdict.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome<S = Rational> {
    pub status: LpStatus,
    pub value: Option<S>,
    pub solution: Option<Vec<S>>,
    pub infeasibility_certificate: Option<Vec<S>>,
}

impl<S> LpOutcome<S> {
    fn infeasible(cert: Vec<S>) -> Self {
        LpOutcome {
            status: LpStatus::Infeasible,
            value: None,
            solution: None,
            infeasibility_certificate: Some(cert),
        }
    }

    fn stalled() -> Self {
        LpOutcome {
            status: LpStatus::Stalled,
            value: None,
            solution: None,
            infeasibility_certificate: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn is_infeasible(&self) -> bool {
        self.status == LpStatus::Infeasible
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Structure(String),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
}

/// Solves `problem` exactly.
pub fn solve_exact(problem: &LpProblem<Rational>) -> Result<LpOutcome<Rational>, LpError> {
    simplex::solve(problem, 0.0)
}

/// Solves `problem` in floating point with pivot and feasibility tolerance `tol`.
pub fn solve_float(problem: &LpProblem<f64>, tol: f64) -> Result<LpOutcome<f64>, LpError> {
    if !(tol > 0.0) {
        return Err(LpError::Tolerance(tol));
    }
    simplex::solve(problem, tol)
}

/// Solves over whichever backend `S` selects; `tol` is ignored when exact.
pub fn solve<S: Scalar>(problem: &LpProblem<S>, tol: f64) -> Result<LpOutcome<S>, LpError> {
    if S::EXACT {
        simplex::solve(problem, 0.0)
    } else {
        if !(tol > 0.0) {
            return Err(LpError::Tolerance(tol));
        }
        simplex::solve(problem, tol)
    }
}

/// Checks that `x` satisfies every constraint to within `tol`.
pub fn satisfies<S: Scalar>(problem: &LpProblem<S>, x: &[S], tol: f64) -> bool {
    x.len() == problem.num_vars
        && problem.constraints.iter().all(|c| {
            let lhs = dot(&c.row, x);
            let ord = lhs.cmp_tol(&c.rhs, tol);
            match c.relation {
                Relation::Le => ord != Ordering::Greater,
                Relation::Ge => ord != Ordering::Less,
                Relation::Eq => ord == Ordering::Equal,
            }
        })
}

/// Checks a Farkas certificate by direct substitution.
pub fn check_certificate<S: Scalar>(problem: &LpProblem<S>, y: &[S], tol: f64) -> bool {
    if y.len() != problem.constraints.len() {
        return false;
    }
    let mut combo = vec![S::zero(); problem.num_vars];
    let mut rhs = S::zero();
    for (c, yi) in problem.constraints.iter().zip(y) {
        if c.relation != Relation::Eq && yi.sign(tol) == Ordering::Less {
            return false;
        }
        let w = match c.relation {
            Relation::Ge => -yi.clone(),
            _ => yi.clone(),
        };
        for (acc, a) in combo.iter_mut().zip(&c.row) {
            *acc = acc.clone() + w.clone() * a.clone();
        }
        rhs = rhs + w * c.rhs.clone();
    }
    combo.iter().all(|v| v.is_zero_tol(tol)) && rhs.sign(tol) == Ordering::Less
}
