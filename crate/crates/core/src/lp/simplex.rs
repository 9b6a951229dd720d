//! Two-phase primal simplex in dictionary form.
//!
//! Structural variables are free unless a constraint row pins them to be
//! nonnegative (`c * x_j >= 0` with `c > 0`, or `c * x_j <= 0` with `c < 0`);
//! such rows are turned into variable bounds instead of tableau rows. Free
//! variables are never split: a free nonbasic variable may enter in either
//! direction, and a free basic variable never leaves. Entering and leaving
//! variables follow Bland's smallest-index rule, so the exact backend always
//! terminates.

use std::cmp::Ordering;

use super::{LpError, LpOutcome, LpProblem, LpStatus, Relation, Scalar};

/// Pivot cap for the inexact backend; exceeding it yields [`LpStatus::Stalled`].
const FLOAT_PIVOT_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Free,
    NonNeg,
    Artificial,
}

/// How each constraint row of the input was consumed.
#[derive(Debug, Clone)]
enum RowUse<S> {
    /// Dictionary row with sign flip `rho`, and the id of the variable
    /// whose column is the unit vector of that row.
    Tableau { rho: S, unit_var: usize },
    /// Nonnegativity bound on structural variable `var`, via coefficient `coef`.
    Bound { var: usize, coef: S },
    /// Redundant bound on an already bounded variable.
    DuplicateBound,
    /// All-zero row that is satisfied.
    Trivial,
}

struct Dictionary<S> {
    kinds: Vec<Kind>,
    /// basic variable of each row
    basic: Vec<usize>,
    /// nonbasic variable of each column
    nonbasic: Vec<usize>,
    beta: Vec<S>,
    coef: Vec<Vec<S>>,
    obj_const: S,
    obj: Vec<S>,
    /// artificial columns that may no longer enter
    blocked: Vec<bool>,
    tol: f64,
    pivots: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Stalled,
}

impl<S: Scalar> Dictionary<S> {
    fn entering(&self) -> Option<(usize, bool)> {
        let mut best: Option<(usize, usize, bool)> = None;
        for (k, &var) in self.nonbasic.iter().enumerate() {
            if self.blocked[k] {
                continue;
            }
            let up = match self.obj[k].sign(self.tol) {
                Ordering::Greater => true,
                Ordering::Less if self.kinds[var] == Kind::Free => false,
                _ => continue,
            };
            if best.is_none_or(|(_, v, _)| var < v) {
                best = Some((k, var, up));
            }
        }
        best.map(|(k, _, up)| (k, up))
    }

    fn leaving(&self, k: usize, up: bool) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for r in 0..self.basic.len() {
            if self.kinds[self.basic[r]] == Kind::Free {
                continue;
            }
            let a = if up {
                self.coef[r][k].clone()
            } else {
                -self.coef[r][k].clone()
            };
            if a.sign(self.tol) != Ordering::Less {
                continue;
            }
            let mut b = self.beta[r].clone();
            if b.sign(self.tol) != Ordering::Greater {
                b = S::zero();
            }
            let ratio = b / -a;
            best = match best {
                None => Some((r, ratio)),
                Some((br, bratio)) => match ratio.cmp_tol(&bratio, self.tol) {
                    Ordering::Less => Some((r, ratio)),
                    Ordering::Equal if self.basic[r] < self.basic[br] => Some((r, ratio)),
                    _ => Some((br, bratio)),
                },
            };
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, r: usize, k: usize) {
        self.pivots += 1;
        let p = self.coef[r][k].clone();
        let inv = S::one() / p;
        let ncols = self.nonbasic.len();
        // new row r expresses the entering variable
        let mut row = std::mem::take(&mut self.coef[r]);
        for (j, x) in row.iter_mut().enumerate() {
            *x = if j == k {
                inv.clone()
            } else {
                -(x.clone() * inv.clone())
            };
        }
        let beta_r = -(self.beta[r].clone() * inv.clone());
        for i in 0..self.basic.len() {
            if i == r {
                continue;
            }
            let f = self.coef[i][k].clone();
            if f.sign(0.0) == Ordering::Equal {
                continue;
            }
            self.beta[i] = self.beta[i].clone() + f.clone() * beta_r.clone();
            let ci = &mut self.coef[i];
            for j in 0..ncols {
                if j == k {
                    ci[j] = f.clone() * row[k].clone();
                } else if row[j].sign(0.0) != Ordering::Equal {
                    ci[j] = ci[j].clone() + f.clone() * row[j].clone();
                }
            }
        }
        let f = self.obj[k].clone();
        if f.sign(0.0) != Ordering::Equal {
            self.obj_const = self.obj_const.clone() + f.clone() * beta_r.clone();
            for j in 0..ncols {
                if j == k {
                    self.obj[j] = f.clone() * row[k].clone();
                } else if row[j].sign(0.0) != Ordering::Equal {
                    self.obj[j] = self.obj[j].clone() + f.clone() * row[j].clone();
                }
            }
        }
        self.coef[r] = row;
        self.beta[r] = beta_r;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[k]);
        // an artificial that left the basis never comes back
        self.blocked[k] = self.kinds[self.nonbasic[k]] == Kind::Artificial;
    }

    fn run(&mut self) -> Step {
        loop {
            let Some((k, up)) = self.entering() else {
                return Step::Optimal;
            };
            let Some(r) = self.leaving(k, up) else {
                return Step::Unbounded;
            };
            self.pivot(r, k);
            if !S::EXACT && self.pivots > FLOAT_PIVOT_LIMIT {
                return Step::Stalled;
            }
        }
    }

    fn value_of(&self, var: usize) -> S {
        match self.basic.iter().position(|&b| b == var) {
            Some(r) => self.beta[r].clone(),
            None => S::zero(),
        }
    }

    /// Reduced cost of `var` under the current objective (zero if basic).
    fn reduced_cost(&self, var: usize) -> S {
        match self.nonbasic.iter().position(|&v| v == var) {
            Some(k) => self.obj[k].clone(),
            None => S::zero(),
        }
    }
}

fn structural_error(msg: String) -> LpError {
    LpError::Structure(msg)
}

pub(super) fn solve<S: Scalar>(problem: &LpProblem<S>, tol: f64) -> Result<LpOutcome<S>, LpError> {
    let n = problem.num_vars;
    if n == 0 {
        return Err(structural_error("problem has no variables".into()));
    }
    if problem.objective.len() != n {
        return Err(structural_error(format!(
            "objective has length {}, expected {n}",
            problem.objective.len()
        )));
    }
    for (i, c) in problem.constraints.iter().enumerate() {
        if c.row.len() != n {
            return Err(structural_error(format!(
                "constraint {i} has length {}, expected {n}",
                c.row.len()
            )));
        }
    }

    // presolve: bounds and empty rows
    let mut kinds = vec![Kind::Free; n];
    let mut uses: Vec<Option<RowUse<S>>> = vec![None; problem.constraints.len()];
    for (i, c) in problem.constraints.iter().enumerate() {
        let nz: Vec<usize> = (0..n).filter(|&j| !c.row[j].is_zero_tol(tol)).collect();
        if nz.is_empty() {
            let ok = match c.relation {
                Relation::Le => c.rhs.sign(tol) != Ordering::Less,
                Relation::Ge => c.rhs.sign(tol) != Ordering::Greater,
                Relation::Eq => c.rhs.is_zero_tol(tol),
            };
            if ok {
                uses[i] = Some(RowUse::Trivial);
                continue;
            }
            let mut cert = vec![S::zero(); problem.constraints.len()];
            cert[i] = match c.relation {
                Relation::Eq if c.rhs.sign(tol) == Ordering::Greater => -S::one(),
                _ => S::one(),
            };
            return Ok(LpOutcome::infeasible(cert));
        }
        if nz.len() == 1 && c.rhs.is_zero_tol(tol) {
            let j = nz[0];
            let s = c.row[j].sign(tol);
            let lower = matches!(
                (c.relation, s),
                (Relation::Ge, Ordering::Greater) | (Relation::Le, Ordering::Less)
            );
            if lower {
                uses[i] = Some(if kinds[j] == Kind::NonNeg {
                    RowUse::DuplicateBound
                } else {
                    kinds[j] = Kind::NonNeg;
                    RowUse::Bound {
                        var: j,
                        coef: c.row[j].clone(),
                    }
                });
            }
        }
    }

    let table_rows: Vec<usize> = (0..problem.constraints.len())
        .filter(|&i| uses[i].is_none())
        .collect();
    let m = table_rows.len();

    // variable ids: structural, then slacks, then artificials
    let mut slack_of = vec![None; problem.constraints.len()];
    for &i in &table_rows {
        if problem.constraints[i].relation != Relation::Eq {
            slack_of[i] = Some(kinds.len());
            kinds.push(Kind::NonNeg);
        }
    }
    let mut basic = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut rhos = Vec::with_capacity(m);
    let mut art_rows = Vec::new();
    for (r, &i) in table_rows.iter().enumerate() {
        let c = &problem.constraints[i];
        let rho = if c.rhs.sign(tol) == Ordering::Less {
            -S::one()
        } else {
            S::one()
        };
        let slack_sign = match c.relation {
            Relation::Le => Some(1),
            Relation::Ge => Some(-1),
            Relation::Eq => None,
        };
        let unit_var = match (slack_sign, c.rhs.sign(tol) == Ordering::Less) {
            (Some(1), false) | (Some(-1), true) => slack_of[i].unwrap(),
            _ => {
                let a = kinds.len();
                kinds.push(Kind::Artificial);
                art_rows.push(r);
                a
            }
        };
        let b = rho.clone() * c.rhs.clone();
        basic.push(unit_var);
        beta.push(if b.sign(tol) == Ordering::Less {
            S::zero()
        } else {
            b
        });
        rhos.push(rho.clone());
        uses[i] = Some(RowUse::Tableau { rho, unit_var });
    }

    let nonbasic: Vec<usize> = (0..kinds.len()).filter(|v| !basic.contains(v)).collect();
    let mut coef = vec![vec![S::zero(); nonbasic.len()]; m];
    for (k, &var) in nonbasic.iter().enumerate() {
        if var < n {
            for (r, &i) in table_rows.iter().enumerate() {
                let a = &problem.constraints[i].row[var];
                if !a.is_zero_tol(0.0) {
                    coef[r][k] = -(rhos[r].clone() * a.clone());
                }
            }
        } else {
            // a slack that is not basic sits in an artificial row
            let i = slack_of.iter().position(|s| *s == Some(var)).unwrap();
            let r = table_rows.iter().position(|&t| t == i).unwrap();
            let sign = match problem.constraints[i].relation {
                Relation::Le => S::one(),
                _ => -S::one(),
            };
            coef[r][k] = -(rhos[r].clone() * sign);
        }
    }

    let mut dict = Dictionary {
        blocked: vec![false; nonbasic.len()],
        kinds,
        basic,
        nonbasic,
        beta,
        coef,
        obj_const: S::zero(),
        obj: vec![],
        tol,
        pivots: 0,
    };

    // phase 1: maximize -(sum of artificials)
    let ncols = dict.nonbasic.len();
    let mut obj = vec![S::zero(); ncols];
    let mut obj_const = S::zero();
    for &r in &art_rows {
        obj_const = obj_const - dict.beta[r].clone();
        for (k, o) in obj.iter_mut().enumerate() {
            *o = o.clone() - dict.coef[r][k].clone();
        }
    }
    dict.obj = obj;
    dict.obj_const = obj_const;
    if !art_rows.is_empty() {
        if let Step::Stalled = dict.run() {
            return Ok(LpOutcome::stalled());
        }
        if dict.obj_const.sign(tol) == Ordering::Less {
            return Ok(LpOutcome::infeasible(farkas(problem, &uses, &dict)));
        }
        // drive zero-valued artificials out of the basis where possible
        for r in 0..m {
            if dict.kinds[dict.basic[r]] != Kind::Artificial {
                continue;
            }
            let col = (0..dict.nonbasic.len())
                .filter(|&k| {
                    dict.kinds[dict.nonbasic[k]] != Kind::Artificial
                        && !dict.coef[r][k].is_zero_tol(tol)
                })
                .min_by_key(|&k| dict.nonbasic[k]);
            if let Some(k) = col {
                dict.pivot(r, k);
            }
        }
    }

    // phase 2
    for (k, &var) in dict.nonbasic.iter().enumerate() {
        dict.blocked[k] = dict.kinds[var] == Kind::Artificial;
    }
    let mut obj = vec![S::zero(); dict.nonbasic.len()];
    let mut obj_const = S::zero();
    for (k, &var) in dict.nonbasic.iter().enumerate() {
        if var < n {
            obj[k] = obj[k].clone() + problem.objective[var].clone();
        }
    }
    for r in 0..m {
        let var = dict.basic[r];
        if var < n && !problem.objective[var].is_zero_tol(0.0) {
            let c = problem.objective[var].clone();
            obj_const = obj_const + c.clone() * dict.beta[r].clone();
            for (k, o) in obj.iter_mut().enumerate() {
                *o = o.clone() + c.clone() * dict.coef[r][k].clone();
            }
        }
    }
    dict.obj = obj;
    dict.obj_const = obj_const;
    match dict.run() {
        Step::Stalled => Ok(LpOutcome::stalled()),
        Step::Unbounded => Ok(LpOutcome {
            status: LpStatus::Unbounded,
            value: None,
            solution: None,
            infeasibility_certificate: None,
        }),
        Step::Optimal => {
            let x: Vec<S> = (0..n).map(|j| dict.value_of(j)).collect();
            let value = super::dot(&problem.objective, &x);
            Ok(LpOutcome {
                status: LpStatus::Optimal,
                value: Some(value),
                solution: Some(x),
                infeasibility_certificate: None,
            })
        }
    }
}

/// Reads the phase-1 duals off the final dictionary and maps them back to
/// one nonnegative multiplier per original inequality row.
fn farkas<S: Scalar>(
    problem: &LpProblem<S>,
    uses: &[Option<RowUse<S>>],
    dict: &Dictionary<S>,
) -> Vec<S> {
    let n = problem.num_vars;
    let mut cert = vec![S::zero(); problem.constraints.len()];
    // multiplier in the row's own orientation (>= 0 for Le, <= 0 for Ge)
    let mut oriented = vec![S::zero(); problem.constraints.len()];
    for (i, u) in uses.iter().enumerate() {
        if let Some(RowUse::Tableau { rho, unit_var, .. }) = u {
            let cost = if dict.kinds[*unit_var] == Kind::Artificial {
                -S::one()
            } else {
                S::zero()
            };
            let w = cost - dict.reduced_cost(*unit_var);
            oriented[i] = w * rho.clone();
            cert[i] = match problem.constraints[i].relation {
                Relation::Ge => -oriented[i].clone(),
                _ => oriented[i].clone(),
            };
        }
    }
    let mut residual = vec![S::zero(); n];
    for (i, c) in problem.constraints.iter().enumerate() {
        if oriented[i].is_zero_tol(0.0) {
            continue;
        }
        for j in 0..n {
            residual[j] = residual[j].clone() + oriented[i].clone() * c.row[j].clone();
        }
    }
    for (i, u) in uses.iter().enumerate() {
        if let Some(RowUse::Bound { var, coef }) = u {
            let t = residual[*var].clone();
            let abs = if coef.sign(0.0) == Ordering::Less {
                -coef.clone()
            } else {
                coef.clone()
            };
            cert[i] = t / abs;
        }
    }
    cert
}
