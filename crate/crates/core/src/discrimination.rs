//! Optimal and perfect state discrimination as linear programs.
//!
//! For states `ω_1..ω_N` the unknowns are the effects `e_1..e_{N-1}`; the
//! last effect is eliminated as `e_N = u - Σ e_i`. Positivity of every effect
//! on every generator `v_j` (`e_i·v_j >= 0`, and `Σ e_i·v_j <= u·v_j` for the
//! eliminated one) makes `(e_1, ..., e_N)` a measurement.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::gpt::{Measurement, Theory};
use crate::lp::{self, dot, LpProblem, LpStatus, Rational, Scalar};

/// Width of the band around 1 in which float success probabilities are
/// re-checked before a verdict is given.
pub const FLOAT_VERDICT_BAND: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationResult<S = Rational> {
    pub p_success: S,
    pub measurement: Measurement<S>,
    pub perfect: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Perfect,
    NotPerfect,
    /// Float backend could not separate the answer from the boundary.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerfectOutcome<S = Rational> {
    pub verdict: Verdict,
    /// Measurement with `e_i·ω_j = δ_ij` when perfect.
    pub witness: Option<Measurement<S>>,
    /// Farkas multipliers for the rows of [`perfect_program`] when not.
    pub certificate: Option<Vec<S>>,
}

impl<S> PerfectOutcome<S> {
    pub fn is_perfect(&self) -> bool {
        self.verdict == Verdict::Perfect
    }
}

fn block_row<S: Scalar>(nvars: usize, block: usize, v: &[S]) -> Vec<S> {
    let d = v.len();
    let mut row = vec![S::zero(); nvars];
    row[block * d..(block + 1) * d].clone_from_slice(v);
    row
}

fn all_blocks_row<S: Scalar>(nblocks: usize, v: &[S]) -> Vec<S> {
    let mut row = Vec::with_capacity(nblocks * v.len());
    for _ in 0..nblocks {
        row.extend_from_slice(v);
    }
    row
}

/// Effect-positivity rows shared by both programs.
fn measurement_program<S: Scalar>(theory: &Theory<S>, n: usize) -> LpProblem<S> {
    let d = theory.dim();
    let nvars = d * (n - 1);
    let mut p = LpProblem::new(nvars);
    for i in 0..n - 1 {
        for g in theory.generators() {
            p.add_ge(block_row(nvars, i, g), S::zero());
        }
    }
    for g in theory.generators() {
        p.add_le(all_blocks_row(n - 1, g), dot(theory.unit(), g));
    }
    p
}

fn unpack<S: Scalar>(theory: &Theory<S>, n: usize, x: &[S]) -> Measurement<S> {
    let d = theory.dim();
    let mut effects: Vec<Vec<S>> = x.chunks(d).map(<[S]>::to_vec).collect();
    let mut last = theory.unit().to_vec();
    for e in &effects {
        for (l, v) in last.iter_mut().zip(e) {
            *l = l.clone() - v.clone();
        }
    }
    effects.push(last);
    debug_assert_eq!(effects.len(), n);
    Measurement::new(effects)
}

/// The feasibility program "some measurement has `e_i·ω_i = 1` for all i".
///
/// Its first rows are the effect-positivity constraints, followed by one
/// equality per state. Requires `states.len() >= 2`.
pub fn perfect_program<S: Scalar>(theory: &Theory<S>, states: &[Vec<S>]) -> LpProblem<S> {
    let n = states.len();
    assert!(n >= 2, "perfect_program needs at least two states");
    let mut p = measurement_program(theory, n);
    let nvars = p.num_vars;
    for (i, w) in states[..n - 1].iter().enumerate() {
        p.add_eq(block_row(nvars, i, w), S::one());
    }
    // (u - Σ e_i)·ω_N = 1  ⇔  Σ e_i·ω_N = u·ω_N - 1
    let last = &states[n - 1];
    p.add_eq(all_blocks_row(n - 1, last), dot(theory.unit(), last) - S::one());
    p
}

fn check_states<S: Scalar>(theory: &Theory<S>, states: &[Vec<S>]) -> Result<()> {
    for (i, s) in states.iter().enumerate() {
        check_dim(theory.dim(), s.len())?;
        if !theory.is_state(s)? {
            return Err(Error::InvalidParameter(format!("vector {i} is not a state")));
        }
    }
    Ok(())
}

fn check_distinct<S: Scalar>(states: &[Vec<S>], tol: f64) -> Result<()> {
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            if states[i].iter().zip(&states[j]).all(|(a, b)| a.eq_tol(b, tol)) {
                return Err(Error::DuplicateStates(i, j));
            }
        }
    }
    Ok(())
}

/// Maximum average success probability of guessing which of `states` was
/// prepared, given `priors`, together with an optimal measurement.
pub fn max_success_probability<S: Scalar>(
    theory: &Theory<S>,
    states: &[Vec<S>],
    priors: &[S],
) -> Result<DiscriminationResult<S>> {
    let tol = theory.tol();
    if states.is_empty() {
        return Err(Error::InvalidParameter("no states given".into()));
    }
    if states.len() != priors.len() {
        return Err(Error::DimensionMismatch {
            expected: states.len(),
            found: priors.len(),
        });
    }
    if priors.iter().any(|p| p.sign(tol) == Ordering::Less) {
        return Err(Error::InvalidParameter("priors must be nonnegative".into()));
    }
    let total = priors.iter().fold(S::zero(), |a, p| a + p.clone());
    if !total.eq_tol(&S::one(), tol) {
        return Err(Error::InvalidParameter(format!("priors sum to {total}, not 1")));
    }
    check_states(theory, states)?;
    max_success_unchecked(theory, states, priors)
}

pub(crate) fn max_success_unchecked<S: Scalar>(
    theory: &Theory<S>,
    states: &[Vec<S>],
    priors: &[S],
) -> Result<DiscriminationResult<S>> {
    let tol = theory.tol();
    let n = states.len();
    if n == 1 {
        let m = Measurement::new(vec![theory.unit().to_vec()]);
        let p = priors[0].clone() * dot(theory.unit(), &states[0]);
        return Ok(DiscriminationResult {
            perfect: p.eq_tol(&S::one(), tol),
            p_success: p,
            measurement: m,
        });
    }
    let d = theory.dim();
    let mut prog = measurement_program(theory, n);
    let last = &states[n - 1];
    let p_last = priors[n - 1].clone();
    let mut obj = Vec::with_capacity(prog.num_vars);
    for i in 0..n - 1 {
        for k in 0..d {
            obj.push(priors[i].clone() * states[i][k].clone() - p_last.clone() * last[k].clone());
        }
    }
    prog.objective = obj;
    let out = lp::solve(&prog, tol)?;
    match out.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => {
            return Err(Error::Internal(
                "discrimination LP reported infeasible; the trivial measurement is always feasible"
                    .into(),
            ))
        }
        s => return Err(Error::Internal(format!("discrimination LP ended with {s:?}"))),
    }
    let meas = unpack(theory, n, out.solution.as_ref().unwrap());
    let p_success = success_probability(&meas, states, priors);
    let perfect = if S::EXACT {
        p_success == S::one()
    } else {
        p_success.to_f64() >= 1.0 - FLOAT_VERDICT_BAND
    };
    Ok(DiscriminationResult {
        p_success,
        measurement: meas,
        perfect,
    })
}

/// `Σ p_i e_i·ω_i`.
pub fn success_probability<S: Scalar>(meas: &Measurement<S>, states: &[Vec<S>], priors: &[S]) -> S {
    meas.effects
        .iter()
        .zip(states)
        .zip(priors)
        .fold(S::zero(), |acc, ((e, w), p)| acc + p.clone() * dot(e, w))
}

/// Decides whether `states` are perfectly distinguishable, returning a
/// witness measurement or an infeasibility certificate.
pub fn is_perfectly_distinguishable<S: Scalar>(
    theory: &Theory<S>,
    states: &[Vec<S>],
) -> Result<PerfectOutcome<S>> {
    check_states(theory, states)?;
    check_distinct(states, theory.tol())?;
    perfect_unchecked(theory, states)
}

/// Same as [`is_perfectly_distinguishable`] for generator indices.
pub fn is_perfectly_distinguishable_indices<S: Scalar>(
    theory: &Theory<S>,
    indices: &[usize],
) -> Result<PerfectOutcome<S>> {
    let states = states_at(theory, indices)?;
    check_distinct(&states, theory.tol())?;
    perfect_unchecked(theory, &states)
}

pub fn states_at<S: Scalar>(theory: &Theory<S>, indices: &[usize]) -> Result<Vec<Vec<S>>> {
    indices
        .iter()
        .map(|&i| {
            theory.generators().get(i).cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("state index {i} out of range 0..{}", theory.len()))
            })
        })
        .collect()
}

pub(crate) fn perfect_unchecked<S: Scalar>(
    theory: &Theory<S>,
    states: &[Vec<S>],
) -> Result<PerfectOutcome<S>> {
    let n = states.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no states given".into()));
    }
    if n == 1 {
        return Ok(PerfectOutcome {
            verdict: Verdict::Perfect,
            witness: Some(Measurement::new(vec![theory.unit().to_vec()])),
            certificate: None,
        });
    }
    let prog = perfect_program(theory, states);
    let out = lp::solve(&prog, theory.tol())?;
    let outcome = match out.status {
        LpStatus::Optimal => PerfectOutcome {
            verdict: Verdict::Perfect,
            witness: Some(unpack(theory, n, out.solution.as_ref().unwrap())),
            certificate: None,
        },
        LpStatus::Infeasible => PerfectOutcome {
            verdict: Verdict::NotPerfect,
            witness: None,
            certificate: out.infeasibility_certificate,
        },
        LpStatus::Unbounded => {
            return Err(Error::Internal("feasibility LP reported unbounded".into()))
        }
        LpStatus::Stalled => PerfectOutcome {
            verdict: Verdict::Indeterminate,
            witness: None,
            certificate: None,
        },
    };
    if S::EXACT {
        return Ok(outcome);
    }
    float_recheck(theory, states, outcome)
}

/// Cross-checks a float feasibility verdict against the optimal success
/// probability and against a re-solve with the generators in reverse order.
fn float_recheck<S: Scalar>(
    theory: &Theory<S>,
    states: &[Vec<S>],
    first: PerfectOutcome<S>,
) -> Result<PerfectOutcome<S>> {
    let n = states.len();
    let uniform = vec![S::one() / S::from_i64(n as i64); n];
    let p = max_success_unchecked(theory, states, &uniform)?.p_success.to_f64();
    let by_value = if p >= 1.0 - 1e-9 {
        Verdict::Perfect
    } else if p <= 1.0 - FLOAT_VERDICT_BAND {
        Verdict::NotPerfect
    } else {
        Verdict::Indeterminate
    };
    let witness_ok = first
        .witness
        .as_ref()
        .is_none_or(|m| delta_conditions(states, &m.effects, FLOAT_VERDICT_BAND));
    if by_value == first.verdict && witness_ok {
        return Ok(first);
    }
    // perturbed start: same program, generators reversed
    let mut gens = theory.generators().to_vec();
    gens.reverse();
    let flipped = Theory::with_tolerance(theory.name(), theory.unit().to_vec(), gens, theory.tol())?;
    let prog = perfect_program(&flipped, states);
    let again = lp::solve(&prog, theory.tol())?;
    let second = match again.status {
        LpStatus::Optimal => Verdict::Perfect,
        LpStatus::Infeasible => Verdict::NotPerfect,
        _ => Verdict::Indeterminate,
    };
    if second == by_value && second != Verdict::Indeterminate {
        let witness = again
            .solution
            .as_ref()
            .map(|x| unpack(theory, n, x))
            .filter(|m| delta_conditions(states, &m.effects, FLOAT_VERDICT_BAND));
        if second == Verdict::Perfect && witness.is_none() {
            return Ok(indeterminate());
        }
        return Ok(PerfectOutcome {
            verdict: second,
            witness,
            certificate: None,
        });
    }
    Ok(indeterminate())
}

fn indeterminate<S>() -> PerfectOutcome<S> {
    PerfectOutcome {
        verdict: Verdict::Indeterminate,
        witness: None,
        certificate: None,
    }
}

/// `e_i·ω_j = δ_ij` for all `i, j`, to within `tol`.
pub fn delta_conditions<S: Scalar>(states: &[Vec<S>], effects: &[Vec<S>], tol: f64) -> bool {
    effects.len() == states.len()
        && effects.iter().enumerate().all(|(i, e)| {
            states.iter().enumerate().all(|(j, w)| {
                let target = if i == j { S::one() } else { S::zero() };
                e.len() == w.len() && dot(e, w).eq_tol(&target, tol)
            })
        })
}

/// True iff `meas` is a measurement of `theory` with `e_i·ω_j = δ_ij`.
pub fn verify_witness<S: Scalar>(
    theory: &Theory<S>,
    states: &[Vec<S>],
    meas: &Measurement<S>,
) -> Result<bool> {
    if meas.len() != states.len() {
        return Ok(false);
    }
    Ok(theory.is_measurement(meas)? && delta_conditions(states, &meas.effects, theory.tol()))
}

/// Whether generators `i` and `j` are perfectly distinguishable.
pub fn pairwise_distinguishable<S: Scalar>(theory: &Theory<S>, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::InvalidParameter("pairwise check needs i != j".into()));
    }
    let out = is_perfectly_distinguishable_indices(theory, &[i, j])?;
    match out.verdict {
        Verdict::Perfect => Ok(true),
        Verdict::NotPerfect => Ok(false),
        Verdict::Indeterminate => Err(Error::Indeterminate(format!(
            "pair ({i}, {j}) of {}",
            theory.name()
        ))),
    }
}
