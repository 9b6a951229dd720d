//! The GPT data model: theories given by normalized generators, states,
//! effects and measurements.
//!
//! A theory lives in `R^dim`. Its cone is the conic hull of `generators`,
//! every one of which satisfies `unit·g = 1`, so the state space is their
//! convex hull. The effect set is never stored: under the no-restriction
//! hypothesis a covector `e` is an effect iff `0 <= e·g <= 1` for all
//! generators.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{check_dim, Error, Result};
use crate::lp::{self, dot, linalg, LpProblem, Rational, Scalar, DEFAULT_FLOAT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theory<S = Rational> {
    name: String,
    dim: usize,
    unit: Vec<S>,
    generators: Vec<Vec<S>>,
    tol: f64,
}

/// A finite collection of effects that should sum to the order unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement<S = Rational> {
    pub effects: Vec<Vec<S>>,
}

impl<S: Scalar> Measurement<S> {
    pub fn new(effects: Vec<Vec<S>>) -> Self {
        Measurement { effects }
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    /// Componentwise sum of all effects.
    pub fn total(&self, dim: usize) -> Vec<S> {
        let mut sum = vec![S::zero(); dim];
        for e in &self.effects {
            for (s, x) in sum.iter_mut().zip(e) {
                *s = s.clone() + x.clone();
            }
        }
        sum
    }
}

/// Outcome of [`Theory::validate`], one flag per structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub generator_count: usize,
    /// `unit·g = 1` for every generator.
    pub unit_normalized: bool,
    /// Generators linearly span `R^dim`.
    pub spanning: bool,
    /// Generators affinely span a `(dim-1)`-dimensional set.
    pub affine_rank_ok: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.unit_normalized && self.spanning && self.affine_rank_ok
    }
}

impl<S: Scalar> Theory<S> {
    /// Builds a theory, rejecting length mismatches and generators that are
    /// not normalized to `unit·g = 1`.
    pub fn new(name: impl Into<String>, unit: Vec<S>, generators: Vec<Vec<S>>) -> Result<Self> {
        let tol = if S::EXACT { 0.0 } else { DEFAULT_FLOAT_TOL };
        Self::with_tolerance(name, unit, generators, tol)
    }

    pub fn with_tolerance(
        name: impl Into<String>,
        unit: Vec<S>,
        generators: Vec<Vec<S>>,
        tol: f64,
    ) -> Result<Self> {
        let dim = unit.len();
        if dim == 0 {
            return Err(Error::InvalidTheory("dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidTheory("theory has no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            check_dim(dim, g.len())?;
            if !dot(&unit, g).eq_tol(&S::one(), tol) {
                return Err(Error::InvalidTheory(format!(
                    "generator {i} is not normalized: unit·g = {}",
                    dot(&unit, g)
                )));
            }
        }
        Ok(Theory {
            name: name.into(),
            dim,
            unit,
            generators,
            tol,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn generators(&self) -> &[Vec<S>] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &[S] {
        &self.generators[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn numeric_mode(&self) -> NumericMode {
        if S::EXACT {
            NumericMode::Exact
        } else {
            NumericMode::Float
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn validate(&self) -> ValidationReport {
        let unit_normalized = self
            .generators
            .iter()
            .all(|g| dot(&self.unit, g).eq_tol(&S::one(), self.tol));
        let spanning = linalg::rank(&self.generators, self.tol) == self.dim;
        let base = &self.generators[0];
        let diffs: Vec<Vec<S>> = self.generators[1..]
            .iter()
            .map(|g| g.iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect())
            .collect();
        let affine_rank_ok = linalg::rank(&diffs, self.tol) + 1 == self.dim;
        ValidationReport {
            dim: self.dim,
            generator_count: self.generators.len(),
            unit_normalized,
            spanning,
            affine_rank_ok,
        }
    }

    /// `x ∈ cone(generators)`, decided by an LP in the conic weights.
    pub fn in_cone(&self, x: &[S]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.conic_weights(x, &self.generators)?.is_some())
    }

    /// Convex weights expressing `x` over `points`, if any exist.
    fn conic_weights(&self, x: &[S], points: &[Vec<S>]) -> Result<Option<Vec<S>>> {
        if points.is_empty() {
            return Ok(x.iter().all(|v| v.is_zero_tol(self.tol)).then(Vec::new));
        }
        let m = points.len();
        let mut p = LpProblem::<S>::new(m);
        for j in 0..m {
            p.nonneg(j);
        }
        for (k, xk) in x.iter().enumerate() {
            let row = points.iter().map(|g| g[k].clone()).collect();
            p.add_eq(row, xk.clone());
        }
        let out = lp::solve(&p, self.tol)?;
        match out.status {
            lp::LpStatus::Optimal => Ok(out.solution),
            lp::LpStatus::Infeasible => Ok(None),
            s => Err(Error::Internal(format!("membership LP ended with {s:?}"))),
        }
    }

    /// Normalized and inside the convex hull of the generators.
    pub fn is_state(&self, x: &[S]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        if !dot(&self.unit, x).eq_tol(&S::one(), self.tol) {
            return Ok(false);
        }
        self.in_cone(x)
    }

    pub fn is_effect(&self, e: &[S]) -> Result<bool> {
        check_dim(self.dim, e.len())?;
        Ok(self.generators.iter().all(|g| {
            let v = dot(e, g);
            v.sign(self.tol) != Ordering::Less && v.cmp_tol(&S::one(), self.tol) != Ordering::Greater
        }))
    }

    pub fn is_measurement(&self, m: &Measurement<S>) -> Result<bool> {
        if m.is_empty() {
            return Ok(false);
        }
        for e in &m.effects {
            if !self.is_effect(e)? {
                return Ok(false);
            }
        }
        Ok(m
            .total(self.dim)
            .iter()
            .zip(&self.unit)
            .all(|(a, b)| a.eq_tol(b, self.tol)))
    }

    /// Drops every generator that is a convex combination of the remaining
    /// ones, returning the reduced theory and the surviving original indices.
    pub fn reduce_to_pure_states_indexed(&self) -> Result<(Theory<S>, Vec<usize>)> {
        let mut keep: Vec<usize> = (0..self.generators.len()).collect();
        let mut i = 0;
        while i < keep.len() {
            let g = &self.generators[keep[i]];
            let others: Vec<Vec<S>> = keep
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &j)| self.generators[j].clone())
                .collect();
            if !others.is_empty() && self.conic_weights(g, &others)?.is_some() {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        let gens = keep.iter().map(|&j| self.generators[j].clone()).collect();
        let t = Theory {
            name: self.name.clone(),
            dim: self.dim,
            unit: self.unit.clone(),
            generators: gens,
            tol: self.tol,
        };
        Ok((t, keep))
    }

    pub fn reduce_to_pure_states(&self) -> Result<Theory<S>> {
        Ok(self.reduce_to_pure_states_indexed()?.0)
    }

    /// Image of the theory under the invertible linear map `m`: generators
    /// map as `g -> m g` and the unit contragrediently, so `unit·g` is kept.
    pub fn transform(&self, m: &[Vec<S>]) -> Result<Theory<S>> {
        check_dim(self.dim, m.len())?;
        let inv = linalg::inverse(m, self.tol)
            .ok_or_else(|| Error::InvalidParameter("transformation is singular".into()))?;
        let inv_t = linalg::transpose(&inv);
        Ok(Theory {
            name: self.name.clone(),
            dim: self.dim,
            unit: linalg::mat_vec(&inv_t, &self.unit),
            generators: self.generators.iter().map(|g| linalg::mat_vec(m, g)).collect(),
            tol: self.tol,
        })
    }
}

impl Theory<Rational> {
    pub fn to_float(&self) -> Theory<f64> {
        let conv = |v: &[Rational]| v.iter().map(Rational::to_f64).collect::<Vec<_>>();
        Theory {
            name: self.name.clone(),
            dim: self.dim,
            unit: conv(&self.unit),
            generators: self.generators.iter().map(|g| conv(g)).collect(),
            tol: DEFAULT_FLOAT_TOL,
        }
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_string(&TheoryJson::from_exact(self)).expect("serializable");
        hex(&Sha256::digest(json.as_bytes()))
    }
}

impl Theory<f64> {
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_string(&TheoryJson::from_float(self)).expect("serializable");
        hex(&Sha256::digest(json.as_bytes()))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Exact rank test: are the given vectors linearly independent?
pub fn linearly_independent<S: Scalar>(states: &[Vec<S>], tol: f64) -> bool {
    states.is_empty() || linalg::rank(states, tol) == states.len()
}

/// A theory in either numeric mode.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTheory {
    Exact(Theory<Rational>),
    Float(Theory<f64>),
}

impl AnyTheory {
    pub fn name(&self) -> &str {
        match self {
            AnyTheory::Exact(t) => t.name(),
            AnyTheory::Float(t) => t.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyTheory::Exact(t) => t.dim(),
            AnyTheory::Float(t) => t.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyTheory::Exact(t) => t.len(),
            AnyTheory::Float(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn numeric_mode(&self) -> NumericMode {
        match self {
            AnyTheory::Exact(_) => NumericMode::Exact,
            AnyTheory::Float(_) => NumericMode::Float,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            AnyTheory::Exact(t) => t.validate(),
            AnyTheory::Float(t) => t.validate(),
        }
    }

    pub fn content_hash(&self) -> String {
        match self {
            AnyTheory::Exact(t) => t.content_hash(),
            AnyTheory::Float(t) => t.content_hash(),
        }
    }

    pub fn as_exact(&self) -> Option<&Theory<Rational>> {
        match self {
            AnyTheory::Exact(t) => Some(t),
            AnyTheory::Float(_) => None,
        }
    }

    /// Float view of either mode.
    pub fn to_float(&self) -> Theory<f64> {
        match self {
            AnyTheory::Exact(t) => t.to_float(),
            AnyTheory::Float(t) => t.clone(),
        }
    }

    pub fn to_json(&self) -> TheoryJson {
        match self {
            AnyTheory::Exact(t) => TheoryJson::from_exact(t),
            AnyTheory::Float(t) => TheoryJson::from_float(t),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: TheoryJson = serde_json::from_str(s)?;
        j.into_theory()
    }
}

impl From<Theory<Rational>> for AnyTheory {
    fn from(t: Theory<Rational>) -> Self {
        AnyTheory::Exact(t)
    }
}

impl From<Theory<f64>> for AnyTheory {
    fn from(t: Theory<f64>) -> Self {
        AnyTheory::Float(t)
    }
}

impl fmt::Display for AnyTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, {} generators, {:?})",
            self.name(),
            self.dim(),
            self.len(),
            self.numeric_mode()
        )
    }
}

/// On-disk theory schema: `{ "name", "dim", "unit", "generators" }`.
///
/// Exact coordinates are strings `"p/q"` (integers are also accepted on
/// input). A file containing any JSON floating-point number loads as a
/// float-mode theory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryJson {
    pub name: String,
    pub dim: usize,
    pub unit: Vec<serde_json::Value>,
    pub generators: Vec<Vec<serde_json::Value>>,
}

fn rat_value(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(r.to_string())
}

fn float_value(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

fn is_float_literal(v: &serde_json::Value) -> bool {
    matches!(v, serde_json::Value::Number(n) if n.is_f64())
}

fn parse_rat(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|e: lp::ParseRationalError| Error::InvalidTheory(e.to_string())),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from(num_bigint::BigInt::from(u)))
            } else {
                Err(Error::InvalidTheory(format!("{n} is not an exact coordinate")))
            }
        }
        other => Err(Error::InvalidTheory(format!("{other} is not a coordinate"))),
    }
}

fn parse_float(v: &serde_json::Value) -> Result<f64> {
    match v {
        serde_json::Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::InvalidTheory(format!("{n} is not finite"))),
        serde_json::Value::String(_) => Ok(parse_rat(v)?.to_f64()),
        other => Err(Error::InvalidTheory(format!("{other} is not a coordinate"))),
    }
}

impl TheoryJson {
    pub fn from_exact(t: &Theory<Rational>) -> Self {
        TheoryJson {
            name: t.name.clone(),
            dim: t.dim,
            unit: t.unit.iter().map(rat_value).collect(),
            generators: t
                .generators
                .iter()
                .map(|g| g.iter().map(rat_value).collect())
                .collect(),
        }
    }

    pub fn from_float(t: &Theory<f64>) -> Self {
        TheoryJson {
            name: t.name.clone(),
            dim: t.dim,
            unit: t.unit.iter().copied().map(float_value).collect(),
            generators: t
                .generators
                .iter()
                .map(|g| g.iter().copied().map(float_value).collect())
                .collect(),
        }
    }

    pub fn into_theory(self) -> Result<AnyTheory> {
        check_dim(self.dim, self.unit.len())?;
        for g in &self.generators {
            check_dim(self.dim, g.len())?;
        }
        let float = self.unit.iter().any(is_float_literal)
            || self.generators.iter().flatten().any(is_float_literal);
        if float {
            let unit = self.unit.iter().map(parse_float).collect::<Result<Vec<_>>>()?;
            let gens = self
                .generators
                .iter()
                .map(|g| g.iter().map(parse_float).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyTheory::Float(Theory::new(self.name, unit, gens)?))
        } else {
            let unit = self.unit.iter().map(parse_rat).collect::<Result<Vec<_>>>()?;
            let gens = self
                .generators
                .iter()
                .map(|g| g.iter().map(parse_rat).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyTheory::Exact(Theory::new(self.name, unit, gens)?))
        }
    }
}

/// Parses a vector of exact coordinates such as `["1", "-1/2", 3]`.
pub fn parse_rat_vec(values: &[serde_json::Value]) -> Result<Vec<Rational>> {
    values.iter().map(parse_rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{classical_simplex, hypercube_theory};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn simplex_and_cube_validate() {
        assert!(classical_simplex(3).unwrap().validate().passed());
        let cube = hypercube_theory(3).unwrap();
        let rep = cube.validate();
        assert!(rep.passed());
        assert_eq!(rep.dim, 4);
    }

    #[test]
    fn proper_subspace_fails_spanning() {
        // dim 3, both generators in the plane x2 = 0
        let t = Theory::new("flat", qs(&[1, 1, 1]), vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])]).unwrap();
        let rep = t.validate();
        assert!(rep.unit_normalized);
        assert!(!rep.spanning);
        assert!(!rep.passed());
    }

    #[test]
    fn unnormalized_generators_rejected() {
        let err = Theory::new("bad", qs(&[1, 0]), vec![qs(&[2, 0])]).unwrap_err();
        assert!(matches!(err, Error::InvalidTheory(_)));
        let err = Theory::new("bad", qs(&[1, 0]), vec![qs(&[1, 0, 0])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn states_of_the_square() {
        let sq = hypercube_theory(2).unwrap();
        for g in sq.generators() {
            assert!(sq.is_state(g).unwrap());
        }
        let mut avg = vec![q(0); 3];
        for g in sq.generators() {
            for (a, x) in avg.iter_mut().zip(g) {
                *a += &(x / &q(4));
            }
        }
        assert!(sq.is_state(&avg).unwrap());
        assert!(!sq.is_state(&qs(&[1, 2, 0])).unwrap());
        assert!(!sq.is_state(&qs(&[2, 0, 0])).unwrap());
        assert!(sq.is_state(&qs(&[1])).is_err());
    }

    #[test]
    fn extreme_effects() {
        let cube = hypercube_theory(3).unwrap();
        assert!(cube.is_effect(&qs(&[0, 0, 0, 0])).unwrap());
        assert!(cube.is_effect(cube.unit()).unwrap());
        assert!(!cube.is_effect(&qs(&[1, 1, 0, 0])).unwrap());
        assert!(!cube.is_measurement(&Measurement::new(vec![])).unwrap());
    }

    #[test]
    fn reduce_drops_midpoint_and_centroid() {
        let t = Theory::new(
            "seg",
            qs(&[1, 1]),
            vec![qs(&[1, 0]), qs(&[0, 1]), vec![Rational::new(1, 2), Rational::new(1, 2)]],
        )
        .unwrap();
        let (r, idx) = t.reduce_to_pure_states_indexed().unwrap();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(r.len(), 2);

        let sq = hypercube_theory(2).unwrap();
        let mut gens = sq.generators().to_vec();
        gens.push(qs(&[1, 0, 0]));
        let t = Theory::new("sq+c", sq.unit().to_vec(), gens).unwrap();
        let r = t.reduce_to_pure_states().unwrap();
        assert_eq!(r.generators(), sq.generators());

        let cube = hypercube_theory(3).unwrap();
        assert_eq!(cube.reduce_to_pure_states().unwrap(), cube);
    }

    #[test]
    fn duplicate_generators_collapse_to_one() {
        let t = Theory::new("dup", qs(&[1, 1]), vec![qs(&[1, 0]), qs(&[1, 0]), qs(&[0, 1])]).unwrap();
        assert_eq!(t.reduce_to_pure_states().unwrap().len(), 2);
    }

    #[test]
    fn linear_independence() {
        let s = classical_simplex(4).unwrap();
        assert!(linearly_independent(s.generators(), 0.0));
        let sq = hypercube_theory(2).unwrap();
        assert!(!linearly_independent(sq.generators(), 0.0));
        assert!(linearly_independent(&sq.generators()[..2], 0.0));
        assert!(linearly_independent::<Rational>(&[], 0.0));
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let t = Theory::new(
            "halves",
            vec![q(1), q(1)],
            vec![vec![Rational::new(1, 3), Rational::new(2, 3)], qs(&[1, 0])],
        )
        .unwrap();
        let any = AnyTheory::Exact(t.clone());
        let s = serde_json::to_string(&any.to_json()).unwrap();
        let back = AnyTheory::from_json_str(&s).unwrap();
        assert_eq!(back, any);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), s);
    }

    #[test]
    fn json_with_floats_is_float_mode() {
        let s = r#"{"name":"f","dim":2,"unit":[1,1],"generators":[[0.5,0.5],[1,0]]}"#;
        let t = AnyTheory::from_json_str(s).unwrap();
        assert_eq!(t.numeric_mode(), NumericMode::Float);
        let s = r#"{"name":"f","dim":3,"unit":[1,1],"generators":[[1,0]]}"#;
        assert!(AnyTheory::from_json_str(s).is_err());
    }
}
