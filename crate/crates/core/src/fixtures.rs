//! Named instances with their known answers.
//!
//! Each fixture carries a theory, optionally a list of states of interest
//! (plus auxiliary states and effects), and the results it is expected to
//! produce. Every fixture is checked against those results in the test
//! suite and can be dumped as JSON by the CLI.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::gpt::{AnyTheory, TheoryJson};
use crate::lp::Rational;
use crate::theories::{hypercube_theory, ngon_theory, prism_product, classical_simplex, simplex_power};
use crate::{Error, Result};

pub const FIXTURE_NAMES: [&str; 6] = [
    "appendix-c-triple",
    "example-10-triple",
    "square",
    "pentagon",
    "cube",
    "simplex3-prism",
];

/// Answers a fixture is expected to reproduce. `None` means "not pinned".
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// Verdict of the perfect-distinguishability LP on `states`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perfect: Option<bool>,
    /// Whether `effects` sum to the unit (and so form a measurement).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effects_form_measurement: Option<bool>,
    /// Whether `e_j·ω_i = δ_ij` holds for `effects` and `states`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effects_satisfy_delta: Option<bool>,
    /// Maximum N-complete clique size, keyed by N.
    pub max_clique: BTreeMap<usize, usize>,
    /// Number of hyperedges, keyed by N.
    pub hyperedges: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub theory: AnyTheory,
    pub states: Vec<Vec<Rational>>,
    /// Generator indices of `states`, when they are generators.
    pub state_indices: Vec<usize>,
    pub auxiliary: BTreeMap<String, Vec<Rational>>,
    pub effects: Vec<Vec<Rational>>,
    pub expected: Expected,
}

#[derive(Serialize)]
struct FixtureJson<'a> {
    name: &'a str,
    description: &'a str,
    theory: TheoryJson,
    states: &'a [Vec<Rational>],
    state_indices: &'a [usize],
    auxiliary: &'a BTreeMap<String, Vec<Rational>>,
    effects: &'a [Vec<Rational>],
    expected: &'a Expected,
}

impl Fixture {
    pub fn to_json(&self) -> serde_json::Value {
        let j = FixtureJson {
            name: self.name,
            description: self.description,
            theory: self.theory.to_json(),
            states: &self.states,
            state_indices: &self.state_indices,
            auxiliary: &self.auxiliary,
            effects: &self.effects,
            expected: &self.expected,
        };
        serde_json::to_value(j).expect("fixture serializes")
    }

    fn bare(name: &'static str, description: &'static str, theory: AnyTheory) -> Self {
        Fixture {
            name,
            description,
            theory,
            states: Vec::new(),
            state_indices: Vec::new(),
            auxiliary: BTreeMap::new(),
            effects: Vec::new(),
            expected: Expected::default(),
        }
    }
}

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::from(x)).collect()
}

fn half(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::new(x, 2)).collect()
}

fn cube_triple() -> Result<Fixture> {
    let theory = hypercube_theory(3)?;
    let states = vec![v(&[1, 1, 1, 1]), v(&[1, -1, 1, -1]), v(&[1, -1, -1, 1])];
    let state_indices = states
        .iter()
        .map(|s| theory.generators().iter().position(|g| g == s).expect("cube vertex"))
        .collect();
    let auxiliary = [
        ("rho0", v(&[1, -1, 1, 1])),
        ("rho1", v(&[1, 1, -1, -1])),
        ("sigma1", v(&[1, -1, -1, -1])),
        ("sigma2", v(&[1, 1, -1, 1])),
        ("sigma3", v(&[1, 1, 1, -1])),
    ]
    .into_iter()
    .map(|(k, x)| (k.to_string(), x))
    .collect();
    let effects = vec![half(&[1, 1, 0, 0]), half(&[1, 0, 0, -1]), half(&[1, 0, -1, 0])];
    Ok(Fixture {
        name: "appendix-c-triple",
        description: "three cube vertices admitting effects with e_j·ω_i = δ_ij that do not sum to the unit; not perfectly distinguishable",
        theory: AnyTheory::Exact(theory),
        states,
        state_indices,
        auxiliary,
        effects,
        expected: Expected {
            perfect: Some(false),
            effects_form_measurement: Some(false),
            effects_satisfy_delta: Some(true),
            ..Expected::default()
        },
    })
}

fn code_triple() -> Result<Fixture> {
    let theory = simplex_power(2, 2)?;
    // (ρ1,ρ1), (ρ1,ρ2), (ρ2,ρ1) in the lexicographic generator order
    let state_indices = vec![0, 1, 2];
    let states = state_indices.iter().map(|&i| theory.generator(i).to_vec()).collect();
    let auxiliary = [("omega2+omega3-omega1".to_string(), theory.generator(3).to_vec())].into();
    Ok(Fixture {
        name: "example-10-triple",
        description: "three states of the two-bit prism whose pairwise components never all differ; not perfectly distinguishable",
        theory: AnyTheory::Exact(theory),
        states,
        state_indices,
        auxiliary,
        effects: Vec::new(),
        expected: Expected {
            perfect: Some(false),
            ..Expected::default()
        },
    })
}

fn cliques(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

/// The fixture called `name`.
pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "appendix-c-triple" => cube_triple(),
        "example-10-triple" => code_triple(),
        "square" => {
            let mut f = Fixture::bare(
                "square",
                "the square (2-cube) theory: four pairwise distinguishable vertices, no distinguishable triple",
                AnyTheory::Exact(hypercube_theory(2)?),
            );
            f.expected.max_clique = cliques(&[(2, 4), (3, 0)]);
            f.expected.hyperedges = cliques(&[(2, 6), (3, 0)]);
            Ok(f)
        }
        "pentagon" => {
            let mut f = Fixture::bare(
                "pentagon",
                "the regular pentagon: only non-adjacent vertices are distinguishable",
                ngon_theory(5)?,
            );
            f.expected.max_clique = cliques(&[(2, 2)]);
            f.expected.hyperedges = cliques(&[(2, 5)]);
            Ok(f)
        }
        "cube" => {
            let mut f = Fixture::bare(
                "cube",
                "the 3-cube theory: eight pairwise distinguishable vertices in dimension 4",
                AnyTheory::Exact(hypercube_theory(3)?),
            );
            f.expected.max_clique = cliques(&[(2, 8)]);
            f.expected.hyperedges = cliques(&[(2, 28)]);
            Ok(f)
        }
        "simplex3-prism" => {
            let s = classical_simplex(3)?;
            let mut f = Fixture::bare(
                "simplex3-prism",
                "prism product of two classical trits: nine states in dimension 5, all pairs distinguishable",
                AnyTheory::Exact(prism_product(&s, &s)?.renamed("simplex-3^2")),
            );
            f.expected.max_clique = cliques(&[(2, 9)]);
            f.expected.hyperedges = cliques(&[(2, 36)]);
            Ok(f)
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown fixture '{other}' (known: {})",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

/// All fixtures in [`FIXTURE_NAMES`] order.
pub fn fixtures() -> Result<Vec<Fixture>> {
    FIXTURE_NAMES.iter().map(|n| fixture(n)).collect()
}
