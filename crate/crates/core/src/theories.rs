//! Constructors for the standard theory families.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gpt::{AnyTheory, Theory};
use crate::lp::{dot, linalg, Rational};

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn unit_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

/// The classical theory with `d` perfectly distinguishable pure states:
/// the positive orthant of `R^d` with the all-ones unit.
pub fn classical_simplex(d: usize) -> Result<Theory> {
    if d < 1 {
        return Err(Error::InvalidParameter("simplex needs d >= 1".into()));
    }
    let gens = (0..d).map(|i| unit_vector(d, i)).collect();
    Theory::new(format!("simplex-{d}"), vec![Rational::one(); d], gens)
}

/// The hypercube theory of dimension `m + 1`: cone `x0 >= max |x_i|`, unit
/// `x0`, and the `2^m` vertices `(1, ε)` as generators.
///
/// Generator `k` has `ε_i = -1` exactly when bit `i - 1` of `k` is set.
pub fn hypercube_theory(m: usize) -> Result<Theory> {
    if m < 1 {
        return Err(Error::InvalidParameter("hypercube needs m >= 1".into()));
    }
    if m > 20 {
        return Err(Error::InvalidParameter(format!("hypercube m = {m} is too large")));
    }
    let gens = (0..1usize << m)
        .map(|k| {
            let signs: Vec<i8> = (0..m).map(|i| if k >> i & 1 == 1 { -1 } else { 1 }).collect();
            cube_vertex(&signs)
        })
        .collect();
    Theory::new(format!("hypercube-{m}"), unit_vector(m + 1, 0), gens)
}

fn cube_vertex(signs: &[i8]) -> Vec<Rational> {
    std::iter::once(Rational::one())
        .chain(signs.iter().map(|&s| q(s as i64)))
        .collect()
}

/// The vertex `ρ_ε = (1, ε_1, ..., ε_m)` of the hypercube theory.
pub fn hypercube_state(signs: &[i8]) -> Result<Vec<Rational>> {
    if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidParameter("sign vector must be nonempty with entries ±1".into()));
    }
    Ok(cube_vertex(signs))
}

/// Index of `ρ_ε` among the generators of [`hypercube_theory`].
pub fn hypercube_index(signs: &[i8]) -> usize {
    signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == -1)
        .map(|(i, _)| 1usize << i)
        .sum()
}

/// The effect `e_i(x) = (x0 + x_i) / 2` of the `m`-dimensional hypercube
/// theory, `1 <= i <= m`.
pub fn hypercube_effect(m: usize, i: usize) -> Result<Vec<Rational>> {
    if i < 1 || i > m {
        return Err(Error::InvalidParameter(format!("effect index {i} outside 1..={m}")));
    }
    let half = Rational::new(1, 2);
    let mut e = vec![Rational::zero(); m + 1];
    e[0] = half.clone();
    e[i] = half;
    Ok(e)
}

/// The regular `n`-gon theory in dimension 3.
///
/// Vertex `k` sits at angle `2πk/n` on the unit circle. For `n = 3, 4, 6`
/// an exact rational affine copy is returned (the square is the regular
/// one itself); every other `n` yields a float-mode theory.
pub fn ngon_theory(n: usize) -> Result<AnyTheory> {
    if n < 3 {
        return Err(Error::InvalidParameter("polygon needs n >= 3".into()));
    }
    let name = format!("ngon-{n}");
    let exact_points: Option<Vec<(Rational, Rational)>> = match n {
        3 => Some(vec![(q(0), q(0)), (q(1), q(0)), (q(0), q(1))]),
        4 => Some(vec![(q(1), q(0)), (q(0), q(1)), (q(-1), q(0)), (q(0), q(-1))]),
        6 => {
            let h = Rational::new(1, 2);
            Some(vec![
                (q(1), q(0)),
                (h.clone(), q(1)),
                (-h.clone(), q(1)),
                (q(-1), q(0)),
                (-h.clone(), q(-1)),
                (h, q(-1)),
            ])
        }
        _ => None,
    };
    if let Some(pts) = exact_points {
        let gens = pts.into_iter().map(|(x, y)| vec![q(1), x, y]).collect();
        return Ok(AnyTheory::Exact(Theory::new(name, unit_vector(3, 0), gens)?));
    }
    let gens = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![1.0, a.cos(), a.sin()]
        })
        .collect();
    Ok(AnyTheory::Float(Theory::new(name, vec![1.0, 0.0, 0.0], gens)?))
}

/// Linear chart `x -> (unit·x, P x)` of a theory, where `P` picks the first
/// standard coordinates that complete `unit` to a basis of the dual space.
fn chart(t: &Theory) -> Vec<usize> {
    let mut rows = vec![t.unit().to_vec()];
    let mut picked = Vec::new();
    for k in 0..t.dim() {
        rows.push(unit_vector(t.dim(), k));
        if linalg::rank(&rows, 0.0) == rows.len() {
            picked.push(k);
        } else {
            rows.pop();
        }
    }
    picked
}

/// The prism (Cartesian product) theory of `a` and `b`.
///
/// The product lives on `{(x, y) : u_A(x) = u_B(y)}`, which has dimension
/// `dim_A + dim_B - 1`. It is coordinatized as (shared normalization, chart
/// coordinates of the `a` factor, chart coordinates of the `b` factor), and
/// its generators are all pairs `(g_a, g_b)` with `g_a` varying slowest.
pub fn prism_product(a: &Theory, b: &Theory) -> Result<Theory> {
    let ca = chart(a);
    let cb = chart(b);
    let dim = 1 + ca.len() + cb.len();
    let mut gens = Vec::with_capacity(a.len() * b.len());
    for ga in a.generators() {
        for gb in b.generators() {
            let mut v = Vec::with_capacity(dim);
            v.push(Rational::one());
            v.extend(ca.iter().map(|&k| ga[k].clone()));
            v.extend(cb.iter().map(|&k| gb[k].clone()));
            gens.push(v);
        }
    }
    debug_assert!(a.generators().iter().all(|g| dot(a.unit(), g) == Rational::one()));
    Theory::new(format!("({})x({})", a.name(), b.name()), unit_vector(dim, 0), gens)
}

/// Prism product over theories of either mode; float factors are rejected.
pub fn prism_product_any(a: &AnyTheory, b: &AnyTheory) -> Result<Theory> {
    match (a, b) {
        (AnyTheory::Exact(a), AnyTheory::Exact(b)) => prism_product(a, b),
        _ => Err(Error::RequiresExact),
    }
}

/// The `l`-fold prism power of the `q`-outcome classical simplex.
///
/// Generator order is lexicographic in the tuple `(i_1, ..., i_l)`, so the
/// index of a tuple is given by [`simplex_power_index`].
pub fn simplex_power(q: usize, l: usize) -> Result<Theory> {
    if q < 1 || l < 1 {
        return Err(Error::InvalidParameter("simplex power needs q >= 1 and l >= 1".into()));
    }
    let count = (q as u128).checked_pow(l as u32);
    if count.is_none_or(|c| c > 1 << 20) {
        return Err(Error::InvalidParameter(format!(
            "simplex power with q = {q}, l = {l} has too many generators"
        )));
    }
    let s = classical_simplex(q)?;
    let mut t = s.clone();
    for _ in 1..l {
        t = prism_product(&t, &s)?;
    }
    Ok(t.renamed(format!("simplex-{q}^{l}")))
}

/// Generator index of the tuple `(i_1, ..., i_l)` (0-based symbols) in
/// [`simplex_power`].
pub fn simplex_power_index(q: usize, symbols: &[usize]) -> usize {
    symbols.iter().fold(0, |acc, &s| acc * q + s)
}

/// A theory family as written on the command line, e.g. `hypercube:m=4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Simplex { d: usize },
    Hypercube { m: usize },
    Ngon { n: usize },
    SimplexPower { q: usize, l: usize },
    Prism(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<AnyTheory> {
        Ok(match self {
            FamilySpec::Simplex { d } => classical_simplex(*d)?.into(),
            FamilySpec::Hypercube { m } => hypercube_theory(*m)?.into(),
            FamilySpec::Ngon { n } => ngon_theory(*n)?,
            FamilySpec::SimplexPower { q, l } => simplex_power(*q, *l)?.into(),
            FamilySpec::Prism(a, b) => prism_product_any(&a.build()?, &b.build()?)?.into(),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Simplex { d } => write!(f, "simplex:d={d}"),
            FamilySpec::Hypercube { m } => write!(f, "hypercube:m={m}"),
            FamilySpec::Ngon { n } => write!(f, "ngon:n={n}"),
            FamilySpec::SimplexPower { q, l } => write!(f, "simplex-power:q={q},l={l}"),
            FamilySpec::Prism(a, b) => write!(f, "prism:{a}*{b}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParameter(format!("family `{s}`: {why}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected kind:params"))?;
        if kind == "prism" {
            let (a, b) = rest
                .split_once('*')
                .ok_or_else(|| bad("expected prism:<family>*<family>"))?;
            return Ok(FamilySpec::Prism(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let mut params = std::collections::BTreeMap::new();
        for kv in rest.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v: usize = v.trim().parse().map_err(|_| bad("parameter is not an integer"))?;
            params.insert(k.trim().to_string(), v);
        }
        let mut take = |key: &str| params.remove(key).ok_or_else(|| bad(&format!("missing `{key}`")));
        let spec = match kind {
            "simplex" => FamilySpec::Simplex { d: take("d")? },
            "hypercube" => FamilySpec::Hypercube { m: take("m")? },
            "ngon" => FamilySpec::Ngon { n: take("n")? },
            "simplex-power" => FamilySpec::SimplexPower {
                q: take("q")?,
                l: take("l")?,
            },
            _ => return Err(bad("unknown theory family")),
        };
        if let Some(k) = params.keys().next() {
            return Err(bad(&format!("unexpected parameter `{k}`")));
        }
        Ok(spec)
    }
}
