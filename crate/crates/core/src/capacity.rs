//! Compression factors, hypercube memories and the random simplex-power
//! construction.
//!
//! The compression factor of a family of theories is `κ = m / log2 d`, where
//! `d` is the dimension needed to store `2^m` states that are N-wise
//! mutually distinguishable. For `N = 2` the hypercube is optimal and
//! `d = m + 1`. For larger `N` only a randomized construction on powers of
//! classical simplices is available: draw `2^m` random codewords in
//! `{1..q}^l` and check that every N-subset has a component on which all of
//! its symbols differ. Each such component yields a classical readout, so
//! anything verified via components is a certificate. On simplex powers the
//! check is also necessary (see [`nwise_failures_by_lp`] for the LP side).

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discrimination::{is_perfectly_distinguishable_indices, verify_witness, Verdict};
use crate::exec::Exec;
use crate::gpt::{Measurement, Theory};
use crate::hypergraph::combinations;
use crate::lp::Rational;
use crate::theories::{hypercube_effect, hypercube_theory, simplex_power, simplex_power_index};
use crate::{Error, Result};

/// `m / log2 d`, kept as the integer pair so it can be printed exactly
/// when `d` is a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Kappa {
    pub m: u64,
    pub dimension: u64,
}

impl Kappa {
    pub fn new(m: u64, dimension: u64) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidParameter(format!(
                "compression factor needs dimension >= 2, got {dimension}"
            )));
        }
        Ok(Kappa { m, dimension })
    }

    /// The exact value when `dimension` is a power of two.
    pub fn exact(&self) -> Option<Rational> {
        self.dimension.is_power_of_two().then(|| {
            Rational::from(self.m as i64) / Rational::from(self.dimension.trailing_zeros() as i64)
        })
    }

    pub fn value(&self) -> f64 {
        match self.exact() {
            Some(r) => r.to_f64(),
            None => self.m as f64 / (self.dimension as f64).log2(),
        }
    }
}

/// `d(2, m) = m + 1`, achieved by the hypercube theory.
pub fn d_pairwise(m: u64) -> Result<u64> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    Ok(m + 1)
}

/// `κ(2, m) = m / log2(m + 1)`.
pub fn kappa_pairwise(m: u64) -> Result<Kappa> {
    Kappa::new(m, d_pairwise(m)?)
}

/// Number of N-outcome measurements a knockout tournament needs to single
/// out one of `n` states: `⌈(n - 1) / (N - 1)⌉`.
pub fn tournament_count(n: u64, arity: u64) -> Result<u64> {
    if n < 1 || arity < 2 {
        return Err(Error::InvalidParameter("tournament needs n >= 1 and N >= 2".into()));
    }
    Ok((n - 1).div_ceil(arity - 1))
}

/// Renders `x` with at most 12 significant digits.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    rounded.to_string()
}

fn kappa_12<S: serde::Serializer>(k: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&sig12(*k))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub m: u64,
    pub dimension: u64,
    #[serde(serialize_with = "kappa_12")]
    pub kappa: f64,
    pub achieved_set_size: u64,
    pub pairs_checked: u64,
    pub verified: bool,
}

/// Checks every pair of hypercube vertices twice: with the LP and with the
/// two-outcome measurement `{e_k, u - e_k}` built from a coordinate `k` on
/// which the two vertices differ.
pub fn verify_hypercube_memory(m: usize, exec: Exec) -> Result<CapacityReport> {
    if !(1..=8).contains(&m) {
        return Err(Error::InvalidParameter(format!("hypercube memory check needs 1 <= m <= 8, got {m}")));
    }
    let theory = hypercube_theory(m)?;
    let pairs: Vec<Vec<usize>> = combinations(theory.len(), 2).collect();
    let results = exec.map(&pairs, |p| check_cube_pair(&theory, m, p[0], p[1]));
    let mut verified = true;
    for r in results {
        verified &= r?;
    }
    let kappa = kappa_pairwise(m as u64)?;
    Ok(CapacityReport {
        n: 2,
        m: m as u64,
        dimension: kappa.dimension,
        kappa: kappa.value(),
        achieved_set_size: theory.len() as u64,
        pairs_checked: pairs.len() as u64,
        verified,
    })
}

/// The closed-form measurement telling generators `i` and `j` of the
/// `m`-cube apart, in the order `(for i, for j)`.
pub fn hypercube_pair_witness(m: usize, i: usize, j: usize) -> Result<Measurement> {
    let diff = i ^ j;
    if i >= 1 << m || j >= 1 << m || diff == 0 {
        return Err(Error::InvalidParameter(format!("({i}, {j}) is not a pair of distinct {m}-cube vertices")));
    }
    let k = diff.trailing_zeros() as usize;
    let e = hypercube_effect(m, k + 1)?;
    let mut rest: Vec<Rational> = e.iter().map(|x| -x.clone()).collect();
    rest[0] += &Rational::one();
    // e_k fires on +1 in coordinate k, i.e. when bit k is clear
    Ok(if i >> k & 1 == 0 {
        Measurement::new(vec![e, rest])
    } else {
        Measurement::new(vec![rest, e])
    })
}

fn check_cube_pair(theory: &Theory, m: usize, i: usize, j: usize) -> Result<bool> {
    let states = vec![theory.generator(i).to_vec(), theory.generator(j).to_vec()];
    let closed = verify_witness(theory, &states, &hypercube_pair_witness(m, i, j)?)?;
    let lp = is_perfectly_distinguishable_indices(theory, &[i, j])?;
    let lp_ok = lp.verdict == Verdict::Perfect
        && match &lp.witness {
            Some(w) => verify_witness(theory, &states, w)?,
            None => false,
        };
    Ok(closed && lp_ok)
}

/// Rational bounds on `log2 x` for `x >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Log2Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Log2Interval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

const MAX_LOG_PRECISION: u32 = 1 << 13;

/// `log2 x` exactly when `x` is a power of two, else as an interval of
/// width about `2^-bits`.
pub fn log2_interval(x: &Rational, bits: u32) -> Result<Log2Interval> {
    if x < &Rational::one() {
        return Err(Error::InvalidParameter(format!("log2 bounds need x >= 1, got {x}")));
    }
    let (num, den) = (x.numer(), x.denom());
    let (k, y_num, y_den) = normalize_to_unit_octave(num, den);
    if y_num == y_den {
        let k = Rational::from_bigints(BigInt::from(k), BigInt::one());
        return Ok(Log2Interval { lo: k.clone(), hi: k });
    }
    let p = bits as usize + 16;
    let scale = BigInt::one() << p;
    let (mut lo, rem) = (&y_num << p).div_rem(&y_den);
    let mut hi = if rem.is_zero() { lo.clone() } else { &lo + 1 };
    let two = BigInt::from(2) << p;
    let mut lo_bits = BigInt::zero();
    let mut hi_bits = BigInt::zero();
    for _ in 0..bits {
        lo = (&lo * &lo) >> p;
        let (q, r) = (&hi * &hi).div_rem(&scale);
        hi = if r.is_zero() { q } else { q + 1 };
        lo_bits <<= 1;
        hi_bits <<= 1;
        if lo >= two {
            lo_bits += 1;
            lo >>= 1;
        }
        if hi >= two {
            hi_bits += 1;
            hi = (&hi + 1) >> 1;
        }
    }
    let denom = BigInt::one() << bits;
    let kk = BigInt::from(k) * &denom;
    Ok(Log2Interval {
        lo: Rational::from_bigints(&kk + lo_bits, denom.clone()),
        hi: Rational::from_bigints(kk + hi_bits + 1, denom),
    })
}

/// Writes `num/den = 2^k · y` with `1 <= y < 2`.
fn normalize_to_unit_octave(num: BigInt, den: BigInt) -> (u64, BigInt, BigInt) {
    let mut k = num.bits().saturating_sub(den.bits());
    let mut y_den = den << k;
    if y_den > num {
        k -= 1;
        y_den >>= 1;
    }
    let g = num.gcd(&y_den);
    (k, num / &g, y_den / g)
}

/// `⌊f(L)⌋` for `L = log2 x`, with `f` monotone on the interval. Doubles
/// the working precision until both ends agree.
fn floor_of_log<F>(x: &Rational, what: &str, f: F) -> Result<BigInt>
where
    F: Fn(&Rational) -> Rational,
{
    let mut bits = 64;
    while bits <= MAX_LOG_PRECISION {
        let iv = log2_interval(x, bits)?;
        let a = f(&iv.lo).floor();
        if iv.is_exact() {
            return Ok(a);
        }
        if a == f(&iv.hi).floor() {
            return Ok(a);
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted { what: what.into() })
}

fn to_u64(v: BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidParameter(format!("{what} = {v} does not fit in 64 bits")))
}

/// Parameters of the random construction for `2^m` N-wise distinguishable
/// states: `q = ⌊(log2 m)^2⌋`, `l = ⌊2Nm / log2 max(2q / (N(N-1)), 2)⌋`
/// and the dimension `l(q - 1) + 1` of the simplex power.
pub fn probabilistic_params(arity: u64, m: u64) -> Result<(u64, u64, u64)> {
    if arity < 2 || m < 2 {
        return Err(Error::InvalidParameter("random construction needs N >= 2 and m >= 2".into()));
    }
    if m < 64 && (1u64 << m) < arity {
        return Err(Error::InvalidParameter(format!("2^{m} states cannot host N = {arity}")));
    }
    let mq = Rational::from(m as i64);
    let q = to_u64(floor_of_log(&mq, "(log2 m)^2", |l| l.clone() * l.clone())?, "q")?;
    let ratio = Rational::from(2 * q as i64) / Rational::from((arity * (arity - 1)) as i64);
    let two = Rational::from(2);
    let base = if ratio > two { ratio } else { two };
    let num = Rational::from((2 * arity * m) as i64);
    let l = floor_of_log(&base, "2Nm / log2 max(2q/(N(N-1)), 2)", |lg| num.clone() / lg.clone())?;
    let l = to_u64(l, "l")?;
    let dim = l
        .checked_mul(q.saturating_sub(1))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::InvalidParameter("dimension overflows".into()))?;
    Ok((q, l, dim))
}

/// Codewords in `{1..q}^l`, one per state of the simplex power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomCode {
    pub q: usize,
    pub l: usize,
    /// Symbols are 1-based.
    pub codewords: Vec<Vec<usize>>,
    pub seed: u64,
    pub stream: u64,
}

impl RandomCode {
    /// Validates symbols and distinctness.
    pub fn new(q: usize, l: usize, codewords: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, c) in codewords.iter().enumerate() {
            if c.len() != l || c.iter().any(|&s| s < 1 || s > q) {
                return Err(Error::InvalidParameter(format!("codeword {i} is not in {{1..{q}}}^{l}")));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidParameter(format!("codeword {i} is repeated")));
            }
        }
        Ok(RandomCode { q, l, codewords, seed: 0, stream: 0 })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Generator index of codeword `j` in [`simplex_power`]`(q, l)`.
    pub fn generator_index(&self, j: usize) -> usize {
        let symbols: Vec<usize> = self.codewords[j].iter().map(|s| s - 1).collect();
        simplex_power_index(self.q, &symbols)
    }
}

fn check_code_size(q: usize, l: usize, count: usize) -> Result<()> {
    if q < 1 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let fits = (q as u128)
        .checked_pow(l as u32)
        .is_none_or(|total| count as u128 <= total);
    if fits {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{count} distinct codewords do not fit in {{1..{q}}}^{l}")))
    }
}

/// `count` distinct uniformly random codewords from ChaCha8 seeded with
/// `seed` on stream 0.
pub fn sample_random_code(q: usize, l: usize, count: usize, seed: u64) -> Result<RandomCode> {
    sample_random_code_stream(q, l, count, seed, 0)
}

/// Like [`sample_random_code`] on an independent stream; trial `t` of a
/// Monte Carlo run uses stream `t`.
pub fn sample_random_code_stream(q: usize, l: usize, count: usize, seed: u64, stream: u64) -> Result<RandomCode> {
    check_code_size(q, l, count)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut seen = HashSet::with_capacity(count);
    let mut codewords = Vec::with_capacity(count);
    while codewords.len() < count {
        let c: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=q)).collect();
        if seen.insert(c.clone()) {
            codewords.push(c);
        }
    }
    Ok(RandomCode { q, l, codewords, seed, stream })
}

/// True iff the codewords at `subset` carry pairwise distinct symbols at
/// `component` (0-based).
pub fn component_discriminates(code: &RandomCode, subset: &[usize], component: usize) -> Result<bool> {
    if component >= code.l {
        return Err(Error::InvalidParameter(format!("component {component} outside 0..{}", code.l)));
    }
    let mut seen = HashSet::new();
    for (a, &i) in subset.iter().enumerate() {
        if i >= code.len() {
            return Err(Error::InvalidParameter(format!("codeword index {i} out of range")));
        }
        if subset[..a].contains(&i) {
            return Err(Error::InvalidParameter(format!("codeword index {i} repeated in subset")));
        }
        seen.insert(code.codewords[i][component]);
    }
    Ok(seen.len() == subset.len())
}

fn subset_has_component(code: &RandomCode, subset: &[usize]) -> bool {
    (0..code.l).any(|c| {
        let mut seen = HashSet::with_capacity(subset.len());
        subset.iter().all(|&i| seen.insert(code.codewords[i][c]))
    })
}

/// True iff every N-subset of codewords has a discriminating component.
pub fn verify_nwise_by_components(code: &RandomCode, arity: usize) -> bool {
    combinations(code.len(), arity).all(|s| subset_has_component(code, &s))
}

/// Every N-subset of the code that the exact LP on `simplex_power(q, l)`
/// finds not perfectly distinguishable.
pub fn nwise_failures_by_lp(code: &RandomCode, arity: usize, exec: Exec) -> Result<Vec<Vec<usize>>> {
    let theory = simplex_power(code.q, code.l)?;
    let subsets: Vec<Vec<usize>> = combinations(code.len(), arity).collect();
    let verdicts = exec.map(&subsets, |s| {
        let idx: Vec<usize> = s.iter().map(|&j| code.generator_index(j)).collect();
        is_perfectly_distinguishable_indices(&theory, &idx).map(|o| o.is_perfect())
    });
    let mut failures = Vec::new();
    for (s, v) in subsets.into_iter().zip(verdicts) {
        if !v? {
            failures.push(s);
        }
    }
    Ok(failures)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `C(M, N) · (1 - Π_{k<N} (1 - k/q))^l`, an upper bound on the
/// probability that a random code of `M` words fails the component check.
pub fn failure_probability_bound(q: u64, l: u64, count: u64, arity: u64) -> Result<Rational> {
    if arity > q {
        return Err(Error::InvalidParameter(format!("N = {arity} exceeds q = {q}; the bound is vacuous")));
    }
    if arity < 1 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let exponent = u32::try_from(l).map_err(|_| Error::InvalidParameter(format!("l = {l} too large")))?;
    let qr = Rational::from(q as i64);
    let all_distinct: Rational = (1..arity)
        .map(|k| Rational::one() - Rational::from(k as i64) / qr.clone())
        .product();
    let per_subset = (Rational::one() - all_distinct).pow(exponent);
    Ok(Rational::from_bigints(binomial(count, arity), BigInt::one()) * per_subset)
}

/// Explicit parameters of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub q: usize,
    pub l: usize,
    #[serde(rename = "M")]
    pub codewords: usize,
    #[serde(rename = "N")]
    pub arity: usize,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    #[serde(flatten)]
    pub params: SearchParams,
    pub failures: u64,
    pub empirical_failure: f64,
    pub bound: Rational,
    pub bound_f64: f64,
    /// Binomial standard error at success rate `min(bound, 1)`.
    pub sigma: f64,
    pub within_bound: bool,
}

/// Largest `C(M, N) · l` a single trial may cost.
const TRIAL_WORK_LIMIT: u64 = 50_000_000;

/// Samples `trials` codes on independent streams and counts those failing
/// the component check.
pub fn randomized_search(params: SearchParams, exec: Exec) -> Result<SearchReport> {
    let SearchParams { q, l, codewords, arity, trials, seed } = params;
    if arity < 2 {
        return Err(Error::InvalidParameter("N must be at least 2".into()));
    }
    if q < arity {
        return Err(Error::InvalidParameter(format!("q = {q} < N = {arity}: no component can discriminate")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    check_code_size(q, l, codewords)?;
    let work = binomial(codewords as u64, arity as u64) * BigInt::from(l.max(1));
    if work > BigInt::from(TRIAL_WORK_LIMIT) {
        return Err(Error::InvalidParameter(format!(
            "a trial would check {work} subset components; supply smaller explicit q, l, M"
        )));
    }
    let bound = failure_probability_bound(q as u64, l as u64, codewords as u64, arity as u64)?;
    let outcomes = exec.map_range(trials as usize, |t| {
        sample_random_code_stream(q, l, codewords, seed, t as u64)
            .map(|code| !verify_nwise_by_components(&code, arity))
    });
    let mut failures = 0u64;
    for o in outcomes {
        failures += o? as u64;
    }
    let empirical = failures as f64 / trials as f64;
    let bound_f64 = bound.to_f64();
    let p = bound_f64.clamp(0.0, 1.0);
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    Ok(SearchReport {
        params,
        failures,
        empirical_failure: empirical,
        bound,
        bound_f64,
        sigma,
        within_bound: empirical <= bound_f64 + 3.0 * sigma,
    })
}

/// [`randomized_search`] at the parameters [`probabilistic_params`] picks
/// for `(N, m)` with `M = 2^m`.
pub fn randomized_search_for(arity: u64, m: u64, trials: u64, seed: u64, exec: Exec) -> Result<SearchReport> {
    let (q, l, _) = probabilistic_params(arity, m)?;
    if m > 20 {
        return Err(Error::InvalidParameter(format!("2^{m} codewords is beyond desk scale")));
    }
    randomized_search(
        SearchParams {
            q: q as usize,
            l: l as usize,
            codewords: 1 << m,
            arity: arity as usize,
            trials,
            seed,
        },
        exec,
    )
}

/// One line of the `random-construction` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionRow {
    #[serde(rename = "N")]
    pub n: usize,
    /// `log2 M`.
    pub m: f64,
    pub q: usize,
    pub l: usize,
    pub dim: u64,
    pub kappa_lower_bound: f64,
    pub bound: f64,
    pub empirical_failure: f64,
    pub trials: u64,
    pub seed: u64,
}

impl ConstructionRow {
    pub const CSV_HEADER: &'static str =
        "N,m,q,l,dim,kappa_lower_bound,bound,empirical_failure,trials,seed";

    pub fn from_report(r: &SearchReport) -> Self {
        let p = r.params;
        let dim = (p.l * p.q.saturating_sub(1) + 1) as u64;
        let m = (p.codewords as f64).log2();
        ConstructionRow {
            n: p.arity,
            m,
            q: p.q,
            l: p.l,
            dim,
            kappa_lower_bound: if dim > 1 { m / (dim as f64).log2() } else { f64::INFINITY },
            bound: r.bound_f64,
            empirical_failure: r.empirical_failure,
            trials: p.trials,
            seed: p.seed,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            sig12(self.m),
            self.q,
            self.l,
            self.dim,
            sig12(self.kappa_lower_bound),
            sig12(self.bound),
            sig12(self.empirical_failure),
            self.trials,
            self.seed
        )
    }
}

/// Whether every pair of `points` in `R^n` admits two parallel supporting
/// hyperplanes of their convex hull, one through each point.
///
/// Points are lifted to `(1, x)`; the pair test is then perfect
/// distinguishability in the resulting theory. A point that is not a
/// vertex of the hull fails immediately.
pub fn danzer_grunbaum_check(points: &[Vec<Rational>]) -> Result<bool> {
    let Some(first) = points.first() else {
        return Ok(true);
    };
    let n = first.len();
    for (i, p) in points.iter().enumerate() {
        crate::error::check_dim(n, p.len())?;
        if let Some(j) = points[..i].iter().position(|x| x == p) {
            return Err(Error::DuplicateStates(j, i));
        }
    }
    if points.len() == 1 {
        return Ok(true);
    }
    let lifted: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| std::iter::once(Rational::one()).chain(p.iter().cloned()).collect())
        .collect();
    let mut unit = vec![Rational::zero(); n + 1];
    unit[0] = Rational::one();
    let theory = Theory::new("point-set", unit, lifted)?;
    let (reduced, kept) = theory.reduce_to_pure_states_indexed()?;
    if kept.len() < points.len() {
        return Ok(false);
    }
    for pair in combinations(reduced.len(), 2) {
        if !is_perfectly_distinguishable_indices(&reduced, &pair)?.is_perfect() {
            return Ok(false);
        }
    }
    Ok(true)
}
