//! `gptcap`: command-line front end for gpt-capacity.
//!
//! Exit codes: 0 on success, 1 when the computation itself fails (bad
//! parameters, malformed input files, solver trouble), 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gpt_capacity::capacity::{
    kappa_pairwise, probabilistic_params, randomized_search, danzer_grunbaum_check, sig12,
    verify_hypercube_memory, ConstructionRow, Kappa, SearchParams,
};
use gpt_capacity::discrimination::{
    is_perfectly_distinguishable, max_success_probability, states_at, Verdict,
};
use gpt_capacity::fixtures::{fixture, fixtures, Fixture};
use gpt_capacity::gpt::parse_rat_vec;
use gpt_capacity::hypergraph::{
    build_hypergraph_any, exact_max_clique, greedy_max_clique, Hypergraph, HypergraphCache,
    DEFAULT_NODE_BUDGET,
};
use gpt_capacity::lp::DEFAULT_FLOAT_TOL;
use gpt_capacity::theories::FamilySpec;
use gpt_capacity::{AnyTheory, Exec, Measurement, Rational, Scalar, Theory};

#[derive(Parser)]
#[command(name = "gptcap", version, about = "Distinguishability and memory capacity of polyhedral GPTs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load, validate and print a theory.
    Theory {
        #[command(flatten)]
        source: TheorySource,
        #[command(flatten)]
        numeric: Numeric,
        /// Drop generators that are not extreme.
        #[arg(long)]
        reduce: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Decide perfect distinguishability of a set of states.
    Distinguish {
        #[command(flatten)]
        source: TheorySource,
        #[command(flatten)]
        states: StateArgs,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        out: Output,
    },
    /// Optimal success probability of guessing which state was prepared.
    Psuccess {
        #[command(flatten)]
        source: TheorySource,
        #[command(flatten)]
        states: StateArgs,
        /// Comma-separated priors (default uniform).
        #[arg(long)]
        priors: Option<String>,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        out: Output,
    },
    /// Build the N-distinguishability hypergraph of a theory.
    Hypergraph {
        #[command(flatten)]
        source: TheorySource,
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Largest N-wise mutually distinguishable set.
    Maxclique {
        #[command(flatten)]
        source: TheorySource,
        /// Read a hypergraph file instead of building one.
        #[arg(long, conflicts_with_all = ["family", "theory", "fixture"])]
        hypergraph: Option<PathBuf>,
        #[arg(long = "N", value_name = "N")]
        n: Option<usize>,
        /// Node limit for the exact search.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Check all vertex pairs of the m-cube by LP and closed-form witnesses.
    VerifyHypercube {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Compression factor for N = 2, or the random-construction bound for N > 2.
    Kappa {
        #[arg(long = "N", value_name = "N", default_value_t = 2)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Monte Carlo run of the random simplex-power construction.
    RandomConstruction {
        #[arg(long = "N", value_name = "N")]
        n: usize,
        /// Derive q, l and M = 2^m from m.
        #[arg(long, conflicts_with_all = ["q", "l", "codewords"])]
        m: Option<u64>,
        #[arg(long, requires_all = ["l", "codewords"])]
        q: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Number of codewords.
        #[arg(long = "M", value_name = "M")]
        codewords: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Parallel supporting hyperplanes through every pair of points.
    DgCheck {
        /// Points as `x1,x2;y1,y2;...`.
        #[arg(long, required_unless_present = "points_file")]
        points: Option<String>,
        /// JSON file holding a list of points.
        #[arg(long, conflicts_with = "points")]
        points_file: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the bundled fixtures.
    Fixtures {
        /// Print only this fixture.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct TheorySource {
    /// Family spec (e.g. `hypercube:m=4`) or path to a theory JSON file.
    #[arg(long, conflicts_with_all = ["theory", "fixture"])]
    family: Option<String>,
    /// Path to a theory JSON file.
    #[arg(long, conflicts_with = "fixture")]
    theory: Option<PathBuf>,
    /// A bundled fixture.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args)]
struct StateArgs {
    /// Comma-separated generator indices.
    #[arg(long, conflicts_with = "vectors")]
    states: Option<String>,
    /// Explicit state vectors as `a,b,c;d,e,f`.
    #[arg(long)]
    vectors: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Exact when the theory has rational coordinates, float otherwise.
    Auto,
    Exact,
    Float,
}

#[derive(Args)]
struct Numeric {
    #[arg(long, value_enum, default_value_t = Backend::Auto)]
    backend: Backend,
    /// Tolerance of the float backend.
    #[arg(long, default_value_t = DEFAULT_FLOAT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads: 0 = all cores, 1 = sequential.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Ignore the hypergraph cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<gpt_capacity::Error> for Failure {
    fn from(e: gpt_capacity::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

/// Value rendering: exact numbers as `"p/q"` strings, floats as numbers.
trait Render: Scalar {
    fn render(&self) -> Value;
}

impl Render for Rational {
    fn render(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Render for f64 {
    fn render(&self) -> Value {
        json!(self)
    }
}

fn render_vecs<S: Render>(vs: &[Vec<S>]) -> Value {
    Value::Array(vs.iter().map(|v| Value::Array(v.iter().map(Render::render).collect())).collect())
}

fn emit(out: &Output, value: &Value) -> CliResult {
    if out.format == Format::Csv {
        return usage("this subcommand only writes JSON");
    }
    write_text(out, &format!("{}\n", serde_json::to_string_pretty(value).expect("json")))
}

fn write_text(out: &Output, text: &str) -> CliResult {
    match &out.out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

struct Loaded {
    theory: AnyTheory,
    fixture: Option<Fixture>,
}

fn load(source: &TheorySource) -> CliResult<Loaded> {
    if let Some(name) = &source.fixture {
        let f = fixture(name)?;
        return Ok(Loaded { theory: f.theory.clone(), fixture: Some(f) });
    }
    let theory = match (&source.family, &source.theory) {
        (Some(spec), None) => match spec.parse::<FamilySpec>() {
            Ok(f) => f.build()?,
            Err(e) if PathBuf::from(spec).is_file() => {
                let _ = e;
                load_file(&PathBuf::from(spec))?
            }
            Err(e) => return Err(Failure::Domain(e.to_string())),
        },
        (None, Some(path)) => load_file(path)?,
        _ => return usage("give exactly one of --family, --theory or --fixture"),
    };
    Ok(Loaded { theory, fixture: None })
}

fn load_file(path: &PathBuf) -> CliResult<AnyTheory> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
    AnyTheory::from_json_str(&text)
        .map_err(|e| Failure::Domain(format!("malformed theory file {}: {e}", path.display())))
}

/// The theory in the requested numeric mode.
fn select(theory: AnyTheory, numeric: &Numeric) -> CliResult<AnyTheory> {
    if !(numeric.tol > 0.0) {
        return usage(format!("--tol must be positive, got {}", numeric.tol));
    }
    let float = |t: Theory<f64>| -> CliResult<AnyTheory> {
        let t = Theory::with_tolerance(t.name(), t.unit().to_vec(), t.generators().to_vec(), numeric.tol)?;
        Ok(AnyTheory::Float(t))
    };
    match (numeric.backend, theory) {
        (Backend::Exact, AnyTheory::Float(t)) => usage(format!(
            "--backend exact needs rational coordinates; {} is a float theory",
            t.name()
        )),
        (Backend::Float, AnyTheory::Exact(t)) => float(t.to_float()),
        (_, AnyTheory::Float(t)) => float(t),
        (_, exact) => Ok(exact),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Failure::Usage(format!("bad {what} `{x}`"))))
        .collect()
}

fn parse_vectors(s: &str) -> CliResult<Vec<Vec<Rational>>> {
    s.split(';').map(|v| parse_list(v, "coordinate")).collect()
}

fn exact_states(loaded: &Loaded, args: &StateArgs) -> CliResult<Option<Vec<Vec<Rational>>>> {
    Ok(match (&args.vectors, &args.states, &loaded.fixture) {
        (Some(v), _, _) => Some(parse_vectors(v)?),
        (None, None, Some(f)) if !f.states.is_empty() => Some(f.states.clone()),
        _ => None,
    })
}

fn state_set<S: Scalar>(
    theory: &Theory<S>,
    args: &StateArgs,
    explicit: Option<&[Vec<Rational>]>,
    convert: impl Fn(&Rational) -> S,
) -> CliResult<Vec<Vec<S>>> {
    if let Some(vs) = explicit {
        return Ok(vs.iter().map(|v| v.iter().map(&convert).collect()).collect());
    }
    let Some(idx) = &args.states else {
        return usage("give --states or --vectors");
    };
    Ok(states_at(theory, &parse_list::<usize>(idx, "state index")?)?)
}

fn distinguish_json<S: Render>(theory: &Theory<S>, states: &[Vec<S>]) -> CliResult<Value> {
    let out = is_perfectly_distinguishable(theory, states)?;
    let n = states.len();
    let uniform = vec![S::one() / S::from_i64(n as i64); n];
    let p = max_success_probability(theory, states, &uniform)?;
    Ok(json!({
        "theory": theory.name(),
        "perfect": match out.verdict {
            Verdict::Indeterminate => Value::Null,
            v => json!(v == Verdict::Perfect),
        },
        "verdict": out.verdict,
        "p_success": p.p_success.render(),
        "witness": out.witness.map(|m| render_vecs(&m.effects)),
        "certificate": out.certificate.map(|c| Value::Array(c.iter().map(Render::render).collect())),
    }))
}

fn psuccess_json<S: Render>(theory: &Theory<S>, states: &[Vec<S>], priors: &[S]) -> CliResult<Value> {
    let r = max_success_probability(theory, states, priors)?;
    Ok(json!({
        "theory": theory.name(),
        "p_success": r.p_success.render(),
        "perfect": r.perfect,
        "measurement": render_vecs(&r.measurement.effects),
    }))
}

fn measurement_check<S: Render>(theory: &Theory<S>, effects: &[Vec<S>]) -> CliResult<bool> {
    Ok(theory.is_measurement(&Measurement::new(effects.to_vec()))?)
}

fn cmd_distinguish(source: &TheorySource, args: &StateArgs, numeric: &Numeric, out: &Output) -> CliResult {
    let loaded = load(source)?;
    let explicit = exact_states(&loaded, args)?;
    let mut value = match select(loaded.theory.clone(), numeric)? {
        AnyTheory::Exact(t) => {
            let states = state_set(&t, args, explicit.as_deref(), Rational::clone)?;
            distinguish_json(&t, &states)?
        }
        AnyTheory::Float(t) => {
            let states = state_set(&t, args, explicit.as_deref(), Rational::to_f64)?;
            distinguish_json(&t, &states)?
        }
    };
    if let (Some(f), AnyTheory::Exact(t)) = (&loaded.fixture, &loaded.theory) {
        if !f.effects.is_empty() {
            value["fixture_effects_form_measurement"] = json!(measurement_check(t, &f.effects)?);
        }
    }
    emit(out, &value)
}

fn cmd_psuccess(
    source: &TheorySource,
    args: &StateArgs,
    priors: Option<&str>,
    numeric: &Numeric,
    out: &Output,
) -> CliResult {
    let loaded = load(source)?;
    let explicit = exact_states(&loaded, args)?;
    let priors_q: Option<Vec<Rational>> = priors.map(|p| parse_list(p, "prior")).transpose()?;
    let uniform = |n: usize| vec![Rational::new(1, n as i64); n];
    let value = match select(loaded.theory, numeric)? {
        AnyTheory::Exact(t) => {
            let states = state_set(&t, args, explicit.as_deref(), Rational::clone)?;
            let pr = priors_q.unwrap_or_else(|| uniform(states.len()));
            psuccess_json(&t, &states, &pr)?
        }
        AnyTheory::Float(t) => {
            let states = state_set(&t, args, explicit.as_deref(), Rational::to_f64)?;
            let pr = priors_q.unwrap_or_else(|| uniform(states.len()));
            let pr: Vec<f64> = pr.iter().map(Rational::to_f64).collect();
            psuccess_json(&t, &states, &pr)?
        }
    };
    emit(out, &value)
}

fn build(theory: &AnyTheory, n: usize, run: &RunArgs) -> CliResult<Hypergraph> {
    let exec = Exec::from_workers(run.workers);
    let cache = if run.no_cache { None } else { HypergraphCache::from_env() };
    Ok(match cache {
        Some(c) => c.get_or_build(theory, n, exec)?,
        None => build_hypergraph_any(theory, n, exec)?,
    })
}

fn cmd_maxclique(
    source: &TheorySource,
    file: Option<&PathBuf>,
    n: Option<usize>,
    budget: usize,
    numeric: &Numeric,
    run: &RunArgs,
    out: &Output,
) -> CliResult {
    let h = match file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            let h: Hypergraph = serde_json::from_str(&text)
                .map_err(|e| Failure::Domain(format!("malformed hypergraph file {}: {e}", path.display())))?;
            if n.is_some_and(|n| n != h.arity()) {
                return usage(format!("--N disagrees with the file's N = {}", h.arity()));
            }
            h
        }
        None => {
            let Some(n) = n else { return usage("--N is required when building a hypergraph") };
            let t = select(load(source)?.theory, numeric)?;
            build(&t, n, run)?
        }
    };
    let greedy = greedy_max_clique(&h, Exec::from_workers(run.workers));
    let (exact, note) = match exact_max_clique(&h, budget) {
        Ok(c) => (Some(c), None),
        Err(e @ gpt_capacity::Error::BudgetExceeded { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let best = exact.as_ref().unwrap_or(&greedy);
    emit(
        out,
        &json!({
            "N": h.arity(),
            "num_nodes": h.num_nodes(),
            "num_edges": h.edges().len(),
            "size": best.len(),
            "members": best.members,
            "method": if exact.is_some() { "exact" } else { "greedy" },
            "greedy_size": greedy.len(),
            "note": best.note.clone().or(note),
        }),
    )
}

fn kappa_json(k: &Kappa) -> Value {
    json!({
        "d": k.dimension,
        "kappa": sig12(k.value()),
        "kappa_exact": k.exact().map(|r| r.to_string()),
    })
}

fn cmd_kappa(n: u64, m: u64, out: &Output) -> CliResult {
    if n < 2 {
        return usage("--N must be at least 2");
    }
    if m < 64 && (1u64 << m) < n {
        return Err(Failure::Domain(format!("2^{m} states cannot host N = {n}")));
    }
    if n == 2 {
        let k = kappa_pairwise(m)?;
        if out.format == Format::Csv {
            return write_text(out, &format!("N,m,d,kappa\n2,{m},{},{}\n", k.dimension, sig12(k.value())));
        }
        let mut v = kappa_json(&k);
        v["N"] = json!(2);
        v["m"] = json!(m);
        return emit(out, &v);
    }
    let (q, l, dim) = probabilistic_params(n, m)?;
    let lower = if dim >= 2 { Some(Kappa::new(m, dim)?) } else { None };
    let kl = lower.as_ref().map(|k| sig12(k.value()));
    if out.format == Format::Csv {
        return write_text(
            out,
            &format!("N,m,q,l,dim,kappa_lower_bound\n{n},{m},{q},{l},{dim},{}\n", kl.unwrap_or_default()),
        );
    }
    emit(
        out,
        &json!({ "N": n, "m": m, "q": q, "l": l, "dim": dim, "kappa_lower_bound": kl }),
    )
}

fn cmd_random(
    n: usize,
    m: Option<u64>,
    explicit: (Option<usize>, Option<usize>, Option<usize>),
    trials: u64,
    seed: u64,
    run: &RunArgs,
    out: &Output,
) -> CliResult {
    let params = match (m, explicit) {
        (Some(m), _) => {
            let (q, l, _) = probabilistic_params(n as u64, m)?;
            if m > 20 {
                return Err(Failure::Domain(format!(
                    "2^{m} codewords is beyond desk scale; pass explicit --q --l --M"
                )));
            }
            SearchParams { q: q as usize, l: l as usize, codewords: 1 << m, arity: n, trials, seed }
        }
        (None, (Some(q), Some(l), Some(codewords))) => SearchParams { q, l, codewords, arity: n, trials, seed },
        _ => return usage("give either --m or all of --q, --l, --M"),
    };
    let rep = randomized_search(params, Exec::from_workers(run.workers))?;
    let row = ConstructionRow::from_report(&rep);
    let full = json!({
        "N": n,
        "q": params.q,
        "l": params.l,
        "M": params.codewords,
        "dim": row.dim,
        "trials": trials,
        "seed": seed,
        "failures": rep.failures,
        "empirical_failure": sig12(rep.empirical_failure),
        "bound": rep.bound.to_string(),
        "bound_approx": sig12(rep.bound_f64),
        "sigma": sig12(rep.sigma),
        "within_bound": rep.within_bound,
        "kappa_lower_bound": sig12(row.kappa_lower_bound),
    });
    match out.format {
        Format::Json => emit(out, &full),
        Format::Csv => {
            write_text(out, &format!("{}\n{}\n", ConstructionRow::CSV_HEADER, row.to_csv()))?;
            if let Some(p) = &out.out {
                let side = p.with_extension("json");
                fs::write(side, format!("{}\n", serde_json::to_string_pretty(&full).expect("json")))?;
            }
            Ok(())
        }
    }
}

fn cmd_dg(points: Option<&str>, file: Option<&PathBuf>, out: &Output) -> CliResult {
    let pts: Vec<Vec<Rational>> = match (points, file) {
        (Some(p), _) => parse_vectors(p)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let raw: Vec<Vec<Value>> = serde_json::from_str(&text)
                .map_err(|e| Failure::Domain(format!("malformed point file: {e}")))?;
            raw.iter().map(|r| parse_rat_vec(r)).collect::<Result<_, _>>()?
        }
        (None, None) => return usage("give --points or --points-file"),
    };
    let ok = danzer_grunbaum_check(&pts)?;
    emit(out, &json!({ "points": pts.len(), "property": ok }))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Theory { source, numeric, reduce, out } => {
            let t = select(load(&source)?.theory, &numeric)?;
            let t = match (reduce, t) {
                (false, t) => t,
                (true, AnyTheory::Exact(t)) => AnyTheory::Exact(t.reduce_to_pure_states()?),
                (true, AnyTheory::Float(t)) => AnyTheory::Float(t.reduce_to_pure_states()?),
            };
            let value = json!({
                "theory": serde_json::to_value(t.to_json()).expect("json"),
                "validation": serde_json::to_value(t.validate()).expect("json"),
                "mode": serde_json::to_value(t.numeric_mode()).expect("json"),
                "content_hash": t.content_hash(),
            });
            emit(&out, &value)
        }
        Command::Distinguish { source, states, numeric, out } => cmd_distinguish(&source, &states, &numeric, &out),
        Command::Psuccess { source, states, priors, numeric, out } => {
            cmd_psuccess(&source, &states, priors.as_deref(), &numeric, &out)
        }
        Command::Hypergraph { source, n, numeric, run, out } => {
            let t = select(load(&source)?.theory, &numeric)?;
            let h = build(&t, n, &run)?;
            emit(&out, &serde_json::to_value(&h).expect("json"))
        }
        Command::Maxclique { source, hypergraph, n, budget, numeric, run, out } => {
            cmd_maxclique(&source, hypergraph.as_ref(), n, budget, &numeric, &run, &out)
        }
        Command::VerifyHypercube { m, run, out } => {
            let rep = verify_hypercube_memory(m, Exec::from_workers(run.workers))?;
            let verified = rep.verified;
            if out.format == Format::Csv {
                write_text(
                    &out,
                    &format!(
                        "N,m,dimension,kappa,achieved_set_size,pairs_checked,verified\n{},{},{},{},{},{},{}\n",
                        rep.n, rep.m, rep.dimension, sig12(rep.kappa), rep.achieved_set_size, rep.pairs_checked, rep.verified
                    ),
                )?;
            } else {
                emit(&out, &serde_json::to_value(&rep).expect("json"))?;
            }
            if verified {
                Ok(())
            } else {
                Err(Failure::Domain(format!("hypercube memory for m = {m} did not verify")))
            }
        }
        Command::Kappa { n, m, out } => cmd_kappa(n, m, &out),
        Command::RandomConstruction { n, m, q, l, codewords, trials, seed, run, out } => {
            cmd_random(n, m, (q, l, codewords), trials, seed, &run, &out)
        }
        Command::DgCheck { points, points_file, out } => cmd_dg(points.as_deref(), points_file.as_ref(), &out),
        Command::Fixtures { name, out } => {
            let value = match name {
                Some(n) => fixture(&n)?.to_json(),
                None => Value::Array(fixtures()?.iter().map(Fixture::to_json).collect()),
            };
            emit(&out, &value)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
