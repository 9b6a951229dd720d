//! N-distinguishability hypergraphs over pure states and the search for
//! large N-complete cliques in them.
//!
//! Nodes are generator indices of a theory reduced to its pure states; a
//! hyperedge is an N-subset that is perfectly distinguishable. A clique is a
//! node set all of whose N-subsets are hyperedges, i.e. an N-wise mutually
//! distinguishable set of states.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discrimination::{perfect_unchecked, Verdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gpt::{linearly_independent, AnyTheory, Theory};
use crate::lp::Scalar;

/// Default cap on node count for [`exact_max_clique`].
pub const DEFAULT_NODE_BUDGET: usize = 24;

/// Environment variable naming the on-disk hypergraph cache directory.
pub const CACHE_DIR_ENV: &str = "GPTCAP_CACHE_DIR";

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        k,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let (n, k) = (self.n, self.k);
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// The N-distinguishability hypergraph; serializes as
/// `{ "N": int, "num_nodes": int, "edges": [[int, ...], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "HypergraphFile", into = "HypergraphFile")]
pub struct Hypergraph {
    n_arity: usize,
    num_nodes: usize,
    edges: Vec<Vec<usize>>,
    edge_set: HashSet<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    #[serde(rename = "N")]
    n: usize,
    num_nodes: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphFile> for Hypergraph {
    type Error = Error;
    fn try_from(f: HypergraphFile) -> Result<Self> {
        Hypergraph::new(f.n, f.num_nodes, f.edges)
    }
}

impl From<Hypergraph> for HypergraphFile {
    fn from(h: Hypergraph) -> Self {
        HypergraphFile {
            n: h.n_arity,
            num_nodes: h.num_nodes,
            edges: h.edges,
        }
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n_arity == other.n_arity && self.num_nodes == other.num_nodes && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Validates and canonicalizes: every edge is sorted, has exactly `n`
    /// distinct in-range nodes, and the edge list is sorted and deduplicated.
    pub fn new(n: usize, num_nodes: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("hyperedge arity N = {n} < 2")));
        }
        let mut edges: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        for e in &edges {
            if e.len() != n || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "hyperedge {e:?} does not have {n} distinct nodes"
                )));
            }
            if e.last().is_some_and(|&v| v >= num_nodes) {
                return Err(Error::InvalidParameter(format!(
                    "hyperedge {e:?} references a node >= {num_nodes}"
                )));
            }
        }
        edges.sort();
        edges.dedup();
        let edge_set = edges.iter().cloned().collect();
        Ok(Hypergraph {
            n_arity: n,
            num_nodes,
            edges,
            edge_set,
        })
    }

    pub fn arity(&self) -> usize {
        self.n_arity
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `set` must be sorted.
    pub fn contains(&self, set: &[usize]) -> bool {
        self.edge_set.contains(set)
    }

    pub fn with_extra_edges(&self, extra: Vec<Vec<usize>>) -> Result<Self> {
        let mut e = self.edges.clone();
        e.extend(extra);
        Hypergraph::new(self.n_arity, self.num_nodes, e)
    }

    /// `a` and `b` appear together in some hyperedge.
    fn co_occurrence(&self) -> Vec<Vec<bool>> {
        let mut co = vec![vec![false; self.num_nodes]; self.num_nodes];
        for e in &self.edges {
            for &a in e {
                for &b in e {
                    co[a][b] = a != b;
                }
            }
        }
        co
    }
}

fn verdict_to_bool(v: Verdict, what: &[usize]) -> Result<bool> {
    match v {
        Verdict::Perfect => Ok(true),
        Verdict::NotPerfect => Ok(false),
        Verdict::Indeterminate => Err(Error::Indeterminate(format!("subset {what:?}"))),
    }
}

fn subset_distinguishable<S: Scalar>(theory: &Theory<S>, subset: &[usize]) -> Result<bool> {
    let states: Vec<Vec<S>> = subset.iter().map(|&i| theory.generator(i).to_vec()).collect();
    verdict_to_bool(perfect_unchecked(theory, &states)?.verdict, subset)
}

fn check_reduced<S: Scalar>(theory: &Theory<S>) -> Result<()> {
    if theory.reduce_to_pure_states()?.len() != theory.len() {
        return Err(Error::InvalidParameter(
            "theory must be reduced to its pure states first".into(),
        ));
    }
    Ok(())
}

fn check_arity<S: Scalar>(theory: &Theory<S>, n: usize) -> Result<()> {
    if n < 2 || n > theory.len() {
        return Err(Error::InvalidParameter(format!(
            "N = {n} outside 2..={}",
            theory.len()
        )));
    }
    Ok(())
}

/// Builds the N-distinguishability hypergraph of a reduced theory.
///
/// The pairwise graph is computed first; for `N > 2` only N-subsets that
/// are cliques of that graph and linearly independent are handed to the LP.
pub fn build_hypergraph<S: Scalar>(theory: &Theory<S>, n: usize, exec: Exec) -> Result<Hypergraph> {
    check_arity(theory, n)?;
    check_reduced(theory)?;
    let v = theory.len();
    let pairs: Vec<Vec<usize>> = combinations(v, 2).collect();
    let results = exec.map(&pairs, |p| subset_distinguishable(theory, p));
    let mut adj = vec![vec![false; v]; v];
    let mut pair_edges = Vec::new();
    for (p, r) in pairs.into_iter().zip(results) {
        if r? {
            adj[p[0]][p[1]] = true;
            adj[p[1]][p[0]] = true;
            pair_edges.push(p);
        }
    }
    if n == 2 {
        return Hypergraph::new(2, v, pair_edges);
    }
    let mut candidates = Vec::new();
    let mut stack = Vec::with_capacity(n);
    graph_cliques(&adj, n, 0, &mut stack, &mut candidates);
    let tol = theory.tol();
    candidates.retain(|c| {
        let states: Vec<Vec<S>> = c.iter().map(|&i| theory.generator(i).to_vec()).collect();
        linearly_independent(&states, tol)
    });
    let results = exec.map(&candidates, |c| subset_distinguishable(theory, c));
    let mut edges = Vec::new();
    for (c, r) in candidates.into_iter().zip(results) {
        if r? {
            edges.push(c);
        }
    }
    Hypergraph::new(n, v, edges)
}

fn graph_cliques(
    adj: &[Vec<bool>],
    k: usize,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == k {
        out.push(stack.clone());
        return;
    }
    for v in start..adj.len() {
        if stack.iter().all(|&u| adj[u][v]) {
            stack.push(v);
            graph_cliques(adj, k, v + 1, stack, out);
            stack.pop();
        }
    }
}

/// Reference construction: one LP per N-subset, no pruning.
pub fn build_hypergraph_unpruned<S: Scalar>(
    theory: &Theory<S>,
    n: usize,
    exec: Exec,
) -> Result<Hypergraph> {
    check_arity(theory, n)?;
    let subsets: Vec<Vec<usize>> = combinations(theory.len(), n).collect();
    let results = exec.map(&subsets, |s| subset_distinguishable(theory, s));
    let mut edges = Vec::new();
    for (s, r) in subsets.into_iter().zip(results) {
        if r? {
            edges.push(s);
        }
    }
    Hypergraph::new(n, theory.len(), edges)
}

pub fn build_hypergraph_any(theory: &AnyTheory, n: usize, exec: Exec) -> Result<Hypergraph> {
    match theory {
        AnyTheory::Exact(t) => build_hypergraph(t, n, exec),
        AnyTheory::Float(t) => build_hypergraph(t, n, exec),
    }
}

/// On-disk store of built hypergraphs keyed by theory content hash and N.
#[derive(Debug, Clone)]
pub struct HypergraphCache {
    dir: PathBuf,
}

impl HypergraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        HypergraphCache { dir: dir.into() }
    }

    /// Cache rooted at `$GPTCAP_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(|d| HypergraphCache::new(PathBuf::from(d)))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, theory: &AnyTheory, n: usize) -> PathBuf {
        self.dir.join(format!("{}-N{n}.json", theory.content_hash()))
    }

    pub fn load(&self, theory: &AnyTheory, n: usize) -> Option<Hypergraph> {
        let text = std::fs::read_to_string(self.path(theory, n)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, theory: &AnyTheory, n: usize, h: &Hypergraph) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path(theory, n);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string(h)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn get_or_build(&self, theory: &AnyTheory, n: usize, exec: Exec) -> Result<Hypergraph> {
        if let Some(h) = self.load(theory, n) {
            return Ok(h);
        }
        let h = build_hypergraph_any(theory, n, exec)?;
        self.store(theory, n, &h)?;
        Ok(h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub members: Vec<usize>,
    /// Set when the search degenerates (no hyperedges at all).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Clique {
    fn empty() -> Self {
        Clique {
            members: Vec::new(),
            note: Some("no hyperedges: no N-complete set of size >= N exists".into()),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Every (N-1)-subset of `clique` together with `node` is a hyperedge.
pub fn is_fully_connected(node: usize, clique: &[usize], h: &Hypergraph) -> Result<bool> {
    let k = h.arity() - 1;
    if clique.len() < k {
        return Err(Error::InvalidParameter(format!(
            "clique of size {} is smaller than N - 1 = {k}",
            clique.len()
        )));
    }
    if clique.contains(&node) {
        return Err(Error::InvalidParameter(format!("node {node} already in clique")));
    }
    Ok(fully_connected(node, clique, h))
}

fn fully_connected(node: usize, clique: &[usize], h: &Hypergraph) -> bool {
    let k = h.arity() - 1;
    combinations(clique.len(), k).all(|idx| {
        let mut e: Vec<usize> = idx.iter().map(|&i| clique[i]).collect();
        e.push(node);
        e.sort_unstable();
        h.contains(&e)
    })
}

/// Every N-subset of `members` is a hyperedge.
pub fn is_n_complete(members: &[usize], h: &Hypergraph) -> bool {
    let mut m = members.to_vec();
    m.sort_unstable();
    combinations(m.len(), h.arity()).all(|idx| {
        let e: Vec<usize> = idx.iter().map(|&i| m[i]).collect();
        h.contains(&e)
    })
}

fn grow_from_seed(seed: &[usize], h: &Hypergraph) -> Vec<usize> {
    let mut q = seed.to_vec();
    for v in 0..h.num_nodes() {
        if !q.contains(&v) && fully_connected(v, &q, h) {
            q.push(v);
        }
    }
    q.sort_unstable();
    q
}

fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// Greedy expansion from every hyperedge; returns the largest result (ties
/// go to the lexicographically smallest member set). Always maximal and
/// N-complete, not necessarily maximum.
pub fn greedy_max_clique(h: &Hypergraph, exec: Exec) -> Clique {
    if h.edges().is_empty() {
        return Clique::empty();
    }
    let grown = exec.map(h.edges(), |seed| grow_from_seed(seed, h));
    let best = grown
        .into_iter()
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .unwrap();
    Clique {
        members: best,
        note: None,
    }
}

/// Exhaustive branch and bound for a maximum N-complete set. Refuses
/// hypergraphs with more than `node_budget` nodes.
pub fn exact_max_clique(h: &Hypergraph, node_budget: usize) -> Result<Clique> {
    if h.num_nodes() > node_budget {
        return Err(Error::BudgetExceeded {
            nodes: h.num_nodes(),
            budget: node_budget,
        });
    }
    if h.edges().is_empty() {
        return Ok(Clique::empty());
    }
    let co = h.co_occurrence();
    let candidates: Vec<usize> = (0..h.num_nodes())
        .filter(|&v| co[v].iter().any(|&x| x))
        .collect();
    let mut best = Vec::new();
    let mut current = Vec::new();
    branch(h, &co, &mut current, &candidates, &mut best);
    debug_assert!(best.len() >= h.arity());
    Ok(Clique {
        members: best,
        note: None,
    })
}

fn branch(
    h: &Hypergraph,
    co: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: &[usize],
    best: &mut Vec<usize>,
) {
    if current.len() >= h.arity() && current.len() > best.len() {
        *best = current.clone();
    }
    let n1 = h.arity() - 1;
    for (pos, &c) in candidates.iter().enumerate() {
        if current.len() + (candidates.len() - pos) <= best.len() {
            return;
        }
        current.push(c);
        let next: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|&v| {
                if !current.iter().all(|&u| co[u][v]) {
                    return false;
                }
                if current.len() < n1 {
                    return true;
                }
                // (N-1)-subsets not containing c were checked one level up
                let others = &current[..current.len() - 1];
                combinations(others.len(), n1 - 1).all(|idx| {
                    let mut e: Vec<usize> = idx.iter().map(|&i| others[i]).collect();
                    e.push(c);
                    e.push(v);
                    e.sort_unstable();
                    h.contains(&e)
                })
            })
            .collect();
        branch(h, co, current, &next, best);
        current.pop();
    }
}

/// Re-runs the LP on up to `samples` random N-subsets of `clique`.
pub fn reverify_clique<S: Scalar>(
    theory: &Theory<S>,
    clique: &Clique,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    if clique.len() < n {
        return Ok(true);
    }
    let subsets: Vec<Vec<usize>> = combinations(clique.len(), n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = sample(&mut rng, subsets.len(), samples.min(subsets.len()));
    for i in picks.iter() {
        let s: Vec<usize> = subsets[i].iter().map(|&k| clique.members[k]).collect();
        if !subset_distinguishable(theory, &s)? {
            return Ok(false);
        }
    }
    Ok(true)
}
