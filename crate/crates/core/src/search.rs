//! Exhaustive search for k-separators of a given length, and the exact
//! values of `F(k)` it yields for small `k`.
//!
//! The search fills positions left to right. A prefix is abandoned as soon
//! as two of its complete `k`-selectors share a pattern, or (optionally) as
//! soon as two placed values sit closer than `(n−k+2) − |i−j|` positions
//! apart, which no k-separator allows. Only selectors ending at the newest
//! position are keyed on each step; the keys go into a per-worker set and
//! are journalled so backtracking can take them out again.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checkerboard::construct_verified;
use crate::error::{Error, Result};
use crate::index::{PatternIndex, Probe};
use crate::metrics::bounds_for;
use crate::perm::{Permutation, FACTORIALS, RANK_MAX_K};
use crate::separator::{is_k_separator, next_combination};

/// Largest length searched without an explicit node budget.
pub const N_FEASIBLE: usize = 12;

/// Largest `k` whose patterns are tracked in a dense bitset (`k!` bits).
const DENSE_MAX_K: usize = 11;

/// Nodes a worker counts locally before publishing them.
const NODE_BATCH: u64 = 1 << 12;

pub const DEFAULT_RESULTS_PATH: &str = "results/epsilon.csv";

pub const RESULTS_HEADER: &str = "k,f_exact,epsilon,witness,nodes,seconds";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    pub n: usize,
    /// Reject prefixes with two values too close together.
    pub prune_distance: bool,
    /// Only try first entries up to `⌈n/2⌉`.
    pub symmetry_break: bool,
    /// Return the lexicographically smallest witness whatever the worker count.
    pub deterministic: bool,
    pub worker_count: usize,
    /// Cap on explored prefixes; required above [`N_FEASIBLE`].
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    /// All pruning on, deterministic, one worker, no budget.
    pub fn new(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            prune_distance: true,
            symmetry_break: true,
            deterministic: true,
            worker_count: 1,
            node_budget: None,
        }
    }

    pub fn workers(mut self, w: usize) -> Self {
        self.worker_count = w;
        self
    }

    pub fn budget(mut self, b: Option<u64>) -> Self {
        self.node_budget = b;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.n {
            return Err(Error::KOutOfRange { k: self.k, n: self.n });
        }
        if self.worker_count == 0 {
            return Err(Error::NonPositive);
        }
        if self.k > RANK_MAX_K {
            return Err(Error::LengthTooLargeForRank(self.k));
        }
        if self.n > 63 {
            return Err(Error::InstanceTooLarge { n: self.n, limit: 63 });
        }
        if self.n > N_FEASIBLE && self.node_budget.is_none() {
            return Err(Error::InfeasibleSize {
                n: self.n,
                limit: N_FEASIBLE,
            });
        }
        Ok(())
    }
}

/// Result of a completed search: a verified witness or a certificate of
/// absence (the whole reduced space was exhausted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Permutation>,
    pub nodes: u64,
}

/// Set of pattern ranks seen in the current prefix.
enum Seen {
    Dense(Vec<u64>),
    Sparse(PatternIndex),
}

impl Seen {
    fn new(k: usize) -> Self {
        if k <= DENSE_MAX_K {
            Seen::Dense(vec![0; (FACTORIALS[k] as usize).div_ceil(64)])
        } else {
            Seen::Sparse(PatternIndex::with_capacity(1 << 12))
        }
    }

    /// Inserts `key`; false if it was already there.
    #[inline]
    fn insert(&mut self, key: u64) -> bool {
        match self {
            Seen::Dense(bits) => {
                let (w, b) = ((key / 64) as usize, key % 64);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                fresh
            }
            Seen::Sparse(idx) => idx.insert_or_probe(key, 0) == Probe::Inserted,
        }
    }

    #[inline]
    fn remove(&mut self, key: u64) {
        match self {
            Seen::Dense(bits) => bits[(key / 64) as usize] &= !(1 << (key % 64)),
            Seen::Sparse(idx) => {
                idx.remove(key);
            }
        }
    }
}

/// Shared between workers.
struct Control {
    budget: Option<u64>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    /// First-wins mode: someone found a witness.
    found: AtomicBool,
    /// Deterministic mode: smallest task index holding a witness.
    best_task: AtomicUsize,
    deterministic: bool,
}

impl Control {
    fn should_stop(&self, task: usize) -> bool {
        self.exhausted.load(Ordering::Relaxed)
            || if self.deterministic {
                self.best_task.load(Ordering::Relaxed) < task
            } else {
                self.found.load(Ordering::Relaxed)
            }
    }
}

struct Worker {
    n: usize,
    k: usize,
    prune_distance: bool,
    values: Vec<u32>,
    used: u64,
    seen: Seen,
    journal: Vec<u64>,
    marks: Vec<usize>,
    combo: Vec<usize>,
    word: Vec<u32>,
    local_nodes: u64,
    total_nodes: u64,
    batch: u64,
}

impl Worker {
    fn new(cfg: &SearchConfig) -> Self {
        Self {
            n: cfg.n,
            k: cfg.k,
            prune_distance: cfg.prune_distance,
            values: Vec::with_capacity(cfg.n),
            used: 0,
            seen: Seen::new(cfg.k),
            journal: Vec::new(),
            marks: Vec::with_capacity(cfg.n),
            combo: Vec::with_capacity(cfg.k),
            word: vec![0; cfg.k],
            local_nodes: 0,
            total_nodes: 0,
            // Small budgets need prompt publication to be honoured closely.
            batch: cfg
                .node_budget
                .map_or(NODE_BATCH, |b| (b / (4 * cfg.worker_count as u64)).clamp(1, NODE_BATCH)),
        }
    }

    /// Lehmer rank of `word` (distinct values below 64, not necessarily
    /// standardized).
    #[inline]
    fn rank(word: &[u32]) -> u64 {
        let k = word.len();
        let mut later: u64 = 0;
        let mut rank = 0;
        for j in (0..k).rev() {
            let v = word[j];
            rank += (later & ((1u64 << v) - 1)).count_ones() as u64 * FACTORIALS[k - 1 - j];
            later |= 1 << v;
        }
        rank
    }

    fn distance_ok(&self, v: u32) -> bool {
        let p = self.values.len();
        let base = self.n as i64 - self.k as i64 + 2;
        self.values
            .iter()
            .enumerate()
            .all(|(q, &u)| (p - q) as i64 >= base - u.abs_diff(v) as i64)
    }

    /// Appends `v` if the longer prefix is still viable.
    fn push(&mut self, v: u32) -> bool {
        if self.prune_distance && !self.distance_ok(v) {
            return false;
        }
        let start = self.journal.len();
        let p = self.values.len();
        if p + 1 >= self.k {
            let k = self.k;
            self.combo.clear();
            self.combo.extend(0..k - 1);
            self.word[k - 1] = v;
            loop {
                for (slot, &c) in self.combo.iter().enumerate() {
                    self.word[slot] = self.values[c];
                }
                let key = Self::rank(&self.word);
                if !self.seen.insert(key) {
                    for &key in &self.journal[start..] {
                        self.seen.remove(key);
                    }
                    self.journal.truncate(start);
                    return false;
                }
                self.journal.push(key);
                if k == 1 || !next_combination(&mut self.combo, p) {
                    break;
                }
            }
        }
        self.values.push(v);
        self.used |= 1 << v;
        self.marks.push(start);
        true
    }

    fn pop(&mut self) {
        let start = self.marks.pop().expect("pop on empty prefix");
        for &key in &self.journal[start..] {
            self.seen.remove(key);
        }
        self.journal.truncate(start);
        let v = self.values.pop().expect("pop on empty prefix");
        self.used &= !(1 << v);
    }

    fn reset(&mut self) {
        while !self.values.is_empty() {
            self.pop();
        }
    }

    fn count_node(&mut self, ctl: &Control) {
        self.local_nodes += 1;
        self.total_nodes += 1;
        if self.local_nodes == self.batch {
            let total = self.flush(ctl);
            if ctl.budget.is_some_and(|b| total > b) {
                ctl.exhausted.store(true, Ordering::Relaxed);
            }
        }
    }

    fn flush(&mut self, ctl: &Control) -> u64 {
        let total = ctl.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        total
    }

    /// Depth-first completion of the current prefix in lexicographic order.
    /// `Err(())` means the walk was interrupted.
    fn dfs(&mut self, ctl: &Control, task: usize) -> std::result::Result<bool, ()> {
        if self.values.len() == self.n {
            return Ok(true);
        }
        for v in 1..=self.n as u32 {
            if self.used & (1 << v) != 0 || !self.push(v) {
                continue;
            }
            self.count_node(ctl);
            if self.local_nodes == 0 && ctl.should_stop(task) {
                self.pop();
                return Err(());
            }
            match self.dfs(ctl, task) {
                Ok(true) => return Ok(true),
                Ok(false) => self.pop(),
                Err(()) => {
                    self.pop();
                    return Err(());
                }
            }
        }
        Ok(false)
    }
}

/// Prefixes of length (up to) two, in lexicographic order.
fn tasks(cfg: &SearchConfig) -> Vec<Vec<u32>> {
    let n = cfg.n as u32;
    let first_max = if cfg.symmetry_break { n.div_ceil(2) } else { n };
    let mut out = Vec::new();
    for a in 1..=first_max {
        if n == 1 {
            out.push(vec![a]);
        }
        for b in (1..=n).filter(|&b| b != a) {
            out.push(vec![a, b]);
        }
    }
    out
}

/// Searches `S_n` for a k-separator.
///
/// Returns the witness (re-verified) or `None` once the symmetry-reduced
/// space is exhausted. In deterministic mode the witness is the
/// lexicographically smallest k-separator of length `n`, unless the budget
/// ran out before every smaller subtree was settled.
pub fn exists_separator(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let tasks = tasks(cfg);
    let ctl = Control {
        budget: cfg.node_budget,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        found: AtomicBool::new(false),
        best_task: AtomicUsize::new(usize::MAX),
        deterministic: cfg.deterministic,
    };
    let next = AtomicUsize::new(0);
    let workers = cfg.worker_count.min(tasks.len()).max(1);

    // Per worker: witnesses tagged with their task index, and nodes explored.
    type WorkerResult = (Vec<(usize, Vec<u32>)>, u64);
    let results: Vec<WorkerResult> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut w = Worker::new(cfg);
                    let mut found = Vec::new();
                    loop {
                        let t = next.fetch_add(1, Ordering::Relaxed);
                        if t >= tasks.len() || ctl.should_stop(t) {
                            break;
                        }
                        w.reset();
                        if !tasks[t].iter().all(|&v| {
                            let ok = w.push(v);
                            if ok {
                                w.count_node(&ctl);
                            }
                            ok
                        }) {
                            continue;
                        }
                        if let Ok(true) = w.dfs(&ctl, t) {
                            found.push((t, w.values.clone()));
                            ctl.found.store(true, Ordering::Relaxed);
                            ctl.best_task.fetch_min(t, Ordering::Relaxed);
                        }
                    }
                    w.flush(&ctl);
                    (found, w.total_nodes)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });

    let nodes = results.iter().map(|r| r.1).sum();
    let witness = results.into_iter().flat_map(|r| r.0).min_by_key(|(t, _)| *t);
    match witness {
        Some((_, values)) => {
            let sigma = Permutation::from_one_line(&values)?;
            if !is_k_separator(&sigma, cfg.k)?.is_separator {
                return Err(Error::ConstructionInvalid(format!(
                    "search returned {sigma}, which is not a {}-separator",
                    cfg.k
                )));
            }
            Ok(SearchOutcome {
                witness: Some(sigma),
                nodes,
            })
        }
        None if ctl.exhausted.load(Ordering::Relaxed) => Err(Error::BudgetExhausted {
            budget: cfg.node_budget.unwrap_or(0),
            explored: nodes,
        }),
        None => Ok(SearchOutcome { witness: None, nodes }),
    }
}

/// One row of the `ε_k` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonEntry {
    pub k: usize,
    pub f_exact: usize,
    /// `F(k) − (k + ⌊√(2k−3)⌋)`.
    pub epsilon: i64,
    /// A k-separator of length `F(k)`.
    pub witness: Permutation,
    pub nodes: u64,
    pub seconds: f64,
    /// Audit mode: whether length `upper + 1` was certified impossible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub audit_absent: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ExactOptions {
    pub workers: usize,
    pub audit: bool,
    pub node_budget: Option<u64>,
    pub deterministic: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            audit: false,
            node_budget: None,
            deterministic: true,
        }
    }
}

/// `F(k)` by searching length `k + ⌊√(2k−3)⌋` only: a hit there settles
/// `ε = 0`; otherwise the checkerboard construction one shorter settles
/// `ε = −1`. Audit mode also searches one longer and requires absence.
pub fn exact_f(k: usize, opts: &ExactOptions) -> Result<EpsilonEntry> {
    let start = Instant::now();
    let bounds = bounds_for(k)?;
    let config = |n: usize| SearchConfig {
        deterministic: opts.deterministic,
        worker_count: opts.workers,
        node_budget: opts.node_budget,
        ..SearchConfig::new(k, n)
    };
    let mut nodes = 0;
    let audit_absent = if opts.audit {
        let beyond = exists_separator(&config(bounds.upper + 1))?;
        nodes += beyond.nodes;
        if let Some(w) = beyond.witness {
            return Err(Error::BoundViolated(format!(
                "{w} is a {k}-separator of length {} > {}",
                bounds.upper + 1,
                bounds.upper
            )));
        }
        Some(true)
    } else {
        None
    };
    let at_upper = exists_separator(&config(bounds.upper))?;
    nodes += at_upper.nodes;
    let (f, witness) = match at_upper.witness {
        Some(w) => (bounds.upper, w),
        None => (bounds.lower, construct_verified(k)?),
    };
    let epsilon = f as i64 - bounds.upper as i64;
    if !(-1..=0).contains(&epsilon) {
        return Err(Error::BoundViolated(format!("epsilon_{k} = {epsilon}")));
    }
    Ok(EpsilonEntry {
        k,
        f_exact: f,
        epsilon,
        witness,
        nodes,
        seconds: start.elapsed().as_secs_f64(),
        audit_absent,
    })
}

pub fn epsilon_table(k_from: usize, k_to: usize, opts: &ExactOptions) -> Result<Vec<EpsilonEntry>> {
    (k_from..=k_to).map(|k| exact_f(k, opts)).collect()
}

impl EpsilonEntry {
    /// The CSV row matching [`RESULTS_HEADER`].
    pub fn csv_record(&self) -> [String; 6] {
        [
            self.k.to_string(),
            self.f_exact.to_string(),
            self.epsilon.to_string(),
            self.witness.to_text(),
            self.nodes.to_string(),
            format!("{:.3}", self.seconds),
        ]
    }
}

/// Appends entries to a results CSV, writing the header if the file is new
/// or empty.
pub fn append_results(path: &Path, entries: &[EpsilonEntry]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    if fresh {
        out.write_record(RESULTS_HEADER.split(','))?;
    }
    for e in entries {
        out.write_record(e.csv_record())?;
    }
    let bytes = out.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    file.write_all(&bytes)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separator::next_permutation;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn naive_exists(n: usize, k: usize) -> Option<Permutation> {
        let mut v: Vec<u32> = (1..=n as u32).collect();
        loop {
            let s = Permutation::from_one_line(&v).unwrap();
            if is_k_separator(&s, k).unwrap().is_separator {
                return Some(s);
            }
            if !next_permutation(&mut v) {
                return None;
            }
        }
    }

    #[test]
    fn rank_matches_pattern_rank() {
        let word = [7u32, 2, 9, 4];
        let std = Permutation::standardize(&word).unwrap();
        assert_eq!(Worker::rank(&word), crate::perm::pattern_rank(&std).unwrap());
    }

    #[test]
    fn search_examples() {
        let found = exists_separator(&SearchConfig::new(3, 4)).unwrap();
        assert_eq!(found.witness, Some(p("2413")));
        assert_eq!(exists_separator(&SearchConfig::new(3, 5)).unwrap().witness, None);
        assert_eq!(exists_separator(&SearchConfig::new(2, 2)).unwrap().witness, Some(p("12")));
        assert_eq!(exists_separator(&SearchConfig::new(1, 1)).unwrap().witness, Some(p("1")));
        assert_eq!(exists_separator(&SearchConfig::new(1, 2)).unwrap().witness, None);
    }

    #[test]
    fn config_errors() {
        assert_eq!(
            exists_separator(&SearchConfig::new(4, 13)),
            Err(Error::InfeasibleSize { n: 13, limit: 12 })
        );
        assert_eq!(
            exists_separator(&SearchConfig::new(5, 4)),
            Err(Error::KOutOfRange { k: 5, n: 4 })
        );
        assert_eq!(exists_separator(&SearchConfig::new(2, 3).workers(0)), Err(Error::NonPositive));
        let tiny = SearchConfig::new(5, 9).budget(Some(10));
        match exists_separator(&tiny) {
            Err(Error::BudgetExhausted { budget: 10, explored }) => assert!(explored <= 12),
            other => panic!("expected an exhausted budget, got {other:?}"),
        }
        // A budget the search never reaches changes nothing.
        let roomy = SearchConfig::new(3, 5).budget(Some(1_000_000));
        assert_eq!(exists_separator(&roomy).unwrap().witness, None);
        let big = SearchConfig::new(4, 13).budget(Some(1_000_000));
        assert!(exists_separator(&big).is_ok());
    }

    #[test]
    fn pruned_search_agrees_with_brute_force() {
        for n in 1..=6 {
            for k in 1..=n {
                let naive = naive_exists(n, k);
                for (prune, sym) in [(true, true), (false, false), (true, false), (false, true)] {
                    let cfg = SearchConfig {
                        prune_distance: prune,
                        symmetry_break: sym,
                        ..SearchConfig::new(k, n)
                    };
                    let got = exists_separator(&cfg).unwrap().witness;
                    // The smallest separator always starts in the lower half,
                    // so even the reduced search finds the same one.
                    assert_eq!(got, naive, "n = {n}, k = {k}, prune = {prune}, sym = {sym}");
                }
            }
        }
    }

    #[test]
    fn distance_prune_changes_nothing_beyond_the_oracle_range() {
        for (k, n) in [(4, 7), (5, 7), (5, 8), (6, 8), (3, 7), (6, 9), (7, 10)] {
            let pruned = exists_separator(&SearchConfig::new(k, n)).unwrap();
            let plain = SearchConfig {
                prune_distance: false,
                ..SearchConfig::new(k, n)
            };
            let plain = exists_separator(&plain).unwrap();
            assert_eq!(pruned.witness, plain.witness, "k = {k}, n = {n}");
            assert!(pruned.nodes <= plain.nodes);
        }
    }

    #[test]
    fn deterministic_witness_ignores_worker_count() {
        for (k, n) in [(4, 5), (5, 7), (3, 4), (4, 6)] {
            let one = exists_separator(&SearchConfig::new(k, n)).unwrap().witness;
            for w in [2, 3, 5] {
                let many = exists_separator(&SearchConfig::new(k, n).workers(w)).unwrap().witness;
                assert_eq!(many, one, "k = {k}, n = {n}, workers = {w}");
            }
        }
        let loose = SearchConfig {
            deterministic: false,
            ..SearchConfig::new(3, 4).workers(3)
        };
        let w = exists_separator(&loose).unwrap().witness.unwrap();
        assert!(is_k_separator(&w, 3).unwrap().is_separator);
    }

    #[test]
    fn exact_small_values() {
        let e2 = exact_f(2, &ExactOptions::default()).unwrap();
        assert_eq!((e2.f_exact, e2.epsilon), (2, -1));
        let e3 = exact_f(3, &ExactOptions::default()).unwrap();
        assert_eq!((e3.f_exact, e3.epsilon), (4, 0));
        let audited = exact_f(
            4,
            &ExactOptions {
                audit: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(audited.audit_absent, Some(true));
        let b = bounds_for(4).unwrap();
        assert!(audited.f_exact == b.lower || audited.f_exact == b.upper);
        assert!(is_k_separator(&audited.witness, 4).unwrap().is_separator);
    }

    #[test]
    fn epsilon_goldens() {
        let table = epsilon_table(4, 8, &ExactOptions::default()).unwrap();
        let rows: Vec<(usize, usize, i64)> = table.iter().map(|e| (e.k, e.f_exact, e.epsilon)).collect();
        assert_eq!(rows, vec![(4, 5, -1), (5, 7, 0), (6, 8, -1), (7, 9, -1), (8, 10, -1)]);
        // F(k) − k never decreases over the computed range.
        let gaps: Vec<usize> = [(2, 2), (3, 4)]
            .into_iter()
            .chain(rows.iter().map(|r| (r.0, r.1)))
            .map(|(k, f)| f - k)
            .collect();
        assert!(gaps.windows(2).all(|w| w[0] <= w[1]), "{gaps:?}");
    }

    #[test]
    fn table_and_results_file() {
        let table = epsilon_table(2, 3, &ExactOptions::default()).unwrap();
        let rows: Vec<(usize, usize, i64)> = table.iter().map(|e| (e.k, e.f_exact, e.epsilon)).collect();
        assert_eq!(rows, vec![(2, 2, -1), (3, 4, 0)]);
        assert_eq!(epsilon_table(2, 2, &ExactOptions::default()).unwrap().len(), 1);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/epsilon.csv");
        append_results(&path, &table[..1]).unwrap();
        append_results(&path, &table[1..]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], RESULTS_HEADER);
        assert!(lines[1].starts_with("2,2,-1,1 2,"));
        assert!(lines[2].starts_with("3,4,0,2 4 1 3,"));
    }
}
