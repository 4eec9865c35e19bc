//! k-separator verification, distinct-pattern counting and the maximal
//! pattern count `P(k,l)` with its ratio `Q(k,l)`.
//!
//! All checks stream the `C(n,k)` selectors of the host in lexicographic
//! order into a [`PatternIndex`]. For `k <= RANK_MAX_K` the key is the exact
//! Lehmer rank of the pattern, computed straight from a bitmask of the kept
//! values without materializing the standardized word. Longer patterns use a
//! 64-bit fingerprint; every fingerprint hit is confirmed by comparing the
//! actual words, so results stay exact.

use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{fingerprint, PatternIndex, Probe};
use crate::perm::{binomial, is_canonical, Permutation, Selector, FACTORIALS, RANK_MAX_K};

/// Default cap on `k + l` for [`p_of`].
pub const SEARCH_N_MAX: usize = 12;

/// Outcome of a separator check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorReport {
    pub n: usize,
    pub k: usize,
    pub is_separator: bool,
    /// Distinct k-patterns seen before the scan stopped (all of them in a
    /// full scan, or whenever the host is a separator).
    pub distinct_count: u64,
    /// First selector (in lexicographic order) repeating an earlier pattern,
    /// paired with the earliest selector carrying that pattern.
    pub witness: Option<(Selector, Selector)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Stop at the first repeated pattern.
    EarlyExit,
    /// Visit every selector so `distinct_count` is exact.
    Full,
}

/// Set of values `0..n` as a bitmask, specialised for `n <= 64`.
trait ValueMask {
    fn reset(&mut self);
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn count_below(&self, v: usize) -> u32;
}

impl ValueMask for u64 {
    #[inline]
    fn reset(&mut self) {
        *self = 0;
    }
    #[inline]
    fn insert(&mut self, v: usize) {
        *self |= 1 << v;
    }
    #[inline]
    fn remove(&mut self, v: usize) {
        *self &= !(1 << v);
    }
    #[inline]
    fn count_below(&self, v: usize) -> u32 {
        (*self & ((1u64 << v) - 1)).count_ones()
    }
}

struct WideMask(Vec<u64>);

impl ValueMask for WideMask {
    fn reset(&mut self) {
        self.0.fill(0);
    }
    #[inline]
    fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }
    #[inline]
    fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1 << (v & 63));
    }
    #[inline]
    fn count_below(&self, v: usize) -> u32 {
        let w = v >> 6;
        let full: u32 = self.0[..w].iter().map(|x| x.count_ones()).sum();
        full + (self.0[w] & ((1u64 << (v & 63)) - 1)).count_ones()
    }
}

/// Computes pattern keys for selectors of one host permutation.
struct Keyer<'a, M> {
    /// 0-based values.
    host: Vec<usize>,
    sigma: &'a Permutation,
    k: usize,
    mask: M,
}

impl<M: ValueMask> Keyer<'_, M> {
    #[inline]
    fn load(&mut self, idx: &[usize]) {
        self.mask.reset();
        for &p in idx {
            self.mask.insert(self.host[p]);
        }
    }

    /// Lehmer rank of the pattern at `idx` (0-based positions).
    #[inline]
    fn rank(&mut self, idx: &[usize]) -> u64 {
        self.load(idx);
        let mut rank = 0;
        for (j, &p) in idx.iter().enumerate() {
            let v = self.host[p];
            self.mask.remove(v);
            rank += self.mask.count_below(v) as u64 * FACTORIALS[self.k - 1 - j];
        }
        rank
    }

    #[inline]
    fn fingerprint(&mut self, idx: &[usize]) -> u64 {
        self.load(idx);
        let mask = &self.mask;
        let host = &self.host;
        fingerprint(idx.iter().map(|&p| mask.count_below(host[p]) + 1))
    }

    fn key(&mut self, idx: &[usize]) -> u64 {
        if self.k <= RANK_MAX_K {
            self.rank(idx)
        } else {
            self.fingerprint(idx)
        }
    }

    fn word(&self, idx: &[usize]) -> Vec<u32> {
        let picked: Vec<u32> = idx.iter().map(|&p| self.sigma.values()[p]).collect();
        Permutation::standardize(&picked)
            .expect("values of a permutation are distinct")
            .values()
            .to_vec()
    }
}

/// Advances a 0-based combination of `0..n` to its lexicographic successor.
#[inline]
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The `r`-th `k`-subset of `0..n` in lexicographic order.
pub(crate) fn unrank_combination(n: usize, k: usize, mut r: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    for j in 0..k {
        loop {
            let with_x = binomial(n - 1 - x, k - 1 - j);
            if r < with_x {
                break;
            }
            r -= with_x;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

fn scan<M: ValueMask>(
    sigma: &Permutation,
    k: usize,
    mode: ScanMode,
    mask: M,
    index: &mut PatternIndex,
) -> SeparatorReport {
    let n = sigma.len();
    let mut keyer = Keyer {
        host: sigma.values().iter().map(|&v| v as usize - 1).collect(),
        sigma,
        k,
        mask,
    };
    let mut comb: Vec<usize> = (0..k).collect();
    let mut id: u64 = 0;
    let mut witness = None;
    let exact = k <= RANK_MAX_K;
    loop {
        let key = keyer.key(&comb);
        let probe = if exact {
            index.insert_or_probe(key, id)
        } else {
            let word = keyer.word(&comb);
            let keyer_ref = &keyer;
            index.insert_with(key, id, |earlier| {
                keyer_ref.word(&unrank_combination(n, k, earlier)) == word
            })
        };
        if let Probe::Present { payload } = probe {
            if witness.is_none() {
                let first = Selector::from_zero_based(&unrank_combination(n, k, payload));
                witness = Some((first, Selector::from_zero_based(&comb)));
                if mode == ScanMode::EarlyExit {
                    break;
                }
            }
        }
        id += 1;
        if !next_combination(&mut comb, n) {
            break;
        }
    }
    SeparatorReport {
        n,
        k,
        is_separator: witness.is_none(),
        distinct_count: index.len() as u64,
        witness,
    }
}

fn scan_with(sigma: &Permutation, k: usize, mode: ScanMode, index: &mut PatternIndex) -> SeparatorReport {
    let n = sigma.len();
    if n <= 64 {
        scan(sigma, k, mode, 0u64, index)
    } else {
        scan(sigma, k, mode, WideMask(vec![0; n.div_ceil(64)]), index)
    }
}

fn fresh_index(n: usize, k: usize) -> PatternIndex {
    let selectors = binomial(n, k);
    let patterns = if k <= RANK_MAX_K { FACTORIALS[k] } else { u64::MAX };
    // Pre-size for the common case; the table grows past this if needed.
    PatternIndex::with_capacity(selectors.min(patterns).min(1 << 27) as usize)
}

/// Checks whether `σ` is a k-separator with the given scan mode.
pub fn check_separator(sigma: &Permutation, k: usize, mode: ScanMode) -> Result<SeparatorReport> {
    check_k(sigma.len(), k)?;
    let mut index = fresh_index(sigma.len(), k);
    Ok(scan_with(sigma, k, mode, &mut index))
}

/// Whether every length-`k` pattern of `σ` occurs at most once. Stops at the
/// first repeat.
pub fn is_k_separator(sigma: &Permutation, k: usize) -> Result<SeparatorReport> {
    check_separator(sigma, k, ScanMode::EarlyExit)
}

/// Number of distinct length-`k` patterns contained in `σ`.
pub fn distinct_pattern_count(sigma: &Permutation, k: usize) -> Result<u64> {
    Ok(check_separator(sigma, k, ScanMode::Full)?.distinct_count)
}

/// `P(k,l)` together with the exact ratio `Q(k,l) = P / C(k+l, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PQRecord {
    pub k: usize,
    pub l: usize,
    #[serde(rename = "P")]
    pub p_value: u64,
    #[serde(rename = "Q_num")]
    pub q_num: u64,
    #[serde(rename = "Q_den")]
    pub q_den: u64,
    /// A permutation of length `k + l` attaining `P`.
    #[serde(skip)]
    pub witness: Option<Permutation>,
}

impl PQRecord {
    pub fn new(k: usize, l: usize, p_value: u64, witness: Option<Permutation>) -> Self {
        let total = binomial(k + l, k);
        let g = p_value.gcd(&total).max(1);
        Self {
            k,
            l,
            p_value,
            q_num: p_value / g,
            q_den: total / g,
            witness,
        }
    }

    pub fn q_is_one(&self) -> bool {
        self.q_num == self.q_den
    }

    pub const CSV_HEADER: [&'static str; 5] = ["k", "l", "P", "Q_num", "Q_den"];
}

#[derive(Clone, Copy, Debug)]
pub struct PqOptions {
    pub n_max: usize,
    pub workers: usize,
}

impl Default for PqOptions {
    fn default() -> Self {
        Self {
            n_max: SEARCH_N_MAX,
            workers: 1,
        }
    }
}

/// Lexicographic successor of a permutation (0-based or 1-based alike).
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Maximum number of distinct `k`-patterns over all permutations of length
/// `k + l`, by exhaustive enumeration of one representative per symmetry
/// class. Work is split by the first entry across `opts.workers` threads.
pub fn p_of(k: usize, l: usize, opts: PqOptions) -> Result<PQRecord> {
    let n = k + l;
    if k == 0 {
        return Err(Error::KOutOfRange { k, n });
    }
    if n > opts.n_max {
        return Err(Error::InstanceTooLarge {
            n,
            limit: opts.n_max,
        });
    }
    let cap = binomial(n, k).min(if k <= RANK_MAX_K { FACTORIALS[k] } else { u64::MAX });
    let best = AtomicU64::new(0);
    let next_first = AtomicU64::new(1);
    let workers = opts.workers.max(1).min(n);

    let results: Vec<Option<(u64, Permutation)>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local: Option<(u64, Permutation)> = None;
                    let mut index = fresh_index(n, k);
                    loop {
                        let first = next_first.fetch_add(1, Ordering::Relaxed) as u32;
                        // Canonical representatives are orbit minima, so their
                        // first entry never exceeds ceil(n/2).
                        if first as usize > n.div_ceil(2) || best.load(Ordering::Relaxed) >= cap {
                            break;
                        }
                        let mut tail: Vec<u32> = (1..=n as u32).filter(|&v| v != first).collect();
                        loop {
                            let mut values = Vec::with_capacity(n);
                            values.push(first);
                            values.extend_from_slice(&tail);
                            let sigma = Permutation::from_values_unchecked(values);
                            if is_canonical(&sigma) {
                                index.clear();
                                let count = scan_with(&sigma, k, ScanMode::Full, &mut index).distinct_count;
                                let better = match &local {
                                    None => true,
                                    Some((c, w)) => count > *c || (count == *c && sigma < *w),
                                };
                                if better {
                                    best.fetch_max(count, Ordering::Relaxed);
                                    local = Some((count, sigma));
                                    if count >= cap {
                                        break;
                                    }
                                }
                            }
                            if !next_permutation(&mut tail) {
                                break;
                            }
                        }
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let (p, witness) = results
        .into_iter()
        .flatten()
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .expect("S_n is non-empty");
    Ok(PQRecord::new(k, l, p, Some(witness)))
}
