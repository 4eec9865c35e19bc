//! Permutations in one-line notation, selectors, pattern keys and the
//! dihedral symmetries of the permutation diagram.
//!
//! Positions and values are 1-based at every public boundary. A permutation
//! `σ = σ_1 σ_2 ⋯ σ_n` is stored as its value list; the inverse is computed
//! on first use and cached.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest pattern length whose Lehmer rank fits in a `u64` (20! < 2^62).
pub const RANK_MAX_K: usize = 20;

/// `FACTORIALS[i] = i!` for `i <= RANK_MAX_K`.
pub const FACTORIALS: [u64; RANK_MAX_K + 1] = {
    let mut f = [1u64; RANK_MAX_K + 1];
    let mut i = 1;
    while i <= RANK_MAX_K {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// A permutation of `[n]` in one-line notation.
#[derive(Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
    inverse: OnceLock<Vec<u32>>,
}

impl Permutation {
    /// Validates `values` as a bijection on `[n]`.
    pub fn from_one_line<T>(values: &[T]) -> Result<Self>
    where
        T: Copy + TryInto<u32>,
    {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(n);
        for &v in values {
            let v: u32 = v
                .try_into()
                .map_err(|_| Error::NotABijection("value out of range".into()))?;
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::NotABijection(format!("value {v} not in [1, {n}]")));
            }
            if seen[idx] {
                return Err(Error::NotABijection(format!("duplicate value {v}")));
            }
            seen[idx] = true;
            out.push(v);
        }
        Ok(Self::from_values_unchecked(out))
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&values));
        Self {
            values,
            inverse: OnceLock::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_values_unchecked((1..=n as u32).collect())
    }

    /// Relabels an arbitrary sequence of distinct integers by value rank.
    pub fn standardize<T: Ord + Copy>(seq: &[T]) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by_key(|&i| seq[i]);
        if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
            return Err(Error::NotABijection("repeated entry".into()));
        }
        let mut values = vec![0u32; seq.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Ok(Self::from_values_unchecked(values))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The one-line word `σ_1 … σ_n`.
    #[inline]
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `σ_p` for a 1-based position `p`.
    pub fn at(&self, position: usize) -> Result<u32> {
        position
            .checked_sub(1)
            .and_then(|p| self.values.get(p).copied())
            .ok_or(Error::PositionOutOfRange {
                position,
                n: self.len(),
            })
    }

    /// Inverse table, 0-indexed by `value - 1`, holding 1-based positions.
    pub fn inverse_table(&self) -> &[u32] {
        self.inverse.get_or_init(|| {
            let mut inv = vec![0u32; self.values.len()];
            for (p, &v) in self.values.iter().enumerate() {
                inv[v as usize - 1] = p as u32 + 1;
            }
            inv
        })
    }

    /// `σ⁻¹(v)` for a 1-based value `v`.
    pub fn position_of(&self, value: usize) -> Result<usize> {
        value
            .checked_sub(1)
            .and_then(|v| self.inverse_table().get(v).copied())
            .map(|p| p as usize)
            .ok_or(Error::ValueOutOfRange {
                value,
                n: self.len(),
            })
    }

    pub fn inverse(&self) -> Self {
        Self::from_values_unchecked(self.inverse_table().to_vec())
    }

    pub fn reverse(&self) -> Self {
        let mut v = self.values.clone();
        v.reverse();
        Self::from_values_unchecked(v)
    }

    pub fn complement(&self) -> Self {
        let n1 = self.len() as u32 + 1;
        Self::from_values_unchecked(self.values.iter().map(|&v| n1 - v).collect())
    }

    /// Standardization of `σ` with the given 1-based positions deleted.
    pub fn delete_positions(&self, positions: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut drop = vec![false; n];
        for &p in positions {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { position: p, n });
            }
            drop[p - 1] = true;
        }
        let kept: Vec<u32> = self
            .values
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(&v, _)| v)
            .collect();
        Self::standardize(&kept)
    }

    /// Digits without separators; only meaningful when `n <= 9`.
    pub fn to_compact(&self) -> Option<String> {
        (self.len() <= 9).then(|| self.values.iter().map(|v| v.to_string()).collect())
    }

    /// Repo text format: space-separated 1-based values.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn is_bijection(values: &[u32]) -> bool {
    let mut seen = vec![false; values.len() + 1];
    values.iter().all(|&v| {
        let v = v as usize;
        v >= 1 && v <= values.len() && !std::mem::replace(&mut seen[v], true)
    })
}

impl Clone for Permutation {
    fn clone(&self) -> Self {
        Self::from_values_unchecked(self.values.clone())
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values.cmp(&other.values)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::from_one_line(&values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

/// Parses the repo text format: whitespace- or comma-separated integers,
/// or a compact digit string such as `2413` when `n <= 9`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let values: Vec<u32> = match tokens.as_slice() {
            [] => return Err(Error::EmptyInput),
            [single] if single.len() > 1 => {
                if single.len() > 9 {
                    return Err(Error::Parse(format!(
                        "compact digit strings are limited to n <= 9: {single:?}"
                    )));
                }
                single
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .ok_or_else(|| Error::Parse(format!("not a digit: {c:?}")))
                    })
                    .collect::<Result<_>>()?
            }
            many => many
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
                })
                .collect::<Result<_>>()?,
        };
        Self::from_one_line(&values)
    }
}

/// A strictly increasing list of 1-based positions `a_1 < … < a_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Selector(Vec<usize>);

impl Selector {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::SelectorOutOfRange("empty selector".into()));
        }
        if indices[0] == 0 {
            return Err(Error::SelectorOutOfRange("positions are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::SelectorOutOfRange(format!(
                "positions must be strictly increasing: {indices:?}"
            )));
        }
        Ok(Self(indices))
    }

    /// All positions `1..=n`.
    pub fn full(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub(crate) fn from_zero_based(indices: &[usize]) -> Self {
        Self(indices.iter().map(|&i| i + 1).collect())
    }

    #[inline]
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_against(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last <= n => Ok(()),
            Some(&last) => Err(Error::SelectorOutOfRange(format!(
                "position {last} exceeds host length {n}"
            ))),
            None => Err(Error::SelectorOutOfRange("empty selector".into())),
        }
    }
}

impl TryFrom<Vec<usize>> for Selector {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Selector> for Vec<usize> {
    fn from(s: Selector) -> Self {
        s.0
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Canonical identifier of a length-`k` pattern.
///
/// `rank` is the Lehmer rank of `word` and is present whenever
/// `k <= RANK_MAX_K`; equality and hashing go through `word`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternKey {
    pub k: usize,
    pub word: Permutation,
    pub rank: Option<u64>,
}

impl PatternKey {
    pub fn new(word: Permutation) -> Self {
        let rank = pattern_rank(&word).ok();
        Self {
            k: word.len(),
            word,
            rank,
        }
    }
}

impl PartialEq for PatternKey {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for PatternKey {}

impl Hash for PatternKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

/// The pattern formed by `σ` restricted to `sel`.
pub fn pattern_of(sigma: &Permutation, sel: &Selector) -> Result<PatternKey> {
    sel.check_against(sigma.len())?;
    let picked: Vec<u32> = sel.indices().iter().map(|&p| sigma.values[p - 1]).collect();
    Ok(PatternKey::new(Permutation::standardize(&picked)?))
}

/// Lehmer-code rank; lexicographic order of words maps onto `0..k!`.
pub fn pattern_rank(word: &Permutation) -> Result<u64> {
    let k = word.len();
    if k > RANK_MAX_K {
        return Err(Error::LengthTooLargeForRank(k));
    }
    Ok(rank_of_word(word.values()))
}

/// Rank of a word over `1..=k` with `k <= RANK_MAX_K` (unchecked).
#[inline]
pub(crate) fn rank_of_word(word: &[u32]) -> u64 {
    let k = word.len();
    // Bit v-1 set while value v is still unused.
    let mut remaining: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut rank = 0u64;
    for (j, &v) in word.iter().enumerate() {
        let below = remaining & ((1u32 << (v - 1)) - 1);
        rank += below.count_ones() as u64 * FACTORIALS[k - 1 - j];
        remaining &= !(1u32 << (v - 1));
    }
    rank
}

/// Inverse of [`pattern_rank`].
pub fn pattern_unrank(rank: u64, k: usize) -> Result<Permutation> {
    if k > RANK_MAX_K {
        return Err(Error::LengthTooLargeForRank(k));
    }
    if k == 0 {
        return Err(Error::EmptyInput);
    }
    if rank >= FACTORIALS[k] {
        return Err(Error::NotABijection(format!("rank {rank} >= {k}!")));
    }
    let mut pool: Vec<u32> = (1..=k as u32).collect();
    let mut r = rank;
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let f = FACTORIALS[k - 1 - j];
        let digit = (r / f) as usize;
        r %= f;
        out.push(pool.remove(digit));
    }
    Ok(Permutation::from_values_unchecked(out))
}

/// Whether two restrictions of `σ` realize the same pattern.
pub fn pattern_isomorphic(sigma: &Permutation, s1: &Selector, s2: &Selector) -> Result<bool> {
    if s1.len() != s2.len() {
        return Err(Error::MismatchedLengths(s1.len(), s2.len()));
    }
    s1.check_against(sigma.len())?;
    s2.check_against(sigma.len())?;
    let v = sigma.values();
    let (a, b) = (s1.indices(), s2.indices());
    for j in 1..a.len() {
        for i in 0..j {
            let lhs = v[a[j] - 1].cmp(&v[a[i] - 1]);
            let rhs = v[b[j] - 1].cmp(&v[b[i] - 1]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lazily enumerates every copy of `π` in `σ`, in lexicographic selector
/// order. Prefixes whose relative order already disagrees with `π` are cut.
pub fn occurrences<'a>(sigma: &'a Permutation, pi: &'a Permutation) -> Result<Occurrences<'a>> {
    if pi.len() > sigma.len() {
        return Err(Error::PatternLongerThanHost {
            pattern: pi.len(),
            host: sigma.len(),
        });
    }
    Ok(Occurrences {
        host: sigma.values(),
        pattern: pi.values(),
        chosen: Vec::with_capacity(pi.len()),
        cursor: 0,
        done: false,
    })
}

pub struct Occurrences<'a> {
    host: &'a [u32],
    pattern: &'a [u32],
    chosen: Vec<usize>,
    cursor: usize,
    done: bool,
}

impl Occurrences<'_> {
    #[inline]
    fn compatible(&self, pos: usize) -> bool {
        let d = self.chosen.len();
        let v = self.host[pos];
        let pv = self.pattern[d];
        self.chosen
            .iter()
            .enumerate()
            .all(|(j, &q)| (v > self.host[q]) == (pv > self.pattern[j]))
    }
}

impl Iterator for Occurrences<'_> {
    type Item = Selector;

    fn next(&mut self) -> Option<Selector> {
        let (n, k) = (self.host.len(), self.pattern.len());
        while !self.done {
            let d = self.chosen.len();
            if d == k {
                let sel = Selector::from_zero_based(&self.chosen);
                self.cursor = self.chosen.pop().unwrap_or(0) + 1;
                return Some(sel);
            }
            if self.cursor + (k - d) > n {
                match self.chosen.pop() {
                    Some(last) => self.cursor = last + 1,
                    None => self.done = true,
                }
                continue;
            }
            if self.compatible(self.cursor) {
                self.chosen.push(self.cursor);
            }
            self.cursor += 1;
        }
        None
    }
}

/// One of the 8 symmetries of the permutation diagram, written as
/// `complement^c ∘ reverse^r ∘ inverse^i` (inverse applied first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub inverse: bool,
    pub reverse: bool,
    pub complement: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry::new(false, false, false);
    pub const REVERSE: Symmetry = Symmetry::new(false, true, false);
    pub const COMPLEMENT: Symmetry = Symmetry::new(false, false, true);
    pub const INVERSE: Symmetry = Symmetry::new(true, false, false);

    pub const ALL: [Symmetry; 8] = [
        Symmetry::new(false, false, false),
        Symmetry::new(false, true, false),
        Symmetry::new(false, false, true),
        Symmetry::new(false, true, true),
        Symmetry::new(true, false, false),
        Symmetry::new(true, true, false),
        Symmetry::new(true, false, true),
        Symmetry::new(true, true, true),
    ];

    pub const fn new(inverse: bool, reverse: bool, complement: bool) -> Self {
        Self {
            inverse,
            reverse,
            complement,
        }
    }

    /// The group inverse. Uses `I∘R = C∘I` and `I∘C = R∘I`.
    pub fn inverse_element(self) -> Self {
        if self.inverse {
            Self::new(true, self.complement, self.reverse)
        } else {
            self
        }
    }

    pub fn name(self) -> String {
        let mut parts = Vec::new();
        if self.complement {
            parts.push("complement");
        }
        if self.reverse {
            parts.push("reverse");
        }
        if self.inverse {
            parts.push("inverse");
        }
        if parts.is_empty() {
            "identity".into()
        } else {
            parts.join("∘")
        }
    }

    pub fn apply(self, sigma: &Permutation) -> Permutation {
        let n = sigma.len();
        let base: &[u32] = if self.inverse {
            sigma.inverse_table()
        } else {
            sigma.values()
        };
        let n1 = n as u32 + 1;
        let values = (0..n)
            .map(|p| {
                let src = if self.reverse { n - 1 - p } else { p };
                let v = base[src];
                if self.complement {
                    n1 - v
                } else {
                    v
                }
            })
            .collect();
        Permutation::from_values_unchecked(values)
    }
}

/// Applies a symmetry to `σ`.
pub fn symmetry_image(sigma: &Permutation, op: Symmetry) -> Permutation {
    op.apply(sigma)
}

/// True when `σ` is the lexicographic minimum of its symmetry orbit.
pub fn is_canonical(sigma: &Permutation) -> bool {
    Symmetry::ALL[1..]
        .iter()
        .all(|g| g.apply(sigma).values() >= sigma.values())
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
