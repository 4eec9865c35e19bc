//! Distance statistics on permutations, the inequalities behind the upper
//! bound on separator length, and the bound formulas themselves.
//!
//! Everything that decides an inequality works in exact integers or
//! rationals; square roots are integer square roots.

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::separator::next_permutation;

/// Largest `m` the displacement oracle will enumerate (`m!` permutations).
pub const DISPLACEMENT_ORACLE_MAX_M: usize = 10;

/// Largest `k` for which [`bounds_for`] computes the binomial bound.
pub const BINOM_BOUND_MAX_K: usize = 500;

fn ratio_as_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn check_value(sigma: &Permutation, v: usize) -> Result<()> {
    if v == 0 || v > sigma.len() {
        return Err(Error::ValueOutOfRange {
            value: v,
            n: sigma.len(),
        });
    }
    Ok(())
}

/// `d_σ(i, j) = |σ⁻¹(i) − σ⁻¹(j)|` for values `i` and `j`.
pub fn distance(sigma: &Permutation, i: usize, j: usize) -> Result<usize> {
    Ok(sigma.position_of(i)?.abs_diff(sigma.position_of(j)?))
}

/// `t^σ_{i,j}`: how many values strictly between `i` and `j` also sit
/// strictly between them in the one-line word.
pub fn between_count(sigma: &Permutation, i: usize, j: usize) -> Result<usize> {
    check_value(sigma, i)?;
    check_value(sigma, j)?;
    if i == j {
        return Err(Error::EqualValues(i));
    }
    let inv = sigma.inverse_table();
    let (lo, hi) = (i.min(j), i.max(j));
    let (p, q) = {
        let (a, b) = (inv[i - 1], inv[j - 1]);
        (a.min(b), a.max(b))
    };
    Ok(inv[lo..hi - 1].iter().filter(|&&pos| p < pos && pos < q).count())
}

/// `|i − j| + |σ_i − σ_j|` for positions `i` and `j`.
pub fn taxicab(sigma: &Permutation, i: usize, j: usize) -> Result<usize> {
    let (a, b) = (sigma.at(i)?, sigma.at(j)?);
    Ok(i.abs_diff(j) + a.abs_diff(b) as usize)
}

/// A value pair where `d_σ(i,j) ≥ (n−k+2) + t^σ_{i,j} − |i−j|` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceViolation {
    pub i: usize,
    pub j: usize,
    /// `d_σ(i, j)`.
    pub lhs: i64,
    /// `(n−k+2) + t^σ_{i,j} − |i−j|`.
    pub rhs: i64,
}

/// Every value pair violating the separator distance inequality.
///
/// Every k-separator satisfies it, so a non-empty result certifies that
/// `sigma` is not a k-separator (the converse does not hold). With
/// `early_exit` the scan stops at the first violation.
pub fn check_lemma23(sigma: &Permutation, k: usize, early_exit: bool) -> Result<Vec<DistanceViolation>> {
    let n = sigma.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let inv = sigma.inverse_table();
    let base = n as i64 - k as i64 + 2;
    let mut out = Vec::new();
    for i in 1..=n {
        let pi = inv[i - 1];
        for j in i + 1..=n {
            let pj = inv[j - 1];
            let (lo, hi) = (pi.min(pj), pi.max(pj));
            let t = inv[i..j - 1].iter().filter(|&&p| lo < p && p < hi).count() as i64;
            let d = pi.abs_diff(pj) as i64;
            let rhs = base + t - (j - i) as i64;
            if d < rhs {
                out.push(DistanceViolation { i, j, lhs: d, rhs });
                if early_exit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// The inequality with `t` dropped: `d_σ(i,j) ≥ (n−k+2) − |i−j|`.
pub fn weak_distance_holds(sigma: &Permutation, k: usize) -> Result<bool> {
    let n = sigma.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let inv = sigma.inverse_table();
    let base = n as i64 - k as i64 + 2;
    Ok((1..=n).all(|i| {
        (i + 1..=n).all(|j| inv[i - 1].abs_diff(inv[j - 1]) as i64 >= base - (j - i) as i64)
    }))
}

/// Reading values `1..=m` in position order as `v_1, …, v_m`: the distance
/// sum `Σ d_σ(v_l, v_{l+1})` and the lower bound
/// `(m−1)(n−k+2) − Σ |v_l − v_{l+1}|` it must meet on a k-separator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBound {
    pub m: usize,
    pub distance_sum: i64,
    pub lower_bound: i64,
}

pub fn chain_bound(sigma: &Permutation, k: usize, m: usize) -> Result<ChainBound> {
    let n = sigma.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    check_value(sigma, m)?;
    let chain: Vec<u32> = sigma.values().iter().copied().filter(|&v| v as usize <= m).collect();
    let inv = sigma.inverse_table();
    let mut distance_sum = 0i64;
    let mut jumps = 0i64;
    for w in chain.windows(2) {
        distance_sum += inv[w[0] as usize - 1].abs_diff(inv[w[1] as usize - 1]) as i64;
        jumps += w[0].abs_diff(w[1]) as i64;
    }
    Ok(ChainBound {
        m,
        distance_sum,
        lower_bound: (m as i64 - 1) * (n as i64 - k as i64 + 2) - jumps,
    })
}

/// `Σ |a_i − a_{i+1}|` over a permutation of `1..=m`.
pub fn displacement_sum(word: &[u32]) -> Result<u64> {
    Permutation::from_one_line(word)?;
    Ok(word.windows(2).map(|w| w[0].abs_diff(w[1]) as u64).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisplacementMode {
    Formula,
    Oracle,
}

/// Outcome of [`max_displacement_sum`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplacementReport {
    pub m: usize,
    pub mode: DisplacementMode,
    /// The formula bound `(m−1)(m+1)/2`, or the true maximum in oracle mode.
    #[serde(serialize_with = "ratio_as_string")]
    pub value: Ratio<u64>,
    /// The sharper `(m−1)(m+1)/2 − 1`.
    #[serde(serialize_with = "ratio_as_string")]
    pub refined: Ratio<u64>,
    /// Oracle mode only: whether the maximum equals `refined`.
    pub equals_refined: Option<bool>,
    /// Oracle mode only: a permutation attaining the maximum.
    pub witness: Option<Vec<u32>>,
}

/// `(m−1)(m+1)/2` as an exact rational.
pub fn displacement_bound(m: usize) -> Ratio<u64> {
    let m = m as u64;
    Ratio::new((m - 1) * (m + 1), 2)
}

pub fn max_displacement_sum(m: usize, mode: DisplacementMode) -> Result<DisplacementReport> {
    if m == 0 {
        return Err(Error::NonPositive);
    }
    let formula = displacement_bound(m);
    let refined = if formula >= Ratio::from_integer(1) {
        formula - 1
    } else {
        Ratio::from_integer(0)
    };
    match mode {
        DisplacementMode::Formula => Ok(DisplacementReport {
            m,
            mode,
            value: formula,
            refined,
            equals_refined: None,
            witness: None,
        }),
        DisplacementMode::Oracle => {
            if m > DISPLACEMENT_ORACLE_MAX_M {
                return Err(Error::OracleTooLarge {
                    m,
                    limit: DISPLACEMENT_ORACLE_MAX_M,
                });
            }
            let mut word: Vec<u32> = (1..=m as u32).collect();
            let mut best = (0u64, word.clone());
            loop {
                let s: u64 = word.windows(2).map(|w| w[0].abs_diff(w[1]) as u64).sum();
                if s > best.0 {
                    best = (s, word.clone());
                }
                if !next_permutation(&mut word) {
                    break;
                }
            }
            let value = Ratio::from_integer(best.0);
            Ok(DisplacementReport {
                m,
                mode,
                value,
                refined,
                equals_refined: Some(value == refined),
                witness: Some(best.1),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtInequality {
    pub x: u64,
    pub holds: bool,
    pub equality: bool,
}

/// `⌊√x⌋ + x/⌊√x⌋ ≤ 2(⌊√x⌋ + 1)`, with the equality flag.
pub fn check_lemma27(x: u64) -> Result<SqrtInequality> {
    if x == 0 {
        return Err(Error::NonPositive);
    }
    let r = x.sqrt();
    let lhs = Ratio::from_integer(r) + Ratio::new(x, r);
    let rhs = Ratio::from_integer(2 * (r + 1));
    Ok(SqrtInequality {
        x,
        holds: lhs <= rhs,
        equality: lhs == rhs,
    })
}

/// `f_k(m) = m + (2k−3)/(m−2)`.
pub fn f_k(k: usize, m: usize) -> Result<Ratio<u64>> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    match m {
        2 => Err(Error::PoleAtTwo),
        0 | 1 => Err(Error::MOutOfRange(m)),
        _ => Ok(Ratio::from_integer(m as u64) + Ratio::new(2 * k as u64 - 3, m as u64 - 2)),
    }
}

/// The integer `m` used to minimise `f_k`: `⌈√(2k−3)⌉ + 2` when
/// `k = 2u² + 1`, otherwise `⌊√(2k−3)⌋ + 2`.
pub fn optimal_m(k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let x = 2 * k - 3;
    let floor = x.sqrt();
    let u2 = (k - 1) / 2;
    let special = k % 2 == 1 && u2 >= 1 && u2.sqrt().pow(2) == u2;
    let ceil = if floor * floor == x { floor } else { floor + 1 };
    Ok(if special { ceil + 2 } else { floor + 2 })
}

/// Lower and upper bounds on `F(k)` plus the cruder bounds they refine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub k: usize,
    /// `k + ⌊√(2k−3)⌋ − 1`, attained by the checkerboard construction.
    pub lower: usize,
    /// `k + ⌊√(2k−3)⌋`.
    pub upper: usize,
    /// `2k − 1`.
    pub trivial_2k: usize,
    /// Largest `n` with `C(n, k) ≤ k!`; absent above [`BINOM_BOUND_MAX_K`].
    pub binom_bound: Option<usize>,
    pub exact_f: Option<usize>,
    pub epsilon: Option<i64>,
}

impl BoundsRecord {
    /// Records an exact value; `epsilon = exact − upper`.
    pub fn with_exact(mut self, f: usize) -> Self {
        self.exact_f = Some(f);
        self.epsilon = Some(f as i64 - self.upper as i64);
        self
    }
}

/// Largest `n` with `C(n, k) ≤ k!`, by exact big-integer comparison.
pub fn binom_bound(k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let fact: BigUint = (2..=k as u64).map(BigUint::from).product();
    // C(n, k) for n = k, k+1, … via C(n+1, k) = C(n, k)·(n+1)/(n+1−k).
    let mut n = k;
    let mut c = BigUint::from(1u32);
    loop {
        let next = &c * BigUint::from(n as u64 + 1) / BigUint::from((n + 1 - k) as u64);
        if next > fact {
            return Ok(n);
        }
        c = next;
        n += 1;
    }
}

pub fn bounds_for(k: usize) -> Result<BoundsRecord> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let r = (2 * k - 3).sqrt();
    Ok(BoundsRecord {
        k,
        lower: k + r - 1,
        upper: k + r,
        trivial_2k: 2 * k - 1,
        binom_bound: if k <= BINOM_BOUND_MAX_K {
            Some(binom_bound(k)?)
        } else {
            None
        },
        exact_f: None,
        epsilon: None,
    })
}

/// `F(k)` for the values settled by hand: `F(2) = 2`, `F(3) = 4`.
pub fn known_exact_f(k: usize) -> Option<usize> {
    match k {
        2 => Some(2),
        3 => Some(4),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkerboard::construct_separator;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn distance_examples() {
        let s = p("341679825");
        assert_eq!(distance(&s, 4, 2).unwrap(), 6);
        assert_eq!(distance(&s, 1, 9).unwrap(), 3);
        assert_eq!(distance(&s, 7, 7).unwrap(), 0);
        assert_eq!(distance(&s, 0, 1), Err(Error::ValueOutOfRange { value: 0, n: 9 }));
        assert_eq!(distance(&s, 1, 10), Err(Error::ValueOutOfRange { value: 10, n: 9 }));
    }

    #[test]
    fn between_count_examples() {
        let s = p("341679825");
        assert_eq!(between_count(&s, 3, 8).unwrap(), 3);
        assert_eq!(between_count(&s, 8, 3).unwrap(), 3);
        assert_eq!(between_count(&s, 1, 5).unwrap(), 1);
        assert_eq!(between_count(&s, 6, 7).unwrap(), 0);
        assert_eq!(between_count(&s, 4, 4), Err(Error::EqualValues(4)));
        assert!(matches!(between_count(&s, 4, 11), Err(Error::ValueOutOfRange { .. })));
    }

    #[test]
    fn taxicab_examples() {
        let s = p("341679825");
        assert_eq!(taxicab(&s, 1, 2).unwrap(), 2);
        assert_eq!(taxicab(&s, 1, 6).unwrap(), 11);
        assert_eq!(taxicab(&s, 5, 5).unwrap(), 0);
        assert!(matches!(taxicab(&s, 0, 5), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn between_count_is_below_the_gap_exhaustively() {
        for n in 2..=7u32 {
            let mut w: Vec<u32> = (1..=n).collect();
            loop {
                let s = Permutation::from_one_line(&w).unwrap();
                for i in 1..=n as usize {
                    for j in 1..=n as usize {
                        if i != j {
                            let t = between_count(&s, i, j).unwrap();
                            assert!(t < i.abs_diff(j));
                        }
                    }
                }
                if !next_permutation(&mut w) {
                    break;
                }
            }
        }
    }

    /// Direct evaluation of the inequality from the definitions.
    fn lemma23_naive(s: &Permutation, k: usize) -> Vec<DistanceViolation> {
        let n = s.len();
        let mut out = vec![];
        for i in 1..=n {
            for j in i + 1..=n {
                let d = distance(s, i, j).unwrap() as i64;
                let t = between_count(s, i, j).unwrap() as i64;
                let rhs = (n as i64 - k as i64 + 2) + t - (j - i) as i64;
                if d < rhs {
                    out.push(DistanceViolation { i, j, lhs: d, rhs });
                }
            }
        }
        out
    }

    #[test]
    fn lemma23_examples() {
        let sep = construct_separator(6).unwrap();
        assert!(check_lemma23(&sep, 6, false).unwrap().is_empty());
        assert!(!check_lemma23(&Permutation::identity(5), 3, false).unwrap().is_empty());
        assert_eq!(check_lemma23(&Permutation::identity(5), 3, true).unwrap().len(), 1);
        for s in ["1", "21", "2413", "53124"] {
            let s = p(s);
            assert!(check_lemma23(&s, s.len(), false).unwrap().is_empty());
        }
        assert_eq!(
            check_lemma23(&p("123"), 4, false),
            Err(Error::KOutOfRange { k: 4, n: 3 })
        );
    }

    #[test]
    fn lemma23_holds_on_constructions_and_weak_form_too() {
        for k in 2..=20 {
            let s = construct_separator(k).unwrap();
            assert!(check_lemma23(&s, k, false).unwrap().is_empty(), "k = {k}");
            assert!(weak_distance_holds(&s, k).unwrap(), "k = {k}");
            for m in 1..=s.len() {
                let c = chain_bound(&s, k, m).unwrap();
                assert!(c.distance_sum < s.len() as i64);
                assert!(c.lower_bound <= c.distance_sum, "k = {k}, m = {m}");
            }
        }
    }

    #[test]
    fn displacement_examples() {
        assert_eq!(displacement_sum(&[2, 4, 1, 3]).unwrap(), 7);
        assert_eq!(displacement_sum(&[1, 2, 3, 4, 5, 6]).unwrap(), 5);
        assert_eq!(displacement_sum(&[1]).unwrap(), 0);
        assert!(matches!(displacement_sum(&[1, 1]), Err(Error::NotABijection(_))));

        let r = max_displacement_sum(3, DisplacementMode::Oracle).unwrap();
        assert_eq!(r.value, Ratio::from_integer(3));
        assert_eq!(r.equals_refined, Some(true));
        let r = max_displacement_sum(5, DisplacementMode::Oracle).unwrap();
        assert_eq!(r.value, Ratio::from_integer(11));
        assert_eq!(r.equals_refined, Some(true));
        let r = max_displacement_sum(2, DisplacementMode::Formula).unwrap();
        assert_eq!(r.value, Ratio::new(3, 2));
        assert_eq!(
            max_displacement_sum(11, DisplacementMode::Oracle),
            Err(Error::OracleTooLarge { m: 11, limit: 10 })
        );
    }

    #[test]
    fn displacement_oracle_against_bounds() {
        // Even m exceed the refined value: the true maximum is m²/2 − 1.
        let even_goldens = [(2, 1), (4, 7), (6, 17), (8, 31)];
        for m in 1..=8 {
            let r = max_displacement_sum(m, DisplacementMode::Oracle).unwrap();
            assert!(r.value <= displacement_bound(m));
            assert_eq!(displacement_sum(r.witness.as_ref().unwrap()).unwrap(), *r.value.numer());
            if m % 2 == 1 && m >= 3 {
                assert_eq!(r.equals_refined, Some(true), "m = {m}");
            }
        }
        for (m, max) in even_goldens {
            let r = max_displacement_sum(m, DisplacementMode::Oracle).unwrap();
            assert_eq!(r.value, Ratio::from_integer(max));
            assert_eq!(r.equals_refined, Some(false));
        }
    }

    #[test]
    fn lemma27_examples() {
        assert_eq!(
            check_lemma27(3).unwrap(),
            SqrtInequality { x: 3, holds: true, equality: true }
        );
        assert_eq!(
            check_lemma27(4).unwrap(),
            SqrtInequality { x: 4, holds: true, equality: false }
        );
        assert!(check_lemma27(8).unwrap().equality);
        assert_eq!(check_lemma27(0), Err(Error::NonPositive));
    }

    #[test]
    fn lemma27_to_a_hundred_thousand() {
        for x in 1..=100_000u64 {
            let c = check_lemma27(x).unwrap();
            assert!(c.holds);
            let r = (x + 1).sqrt();
            assert_eq!(c.equality, r * r == x + 1, "x = {x}");
        }
    }

    #[test]
    fn f_k_examples() {
        assert_eq!(f_k(6, 5).unwrap(), Ratio::from_integer(8));
        assert_eq!(f_k(3, 3).unwrap(), Ratio::from_integer(6));
        assert_eq!(f_k(10, 6).unwrap(), Ratio::new(41, 4));
        assert_eq!(f_k(10, 2), Err(Error::PoleAtTwo));
        assert_eq!(f_k(10, 1), Err(Error::MOutOfRange(1)));
    }

    #[test]
    fn optimal_m_examples() {
        assert_eq!(optimal_m(3).unwrap(), 4);
        assert_eq!(optimal_m(6).unwrap(), 5);
        assert_eq!(optimal_m(10).unwrap(), 6);
        assert_eq!(optimal_m(9).unwrap(), 6); // 9 = 2·2² + 1, so √15 rounds up
        assert_eq!(optimal_m(1), Err(Error::KTooSmall(1)));
    }

    #[test]
    fn optimal_m_keeps_f_below_the_target() {
        for k in 2..=1_000_000usize {
            let m = optimal_m(k).unwrap();
            let r = (2 * k - 3).sqrt() as u64;
            assert!(f_k(k, m).unwrap() < Ratio::from_integer(2 * (r + 2)), "k = {k}");
        }
    }

    #[test]
    fn upper_bound_replays_the_derivation() {
        for k in 2..=10_000usize {
            let b = bounds_for(k).unwrap();
            let f = f_k(k, optimal_m(k).unwrap()).unwrap();
            let limit = (Ratio::from_integer(k as u64 - 1) + f / 2).floor().to_integer();
            assert!(b.upper as u64 <= limit, "k = {k}");
        }
    }

    #[test]
    fn bounds_examples() {
        let b = bounds_for(3).unwrap();
        assert_eq!((b.lower, b.upper, b.trivial_2k, b.binom_bound), (3, 4, 5, Some(4)));
        let b = bounds_for(10).unwrap();
        assert_eq!((b.lower, b.upper), (13, 14));
        let b = bounds_for(2).unwrap();
        assert_eq!((b.lower, b.upper), (2, 3));
        assert_eq!(known_exact_f(2), Some(2));
        let b = b.with_exact(2);
        assert_eq!(b.epsilon, Some(-1));
        assert_eq!(bounds_for(1), Err(Error::KTooSmall(1)));
        assert_eq!(bounds_for(BINOM_BOUND_MAX_K + 1).unwrap().binom_bound, None);
    }

    #[test]
    fn bounds_are_ordered() {
        for k in 2..=200 {
            let b = bounds_for(k).unwrap();
            assert!(b.lower <= b.upper && b.upper < 2 * k);
            // At k = 2 the binomial bound (2) sits below upper (3).
            if k >= 3 {
                assert!(b.upper <= b.binom_bound.unwrap(), "k = {k}");
            }
        }
        assert_eq!(bounds_for(2).unwrap().binom_bound, Some(2));
    }

    #[test]
    fn bounds_json_shape() {
        let json = serde_json::to_string(&bounds_for(10).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"k":10,"lower":13,"upper":14,"trivial_2k":19,"binom_bound":25,"exact_f":null,"epsilon":null}"#
        );
    }

    proptest! {
        #[test]
        fn fast_lemma23_matches_definition(w in Just((1..=9u32).collect::<Vec<_>>()).prop_shuffle(), k in 1usize..=9) {
            let s = Permutation::from_one_line(&w).unwrap();
            prop_assert_eq!(check_lemma23(&s, k, false).unwrap(), lemma23_naive(&s, k));
        }

        #[test]
        fn displacement_is_within_bound(w in Just((1..=12u32).collect::<Vec<_>>()).prop_shuffle()) {
            let s = displacement_sum(&w).unwrap();
            prop_assert!(Ratio::from_integer(s) <= displacement_bound(12));
        }
    }
}
