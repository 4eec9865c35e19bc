//! Permutations in which every pattern of a given length occurs at most once.
//!
//! A permutation `σ` of length `n` is a *k-separator* when its `C(n, k)`
//! subsequences of length `k` standardize to pairwise different patterns.
//! The longest k-separator has length `k + ⌊√(2k−3)⌋ + ε_k` with
//! `ε_k ∈ {−1, 0}`; this crate builds the short side, checks the long side
//! and pins `ε_k` down by search where that is feasible.
//!
//! * [`perm`]: permutations, selectors, pattern keys and ranks, symmetries.
//! * [`separator`]: streaming separator checks and pattern-count extremes.
//! * [`checkerboard`]: tilted checkerboards and the explicit constructions.
//! * [`metrics`]: distance statistics, the supporting inequalities, bounds.
//! * [`search`]: exhaustive search and the `ε_k` table.
//! * [`cli`]: the `patsep` command line.
//!
//! ```
//! use patsep::checkerboard::construct_separator;
//! use patsep::separator::is_k_separator;
//!
//! let sigma = construct_separator(10).unwrap();
//! assert_eq!(sigma.len(), 13);
//! assert!(is_k_separator(&sigma, 10).unwrap().is_separator);
//! ```

pub mod checkerboard;
pub mod cli;
pub mod error;
pub mod index;
pub mod metrics;
pub mod perm;
pub mod search;
pub mod separator;

pub use error::{Error, Result};
pub use perm::Permutation;
