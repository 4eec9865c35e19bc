//! Exhaustive search for a k-separator of a given length, comparing the
//! effect of the pruning rules on the number of explored prefixes.
//!
//! ```text
//! cargo run --release --example search -- 5 7
//! ```

use std::time::Instant;

use patsep::search::{exists_separator, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let k = args.next().transpose()?.unwrap_or(5);
    let n = args.next().transpose()?.unwrap_or(7);

    for (prune_distance, symmetry_break) in [(false, false), (false, true), (true, false), (true, true)] {
        let cfg = SearchConfig {
            prune_distance,
            symmetry_break,
            ..SearchConfig::new(k, n)
        };
        let start = Instant::now();
        let outcome = exists_separator(&cfg)?;
        println!(
            "distance prune {:<5} symmetry break {:<5} nodes {:>9}  {:>8.3}s  {}",
            prune_distance,
            symmetry_break,
            outcome.nodes,
            start.elapsed().as_secs_f64(),
            outcome
                .witness
                .map_or_else(|| format!("no {k}-separator of length {n}"), |w| format!("found {w}"))
        );
    }
    Ok(())
}
