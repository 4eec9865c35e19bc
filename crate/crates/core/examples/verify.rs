//! Check permutations for the k-separator property and explain failures.
//!
//! ```text
//! cargo run --example verify -- 3 2413 12345 "5 2 7 4 1 6 3"
//! ```

use patsep::perm::{pattern_of, Permutation};
use patsep::separator::{check_separator, ScanMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().as_deref().unwrap_or("3").parse()?;
    let mut perms: Vec<Permutation> = args.map(|a| a.parse()).collect::<Result<_, _>>()?;
    if perms.is_empty() {
        perms = vec!["2413".parse()?, "12345".parse()?];
    }

    for sigma in &perms {
        let report = check_separator(sigma, k, ScanMode::Full)?;
        match &report.witness {
            None => println!("{sigma}: {k}-separator ({} distinct patterns)", report.distinct_count),
            Some((first, again)) => {
                // Both selectors standardize to the same word.
                let pattern = pattern_of(sigma, first)?.word;
                println!(
                    "{sigma}: not a {k}-separator; pattern {pattern} at {first} and again at {again} \
                     ({} distinct of {} selectors)",
                    report.distinct_count,
                    patsep::perm::binomial(sigma.len(), k)
                );
            }
        }
    }
    Ok(())
}
