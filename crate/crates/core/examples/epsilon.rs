//! Compute `F(k)` and `ε_k` exactly for a range of `k`, optionally auditing
//! that nothing one longer exists, and append the rows to a CSV file.
//!
//! ```text
//! cargo run --release --example epsilon -- 2 6 --audit --out results/epsilon.csv
//! ```

use std::path::PathBuf;

use patsep::search::{append_results, exact_f, ExactOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let numbers: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
    let k_from = numbers.first().copied().unwrap_or(2);
    let k_to = numbers.get(1).copied().unwrap_or(k_from.max(5));
    let out = args
        .iter()
        .position(|a| a == "--out")
        .and_then(|i| args.get(i + 1))
        .map(PathBuf::from);
    let opts = ExactOptions {
        audit: args.iter().any(|a| a == "--audit"),
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..Default::default()
    };

    println!("{:>3} {:>4} {:>4} {:>12} {:>9}  witness", "k", "F", "eps", "nodes", "seconds");
    for k in k_from..=k_to {
        let entry = exact_f(k, &opts)?;
        println!(
            "{:>3} {:>4} {:>4} {:>12} {:>9.2}  {}",
            entry.k, entry.f_exact, entry.epsilon, entry.nodes, entry.seconds, entry.witness
        );
        if let Some(path) = &out {
            append_results(path, std::slice::from_ref(&entry))?;
        }
    }
    Ok(())
}
