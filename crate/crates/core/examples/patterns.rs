//! Patterns, their Lehmer ranks, and where they occur.
//!
//! ```text
//! cargo run --example patterns -- 341679825 231
//! ```

use patsep::perm::{occurrences, pattern_of, pattern_rank, pattern_unrank, Permutation, Selector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sigma: Permutation = args.first().map_or("341679825", String::as_str).parse()?;
    let pi: Permutation = args.get(1).map_or("231", String::as_str).parse()?;

    let sel = Selector::new(vec![1, 4, 7])?;
    let key = pattern_of(&sigma, &sel)?;
    println!("σ = {sigma}; σ restricted to {sel} has pattern {} (rank {:?})", key.word, key.rank);

    let rank = pattern_rank(&pi)?;
    println!("π = {pi} has rank {rank}; unranking gives back {}", pattern_unrank(rank, pi.len())?);

    let copies: Vec<Selector> = occurrences(&sigma, &pi)?.collect();
    println!("{} copies of π in σ:", copies.len());
    for c in copies.iter().take(10) {
        println!("  {c}");
    }
    if copies.len() > 10 {
        println!("  … and {} more", copies.len() - 10);
    }
    Ok(())
}
