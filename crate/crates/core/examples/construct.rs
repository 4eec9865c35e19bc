//! Build the lower-bound separator for a range of `k` and verify each one.
//!
//! ```text
//! cargo run --release --example construct -- 2 30
//! ```

use std::time::Instant;

use patsep::checkerboard::{construct_verified, plan_for};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let lo = args.next().transpose()?.unwrap_or(2);
    let hi = args.next().transpose()?.unwrap_or(lo.max(16));

    println!("{:>4} {:>5} {:>8} {:>12} {:>10}", "k", "n", "subcase", "tilt", "seconds");
    for k in lo..=hi {
        let plan = plan_for(k)?;
        let start = Instant::now();
        let sigma = construct_verified(k)?;
        println!(
            "{:>4} {:>5} {:>8} {:>12} {:>10.3}",
            k,
            sigma.len(),
            plan.subcase.to_string(),
            plan.tilt.to_string(),
            start.elapsed().as_secs_f64()
        );
        if sigma.len() <= 40 {
            println!("     {sigma}");
        }
    }
    Ok(())
}
