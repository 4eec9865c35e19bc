//! P(k,l): the most distinct k-patterns any permutation of length k + l can
//! hold, and Q(k,l) = P(k,l) / C(k+l, k). Q stays at 1 while k + l is short
//! enough for a k-separator to exist.
//!
//! ```text
//! cargo run --release --example pattern_ratio -- 5
//! ```

use patsep::separator::{p_of, PqOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(5);
    let opts = PqOptions {
        n_max: 9,
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    println!("{:>3} {:>3} {:>7} {:>10}  witness", "k", "l", "P", "Q");
    for k in 2..=k_max {
        for l in 0..=opts.n_max - k {
            let rec = p_of(k, l, opts)?;
            println!(
                "{:>3} {:>3} {:>7} {:>10}  {}",
                k,
                l,
                rec.p_value,
                format!("{}/{}", rec.q_num, rec.q_den),
                rec.witness.map(|w| w.to_text()).unwrap_or_default()
            );
        }
    }
    Ok(())
}
