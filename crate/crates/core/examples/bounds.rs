//! Tabulate the bounds on the longest k-separator and replay how the upper
//! bound comes out of minimising `f_k(m) = m + (2k−3)/(m−2)`.
//!
//! ```text
//! cargo run --example bounds -- 2 20
//! ```

use num_rational::Ratio;
use patsep::metrics::{bounds_for, f_k, known_exact_f, optimal_m};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let lo = args.next().transpose()?.unwrap_or(2);
    let hi = args.next().transpose()?.unwrap_or(20);

    println!(
        "{:>4} {:>6} {:>6} {:>6} {:>6} {:>4} {:>10} {:>8}",
        "k", "lower", "upper", "2k-1", "binom", "m*", "f_k(m*)", "F(k)"
    );
    for k in lo..=hi {
        let b = bounds_for(k)?;
        let m = optimal_m(k)?;
        let f = f_k(k, m)?;
        // n <= (k − 1) + f_k(m)/2 must admit `upper` and nothing longer.
        let ceiling = (Ratio::from_integer(k as u64 - 1) + f / 2).floor();
        assert!(b.upper as u64 <= ceiling.to_integer());
        println!(
            "{:>4} {:>6} {:>6} {:>6} {:>6} {:>4} {:>10} {:>8}",
            k,
            b.lower,
            b.upper,
            b.trivial_2k,
            b.binom_bound.map_or("-".into(), |v| v.to_string()),
            m,
            f.to_string(),
            known_exact_f(k).map_or("?".into(), |v| v.to_string()),
        );
    }
    Ok(())
}
