//! The inequalities behind the upper bound, evaluated on real data.
//!
//! ```text
//! cargo run --example lemmas
//! ```

use patsep::checkerboard::construct_separator;
use patsep::metrics::{
    between_count, chain_bound, check_lemma23, check_lemma27, distance, max_displacement_sum, DisplacementMode,
};
use patsep::perm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma: Permutation = "341679825".parse()?;
    println!("σ = {sigma}");
    println!("  d(4,2) = {}, d(1,9) = {}", distance(&sigma, 4, 2)?, distance(&sigma, 1, 9)?);
    println!("  t(3,8) = {}, t(1,5) = {}", between_count(&sigma, 3, 8)?, between_count(&sigma, 1, 5)?);

    // Separators satisfy the distance inequality; non-separators often don't.
    for k in [6, 9, 12] {
        let sep = construct_separator(k)?;
        let violations = check_lemma23(&sep, k, false)?;
        let worst = (1..=sep.len())
            .map(|m| chain_bound(&sep, k, m))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|c| c.distance_sum - c.lower_bound)
            .min()
            .unwrap_or(0);
        println!(
            "k = {k:>2}: construction of length {} has {} violations, tightest chain slack {worst}",
            sep.len(),
            violations.len()
        );
    }
    let id = Permutation::identity(8);
    let v = check_lemma23(&id, 5, false)?;
    println!("identity of length 8, k = 5: {} violations, e.g. {:?}", v.len(), v[0]);

    println!("\nlargest Σ|a_i − a_(i+1)| over S_m:");
    for m in 2..=9 {
        let r = max_displacement_sum(m, DisplacementMode::Oracle)?;
        println!(
            "  m = {m}: max {:>3}, bound {:>5}, refined {:>5}{}",
            r.value.to_string(),
            (r.refined + 1).to_string(),
            r.refined.to_string(),
            if r.equals_refined == Some(true) { "  (refined is exact)" } else { "" }
        );
    }

    let equalities: Vec<u64> = (1..=200).filter(|&x| check_lemma27(x).map(|c| c.equality).unwrap_or(false)).collect();
    println!("\n⌊√x⌋ + x/⌊√x⌋ = 2(⌊√x⌋+1) for x ≤ 200 exactly at {equalities:?}");
    Ok(())
}
