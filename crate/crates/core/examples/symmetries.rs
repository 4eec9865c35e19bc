//! The eight diagram symmetries preserve the separator property. Print the
//! orbit of a construction and its canonical (lexicographically smallest)
//! representative.
//!
//! ```text
//! cargo run --example symmetries -- 6
//! ```

use patsep::checkerboard::construct_separator;
use patsep::perm::{is_canonical, Symmetry};
use patsep::separator::is_k_separator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(6);
    let sigma = construct_separator(k)?;
    let mut orbit = Vec::new();
    for g in Symmetry::ALL {
        let image = g.apply(&sigma);
        let ok = is_k_separator(&image, k)?.is_separator;
        // Undoing the symmetry brings back the original.
        assert_eq!(g.inverse_element().apply(&image), sigma);
        println!("{:<28} {image}  separator: {ok}", g.name());
        orbit.push(image);
    }
    orbit.sort();
    orbit.dedup();
    let canonical = &orbit[0];
    assert!(is_canonical(canonical));
    println!("\n{} distinct images; canonical form {canonical}", orbit.len());
    Ok(())
}
