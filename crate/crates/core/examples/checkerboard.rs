//! Draw a tilted checkerboard: each dark cell shows the value sitting there,
//! columns are positions (left to right) and rows are values (bottom to top).
//!
//! ```text
//! cargo run --example checkerboard -- 4 4
//! cargo run --example checkerboard -- 4 4 linear
//! ```

use patsep::checkerboard::{checkerboard_tilted, GridCell, Tilt};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let r: usize = args.first().map(|a| a.parse()).transpose()?.unwrap_or(4);
    let s: usize = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(r);
    let tilt = match args.get(2).map(String::as_str) {
        Some("linear") => Tilt::Linear,
        Some(p) => Tilt::Wrapped(p.parse()?),
        None => Tilt::default_for(r, s),
    };
    let (layout, sigma) = checkerboard_tilted(r, s, tilt)?;
    let width = sigma.len().to_string().len() + 1;

    println!("{r} x {s} board, tilt {tilt}: {sigma}\n");
    for b in (1..=s).rev() {
        let row: String = (1..=r)
            .map(|a| match layout.value_of(GridCell::new(a, b)) {
                Some(v) => format!("{v:>width$}"),
                None => format!("{:>width$}", "."),
            })
            .collect();
        println!("{b:>3} |{row}");
    }
    println!("    +{}", "-".repeat(r * width));
    Ok(())
}
