//! Counts binary frequency squares by order and type.

use std::time::Instant;

use mofs::enumeration::{count_squares, EnumSpec};

fn main() -> mofs::Result<()> {
    for n in 2..=6 {
        for l in 1..=n / 2 {
            let t = Instant::now();
            let count = count_squares(&EnumSpec::new(n, l))?;
            println!("n={n} lambda1={l} squares={count} ({:.2?})", t.elapsed());
        }
    }
    Ok(())
}
