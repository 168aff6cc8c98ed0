//! Largest sets of binary MOFS for small orders and every combination of types.

use mofs::search::{f_value, SearchOptions};

fn main() -> mofs::Result<()> {
    let opts = SearchOptions::default();
    for (n, types) in [
        (3, vec![1]),
        (4, vec![1]),
        (4, vec![2]),
        (4, vec![1, 2]),
        (5, vec![1]),
        (5, vec![2]),
        (5, vec![1, 2]),
    ] {
        let f = f_value(n, &types, &opts)?;
        println!("{f} seeds={} mates={:?}", f.seeds, f.mate_range);
    }
    Ok(())
}
