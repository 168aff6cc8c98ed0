//! Superimposed decimal form of the 10 permutation squares of order 6, and the
//! permutation array they correspond to.

use mofs::encoding::{decode_decimal, encode_decimal};
use mofs::orthogonality::{epa_from_mofs, hamming};
use mofs::golden;

fn main() -> mofs::Result<()> {
    let set = golden::load("case0_type1_10")?;
    let grid = encode_decimal(&set)?;
    for row in &grid {
        println!("{}", row.iter().map(|v| format!("{v:4}")).collect::<String>());
    }
    println!("{} = {:010b}", grid[0][0], grid[0][0]);
    let sigs: Vec<_> = set.squares().iter().map(|s| s.sig().clone()).collect();
    assert_eq!(decode_decimal(&grid, set.len(), &sigs)?, set);

    let epa = epa_from_mofs(&set)?;
    let d: Vec<usize> = (1..epa.len()).map(|j| hamming(&epa[0], &epa[j])).collect();
    println!("distances from the first row: {d:?}");
    Ok(())
}
