//! Block-structure congruences that rule out extensions, checked against brute-force
//! mate generation.

use mofs::golden;
use mofs::relations::{compatible_block, excluded_binary_types};
use mofs::search::{count_mates, is_maximal, is_type_maximal};

fn main() -> mofs::Result<()> {
    let set = golden::load("ex_p_rel")?;
    if let Some(block) = compatible_block(&set, 3)? {
        println!("ex_p_rel: {block}");
    }
    println!("  excluded mod 3: {:?}", excluded_binary_types(&set, 3)?);
    println!("  maximal: {}", is_maximal(&set)?);

    for name in ["notmax", "pseudo_rel_a", "pseudo_rel_b"] {
        let set = golden::load(name)?;
        println!("{name}: type-maximal={} maximal={}", is_type_maximal(&set)?, is_maximal(&set)?);
    }

    let big = golden::load("oddmax2")?.concat(&golden::load("oddmax2_companion")?)?;
    println!("oddmax2 + companion: k={} mates={}", big.len(), count_mates(&big, &[1, 2, 3])?);
    Ok(())
}
