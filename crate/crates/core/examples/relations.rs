//! Z2-sums, full relations and the parity checks on a few bundled sets.

use mofs::golden;
use mofs::relations::{check_parity_theorems, detect_any_relation, detect_full_relation, zw_sum_all};

fn main() -> mofs::Result<()> {
    for name in ["ejc_goof", "ex1", "constant_rel", "notmax", "oddmax1", "oddmax2", "pseudo_rel_a"] {
        let set = golden::load(name)?;
        println!("{name}");
        let z = zw_sum_all(&set, 2)?;
        for row in z.rows() {
            println!("  {row:?}");
        }
        match detect_full_relation(&set)? {
            Some(rel) => {
                println!("  {rel}");
                for v in check_parity_theorems(&set, &rel).iter().filter(|v| v.applicable) {
                    println!("    {v}");
                }
            }
            None => println!("  no full relation"),
        }
        if let Some((sub, rel)) = detect_any_relation(&set)? {
            println!("  smallest subset with a relation: {sub:?} ({})", rel.squares());
        }
    }
    Ok(())
}
