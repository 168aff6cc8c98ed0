//! Parses every bundled set and checks orthogonality and the cardinality bound.

use mofs::golden;
use mofs::orthogonality::{set_bound, verify_mofs, VerifyMode};

fn main() -> mofs::Result<()> {
    for name in golden::names() {
        let set = golden::load(name)?;
        let report = verify_mofs(&set, VerifyMode::Exhaustive);
        let bound = set_bound(&set);
        println!(
            "{name:24} n={} k={:2} orthogonal={} sum={}/{}",
            set.order(),
            set.len(),
            report.is_ok(),
            bound.sum,
            bound.bound
        );
    }
    Ok(())
}
