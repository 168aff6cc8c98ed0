//! One row of the order-6 case split: `cargo run --release --example table1 -- <case>`.
//!
//! Rows that are too large to run in full report mate counts of sampled seeds instead.

use mofs::search::table1::{case_spec, run_case, sample_seeds};
use mofs::search::{count_mates, SearchOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mofs::Result<()> {
    let id = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let spec = case_spec(id)?;
    let opts = SearchOptions::default();
    if spec.desk_scale {
        println!("{}", run_case(spec, &opts)?);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(id as u64);
        for seed in sample_seeds(spec, 5, &opts, &mut rng)? {
            println!("sampled seed: {} mates", count_mates(&seed, spec.mate_types)?);
        }
    }
    println!("reference: mates={:?} max={}", spec.reference_mates, spec.reference_max);
    Ok(())
}
