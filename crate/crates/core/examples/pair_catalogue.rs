//! Pairs of orthogonal squares of order 6 up to isomorphism.

use std::time::Instant;

use mofs::isomorphism::IsoOptions;
use mofs::search::seed_catalogue;

fn main() -> mofs::Result<()> {
    let opts = IsoOptions::default();
    for shape in [vec![(1, 2)], vec![(2, 2)], vec![(1, 1), (2, 1)], vec![(2, 1), (3, 1)]] {
        let t = Instant::now();
        let seeds = seed_catalogue(6, &shape, &opts)?;
        println!("{shape:?}: {} classes ({:.1?})", seeds.len(), t.elapsed());
    }
    Ok(())
}
