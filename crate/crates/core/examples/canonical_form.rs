//! Classes of single squares of order 6, and a random relabelling that lands on the
//! same canonical form.

use mofs::golden;
use mofs::isomorphism::{canonical_form, square_classes, GroupElement, IsoOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mofs::Result<()> {
    let opts = IsoOptions::default();
    for l in 1..=3 {
        println!("n=6 lambda1={l}: {} classes", square_classes(6, l, &opts)?.len());
    }

    let set = golden::load("oddmax1")?;
    let form = canonical_form(&set, &opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let image = GroupElement::random(&set, &opts, &mut rng).apply(&set)?;
    assert_eq!(canonical_form(&image, &opts)?, form);
    println!("oddmax1 canonical bytes: {:02x?}", form.bytes());
    Ok(())
}
