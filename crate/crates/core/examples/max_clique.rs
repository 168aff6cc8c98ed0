//! Maximum clique on a random graph, exactly and under a node budget.

use mofs::search::{max_clique, BitGraph, CliqueOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 300;
    let mut g = BitGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    let exact = max_clique(&g, &CliqueOptions::default());
    println!("omega={} nodes={} exact={}", exact.len(), exact.nodes, exact.exact);
    let capped = max_clique(&g, &CliqueOptions { budget: Some(1000), ..Default::default() });
    println!("budget 1000: clique={} exact={}", capped.len(), capped.exact);
}
