//! Independent oracles and corpus builders shared by the integration tests.
#![allow(dead_code)]

use mofs::enumeration::{collect_squares, EnumSpec};
use mofs::orthogonality::{is_orthogonal_pair, verify_mofs, VerifyMode};
use mofs::search::generate_mates;
use mofs::{FrequencySquare, MofsSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Row masks of every `n x n` 0/1 array whose rows and columns all hold `l` ones,
/// found by trying every array.
pub fn brute_force_squares(n: usize, l: usize) -> Vec<Vec<u64>> {
    assert!(n * n <= 20, "brute force is for tiny orders");
    let row_mask = (1u64 << n) - 1;
    let mut out = Vec::new();
    for bits in 0u64..1 << (n * n) {
        let rows: Vec<u64> = (0..n).map(|r| (bits >> (r * n)) & row_mask).collect();
        let rows_ok = rows.iter().all(|r| r.count_ones() as usize == l);
        let cols_ok = (0..n).all(|c| rows.iter().filter(|r| (*r >> c) & 1 == 1).count() == l);
        if rows_ok && cols_ok {
            out.push(rows);
        }
    }
    out
}

/// Largest clique size of a graph given by adjacency masks, trying every subset.
pub fn brute_force_omega(adj: &[u32]) -> usize {
    let n = adj.len();
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        let clique = (0..n).filter(|&v| (set >> v) & 1 == 1).all(|v| set & !(adj[v] | 1 << v) == 0);
        if clique {
            best = size;
        }
    }
    best
}

/// Every square of type `l` orthogonal to all of `base`, by filtering the full list.
pub fn filtered_mates(base: &[FrequencySquare], all: &[FrequencySquare]) -> Vec<FrequencySquare> {
    all.iter()
        .filter(|s| base.iter().all(|b| is_orthogonal_pair(b, s).unwrap()))
        .cloned()
        .collect()
}

/// Random sets of MOFS of order `n` with 1 to `max_k` squares of any binary type,
/// grown one random mate at a time. Squares with `λ1 > n/2` appear through random
/// complementation.
pub fn random_sets<R: Rng>(n: usize, count: usize, max_k: usize, rng: &mut R) -> Vec<MofsSet> {
    let by_type: Vec<Vec<FrequencySquare>> = (1..=n / 2)
        .map(|l| collect_squares(&EnumSpec::new(n, l)).unwrap())
        .collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(1..=max_k);
        let first = by_type.choose(rng).unwrap().choose(rng).unwrap().clone();
        let mut set = MofsSet::new(n, vec![maybe_complement(first, rng)]).unwrap();
        while set.len() < k {
            let l = rng.gen_range(1..=n / 2);
            let mates = generate_mates(&set, &[l]).unwrap();
            let Some(m) = mates.choose(rng) else { break };
            set.push(maybe_complement(m.clone(), rng)).unwrap();
        }
        debug_assert!(verify_mofs(&set, VerifyMode::FailFast).is_ok());
        out.push(set);
    }
    out
}

fn maybe_complement<R: Rng>(sq: FrequencySquare, rng: &mut R) -> FrequencySquare {
    if rng.gen_bool(0.5) {
        sq.complement().unwrap()
    } else {
        sq
    }
}

/// Random subsets of `set` with 1 to `max_k` squares.
pub fn random_subsets<R: Rng>(set: &MofsSet, count: usize, max_k: usize, rng: &mut R) -> Vec<MofsSet> {
    let idx: Vec<usize> = (0..set.len()).collect();
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_k.min(set.len()));
            let mut pick: Vec<usize> = idx.choose_multiple(rng, k).copied().collect();
            pick.sort_unstable();
            set.subset(&pick).unwrap()
        })
        .collect()
}
