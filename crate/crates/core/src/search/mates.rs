//! Mates of a set, the orthogonality graph on them, and maximum extensions.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::clique::{max_clique, BitGraph, CliqueOptions};
use crate::enumeration::{collect_squares, count_squares, EnumSpec};
use crate::error::{Error, Result};
use crate::isomorphism::{augment, square_classes, IsoOptions};
use crate::orthogonality::{verify_mofs, VerifyMode};
use crate::square::{FrequencySquare, MofsSet};

/// Sorted, de-duplicated types `λ1 <= n/2`. Larger values are folded onto their
/// complement type.
pub fn normalize_types(n: usize, types: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &l in types {
        if l == 0 || l >= n {
            return Err(Error::InvalidSpec(format!("type {l} is not a binary type of order {n}")));
        }
        out.push(l.min(n - l));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn mate_spec(base: &MofsSet, lambda1: usize) -> EnumSpec {
    EnumSpec::new(base.order(), lambda1)
        .dedup(true)
        .mates_of(base.squares())
}

/// Every square of a type in `types` orthogonal to all of `base`, one of each
/// complementary pair for balanced types. Grouped by type, then in enumeration order.
pub fn generate_mates(base: &MofsSet, types: &[usize]) -> Result<Vec<FrequencySquare>> {
    let mut out = Vec::new();
    for l in normalize_types(base.order(), types)? {
        out.extend(collect_squares(&mate_spec(base, l))?);
    }
    Ok(out)
}

pub fn count_mates(base: &MofsSet, types: &[usize]) -> Result<u64> {
    normalize_types(base.order(), types)?
        .into_iter()
        .map(|l| count_squares(&mate_spec(base, l)))
        .sum()
}

/// A square flattened to `n*n` bits, for fast overlap counts.
fn pack(sq: &FrequencySquare) -> Vec<u64> {
    let n = sq.order();
    let mut out = vec![0u64; (n * n).div_ceil(64)];
    for (i, &c) in sq.cells().iter().enumerate() {
        if c == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

/// `Γ_F`: mates as vertices, orthogonal pairs as edges.
#[derive(Debug, Clone)]
pub struct MateGraph {
    pub base: MofsSet,
    pub types: Vec<usize>,
    pub vertices: Vec<FrequencySquare>,
    pub graph: BitGraph,
}

impl MateGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Orthogonality graph on arbitrary binary squares of one order.
pub fn orthogonality_graph(squares: &[FrequencySquare]) -> BitGraph {
    let packed: Vec<Vec<u64>> = squares.iter().map(pack).collect();
    let ones: Vec<usize> = squares.iter().map(|s| s.sig().freqs()[1]).collect();
    BitGraph::from_fn(squares.len(), |u, v| {
        let overlap: u32 = packed[u].iter().zip(&packed[v]).map(|(a, b)| (a & b).count_ones()).sum();
        overlap as usize == ones[u] * ones[v]
    })
}

pub fn build_mate_graph(base: &MofsSet, types: &[usize]) -> Result<MateGraph> {
    let vertices = generate_mates(base, types)?;
    if vertices.iter().any(|v| !v.is_binary()) || !base.is_binary() {
        return Err(Error::NotBinary);
    }
    let graph = orthogonality_graph(&vertices);
    Ok(MateGraph {
        base: base.clone(),
        types: normalize_types(base.order(), types)?,
        vertices,
        graph,
    })
}

/// A largest set containing `base` whose other squares have types in `types`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub set: MofsSet,
    pub mates: usize,
    pub added: usize,
    pub exact: bool,
    pub nodes: u64,
}

pub fn extend_to_maximum(base: &MofsSet, types: &[usize], budget: Option<u64>) -> Result<Extension> {
    let g = build_mate_graph(base, types)?;
    let clique = max_clique(&g.graph, &CliqueOptions { budget, ..Default::default() });
    let mut set = base.clone();
    for &v in &clique.vertices {
        set.push(g.vertices[v].clone())?;
    }
    Ok(Extension {
        set,
        mates: g.len(),
        added: clique.len(),
        exact: clique.exact,
        nodes: clique.nodes,
    })
}

/// No binary square of any type extends the set, which for binary sets is the same
/// as no frequency square at all extending it.
pub fn is_maximal(set: &MofsSet) -> Result<bool> {
    let n = set.order();
    let all: Vec<usize> = (1..=n / 2).collect();
    Ok(count_mates(set, &all)? == 0)
}

/// No square of a type already present in the set extends it.
pub fn is_type_maximal(set: &MofsSet) -> Result<bool> {
    Ok(count_mates(set, &set.binary_classes()?)? == 0)
}

/// `f(n; Λ)` together with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FValue {
    pub n: usize,
    pub types: Vec<usize>,
    pub value: usize,
    pub witness: MofsSet,
    /// Every clique search finished inside its budget.
    pub exact: bool,
    pub seeds: usize,
    /// Smallest and largest mate count over the seeds.
    pub mate_range: (usize, usize),
}

impl fmt::Display for FValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: Vec<String> = self.types.iter().map(usize::to_string).collect();
        write!(
            f,
            "FVALUE n={} lambda={{{}}} value={} exact={}",
            self.n,
            types.join(","),
            self.value,
            self.exact
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node budget per clique search.
    pub budget: Option<u64>,
    pub iso: IsoOptions,
}

/// Every set containing exactly `counts[i]` squares of type `types[i]`, up to
/// isomorphism, built by repeated augmentation.
pub fn seed_catalogue(n: usize, shape: &[(usize, usize)], iso: &IsoOptions) -> Result<Vec<MofsSet>> {
    let mut steps: Vec<usize> = Vec::new();
    for &(l, c) in shape {
        let l = normalize_types(n, &[l])?[0];
        steps.extend(std::iter::repeat(l).take(c));
    }
    let Some((&first, rest)) = steps.split_first() else {
        return Ok(vec![MofsSet::empty(n)?]);
    };
    let mut sets: Vec<MofsSet> = square_classes(n, first, iso)?
        .into_iter()
        .map(|s| MofsSet::new(n, vec![s]))
        .collect::<Result<_>>()?;
    for &l in rest {
        sets = augment(&sets, l, iso)?.sets;
    }
    Ok(sets)
}

struct SeedOutcome {
    valid: bool,
    set: MofsSet,
    exact: bool,
    mates: usize,
}

/// `max |seed| + ω(Γ_seed)` over the seeds, with mates drawn from `types`.
///
/// Seeds should contain one square of each type in `types`; a result whose types do not
/// cover `types` is discarded. Searches share a lower bound so later seeds only look
/// for cliques at least as large as the best so far; the witness is the first seed in
/// catalogue order that reaches the maximum.
pub fn f_value_with_seeds(n: usize, types: &[usize], seeds: &[MofsSet], opts: &SearchOptions) -> Result<FValue> {
    best_over_seeds(n, types, seeds, opts, true)
}

pub(crate) fn best_over_seeds(
    n: usize,
    types: &[usize],
    seeds: &[MofsSet],
    opts: &SearchOptions,
    require_cover: bool,
) -> Result<FValue> {
    let types = normalize_types(n, types)?;
    if seeds.is_empty() {
        return Err(Error::EmptyCatalogue);
    }
    let best = AtomicUsize::new(0);
    let results = seeds
        .par_iter()
        .map(|seed| -> Result<SeedOutcome> {
            let g = build_mate_graph(seed, &types)?;
            let floor = best.load(Ordering::Relaxed).saturating_sub(seed.len());
            let clique = max_clique(&g.graph, &CliqueOptions { budget: opts.budget, floor, ..Default::default() });
            let mut set = seed.clone();
            for &v in &clique.vertices {
                set.push(g.vertices[v].clone())?;
            }
            let classes = set.binary_classes()?;
            let covers = !require_cover || types.iter().all(|l| classes.contains(l));
            let reached = !(clique.is_empty() && floor > 0);
            let valid = covers && reached;
            if valid {
                best.fetch_max(set.len(), Ordering::Relaxed);
            }
            Ok(SeedOutcome {
                valid,
                set,
                exact: clique.exact,
                mates: g.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut value = 0;
    let mut witness = None;
    let mut exact = true;
    let mut range = (usize::MAX, 0);
    for out in results {
        exact &= out.exact;
        range = (range.0.min(out.mates), range.1.max(out.mates));
        if out.valid && (witness.is_none() || out.set.len() > value) {
            value = out.set.len();
            witness = Some(out.set);
        }
    }
    let witness = witness.ok_or(Error::EmptyCatalogue)?;
    debug_assert!(verify_mofs(&witness, VerifyMode::FailFast).is_ok());
    Ok(FValue {
        n,
        types,
        value,
        witness,
        exact,
        seeds: seeds.len(),
        mate_range: range,
    })
}

/// `f(n; Λ)` with seeds holding one square of each type in `types`.
pub fn f_value(n: usize, types: &[usize], opts: &SearchOptions) -> Result<FValue> {
    let types = normalize_types(n, types)?;
    let shape: Vec<(usize, usize)> = types.iter().map(|&l| (l, 1)).collect();
    let seeds = seed_catalogue(n, &shape, &opts.iso)?;
    f_value_with_seeds(n, &types, &seeds, opts)
}
