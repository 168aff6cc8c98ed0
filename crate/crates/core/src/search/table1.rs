//! The order-6 case split: each case fixes how many squares of each type the seed set
//! holds and which types mates may have.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::clique::{max_clique, CliqueOptions};
use super::mates::{
    best_over_seeds, count_mates, generate_mates, normalize_types, orthogonality_graph, seed_catalogue,
    SearchOptions,
};
use super::pairs::PairClasses;
use crate::error::{Error, Result};
use crate::square::{FrequencySquare, MofsSet};

pub const ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseSpec {
    pub id: usize,
    /// Seed squares of type 1, 2 and 3.
    pub seed: [usize; 3],
    pub mate_types: &'static [usize],
    /// Published smallest and largest mate counts over all seeds.
    pub reference_mates: (usize, usize),
    /// Published size of the largest extension.
    pub reference_max: usize,
    /// Small enough to run in full by default.
    pub desk_scale: bool,
}

impl CaseSpec {
    pub fn shape(&self) -> Vec<(usize, usize)> {
        (1..=3).zip(self.seed).filter(|&(_, c)| c > 0).collect()
    }

    pub fn seed_size(&self) -> usize {
        self.seed.iter().sum()
    }
}

const fn case(
    id: usize,
    seed: [usize; 3],
    mate_types: &'static [usize],
    reference_mates: (usize, usize),
    reference_max: usize,
    desk_scale: bool,
) -> CaseSpec {
    CaseSpec {
        id,
        seed,
        mate_types,
        reference_mates,
        reference_max,
        desk_scale,
    }
}

pub const CASES: [CaseSpec; 11] = [
    case(1, [2, 0, 0], &[1], (93, 96), 10, true),
    case(2, [0, 2, 0], &[2], (0, 7969), 14, true),
    case(3, [0, 0, 2], &[3], (5937, 7413), 17, false),
    case(4, [1, 1, 0], &[1, 2], (4113, 5264), 14, false),
    case(5, [1, 0, 1], &[1, 3], (8307, 8997), 15, false),
    case(6, [0, 1, 1], &[3], (0, 9696), 14, false),
    case(7, [0, 2, 1], &[3], (0, 6528), 15, false),
    case(8, [0, 3, 0], &[2, 3], (2201, 10788), 15, false),
    case(9, [1, 1, 0], &[3], (8358, 9602), 14, false),
    case(10, [1, 2, 0], &[2, 3], (2206, 6499), 14, false),
    case(11, [2, 1, 0], &[1, 2, 3], (3257, 3934), 13, false),
];

pub fn case_spec(id: usize) -> Result<&'static CaseSpec> {
    CASES
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::InvalidSpec(format!("no case {id}")))
}

/// One line of the table as computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub case: usize,
    pub seeds: usize,
    pub mates: (usize, usize),
    pub max: usize,
    pub exact: bool,
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TABLE1 case={} seeds={} mates=({},{}) max={} exact={}",
            self.case, self.seeds, self.mates.0, self.mates.1, self.max, self.exact
        )
    }
}

/// All seed sets of the case up to isomorphism.
pub fn case_seeds(spec: &CaseSpec, opts: &SearchOptions) -> Result<Vec<MofsSet>> {
    seed_catalogue(ORDER, &spec.shape(), &opts.iso)
}

/// Smallest and largest mate count over `seeds`.
pub fn mate_range(spec: &CaseSpec, seeds: &[MofsSet]) -> Result<(usize, usize)> {
    use rayon::prelude::*;
    let counts = seeds
        .par_iter()
        .map(|s| count_mates(s, spec.mate_types).map(|c| c as usize))
        .collect::<Result<Vec<_>>>()?;
    let lo = counts.iter().copied().min().ok_or(Error::EmptyCatalogue)?;
    Ok((lo, counts.iter().copied().max().unwrap_or(lo)))
}

/// Full row: catalogue, mate counts and the largest extension over all seeds.
pub fn run_case(spec: &CaseSpec, opts: &SearchOptions) -> Result<Table1Row> {
    if spec.seed_size() == 2 {
        let shape = spec.shape();
        let a = shape[0].0;
        let b = shape.last().map(|s| s.0).unwrap_or(a);
        let r = orderly_pair_search(ORDER, a, b, spec.mate_types, opts)?;
        return Ok(Table1Row {
            case: spec.id,
            seeds: r.seeds,
            mates: r.mates,
            max: r.max,
            exact: r.exact,
        });
    }
    let seeds = case_seeds(spec, opts)?;
    let best = best_over_seeds(ORDER, spec.mate_types, &seeds, opts, false)?;
    Ok(Table1Row {
        case: spec.id,
        seeds: seeds.len(),
        mates: best.mate_range,
        max: best.value,
        exact: best.exact,
    })
}

/// Random seed sets of the case's shape, each built from a random class representative
/// of the first type extended by uniformly chosen mates. Not uniform over classes.
pub fn sample_seeds<R: Rng + ?Sized>(spec: &CaseSpec, samples: usize, opts: &SearchOptions, rng: &mut R) -> Result<Vec<MofsSet>> {
    let mut steps: Vec<usize> = Vec::new();
    for (l, c) in spec.shape() {
        steps.extend(std::iter::repeat(l).take(c));
    }
    let first = seed_catalogue(ORDER, &[(steps[0], 1)], &opts.iso)?;
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let mut set = first.choose(rng).ok_or(Error::EmptyCatalogue)?.clone();
        let mut ok = true;
        for &l in &steps[1..] {
            let mates = generate_mates(&set, &[l])?;
            match mates.choose(rng) {
                Some(m) => set.push(m.clone())?,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(set);
        }
    }
    Ok(out)
}

/// Result of extending every pair class of one composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSearch {
    pub seeds: usize,
    /// Smallest and largest unrestricted mate count.
    pub mates: (usize, usize),
    pub max: usize,
    pub witness: MofsSet,
    pub exact: bool,
    /// Clique search nodes over all seeds.
    pub nodes: u64,
}

/// Largest set containing a pair with one square of type `a` and one of type `b`
/// whose remaining squares have types in `mate_types`.
///
/// Seeds are processed from the most common pair class down; each is extended only
/// by mates and edges whose pairs of the seed's composition belong to classes not yet
/// processed, and the clique search for each seed only looks for sets at least as
/// large as the best so far.
pub fn orderly_pair_search(n: usize, a: usize, b: usize, mate_types: &[usize], opts: &SearchOptions) -> Result<PairSearch> {
    use rayon::prelude::*;
    let mate_types = normalize_types(n, mate_types)?;
    let pc = PairClasses::build(n, a, b, &opts.iso)?;
    let counts = pc
        .seeds
        .par_iter()
        .map(|s| count_mates(s, &mate_types).map(|c| c as usize))
        .collect::<Result<Vec<_>>>()?;
    let mates = (
        counts.iter().copied().min().ok_or(Error::EmptyCatalogue)?,
        counts.iter().copied().max().unwrap_or(0),
    );
    let order = pc.processing_order();
    let mut rank = vec![0usize; order.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    let mut best = 0usize;
    let mut witness = None;
    let mut exact = true;
    let mut nodes = 0;
    for (pos, &i) in order.iter().enumerate() {
        let seed = &pc.seeds[i];
        let allowed = |c: Option<u32>| c.map_or(true, |c| rank[c as usize] >= pos);
        let fixed = seed.squares().iter().map(|s| pc.locate(s)).collect::<Result<Vec<_>>>()?;
        let located = generate_mates(seed, &mate_types)?
            .into_par_iter()
            .map(|m| pc.locate(&m).map(|l| (m, l)))
            .collect::<Result<Vec<_>>>()?;
        let (vertices, locs): (Vec<FrequencySquare>, Vec<_>) = located
            .into_iter()
            .filter(|(_, l)| fixed.iter().all(|f| allowed(pc.class_of(f, l))))
            .unzip();
        let ortho = orthogonality_graph(&vertices);
        let graph = super::clique::BitGraph::from_fn(vertices.len(), |u, v| {
            ortho.has_edge(u, v) && allowed(pc.class_of(&locs[u], &locs[v]))
        });
        let floor = if witness.is_some() { (best + 1).saturating_sub(seed.len()) } else { 0 };
        let clique = max_clique(&graph, &CliqueOptions { budget: opts.budget, floor, ..Default::default() });
        nodes += clique.nodes;
        exact &= clique.exact;
        if clique.is_empty() && floor > 0 {
            continue;
        }
        let size = seed.len() + clique.len();
        if witness.is_none() || size > best {
            let mut set = seed.clone();
            for &v in &clique.vertices {
                set.push(vertices[v].clone())?;
            }
            best = size;
            witness = Some(set);
        }
    }
    Ok(PairSearch {
        seeds: pc.seeds.len(),
        mates,
        max: best,
        witness: witness.ok_or(Error::EmptyCatalogue)?,
        exact,
        nodes,
    })
}
