//! Pair classes and the orderly restriction they allow.
//!
//! Number the isomorphism classes of pairs with a fixed type composition. Any set
//! containing such pairs can be mapped so that its lowest-numbered pair is the
//! catalogue representative; every other pair of that composition in the image then
//! has a number at least as large. So when extending representative `i` it is enough
//! to keep mates, and edges, whose pairs of that composition are numbered `>= i`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::enumeration::{enumerate_squares, EnumSpec};
use crate::error::{Error, Result};
use crate::isomorphism::{canonical_form, square_classes, CanonicalForm, GroupElement, IsoOptions, SymbolMode};
use crate::square::{FrequencySquare, MofsSet};

/// Largest order whose squares fit one word.
const PACK_MAX: usize = 8;

fn pack(sq: &FrequencySquare) -> u64 {
    let n = sq.order();
    sq.cells()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| acc | u64::from(c == 1) << i)
        & if n * n == 64 { u64::MAX } else { (1 << (n * n)) - 1 }
}

fn transpose_packed(n: usize, x: u64) -> u64 {
    let mut out = 0;
    for r in 0..n {
        for c in 0..n {
            out |= (x >> (r * n + c) & 1) << (c * n + r);
        }
    }
    out
}

/// A group element restricted to rows, columns and transposition, applied to packed
/// squares.
#[derive(Debug, Clone)]
struct FastMap {
    transpose: bool,
    row_perm: Vec<usize>,
    col_lut: Vec<u8>,
}

impl FastMap {
    fn new(n: usize, g: &GroupElement) -> Self {
        let col_lut = (0..1usize << n)
            .map(|row| (0..n).fold(0u8, |acc, j| acc | (((row >> g.col_perm[j]) & 1) as u8) << j))
            .collect();
        FastMap {
            transpose: g.transpose,
            row_perm: g.row_perm.clone(),
            col_lut,
        }
    }

    fn apply(&self, n: usize, x: u64) -> u64 {
        let x = if self.transpose { transpose_packed(n, x) } else { x };
        let mask = (1u64 << n) - 1;
        self.row_perm.iter().enumerate().fold(0u64, |acc, (i, &r)| {
            acc | u64::from(self.col_lut[((x >> (r * n)) & mask) as usize]) << (i * n)
        })
    }
}

/// A square located relative to its class representative.
#[derive(Debug, Clone)]
pub(crate) struct Located {
    lambda1: usize,
    rep: usize,
    map: FastMap,
    packed: u64,
}

/// Class numbers for the pairs of one type composition.
pub(crate) struct PairClasses {
    n: usize,
    types: (usize, usize),
    opts: IsoOptions,
    /// Single-square class representatives per type, keyed by canonical code.
    singles: HashMap<usize, HashMap<Vec<u64>, usize>>,
    /// `(type of the representative, representative, packed mate) -> class`.
    tables: HashMap<(usize, usize), HashMap<u64, u32>>,
    pub(crate) seeds: Vec<MofsSet>,
    /// Per class: how many (seed, square, mate) triples put the square and the mate in
    /// this class.
    pub(crate) frequency: Vec<u64>,
}

impl PairClasses {
    fn complement_key(&self, lambda1: usize, x: u64) -> u64 {
        let balanced = 2 * lambda1 == self.n;
        if balanced && self.opts.symbols != SymbolMode::None {
            let full = (1u64 << (self.n * self.n)) - 1;
            x.min(x ^ full)
        } else {
            x
        }
    }

    /// Builds the catalogue of pairs with one square of type `a` and one of type `b`.
    pub(crate) fn build(n: usize, a: usize, b: usize, opts: &IsoOptions) -> Result<Self> {
        if n > PACK_MAX {
            return Err(Error::UnsupportedOrder(n));
        }
        let (a, b) = (a.min(b), a.max(b));
        let mut out = PairClasses {
            n,
            types: (a, b),
            opts: *opts,
            singles: HashMap::new(),
            tables: HashMap::new(),
            seeds: Vec::new(),
            frequency: Vec::new(),
        };
        let mut reps_by_type = HashMap::new();
        for l in [a, b] {
            if reps_by_type.contains_key(&l) {
                continue;
            }
            let reps = square_classes(n, l, opts)?;
            let mut codes = HashMap::new();
            for (i, r) in reps.iter().enumerate() {
                codes.insert(canonical_form(&MofsSet::new(n, vec![r.clone()])?, opts)?.code, i);
            }
            out.singles.insert(l, codes);
            reps_by_type.insert(l, reps);
        }
        let mut index: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut slots: HashMap<(usize, usize), u64> = HashMap::new();
        let directions: Vec<(usize, usize)> = if a == b { vec![(a, a)] } else { vec![(a, b), (b, a)] };
        for (from, to) in directions {
            for (ri, rep) in reps_by_type[&from].iter().enumerate() {
                let base = MofsSet::new(n, vec![rep.clone()])?;
                let spec = EnumSpec::new(n, to).mates_of(base.squares());
                let mut mates: Vec<Vec<u64>> = Vec::new();
                enumerate_squares(&spec, |rows| mates.push(rows.to_vec()))?;
                let forms: Vec<(u64, MofsSet, CanonicalForm, usize)> = mates
                    .par_iter()
                    .map(|rows| {
                        let sq = FrequencySquare::from_masks(n, rows)?;
                        let key = out.complement_key(to, pack(&sq));
                        let other = out.locate(&sq)?.rep;
                        let set = base.with(sq)?;
                        let form = canonical_form(&set, opts)?;
                        Ok((key, set, form, other))
                    })
                    .collect::<Result<_>>()?;
                let mut table = HashMap::with_capacity(forms.len());
                for (key, set, form, other) in forms {
                    let next = out.seeds.len() as u32;
                    let id = *index.entry(form.code).or_insert(next);
                    if id == next {
                        out.seeds.push(set);
                        *slots.entry((from, ri)).or_insert(0) += 1;
                        *slots.entry((to, other)).or_insert(0) += 1;
                    }
                    table.insert(key, id);
                }
                out.tables.insert((from, ri), table);
            }
        }
        // how often each class turns up among the vertices of all seed graphs
        out.frequency = vec![0; out.seeds.len()];
        for (at, table) in &out.tables {
            let weight = slots.get(at).copied().unwrap_or(0);
            for &id in table.values() {
                out.frequency[id as usize] += weight;
            }
        }
        Ok(out)
    }

    pub(crate) fn locate(&self, sq: &FrequencySquare) -> Result<Located> {
        let lambda1 = sq.sig().freqs()[1];
        let l = lambda1.min(self.n - lambda1);
        let set = MofsSet::new(self.n, vec![sq.clone()])?;
        let form = canonical_form(&set, &self.opts)?;
        let rep = self
            .singles
            .get(&l)
            .and_then(|m| m.get(&form.code))
            .copied()
            .ok_or_else(|| Error::InvalidSpec("square type outside the catalogue".into()))?;
        Ok(Located {
            lambda1: l,
            rep,
            map: FastMap::new(self.n, &form.ops),
            packed: pack(sq),
        })
    }

    /// Class number of `{p, q}`, or `None` when the pair has another composition.
    pub(crate) fn class_of(&self, p: &Located, q: &Located) -> Option<u32> {
        let (x, y) = (p.lambda1, q.lambda1);
        if (x.min(y), x.max(y)) != self.types {
            return None;
        }
        let image = p.map.apply(self.n, q.packed);
        let key = self.complement_key(y, image);
        self.tables.get(&(x, p.rep))?.get(&key).copied()
    }

    /// Seed numbers in the order they should be processed. Later seeds are restricted
    /// to the classes that follow them, so the classes that prune the most go first.
    pub(crate) fn processing_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.seeds.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.frequency[i]), i));
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_map_matches_group_action() {
        let sq = FrequencySquare::from_masks(4, &[0b0011, 0b0110, 0b1100, 0b1001]).unwrap();
        let g = GroupElement {
            transpose: true,
            row_perm: vec![2, 0, 3, 1],
            col_perm: vec![1, 3, 0, 2],
            complement: vec![false],
            square_perm: vec![0],
        };
        let img = g.apply(&MofsSet::new(4, vec![sq.clone()]).unwrap()).unwrap();
        assert_eq!(FastMap::new(4, &g).apply(4, pack(&sq)), pack(&img.squares()[0]));
    }

    #[test]
    fn class_lookup_agrees_with_canonical_forms() {
        let opts = IsoOptions::default();
        let pc = PairClasses::build(4, 1, 2, &opts).unwrap();
        for seed in &pc.seeds {
            let s = seed.squares();
            let (p, q) = (pc.locate(&s[0]).unwrap(), pc.locate(&s[1]).unwrap());
            let fwd = pc.class_of(&p, &q).unwrap();
            let back = pc.class_of(&q, &p).unwrap();
            assert_eq!(fwd, back);
            assert_eq!(pc.seeds[fwd as usize], *seed);
        }
    }
}
