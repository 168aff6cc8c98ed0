use std::collections::BTreeSet;
use std::fmt;

use super::block::{detect_block_structure, zw_sum, zw_sum_all};
use crate::error::{Error, Result};
use crate::square::MofsSet;

/// Upper limit on the number of squares for subset enumeration.
pub const MAX_SUBSET_SQUARES: usize = 24;

/// A relation `(X_1, ..., X_{k+2})` on the array of a set of `k` squares.
///
/// Set 0 holds row indices, set 1 column indices and set `t + 2` symbols of square `t`
/// (all 0-based). `universes[c]` is the set `Y_c` of values occurring in column `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    sets: Vec<BTreeSet<usize>>,
    universes: Vec<BTreeSet<usize>>,
}

fn universes(set: &MofsSet) -> Vec<BTreeSet<usize>> {
    let n = set.order();
    let mut out = vec![(0..n).collect::<BTreeSet<_>>(), (0..n).collect()];
    out.extend(
        set.squares()
            .iter()
            .map(|sq| sq.cells().iter().map(|&s| s as usize).collect()),
    );
    out
}

impl Relation {
    pub fn new(set: &MofsSet, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        let universes = universes(set);
        if sets.len() != universes.len() {
            return Err(Error::ArityMismatch {
                expected: universes.len(),
                found: sets.len(),
            });
        }
        if let Some(c) = (0..sets.len()).find(|&c| !sets[c].is_subset(&universes[c])) {
            return Err(Error::NotSubset { column: c });
        }
        Ok(Relation {
            n: set.order(),
            sets,
            universes,
        })
    }

    /// The binary relation with the given rows and columns and `X_c = {1}` elsewhere.
    pub fn binary(set: &MofsSet, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut sets = vec![rows.iter().copied().collect(), cols.iter().copied().collect()];
        sets.extend((0..set.len()).map(|_| BTreeSet::from([1])));
        Relation::new(set, sets)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn rows(&self) -> &BTreeSet<usize> {
        &self.sets[0]
    }

    pub fn cols(&self) -> &BTreeSet<usize> {
        &self.sets[1]
    }

    /// `a = |X_1|`.
    pub fn a(&self) -> usize {
        self.sets[0].len()
    }

    /// `b = |X_2|`.
    pub fn b(&self) -> usize {
        self.sets[1].len()
    }

    pub fn squares(&self) -> usize {
        self.sets.len() - 2
    }

    pub fn is_trivial_on(&self, c: usize) -> bool {
        self.sets[c].is_empty() || self.sets[c] == self.universes[c]
    }

    pub fn is_nontrivial(&self) -> bool {
        (0..self.sets.len()).any(|c| !self.is_trivial_on(c))
    }

    /// Non-trivial on every symbol column; the row and column sets are unconstrained.
    pub fn is_full(&self) -> bool {
        (2..self.sets.len()).all(|c| !self.is_trivial_on(c))
    }

    pub fn is_constant(&self) -> bool {
        [self.a(), self.b()].iter().all(|&s| s == 0 || s == self.n)
    }

    /// Replaces `X_i` and `X_j` by their complements within `Y_i` and `Y_j`.
    pub fn complement_pair(&self, i: usize, j: usize) -> Result<Self> {
        let len = self.sets.len();
        if i >= len {
            return Err(Error::IndexError(i));
        }
        if j >= len || i == j {
            return Err(Error::IndexError(j));
        }
        let mut out = self.clone();
        for c in [i, j] {
            out.sets[c] = self.universes[c].difference(&self.sets[c]).copied().collect();
        }
        Ok(out)
    }

    /// For binary squares, complements `(X_1, X_c)` wherever `0 ∈ X_c` so that every
    /// symbol set ends up inside `{1}`.
    pub fn normalized_binary(&self) -> Self {
        let mut out = self.clone();
        for c in 2..self.sets.len() {
            if out.sets[c].contains(&0) {
                out = out.complement_pair(0, c).expect("indices in range");
            }
        }
        out
    }

    /// Extends a relation on a subset to the whole set, with empty sets elsewhere.
    pub fn lift(&self, set: &MofsSet, subset: &[usize]) -> Result<Self> {
        if subset.len() != self.squares() {
            return Err(Error::ArityMismatch {
                expected: self.squares(),
                found: subset.len(),
            });
        }
        let mut sets = vec![self.sets[0].clone(), self.sets[1].clone()];
        sets.extend((0..set.len()).map(|_| BTreeSet::new()));
        for (pos, &t) in subset.iter().enumerate() {
            *sets.get_mut(t + 2).ok_or(Error::IndexError(t))? = self.sets[pos + 2].clone();
        }
        Relation::new(set, sets)
    }
}

fn fmt_indices(f: &mut fmt::Formatter<'_>, s: &BTreeSet<usize>) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", x + 1)?;
    }
    f.write_str("}")
}

/// Certificate line; row and column indices are printed 1-based.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RELATION a={} b={} X1=", self.a(), self.b())?;
        fmt_indices(f, &self.sets[0])?;
        f.write_str(" X2=")?;
        fmt_indices(f, &self.sets[1])?;
        write!(f, " full={} constant={}", self.is_full(), self.is_constant())
    }
}

/// Checks that every row `[i, j, F_1[i,j], ..., F_k[i,j]]` of the array meets the
/// relation in an even number of coordinates.
pub fn verify_relation(set: &MofsSet, rel: &Relation) -> Result<bool> {
    let expected = set.len() + 2;
    if rel.sets.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            found: rel.sets.len(),
        });
    }
    if rel.n != set.order() {
        return Err(Error::OrderMismatch);
    }
    let n = set.order();
    Ok((0..n).all(|r| {
        (0..n).all(|c| {
            let mut hits = usize::from(rel.sets[0].contains(&r)) + usize::from(rel.sets[1].contains(&c));
            for (t, sq) in set.squares().iter().enumerate() {
                hits += usize::from(rel.sets[t + 2].contains(&(sq.get(r, c) as usize)));
            }
            hits % 2 == 0
        })
    }))
}

/// Looks for a full relation on the whole (binary) set.
///
/// A full relation exists iff the Z2-sum is `u_r XOR v_c` for some row and column
/// labels. The returned relation has `X_c = {1}` on every square, `X_1` the class of
/// rows equal to row 0, and `X_2` the columns whose label matches.
pub fn detect_full_relation(set: &MofsSet) -> Result<Option<Relation>> {
    if !set.is_binary() {
        return Err(Error::NotBinary);
    }
    if set.is_empty() {
        return Ok(None);
    }
    let z = zw_sum_all(set, 2)?;
    relation_from_sum(set, &z)
}

fn relation_from_sum(set: &MofsSet, z: &super::block::ZwSum) -> Result<Option<Relation>> {
    let Some(block) = detect_block_structure(z) else {
        return Ok(None);
    };
    if !block.compatible {
        return Ok(None);
    }
    let n = set.order();
    let rows = &block.row_perm[..block.a];
    // u_r = 1 on the rows of class 0, so v_c = 1 exactly where z[0][c] = 0
    let cols: Vec<usize> = (0..n).filter(|&c| z.get(block.row_perm[0], c) == 0).collect();
    Relation::binary(set, rows, &cols).map(Some)
}

/// First subset (by size, then lexicographically) carrying a full relation, with the
/// relation lifted to the whole set.
pub fn detect_any_relation(set: &MofsSet) -> Result<Option<(Vec<usize>, Relation)>> {
    if !set.is_binary() {
        return Err(Error::NotBinary);
    }
    let k = set.len();
    if k > MAX_SUBSET_SQUARES {
        return Err(Error::SubsetBudgetExceeded {
            k,
            max: MAX_SUBSET_SQUARES,
        });
    }
    for size in 1..=k {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let z = zw_sum(set, &comb, 2)?;
            let sub = set.subset(&comb)?;
            if let Some(rel) = relation_from_sum(&sub, &z)? {
                return Ok(Some((comb.clone(), rel.lift(set, &comb)?)));
            }
            if !next_combination(&mut comb, k) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `comb` to the next `comb.len()`-subset of `0..k` in lexicographic order.
pub(crate) fn next_combination(comb: &mut [usize], k: usize) -> bool {
    let s = comb.len();
    let Some(i) = (0..s).rev().find(|&i| comb[i] < k - s + i) else {
        return false;
    };
    comb[i] += 1;
    for j in i + 1..s {
        comb[j] = comb[j - 1] + 1;
    }
    true
}
