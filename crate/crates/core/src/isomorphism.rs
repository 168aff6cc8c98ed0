//! Canonical forms of binary MOFS under row, column, transpose, symbol and square
//! permutations.
//!
//! The canonical serialization is the concatenation of the transformed squares, each
//! written row-major with column 0 as the most significant bit of an `n`-bit word, and
//! the form is the lexicographic minimum of that over the group. It is computed one
//! square at a time: the first square fixes an order on the rows (every minimizing
//! order is kept), after which the remaining squares only split ties among columns.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::enumeration::{enumerate_squares, EnumSpec};
use crate::error::{Error, Result};
use crate::square::{FrequencySquare, MofsSet};

/// Which symbol permutations the group contains. For a binary square the only
/// non-trivial one is complementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SymbolMode {
    None,
    /// Complement only squares with `λ1 = n/2`, so every square keeps its type.
    #[default]
    TypePreserving,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IsoOptions {
    /// Squares keep their positions.
    pub ordered: bool,
    pub symbols: SymbolMode,
    pub transpose: bool,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            ordered: false,
            symbols: SymbolMode::TypePreserving,
            transpose: true,
        }
    }
}

impl IsoOptions {
    fn may_complement(&self, sq: &FrequencySquare) -> bool {
        match self.symbols {
            SymbolMode::None => false,
            SymbolMode::TypePreserving => 2 * sq.sig().freqs()[1] == sq.order(),
            SymbolMode::Free => true,
        }
    }
}

/// One element of the isomorphism group.
///
/// Applied as: transpose (optional), then rows and columns are permuted (new row `i`
/// is old row `row_perm[i]`), then flagged squares are complemented, and finally
/// square `t` of the result is the transformed square `square_perm[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub transpose: bool,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    /// Indexed by input square.
    pub complement: Vec<bool>,
    pub square_perm: Vec<usize>,
}

impl GroupElement {
    pub fn identity(n: usize, k: usize) -> Self {
        GroupElement {
            transpose: false,
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
            complement: vec![false; k],
            square_perm: (0..k).collect(),
        }
    }

    /// A uniformly random element of the group `opts` describes, for `set`.
    pub fn random<R: Rng + ?Sized>(set: &MofsSet, opts: &IsoOptions, rng: &mut R) -> Self {
        let (n, k) = (set.order(), set.len());
        let mut g = GroupElement::identity(n, k);
        g.transpose = opts.transpose && rng.gen_bool(0.5);
        g.row_perm.shuffle(rng);
        g.col_perm.shuffle(rng);
        for (t, sq) in set.squares().iter().enumerate() {
            g.complement[t] = opts.may_complement(sq) && rng.gen_bool(0.5);
        }
        if !opts.ordered {
            g.square_perm.shuffle(rng);
        }
        g
    }

    pub fn apply(&self, set: &MofsSet) -> Result<MofsSet> {
        let mut squares = Vec::with_capacity(set.len());
        for (t, sq) in set.squares().iter().enumerate() {
            let mut s = if self.transpose { sq.transpose() } else { sq.clone() };
            s = s.permute_rows(&self.row_perm).permute_cols(&self.col_perm);
            if self.complement.get(t).copied().unwrap_or(false) {
                s = s.complement()?;
            }
            squares.push(s);
        }
        let ordered = self
            .square_perm
            .iter()
            .map(|&i| squares.get(i).cloned().ok_or(Error::IndexError(i)))
            .collect::<Result<Vec<_>>>()?;
        MofsSet::new(set.order(), ordered)
    }
}

/// Canonical representative of an isomorphism class.
///
/// Equality, ordering and hashing look only at the serialization; `ops` maps the input
/// set onto the representative.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub n: usize,
    pub k: usize,
    /// `k` blocks of `n` words, row `i` of square `s` at `s * n + i`, column 0 in bit
    /// `n - 1`.
    pub code: Vec<u64>,
    pub ops: GroupElement,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.code == other.code
    }
}

impl Eq for CanonicalForm {}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.k, &self.code).cmp(&(other.n, other.k, &other.code))
    }
}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.code.hash(state);
    }
}

impl CanonicalForm {
    /// Big-endian serialization, comparable byte-wise.
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n as u8, self.k as u8];
        for w in &self.code {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out
    }

    /// The representative itself.
    pub fn to_set(&self) -> Result<MofsSet> {
        let n = self.n;
        let squares = self
            .code
            .chunks(n.max(1))
            .take(self.k)
            .map(|block| {
                let masks: Vec<u64> = block
                    .iter()
                    .map(|&w| (0..n).fold(0u64, |m, j| m | ((w >> (n - 1 - j)) & 1) << j))
                    .collect();
                FrequencySquare::from_masks(n, &masks)
            })
            .collect::<Result<Vec<_>>>()?;
        MofsSet::new(n, squares)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    transpose: bool,
    rows: Vec<u8>,
    /// Ordered column classes as bitmasks of original columns.
    classes: Vec<u64>,
    used: u64,
    order: Vec<usize>,
    comps: u64,
}

struct Prepared {
    n: usize,
    full: u64,
    /// Per transpose flag, per square, the row masks.
    mats: [Vec<Vec<u64>>; 2],
    /// Per transpose flag, an id shared by rows that agree in every square.
    row_ids: [Vec<usize>; 2],
    may_complement: Vec<bool>,
}

impl Prepared {
    fn new(set: &MofsSet, opts: &IsoOptions) -> Result<Self> {
        let n = set.order();
        let plain = set
            .squares()
            .iter()
            .map(|s| s.masks().map(<[u64]>::to_vec).ok_or(Error::NotBinary))
            .collect::<Result<Vec<_>>>()?;
        let trans = set
            .squares()
            .iter()
            .map(|s| s.transpose().masks().map(<[u64]>::to_vec).ok_or(Error::NotBinary))
            .collect::<Result<Vec<_>>>()?;
        let ids = |mats: &Vec<Vec<u64>>| -> Vec<usize> {
            (0..n)
                .map(|r| (0..=r).find(|&q| mats.iter().all(|m| m[q] == m[r])).unwrap_or(r))
                .collect()
        };
        let row_ids = [ids(&plain), ids(&trans)];
        Ok(Prepared {
            n,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            mats: [plain, trans],
            row_ids,
            may_complement: set.squares().iter().map(|s| opts.may_complement(s)).collect(),
        })
    }

    fn matrix(&self, transpose: bool, t: usize, comp: bool) -> Vec<u64> {
        let m = &self.mats[transpose as usize][t];
        if comp {
            m.iter().map(|r| r ^ self.full).collect()
        } else {
            m.clone()
        }
    }

    fn variants(&self, t: usize) -> &'static [bool] {
        if self.may_complement[t] {
            &[false, true]
        } else {
            &[false]
        }
    }
}

/// Row word for mask `m` when columns are grouped into `classes`: inside each class
/// the zeros come first.
fn class_row(n: usize, classes: &[u64], m: u64) -> u64 {
    let mut out = 0u64;
    let mut end = 0;
    for &c in classes {
        end += c.count_ones() as usize;
        for q in end - (m & c).count_ones() as usize..end {
            out |= 1 << (n - 1 - q);
        }
    }
    out
}

fn split_classes(classes: &[u64], m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(classes.len() + 1);
    for &c in classes {
        for part in [c & !m, c & m] {
            if part != 0 {
                out.push(part);
            }
        }
    }
    out
}

struct FirstStage<'a> {
    prep: &'a Prepared,
    best: Option<Vec<u64>>,
    leaves: Vec<Node>,
}

impl FirstStage<'_> {
    #[allow(clippy::too_many_arguments)]
    fn search(
        &mut self,
        mat: &[u64],
        transpose: bool,
        t: usize,
        comp: bool,
        rows: &mut Vec<u8>,
        classes: &[u64],
        prefix: &mut Vec<u64>,
        remaining: u64,
    ) {
        let n = self.prep.n;
        let depth = rows.len();
        if depth == n {
            match &self.best {
                Some(b) if prefix.as_slice() > b.as_slice() => return,
                Some(b) if prefix.as_slice() == b.as_slice() => {}
                _ => {
                    self.best = Some(prefix.clone());
                    self.leaves.clear();
                }
            }
            self.leaves.push(Node {
                transpose,
                rows: rows.clone(),
                classes: classes.to_vec(),
                used: 1 << t,
                order: vec![t],
                comps: u64::from(comp) << t,
            });
            return;
        }
        let ids = &self.prep.row_ids[transpose as usize];
        let mut min = u64::MAX;
        let mut picks: Vec<usize> = Vec::new();
        let mut bits = remaining;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let w = class_row(n, classes, mat[r]);
            if w < min {
                min = w;
                picks.clear();
            }
            if w == min && !picks.iter().any(|&q| ids[q] == ids[r]) {
                picks.push(r);
            }
        }
        prefix.push(min);
        let worse = match &self.best {
            Some(b) => prefix.as_slice() > &b[..=depth],
            None => false,
        };
        if !worse {
            for r in picks {
                let next = split_classes(classes, mat[r]);
                rows.push(r as u8);
                self.search(mat, transpose, t, comp, rows, &next, prefix, remaining & !(1 << r));
                rows.pop();
            }
        }
        prefix.pop();
    }
}

/// Sorts columns within each class by their column vector over `rows`. Returns the
/// square's serialization and the refined classes.
fn refine_cols(n: usize, mat: &[u64], rows: &[u8], classes: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let key = |j: usize| -> u64 {
        rows.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | ((mat[r as usize] >> j) & 1) << (n - 1 - i))
    };
    let mut pos = vec![0usize; n];
    let mut next_classes = Vec::with_capacity(n);
    let mut at = 0;
    for &c in classes {
        let mut cols: Vec<(u64, usize)> = (0..n).filter(|&j| c >> j & 1 == 1).map(|j| (key(j), j)).collect();
        cols.sort_unstable();
        let mut cur: Option<(u64, u64)> = None;
        for (k, j) in cols {
            pos[j] = at;
            at += 1;
            match &mut cur {
                Some((ck, mask)) if *ck == k => *mask |= 1 << j,
                _ => {
                    if let Some((_, mask)) = cur {
                        next_classes.push(mask);
                    }
                    cur = Some((k, 1 << j));
                }
            }
        }
        if let Some((_, mask)) = cur {
            next_classes.push(mask);
        }
    }
    let ser = rows
        .iter()
        .map(|&r| {
            let m = mat[r as usize];
            (0..n).filter(|&j| m >> j & 1 == 1).fold(0u64, |w, j| w | 1 << (n - 1 - pos[j]))
        })
        .collect();
    (ser, next_classes)
}

fn col_order(n: usize, classes: &[u64]) -> Vec<usize> {
    classes
        .iter()
        .flat_map(|&c| (0..n).filter(move |&j| c >> j & 1 == 1))
        .collect()
}

/// Canonical form of a binary set under the group selected by `opts`.
pub fn canonical_form(set: &MofsSet, opts: &IsoOptions) -> Result<CanonicalForm> {
    let (n, k) = (set.order(), set.len());
    if k == 0 {
        return Ok(CanonicalForm {
            n,
            k,
            code: Vec::new(),
            ops: GroupElement::identity(n, 0),
        });
    }
    if k > 64 {
        return Err(Error::TooManySquares { k, max: 64 });
    }
    let prep = Prepared::new(set, opts)?;
    let transposes: &[bool] = if opts.transpose { &[false, true] } else { &[false] };
    let firsts: Vec<usize> = if opts.ordered { vec![0] } else { (0..k).collect() };

    let mut stage = FirstStage {
        prep: &prep,
        best: None,
        leaves: Vec::new(),
    };
    let everything = prep.full;
    for &tr in transposes {
        for &t in &firsts {
            for &comp in prep.variants(t) {
                let mat = prep.matrix(tr, t, comp);
                stage.search(&mat, tr, t, comp, &mut Vec::new(), &[everything], &mut Vec::new(), everything);
            }
        }
    }
    let mut code = stage.best.unwrap_or_default();
    let mut nodes = stage.leaves;

    for step in 1..k {
        let mut best: Option<Vec<u64>> = None;
        let mut next: Vec<Node> = Vec::new();
        let mut seen: HashSet<(bool, Vec<u8>, Vec<u64>, u64)> = HashSet::new();
        for node in &nodes {
            let choices: Vec<usize> = if opts.ordered {
                vec![step]
            } else {
                (0..k).filter(|t| node.used >> t & 1 == 0).collect()
            };
            for t in choices {
                for &comp in prep.variants(t) {
                    let mat = prep.matrix(node.transpose, t, comp);
                    let (ser, classes) = refine_cols(n, &mat, &node.rows, &node.classes);
                    match &best {
                        Some(b) if ser > *b => continue,
                        Some(b) if ser == *b => {}
                        _ => {
                            best = Some(ser);
                            next.clear();
                            seen.clear();
                        }
                    }
                    let used = node.used | 1 << t;
                    if !seen.insert((node.transpose, node.rows.clone(), classes.clone(), used)) {
                        continue;
                    }
                    let mut order = node.order.clone();
                    order.push(t);
                    next.push(Node {
                        transpose: node.transpose,
                        rows: node.rows.clone(),
                        classes,
                        used,
                        order,
                        comps: node.comps | u64::from(comp) << t,
                    });
                }
            }
        }
        code.extend(best.unwrap_or_default());
        nodes = next;
    }

    let node = &nodes[0];
    let ops = GroupElement {
        transpose: node.transpose,
        row_perm: node.rows.iter().map(|&r| r as usize).collect(),
        col_perm: col_order(n, &node.classes),
        complement: (0..k).map(|t| node.comps >> t & 1 == 1).collect(),
        square_perm: node.order.clone(),
    };
    Ok(CanonicalForm { n, k, code, ops })
}

pub fn is_isomorphic(a: &MofsSet, b: &MofsSet, opts: &IsoOptions) -> Result<bool> {
    if a.order() != b.order() || a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(a, opts)? == canonical_form(b, opts)?)
}

/// One representative per isomorphism class, in order of first appearance.
#[derive(Debug, Clone, Default)]
pub struct Catalogue {
    pub sets: Vec<MofsSet>,
    pub forms: Vec<CanonicalForm>,
    /// Inputs consumed.
    pub seen: usize,
}

impl Catalogue {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Canonical representatives ordered by their serialization.
    pub fn sorted_canonical(&self) -> Result<Vec<MofsSet>> {
        let mut forms = self.forms.clone();
        forms.sort();
        forms.iter().map(CanonicalForm::to_set).collect()
    }

    fn absorb(&mut self, items: Vec<(MofsSet, CanonicalForm)>, index: &mut HashMap<Vec<u64>, usize>) {
        for (set, form) in items {
            self.seen += 1;
            if !index.contains_key(&form.code) {
                index.insert(form.code.clone(), self.sets.len());
                self.sets.push(set);
                self.forms.push(form);
            }
        }
    }
}

pub fn dedupe_catalogue(sets: impl IntoIterator<Item = MofsSet>, opts: &IsoOptions) -> Result<Catalogue> {
    let sets: Vec<MofsSet> = sets.into_iter().collect();
    let forms = sets
        .par_iter()
        .map(|s| canonical_form(s, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut cat = Catalogue::default();
    cat.absorb(sets.into_iter().zip(forms).collect(), &mut HashMap::new());
    Ok(cat)
}

/// Type-`λ1` squares of order `n` up to isomorphism, as canonical representatives in
/// serialization order.
pub fn square_classes(n: usize, lambda1: usize, opts: &IsoOptions) -> Result<Vec<FrequencySquare>> {
    let low = (1u64 << lambda1) - 1;
    // every class has a member with first row `low` and rows in ascending order
    let mut picked: Vec<MofsSet> = Vec::new();
    let mut err = None;
    enumerate_squares(&EnumSpec::new(n, lambda1), |rows| {
        if rows[0] == low && rows.windows(2).all(|w| w[0] <= w[1]) {
            match MofsSet::new(n, vec![FrequencySquare::from_masks_unchecked(n, lambda1, rows)]) {
                Ok(s) => picked.push(s),
                Err(e) => err = Some(e),
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let cat = dedupe_catalogue(picked, opts)?;
    Ok(cat
        .sorted_canonical()?
        .into_iter()
        .flat_map(MofsSet::into_squares)
        .collect())
}

/// Extends every base set by one mate of type `lambda1` in all possible ways and keeps
/// one set per isomorphism class.
///
/// Given one base per class of the smaller sets, the result covers every class of the
/// larger sets whose squares have the combined types.
pub fn augment(bases: &[MofsSet], lambda1: usize, opts: &IsoOptions) -> Result<Catalogue> {
    let mut cat = Catalogue::default();
    let mut index = HashMap::new();
    for base in bases {
        let n = base.order();
        let dedup = opts.symbols != SymbolMode::None;
        let spec = EnumSpec::new(n, lambda1).dedup(dedup).mates_of(base.squares());
        let mut mates: Vec<Vec<u64>> = Vec::new();
        enumerate_squares(&spec, |rows| mates.push(rows.to_vec()))?;
        let items = mates
            .par_iter()
            .map(|rows| {
                let set = base.with(FrequencySquare::from_masks_unchecked(n, lambda1, rows))?;
                let form = canonical_form(&set, opts)?;
                Ok((set, form))
            })
            .collect::<Result<Vec<_>>>()?;
        cat.absorb(items, &mut index);
    }
    Ok(cat)
}
