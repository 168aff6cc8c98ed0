use std::fmt;

use crate::error::{Error, Result};
use crate::square::MofsSet;

/// Entrywise sum of a subset of binary squares, reduced modulo `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZwSum {
    pub w: u64,
    pub n: usize,
    /// Row-major residues.
    pub matrix: Vec<u64>,
    pub subset: Vec<usize>,
}

impl ZwSum {
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.matrix[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.matrix[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }
}

pub fn zw_sum(set: &MofsSet, subset: &[usize], w: u64) -> Result<ZwSum> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if w < 2 {
        return Err(Error::InvalidSpec(format!("modulus {w} must be at least 2")));
    }
    let n = set.order();
    let mut matrix = vec![0u64; n * n];
    for &t in subset {
        let sq = set.squares().get(t).ok_or(Error::IndexError(t))?;
        if !sq.is_binary() {
            return Err(Error::NotBinary);
        }
        for (acc, &v) in matrix.iter_mut().zip(sq.cells()) {
            *acc += u64::from(v);
        }
    }
    matrix.iter_mut().for_each(|v| *v %= w);
    Ok(ZwSum {
        w,
        n,
        matrix,
        subset: subset.to_vec(),
    })
}

/// Sum of every square in the set.
pub fn zw_sum_all(set: &MofsSet, w: u64) -> Result<ZwSum> {
    let all: Vec<usize> = (0..set.len()).collect();
    zw_sum(set, &all, w)
}

/// A 2x2 constant-block decomposition `[x1 J(a,b), x2 J(a,n-b); x3 J(n-a,b), x4 J(n-a,n-b)]`.
///
/// `row_perm[i]` is the original row placed at position `i` (first class first), and
/// likewise for columns. Values of empty blocks are filled from their non-empty
/// neighbours, which keeps degenerate structures compatible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub w: u64,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub x: [u64; 4],
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub compatible: bool,
}

impl BlockStructure {
    /// Value of the block containing permuted cell `(i, j)`.
    pub fn block_value(&self, i: usize, j: usize) -> u64 {
        match (i < self.a, j < self.b) {
            (true, true) => self.x[0],
            (true, false) => self.x[1],
            (false, true) => self.x[2],
            (false, false) => self.x[3],
        }
    }

    /// Checks that permuting `z` by the stored permutations yields the block matrix.
    pub fn realises(&self, z: &ZwSum) -> bool {
        z.n == self.n
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| z.get(self.row_perm[i], self.col_perm[j]) == self.block_value(i, j))
            })
    }

    /// `a(x2 - x4) + b(x3 - x4) + n x4 mod w`.
    pub fn rhs(&self) -> u64 {
        let w = self.w as i128;
        let [_, x2, x3, x4] = self.x.map(|v| v as i128);
        let v = self.a as i128 * (x2 - x4) + self.b as i128 * (x3 - x4) + self.n as i128 * x4;
        v.rem_euclid(w) as u64
    }
}

impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BLOCK w={} a={} b={} x={},{},{},{} compatible={}",
            self.w, self.a, self.b, self.x[0], self.x[1], self.x[2], self.x[3], self.compatible
        )
    }
}

/// Splits `0..n` into the class of index 0 and the rest, by equality of `key`.
fn two_classes<T: PartialEq>(n: usize, key: impl Fn(usize) -> T) -> Option<(Vec<usize>, Vec<usize>)> {
    let k0 = key(0);
    let (first, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| key(i) == k0);
    if let Some(&r0) = rest.first() {
        let k1 = key(r0);
        if rest.iter().any(|&i| key(i) != k1) {
            return None;
        }
    }
    Some((first, rest))
}

/// Finds a 2x2 constant-block layout of `z`, if one exists.
///
/// Rows fall into equality classes, as do columns; the structure exists iff there are
/// at most two of each. `a` and `b` are the sizes of the classes holding row 0 and
/// column 0, so a constant matrix reports `a = b = n`.
pub fn detect_block_structure(z: &ZwSum) -> Option<BlockStructure> {
    let n = z.n;
    if n == 0 {
        return None;
    }
    let (rows_a, rows_b) = two_classes(n, |r| z.row(r))?;
    let (cols_a, cols_b) = two_classes(n, |c| (0..n).map(|r| z.get(r, c)).collect::<Vec<_>>())?;
    let x1 = z.get(rows_a[0], cols_a[0]);
    let x2 = cols_b.first().map_or(x1, |&c| z.get(rows_a[0], c));
    let x3 = rows_b.first().map_or(x1, |&r| z.get(r, cols_a[0]));
    let x4 = match (rows_b.first(), cols_b.first()) {
        (Some(&r), Some(&c)) => z.get(r, c),
        (None, _) => x2,
        (Some(_), None) => x3,
    };
    let x = [x1, x2, x3, x4];
    let compatible = (x1 + x4) % z.w == (x2 + x3) % z.w;
    Some(BlockStructure {
        w: z.w,
        n,
        a: rows_a.len(),
        b: cols_a.len(),
        x,
        row_perm: rows_a.into_iter().chain(rows_b).collect(),
        col_perm: cols_a.into_iter().chain(cols_b).collect(),
        compatible,
    })
}
