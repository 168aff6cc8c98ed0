//! Frequency squares, their type signatures and sets of squares.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order; binary rows are stored as one `u64` mask.
pub const MAX_ORDER: usize = 64;

/// The type `(n; λ0, ..., λ_{m-1})` of a frequency square.
///
/// A single-symbol signature `(n; n)` is representable so that trivial squares can be
/// built and compared, but [`MofsSet`] refuses to hold such squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSignature {
    n: usize,
    freqs: Vec<usize>,
}

impl TypeSignature {
    pub fn new(n: usize, freqs: Vec<usize>) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::UnsupportedOrder(n));
        }
        if freqs.is_empty() || freqs.iter().any(|&f| f == 0) {
            return Err(Error::InvalidSignature(format!(
                "frequencies {freqs:?} must be positive"
            )));
        }
        if freqs.iter().sum::<usize>() != n {
            return Err(Error::InvalidSignature(format!(
                "frequencies {freqs:?} do not sum to {n}"
            )));
        }
        Ok(TypeSignature { n, freqs })
    }

    /// The binary signature `(n; n - λ1, λ1)`.
    pub fn binary(n: usize, lambda1: usize) -> Result<Self> {
        if lambda1 == 0 || lambda1 >= n {
            return Err(Error::InvalidSignature(format!(
                "lambda1 = {lambda1} must lie in 1..{n}"
            )));
        }
        TypeSignature::new(n, vec![n - lambda1, lambda1])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn freqs(&self) -> &[usize] {
        &self.freqs
    }

    /// Number of symbols `m`.
    pub fn symbols(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_binary(&self) -> bool {
        self.freqs.len() == 2
    }

    pub fn lambda1(&self) -> Option<usize> {
        self.is_binary().then(|| self.freqs[1])
    }

    /// `min(λ0, λ1)` for binary signatures, the "type" used when counting mixed sets.
    pub fn binary_class(&self) -> Option<usize> {
        self.is_binary().then(|| self.freqs[0].min(self.freqs[1]))
    }

    pub fn swapped(&self) -> Option<Self> {
        self.is_binary().then(|| TypeSignature {
            n: self.n,
            freqs: vec![self.freqs[1], self.freqs[0]],
        })
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.n)?;
        for (i, x) in self.freqs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// An `n x n` frequency square, validated against its signature.
///
/// Binary squares also carry one row mask per row: bit `c` of `masks[r]` is set iff
/// cell `(r, c)` holds symbol 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequencySquare {
    sig: TypeSignature,
    cells: Vec<u8>,
    masks: Option<Vec<u64>>,
}

/// Checks every row and column count of `cells` (row-major, length `n*n`) against `sig`.
///
/// Rows are scanned before columns; the reported symbol is the first one whose count
/// overflows its frequency while scanning.
pub fn validate_square(sig: &TypeSignature, cells: Vec<u8>) -> Result<FrequencySquare> {
    let n = sig.order();
    let m = sig.symbols();
    if cells.len() != n * n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: format!("{} cells", cells.len()),
        });
    }
    if let Some(pos) = cells.iter().position(|&s| s as usize >= m) {
        return Err(Error::SymbolOutOfRange {
            row: pos / n,
            col: pos % n,
        });
    }
    let mut counts = vec![0usize; m];
    for r in 0..n {
        counts.iter_mut().for_each(|c| *c = 0);
        for c in 0..n {
            let s = cells[r * n + c] as usize;
            counts[s] += 1;
            if counts[s] > sig.freqs[s] {
                return Err(Error::RowCountViolation { row: r, symbol: s });
            }
        }
    }
    for c in 0..n {
        counts.iter_mut().for_each(|c| *c = 0);
        for r in 0..n {
            let s = cells[r * n + c] as usize;
            counts[s] += 1;
            if counts[s] > sig.freqs[s] {
                return Err(Error::ColCountViolation { col: c, symbol: s });
            }
        }
    }
    Ok(FrequencySquare::from_parts(sig.clone(), cells))
}

impl FrequencySquare {
    fn from_parts(sig: TypeSignature, cells: Vec<u8>) -> Self {
        let n = sig.order();
        let masks = sig.is_binary().then(|| {
            (0..n)
                .map(|r| {
                    (0..n).fold(0u64, |acc, c| acc | (u64::from(cells[r * n + c] == 1) << c))
                })
                .collect()
        });
        FrequencySquare { sig, cells, masks }
    }

    /// Builds and validates a square from nested rows.
    pub fn from_rows<R: AsRef<[u8]>>(sig: &TypeSignature, rows: &[R]) -> Result<Self> {
        let n = sig.order();
        if rows.len() != n || rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: format!("{} rows", rows.len()),
            });
        }
        validate_square(sig, rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect())
    }

    /// Builds a binary square from row masks, inferring `λ1` from the first row.
    pub fn from_masks(n: usize, masks: &[u64]) -> Result<Self> {
        if n == 0 || n > MAX_ORDER || masks.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: format!("{} row masks", masks.len()),
            });
        }
        let lambda1 = masks[0].count_ones() as usize;
        let sig = TypeSignature::binary(n, lambda1)?;
        let cells = (0..n * n)
            .map(|i| ((masks[i / n] >> (i % n)) & 1) as u8)
            .collect();
        validate_square(&sig, cells)
    }

    /// Trusted constructor for masks produced by the enumerator.
    pub(crate) fn from_masks_unchecked(n: usize, lambda1: usize, masks: &[u64]) -> Self {
        let sig = TypeSignature {
            n,
            freqs: vec![n - lambda1, lambda1],
        };
        let cells = (0..n * n)
            .map(|i| ((masks[i / n] >> (i % n)) & 1) as u8)
            .collect();
        FrequencySquare {
            sig,
            cells,
            masks: Some(masks.to_vec()),
        }
    }

    pub fn sig(&self) -> &TypeSignature {
        &self.sig
    }

    pub fn order(&self) -> usize {
        self.sig.order()
    }

    pub fn is_binary(&self) -> bool {
        self.sig.is_binary()
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.order() + c]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn row(&self, r: usize) -> &[u8] {
        let n = self.order();
        &self.cells[r * n..(r + 1) * n]
    }

    /// Row masks of a binary square.
    pub fn masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    /// Swaps the symbols of a binary square.
    pub fn complement(&self) -> Result<Self> {
        let sig = self.sig.swapped().ok_or(Error::NotBinary)?;
        let cells = self.cells.iter().map(|&s| 1 - s).collect();
        Ok(FrequencySquare::from_parts(sig, cells))
    }

    pub fn transpose(&self) -> Self {
        let n = self.order();
        let cells = (0..n * n).map(|i| self.cells[(i % n) * n + i / n]).collect();
        FrequencySquare::from_parts(self.sig.clone(), cells)
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let cells = (0..n * n).map(|i| self.cells[perm[i / n] * n + i % n]).collect();
        FrequencySquare::from_parts(self.sig.clone(), cells)
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let cells = (0..n * n).map(|i| self.cells[(i / n) * n + perm[i % n]]).collect();
        FrequencySquare::from_parts(self.sig.clone(), cells)
    }

    /// Applies a symbol relabelling; `map[s]` is the new name of symbol `s`.
    pub fn relabel(&self, map: &[u8]) -> Result<Self> {
        let m = self.sig.symbols();
        if map.len() != m {
            return Err(Error::InvalidSignature(format!(
                "symbol map of length {} for {m} symbols",
                map.len()
            )));
        }
        let mut freqs = vec![0; m];
        for (s, &t) in map.iter().enumerate() {
            if t as usize >= m || freqs[t as usize] != 0 {
                return Err(Error::InvalidSignature(format!("{map:?} is not a permutation")));
            }
            freqs[t as usize] = self.sig.freqs[s];
        }
        let sig = TypeSignature::new(self.order(), freqs)?;
        let cells = self.cells.iter().map(|&s| map[s as usize]).collect();
        Ok(FrequencySquare::from_parts(sig, cells))
    }
}

impl fmt::Display for FrequencySquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        for r in 0..n {
            for c in 0..n {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// An ordered collection of squares of one order, each with at least two symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MofsSet {
    order: usize,
    squares: Vec<FrequencySquare>,
}

impl MofsSet {
    pub fn new(order: usize, squares: Vec<FrequencySquare>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        for sq in &squares {
            if sq.order() != order {
                return Err(Error::OrderMismatch);
            }
            if sq.sig().symbols() < 2 {
                return Err(Error::SingleSymbolSquare);
            }
        }
        Ok(MofsSet { order, squares })
    }

    pub fn empty(order: usize) -> Result<Self> {
        MofsSet::new(order, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[FrequencySquare] {
        &self.squares
    }

    pub fn into_squares(self) -> Vec<FrequencySquare> {
        self.squares
    }

    pub fn is_binary(&self) -> bool {
        self.squares.iter().all(FrequencySquare::is_binary)
    }

    pub fn push(&mut self, sq: FrequencySquare) -> Result<()> {
        if sq.order() != self.order {
            return Err(Error::OrderMismatch);
        }
        if sq.sig().symbols() < 2 {
            return Err(Error::SingleSymbolSquare);
        }
        self.squares.push(sq);
        Ok(())
    }

    /// A copy of `self` with `sq` appended.
    pub fn with(&self, sq: FrequencySquare) -> Result<Self> {
        let mut out = self.clone();
        out.push(sq)?;
        Ok(out)
    }

    /// The squares at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let squares = indices
            .iter()
            .map(|&i| self.squares.get(i).cloned().ok_or(Error::IndexError(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MofsSet {
            order: self.order,
            squares,
        })
    }

    /// `λ1` of every square; fails unless the set is binary.
    pub fn lambda1s(&self) -> Result<Vec<usize>> {
        self.squares
            .iter()
            .map(|s| s.sig().lambda1().ok_or(Error::NotBinary))
            .collect()
    }

    /// Sorted distinct `min(λ0, λ1)` classes present in a binary set.
    pub fn binary_classes(&self) -> Result<Vec<usize>> {
        let mut out = self
            .squares
            .iter()
            .map(|s| s.sig().binary_class().ok_or(Error::NotBinary))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn concat(&self, other: &MofsSet) -> Result<Self> {
        if other.order != self.order {
            return Err(Error::OrderMismatch);
        }
        let mut squares = self.squares.clone();
        squares.extend(other.squares.iter().cloned());
        Ok(MofsSet {
            order: self.order,
            squares,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, f: &[usize]) -> TypeSignature {
        TypeSignature::new(n, f.to_vec()).unwrap()
    }

    #[test]
    fn identity_like_square_is_valid() {
        let s = sig(3, &[2, 1]);
        let sq = FrequencySquare::from_rows(&s, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(sq.masks().unwrap(), &[1, 2, 4]);
    }

    #[test]
    fn single_symbol_square_is_representable() {
        let s = sig(4, &[4]);
        let sq = validate_square(&s, vec![0; 16]).unwrap();
        assert!(!sq.is_binary());
        assert_eq!(
            MofsSet::new(4, vec![sq]).unwrap_err(),
            Error::SingleSymbolSquare
        );
    }

    #[test]
    fn reports_first_overflowing_row_symbol() {
        let s = sig(3, &[2, 1]);
        let err = FrequencySquare::from_rows(&s, &[[1, 1, 0], [1, 0, 1], [0, 1, 1]]).unwrap_err();
        assert_eq!(err, Error::RowCountViolation { row: 0, symbol: 1 });
    }

    #[test]
    fn column_violation_and_symbol_range() {
        let s = sig(2, &[1, 1]);
        let err = FrequencySquare::from_rows(&s, &[[1, 0], [1, 0]]).unwrap_err();
        assert_eq!(err, Error::ColCountViolation { col: 0, symbol: 1 });
        let err = FrequencySquare::from_rows(&s, &[[1, 0], [0, 2]]).unwrap_err();
        assert_eq!(err, Error::SymbolOutOfRange { row: 1, col: 1 });
    }

    #[test]
    fn complement_swaps_type() {
        let s = TypeSignature::binary(6, 2).unwrap();
        let rows = [
            [1, 1, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [0, 0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1, 1],
        ];
        let sq = FrequencySquare::from_rows(&s, &rows).unwrap();
        let c = sq.complement().unwrap();
        assert_eq!(c.sig().freqs(), &[2, 4]);
        assert_eq!(c.complement().unwrap(), sq);
        let single = validate_square(&sig(3, &[3]), vec![0; 9]).unwrap();
        assert_eq!(single.complement().unwrap_err(), Error::NotBinary);
    }

    #[test]
    fn signature_rules() {
        assert!(TypeSignature::new(4, vec![3, 2]).is_err());
        assert!(TypeSignature::new(4, vec![4, 0]).is_err());
        assert!(TypeSignature::binary(4, 4).is_err());
        assert_eq!(TypeSignature::binary(6, 2).unwrap().to_string(), "(6;4,2)");
        assert_eq!(TypeSignature::binary(6, 4).unwrap().binary_class(), Some(2));
    }

    #[test]
    fn relabel_permutes_frequencies() {
        let s = sig(3, &[1, 1, 1]);
        let sq = FrequencySquare::from_rows(&s, &[[0, 1, 2], [1, 2, 0], [2, 0, 1]]).unwrap();
        let r = sq.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(r.row(0), &[2, 0, 1]);
        assert!(sq.relabel(&[0, 0, 1]).is_err());
    }
}
