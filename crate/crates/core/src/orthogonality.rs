//! Orthogonality of mixed-type squares, the cardinality bound and the
//! permutation-array view of type `(n; n-1, 1)` sets.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::square::{FrequencySquare, MofsSet};

/// Counts of every ordered symbol pair when two squares are superimposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCountTable {
    pub counts: Vec<Vec<usize>>,
    pub expected: Vec<Vec<usize>>,
}

impl PairCountTable {
    pub fn is_orthogonal(&self) -> bool {
        self.counts == self.expected
    }

    /// First `(i, j)` in row-major order whose count is off.
    pub fn first_mismatch(&self) -> Option<(usize, usize)> {
        self.counts.iter().enumerate().find_map(|(i, row)| {
            row.iter()
                .zip(&self.expected[i])
                .position(|(a, b)| a != b)
                .map(|j| (i, j))
        })
    }
}

pub fn pair_counts(f1: &FrequencySquare, f2: &FrequencySquare) -> Result<PairCountTable> {
    if f1.order() != f2.order() {
        return Err(Error::OrderMismatch);
    }
    let (l, m) = (f1.sig().freqs(), f2.sig().freqs());
    let mut counts = vec![vec![0; m.len()]; l.len()];
    for (&a, &b) in f1.cells().iter().zip(f2.cells()) {
        counts[a as usize][b as usize] += 1;
    }
    let expected = l
        .iter()
        .map(|&li| m.iter().map(|&mj| li * mj).collect())
        .collect();
    Ok(PairCountTable { counts, expected })
}

/// Number of cells where both binary squares hold 1.
#[inline]
pub(crate) fn ones_overlap(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Orthogonality test. Two binary squares only need the (1,1) count: the row and
/// column sums then force the other three pair counts.
pub fn is_orthogonal_pair(f1: &FrequencySquare, f2: &FrequencySquare) -> Result<bool> {
    if f1.order() != f2.order() {
        return Err(Error::OrderMismatch);
    }
    match (f1.masks(), f2.masks()) {
        (Some(a), Some(b)) => {
            let want = f1.sig().freqs()[1] * f2.sig().freqs()[1];
            Ok(ones_overlap(a, b) as usize == want)
        }
        _ => Ok(pair_counts(f1, f2)?.is_orthogonal()),
    }
}

/// A pair of squares that is not orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub first: usize,
    pub second: usize,
    /// The offending ordered symbol pair.
    pub symbols: (usize, usize),
    pub count: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// Stop at the first failing pair.
    #[default]
    FailFast,
    /// Check every pair.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub squares: usize,
    /// Failing pairs in lexicographic pair order.
    pub failures: Vec<PairFailure>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&PairFailure> {
        self.failures.first()
    }
}

fn check_pair(set: &MofsSet, i: usize, j: usize) -> Option<PairFailure> {
    let (a, b) = (&set.squares()[i], &set.squares()[j]);
    if is_orthogonal_pair(a, b).unwrap_or(false) {
        return None;
    }
    let table = pair_counts(a, b).ok()?;
    let (x, y) = table.first_mismatch()?;
    Some(PairFailure {
        first: i,
        second: j,
        symbols: (x, y),
        count: table.counts[x][y],
        expected: table.expected[x][y],
    })
}

/// Checks every unordered pair of the set for orthogonality.
pub fn verify_mofs(set: &MofsSet, mode: VerifyMode) -> VerificationReport {
    let k = set.len();
    let pairs = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
    let failures = match mode {
        VerifyMode::FailFast => pairs
            .filter_map(|(i, j)| check_pair(set, i, j))
            .take(1)
            .collect(),
        VerifyMode::Exhaustive => pairs
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter_map(|(i, j)| check_pair(set, i, j))
            .collect(),
    };
    VerificationReport { squares: k, failures }
}

/// Result of checking `Σ (m_t - 1) <= (n - 1)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub sum: usize,
    pub bound: usize,
    pub admissible: bool,
    /// Equality: the set would be complete.
    pub complete: bool,
}

impl BoundReport {
    pub fn slack(&self) -> isize {
        self.bound as isize - self.sum as isize
    }
}

pub fn cardinality_bound(n: usize, symbol_counts: &[usize]) -> BoundReport {
    let sum = symbol_counts.iter().map(|&m| m.saturating_sub(1)).sum();
    let bound = (n.saturating_sub(1)).pow(2);
    BoundReport {
        sum,
        bound,
        admissible: sum <= bound,
        complete: sum == bound,
    }
}

pub fn set_bound(set: &MofsSet) -> BoundReport {
    let counts: Vec<usize> = set.squares().iter().map(|s| s.sig().symbols()).collect();
    cardinality_bound(set.order(), &counts)
}

/// Converts a set of permutation-matrix squares into a permutation array.
///
/// Entry `j` of row `t` is the 1-based row holding the 1 in column `j` of square `t`.
pub fn epa_from_mofs(set: &MofsSet) -> Result<Vec<Vec<usize>>> {
    let n = set.order();
    set.squares()
        .iter()
        .enumerate()
        .map(|(t, sq)| {
            if sq.sig().freqs() != [n - 1, 1] {
                return Err(Error::WrongType(t));
            }
            Ok((0..n)
                .map(|c| (0..n).find(|&r| sq.get(r, c) == 1).map(|r| r + 1).unwrap_or(0))
                .collect())
        })
        .collect()
}

pub fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::{validate_square, TypeSignature};

    fn perm_square(p: &[usize]) -> FrequencySquare {
        let n = p.len();
        let sig = TypeSignature::binary(n, 1).unwrap();
        let mut cells = vec![0; n * n];
        for (c, &r) in p.iter().enumerate() {
            cells[r * n + c] = 1;
        }
        validate_square(&sig, cells).unwrap()
    }

    #[test]
    fn self_pairing_concentrates_on_diagonal() {
        let sq = perm_square(&[1, 2, 0, 3]);
        let t = pair_counts(&sq, &sq).unwrap();
        assert_eq!(t.counts, vec![vec![12, 0], vec![0, 4]]);
        assert!(!is_orthogonal_pair(&sq, &sq).unwrap());
    }

    #[test]
    fn single_symbol_mate_counts() {
        let sq = perm_square(&[1, 2, 0]);
        let zero = validate_square(&TypeSignature::new(3, vec![3]).unwrap(), vec![0; 9]).unwrap();
        let t = pair_counts(&sq, &zero).unwrap();
        assert_eq!(t.counts, vec![vec![6], vec![3]]);
        assert!(t.is_orthogonal());
    }

    #[test]
    fn identical_pair_fails_on_first_pair() {
        let sq = perm_square(&[0, 1, 2]);
        let set = MofsSet::new(3, vec![sq.clone(), sq]).unwrap();
        let rep = verify_mofs(&set, VerifyMode::FailFast);
        let f = rep.first_failure().unwrap();
        assert_eq!((f.first, f.second), (0, 1));
        assert_eq!(f.symbols, (0, 0));
        assert_eq!((f.count, f.expected), (6, 4));
    }

    #[test]
    fn bound_cases() {
        assert!(cardinality_bound(4, &[2; 9]).complete);
        let r = cardinality_bound(6, &[2; 17]);
        assert!(r.admissible && !r.complete);
        assert_eq!(r.slack(), 8);
        assert!(!cardinality_bound(3, &[2; 5]).admissible);
    }

    #[test]
    fn identity_epa_row() {
        let set = MofsSet::new(3, vec![perm_square(&[0, 1, 2])]).unwrap();
        assert_eq!(epa_from_mofs(&set).unwrap(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn order_mismatch() {
        let a = perm_square(&[0, 1]);
        let b = perm_square(&[0, 1, 2]);
        assert_eq!(is_orthogonal_pair(&a, &b).unwrap_err(), Error::OrderMismatch);
    }
}
