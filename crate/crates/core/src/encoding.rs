//! Superimposed decimal encoding of binary sets.
//!
//! Cell `(r, c)` of the encoding is the integer whose binary expansion lists the
//! symbols of the `k` squares at `(r, c)`, square 1 first: the superimposed string
//! `0110000100` of ten squares encodes as 388. At most 64 squares fit in one grid.

use crate::error::{Error, Result};
use crate::square::{validate_square, FrequencySquare, MofsSet, TypeSignature};

pub const MAX_SQUARES: usize = 64;

/// Row-major grid of superimposed entries.
pub fn encode_decimal(set: &MofsSet) -> Result<Vec<Vec<u64>>> {
    let k = set.len();
    if k > MAX_SQUARES {
        return Err(Error::TooManySquares { k, max: MAX_SQUARES });
    }
    if !set.is_binary() {
        return Err(Error::NotBinary);
    }
    let n = set.order();
    Ok((0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    set.squares()
                        .iter()
                        .fold(0u64, |acc, sq| (acc << 1) | u64::from(sq.get(r, c)))
                })
                .collect()
        })
        .collect())
}

/// Splits a grid into `k` squares validated against `sigs`.
///
/// Unlike [`decode_decimal`] this accepts single-symbol signatures `(n; n)`.
pub fn decode_squares(
    grid: &[Vec<u64>],
    k: usize,
    sigs: &[TypeSignature],
) -> Result<Vec<FrequencySquare>> {
    if k > MAX_SQUARES {
        return Err(Error::TooManySquares { k, max: MAX_SQUARES });
    }
    if sigs.len() != k {
        return Err(Error::ArityMismatch {
            expected: k,
            found: sigs.len(),
        });
    }
    let n = grid.len();
    for (r, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: format!("row {r} of length {}", row.len()),
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if k < 64 && v >> k != 0 {
                return Err(Error::EntryTooLarge { row: r, col: c });
            }
        }
    }
    sigs.iter()
        .enumerate()
        .map(|(t, sig)| {
            if sig.order() != n {
                return Err(Error::ValidationFailure {
                    square: t,
                    reason: Box::new(Error::OrderMismatch),
                });
            }
            let shift = k - 1 - t;
            let cells = grid
                .iter()
                .flat_map(|row| row.iter().map(move |&v| ((v >> shift) & 1) as u8))
                .collect();
            validate_square(sig, cells).map_err(|e| Error::ValidationFailure {
                square: t,
                reason: Box::new(e),
            })
        })
        .collect()
}

/// Inverse of [`encode_decimal`].
pub fn decode_decimal(grid: &[Vec<u64>], k: usize, sigs: &[TypeSignature]) -> Result<MofsSet> {
    let squares = decode_squares(grid, k, sigs)?;
    MofsSet::new(grid.len(), squares)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn most_significant_bit_is_first_square() {
        let bits = "0110000100";
        let k = bits.len();
        let squares: Vec<_> = bits
            .chars()
            .map(|ch| {
                // each bit becomes the top-left cell of a 2x2 square
                let b = ch.to_digit(2).unwrap() as u8;
                let sig = TypeSignature::binary(2, 1).unwrap();
                FrequencySquare::from_rows(&sig, &[[b, 1 - b], [1 - b, b]]).unwrap()
            })
            .collect();
        let set = MofsSet::new(2, squares).unwrap();
        let grid = encode_decimal(&set).unwrap();
        assert_eq!(grid[0][0], 388);
        assert_eq!(grid[0][1], (1 << k) - 1 - 388);
    }

    #[test]
    fn single_square_identity_encoding() {
        let sig = TypeSignature::binary(3, 1).unwrap();
        let sq = FrequencySquare::from_rows(&sig, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let set = MofsSet::new(3, vec![sq]).unwrap();
        let grid = encode_decimal(&set).unwrap();
        assert_eq!(grid, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let back = decode_decimal(&grid, 1, &[sig]).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn all_zero_grid_decodes_to_single_symbol_square() {
        let sig = TypeSignature::new(4, vec![4]).unwrap();
        let squares = decode_squares(&vec![vec![0; 4]; 4], 1, &[sig]).unwrap();
        assert_eq!(squares[0].cells(), &[0; 16]);
    }

    #[test]
    fn decode_errors() {
        let sig = TypeSignature::binary(2, 1).unwrap();
        let grid = vec![vec![2, 0], vec![0, 1]];
        assert_eq!(
            decode_decimal(&grid, 1, &[sig.clone()]).unwrap_err(),
            Error::EntryTooLarge { row: 0, col: 0 }
        );
        let grid = vec![vec![1, 1], vec![0, 0]];
        match decode_decimal(&grid, 1, &[sig]).unwrap_err() {
            Error::ValidationFailure { square: 0, .. } => {}
            e => panic!("unexpected {e:?}"),
        }
    }
}
