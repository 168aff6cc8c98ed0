//! Text format for sets of binary squares.
//!
//! A file holds one or more records. Each record starts with a header
//!
//! ```text
//! MOFS n=<n> k=<k> types=<λ1,λ1,...> [format=bin]
//! ```
//!
//! followed by `n` lines of `n` superimposed decimal entries, or with `format=bin` by
//! `k` blocks of `n` lines of `n` zeros and ones. `#` starts a comment, blank lines are
//! ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::encoding::{decode_squares, encode_decimal, MAX_SQUARES};
use crate::error::{Error, Result};
use crate::square::{FrequencySquare, MofsSet, TypeSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridFormat {
    #[default]
    Decimal,
    Binary,
}

struct Header {
    n: usize,
    k: usize,
    types: Vec<usize>,
    format: GridFormat,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header(line: usize, text: &str) -> Result<Header> {
    let mut words = text.split_whitespace();
    if words.next() != Some("MOFS") {
        return Err(parse_err(line, "expected a MOFS header"));
    }
    let (mut n, mut k, mut types, mut format) = (None, None, None, GridFormat::Decimal);
    for word in words {
        let (key, value) = word
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("malformed field `{word}`")))?;
        let num = |v: &str| v.parse::<usize>().map_err(|_| parse_err(line, format!("bad number `{v}`")));
        match key {
            "n" => n = Some(num(value)?),
            "k" => k = Some(num(value)?),
            "types" if value.is_empty() => types = Some(Vec::new()),
            "types" => types = Some(value.split(',').map(num).collect::<Result<Vec<_>>>()?),
            "format" => {
                format = match value {
                    "bin" => GridFormat::Binary,
                    "dec" => GridFormat::Decimal,
                    _ => return Err(parse_err(line, format!("unknown format `{value}`"))),
                }
            }
            _ => return Err(parse_err(line, format!("unknown field `{key}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(line, "missing n"))?;
    let k = k.ok_or_else(|| parse_err(line, "missing k"))?;
    let types = types.ok_or_else(|| parse_err(line, "missing types"))?;
    if types.len() != k {
        return Err(parse_err(line, format!("{} types listed for k={k}", types.len())));
    }
    Ok(Header { n, k, types, format })
}

fn parse_row(line: usize, text: &str, n: usize) -> Result<Vec<u64>> {
    let row = text
        .split_whitespace()
        .map(|v| v.parse::<u64>().map_err(|_| parse_err(line, format!("bad entry `{v}`"))))
        .collect::<Result<Vec<_>>>()?;
    if row.len() != n {
        return Err(parse_err(line, format!("expected {n} entries, found {}", row.len())));
    }
    Ok(row)
}

/// Every record in `text`, in order.
pub fn parse_mofs(text: &str) -> Result<Vec<MofsSet>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let mut out = Vec::new();
    while let Some((at, head)) = lines.next() {
        let h = parse_header(at, head)?;
        let rows_needed = match h.format {
            GridFormat::Decimal => h.n,
            GridFormat::Binary => h.n * h.k,
        };
        let mut rows = Vec::with_capacity(rows_needed);
        for _ in 0..rows_needed {
            let (line, text) = lines
                .next()
                .ok_or_else(|| parse_err(at, "record ends early"))?;
            if text.starts_with("MOFS") {
                return Err(parse_err(line, "record ends early"));
            }
            rows.push((line, parse_row(line, text, h.n)?));
        }
        let sigs = h
            .types
            .iter()
            .map(|&l| TypeSignature::binary(h.n, l))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| parse_err(at, e.to_string()))?;
        let squares = match h.format {
            GridFormat::Decimal => {
                let grid: Vec<Vec<u64>> = rows.into_iter().map(|(_, r)| r).collect();
                decode_squares(&grid, h.k, &sigs).map_err(|e| parse_err(at, e.to_string()))?
            }
            GridFormat::Binary => rows
                .chunks(h.n.max(1))
                .zip(&sigs)
                .map(|(block, sig)| {
                    let mut cells = Vec::with_capacity(h.n * h.n);
                    for (line, row) in block {
                        for &v in row {
                            if v > 1 {
                                return Err(parse_err(*line, format!("entry {v} is not binary")));
                            }
                            cells.push(v as u8);
                        }
                    }
                    crate::square::validate_square(sig, cells).map_err(|e| parse_err(block[0].0, e.to_string()))
                })
                .collect::<Result<Vec<FrequencySquare>>>()?,
        };
        out.push(MofsSet::new(h.n, squares).map_err(|e| parse_err(at, e.to_string()))?);
    }
    Ok(out)
}

/// The single record in `text`.
pub fn parse_one(text: &str) -> Result<MofsSet> {
    let mut sets = parse_mofs(text)?;
    match sets.len() {
        1 => Ok(sets.remove(0)),
        found => Err(parse_err(0, format!("expected one record, found {found}"))),
    }
}

pub fn read_mofs(path: impl AsRef<Path>) -> Result<Vec<MofsSet>> {
    parse_mofs(&std::fs::read_to_string(path)?)
}

pub fn read_one(path: impl AsRef<Path>) -> Result<MofsSet> {
    parse_one(&std::fs::read_to_string(path)?)
}

/// One record. Decimal is only possible for binary sets of at most 64 squares, larger
/// sets are written in blocks.
pub fn write_mofs(set: &MofsSet, format: GridFormat) -> Result<String> {
    let n = set.order();
    let types = set.lambda1s()?;
    let format = if set.len() > MAX_SQUARES { GridFormat::Binary } else { format };
    let mut out = String::new();
    let list: Vec<String> = types.iter().map(usize::to_string).collect();
    write!(out, "MOFS n={n} k={} types={}", set.len(), list.join(",")).unwrap();
    match format {
        GridFormat::Decimal => {
            out.push('\n');
            for row in encode_decimal(set)? {
                let row: Vec<String> = row.iter().map(u64::to_string).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
        GridFormat::Binary => {
            out.push_str(" format=bin\n");
            for (t, sq) in set.squares().iter().enumerate() {
                if t > 0 {
                    out.push('\n');
                }
                for r in 0..n {
                    let row: Vec<String> = sq.row(r).iter().map(u8::to_string).collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// Records separated by blank lines.
pub fn write_catalogue<'a>(sets: impl IntoIterator<Item = &'a MofsSet>, format: GridFormat) -> Result<String> {
    let mut out = String::new();
    for (i, set) in sets.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&write_mofs(set, format)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = "# two squares\nMOFS n=2 k=2 types=1,1 format=bin\n1 0\n0 1\n\n0 1 # trailing\n1 0\n";

    #[test]
    fn binary_blocks_and_comments() {
        let set = parse_one(PAIR).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.squares()[1].row(0), &[0, 1]);
    }

    #[test]
    fn decimal_round_trip() {
        let set = parse_one(PAIR).unwrap();
        let text = write_mofs(&set, GridFormat::Decimal).unwrap();
        assert_eq!(text, "MOFS n=2 k=2 types=1,1\n2 1\n1 2\n");
        assert_eq!(parse_one(&text).unwrap(), set);
        let bin = write_mofs(&set, GridFormat::Binary).unwrap();
        assert_eq!(parse_one(&bin).unwrap(), set);
    }

    #[test]
    fn several_records() {
        let set = parse_one(PAIR).unwrap();
        let text = write_catalogue([&set, &set], GridFormat::Decimal).unwrap();
        assert_eq!(parse_mofs(&text).unwrap().len(), 2);
        assert!(parse_one(&text).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "MOFS n=2 k=1 types=1\n1 0\n0\n";
        assert!(matches!(parse_mofs(bad), Err(Error::Parse { line: 3, .. })));
        let short = "MOFS n=2 k=1 types=1\n1 0\n";
        assert!(matches!(parse_mofs(short), Err(Error::Parse { line: 1, .. })));
        let wrong = "MOFS n=2 k=1 types=1\n1 1\n0 0\n";
        assert!(matches!(parse_mofs(wrong), Err(Error::Parse { line: 1, .. })));
        assert!(parse_mofs("MOFS n=2 k=2 types=1\n").is_err());
        assert!(parse_mofs("1 0\n").is_err());
    }
}
