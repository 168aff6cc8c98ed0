//! Modular tests ruling out frequencies of a square that would extend a set.

use std::fmt;

use super::block::{detect_block_structure, zw_sum_all, BlockStructure};
use super::relation::{verify_relation, Relation};
use crate::error::{Error, Result};
use crate::orthogonality::{verify_mofs, VerifyMode};
use crate::square::{MofsSet, TypeSignature};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Outcome of testing a candidate extension type against a block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub w: u64,
    pub a: usize,
    pub b: usize,
    pub x: [u64; 4],
    /// `a(x2 - x4) + b(x3 - x4) + n x4 mod w`.
    pub rhs: u64,
    /// `Σ λ1,t mod w`.
    pub lhs_base: u64,
    /// Residues `μ mod w` coprime to `w`; every such frequency is excluded iff
    /// `lhs_base != rhs`, otherwise this is empty.
    pub coprime_excluded: Vec<u64>,
    /// Per-frequency verdict for the candidate type: `(μ_i, excluded)`.
    pub frequencies: Vec<(usize, bool)>,
    /// Some frequency of the candidate fails the congruence, so no square of this
    /// type extends the set.
    pub type_excluded: bool,
}

impl ObstructionReport {
    /// Whether a frequency `mu` fails `mu Σλ1 = mu rhs (mod w)`.
    pub fn excludes_frequency(&self, mu: usize) -> bool {
        let m = mu as u64 % self.w;
        (m * self.lhs_base) % self.w != (m * self.rhs) % self.w
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OBSTRUCTION w={} a={} b={} x={},{},{},{} lhs={} rhs={} excluded_residues={{",
            self.w, self.a, self.b, self.x[0], self.x[1], self.x[2], self.x[3], self.lhs_base, self.rhs
        )?;
        for (i, r) in self.coprime_excluded.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("} mu=")?;
        for (i, (mu, ex)) in self.frequencies.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{mu}:{}", if *ex { "excluded" } else { "ok" })?;
        }
        write!(f, " type_excluded={}", self.type_excluded)
    }
}

/// Tests whether a square of type `mu` could extend `set`, given a compatible block
/// structure of the set's Z_w-sum.
pub fn extension_obstruction(
    set: &MofsSet,
    block: &BlockStructure,
    mu: &TypeSignature,
) -> Result<ObstructionReport> {
    if !block.compatible {
        return Err(Error::IncompatibleBlocks);
    }
    let l1 = set.lambda1s()?;
    if block.n != set.order() || mu.order() != set.order() {
        return Err(Error::OrderMismatch);
    }
    let w = block.w;
    let lhs_base = l1.iter().map(|&l| l as u64).sum::<u64>() % w;
    let rhs = block.rhs();
    let coprime_excluded = if lhs_base != rhs {
        (1..w).filter(|&r| gcd(r, w) == 1).collect()
    } else {
        Vec::new()
    };
    let mut report = ObstructionReport {
        w,
        a: block.a,
        b: block.b,
        x: block.x,
        rhs,
        lhs_base,
        coprime_excluded,
        frequencies: Vec::new(),
        type_excluded: false,
    };
    report.frequencies = mu
        .freqs()
        .iter()
        .map(|&m| (m, report.excludes_frequency(m)))
        .collect();
    report.type_excluded = report.frequencies.iter().any(|&(_, ex)| ex);
    Ok(report)
}

/// Compatible block structure of the whole set's Z_w-sum, if any.
pub fn compatible_block(set: &MofsSet, w: u64) -> Result<Option<BlockStructure>> {
    if set.is_empty() {
        return Ok(None);
    }
    let z = zw_sum_all(set, w)?;
    Ok(detect_block_structure(&z).filter(|b| b.compatible))
}

/// Binary types `λ1` in `1..=n/2` excluded by the Z_w block test.
pub fn excluded_binary_types(set: &MofsSet, w: u64) -> Result<Vec<usize>> {
    let Some(block) = compatible_block(set, w)? else {
        return Ok(Vec::new());
    };
    let n = set.order();
    let mut out = Vec::new();
    for l in 1..=n / 2 {
        let report = extension_obstruction(set, &block, &TypeSignature::binary(n, l)?)?;
        if report.type_excluded {
            out.push(l);
        }
    }
    Ok(out)
}

/// Consequence of a non-constant full relation on a set with an odd frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenFrequencyVerdict {
    /// Every square extending the set has only even frequencies.
    pub even_only: bool,
    /// Binary types `λ1 <= n/2` that remain possible.
    pub allowed_binary_types: Vec<usize>,
    /// Every type present in the set has an odd frequency, so none can recur.
    pub type_maximal: bool,
}

impl fmt::Display for EvenFrequencyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EVEN-ONLY allowed_types={")?;
        for (i, l) in self.allowed_binary_types.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}} type_maximal={}", self.type_maximal)
    }
}

pub fn even_frequency_obstruction(set: &MofsSet, rel: &Relation) -> Result<EvenFrequencyVerdict> {
    let l1 = set.lambda1s()?;
    let n = set.order();
    if !verify_relation(set, rel)? {
        return Err(Error::HypothesisNotMet("the set does not satisfy the relation".into()));
    }
    if rel.is_constant() || !rel.is_full() {
        return Err(Error::HypothesisNotMet("relation must be non-constant and full".into()));
    }
    if !verify_mofs(set, VerifyMode::FailFast).is_ok() {
        return Err(Error::HypothesisNotMet("squares are not mutually orthogonal".into()));
    }
    let has_odd = l1.iter().any(|&l| l % 2 == 1 || (n - l) % 2 == 1);
    if !has_odd {
        return Err(Error::HypothesisNotMet("no symbol has odd frequency".into()));
    }
    let allowed_binary_types = (1..=n / 2).filter(|&l| l % 2 == 0 && (n - l) % 2 == 0).collect();
    let type_maximal = l1.iter().all(|&l| l % 2 == 1 || (n - l) % 2 == 1);
    Ok(EvenFrequencyVerdict {
        even_only: true,
        allowed_binary_types,
        type_maximal,
    })
}
