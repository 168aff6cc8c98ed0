//! Parity consequences of a relation, evaluated as checkable predicates.

use std::fmt;

use super::relation::{verify_relation, Relation};
use crate::orthogonality::{verify_mofs, VerifyMode};
use crate::square::MofsSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityTheorem {
    /// Any non-constant relation: `n` even and `|X1| = |X2| (mod 2)`.
    NonConstantOrderEven,
    /// Binary, non-constant, full: `a = b = Σλ0 = Σλ1 (mod 2)`.
    NonConstantFullParity,
    /// Binary, constant, full `(n, b)`: `Σλ1` is even when `b = n`, `= n` when `b = 0`.
    ConstantFullParity,
    /// Binary, one type with `k`, `λ0`, `λ1` all odd, full: the relation is non-constant.
    OddUniformNotConstant,
    /// Binary MOFS with a non-constant full relation: all frequencies even, or odd
    /// frequencies in an odd number of squares.
    OddFrequencyCount,
    /// `k`-MOFS of one type with odd `λ0`, `λ1` and a non-constant full relation:
    /// `k = λ0 λ1 (mod 4)`.
    OddTypeModFour,
}

impl fmt::Display for ParityTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityTheorem::NonConstantOrderEven => "non-constant-order-even",
            ParityTheorem::NonConstantFullParity => "non-constant-full-parity",
            ParityTheorem::ConstantFullParity => "constant-full-parity",
            ParityTheorem::OddUniformNotConstant => "odd-uniform-not-constant",
            ParityTheorem::OddFrequencyCount => "odd-frequency-count",
            ParityTheorem::OddTypeModFour => "odd-type-mod-four",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub theorem: ParityTheorem,
    /// Hypotheses matched.
    pub applicable: bool,
    /// Conclusion holds; meaningless when not applicable.
    pub holds: bool,
    pub detail: String,
}

impl TheoremVerdict {
    /// A matched theorem whose conclusion fails on a verified relation.
    pub fn is_violation(&self) -> bool {
        self.applicable && !self.holds
    }
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.applicable, self.holds) {
            (false, _) => "n/a",
            (true, true) => "holds",
            (true, false) => "VIOLATED",
        };
        write!(f, "THEOREM {} {}", self.theorem, status)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn verdict(theorem: ParityTheorem, applicable: bool, holds: bool, detail: String) -> TheoremVerdict {
    TheoremVerdict {
        theorem,
        applicable,
        holds: applicable && holds,
        detail: if applicable { detail } else { String::new() },
    }
}

/// Evaluates every parity theorem whose hypotheses `(set, rel)` meet.
///
/// The relation must already satisfy [`verify_relation`]; if it does not, every verdict
/// is reported as not applicable.
pub fn check_parity_theorems(set: &MofsSet, rel: &Relation) -> Vec<TheoremVerdict> {
    use ParityTheorem::*;
    let satisfied = verify_relation(set, rel).unwrap_or(false);
    let n = set.order();
    let k = set.len();

    let non_constant = satisfied && !rel.is_constant();
    let general = verdict(
        NonConstantOrderEven,
        non_constant,
        n % 2 == 0 && rel.a() % 2 == rel.b() % 2,
        format!("n={n} a={} b={}", rel.a(), rel.b()),
    );

    let lambdas = set.lambda1s().ok().filter(|_| satisfied);
    let Some(l1) = lambdas else {
        let mut out = vec![general];
        out.extend(
            [NonConstantFullParity, ConstantFullParity, OddUniformNotConstant, OddFrequencyCount, OddTypeModFour]
                .into_iter()
                .map(|t| verdict(t, false, false, String::new())),
        );
        return out;
    };
    let l0: Vec<usize> = l1.iter().map(|&l| n - l).collect();
    let rel = rel.normalized_binary();
    let full = rel.is_full();
    let constant = rel.is_constant();
    let (a, b) = (rel.a(), rel.b());
    let s0: usize = l0.iter().sum();
    let s1: usize = l1.iter().sum();
    let uniform = l1.windows(2).all(|w| w[0] == w[1]);
    let odd_uniform = k > 0 && uniform && l1[0] % 2 == 1 && l0[0] % 2 == 1;
    let orthogonal = satisfied && verify_mofs(set, VerifyMode::FailFast).is_ok();

    let mut out = vec![general];
    out.push(verdict(
        NonConstantFullParity,
        full && !constant,
        a % 2 == b % 2 && b % 2 == s0 % 2 && s0 % 2 == s1 % 2,
        format!("a={a} b={b} sum0={s0} sum1={s1}"),
    ));
    // (0, b) is the same relation as (n, n - b)
    let b_rel = if a == n { b } else { n - b };
    out.push(verdict(
        ConstantFullParity,
        full && constant,
        if b_rel == n { s1 % 2 == 0 } else { s1 % 2 == n % 2 },
        format!("(n,{b_rel})-relation sum1={s1}"),
    ));
    out.push(verdict(
        OddUniformNotConstant,
        full && odd_uniform && k % 2 == 1,
        !constant,
        format!("k={k} type=({n};{},{})", l0[0], l1[0]),
    ));
    let odd_count = l1.iter().filter(|&&l| l % 2 == 1).count();
    let all_even = l0.iter().chain(&l1).all(|&l| l % 2 == 0);
    out.push(verdict(
        OddFrequencyCount,
        orthogonal && full && !constant,
        all_even || (odd_count % 2 == 1 && l1.iter().zip(&l0).all(|(x, y)| x % 2 == y % 2)),
        format!("odd squares={odd_count}"),
    ));
    out.push(verdict(
        OddTypeModFour,
        orthogonal && full && !constant && odd_uniform,
        k % 4 == (l0[0] * l1[0]) % 4,
        format!("k={k} l0*l1={}", l0[0] * l1[0]),
    ));
    out
}
