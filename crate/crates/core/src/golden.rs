//! Example sets shipped with the crate, parsed from `data/`.

use crate::error::{Error, Result};
use crate::format::parse_one;
use crate::square::MofsSet;

/// `(name, file contents)` for every bundled set.
pub const FILES: &[(&str, &str)] = &[
    ("case0_type1_10", include_str!("../data/case0_type1_10.mofs")),
    ("case10_example", include_str!("../data/case10_example.mofs")),
    ("case11_example", include_str!("../data/case11_example.mofs")),
    ("case2_type2_14", include_str!("../data/case2_type2_14.mofs")),
    ("case4_example", include_str!("../data/case4_example.mofs")),
    ("case5_example", include_str!("../data/case5_example.mofs")),
    ("case6_example", include_str!("../data/case6_example.mofs")),
    ("case7_example", include_str!("../data/case7_example.mofs")),
    ("case8_example", include_str!("../data/case8_example.mofs")),
    ("case9_example", include_str!("../data/case9_example.mofs")),
    ("constant_rel", include_str!("../data/constant_rel.mofs")),
    ("ejc_goof", include_str!("../data/ejc_goof.mofs")),
    ("ex1", include_str!("../data/ex1.mofs")),
    ("ex_p_rel", include_str!("../data/ex_p_rel.mofs")),
    ("mofs5_8", include_str!("../data/mofs5_8.mofs")),
    ("notmax", include_str!("../data/notmax.mofs")),
    ("notmax_extension", include_str!("../data/notmax_extension.mofs")),
    ("oddmax1", include_str!("../data/oddmax1.mofs")),
    ("oddmax1_companion", include_str!("../data/oddmax1_companion.mofs")),
    ("oddmax2", include_str!("../data/oddmax2.mofs")),
    ("oddmax2_companion", include_str!("../data/oddmax2_companion.mofs")),
    ("pseudo_rel_a", include_str!("../data/pseudo_rel_a.mofs")),
    ("pseudo_rel_b", include_str!("../data/pseudo_rel_b.mofs")),
    ("pseudo_rel_extender", include_str!("../data/pseudo_rel_extender.mofs")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Io(format!("no bundled set named {name}")))
}

pub fn load(name: &str) -> Result<MofsSet> {
    parse_one(text(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses() {
        for name in names() {
            load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(load("missing").is_err());
    }
}
