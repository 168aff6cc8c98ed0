//! Z_w-sums, relations and the extension tests they yield.

mod block;
mod obstruction;
mod relation;
mod theorems;

pub use block::{detect_block_structure, zw_sum, zw_sum_all, BlockStructure, ZwSum};
pub use obstruction::{
    compatible_block, even_frequency_obstruction, excluded_binary_types, extension_obstruction,
    EvenFrequencyVerdict, ObstructionReport,
};
pub use relation::{
    detect_any_relation, detect_full_relation, verify_relation, Relation, MAX_SUBSET_SQUARES,
};
pub use theorems::{check_parity_theorems, ParityTheorem, TheoremVerdict};
