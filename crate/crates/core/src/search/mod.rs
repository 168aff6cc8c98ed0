//! Mate generation, maximum-clique extension and the `f(n; Λ)` computations.

mod clique;
mod mates;
mod pairs;
pub mod table1;

pub use clique::{max_clique, BitGraph, CliqueOptions, CliqueResult, InitialOrder};
pub use mates::{
    build_mate_graph, count_mates, extend_to_maximum, f_value, f_value_with_seeds, generate_mates,
    is_maximal, is_type_maximal, normalize_types, orthogonality_graph, seed_catalogue, Extension,
    FValue, MateGraph, SearchOptions,
};
