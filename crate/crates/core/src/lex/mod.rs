//! Lex-permutations of the cube `[b]^d`, their slice structure, and the
//! constructions that turn them into partially shattering families of `[n]`.

mod construct;
mod order;
mod point;
mod shattering;
mod slice;

pub use construct::{
    build_loglog_family, build_sqrtlog_family, loglog_dims, sqrtlog_dims, Construction,
    ConstructionKind,
};
pub use order::{
    build_pi, lex_compare, Direction, LexFamily, LexFamilyFile, LexPermutation, PiOrder,
};
pub use point::{cube_size, decode, encode, first_diff, Point};
pub use shattering::{
    build_k_lex_random, choose_lex_mode, lex_system_count, scrambling_to_lex,
    verify_lex_shattering, Constraint, LexBuild, LexCertificate, LexCheckMode, Strength,
};
pub use slice::{
    index_set, product_bound, slice_decompose, slice_permutation, slice_profile,
    structure_analysis, GreedySlice, Guarantee, SliceDecomposition, SliceProfile, StructureReport,
    Verdict,
};
