//! Families of permutations that partially shatter every k-subset of `[n]`.
//!
//! * [`perm`]: permutations, induced patterns and t-shattering certificates.
//! * [`lex`]: lex-permutations of `[b]^d` and the log-log and sqrt-log constructions.
//! * [`adversary`]: witness extraction, finding k-subsets any given family shatters poorly.
//! * [`exact`]: exact minimum family sizes at tiny `n`, and the growth-regime table.
//! * [`cli`]: the `permshatter` command surface.

pub mod adversary;
pub mod cli;
pub mod combinatorics;
pub mod config;
pub mod error;
pub mod exact;
pub mod files;
pub mod lex;
pub mod perm;

pub use config::BuildConfig;
pub use error::{Error, Result};
