use crate::perm::DEFAULT_SUBSET_BUDGET;

/// Default cap on the number of lex constraint systems checked exhaustively.
pub const DEFAULT_LEX_BUDGET: u64 = 200_000_000;

/// Default cap on `n * |family|` rank entries when materializing a family.
pub const DEFAULT_MATERIALIZE_CAP: u64 = 1 << 26;

/// Knobs shared by the randomized constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildConfig {
    /// Largest number of k-subsets an exhaustive check may visit.
    pub subset_budget: u64,
    /// Largest number of lex constraint systems an exhaustive check may visit.
    pub lex_budget: u64,
    /// Number of random samples used once a budget is exceeded.
    pub samples: u64,
    /// Fall back to seeded sampling instead of failing when over budget.
    pub allow_sampling: bool,
    /// Batches appended before giving up.
    pub max_rounds: usize,
    pub materialize_cap: u64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            subset_budget: DEFAULT_SUBSET_BUDGET,
            lex_budget: DEFAULT_LEX_BUDGET,
            samples: 10_000,
            allow_sampling: true,
            max_rounds: 64,
            materialize_cap: DEFAULT_MATERIALIZE_CAP,
        }
    }
}

/// Smallest `N` such that `Σ count · (1 - 1/patterns)^N <= 1`, i.e. the size at
/// which a uniformly random family is expected to miss at most one requirement.
pub(crate) fn union_bound_size(shapes: &[(u128, u128)]) -> usize {
    let misses = |size: usize| -> f64 {
        shapes
            .iter()
            .filter(|(_, p)| *p > 1)
            .map(|&(count, p)| count as f64 * (1.0 - 1.0 / p as f64).powi(size as i32))
            .sum()
    };
    let mut size = shapes
        .iter()
        .map(|&(_, p)| p as usize)
        .max()
        .unwrap_or(1)
        .max(1);
    while misses(size) > 1.0 {
        size += (size / 16).max(1);
    }
    size
}
