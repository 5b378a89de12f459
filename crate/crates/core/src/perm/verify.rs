use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{OrderFamily, Pattern, Permutation};
use crate::combinatorics::{
    binomial, factorial, next_combination, packed_pattern, pattern_index, unrank_combination,
};
use crate::error::{Error, Result};

/// Default cap on the number of k-subsets an exhaustive check may visit.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

const CHUNK: u128 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VerifyMode {
    Exhaustive,
    /// `count` uniformly random k-subsets drawn from a ChaCha8 stream seeded with `seed`.
    Sampled {
        count: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterCertificate {
    pub n: u64,
    pub family_size: usize,
    pub k: usize,
    pub t: u64,
    pub mode: VerifyMode,
    pub min_count: u64,
    pub witness: Vec<u64>,
    pub passed: bool,
}

fn checked_subset(subset: &[u64], n: u64) -> Result<Vec<u64>> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateElement(w[0]));
        }
    }
    if let Some(&x) = sorted.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::ElementOutOfRange { element: x, n });
    }
    Ok(sorted)
}

pub fn induced_pattern(perm: &Permutation, subset: &[u64]) -> Result<Pattern> {
    let subset = checked_subset(subset, perm.n() as u64)?;
    let ranks = subset
        .iter()
        .map(|&y| {
            subset
                .iter()
                .filter(|&&z| perm.rank(z) <= perm.rank(y))
                .count() as u32
        })
        .collect();
    Ok(Pattern { ranks })
}

/// Distinct-pattern counter with scratch buffers sized for one subset size.
pub(crate) struct PatternCounter {
    keys: Vec<u64>,
    codes: Vec<u64>,
    small_patterns: bool,
}

impl PatternCounter {
    pub(crate) fn new(k: usize) -> Self {
        Self {
            keys: vec![0; k],
            codes: Vec::new(),
            small_patterns: factorial(k) <= 128,
        }
    }

    /// Number of distinct orders the family induces on a sorted, valid subset.
    pub(crate) fn count<F: OrderFamily + ?Sized>(&mut self, family: &F, subset: &[u64]) -> usize {
        let k = subset.len();
        self.keys.resize(k, 0);
        if self.small_patterns && k <= 5 {
            let mut seen = 0u128;
            for m in 0..family.len() {
                for (slot, &x) in self.keys.iter_mut().zip(subset) {
                    *slot = family.key(m, x);
                }
                seen |= 1u128 << pattern_index(&self.keys);
            }
            return seen.count_ones() as usize;
        }
        if k <= 16 {
            self.codes.clear();
            for m in 0..family.len() {
                for (slot, &x) in self.keys.iter_mut().zip(subset) {
                    *slot = family.key(m, x);
                }
                self.codes.push(packed_pattern(&self.keys));
            }
            self.codes.sort_unstable();
            self.codes.dedup();
            return self.codes.len();
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in 0..family.len() {
            for (slot, &x) in self.keys.iter_mut().zip(subset) {
                *slot = family.key(m, x);
            }
            let ranks: Vec<usize> = self
                .keys
                .iter()
                .map(|&kj| self.keys.iter().filter(|&&kl| kl < kj).count())
                .collect();
            seen.insert(ranks);
        }
        seen.len()
    }
}

/// Number of distinct permutations the family induces on `subset`.
pub fn count_induced<F: OrderFamily + ?Sized>(family: &F, subset: &[u64]) -> Result<usize> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let subset = checked_subset(subset, family.ground_size())?;
    Ok(PatternCounter::new(subset.len()).count(family, &subset))
}

/// Exhaustive minimum of `count_induced` over all k-subsets, with the
/// lexicographically least subset attaining it.
pub fn min_shatter<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    budget: u64,
) -> Result<(u64, Vec<u64>)> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.ground_size();
    if k as u64 > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let total = binomial(n, k as u64);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            work: total,
            budget,
        });
    }
    let n = n as usize;
    let chunks = total.div_ceil(CHUNK) as usize;
    let (count, rank) = (0..chunks)
        .into_par_iter()
        .map_init(
            || (PatternCounter::new(k), vec![0u64; k]),
            |(counter, subset), chunk| {
                let start = chunk as u128 * CHUNK;
                let end = (start + CHUNK).min(total);
                let mut comb = unrank_combination(n, k, start);
                let mut best = (usize::MAX, u128::MAX);
                for rank in start..end {
                    for (s, &c) in subset.iter_mut().zip(&comb) {
                        *s = c as u64 + 1;
                    }
                    let c = counter.count(family, subset);
                    if c < best.0 {
                        best = (c, rank);
                    }
                    if !comb.is_empty() {
                        next_combination(&mut comb, n);
                    }
                }
                best
            },
        )
        .min()
        .expect("at least one chunk");
    let witness = unrank_combination(n, k, rank)
        .into_iter()
        .map(|c| c as u64 + 1)
        .collect();
    Ok((count as u64, witness))
}

pub fn verify_t_shattering<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    t: u64,
    mode: VerifyMode,
    budget: u64,
) -> Result<ShatterCertificate> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.ground_size();
    if k as u64 > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let (min_count, witness) = match mode {
        VerifyMode::Exhaustive => min_shatter(family, k, budget)?,
        VerifyMode::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::InvalidParameter(
                    "sampled verification needs at least one sample".into(),
                ));
            }
            sampled_min(family, k, count, seed)?
        }
    };
    Ok(ShatterCertificate {
        n,
        family_size: family.len(),
        k,
        t,
        mode,
        min_count,
        witness,
        passed: min_count >= t,
    })
}

fn sampled_min<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    count: u64,
    seed: u64,
) -> Result<(u64, Vec<u64>)> {
    let n = usize::try_from(family.ground_size())
        .map_err(|_| Error::InvalidParameter("ground set too large for this platform".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counter = PatternCounter::new(k);
    let mut best: Option<(usize, Vec<u64>)> = None;
    for _ in 0..count {
        let mut subset: Vec<u64> = rand::seq::index::sample(&mut rng, n, k)
            .into_iter()
            .map(|i| i as u64 + 1)
            .collect();
        subset.sort_unstable();
        let c = counter.count(family, &subset);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, subset));
        }
    }
    let (c, w) = best.expect("count > 0");
    Ok((c as u64, w))
}
