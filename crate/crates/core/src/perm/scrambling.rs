use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{verify_t_shattering, PermFamily, Permutation, ShatterCertificate, VerifyMode};
use crate::combinatorics::{binomial, factorial};
use crate::config::{union_bound_size, BuildConfig};
use crate::error::{Error, Result};

/// A random family of permutations of `[n]` shattering every k-subset.
#[derive(Debug, Clone)]
pub struct ScramblingBuild {
    pub family: PermFamily,
    pub certificate: ShatterCertificate,
    pub rounds: usize,
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut order: Vec<u64> = (1..=n as u64).collect();
    order.shuffle(rng);
    Permutation::from_order(&order).expect("shuffle of [n] is a permutation")
}

/// Samples uniformly random permutations in batches until every k-subset of
/// `[n]` is fully shattered (exhaustively checked when within budget,
/// otherwise by seeded sampling when the config allows it).
pub fn build_scrambling_random(
    n: usize,
    k: usize,
    seed: u64,
    config: &BuildConfig,
) -> Result<ScramblingBuild> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n as u64 * 64 > config.materialize_cap {
        return Err(Error::BudgetExceeded {
            work: n as u128 * 64,
            budget: config.materialize_cap,
        });
    }
    let t = factorial(k) as u64;
    let subsets = binomial(n as u64, k as u64);
    let mode = if subsets <= config.subset_budget as u128 {
        VerifyMode::Exhaustive
    } else if config.allow_sampling {
        VerifyMode::Sampled {
            count: config.samples,
            seed: seed ^ 0x5eed,
        }
    } else {
        return Err(Error::BudgetExceeded {
            work: subsets,
            budget: config.subset_budget,
        });
    };
    let start = union_bound_size(&[(subsets.saturating_mul(t as u128), t as u128)]);
    let batch = (start / 10).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = PermFamily::new(
        n,
        (0..start)
            .map(|_| random_permutation(n, &mut rng))
            .collect(),
    )?;
    for round in 1..=config.max_rounds {
        let certificate = verify_t_shattering(&family, k, t, mode, config.subset_budget)?;
        if certificate.passed {
            return Ok(ScramblingBuild {
                family,
                certificate,
                rounds: round,
            });
        }
        for _ in 0..batch {
            family.push(random_permutation(n, &mut rng))?;
        }
    }
    Err(Error::RetriesExhausted {
        rounds: config.max_rounds,
        size: family.len(),
    })
}
