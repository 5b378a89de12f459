//! Any two permutations of [4096] leave some 4-subset with at most 8 orders.
//! Shows the nested ordered pairs the chain method walks through.
//!
//!     cargo run --release --example chain_adversary

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permshatter::adversary::chain_witness;
use permshatter::perm::{PermFamily, Permutation};

fn main() -> permshatter::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let members = (0..2)
        .map(|_| {
            let mut order: Vec<u64> = (1..=4096).collect();
            order.shuffle(&mut rng);
            Permutation::from_order(&order)
        })
        .collect::<permshatter::Result<Vec<_>>>()?;
    let family = PermFamily::new(4096, members)?;

    let run = chain_witness(&family, 4, false)?;
    for (i, pair) in run.pairs.iter().enumerate() {
        println!(
            "level {}: |A| = {}, |B| = {}, directions {:?}",
            i + 1,
            pair.a.len(),
            pair.b.len(),
            pair.direction
        );
    }
    let w = &run.witness;
    println!(
        "witness {:?}: {} orders, bound {}",
        w.witness, w.achieved_count, w.guaranteed_bound
    );
    Ok(())
}
