//! Tree method on one permutation of [256], then how tall a 2-colored tree
//! really has to be before a height-2 monochromatic-layer subdivision exists,
//! against the g_upper bound.
//!
//!     cargo run --release --example tree_adversary

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permshatter::adversary::{g_upper, min_mono_height, tree_witness, TreeColoring};
use permshatter::perm::{PermFamily, Permutation};

fn main() -> permshatter::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut order: Vec<u64> = (1..=256).collect();
    order.shuffle(&mut rng);
    let family = PermFamily::new(256, vec![Permutation::from_order(&order)?])?;
    let run = tree_witness(&family, 4, false)?;
    let sub = run
        .search
        .subdivision
        .as_ref()
        .expect("found at full height");
    println!(
        "tree height {}, subdivision leaves {:?}",
        run.tree.height(),
        sub.leaves()
    );
    println!(
        "witness {:?}: {} orders",
        run.witness.witness, run.witness.achieved_count
    );

    for palette in [2u64, 3, 4] {
        let mut worst = 0;
        for _ in 0..2000 {
            let colors = (0..(1 << 7) - 1)
                .map(|_| {
                    let c = rng.gen_range(0..palette);
                    vec![c & 1 == 1, c & 2 == 2]
                })
                .collect();
            let coloring = TreeColoring::new(6, colors)?;
            worst = worst.max(min_mono_height(&coloring, 2).unwrap_or(usize::MAX));
        }
        println!(
            "{palette} colors: tallest needed over 2000 colorings = {worst}, g_upper = {}",
            g_upper(palette, 2)
        );
    }
    Ok(())
}
