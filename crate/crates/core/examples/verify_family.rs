//! Saves a random fully-3-shattering family, loads it back and re-verifies.
//!
//!     cargo run --release --example verify_family

use permshatter::perm::{
    build_scrambling_random, count_induced, verify_t_shattering, PermFamily, VerifyMode,
};
use permshatter::BuildConfig;

fn main() -> permshatter::Result<()> {
    let build = build_scrambling_random(20, 3, 5, &BuildConfig::default())?;
    println!(
        "{} permutations of [20] after {} rounds",
        build.family.len(),
        build.rounds
    );

    let path = std::env::temp_dir().join("permshatter-example-family.json");
    build.family.save(&path)?;
    let loaded = PermFamily::load(&path)?;
    let cert = verify_t_shattering(&loaded, 3, 6, VerifyMode::Exhaustive, 1_000_000)?;
    assert_eq!(cert, build.certificate);
    println!(
        "reloaded from {}: min {} over all 3-subsets",
        path.display(),
        cert.min_count
    );

    let first_two = PermFamily::new(20, loaded.members()[..2].to_vec())?;
    println!(
        "the first two members alone give {{1, 2, 3}} {} orders",
        count_induced(&first_two, &[1, 2, 3])?
    );
    Ok(())
}
