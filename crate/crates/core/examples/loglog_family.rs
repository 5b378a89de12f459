//! Builds a 4-subset, 4-order family on [2^40] and certifies it through the
//! lex constraint check, then spot-checks random 4-subsets.
//!
//!     cargo run --release --example loglog_family

use permshatter::lex::build_loglog_family;
use permshatter::perm::{verify_t_shattering, VerifyMode};
use permshatter::BuildConfig;

fn main() -> permshatter::Result<()> {
    let n = 1u64 << 40;
    let family = build_loglog_family(n, 4, 2024, &BuildConfig::default())?;
    let cert = &family.lex_certificate;
    println!(
        "n = 2^40 as [{}]^{}: {} members",
        family.b,
        family.d,
        family.lex.len()
    );
    println!(
        "lex check: {} systems, passed = {}",
        cert.systems_checked, cert.passed
    );

    let sample = verify_t_shattering(
        &family,
        4,
        4,
        VerifyMode::Sampled {
            count: 20_000,
            seed: 1,
        },
        0,
    )?;
    println!(
        "20000 random 4-subsets: min orders {} (target {})",
        sample.min_count, sample.t
    );
    Ok(())
}
