//! Families hitting min(2k, 2^⌈log₂ k⌉ + 4) orders: a slice-tree lex family
//! plus 4d coordinate-sweep orders. Exhaustive at n = 16, sampled at 2^16.
//!
//!     cargo run --release --example sqrtlog_family

use permshatter::lex::build_sqrtlog_family;
use permshatter::perm::{min_shatter, verify_t_shattering, OrderFamily, VerifyMode};
use permshatter::BuildConfig;

fn main() -> permshatter::Result<()> {
    let cfg = BuildConfig::default();
    for k in [4, 5] {
        let small = build_sqrtlog_family(16, k, 7, &cfg)?;
        let (min, _) = min_shatter(&small, k, 1_000_000)?;
        println!(
            "n = 16, k = {k}: {} members, every {k}-subset gets >= {min} (target {})",
            small.len(),
            small.guaranteed_t()
        );
    }

    let big = build_sqrtlog_family(1 << 16, 4, 7, &cfg)?;
    let cert = verify_t_shattering(
        &big,
        4,
        8,
        VerifyMode::Sampled {
            count: 50_000,
            seed: 2,
        },
        0,
    )?;
    println!(
        "n = 2^16 on [{}]^{}: {} lex members + {} sweeps; sampled min {}",
        big.b,
        big.d,
        big.lex.len(),
        big.extra.len(),
        cert.min_count
    );
    Ok(())
}
