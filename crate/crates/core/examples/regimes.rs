//! How f_k(n, t) grows in n for each t, k = 3..=6.
//!
//!     cargo run --example regimes

use permshatter::combinatorics::factorial;
use permshatter::exact::{regime, Regime};

fn main() -> permshatter::Result<()> {
    for k in 3..=6 {
        let mut runs: Vec<(u64, u64, Regime)> = Vec::new();
        for t in 1..=factorial(k) as u64 {
            let r = regime(k, t)?.regime;
            match runs.last_mut() {
                Some(last) if last.2 == r => last.1 = t,
                _ => runs.push((t, t, r)),
            }
        }
        let parts: Vec<String> = runs
            .iter()
            .map(|(a, b, r)| format!("{a}..={b} {r}"))
            .collect();
        println!("k = {k}: {}", parts.join(", "));
    }
    Ok(())
}
