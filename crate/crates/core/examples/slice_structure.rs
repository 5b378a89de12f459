//! Which 4-point sets of [3]^3 are guaranteed 8 orders by any lex-shattering
//! family, and which are rigid.
//!
//!     cargo run --example slice_structure

use std::collections::BTreeMap;

use permshatter::combinatorics::Combinations;
use permshatter::lex::{encode, structure_analysis, Verdict};

fn main() -> permshatter::Result<()> {
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut example = None;
    for c in Combinations::new(27, 4) {
        let x = c
            .iter()
            .map(|&i| encode(27, 3, 3, i as u64 + 1))
            .collect::<permshatter::Result<Vec<_>>>()?;
        let report = structure_analysis(&x, 4)?;
        let label = match &report.verdict {
            Verdict::Guaranteed2k(why) => format!("{why:?}"),
            Verdict::Rigid { .. } => {
                example.get_or_insert(x.clone());
                "Rigid".to_owned()
            }
        };
        *tally.entry(label).or_default() += 1;
    }
    for (label, count) in &tally {
        println!("{label:>16}: {count}");
    }
    if let Some(x) = example {
        let coords: Vec<_> = x.iter().map(|p| p.coords().to_vec()).collect();
        println!("a rigid set: {coords:?}");
    }
    Ok(())
}
