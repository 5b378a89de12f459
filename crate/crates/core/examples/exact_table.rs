//! Exact f_k(n, t) for tiny n, as CSV.
//!
//!     cargo run --release --example exact_table

use permshatter::exact::{solve_table, ExactConfig, TABLE_HEADER};
use permshatter::files::csv_string;

fn main() -> permshatter::Result<()> {
    let rows = solve_table(&[3, 4, 5], &[3], 6, &ExactConfig::default())?;
    print!("{}", csv_string(&TABLE_HEADER, &rows)?);
    Ok(())
}
