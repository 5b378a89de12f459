//! Family size against n for both constructions, the numbers behind the
//! loglog-vs-sqrtlog comparison. Same CSV as `permshatter bench`.
//!
//!     cargo run --release --example bench_sweep

fn main() {
    let code = permshatter::cli::run([
        "permshatter",
        "bench",
        "--construction",
        "loglog,sqrtlog",
        "--n",
        "16,256,65536,4294967296",
        "--k",
        "4",
        "--samples",
        "2000",
    ]);
    std::process::exit(code);
}
