//! The `permshatter` command line: construct, verify, adversary, exact,
//! regime and bench.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage, 3 budget exceeded,
//! 4 precondition violated.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::adversary::{chain_witness, tree_witness, Method, Witness};
use crate::combinatorics::{binomial, factorial};
use crate::config::{BuildConfig, DEFAULT_LEX_BUDGET, DEFAULT_MATERIALIZE_CAP};
use crate::error::{Error, Result};
use crate::exact::{f_exact, regime, solve_table, ExactConfig, RegimeAnswer, TABLE_HEADER};
use crate::files::{csv_string, read_json, write_json};
use crate::lex::{
    build_loglog_family, build_sqrtlog_family, verify_lex_shattering, Construction, LexCertificate,
    LexCheckMode, LexFamily, Strength,
};
use crate::perm::{
    build_scrambling_random, monotone_family, verify_t_shattering, OrderFamily, PermFamily,
    ShatterCertificate, VerifyMode, DEFAULT_SUBSET_BUDGET,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Precondition(_)
        | Error::InsufficientGroundSet { .. }
        | Error::EmptyFragment { .. } => EXIT_PRECONDITION,
        Error::RetriesExhausted { .. } | Error::InvalidSubdivision(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "permshatter",
    version,
    about = "Partially shattering families of permutations"
)]
pub struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest number of k-subsets an exhaustive check may visit.
    #[arg(long, global = true, env = "PERMSHATTER_SUBSET_BUDGET", default_value_t = DEFAULT_SUBSET_BUDGET)]
    pub subset_budget: u64,

    /// Largest number of lex constraint systems an exhaustive check may visit.
    #[arg(long, global = true, env = "PERMSHATTER_LEX_BUDGET", default_value_t = DEFAULT_LEX_BUDGET)]
    pub lex_budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family and certify it.
    Construct(ConstructArgs),
    /// Check a family file for t-shattering (or a lex family for k-lex-shattering).
    Verify(VerifyArgs),
    /// Extract a poorly shattered k-subset from a family.
    Adversary(AdversaryArgs),
    /// Exact f_k(n, t) for tiny n.
    Exact(ExactArgs),
    /// Growth regime of f_k(n, t) in n.
    Regime(RegimeArgs),
    /// Family sizes across a sweep of n, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Loglog,
    Sqrtlog,
    Scrambling,
    Monotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

/// How to check t-shattering.
#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Default: exhaustive when within the subset budget, otherwise sampled.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl CheckArgs {
    fn resolve(&self, n: u64, k: usize, budget: u64) -> Result<VerifyMode> {
        let sampled = VerifyMode::Sampled {
            count: self.samples,
            seed: self.seed,
        };
        match self.mode {
            Some(ModeArg::Exhaustive) => Ok(VerifyMode::Exhaustive),
            Some(ModeArg::Sampled) => Ok(sampled),
            None if binomial(n, k as u64) <= budget as u128 => Ok(VerifyMode::Exhaustive),
            None => Ok(sampled),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: u64,
    /// Subset size (default 2 for monotone families).
    #[arg(long)]
    pub k: Option<usize>,
    /// Target count; defaults to what the construction guarantees.
    #[arg(long)]
    pub t: Option<u64>,
    #[command(flatten)]
    pub check: CheckArgs,
    /// Family in the `{"n", "perms"}` format, restricted to [n].
    #[arg(long)]
    pub family_out: Option<PathBuf>,
    /// The lex part of a loglog or sqrtlog construction.
    #[arg(long)]
    pub lex_out: Option<PathBuf>,
    #[arg(long)]
    pub cert_out: Option<PathBuf>,
}

/// A certificate plus what produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructRecord {
    pub kind: Kind,
    pub seed: u64,
    #[serde(flatten)]
    pub certificate: ShatterCertificate,
    pub lex_certificate: Option<LexCertificate>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Family file in the `{"n", "perms"}` format.
    #[arg(
        long,
        required_unless_present = "lex_family",
        conflicts_with = "lex_family"
    )]
    pub family: Option<PathBuf>,
    /// Lex family file in the `{"b", "d", "members"}` format.
    #[arg(long)]
    pub lex_family: Option<PathBuf>,
    #[arg(long)]
    pub k: usize,
    /// Required for `--family`.
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long, value_enum, default_value_t = StrengthArg::Full)]
    pub strength: StrengthArg,
    #[command(flatten)]
    pub check: CheckArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrengthArg {
    Full,
    SliceTree,
}

#[derive(Debug, Clone, Args)]
pub struct AdversaryArgs {
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[arg(long)]
    pub k: usize,
    /// Run below the size threshold and report whatever is found.
    #[arg(long)]
    pub best_effort: bool,
    /// Seed that produced the family, recorded in the witness.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-vertex fragment sizes and colors of the tree method.
    #[arg(long)]
    pub tree_dump: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Chain,
    Tree,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<usize>,
    /// Single target; without it every t up to `--t-max` is solved.
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long, default_value_t = 6)]
    pub t_max: u64,
    #[arg(long, default_value_t = crate::exact::DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Search without fixing the first member.
    #[arg(long)]
    pub no_reduce: bool,
    /// Solved table as CSV (n,k,t,m); stdout when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Optimal family of a single solve.
    #[arg(long)]
    pub family_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RegimeArgs {
    #[arg(long)]
    pub k: usize,
    /// Without `--t`, every t in [1, k!] is listed (at most 10^4 rows).
    #[arg(long)]
    pub t: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Kind::Loglog, Kind::Sqrtlog])]
    pub construction: Vec<Kind>,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<u64>,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: u64,
    pub construction: Kind,
    pub k: usize,
    pub family_size: Option<usize>,
    pub build_ms: Option<f64>,
    pub verify_mode: Option<String>,
    pub t: Option<u64>,
    pub min_count: Option<u64>,
    pub passed: Option<bool>,
    pub error: Option<String>,
}

pub const BENCH_HEADER: [&str; 10] = [
    "n",
    "construction",
    "k",
    "family_size",
    "build_ms",
    "verify_mode",
    "t",
    "min_count",
    "passed",
    "error",
];

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn build_config(cli: &Cli, samples: u64) -> BuildConfig {
    BuildConfig {
        subset_budget: cli.subset_budget,
        lex_budget: cli.lex_budget,
        samples,
        ..BuildConfig::default()
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Construct(a) => run_construct(cli, a),
        Command::Verify(a) => run_verify(cli, a),
        Command::Adversary(a) => run_adversary(a),
        Command::Exact(a) => run_exact(a),
        Command::Regime(a) => run_regime(a),
        Command::Bench(a) => run_bench(cli, a),
    }
}

fn emit<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<()> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn pass_code(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn run_construct(cli: &Cli, a: &ConstructArgs) -> Result<i32> {
    let config = build_config(cli, a.check.samples);
    let seed = a.check.seed;
    let (record, family) = match a.kind {
        Kind::Loglog | Kind::Sqrtlog => {
            let k =
                a.k.ok_or_else(|| Error::InvalidParameter("--k is required".into()))?;
            let c = if a.kind == Kind::Loglog {
                build_loglog_family(a.n, k, seed, &config)?
            } else {
                build_sqrtlog_family(a.n, k, seed, &config)?
            };
            let t = target(a.t, c.guaranteed_t())?;
            if let Some(p) = &a.lex_out {
                c.lex.save(p)?;
            }
            let certificate = certify(&c, k, t, &a.check, cli.subset_budget)?;
            let family = match &a.family_out {
                Some(_) => Some(c.to_perm_family(DEFAULT_MATERIALIZE_CAP)?),
                None => None,
            };
            let record = ConstructRecord {
                kind: a.kind,
                seed,
                certificate,
                lex_certificate: Some(c.lex_certificate),
            };
            (record, family)
        }
        Kind::Scrambling => {
            let k =
                a.k.ok_or_else(|| Error::InvalidParameter("--k is required".into()))?;
            let n =
                usize::try_from(a.n).map_err(|_| Error::InvalidParameter("n too large".into()))?;
            let build = build_scrambling_random(n, k, seed, &config)?;
            let t = target(a.t, factorial(k) as u64)?;
            let certificate = certify(&build.family, k, t, &a.check, cli.subset_budget)?;
            (
                ConstructRecord {
                    kind: a.kind,
                    seed,
                    certificate,
                    lex_certificate: None,
                },
                Some(build.family),
            )
        }
        Kind::Monotone => {
            let t = a.t.ok_or_else(|| {
                Error::InvalidParameter("--t is required for monotone families".into())
            })?;
            let n =
                usize::try_from(a.n).map_err(|_| Error::InvalidParameter("n too large".into()))?;
            let k = a.k.unwrap_or(2);
            let family = monotone_family(n, t as u32)?;
            let certificate = certify(&family, k, t, &a.check, cli.subset_budget)?;
            (
                ConstructRecord {
                    kind: a.kind,
                    seed,
                    certificate,
                    lex_certificate: None,
                },
                Some(family),
            )
        }
    };
    if let (Some(p), Some(f)) = (&a.family_out, &family) {
        f.save(p)?;
    }
    emit(&a.cert_out, &record)?;
    let lex_ok = record.lex_certificate.as_ref().is_none_or(|c| c.passed);
    Ok(pass_code(record.certificate.passed && lex_ok))
}

fn target(requested: Option<u64>, guaranteed: u64) -> Result<u64> {
    match requested {
        Some(t) if t > guaranteed => Err(Error::InvalidParameter(format!(
            "t = {t} exceeds the {guaranteed} this construction guarantees"
        ))),
        Some(t) => Ok(t),
        None => Ok(guaranteed),
    }
}

fn certify<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    t: u64,
    check: &CheckArgs,
    budget: u64,
) -> Result<ShatterCertificate> {
    let mode = check.resolve(family.ground_size(), k, budget)?;
    verify_t_shattering(family, k, t, mode, budget)
}

pub fn run_verify(cli: &Cli, a: &VerifyArgs) -> Result<i32> {
    if let Some(path) = &a.lex_family {
        let family = LexFamily::load(path)?;
        let strength = match a.strength {
            StrengthArg::Full => Strength::Full,
            StrengthArg::SliceTree => Strength::SliceTree,
        };
        let mode = match a.check.mode {
            Some(ModeArg::Sampled) => LexCheckMode::Sampled {
                count: a.check.samples,
                seed: a.check.seed,
            },
            _ => LexCheckMode::Exhaustive,
        };
        let cert = verify_lex_shattering(&family, a.k, strength, mode, cli.lex_budget)?;
        emit(&a.out, &cert)?;
        return Ok(pass_code(cert.passed));
    }
    let path = a
        .family
        .as_ref()
        .expect("clap requires --family or --lex-family");
    let t =
        a.t.ok_or_else(|| Error::InvalidParameter("--t is required with --family".into()))?;
    let family = PermFamily::load(path)?;
    let cert = certify(&family, a.k, t, &a.check, cli.subset_budget)?;
    emit(&a.out, &cert)?;
    Ok(pass_code(cert.passed))
}

pub fn run_adversary(a: &AdversaryArgs) -> Result<i32> {
    let family = PermFamily::load(&a.family)?;
    let witness: Witness = match a.method {
        MethodArg::Chain => chain_witness(&family, a.k, a.best_effort)?.witness,
        MethodArg::Tree => {
            let run = tree_witness(&family, a.k, a.best_effort)?;
            if let Some(p) = &a.tree_dump {
                write_json(p, &run.tree.dump())?;
            }
            run.witness
        }
    };
    let witness = witness.with_seed(a.seed);
    debug_assert!(matches!(witness.method, Method::Chain | Method::Tree));
    emit(&a.out, &witness)?;
    Ok(if !witness.valid_precondition {
        EXIT_PRECONDITION
    } else {
        pass_code(witness.achieved_count <= witness.guaranteed_bound)
    })
}

pub fn run_exact(a: &ExactArgs) -> Result<i32> {
    let config = ExactConfig {
        max_n: a.max_n,
        reduce: !a.no_reduce,
        ..ExactConfig::default()
    };
    let rows = match a.t {
        Some(t) => {
            if a.n.len() != 1 || a.k.len() != 1 {
                return Err(Error::InvalidParameter(
                    "a single --t needs a single --n and --k".into(),
                ));
            }
            let result = f_exact(a.n[0], a.k[0], t, &config)?;
            if let Some(p) = &a.family_out {
                result.optimal_family.save(p)?;
            }
            eprintln!("{}", result.note);
            vec![(&result).into()]
        }
        None => solve_table(&a.n, &a.k, a.t_max, &config)?,
    };
    let text = csv_string(&TABLE_HEADER, &rows)?;
    match &a.csv {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

pub fn run_regime(a: &RegimeArgs) -> Result<i32> {
    let answers: Vec<RegimeAnswer> = match a.t {
        Some(t) => vec![regime(a.k, t)?],
        None => {
            let top = factorial(a.k).min(10_000) as u64;
            (1..=top).map(|t| regime(a.k, t)).collect::<Result<_>>()?
        }
    };
    if answers.len() == 1 {
        println!("{}", serde_json::to_string(&answers[0])?);
    } else {
        for ans in &answers {
            println!("{},{},{}", ans.k, ans.t, ans.regime);
        }
    }
    Ok(EXIT_PASS)
}

fn bench_point(cli: &Cli, a: &BenchArgs, kind: Kind, n: u64) -> BenchRecord {
    let mut rec = BenchRecord {
        n,
        construction: kind,
        k: a.k,
        family_size: None,
        build_ms: None,
        verify_mode: None,
        t: None,
        min_count: None,
        passed: None,
        error: None,
    };
    let config = build_config(cli, a.samples);
    let check = CheckArgs {
        mode: None,
        samples: a.samples,
        seed: a.seed,
    };
    let started = Instant::now();
    let outcome: Result<(usize, ShatterCertificate)> = (|| match kind {
        Kind::Loglog | Kind::Sqrtlog => {
            let c: Construction = if kind == Kind::Loglog {
                build_loglog_family(n, a.k, a.seed, &config)?
            } else {
                build_sqrtlog_family(n, a.k, a.seed, &config)?
            };
            rec.build_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            let cert = certify(&c, a.k, c.guaranteed_t(), &check, cli.subset_budget)?;
            Ok((c.len(), cert))
        }
        Kind::Scrambling => {
            let n =
                usize::try_from(n).map_err(|_| Error::InvalidParameter("n too large".into()))?;
            let build = build_scrambling_random(n, a.k, a.seed, &config)?;
            rec.build_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            Ok((build.family.len(), build.certificate))
        }
        Kind::Monotone => {
            let n =
                usize::try_from(n).map_err(|_| Error::InvalidParameter("n too large".into()))?;
            let family = monotone_family(n, 2)?;
            rec.build_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            let cert = certify(&family, a.k, 2, &check, cli.subset_budget)?;
            Ok((family.len(), cert))
        }
    })();
    match outcome {
        Ok((size, cert)) => {
            rec.family_size = Some(size);
            rec.verify_mode = Some(match cert.mode {
                VerifyMode::Exhaustive => "exhaustive".into(),
                VerifyMode::Sampled { count, .. } => format!("sampled({count})"),
            });
            rec.t = Some(cert.t);
            rec.min_count = Some(cert.min_count);
            rec.passed = Some(cert.passed);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

pub fn run_bench(cli: &Cli, a: &BenchArgs) -> Result<i32> {
    let mut records = Vec::new();
    for &kind in &a.construction {
        for &n in &a.n {
            records.push(bench_point(cli, a, kind, n));
        }
    }
    let text = csv_string(&BENCH_HEADER, &records)?;
    match &a.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

/// Reads a construct record back, e.g. for round-trip checks.
pub fn load_record(path: &std::path::Path) -> Result<ConstructRecord> {
    read_json(path)
}
