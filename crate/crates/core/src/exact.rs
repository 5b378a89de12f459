//! Exact values of `f_k(n, t)` at tiny `n`, and the growth-regime table.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ceil_log2, factorial, pattern_index, Combinations};
use crate::error::{Error, Result};
use crate::perm::{min_shatter, PermFamily, Permutation};

/// Default cap on `n` for the exact solver.
pub const DEFAULT_MAX_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub max_n: usize,
    /// Fix the first member to the identity.
    pub reduce: bool,
    /// Search nodes allowed before giving up.
    pub node_budget: u64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            reduce: true,
            node_budget: 20_000_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub n: usize,
    pub k: usize,
    pub t: u64,
    pub m: usize,
    pub optimal_family: PermFamily,
    pub reduced: bool,
    pub nodes: u64,
    /// What was searched and which symmetry was used.
    pub note: String,
}

/// All permutations of `[n]` as rank vectors, in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

struct Search {
    perms: usize,
    subsets: usize,
    words: usize,
    t: u16,
    /// `pattern[p * subsets + s]`: index of the pattern permutation `p` induces on subset `s`.
    pattern: Vec<u16>,
    nodes: AtomicU64,
    budget: u64,
    over_budget: AtomicBool,
}

#[derive(Clone)]
struct State {
    seen: Vec<u64>,
    count: Vec<u16>,
    chosen: Vec<usize>,
}

impl Search {
    fn new(n: usize, k: usize, t: u64, budget: u64) -> Self {
        let perms = all_permutations(n);
        let subsets: Vec<Vec<usize>> = Combinations::new(n, k).collect();
        let mut pattern = Vec::with_capacity(perms.len() * subsets.len());
        let mut keys = vec![0u64; k];
        for p in &perms {
            for s in &subsets {
                for (key, &x) in keys.iter_mut().zip(s) {
                    *key = p[x] as u64;
                }
                pattern.push(pattern_index(&keys) as u16);
            }
        }
        Self {
            perms: perms.len(),
            subsets: subsets.len(),
            words: (factorial(k) as usize).div_ceil(64),
            t: t as u16,
            pattern,
            nodes: AtomicU64::new(0),
            budget,
            over_budget: AtomicBool::new(false),
        }
    }

    fn empty_state(&self) -> State {
        State {
            seen: vec![0; self.subsets * self.words],
            count: vec![0; self.subsets],
            chosen: Vec::new(),
        }
    }

    /// Adds member `p`; returns the subsets that gained a pattern.
    fn add(&self, state: &mut State, p: usize, gained: &mut Vec<usize>) {
        gained.clear();
        for s in 0..self.subsets {
            let pat = self.pattern[p * self.subsets + s] as usize;
            let word = &mut state.seen[s * self.words + pat / 64];
            let bit = 1u64 << (pat % 64);
            if *word & bit == 0 {
                *word |= bit;
                state.count[s] += 1;
                gained.push(s);
            }
        }
        state.chosen.push(p);
    }

    fn remove(&self, state: &mut State, p: usize, gained: &[usize]) {
        for &s in gained {
            let pat = self.pattern[p * self.subsets + s] as usize;
            state.seen[s * self.words + pat / 64] &= !(1u64 << (pat % 64));
            state.count[s] -= 1;
        }
        state.chosen.pop();
    }

    fn feasible(&self, state: &State, remaining: usize) -> bool {
        state
            .count
            .iter()
            .all(|&c| c as usize + remaining >= self.t as usize)
    }

    /// Extends `state` to `m` members using indices from `start` upward.
    fn extend(&self, state: &mut State, start: usize, m: usize) -> bool {
        if state.chosen.len() == m {
            return state.count.iter().all(|&c| c >= self.t);
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.over_budget.store(true, Ordering::Relaxed);
            return false;
        }
        let remaining = m - state.chosen.len() - 1;
        let mut gained = Vec::with_capacity(self.subsets);
        for p in start..self.perms {
            if self.perms - p < m - state.chosen.len() {
                break;
            }
            self.add(state, p, &mut gained);
            if self.feasible(state, remaining) && self.extend(state, p + 1, m) {
                return true;
            }
            let undo = std::mem::take(&mut gained);
            self.remove(state, p, &undo);
            gained = undo;
            if self.over_budget.load(Ordering::Relaxed) {
                return false;
            }
        }
        false
    }

    /// Lexicographically least family of size `m`, branching in parallel over
    /// the member after the fixed prefix.
    fn solve(&self, m: usize, reduce: bool) -> Option<Vec<usize>> {
        let mut base = self.empty_state();
        let mut scratch = Vec::new();
        if reduce {
            self.add(&mut base, 0, &mut scratch);
            if m == 1 {
                return self.extend(&mut base, 1, 1).then(|| base.chosen.clone());
            }
        }
        let start = usize::from(reduce);
        let need = m - base.chosen.len();
        (start..self.perms.saturating_sub(need - 1))
            .into_par_iter()
            .find_map_first(|p| {
                let mut state = base.clone();
                let mut gained = Vec::new();
                self.add(&mut state, p, &mut gained);
                (self.feasible(&state, m - state.chosen.len()) && self.extend(&mut state, p + 1, m))
                    .then(|| state.chosen.clone())
            })
    }
}

/// `f_k(n, t)`: the least size of a family of permutations of `[n]` inducing
/// at least `t` distinct orders on every k-subset.
///
/// Iterative deepening on the size, starting from `t`. Members are distinct
/// and taken in increasing lexicographic rank order, so the first family
/// found at the least size is the lexicographically least one.
pub fn f_exact(n: usize, k: usize, t: u64, config: &ExactConfig) -> Result<ExactResult> {
    if n > config.max_n {
        return Err(Error::BudgetExceeded {
            work: n as u128,
            budget: config.max_n as u64,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if t == 0 || t as u128 > factorial(k) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= {k}!, got t = {t}"
        )));
    }
    let search = Search::new(n, k, t, config.node_budget);
    for m in t as usize..=search.perms {
        if let Some(chosen) = search.solve(m, config.reduce) {
            let all = all_permutations(n);
            let members = chosen
                .iter()
                .map(|&p| Permutation::from_ranks(all[p].clone()))
                .collect::<Result<Vec<_>>>()?;
            let family = PermFamily::new(n, members)?;
            let (min, _) = min_shatter(&family, k, u64::MAX)?;
            if min < t {
                return Err(Error::InvalidParameter(format!(
                    "solver returned a family with minimum {min} < {t}"
                )));
            }
            let nodes = search.nodes.load(Ordering::Relaxed);
            let symmetry = if config.reduce {
                "first member fixed to the identity"
            } else {
                "no symmetry reduction"
            };
            return Ok(ExactResult {
                n,
                k,
                t,
                m,
                optimal_family: family,
                reduced: config.reduce,
                nodes,
                note: format!(
                    "sizes {t}..={m} searched over strictly increasing member indices among {} permutations; {symmetry}; {nodes} nodes",
                    search.perms
                ),
            });
        }
        if search.over_budget.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded {
                work: search.nodes.load(Ordering::Relaxed) as u128,
                budget: config.node_budget,
            });
        }
    }
    unreachable!("all n! permutations shatter every subset")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "exact-t")]
    ExactT,
    #[serde(rename = "loglog")]
    Loglog,
    #[serde(rename = "sqrtlog")]
    Sqrtlog,
    #[serde(rename = "log")]
    Log,
    #[serde(rename = "unknown")]
    Unknown,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::ExactT => "exact-t",
            Regime::Loglog => "loglog",
            Regime::Sqrtlog => "sqrtlog",
            Regime::Log => "log",
            Regime::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeAnswer {
    pub k: usize,
    pub t: u64,
    pub regime: Regime,
}

/// Growth class of `f_k(n, t)` in `n` for fixed `k` and `t`.
pub fn regime(k: usize, t: u64) -> Result<RegimeAnswer> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    if t == 0 || t as u128 > factorial(k) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= {k}!, got t = {t}"
        )));
    }
    let h = 1u64 << ceil_log2(k as u64);
    let regime = if t <= 2 {
        Regime::ExactT
    } else if k == 3 {
        if t <= 4 {
            Regime::Loglog
        } else {
            Regime::Log
        }
    } else if t <= h {
        Regime::Loglog
    } else if t <= (2 * k as u64).min(h + 4) {
        Regime::Sqrtlog
    } else if k - 1 < 64 && t > 1u64 << (k - 1) {
        Regime::Log
    } else {
        Regime::Unknown
    };
    Ok(RegimeAnswer { k, t, regime })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `log₂ n / k - 1`.
    pub chain: f64,
    /// `√(log₂ n) / ⌈log₂ k⌉ - 1`.
    pub tree: f64,
}

/// Family sizes at or below which the two witness methods are guaranteed to
/// succeed on `[n]`.
pub fn lower_bound_thresholds(n: u64, k: usize) -> Result<Thresholds> {
    if n < 2 || k < 3 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and k >= 3, got n = {n}, k = {k}"
        )));
    }
    let log = (n as f64).log2();
    let h = ceil_log2(k as u64) as f64;
    Ok(Thresholds {
        chain: log / k as f64 - 1.0,
        tree: log.sqrt() / h - 1.0,
    })
}

/// One row of the solved-table export.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub t: u64,
    pub m: usize,
}

impl From<&ExactResult> for TableRow {
    fn from(r: &ExactResult) -> Self {
        Self {
            n: r.n,
            k: r.k,
            t: r.t,
            m: r.m,
        }
    }
}

pub const TABLE_HEADER: [&str; 4] = ["n", "k", "t", "m"];

/// Solves every `(n, k, t)` with `n` in `ns`, `k <= n` from `ks` and `t` in
/// `1..=t_max` (capped at `k!`).
pub fn solve_table(
    ns: &[usize],
    ks: &[usize],
    t_max: u64,
    config: &ExactConfig,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        for &k in ks.iter().filter(|&&k| k >= 1 && k <= n) {
            let top = (t_max as u128).min(factorial(k)) as u64;
            for t in 1..=top {
                rows.push(TableRow::from(&f_exact(n, k, t, config)?));
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_lex_order() {
        let all = all_permutations(3);
        assert_eq!(
            all,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(all_permutations(5).len(), 120);
        assert_eq!(all_permutations(1), vec![vec![1]]);
    }

    #[test]
    fn monotone_values() {
        let cfg = ExactConfig::default();
        let one = f_exact(5, 4, 1, &cfg).unwrap();
        assert_eq!(one.m, 1);
        assert_eq!(one.optimal_family.members()[0], Permutation::identity(5));
        let two = f_exact(5, 4, 2, &cfg).unwrap();
        assert_eq!(two.m, 2);
    }

    #[test]
    fn input_checks() {
        let cfg = ExactConfig::default();
        assert!(matches!(
            f_exact(8, 3, 2, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(f_exact(4, 3, 7, &cfg).is_err());
        assert!(f_exact(4, 3, 0, &cfg).is_err());
        assert!(f_exact(4, 5, 1, &cfg).is_err());
    }

    #[test]
    fn full_shattering_of_pairs_and_triples() {
        let cfg = ExactConfig::default();
        // every pair in both orders: identity and reversal
        assert_eq!(f_exact(5, 2, 2, &cfg).unwrap().m, 2);
        // the whole ground set in all orders needs every permutation
        assert_eq!(f_exact(3, 3, 6, &cfg).unwrap().m, 6);
    }

    #[test]
    fn reduced_and_unreduced_agree_on_small_cases() {
        let reduced = ExactConfig::default();
        let full = ExactConfig {
            reduce: false,
            ..ExactConfig::default()
        };
        for t in 1..=6 {
            let a = f_exact(4, 3, t, &reduced).unwrap();
            let b = f_exact(4, 3, t, &full).unwrap();
            assert_eq!(a.m, b.m, "t = {t}");
        }
    }

    #[test]
    fn regime_rows() {
        use Regime::*;
        let k4: Vec<Regime> = (1..=24).map(|t| regime(4, t).unwrap().regime).collect();
        let mut expected = vec![
            ExactT, ExactT, Loglog, Loglog, Sqrtlog, Sqrtlog, Sqrtlog, Sqrtlog,
        ];
        expected.extend(std::iter::repeat_n(Log, 16));
        assert_eq!(k4, expected);
        let k3: Vec<Regime> = (1..=6).map(|t| regime(3, t).unwrap().regime).collect();
        assert_eq!(k3, vec![ExactT, ExactT, Loglog, Loglog, Log, Log]);
        assert_eq!(regime(5, 13).unwrap().regime, Unknown);
        assert_eq!(regime(5, 10).unwrap().regime, Sqrtlog);
        assert_eq!(regime(5, 17).unwrap().regime, Log);
        assert!(regime(4, 25).is_err());
        assert!(regime(2, 1).is_err());
        assert_eq!(serde_json::to_string(&ExactT).unwrap(), "\"exact-t\"");
    }

    #[test]
    fn thresholds() {
        let th = lower_bound_thresholds(4096, 4).unwrap();
        assert_eq!(th.chain, 2.0);
        assert!((th.tree - (12f64.sqrt() / 2.0 - 1.0)).abs() < 1e-12);
        let th = lower_bound_thresholds(256, 4).unwrap();
        assert!((th.tree - 0.41421356).abs() < 1e-6);
        assert!(lower_bound_thresholds(2, 3).unwrap().chain < 0.0);
        assert!(lower_bound_thresholds(1, 3).is_err());
    }

    #[test]
    fn table_export() {
        let rows = solve_table(&[3], &[2, 3], 2, &ExactConfig::default()).unwrap();
        assert_eq!(rows.len(), 4);
        let text = crate::files::csv_string(&TABLE_HEADER, &rows).unwrap();
        assert_eq!(text, "n,k,t,m\n3,2,1,1\n3,2,2,2\n3,3,1,1\n3,3,2,2\n");
    }
}
