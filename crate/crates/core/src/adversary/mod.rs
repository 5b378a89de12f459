//! Witness extraction: given any family, find a k-subset it shatters poorly.
//!
//! The chain method nests ordered pairs `k` deep and picks one element per
//! level, giving at most `2^{k-1}` induced orders. The tree method grows a
//! complete binary tree of ordered pairs, colors each vertex by the direction
//! each member puts its pair in, and finds a subdivision with monochromatic
//! layers; its leaves give at most `2^⌈log₂ k⌉` induced orders.

mod pair;
mod subdivision;
mod tree;

pub use pair::{halve, is_p_ordered, ordered_pair, OrderedPair};
pub use subdivision::{
    check_subdivision, find_subdivision_exact, min_mono_height, mono_subdivision, Subdivision,
    SubdivisionSearch,
};
pub use tree::{
    build_ordered_tree, g_upper, Color, ColoredTree, TreeColoring, TreeDump, VertexDump,
};

use serde::{Deserialize, Serialize};

use crate::combinatorics::ceil_log2;
use crate::error::{Error, Result};
use crate::perm::{count_induced, OrderFamily};

/// Largest ground set the adversaries will list out element by element.
pub const MAX_ADVERSARY_N: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Chain,
    Tree,
}

/// A k-subset with its guaranteed and achieved shattering counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub k: usize,
    pub guaranteed_bound: u64,
    pub achieved_count: u64,
    pub witness: Vec<u64>,
    pub method: Method,
    pub valid_precondition: bool,
    pub seed: Option<u64>,
}

impl Witness {
    /// The guarantee applies and was met.
    pub fn holds(&self) -> bool {
        self.valid_precondition && self.achieved_count <= self.guaranteed_bound
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }
}

/// `n >= 2^exp`.
fn at_least_pow2(n: u64, exp: u128) -> bool {
    exp < 64 && n >= 1u64 << exp
}

fn ground<F: OrderFamily + ?Sized>(family: &F, k: usize) -> Result<u64> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.ground_size();
    if k == 0 || k as u64 > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n > MAX_ADVERSARY_N {
        return Err(Error::BudgetExceeded {
            work: n as u128,
            budget: MAX_ADVERSARY_N,
        });
    }
    Ok(n)
}

/// Sorted picks, truncated to `k` and topped up with the smallest unused
/// elements of `[n]` when fewer than `k` were found.
fn complete_picks(mut picks: Vec<u64>, k: usize) -> Vec<u64> {
    picks.sort_unstable();
    picks.dedup();
    picks.truncate(k);
    let mut x = 1;
    while picks.len() < k {
        if !picks.contains(&x) {
            picks.push(x);
        }
        x += 1;
    }
    picks.sort_unstable();
    picks
}

fn finish<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    picks: Vec<u64>,
    guaranteed_bound: u64,
    method: Method,
    valid_precondition: bool,
) -> Result<Witness> {
    let witness = complete_picks(picks, k);
    let achieved_count = count_induced(family, &witness)? as u64;
    Ok(Witness {
        k,
        guaranteed_bound,
        achieved_count,
        witness,
        method,
        valid_precondition,
        seed: None,
    })
}

#[derive(Debug, Clone)]
pub struct ChainRun {
    /// `(A_i, B_i)` for `i = 1..=k`, each inside the previous `A`.
    pub pairs: Vec<OrderedPair>,
    pub witness: Witness,
}

/// Nested ordered pairs starting from `A_0 = [n]`; `x_i = min B_i`.
///
/// With `m` members the bound `2^{k-1}` is guaranteed once `n >= 2^{k(m+1)}`.
/// Below that the run is refused unless `best_effort` is set.
pub fn chain_witness<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    best_effort: bool,
) -> Result<ChainRun> {
    let n = ground(family, k)?;
    let m = family.len() as u128;
    let valid = at_least_pow2(n, k as u128 * (m + 1));
    if !valid && !best_effort {
        return Err(Error::Precondition(format!(
            "chain witness needs n >= 2^(k(m+1)) = 2^{}",
            k as u128 * (m + 1)
        )));
    }
    let mut a: Vec<u64> = (1..=n).collect();
    let mut pairs = Vec::with_capacity(k);
    let mut picks = Vec::with_capacity(k);
    for _ in 0..k {
        let pair = halve(family, &a);
        if let Some(&x) = pair.b.first() {
            picks.push(x);
        }
        a = pair.a.clone();
        pairs.push(pair);
    }
    let guaranteed = 1u64 << (k - 1).min(63);
    let witness = finish(family, k, picks, guaranteed, Method::Chain, valid)?;
    Ok(ChainRun { pairs, witness })
}

/// Tallest ordered-pair tree the tree method will build.
pub const MAX_TREE_HEIGHT: usize = 20;

#[derive(Debug, Clone)]
pub struct TreeRun {
    pub tree: ColoredTree,
    pub search: SubdivisionSearch,
    pub witness: Witness,
}

/// Tree of height `g_upper(2^m, h)` with `h = ⌈log₂ k⌉`, a monochromatic-layer
/// subdivision of height `h`, and the minima of its leaf fragments.
///
/// Guaranteed bound `2^h` once `n >= 2^{g_upper(2^m, h)(m+1)}`. In best-effort
/// mode the tree is cut to the height `n` supports, and when the search from
/// the proof finds nothing an exhaustive search is tried instead.
pub fn tree_witness<F: OrderFamily + ?Sized>(
    family: &F,
    k: usize,
    best_effort: bool,
) -> Result<TreeRun> {
    let n = ground(family, k)?;
    let m = family.len() as u64;
    let h = ceil_log2(k as u64) as usize;
    let colors = if m < 64 { 1u64 << m } else { u64::MAX };
    let full_height = g_upper(colors, h as u32);
    let valid = m < 64 && at_least_pow2(n, full_height as u128 * (m as u128 + 1));
    if !valid && !best_effort {
        return Err(Error::Precondition(format!(
            "tree witness needs n >= 2^(g(2^m, h)(m+1)) with g(2^m, h) = {full_height}"
        )));
    }
    let height = if valid {
        full_height as usize
    } else {
        let supported = (63 - n.leading_zeros() as u64) / (m + 1);
        (full_height.min(supported) as usize).max(h)
    };
    if height > MAX_TREE_HEIGHT {
        return Err(Error::BudgetExceeded {
            work: height as u128,
            budget: MAX_TREE_HEIGHT as u64,
        });
    }
    let tree = ColoredTree::build_unchecked(family, (1..=n).collect(), height);
    let mut search = mono_subdivision(tree.coloring(), h)?;
    if search.subdivision.is_none() && best_effort {
        search.subdivision = find_subdivision_exact(tree.coloring(), h);
    }
    let picks = match &search.subdivision {
        Some(sub) => sub
            .leaves()
            .iter()
            .filter_map(|&v| tree.fragment(v).first().copied())
            .collect(),
        None => Vec::new(),
    };
    let witness = finish(family, k, picks, 1u64 << h, Method::Tree, valid)?;
    Ok(TreeRun {
        tree,
        search,
        witness,
    })
}
