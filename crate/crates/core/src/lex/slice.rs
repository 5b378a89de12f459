//! Lexicographic structure of point sets: the first position where a set
//! splits, the values it splits into, and the positions reachable by subsets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::order::LexPermutation;
use super::point::{first_diff, Point};
use crate::combinatorics::{ceil_log2, factorial};
use crate::error::{Error, Result};

/// Split of a set at its first differing position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceDecomposition {
    /// `None` for a singleton (no two elements differ).
    pub spos: Option<usize>,
    /// Values taken at `spos`.
    pub slice: BTreeSet<u32>,
    /// Elements grouped by their value at `spos`; empty for a singleton.
    pub parts: BTreeMap<u32, Vec<Point>>,
}

fn check_set(x: &[Point]) -> Result<usize> {
    let first = x
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty point set".into()))?;
    let d = first.dim();
    if x.iter().any(|p| p.dim() != d) {
        return Err(Error::InvalidParameter(
            "points of different dimensions".into(),
        ));
    }
    let distinct: BTreeSet<&Point> = x.iter().collect();
    if distinct.len() != x.len() {
        return Err(Error::InvalidParameter("repeated point".into()));
    }
    Ok(d)
}

fn spos_of(x: &[Point]) -> Option<usize> {
    let first = x.first()?;
    (1..=first.dim()).find(|&i| x.iter().any(|p| p.at(i) != first.at(i)))
}

pub fn slice_decompose(x: &[Point]) -> Result<SliceDecomposition> {
    check_set(x)?;
    let Some(i) = spos_of(x) else {
        return Ok(SliceDecomposition {
            spos: None,
            slice: BTreeSet::new(),
            parts: BTreeMap::new(),
        });
    };
    let mut parts: BTreeMap<u32, Vec<Point>> = BTreeMap::new();
    for p in x {
        parts.entry(p.at(i)).or_default().push(p.clone());
    }
    Ok(SliceDecomposition {
        spos: Some(i),
        slice: parts.keys().copied().collect(),
        parts,
    })
}

/// The permutation `rho` induces on the slice of `y`, as `(spos, slice values
/// listed in rho's order)`. `None` when `y` has fewer than two elements.
pub fn slice_permutation(rho: &LexPermutation, y: &[Point]) -> Option<(usize, Vec<u32>)> {
    let i = spos_of(y)?;
    let mut values: Vec<u32> = y
        .iter()
        .map(|p| p.at(i))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    values.sort_by_key(|&v| rho.component_rank(i, v));
    Some((i, values))
}

/// Positions where some subset of `x` first splits, read off from
/// consecutive elements in the standard lex order.
pub fn index_set(x: &[Point]) -> Result<BTreeSet<usize>> {
    check_set(x)?;
    if x.len() < 2 {
        return Err(Error::InsufficientGroundSet {
            size: x.len(),
            needed: 2,
        });
    }
    let mut sorted: Vec<&Point> = x.iter().collect();
    sorted.sort();
    sorted.windows(2).map(|w| first_diff(w[0], w[1])).collect()
}

/// One greedy witness set from the halving walk: `members` splits first at
/// `position` into `slice_size` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedySlice {
    pub position: usize,
    pub members: Vec<Point>,
    pub slice_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceProfile {
    pub index_set: BTreeSet<usize>,
    /// Largest slice among subsets splitting first at each position of the index set.
    pub max_slice: BTreeMap<usize, usize>,
    /// Witness sets from repeatedly descending into the largest part.
    pub greedy: Vec<GreedySlice>,
}

impl SliceProfile {
    pub fn greedy_product(&self) -> u128 {
        self.greedy.iter().map(|g| g.slice_size as u128).product()
    }

    /// `∏ s_i!` over the index set.
    pub fn product_bound(&self) -> u128 {
        self.max_slice
            .values()
            .map(|&s| factorial(s))
            .fold(1u128, u128::saturating_mul)
    }
}

/// Values at position `i` of each group of `x` sharing the first `i - 1`
/// coordinates, for groups that actually split at `i`.
fn split_values(x: &[Point], i: usize) -> Vec<BTreeSet<u32>> {
    let mut groups: BTreeMap<&[u32], BTreeSet<u32>> = BTreeMap::new();
    for p in x {
        groups
            .entry(&p.coords()[..i - 1])
            .or_default()
            .insert(p.at(i));
    }
    groups.into_values().filter(|v| v.len() >= 2).collect()
}

pub fn slice_profile(x: &[Point]) -> Result<SliceProfile> {
    let index_set = index_set(x)?;
    let max_slice = index_set
        .iter()
        .map(|&i| {
            (
                i,
                split_values(x, i)
                    .iter()
                    .map(BTreeSet::len)
                    .max()
                    .unwrap_or(0),
            )
        })
        .collect();

    let d = x[0].dim();
    let mut sorted: Vec<Point> = x.to_vec();
    sorted.sort();
    let mut greedy = Vec::new();
    let mut z: Vec<Point> = sorted.clone();
    for j in 1..=d {
        if z.len() >= 2 && spos_of(&z) == Some(j) {
            let dec = slice_decompose(&z)?;
            let slice_size = dec.slice.len();
            let largest = dec
                .parts
                .into_values()
                .reduce(|best, part| if part.len() > best.len() { part } else { best })
                .expect("a split set has parts");
            greedy.push(GreedySlice {
                position: j,
                members: std::mem::replace(&mut z, largest),
                slice_size,
            });
        } else if index_set.contains(&j) {
            let pair = sorted
                .windows(2)
                .find(|w| first_diff(&w[0], &w[1]).ok() == Some(j))
                .expect("every index-set position splits a consecutive pair");
            greedy.push(GreedySlice {
                position: j,
                members: pair.to_vec(),
                slice_size: 2,
            });
        }
    }
    Ok(SliceProfile {
        index_set,
        max_slice,
        greedy,
    })
}

/// Lower bound `∏_{i ∈ I(X)} s_i!` on the number of orders any verified
/// lex-shattering family induces on `x`.
pub fn product_bound(x: &[Point]) -> Result<u128> {
    Ok(slice_profile(x)?.product_bound())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// `∏ s_i! >= 2k` already.
    ProductBound,
    /// Some subset splits into three or more values.
    LargeSlice,
    /// More than `⌈log₂ k⌉` split positions.
    ManyPositions,
    /// Two groups split at the same position into different value pairs.
    SplitSlices,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every verified family induces at least `2k` orders.
    Guaranteed2k(Guarantee),
    /// Exactly `h = ⌈log₂ k⌉` split positions, each splitting into the same
    /// value pair wherever it occurs.
    Rigid {
        h: usize,
        slices: BTreeMap<usize, (u32, u32)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub index_set: BTreeSet<usize>,
    pub max_slice: BTreeMap<usize, usize>,
    pub verdict: Verdict,
}

/// Classifies a k-set as either certainly `2k`-shattered by any verified
/// lex-shattering family, or rigid.
pub fn structure_analysis(x: &[Point], k: usize) -> Result<StructureReport> {
    if x.len() != k {
        return Err(Error::InvalidParameter(format!(
            "expected a set of size {k}, got {}",
            x.len()
        )));
    }
    let profile = slice_profile(x)?;
    let h = ceil_log2(k as u64) as usize;
    let verdict = if profile.product_bound() >= 2 * k as u128 {
        Verdict::Guaranteed2k(Guarantee::ProductBound)
    } else if profile.max_slice.values().any(|&s| s >= 3) {
        Verdict::Guaranteed2k(Guarantee::LargeSlice)
    } else if profile.index_set.len() > h {
        Verdict::Guaranteed2k(Guarantee::ManyPositions)
    } else {
        let mut slices = BTreeMap::new();
        let mut split = false;
        for &i in &profile.index_set {
            let groups = split_values(x, i);
            let pair: Vec<u32> = groups[0].iter().copied().collect();
            if groups.iter().any(|g| *g != groups[0]) {
                split = true;
            }
            slices.insert(i, (pair[0], pair[1]));
        }
        if split {
            Verdict::Guaranteed2k(Guarantee::SplitSlices)
        } else {
            debug_assert_eq!(profile.index_set.len(), h);
            Verdict::Rigid { h, slices }
        }
    };
    Ok(StructureReport {
        index_set: profile.index_set,
        max_slice: profile.max_slice,
        verdict,
    })
}
