//! Permutations of a ground set `[n] = {1, ..., n}`, the patterns they induce
//! on subsets, and t-shattering verification.
//!
//! Everything else in the crate is checked against this module, so it is kept
//! deliberately direct: a permutation is a rank vector, a pattern is the tuple
//! of relative ranks of a subset read in natural element order.

mod io;
mod scrambling;
mod verify;

pub use io::FamilyFile;
pub use scrambling::{build_scrambling_random, ScramblingBuild};
pub use verify::{
    count_induced, induced_pattern, min_shatter, verify_t_shattering, ShatterCertificate,
    VerifyMode, DEFAULT_SUBSET_BUDGET,
};

use crate::error::{Error, Result};

/// A total order on `[n]`, stored as `rank[x - 1]` = position of `x` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    rank: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from 1-based ranks, checking bijectivity.
    pub fn from_ranks(rank: Vec<u32>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            let r = r as usize;
            if r == 0 || r > n || seen[r - 1] {
                return Err(Error::NotABijection(n));
            }
            seen[r - 1] = true;
        }
        Ok(Self { rank })
    }

    /// Builds a permutation from the list of elements in increasing order.
    pub fn from_order(order: &[u64]) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![0u32; n];
        for (pos, &x) in order.iter().enumerate() {
            if x == 0 || x as usize > n {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    n: n as u64,
                });
            }
            if rank[x as usize - 1] != 0 {
                return Err(Error::DuplicateElement(x));
            }
            rank[x as usize - 1] = pos as u32 + 1;
        }
        Ok(Self { rank })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rank: (1..=n as u32).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Self {
            rank: (1..=n as u32).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    /// Position of element `x` (both 1-based). Panics if `x` is out of range.
    #[inline]
    pub fn rank(&self, x: u64) -> u32 {
        self.rank[x as usize - 1]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// `x <_ρ y`.
    pub fn precedes(&self, x: u64, y: u64) -> bool {
        self.rank(x) < self.rank(y)
    }

    /// Elements listed from first to last.
    pub fn order(&self) -> Vec<u64> {
        let mut order = vec![0u64; self.n()];
        for (i, &r) in self.rank.iter().enumerate() {
            order[r as usize - 1] = i as u64 + 1;
        }
        order
    }
}

/// An ordered list of permutations of a common ground set. Duplicates are
/// kept; the size of a family counts multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermFamily {
    n: usize,
    members: Vec<Permutation>,
}

impl PermFamily {
    pub fn new(n: usize, members: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|p| p.n() != n) {
            return Err(Error::MismatchedGroundSet {
                expected: n as u64,
                found: bad.n() as u64,
            });
        }
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn push(&mut self, perm: Permutation) -> Result<()> {
        if perm.n() != self.n {
            return Err(Error::MismatchedGroundSet {
                expected: self.n as u64,
                found: perm.n() as u64,
            });
        }
        self.members.push(perm);
        Ok(())
    }

    /// The family restricted to the first `n` elements, ranks recompressed.
    pub fn restrict(&self, n: usize) -> Result<Self> {
        if n > self.n {
            return Err(Error::InvalidParameter(format!(
                "cannot restrict [{}] to [{n}]",
                self.n
            )));
        }
        let members = self
            .members
            .iter()
            .map(|p| compress_keys((1..=n as u64).map(|x| p.rank(x) as u64)))
            .collect();
        Ok(Self { n, members })
    }

    /// Materializes any keyed family on its full ground set.
    pub fn from_order_family<F: OrderFamily + ?Sized>(family: &F, cap: u64) -> Result<Self> {
        let n = family.ground_size();
        let work = n as u128 * family.len() as u128;
        if n > u32::MAX as u64 || work > cap as u128 {
            return Err(Error::BudgetExceeded { work, budget: cap });
        }
        let members = (0..family.len())
            .map(|m| compress_keys((1..=n).map(|x| family.key(m, x))))
            .collect();
        Ok(Self {
            n: n as usize,
            members,
        })
    }
}

/// Turns distinct sort keys (listed by element) into a rank vector.
fn compress_keys(keys: impl Iterator<Item = u64>) -> Permutation {
    let keys: Vec<u64> = keys.collect();
    let mut idx: Vec<u32> = (0..keys.len() as u32).collect();
    idx.sort_unstable_by_key(|&i| keys[i as usize]);
    let mut rank = vec![0u32; keys.len()];
    for (pos, &i) in idx.iter().enumerate() {
        rank[i as usize] = pos as u32 + 1;
    }
    Permutation { rank }
}

/// A family of total orders on `[n]` given by per-member sort keys.
///
/// Keys of one member must be pairwise distinct; `x <_ρ y` iff
/// `key(ρ, x) < key(ρ, y)`. Lets constructions over huge ground sets be
/// verified without materializing rank vectors.
pub trait OrderFamily: Sync {
    fn ground_size(&self) -> u64;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sort key of element `x` (1-based) under member `member`.
    fn key(&self, member: usize, x: u64) -> u64;
}

impl OrderFamily for PermFamily {
    fn ground_size(&self) -> u64 {
        self.n as u64
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    fn key(&self, member: usize, x: u64) -> u64 {
        self.members[member].rank(x) as u64
    }
}

/// The permutation a member induces on a subset: `ranks[j]` is the 1-based
/// position of the j-th smallest subset element within the induced order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub ranks: Vec<u32>,
}

impl Pattern {
    pub fn size(&self) -> usize {
        self.ranks.len()
    }
}

/// `{identity}` for `t = 1`, `{identity, reversal}` for `t = 2`.
pub fn monotone_family(n: usize, t: u32) -> Result<PermFamily> {
    let members = match t {
        1 => vec![Permutation::identity(n)],
        2 => vec![Permutation::identity(n), Permutation::reversal(n)],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "monotone families exist for t in {{1, 2}}, got {t}"
            )))
        }
    };
    PermFamily::new(n, members)
}
