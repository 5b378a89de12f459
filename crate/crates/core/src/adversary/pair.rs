use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::OrderFamily;

/// Disjoint `a`, `b` such that every member puts all of one before all of
/// the other. `direction[j]` is true iff member `j` puts `a` first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedPair {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub direction: Vec<bool>,
}

impl OrderedPair {
    pub fn min_size(&self) -> usize {
        self.a.len().min(self.b.len())
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty() || self.b.is_empty()
    }
}

/// Direct check: disjoint, and for each member either `a <_ρ b` or `b <_ρ a`
/// elementwise.
pub fn is_p_ordered<F: OrderFamily + ?Sized>(family: &F, a: &[u64], b: &[u64]) -> bool {
    if a.iter().any(|x| b.contains(x)) {
        return false;
    }
    (0..family.len()).all(|j| {
        let a_first = a
            .iter()
            .all(|&x| b.iter().all(|&y| family.key(j, x) < family.key(j, y)));
        let b_first = a
            .iter()
            .all(|&x| b.iter().all(|&y| family.key(j, y) < family.key(j, x)));
        a_first || b_first
    })
}

/// The halving procedure without the size precondition. `x` must hold
/// distinct elements of the ground set; the result may be empty when `x` is
/// small.
pub fn halve<F: OrderFamily + ?Sized>(family: &F, x: &[u64]) -> OrderedPair {
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    let half = sorted.len() / 2;
    let mut a = sorted[..half].to_vec();
    let mut b = sorted[half..2 * half].to_vec();
    let mut pool: Vec<(u64, bool, u64)> = Vec::with_capacity(2 * half);
    for j in 0..family.len() {
        let l = a.len();
        if l == 0 {
            break;
        }
        pool.clear();
        pool.extend(a.iter().map(|&e| (family.key(j, e), true, e)));
        pool.extend(b.iter().map(|&e| (family.key(j, e), false, e)));
        pool.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        let top = &pool[..l];
        let in_a = top.iter().filter(|p| p.1).count();
        if in_a >= l - in_a {
            a = top.iter().filter(|p| p.1).map(|p| p.2).collect();
            b = pool[l..].iter().filter(|p| !p.1).map(|p| p.2).collect();
        } else {
            b = top.iter().filter(|p| !p.1).map(|p| p.2).collect();
            a = pool[l..].iter().filter(|p| p.1).map(|p| p.2).collect();
        }
        a.sort_unstable();
        b.sort_unstable();
    }
    let direction = (0..family.len())
        .map(|j| {
            match (
                a.iter().map(|&e| family.key(j, e)).max(),
                b.iter().map(|&e| family.key(j, e)).min(),
            ) {
                (Some(hi), Some(lo)) => hi < lo,
                _ => true,
            }
        })
        .collect();
    OrderedPair { a, b, direction }
}

/// An ordered pair inside `x` with both sides of size at least
/// `⌊|x| / 2^{m+1}⌋` for a family of `m` members.
pub fn ordered_pair<F: OrderFamily + ?Sized>(family: &F, x: &[u64]) -> Result<OrderedPair> {
    let n = family.ground_size();
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0]));
    }
    if let Some(&e) = sorted.iter().find(|&&e| e == 0 || e > n) {
        return Err(Error::ElementOutOfRange { element: e, n });
    }
    let exp = family.len() as u32 + 1;
    let needed = if exp < 128 { 1u128 << exp } else { u128::MAX };
    if (sorted.len() as u128) < needed {
        return Err(Error::InsufficientGroundSet {
            size: sorted.len(),
            needed,
        });
    }
    Ok(halve(family, &sorted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermFamily, Permutation};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_family(n: usize, m: usize, seed: u64) -> PermFamily {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members = (0..m)
            .map(|_| {
                let mut order: Vec<u64> = (1..=n as u64).collect();
                order.shuffle(&mut rng);
                Permutation::from_order(&order).unwrap()
            })
            .collect();
        PermFamily::new(n, members).unwrap()
    }

    #[test]
    fn empty_family_gives_initial_split() {
        let fam = PermFamily::new(8, vec![]).unwrap();
        let pair = ordered_pair(&fam, &(1..=8).collect::<Vec<_>>()).unwrap();
        assert_eq!(pair.a, vec![1, 2, 3, 4]);
        assert_eq!(pair.b, vec![5, 6, 7, 8]);
        assert!(pair.direction.is_empty());
    }

    #[test]
    fn identity_keeps_the_initial_split() {
        let fam = PermFamily::new(8, vec![Permutation::identity(8)]).unwrap();
        let pair = ordered_pair(&fam, &(1..=8).collect::<Vec<_>>()).unwrap();
        // L = {5..8} lies in B entirely, so B keeps L and A drops it
        assert_eq!(pair.a, vec![1, 2, 3, 4]);
        assert_eq!(pair.b, vec![5, 6, 7, 8]);
        assert_eq!(pair.direction, vec![true]);
    }

    #[test]
    fn small_sets_are_rejected() {
        let fam = random_family(16, 3, 1);
        let x: Vec<u64> = (1..=15).collect();
        assert_eq!(
            ordered_pair(&fam, &x),
            Err(Error::InsufficientGroundSet {
                size: 15,
                needed: 16
            })
        );
        assert!(matches!(
            ordered_pair(&fam, &[1, 1]),
            Err(Error::DuplicateElement(1))
        ));
        assert!(matches!(
            ordered_pair(&fam, &[0, 1]),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn random_pairs_are_ordered_and_large() {
        for seed in 0..200 {
            let m = 1 + (seed % 4) as usize;
            let fam = random_family(64, m, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
            let mut x: Vec<u64> = (1..=64).collect();
            x.shuffle(&mut rng);
            x.truncate((1 << (m + 1)) + (seed % 30) as usize);
            let pair = ordered_pair(&fam, &x).unwrap();
            assert!(is_p_ordered(&fam, &pair.a, &pair.b));
            assert_eq!(pair.a.len(), pair.b.len());
            assert!(pair.min_size() >= x.len() >> (m + 1));
            assert!(pair.a.iter().chain(&pair.b).all(|e| x.contains(e)));
            for (j, &dir) in pair.direction.iter().enumerate() {
                assert_eq!(dir, fam.members()[j].precedes(pair.a[0], pair.b[0]));
            }
        }
    }

    #[test]
    fn p_ordered_check() {
        let fam =
            PermFamily::new(4, vec![Permutation::from_order(&[1, 3, 2, 4]).unwrap()]).unwrap();
        assert!(is_p_ordered(&fam, &[1, 3], &[2, 4]));
        assert!(!is_p_ordered(&fam, &[1, 2], &[3, 4]));
        assert!(!is_p_ordered(&fam, &[1, 2], &[2, 4]));
    }
}
