//! k-lex-shattering: every prescribed combination of component orders on
//! small value sets, at a few positions at once, is realized by one member.

use std::collections::BTreeMap;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::order::{LexFamily, LexPermutation};
use crate::combinatorics::{
    binomial, factorial, lehmer_decode, pattern_index, unrank_combination, Combinations,
};
use crate::config::{union_bound_size, BuildConfig};
use crate::error::{Error, Result};

/// `(position, size index, value-set rank, σ index)` of one table row.
type TableEntry = (usize, usize, usize, usize);
use crate::perm::PermFamily;

/// Which constraint systems a family must realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    /// Up to `k` positions, a value set of up to `k` values at each.
    Full,
    /// Systems whose slice sizes satisfy `Σ (|Y_i| - 1) <= k - 1`: exactly the
    /// ones a k-point set can present through its subsets.
    SliceTree,
}

/// Requirement that the component at `position` lists `order` in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub position: usize,
    pub order: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LexCheckMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexCertificate {
    pub b: u32,
    pub d: usize,
    pub k: usize,
    pub strength: Strength,
    pub family_size: usize,
    pub mode: LexCheckMode,
    pub systems_checked: u128,
    pub passed: bool,
    pub violation: Option<Vec<Constraint>>,
}

/// Limits on the systems of one strength.
#[derive(Debug, Clone)]
struct SystemShape {
    b: u32,
    d: usize,
    max_positions: usize,
    sizes: Vec<usize>,
    excess: Option<usize>,
}

impl SystemShape {
    fn new(strength: Strength, b: u32, d: usize, k: usize) -> Self {
        let top = k.min(b as usize);
        let (max_positions, sizes, excess) = match strength {
            Strength::Full => (k.min(d), if top >= 2 { vec![top] } else { vec![] }, None),
            Strength::SliceTree => (
                k.saturating_sub(1).min(d),
                (2..=top).collect(),
                Some(k.saturating_sub(1)),
            ),
        };
        Self {
            b,
            d,
            max_positions,
            sizes,
            excess,
        }
    }

    fn is_trivial(&self) -> bool {
        self.sizes.is_empty() || self.max_positions == 0
    }

    fn fits(&self, used: usize, s: usize) -> bool {
        self.excess.is_none_or(|e| used + s - 1 <= e)
    }

    /// `(number of systems, joint orders per system)` grouped by pattern count.
    fn census(&self) -> Vec<(u128, u128)> {
        let mut out: BTreeMap<u128, u128> = BTreeMap::new();
        let mut level: BTreeMap<(usize, u128), u128> = BTreeMap::from([((0, 1), 1)]);
        for j in 1..=self.max_positions {
            let mut next = BTreeMap::new();
            for (&(used, patterns), &weight) in &level {
                for &s in &self.sizes {
                    if !self.fits(used, s) {
                        continue;
                    }
                    let ways = binomial(self.b as u64, s as u64).saturating_mul(factorial(s));
                    let entry = next
                        .entry((used + s - 1, patterns.saturating_mul(factorial(s))))
                        .or_insert(0u128);
                    *entry = entry.saturating_add(weight.saturating_mul(ways));
                }
            }
            let positions = binomial(self.d as u64, j as u64);
            for (&(_, patterns), &weight) in &next {
                let e = out.entry(patterns).or_insert(0);
                *e = e.saturating_add(weight.saturating_mul(positions));
            }
            level = next;
        }
        out.into_iter().map(|(p, c)| (c, p)).collect()
    }

    fn system_count(&self) -> u128 {
        self.census()
            .iter()
            .fold(0u128, |acc, (c, _)| acc.saturating_add(*c))
    }

    fn table_words(&self, members: usize) -> u128 {
        let per_pos: u128 = self
            .sizes
            .iter()
            .map(|&s| binomial(self.b as u64, s as u64).saturating_mul(factorial(s)))
            .fold(0, u128::saturating_add);
        per_pos
            .saturating_mul(self.d as u128)
            .saturating_mul(members.div_ceil(64) as u128)
    }
}

/// Words of bitset memory an exhaustive check may allocate (128 MiB).
const TABLE_WORD_CAP: u128 = 1 << 24;

/// For every `(position, value set, order)` the members realizing it, as a
/// bitset over members.
struct RealizationTable<'a> {
    shape: &'a SystemShape,
    words: usize,
    size_offset: Vec<usize>,
    per_position: usize,
    bits: Vec<u64>,
}

impl<'a> RealizationTable<'a> {
    fn build(shape: &'a SystemShape, family: &LexFamily) -> Self {
        let words = family.len().div_ceil(64).max(1);
        let mut size_offset = Vec::with_capacity(shape.sizes.len());
        let mut per_position = 0usize;
        for &s in &shape.sizes {
            size_offset.push(per_position);
            per_position += binomial(shape.b as u64, s as u64) as usize * factorial(s) as usize;
        }
        let mut bits = vec![0u64; per_position * shape.d * words];
        let mut ranks = Vec::new();
        for pos in 1..=shape.d {
            for (si, &s) in shape.sizes.iter().enumerate() {
                let fs = factorial(s) as usize;
                for (r, values) in Combinations::new(shape.b as usize, s).enumerate() {
                    let base = (pos - 1) * per_position + size_offset[si] + r * fs;
                    for (m, member) in family.members().iter().enumerate() {
                        ranks.clear();
                        ranks.extend(
                            values
                                .iter()
                                .map(|&v| member.component_rank(pos, v as u32 + 1) as u64),
                        );
                        let sigma = pattern_index(&ranks);
                        bits[(base + sigma) * words + m / 64] |= 1u64 << (m % 64);
                    }
                }
            }
        }
        Self {
            shape,
            words,
            size_offset,
            per_position,
            bits,
        }
    }

    #[inline]
    fn row(&self, pos: usize, si: usize, r: usize, sigma: usize) -> &[u64] {
        let fs = factorial(self.shape.sizes[si]) as usize;
        let idx = (pos - 1) * self.per_position + self.size_offset[si] + r * fs + sigma;
        &self.bits[idx * self.words..(idx + 1) * self.words]
    }

    /// Depth-first walk over all systems; returns the first one no member
    /// realizes, as `(position, size index, value-set rank, order index)` steps.
    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        start: usize,
        positions_left: usize,
        used: usize,
        acc: &[u64],
        bufs: &mut [Vec<u64>],
        path: &mut Vec<TableEntry>,
        visited: &mut u128,
    ) -> bool {
        if positions_left == 0 {
            return true;
        }
        let (buf, rest) = bufs.split_first_mut().expect("one buffer per depth");
        for pos in start..=self.shape.d {
            for (si, &s) in self.shape.sizes.iter().enumerate() {
                if !self.shape.fits(used, s) {
                    continue;
                }
                let sets = binomial(self.shape.b as u64, s as u64) as usize;
                for r in 0..sets {
                    for sigma in 0..factorial(s) as usize {
                        *visited += 1;
                        let row = self.row(pos, si, r, sigma);
                        let mut any = 0u64;
                        for ((out, &a), &b) in buf.iter_mut().zip(acc).zip(row) {
                            *out = a & b;
                            any |= *out;
                        }
                        path.push((pos, si, r, sigma));
                        if any == 0 {
                            return false;
                        }
                        if !self.search(
                            pos + 1,
                            positions_left - 1,
                            used + s - 1,
                            buf,
                            rest,
                            path,
                            visited,
                        ) {
                            return false;
                        }
                        path.pop();
                    }
                }
            }
        }
        true
    }

    fn constraint(&self, (pos, si, r, sigma): TableEntry) -> Constraint {
        let s = self.shape.sizes[si];
        let values = unrank_combination(self.shape.b as usize, s, r as u128);
        let ranks = lehmer_decode(sigma, s);
        let mut order: Vec<(usize, u32)> = values
            .iter()
            .zip(&ranks)
            .map(|(&v, &rk)| (rk, v as u32 + 1))
            .collect();
        order.sort_unstable();
        Constraint {
            position: pos,
            order: order.into_iter().map(|(_, v)| v).collect(),
        }
    }
}

fn exhaustive(shape: &SystemShape, family: &LexFamily) -> (u128, Option<Vec<Constraint>>) {
    let table = RealizationTable::build(shape, family);
    let full: Vec<u64> = {
        let mut v = vec![u64::MAX; table.words];
        let extra = table.words * 64 - family.len();
        if extra > 0 {
            let last = table.words - 1;
            v[last] = u64::MAX >> extra;
        }
        v
    };
    // top-level branches are independent; keep the first violation in walk order
    let roots: Vec<(usize, usize, usize)> = (1..=shape.d)
        .flat_map(|pos| {
            shape.sizes.iter().enumerate().flat_map(move |(si, &s)| {
                (0..binomial(shape.b as u64, s as u64) as usize).map(move |r| (pos, si, r))
            })
        })
        .collect();
    let results: Vec<(u128, Option<Vec<TableEntry>>)> = roots
        .par_iter()
        .map(|&(pos, si, r)| {
            let s = shape.sizes[si];
            let mut bufs = vec![vec![0u64; table.words]; shape.max_positions];
            let mut visited = 0u128;
            for sigma in 0..factorial(s) as usize {
                visited += 1;
                let row = table.row(pos, si, r, sigma);
                let (first, rest) = bufs.split_first_mut().unwrap();
                let mut any = 0u64;
                for ((out, &a), &b) in first.iter_mut().zip(&full).zip(row) {
                    *out = a & b;
                    any |= *out;
                }
                let mut path = vec![(pos, si, r, sigma)];
                if any == 0 {
                    return (visited, Some(path));
                }
                let first = first.clone();
                if !table.search(
                    pos + 1,
                    shape.max_positions - 1,
                    s - 1,
                    &first,
                    rest,
                    &mut path,
                    &mut visited,
                ) {
                    return (visited, Some(path));
                }
            }
            (visited, None)
        })
        .collect();
    let visited = results.iter().map(|(v, _)| v).sum();
    let violation = results.into_iter().find_map(|(_, p)| p).map(|path| {
        path.into_iter()
            .map(|step| table.constraint(step))
            .collect()
    });
    (visited, violation)
}

fn realizes(member: &LexPermutation, system: &[Constraint]) -> bool {
    system.iter().all(|c| {
        c.order.windows(2).all(|w| {
            member.component_rank(c.position, w[0]) < member.component_rank(c.position, w[1])
        })
    })
}

fn random_system(shape: &SystemShape, rng: &mut ChaCha8Rng) -> Vec<Constraint> {
    let mut positions: Vec<usize> = index::sample(rng, shape.d, shape.max_positions)
        .into_iter()
        .map(|p| p + 1)
        .collect();
    positions.shuffle(rng);
    let top = *shape.sizes.last().expect("non-trivial shape");
    let mut used = 0usize;
    let mut out = Vec::new();
    for pos in positions {
        let s = match shape.excess {
            None => top,
            Some(e) if used < e => rng.gen_range(2..=top.min(e - used + 1)),
            Some(_) => break,
        };
        used += s - 1;
        let mut order: Vec<u32> = index::sample(rng, shape.b as usize, s)
            .into_iter()
            .map(|v| v as u32 + 1)
            .collect();
        order.shuffle(rng);
        out.push(Constraint {
            position: pos,
            order,
        });
    }
    out.sort_by_key(|c| c.position);
    out
}

fn sampled(
    shape: &SystemShape,
    family: &LexFamily,
    count: u64,
    seed: u64,
) -> Option<Vec<Constraint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_system(shape, &mut rng))
        .find(|system| !family.members().iter().any(|m| realizes(m, system)))
}

/// Number of constraint systems an exhaustive check visits.
pub fn lex_system_count(b: u32, d: usize, k: usize, strength: Strength) -> u128 {
    let shape = SystemShape::new(strength, b, d, k);
    if shape.is_trivial() {
        0
    } else {
        shape.system_count()
    }
}

pub fn verify_lex_shattering(
    family: &LexFamily,
    k: usize,
    strength: Strength,
    mode: LexCheckMode,
    budget: u64,
) -> Result<LexCertificate> {
    let shape = SystemShape::new(strength, family.b(), family.d(), k);
    let mut cert = LexCertificate {
        b: family.b(),
        d: family.d(),
        k,
        strength,
        family_size: family.len(),
        mode,
        systems_checked: 0,
        passed: !family.is_empty(),
        violation: None,
    };
    if family.is_empty() || shape.is_trivial() {
        return Ok(cert);
    }
    let violation = match mode {
        LexCheckMode::Exhaustive => {
            let systems = shape.system_count();
            if systems > budget as u128 {
                return Err(Error::BudgetExceeded {
                    work: systems,
                    budget,
                });
            }
            let words = shape.table_words(family.len());
            if words > TABLE_WORD_CAP {
                return Err(Error::BudgetExceeded {
                    work: words,
                    budget: TABLE_WORD_CAP as u64,
                });
            }
            let (visited, violation) = exhaustive(&shape, family);
            cert.systems_checked = visited;
            violation
        }
        LexCheckMode::Sampled { count, seed } => {
            let violation = sampled(&shape, family, count, seed);
            cert.systems_checked = count as u128;
            violation
        }
    };
    cert.passed = violation.is_none();
    cert.violation = violation;
    Ok(cert)
}

/// Exhaustive when within budget and table memory, otherwise sampled if the
/// config allows it.
pub fn choose_lex_mode(
    b: u32,
    d: usize,
    k: usize,
    strength: Strength,
    expected_size: usize,
    seed: u64,
    config: &BuildConfig,
) -> Result<LexCheckMode> {
    let shape = SystemShape::new(strength, b, d, k);
    if shape.is_trivial() {
        return Ok(LexCheckMode::Exhaustive);
    }
    let systems = shape.system_count();
    let words = shape.table_words(expected_size * 2);
    if systems <= config.lex_budget as u128 && words <= TABLE_WORD_CAP {
        Ok(LexCheckMode::Exhaustive)
    } else if config.allow_sampling {
        Ok(LexCheckMode::Sampled {
            count: config.samples,
            seed: seed ^ 0x1e75_a11e,
        })
    } else {
        Err(Error::BudgetExceeded {
            work: systems,
            budget: config.lex_budget,
        })
    }
}

#[derive(Debug, Clone)]
pub struct LexBuild {
    pub family: LexFamily,
    pub certificate: LexCertificate,
    pub rounds: usize,
}

/// Random lex-permutations, appended in batches until the family verifies as
/// k-lex-shattering at the requested strength.
pub fn build_k_lex_random(
    b: u32,
    d: usize,
    k: usize,
    seed: u64,
    strength: Strength,
    config: &BuildConfig,
) -> Result<LexBuild> {
    if b < 2 || d == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "need b >= 2, d >= 1, k >= 1; got b = {b}, d = {d}, k = {k}"
        )));
    }
    let shape = SystemShape::new(strength, b, d, k);
    let start = if shape.is_trivial() {
        1
    } else {
        union_bound_size(&shape.census())
    };
    let batch = (start / 10).max(1);
    let mode = choose_lex_mode(b, d, k, strength, start, seed, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = LexFamily::new(
        b,
        d,
        (0..start)
            .map(|_| LexPermutation::random(b, d, &mut rng))
            .collect(),
    )?;
    for round in 1..=config.max_rounds {
        let certificate = verify_lex_shattering(&family, k, strength, mode, config.lex_budget)?;
        if certificate.passed {
            return Ok(LexBuild {
                family,
                certificate,
                rounds: round,
            });
        }
        for _ in 0..batch {
            family.push(LexPermutation::random(b, d, &mut rng));
        }
    }
    Err(Error::RetriesExhausted {
        rounds: config.max_rounds,
        size: family.len(),
    })
}

/// One lex-permutation per member of `scrambler`: component `i` is the order
/// the member induces on the block `(i-1)b + 1 ..= ib` of `[b·d]`.
pub fn scrambling_to_lex(scrambler: &PermFamily, b: u32, d: usize) -> Result<LexFamily> {
    let bd = b as usize * d;
    if scrambler.n() != bd {
        return Err(Error::MismatchedGroundSet {
            expected: bd as u64,
            found: scrambler.n() as u64,
        });
    }
    let members = scrambler
        .members()
        .iter()
        .map(|tau| {
            let comps: Vec<_> = (0..d)
                .map(|i| {
                    let block = &tau.ranks()[i * b as usize..(i + 1) * b as usize];
                    let mut sorted = block.to_vec();
                    sorted.sort_unstable();
                    let ranks = block
                        .iter()
                        .map(|r| sorted.binary_search(r).unwrap() as u32 + 1)
                        .collect();
                    crate::perm::Permutation::from_ranks(ranks)
                })
                .collect::<Result<_>>()?;
            LexPermutation::new(b, &comps)
        })
        .collect::<Result<Vec<_>>>()?;
    LexFamily::new(b, d, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{build_scrambling_random, Permutation};

    /// Every system of the given strength, listed naively.
    fn all_systems(b: u32, d: usize, k: usize, strength: Strength) -> Vec<Vec<Constraint>> {
        let shape = SystemShape::new(strength, b, d, k);
        let mut out = Vec::new();
        fn rec(
            shape: &SystemShape,
            start: usize,
            left: usize,
            used: usize,
            cur: &mut Vec<Constraint>,
            out: &mut Vec<Vec<Constraint>>,
        ) {
            if left == 0 {
                return;
            }
            for pos in start..=shape.d {
                for &s in &shape.sizes {
                    if !shape.fits(used, s) {
                        continue;
                    }
                    for values in Combinations::new(shape.b as usize, s) {
                        for sigma in 0..factorial(s) as usize {
                            let ranks = lehmer_decode(sigma, s);
                            let mut order: Vec<(usize, u32)> = values
                                .iter()
                                .zip(&ranks)
                                .map(|(&v, &r)| (r, v as u32 + 1))
                                .collect();
                            order.sort_unstable();
                            cur.push(Constraint {
                                position: pos,
                                order: order.into_iter().map(|(_, v)| v).collect(),
                            });
                            out.push(cur.clone());
                            rec(shape, pos + 1, left - 1, used + s - 1, cur, out);
                            cur.pop();
                        }
                    }
                }
            }
        }
        rec(&shape, 1, shape.max_positions, 0, &mut Vec::new(), &mut out);
        out
    }

    fn naive_passes(family: &LexFamily, k: usize, strength: Strength) -> bool {
        all_systems(family.b(), family.d(), k, strength)
            .iter()
            .all(|sys| family.members().iter().any(|m| realizes(m, sys)))
    }

    #[test]
    fn system_counts_match_enumeration() {
        for (b, d, k) in [(2, 8, 4), (3, 3, 3), (4, 2, 4), (3, 4, 4), (2, 3, 1)] {
            for strength in [Strength::Full, Strength::SliceTree] {
                let listed = all_systems(b, d, k, strength).len() as u128;
                assert_eq!(
                    lex_system_count(b, d, k, strength),
                    listed,
                    "b={b} d={d} k={k} {strength:?}"
                );
            }
        }
        // b = 2, d = 32, k = 4: sign patterns on up to four positions
        let expected: u128 = (1..=4u64).map(|j| binomial(32, j) * (1u128 << j)).sum();
        assert_eq!(lex_system_count(2, 32, 4, Strength::Full), expected);
    }

    #[test]
    fn exhaustive_check_agrees_with_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (b, d, k, size) in [
            (2, 4, 3, 8),
            (2, 4, 3, 30),
            (3, 2, 3, 20),
            (3, 2, 3, 120),
            (3, 3, 3, 60),
        ] {
            for strength in [Strength::Full, Strength::SliceTree] {
                let fam = LexFamily::new(
                    b,
                    d,
                    (0..size)
                        .map(|_| LexPermutation::random(b, d, &mut rng))
                        .collect(),
                )
                .unwrap();
                let cert =
                    verify_lex_shattering(&fam, k, strength, LexCheckMode::Exhaustive, u64::MAX)
                        .unwrap();
                assert_eq!(
                    cert.passed,
                    naive_passes(&fam, k, strength),
                    "b={b} d={d} k={k} size={size} {strength:?}"
                );
                if let Some(v) = &cert.violation {
                    assert!(!fam.members().iter().any(|m| realizes(m, v)));
                } else {
                    assert_eq!(cert.systems_checked, lex_system_count(b, d, k, strength));
                }
            }
        }
    }

    #[test]
    fn binary_cube_family_passes_full_check() {
        let build =
            build_k_lex_random(2, 8, 4, 17, Strength::Full, &BuildConfig::default()).unwrap();
        assert!(build.certificate.passed);
        assert_eq!(build.certificate.mode, LexCheckMode::Exhaustive);
        assert!(naive_passes(&build.family, 4, Strength::Full));
        assert!(build.family.len() >= 16);
    }

    #[test]
    fn one_member_suffices_for_k_one() {
        let build =
            build_k_lex_random(2, 1, 1, 0, Strength::Full, &BuildConfig::default()).unwrap();
        assert_eq!(build.family.len(), 1);
        assert!(build.certificate.passed);
    }

    #[test]
    fn empty_family_fails() {
        let fam = LexFamily::new(2, 2, vec![]).unwrap();
        let cert =
            verify_lex_shattering(&fam, 2, Strength::Full, LexCheckMode::Exhaustive, 100).unwrap();
        assert!(!cert.passed);
    }

    #[test]
    fn over_budget_exhaustive_check_errors() {
        let fam = LexFamily::new(2, 32, vec![LexPermutation::identity(2, 32)]).unwrap();
        let err = verify_lex_shattering(&fam, 4, Strength::Full, LexCheckMode::Exhaustive, 10);
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
        let cfg = BuildConfig {
            lex_budget: 10,
            allow_sampling: false,
            ..BuildConfig::default()
        };
        assert!(matches!(
            build_k_lex_random(2, 32, 4, 1, Strength::Full, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampled_check_finds_obvious_gaps() {
        let fam = LexFamily::new(3, 3, vec![LexPermutation::identity(3, 3)]).unwrap();
        let cert = verify_lex_shattering(
            &fam,
            3,
            Strength::SliceTree,
            LexCheckMode::Sampled { count: 50, seed: 1 },
            0,
        )
        .unwrap();
        assert!(!cert.passed);
        assert!(!realizes(
            &fam.members()[0],
            cert.violation.as_ref().unwrap()
        ));
    }

    #[test]
    fn scrambling_transform_examples() {
        let id = PermFamily::new(6, vec![Permutation::identity(6)]).unwrap();
        let lex = scrambling_to_lex(&id, 2, 3).unwrap();
        assert_eq!(lex.members()[0], LexPermutation::identity(2, 3));
        let rev = PermFamily::new(4, vec![Permutation::reversal(4)]).unwrap();
        assert_eq!(
            scrambling_to_lex(&rev, 2, 2).unwrap().members()[0],
            LexPermutation::reversal(2, 2)
        );
        assert!(scrambling_to_lex(&rev, 3, 2).is_err());
    }

    #[test]
    fn scrambling_transform_yields_lex_shattering_family() {
        // a family shattering all 4-subsets of [6] gives a 2-lex-shattering family of [2]^3
        let q = build_scrambling_random(6, 4, 8, &BuildConfig::default()).unwrap();
        assert_eq!(crate::perm::min_shatter(&q.family, 4, 1000).unwrap().0, 24);
        let lex = scrambling_to_lex(&q.family, 2, 3).unwrap();
        let cert =
            verify_lex_shattering(&lex, 2, Strength::Full, LexCheckMode::Exhaustive, 1000).unwrap();
        assert!(cert.passed);
    }
}
