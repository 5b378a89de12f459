use std::cmp::Ordering;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::point::{cube_size, first_diff, Point};
use crate::error::{Error, Result};
use crate::perm::{OrderFamily, Permutation};

/// An order on `[b]^d` decided at the first differing coordinate by the
/// component permutation of `[b]` at that coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexPermutation {
    b: u32,
    d: usize,
    /// Component `i` (0-based) occupies `ranks[i*b .. (i+1)*b]`; 1-based ranks.
    ranks: Vec<u32>,
}

impl LexPermutation {
    pub fn new(b: u32, components: &[Permutation]) -> Result<Self> {
        if b < 1 || components.is_empty() {
            return Err(Error::InvalidParameter(
                "a lex-permutation needs b >= 1 and d >= 1".into(),
            ));
        }
        let mut ranks = Vec::with_capacity(b as usize * components.len());
        for c in components {
            if c.n() != b as usize {
                return Err(Error::MismatchedGroundSet {
                    expected: b as u64,
                    found: c.n() as u64,
                });
            }
            ranks.extend_from_slice(c.ranks());
        }
        Ok(Self {
            b,
            d: components.len(),
            ranks,
        })
    }

    fn from_flat(b: u32, d: usize, ranks: Vec<u32>) -> Self {
        debug_assert_eq!(ranks.len(), b as usize * d);
        Self { b, d, ranks }
    }

    pub fn identity(b: u32, d: usize) -> Self {
        Self::from_flat(b, d, (0..d).flat_map(|_| 1..=b).collect())
    }

    pub fn reversal(b: u32, d: usize) -> Self {
        Self::from_flat(b, d, (0..d).flat_map(|_| (1..=b).rev()).collect())
    }

    /// Uniformly random components.
    pub fn random<R: Rng + ?Sized>(b: u32, d: usize, rng: &mut R) -> Self {
        let mut ranks = Vec::with_capacity(b as usize * d);
        let mut comp: Vec<u32> = (1..=b).collect();
        for _ in 0..d {
            comp.shuffle(rng);
            ranks.extend_from_slice(&comp);
        }
        Self::from_flat(b, d, ranks)
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Rank of value `v` under the component at 1-based position `i`.
    #[inline]
    pub fn component_rank(&self, i: usize, v: u32) -> u32 {
        self.ranks[(i - 1) * self.b as usize + (v - 1) as usize]
    }

    pub fn component(&self, i: usize) -> Permutation {
        let b = self.b as usize;
        Permutation::from_ranks(self.ranks[(i - 1) * b..i * b].to_vec())
            .expect("components are bijections")
    }

    fn check(&self, x: &Point) -> Result<()> {
        if x.dim() != self.d || x.coords().iter().any(|&c| c == 0 || c > self.b) {
            return Err(Error::InvalidPoint { b: self.b });
        }
        Ok(())
    }

    /// Relative order of two distinct points.
    pub fn compare(&self, x: &Point, y: &Point) -> Result<Ordering> {
        self.check(x)?;
        self.check(y)?;
        let i = first_diff(x, y)?;
        Ok(self
            .component_rank(i, x.at(i))
            .cmp(&self.component_rank(i, y.at(i))))
    }

    /// Position of `x` in the full order of `[b]^d`, 0-based. Requires `b^d`
    /// to be addressable, i.e. at most `2^64`.
    pub fn key(&self, x: &Point) -> u64 {
        let mut acc: u128 = 0;
        for (i, &c) in x.coords().iter().enumerate() {
            acc = acc * self.b as u128 + (self.component_rank(i + 1, c) - 1) as u128;
        }
        acc as u64
    }

    /// Key of the point encoding element `x` (see [`super::encode`]).
    #[inline]
    pub fn element_key(&self, x: u64) -> u64 {
        let b = self.b as u64;
        let mut rest = x - 1;
        let mut key = 0u64;
        let mut weight = 1u64;
        for i in (0..self.d).rev() {
            let digit = (rest % b) as usize;
            rest /= b;
            key = key.wrapping_add(
                weight.wrapping_mul((self.ranks[i * self.b as usize + digit] - 1) as u64),
            );
            weight = weight.wrapping_mul(b);
        }
        key
    }

    /// The permutation of `points` (element `j + 1` = `points[j]`) that this
    /// order induces.
    pub fn materialize(&self, points: &[Point]) -> Result<Permutation> {
        for p in points {
            self.check(p)?;
        }
        let mut sorted: Vec<&Point> = points.iter().collect();
        sorted.sort();
        for (j, w) in sorted.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(j as u64 + 1));
            }
        }
        let mut idx: Vec<usize> = (0..points.len()).collect();
        idx.sort_by(|&a, &b| {
            self.compare(&points[a], &points[b])
                .expect("points are distinct and valid")
        });
        let mut rank = vec![0u32; points.len()];
        for (pos, &i) in idx.iter().enumerate() {
            rank[i] = pos as u32 + 1;
        }
        Permutation::from_ranks(rank)
    }
}

/// Free-standing form of [`LexPermutation::compare`].
pub fn lex_compare(rho: &LexPermutation, x: &Point, y: &Point) -> Result<Ordering> {
    rho.compare(x, y)
}

/// A list of lex-permutations of one cube `[b]^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexFamily {
    b: u32,
    d: usize,
    members: Vec<LexPermutation>,
}

impl LexFamily {
    pub fn new(b: u32, d: usize, members: Vec<LexPermutation>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|m| m.b != b || m.d != d) {
            return Err(Error::InvalidParameter(format!(
                "member over [{}]^{} in a family over [{b}]^{d}",
                bad.b, bad.d
            )));
        }
        Ok(Self { b, d, members })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[LexPermutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub(crate) fn push(&mut self, member: LexPermutation) {
        debug_assert!(member.b == self.b && member.d == self.d);
        self.members.push(member);
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::files::write_json(path, &LexFamilyFile::from(self))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        crate::files::read_json::<LexFamilyFile>(path)?.try_into()
    }
}

/// The family acts on `[b^d]` through [`super::encode`].
impl OrderFamily for LexFamily {
    fn ground_size(&self) -> u64 {
        cube_size(self.b, self.d).expect("cube addressable by u64")
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    fn key(&self, member: usize, x: u64) -> u64 {
        self.members[member].element_key(x)
    }
}

/// `{"b": 2, "d": 3, "members": [[[component ranks] × d], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexFamilyFile {
    pub b: u32,
    pub d: usize,
    pub members: Vec<Vec<Vec<u32>>>,
}

impl From<&LexFamily> for LexFamilyFile {
    fn from(f: &LexFamily) -> Self {
        let b = f.b as usize;
        let members = f
            .members
            .iter()
            .map(|m| m.ranks.chunks(b).map(<[u32]>::to_vec).collect())
            .collect();
        Self {
            b: f.b,
            d: f.d,
            members,
        }
    }
}

impl TryFrom<LexFamilyFile> for LexFamily {
    type Error = Error;

    fn try_from(file: LexFamilyFile) -> Result<Self> {
        let members = file
            .members
            .into_iter()
            .map(|comps| {
                if comps.len() != file.d {
                    return Err(Error::Format(format!(
                        "expected {} components, found {}",
                        file.d,
                        comps.len()
                    )));
                }
                let comps = comps
                    .into_iter()
                    .map(Permutation::from_ranks)
                    .collect::<Result<Vec<_>>>()?;
                LexPermutation::new(file.b, &comps)
            })
            .collect::<Result<Vec<_>>>()?;
        LexFamily::new(file.b, file.d, members)
    }
}

/// Standard (`<`) or reverse (`>`) order on `[b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Standard,
    Reverse,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Standard, Direction::Reverse];

    #[inline]
    fn pos(self, v: u32, b: u32) -> u64 {
        match self {
            Direction::Standard => (v - 1) as u64,
            Direction::Reverse => (b - v) as u64,
        }
    }
}

/// Sorts by coordinate `position` under `primary`, then breaks ties like the
/// lex-permutation whose components all follow `secondary`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiOrder {
    pub position: usize,
    pub primary: Direction,
    pub secondary: Direction,
    pub b: u32,
    pub d: usize,
}

impl PiOrder {
    pub fn precedes(&self, x: &Point, y: &Point) -> Result<bool> {
        let i = self.position;
        if x.at(i) != y.at(i) {
            return Ok(self.primary.pos(x.at(i), self.b) < self.primary.pos(y.at(i), self.b));
        }
        let j = first_diff(x, y)?;
        Ok(self.secondary.pos(x.at(j), self.b) < self.secondary.pos(y.at(j), self.b))
    }

    /// 0-based position of `x` in the full order of `[b]^d`.
    pub fn key(&self, x: &Point) -> u64 {
        let b = self.b as u128;
        let mut acc = self.primary.pos(x.at(self.position), self.b) as u128;
        for (j, &c) in x.coords().iter().enumerate() {
            if j + 1 != self.position {
                acc = acc * b + self.secondary.pos(c, self.b) as u128;
            }
        }
        acc as u64
    }

    #[inline]
    pub fn element_key(&self, x: u64) -> u64 {
        let b = self.b as u64;
        let mut rest = x - 1;
        let mut key = 0u64;
        let mut weight = 1u64;
        let mut primary = 0u64;
        for j in (1..=self.d).rev() {
            let c = (rest % b) as u32 + 1;
            rest /= b;
            if j == self.position {
                primary = self.primary.pos(c, self.b);
            } else {
                key = key.wrapping_add(weight.wrapping_mul(self.secondary.pos(c, self.b)));
                weight = weight.wrapping_mul(b);
            }
        }
        key.wrapping_add(weight.wrapping_mul(primary))
    }

    /// Materialized over all of `[b]^d` in encoding order.
    pub fn to_permutation(&self, cap: u64) -> Result<Permutation> {
        let size =
            cube_size(self.b, self.d)
                .filter(|&s| s <= cap)
                .ok_or(Error::BudgetExceeded {
                    work: (self.b as u128).saturating_pow(self.d as u32),
                    budget: cap,
                })?;
        let mut idx: Vec<u64> = (1..=size).collect();
        idx.sort_unstable_by_key(|&x| self.element_key(x));
        Permutation::from_order(&idx)
    }
}

/// `π_{i,σ,τ}` on `[b]^d` for a 1-based position `i`.
pub fn build_pi(
    position: usize,
    primary: Direction,
    secondary: Direction,
    b: u32,
    d: usize,
) -> Result<PiOrder> {
    if position == 0 || position > d {
        return Err(Error::InvalidParameter(format!(
            "position {position} outside [1, {d}]"
        )));
    }
    if b < 2 {
        return Err(Error::InvalidParameter(format!("need b >= 2, got {b}")));
    }
    Ok(PiOrder {
        position,
        primary,
        secondary,
        b,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lex::point::encode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[u32]) -> Point {
        Point::from_coords(c.to_vec())
    }

    fn cube(b: u32, d: usize) -> Vec<Point> {
        let size = cube_size(b, d).unwrap();
        (1..=size).map(|x| encode(size, b, d, x).unwrap()).collect()
    }

    #[test]
    fn compare_examples() {
        let id = LexPermutation::identity(2, 3);
        assert_eq!(
            id.compare(&p(&[1, 1, 2]), &p(&[1, 2, 1])),
            Ok(Ordering::Less)
        );
        let comp1 = Permutation::from_order(&[2, 1, 3]).unwrap();
        let rho = LexPermutation::new(3, &[comp1, Permutation::identity(3)]).unwrap();
        assert_eq!(rho.compare(&p(&[1, 1]), &p(&[2, 3])), Ok(Ordering::Greater));
        assert_eq!(
            rho.compare(&p(&[1, 1]), &p(&[1, 1])),
            Err(Error::EqualPoints)
        );
    }

    #[test]
    fn reversal_reverses_standard_lex() {
        let rev = LexPermutation::reversal(3, 2);
        let pts = cube(3, 2);
        for x in &pts {
            for y in &pts {
                if x != y {
                    assert_eq!(rev.compare(x, y).unwrap(), y.cmp(x));
                }
            }
        }
    }

    #[test]
    fn materialize_examples() {
        let pts = cube(2, 2);
        let id = LexPermutation::identity(2, 2).materialize(&pts).unwrap();
        assert_eq!(id.order(), vec![1, 2, 3, 4]);
        let rev = LexPermutation::reversal(2, 2).materialize(&pts).unwrap();
        assert_eq!(rev.order(), vec![4, 3, 2, 1]);
        let dup = vec![p(&[1, 1]), p(&[1, 1])];
        assert!(matches!(
            LexPermutation::identity(2, 2).materialize(&dup),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn materialize_agrees_with_pairwise_compare() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts = cube(3, 2);
        for _ in 0..20 {
            let rho = LexPermutation::random(3, 2, &mut rng);
            let perm = rho.materialize(&pts).unwrap();
            let mut pairs = 0;
            for (a, x) in pts.iter().enumerate() {
                for (c, y) in pts.iter().enumerate() {
                    if a != c {
                        let by_rank = perm.rank(a as u64 + 1).cmp(&perm.rank(c as u64 + 1));
                        assert_eq!(rho.compare(x, y).unwrap(), by_rank);
                        assert_eq!(rho.key(x).cmp(&rho.key(y)), by_rank);
                        pairs += 1;
                    }
                }
            }
            assert_eq!(pairs, 72);
        }
    }

    #[test]
    fn element_key_matches_point_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = LexPermutation::random(4, 3, &mut rng);
        for x in 1..=64u64 {
            assert_eq!(rho.element_key(x), rho.key(&encode(64, 4, 3, x).unwrap()));
        }
    }

    #[test]
    fn pi_examples() {
        let std = Direction::Standard;
        let pi = build_pi(1, std, std, 3, 2).unwrap();
        assert_eq!(pi.to_permutation(100).unwrap(), Permutation::identity(9));
        let pi = build_pi(2, std, std, 2, 2).unwrap();
        let pts = cube(2, 2);
        let order: Vec<Point> = pi
            .to_permutation(100)
            .unwrap()
            .order()
            .iter()
            .map(|&x| pts[x as usize - 1].clone())
            .collect();
        assert_eq!(order, vec![p(&[1, 1]), p(&[2, 1]), p(&[1, 2]), p(&[2, 2])]);
        assert!(build_pi(3, std, std, 2, 2).is_err());
        assert!(build_pi(0, std, std, 2, 2).is_err());
    }

    #[test]
    fn pi_orders_are_two_stage_lex() {
        for (b, d) in [(2, 3), (3, 2), (4, 2)] {
            let pts = cube(b, d);
            for i in 1..=d {
                for s in Direction::BOTH {
                    for t in Direction::BOTH {
                        let pi = build_pi(i, s, t, b, d).unwrap();
                        let perm = pi.to_permutation(1000).unwrap();
                        for (a, x) in pts.iter().enumerate() {
                            assert_eq!(pi.element_key(a as u64 + 1), pi.key(x));
                            for (c, y) in pts.iter().enumerate() {
                                if a == c {
                                    continue;
                                }
                                let def = if x.at(i) != y.at(i) {
                                    (x.at(i) < y.at(i)) == (s == Direction::Standard)
                                } else {
                                    let j = first_diff(x, y).unwrap();
                                    (x.at(j) < y.at(j)) == (t == Direction::Standard)
                                };
                                assert_eq!(pi.precedes(x, y).unwrap(), def);
                                assert_eq!(perm.precedes(a as u64 + 1, c as u64 + 1), def);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lex_family_file_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let fam = LexFamily::new(
            3,
            2,
            (0..3)
                .map(|_| LexPermutation::random(3, 2, &mut rng))
                .collect(),
        )
        .unwrap();
        let file = LexFamilyFile::from(&fam);
        assert_eq!(file.members.len(), 3);
        assert_eq!(file.members[0].len(), 2);
        assert_eq!(LexFamily::try_from(file).unwrap(), fam);
    }
}
