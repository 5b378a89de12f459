use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use serde::Serialize;

use super::tree::{g_upper, Color, TreeColoring};
use crate::error::{Error, Result};

/// Images of the vertices of a complete binary tree of height `height`, in
/// breadth-first order, inside a larger colored tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subdivision {
    pub height: usize,
    pub images: Vec<usize>,
}

impl Subdivision {
    fn single(v: usize) -> Self {
        Self {
            height: 0,
            images: vec![v],
        }
    }

    pub fn root(&self) -> usize {
        self.images[0]
    }

    pub fn layer(&self, depth: usize) -> &[usize] {
        &self.images[(1 << depth) - 1..(1 << (depth + 1)) - 1]
    }

    pub fn leaves(&self) -> &[usize] {
        self.layer(self.height)
    }

    /// Colors of the layers above the leaves.
    pub fn layer_colors<'a>(&self, coloring: &'a TreeColoring) -> Vec<&'a Color> {
        (0..self.height)
            .map(|j| coloring.color(self.layer(j)[0]))
            .collect()
    }

    /// `left` and `right` hung below a common root `w`.
    fn join(w: usize, left: &Subdivision, right: &Subdivision) -> Self {
        let height = left.height + 1;
        let mut images = Vec::with_capacity((1 << (height + 1)) - 1);
        images.push(w);
        for j in 0..height {
            images.extend_from_slice(left.layer(j));
            images.extend_from_slice(right.layer(j));
        }
        Self { height, images }
    }
}

/// Checks a subdivision directly: images are distinct, the left and right
/// children of each vertex map below the left and right child of its image,
/// and every layer above the leaves is monochromatic.
pub fn check_subdivision(
    coloring: &TreeColoring,
    sub: &Subdivision,
) -> std::result::Result<(), String> {
    let expected = (1usize << (sub.height + 1)) - 1;
    if sub.images.len() != expected {
        return Err(format!(
            "{} images for height {}",
            sub.images.len(),
            sub.height
        ));
    }
    if let Some(&v) = sub.images.iter().find(|&&v| v >= coloring.vertex_count()) {
        return Err(format!("image {v} outside the tree"));
    }
    let mut seen = sub.images.clone();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err("images are not distinct".into());
    }
    for i in 1..sub.images.len() {
        let parent = sub.images[(i - 1) / 2];
        let side = if i % 2 == 1 {
            2 * parent + 1
        } else {
            2 * parent + 2
        };
        let mut v = sub.images[i];
        while v > side {
            v = (v - 1) / 2;
        }
        if v != side {
            return Err(format!(
                "image {} is not below vertex {side}",
                sub.images[i]
            ));
        }
    }
    for j in 0..sub.height {
        let first = coloring.color(sub.layer(j)[0]);
        if sub.layer(j).iter().any(|&v| coloring.color(v) != first) {
            return Err(format!("layer {j} is not monochromatic"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionSearch {
    pub subdivision: Option<Subdivision>,
    /// Distinct colors above the leaf layer.
    pub colors_present: usize,
    /// `g_upper(colors_present, h)`.
    pub required_height: u64,
    pub precondition_met: bool,
}

struct ProofSearch<'a> {
    coloring: &'a TreeColoring,
    /// Depth to descend before pigeonholing, per target height.
    step: Vec<Option<usize>>,
}

impl ProofSearch<'_> {
    fn find(&self, v: usize, h: usize) -> Option<Subdivision> {
        if h == 0 {
            return Some(Subdivision::single(v));
        }
        let step = self.step[h]?;
        let depth = TreeColoring::depth(v) + step;
        if depth > self.coloring.height() {
            return None;
        }
        // descendants of v at `depth`, left to right
        let first = ((v + 1) << step) - 1;
        let mut seen: HashMap<Vec<&Color>, Subdivision> = HashMap::new();
        for u in first..first + (1 << step) {
            let Some(sub) = self.find(u, h - 1) else {
                continue;
            };
            let key = sub.layer_colors(self.coloring);
            if let Some(earlier) = seen.get(&key) {
                let (mut a, mut b) = (earlier.root(), sub.root());
                while a != b {
                    if a > b {
                        a = (a - 1) / 2;
                    } else {
                        b = (b - 1) / 2;
                    }
                }
                return Some(Subdivision::join(a, earlier, &sub));
            }
            seen.insert(key, sub);
        }
        None
    }
}

/// The recursive search from the Ramsey bound: descend `⌈log₂(c^{h-1}+1)⌉`
/// levels, find height-`(h-1)` subdivisions below each vertex there, and join
/// the first two (breadth-first order) whose layer colors coincide at their
/// lowest common ancestor. `c` counts the colors present above the leaves.
///
/// A tree shorter than `g_upper(c, h)` is still searched; the result then
/// carries `precondition_met = false` and may be empty.
pub fn mono_subdivision(coloring: &TreeColoring, h: usize) -> Result<SubdivisionSearch> {
    let colors_present = coloring.inner_color_count();
    let c = colors_present.max(1) as u64;
    let required_height = g_upper(c, h as u32);
    let step = (0..=h)
        .map(|j| {
            if j == 0 {
                return Some(0);
            }
            let bits = BigUint::from(c).pow(j as u32 - 1).bits();
            usize::try_from(bits)
                .ok()
                .filter(|&s| s <= coloring.height())
        })
        .collect();
    let subdivision = ProofSearch { coloring, step }.find(0, h);
    if let Some(sub) = &subdivision {
        check_subdivision(coloring, sub).map_err(Error::InvalidSubdivision)?;
    }
    Ok(SubdivisionSearch {
        subdivision,
        colors_present,
        required_height,
        precondition_met: coloring.height() as u64 >= required_height,
    })
}

/// Largest tree the exhaustive search accepts.
const EXACT_MAX_HEIGHT: usize = 15;

/// Exhaustive search for a height-`h` subdivision with monochromatic layers
/// above the leaves, by dynamic programming over the tree. Returns the one
/// with the least root (breadth-first order), least layer colors first.
/// `None` when none exists or the tree exceeds height 15.
pub fn find_subdivision_exact(coloring: &TreeColoring, h: usize) -> Option<Subdivision> {
    let height = coloring.height();
    if height > EXACT_MAX_HEIGHT || h > height {
        return None;
    }
    let count = coloring.vertex_count();
    let mut ids: BTreeMap<&Color, u32> = BTreeMap::new();
    for c in coloring.colors() {
        let next = ids.len() as u32;
        ids.entry(c).or_insert(next);
    }
    let cid: Vec<u32> = coloring.colors().iter().map(|c| ids[c]).collect();
    // below[j][u]: layer-color keys of height-j subdivisions inside the
    // subtree of u, each with the least root achieving it
    let mut below: Vec<Vec<BTreeMap<Vec<u32>, usize>>> = Vec::with_capacity(h + 1);
    below.push(
        (0..count)
            .map(|u| BTreeMap::from([(Vec::new(), u)]))
            .collect(),
    );
    for j in 1..=h {
        let prev = &below[j - 1];
        let mut cur: Vec<BTreeMap<Vec<u32>, usize>> = vec![BTreeMap::new(); count];
        for u in (0..count).rev() {
            if TreeColoring::depth(u) >= height {
                continue;
            }
            let (l, r) = (2 * u + 1, 2 * u + 2);
            let mut map: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            for key in prev[l].keys().filter(|k| prev[r].contains_key(*k)) {
                let mut full = Vec::with_capacity(j);
                full.push(cid[u]);
                full.extend_from_slice(key);
                map.insert(full, u);
            }
            for child in [l, r] {
                for (key, &root) in &cur[child] {
                    let slot = map.entry(key.clone()).or_insert(root);
                    *slot = (*slot).min(root);
                }
            }
            cur[u] = map;
        }
        below.push(cur);
    }
    let (root, key) = below[h][0].iter().map(|(key, &root)| (root, key)).min()?;
    Some(rebuild(&below, root, h, key))
}

fn rebuild(
    below: &[Vec<BTreeMap<Vec<u32>, usize>>],
    w: usize,
    j: usize,
    key: &[u32],
) -> Subdivision {
    if j == 0 {
        return Subdivision::single(w);
    }
    let rest = &key[1..];
    let left = rebuild(below, below[j - 1][2 * w + 1][rest], j - 1, rest);
    let right = rebuild(below, below[j - 1][2 * w + 2][rest], j - 1, rest);
    Subdivision::join(w, &left, &right)
}

/// Least height `H' >= h` whose top `H'` levels already contain a height-`h`
/// monochromatic-layer subdivision.
pub fn min_mono_height(coloring: &TreeColoring, h: usize) -> Option<usize> {
    (h..=coloring.height())
        .find(|&top| find_subdivision_exact(&coloring.truncate(top), h).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_coloring(height: usize, colors: u32, rng: &mut ChaCha8Rng) -> TreeColoring {
        let bits = 32 - (colors - 1).leading_zeros().min(31);
        let v = (0..(1 << (height + 1)) - 1)
            .map(|_| {
                let c = rng.gen_range(0..colors);
                (0..bits.max(1)).map(|b| c >> b & 1 == 1).collect()
            })
            .collect();
        TreeColoring::new(height, v).unwrap()
    }

    /// Whether any height-`h` subdivision exists, by trying every injective
    /// assignment layer by layer.
    fn brute_force_exists(coloring: &TreeColoring, h: usize) -> bool {
        fn place(coloring: &TreeColoring, h: usize, images: &mut Vec<usize>) -> bool {
            let total = (1usize << (h + 1)) - 1;
            if images.len() == total {
                return check_subdivision(
                    coloring,
                    &Subdivision {
                        height: h,
                        images: images.clone(),
                    },
                )
                .is_ok();
            }
            let i = images.len();
            let candidates: Vec<usize> = if i == 0 {
                (0..coloring.vertex_count()).collect()
            } else {
                let parent = images[(i - 1) / 2];
                let side = if i % 2 == 1 {
                    2 * parent + 1
                } else {
                    2 * parent + 2
                };
                (0..coloring.vertex_count())
                    .filter(|&v| TreeColoring::in_subtree(v, side))
                    .collect()
            };
            for v in candidates {
                let depth = TreeColoring::depth(i);
                if depth < h
                    && i > (1 << depth) - 1
                    && coloring.color(v) != coloring.color(images[(1 << depth) - 1])
                {
                    continue;
                }
                images.push(v);
                if place(coloring, h, images) {
                    return true;
                }
                images.pop();
            }
            false
        }
        place(coloring, h, &mut Vec::new())
    }

    #[test]
    fn height_zero_is_the_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let col = random_coloring(3, 4, &mut rng);
        let search = mono_subdivision(&col, 0).unwrap();
        assert_eq!(search.subdivision, Some(Subdivision::single(0)));
        assert!(search.precondition_met);
    }

    #[test]
    fn monochromatic_tree() {
        let col = TreeColoring::new(3, vec![vec![true]; 15]).unwrap();
        for h in 0..=3 {
            let search = mono_subdivision(&col, h).unwrap();
            assert_eq!(search.colors_present, 1);
            assert_eq!(search.required_height, h as u64);
            let sub = search.subdivision.unwrap();
            assert_eq!(sub.images, (0..(1 << (h + 1)) - 1).collect::<Vec<_>>());
        }
    }

    #[test]
    fn checker_rejects_bad_maps() {
        let col = TreeColoring::new(
            2,
            vec![
                vec![true],
                vec![true],
                vec![false],
                vec![true],
                vec![true],
                vec![true],
                vec![true],
            ],
        )
        .unwrap();
        let ok = Subdivision {
            height: 1,
            images: vec![0, 3, 2],
        };
        assert!(check_subdivision(&col, &ok).is_ok());
        assert!(check_subdivision(
            &col,
            &Subdivision {
                height: 1,
                images: vec![0, 2, 1]
            }
        )
        .is_err());
        assert!(check_subdivision(
            &col,
            &Subdivision {
                height: 1,
                images: vec![0, 3, 4]
            }
        )
        .is_err());
        assert!(check_subdivision(
            &col,
            &Subdivision {
                height: 2,
                images: vec![0, 1, 2, 3, 4, 5, 6]
            }
        )
        .is_err());
        assert!(check_subdivision(
            &col,
            &Subdivision {
                height: 1,
                images: vec![0, 0, 2]
            }
        )
        .is_err());
    }

    #[test]
    fn random_two_colorings_at_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let col = random_coloring(4, 2, &mut rng);
            let search = mono_subdivision(&col, 2).unwrap();
            assert!(search.precondition_met);
            let sub = search.subdivision.expect("found at the bound");
            assert!(check_subdivision(&col, &sub).is_ok());
        }
    }

    #[test]
    fn larger_palettes_at_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (colors, h) in [(3, 2), (4, 2), (2, 3)] {
            let need = g_upper(colors as u64, h as u32) as usize;
            for _ in 0..50 {
                let col = random_coloring(need, colors, &mut rng);
                let search = mono_subdivision(&col, h).unwrap();
                assert!(search.precondition_met);
                assert!(search.subdivision.is_some(), "c={colors} h={h}");
            }
        }
    }

    #[test]
    fn exact_search_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for trial in 0..300 {
            let height = 2 + trial % 2;
            let h = 1 + trial % 2;
            let col = random_coloring(height, 2 + (trial % 2) as u32, &mut rng);
            let exact = find_subdivision_exact(&col, h);
            if let Some(sub) = &exact {
                assert!(check_subdivision(&col, sub).is_ok());
            }
            assert_eq!(
                exact.is_some(),
                brute_force_exists(&col, h),
                "trial {trial}"
            );
        }
    }

    #[test]
    fn proof_search_success_implies_exact_success() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..200 {
            let col = random_coloring(3, 2, &mut rng);
            if mono_subdivision(&col, 2).unwrap().subdivision.is_some() {
                assert!(find_subdivision_exact(&col, 2).is_some());
            }
        }
    }

    #[test]
    fn min_height_never_exceeds_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..200 {
            let col = random_coloring(4, 2, &mut rng);
            let top = min_mono_height(&col, 2).expect("bound height suffices");
            assert!((2..=4).contains(&top));
        }
    }
}
