use std::collections::BTreeSet;
use std::ops::Range;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::pair::{halve, OrderedPair};
use super::MAX_TREE_HEIGHT;
use crate::error::{Error, Result};
use crate::perm::OrderFamily;

/// One bit per family member.
pub type Color = Vec<bool>;

/// `h · ⌈log₂(c^{h-1} + 1)⌉`, and `0` for `h = 0`. Expects `c >= 1`.
pub fn g_upper(c: u64, h: u32) -> u64 {
    if h == 0 {
        return 0;
    }
    // ⌈log₂(N + 1)⌉ is the bit length of N
    let power = BigUint::from(c).pow(h - 1);
    h as u64 * power.bits()
}

/// Colors on the vertices of a complete binary tree, stored in
/// breadth-first order: the root is `0`, the children of `v` are `2v + 1`
/// and `2v + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeColoring {
    height: usize,
    colors: Vec<Color>,
}

impl TreeColoring {
    pub fn new(height: usize, colors: Vec<Color>) -> Result<Self> {
        if height > MAX_TREE_HEIGHT {
            return Err(Error::BudgetExceeded {
                work: height as u128,
                budget: MAX_TREE_HEIGHT as u64,
            });
        }
        let expected = (1usize << (height + 1)) - 1;
        if colors.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "a tree of height {height} has {expected} vertices, got {} colors",
                colors.len()
            )));
        }
        Ok(Self { height, colors })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> &Color {
        &self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn depth(v: usize) -> usize {
        (usize::BITS - 1 - (v + 1).leading_zeros()) as usize
    }

    /// Vertices at `depth`, left to right.
    pub fn layer(depth: usize) -> Range<usize> {
        (1 << depth) - 1..(1 << (depth + 1)) - 1
    }

    /// `v` lies in the subtree rooted at `root` (including `root` itself).
    pub fn in_subtree(v: usize, root: usize) -> bool {
        let (dv, dr) = (Self::depth(v), Self::depth(root));
        dv >= dr && ((v + 1) >> (dv - dr)) == root + 1
    }

    /// Number of distinct colors above the leaf layer.
    pub fn inner_color_count(&self) -> usize {
        let inner = (1usize << self.height) - 1;
        self.colors[..inner].iter().collect::<BTreeSet<_>>().len()
    }

    /// The top `height` levels.
    pub fn truncate(&self, height: usize) -> Self {
        let height = height.min(self.height);
        Self {
            height,
            colors: self.colors[..(1 << (height + 1)) - 1].to_vec(),
        }
    }
}

/// Complete binary tree of nested ordered pairs: the children of `v` get
/// the two sides of `v`'s pair as fragments, and `v` is colored by the
/// direction bits of its pair.
#[derive(Debug, Clone)]
pub struct ColoredTree {
    root: Vec<u64>,
    pairs: Vec<OrderedPair>,
    coloring: TreeColoring,
}

impl ColoredTree {
    /// Builds the tree even when fragments run empty. An empty pair is given
    /// the all-ones color.
    pub(crate) fn build_unchecked<F: OrderFamily + ?Sized>(
        family: &F,
        root: Vec<u64>,
        height: usize,
    ) -> Self {
        let count = (1usize << (height + 1)) - 1;
        let mut tree = Self {
            root,
            pairs: Vec::with_capacity(count),
            coloring: TreeColoring {
                height,
                colors: vec![],
            },
        };
        for v in 0..count {
            let pair = halve(family, tree.fragment(v));
            tree.pairs.push(pair);
        }
        tree.coloring.colors = tree.pairs.iter().map(|p| p.direction.clone()).collect();
        tree
    }

    pub fn height(&self) -> usize {
        self.coloring.height
    }

    pub fn coloring(&self) -> &TreeColoring {
        &self.coloring
    }

    pub fn pair(&self, v: usize) -> &OrderedPair {
        &self.pairs[v]
    }

    pub fn color(&self, v: usize) -> &Color {
        self.coloring.color(v)
    }

    /// `X_v`: the input set at the root, otherwise one side of the parent's pair.
    pub fn fragment(&self, v: usize) -> &[u64] {
        if v == 0 {
            return &self.root;
        }
        let parent = &self.pairs[(v - 1) / 2];
        if v % 2 == 1 {
            &parent.a
        } else {
            &parent.b
        }
    }

    pub fn dump(&self) -> TreeDump {
        let vertices = (0..self.pairs.len())
            .map(|v| VertexDump {
                id: v,
                depth: TreeColoring::depth(v),
                fragment_size: self.fragment(v).len(),
                pair_size: self.pairs[v].min_size(),
                color: self
                    .color(v)
                    .iter()
                    .map(|&bit| if bit { '1' } else { '0' })
                    .collect(),
            })
            .collect();
        TreeDump {
            height: self.height(),
            vertices,
        }
    }
}

/// Ordered-pair tree over `x0`; errors if any fragment would be empty.
pub fn build_ordered_tree<F: OrderFamily + ?Sized>(
    family: &F,
    x0: &[u64],
    height: usize,
) -> Result<ColoredTree> {
    if height > MAX_TREE_HEIGHT {
        return Err(Error::BudgetExceeded {
            work: height as u128,
            budget: MAX_TREE_HEIGHT as u64,
        });
    }
    let n = family.ground_size();
    let mut root = x0.to_vec();
    root.sort_unstable();
    if let Some(w) = root.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0]));
    }
    if let Some(&e) = root.iter().find(|&&e| e == 0 || e > n) {
        return Err(Error::ElementOutOfRange { element: e, n });
    }
    let tree = ColoredTree::build_unchecked(family, root, height);
    if let Some(vertex) = (0..tree.pairs.len()).find(|&v| tree.fragment(v).is_empty()) {
        return Err(Error::EmptyFragment { vertex });
    }
    Ok(tree)
}

/// Per-vertex summary for debugging.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDump {
    pub height: usize,
    pub vertices: Vec<VertexDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDump {
    pub id: usize,
    pub depth: usize,
    pub fragment_size: usize,
    pub pair_size: usize,
    /// Direction bits, member order.
    pub color: String,
}
