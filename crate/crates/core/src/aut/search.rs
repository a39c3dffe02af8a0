//! Full automorphism groups by individualization and refinement.
//!
//! The leftmost path of the search tree fixes a base `v_1, ..., v_k`. Levels
//! are then processed bottom-up: at level `i` every vertex `w` of the target
//! cell that is not yet known to share an orbit with `v_i` gets its subtree
//! searched for a leaf equivalent to the first leaf. Each hit is an
//! automorphism fixing `v_1, ..., v_{i-1}` and mapping `v_i` to `w`, so the
//! generators collected form a strong generating set for that base and the
//! group order is the product of the basic orbit lengths.

use num_bigint::BigUint;
use num_traits::One;

use super::chain::PermGroup;
use super::partition::{OrderedPartition, Refiner};
use super::perm::Permutation;
use crate::digraph::Digraph;

/// Extra knobs for [`automorphisms_with`].
#[derive(Clone, Debug, Default)]
pub struct AutOptions {
    /// Automorphisms already known to preserve the digraph and the initial
    /// colouring. They only prune the search; the result is the same.
    pub known: Vec<Permutation>,
    /// Give up as soon as the group is proven larger than this.
    pub cap: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum AutOutcome {
    Group(PermGroup),
    /// The group order exceeds the requested cap.
    Exceeded,
}

impl AutOutcome {
    pub fn group(self) -> Option<PermGroup> {
        match self {
            AutOutcome::Group(g) => Some(g),
            AutOutcome::Exceeded => None,
        }
    }
}

/// The full group of automorphisms of `d` that map every cell of `colors`
/// to itself.
pub fn automorphisms(d: &Digraph, colors: &OrderedPartition) -> PermGroup {
    automorphisms_with(d, colors, &AutOptions::default())
        .group()
        .expect("no cap was set")
}

/// Automorphism order of `d` (colour-free), or `None` once it is proven to
/// exceed `cap`.
pub fn automorphism_order_capped(d: &Digraph, known: &[Permutation], cap: u64) -> Option<u64> {
    let opts = AutOptions {
        known: known.to_vec(),
        cap: Some(cap),
    };
    automorphisms_with(d, &OrderedPartition::unit(d.vertex_count()), &opts)
        .group()
        .map(|g| g.order_u64().expect("order bounded by cap"))
}

pub fn automorphisms_with(
    d: &Digraph,
    colors: &OrderedPartition,
    opts: &AutOptions,
) -> AutOutcome {
    assert_eq!(colors.len(), d.vertex_count(), "partition and digraph sizes differ");
    Search::new(d, colors).run(opts)
}

struct PathNode {
    partition: OrderedPartition,
    target: Vec<usize>,
    target_start: usize,
}

struct Search<'a> {
    d: &'a Digraph,
    refiner: Refiner<'a>,
    path: Vec<PathNode>,
    traces: Vec<u64>,
    first_leaf: Vec<usize>,
}

struct Orbits {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Orbits {
        Orbits {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }

    fn absorb(&mut self, g: &Permutation) {
        for x in 0..g.degree() {
            self.union(x, g.apply(x));
        }
    }

    fn class_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

impl<'a> Search<'a> {
    fn new(d: &'a Digraph, colors: &OrderedPartition) -> Search<'a> {
        let mut refiner = Refiner::new(d);
        let mut root = colors.clone();
        let mut traces = vec![refiner.refine_all(&mut root)];
        let mut path = Vec::new();
        let mut node = root;
        while let Some(start) = node.target_cell() {
            let mut target = node.cell_members(start).to_vec();
            target.sort_unstable();
            let mut child = node.clone();
            let single = child.individualize(target[0]);
            traces.push(refiner.refine_after(&mut child, single));
            path.push(PathNode {
                partition: node,
                target,
                target_start: start,
            });
            node = child;
        }
        Search {
            d,
            refiner,
            path,
            traces,
            first_leaf: node.order().to_vec(),
        }
    }

    fn run(mut self, opts: &AutOptions) -> AutOutcome {
        let n = self.d.vertex_count();
        let mut orbits = Orbits::new(n);
        let mut found: Vec<Permutation> = Vec::new();
        let mut order_below = BigUint::one();
        let exceeds = |bound: &BigUint| opts.cap.is_some_and(|c| *bound > BigUint::from(c));
        for level in (0..self.path.len()).rev() {
            if level == 0 {
                for g in &opts.known {
                    orbits.absorb(g);
                }
            }
            let v = self.path[level].target[0];
            let candidates = self.path[level].target.clone();
            for &w in &candidates[1..] {
                if orbits.find(w) == orbits.find(v) {
                    continue;
                }
                let mut child = self.path[level].partition.clone();
                let single = child.individualize(w);
                if self.refiner.refine_after(&mut child, single) != self.traces[level + 1] {
                    continue;
                }
                if let Some(g) = self.equivalent_leaf(child, level + 1) {
                    orbits.absorb(&g);
                    found.push(g);
                    if exceeds(&(&order_below * BigUint::from(orbits.class_size(v)))) {
                        return AutOutcome::Exceeded;
                    }
                }
            }
            order_below *= BigUint::from(orbits.class_size(v));
        }
        let base: Vec<usize> = self.path.iter().map(|p| p.target[0]).collect();
        let mut gens = found;
        gens.extend(opts.known.iter().cloned());
        let group = PermGroup::from_base_and_strong_generators(n, &base, gens);
        debug_assert_eq!(group.order(), &order_below);
        if exceeds(group.order()) {
            return AutOutcome::Exceeded;
        }
        AutOutcome::Group(group)
    }

    /// Depth-first search below `node` (at `depth`) for a leaf whose
    /// labelling, composed with the first leaf's, is an automorphism.
    fn equivalent_leaf(&mut self, node: OrderedPartition, depth: usize) -> Option<Permutation> {
        if node.is_discrete() {
            if depth != self.path.len() {
                return None;
            }
            let mut images = vec![0; node.len()];
            for (&a, &b) in self.first_leaf.iter().zip(node.order()) {
                images[a] = b;
            }
            let g = Permutation::from_images_unchecked(images);
            return g.is_automorphism_of(self.d).then_some(g);
        }
        if depth >= self.path.len() {
            return None;
        }
        let start = node.target_cell()?;
        let expected = &self.path[depth];
        if start != expected.target_start
            || node.cell_end(start) - start != expected.target.len()
        {
            return None;
        }
        let mut target = node.cell_members(start).to_vec();
        target.sort_unstable();
        for w in target {
            let mut child = node.clone();
            let single = child.individualize(w);
            if self.refiner.refine_after(&mut child, single) != self.traces[depth + 1] {
                continue;
            }
            if let Some(g) = self.equivalent_leaf(child, depth + 1) {
                return Some(g);
            }
        }
        None
    }
}
