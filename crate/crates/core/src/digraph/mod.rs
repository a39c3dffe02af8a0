//! Loop-free digraphs with dense adjacency.

mod io;

use fixedbitset::FixedBitSet;

use crate::error::DigraphError;

pub use io::DigraphJson;

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_mask: Vec<FixedBitSet>,
    in_mask: Vec<FixedBitSet>,
    out_list: Vec<Vec<usize>>,
    in_list: Vec<Vec<usize>>,
    digon_list: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Digraph {
        Digraph {
            n,
            out_mask: vec![FixedBitSet::with_capacity(n); n],
            in_mask: vec![FixedBitSet::with_capacity(n); n],
            out_list: vec![Vec::new(); n],
            in_list: vec![Vec::new(); n],
            digon_list: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    /// Builds a digraph from arcs. Duplicate arcs collapse; loops are errors.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, DigraphError> {
        let mut out_mask = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(DigraphError::VertexRange { vertex: w, count: n });
                }
            }
            if u == v {
                return Err(DigraphError::Loop(u));
            }
            out_mask[u].insert(v);
        }
        Ok(Digraph::from_out_masks(out_mask))
    }

    fn from_out_masks(out_mask: Vec<FixedBitSet>) -> Digraph {
        let n = out_mask.len();
        let mut in_mask = vec![FixedBitSet::with_capacity(n); n];
        let mut out_list = vec![Vec::new(); n];
        let mut in_list = vec![Vec::new(); n];
        let mut arc_count = 0;
        for u in 0..n {
            for v in out_mask[u].ones() {
                in_mask[v].insert(u);
                out_list[u].push(v);
                in_list[v].push(u);
                arc_count += 1;
            }
        }
        let digon_list = (0..n)
            .map(|u| out_mask[u].intersection(&in_mask[u]).collect())
            .collect();
        Digraph {
            n,
            out_mask,
            in_mask,
            out_list,
            in_list,
            digon_list,
            arc_count,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_mask[u].contains(v)
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_list
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_list[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_list[v]
    }

    /// Vertices joined to `v` by a digon (arcs in both directions).
    pub fn digon_neighbors(&self, v: usize) -> &[usize] {
        &self.digon_list[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_list[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_list[v].len()
    }

    /// Number of digons at `v`.
    pub fn undirected_degree(&self, v: usize) -> usize {
        self.digon_list[v].len()
    }

    /// The common valency `d` if every vertex has out- and in-valency `d`.
    pub fn is_regular(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.out_degree(0) };
        (0..self.n)
            .all(|v| self.out_degree(v) == d && self.in_degree(v) == d)
            .then_some(d)
    }

    /// True iff the underlying undirected graph is connected.
    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.out_neighbors(v).iter().chain(self.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Sub-digraph induced on `vertices`, relabelled `0..k` in ascending
    /// order of the original indices. The map back to original indices is
    /// returned alongside.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Digraph, Vec<usize>), DigraphError> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(DigraphError::VertexRange { vertex: v, count: self.n });
        }
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let k = keep.len();
        let mut out_mask = vec![FixedBitSet::with_capacity(k); k];
        for (i, &u) in keep.iter().enumerate() {
            for &v in &self.out_list[u] {
                if new_index[v] != usize::MAX {
                    out_mask[i].insert(new_index[v]);
                }
            }
        }
        Ok((Digraph::from_out_masks(out_mask), keep))
    }

    /// True iff no arc has both ends in `vertices`.
    pub fn is_empty_on(&self, vertices: &[usize]) -> bool {
        let mut mask = FixedBitSet::with_capacity(self.n);
        vertices.iter().for_each(|&v| mask.insert(v));
        vertices
            .iter()
            .all(|&u| self.out_mask[u].is_disjoint(&mask))
    }

    /// True iff the sub-digraph induced on `x ∪ y` is a set of digons
    /// pairing every vertex of `x` with exactly one vertex of `y` and
    /// vice versa.
    pub fn is_perfect_matching_between(&self, x: &[usize], y: &[usize]) -> bool {
        if x.is_empty() && y.is_empty() {
            return true;
        }
        if x.len() != y.len() || !self.is_empty_on(x) || !self.is_empty_on(y) {
            return false;
        }
        let mut in_y = FixedBitSet::with_capacity(self.n);
        y.iter().for_each(|&v| in_y.insert(v));
        let mut in_x = FixedBitSet::with_capacity(self.n);
        x.iter().for_each(|&v| in_x.insert(v));
        let exactly_one_digon = |v: usize, other: &FixedBitSet| {
            let outs = self.out_mask[v].intersection(other).count();
            let ins = self.in_mask[v].intersection(other).count();
            let digons = self.digon_list[v].iter().filter(|&&u| other.contains(u)).count();
            outs == 1 && ins == 1 && digons == 1
        };
        x.iter().all(|&v| exactly_one_digon(v, &in_y))
            && y.iter().all(|&v| exactly_one_digon(v, &in_x))
    }

    /// The digraph with vertex `v` renamed `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Digraph {
        let mut out_mask = vec![FixedBitSet::with_capacity(self.n); self.n];
        for (u, v) in self.arcs() {
            out_mask[perm[u]].insert(perm[v]);
        }
        Digraph::from_out_masks(out_mask)
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("vertex_count", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}
