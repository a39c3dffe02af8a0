//! Ordered partitions and counting refinement.
//!
//! A vertex's invariant with respect to a splitter cell `S` is the triple
//! (out-neighbours in `S`, in-neighbours in `S`, digon partners in `S`).
//! Refinement splits cells until every cell is uniform for every splitter.

use std::collections::VecDeque;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Disjoint vertex cells covering `0..n`, in a significant order.
///
/// Cells are contiguous ranges of `lab`; a cell is identified by the
/// position of its first element.
#[derive(Clone)]
pub struct OrderedPartition {
    lab: Vec<usize>,
    cell_of: Vec<usize>,
    cell_end: Vec<usize>,
    cells: usize,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> OrderedPartition {
        let mut cell_end = vec![0; n];
        if n > 0 {
            cell_end[0] = n;
        }
        OrderedPartition {
            lab: (0..n).collect(),
            cell_of: vec![0; n],
            cell_end,
            cells: usize::from(n > 0),
        }
    }

    /// Builds a partition from explicit cells, validating that they are
    /// non-empty, disjoint and cover `0..n`.
    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Result<OrderedPartition> {
        let mut seen = vec![false; n];
        let mut lab = Vec::with_capacity(n);
        let mut cell_of = vec![0; n];
        let mut cell_end = vec![0; n];
        for cell in cells {
            if cell.is_empty() {
                return Err(Error::Precondition("empty cell in partition".into()));
            }
            let start = lab.len();
            for &v in cell {
                if v >= n || seen[v] {
                    return Err(Error::Precondition(format!(
                        "vertex {v} repeated or out of range in partition"
                    )));
                }
                seen[v] = true;
                cell_of[v] = start;
                lab.push(v);
            }
            cell_end[start] = lab.len();
        }
        if lab.len() != n {
            return Err(Error::Precondition("partition does not cover every vertex".into()));
        }
        Ok(OrderedPartition {
            lab,
            cell_of,
            cell_end,
            cells: cells.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.lab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lab.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Vertices in cell order; for a discrete partition this is a labelling.
    pub fn order(&self) -> &[usize] {
        &self.lab
    }

    /// Cells in order, each sorted ascending.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.cell_ranges()
            .map(|(s, e)| {
                let mut c = self.lab[s..e].to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    pub(crate) fn cell_ranges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut start = 0;
        std::iter::from_fn(move || {
            (start < self.lab.len()).then(|| {
                let s = start;
                start = self.cell_end[s];
                (s, start)
            })
        })
    }

    pub(crate) fn cell_end(&self, start: usize) -> usize {
        self.cell_end[start]
    }

    pub(crate) fn cell_members(&self, start: usize) -> &[usize] {
        &self.lab[start..self.cell_end[start]]
    }

    /// First non-singleton cell of minimal size.
    pub(crate) fn target_cell(&self) -> Option<usize> {
        self.cell_ranges()
            .filter(|(s, e)| e - s > 1)
            .min_by_key(|(s, e)| (e - s, *s))
            .map(|(s, _)| s)
    }

    /// Splits `v` off the front of its cell. Returns the start of the new
    /// singleton cell.
    pub(crate) fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v];
        let end = self.cell_end[start];
        debug_assert!(end - start > 1);
        let at = start + self.lab[start..end].iter().position(|&x| x == v).expect("v in its cell");
        self.lab.swap(start, at);
        self.cell_end[start] = start + 1;
        self.cell_end[start + 1] = end;
        for pos in start + 1..end {
            let w = self.lab[pos];
            self.cell_of[w] = start + 1;
        }
        self.cells += 1;
        start
    }
}

impl PartialEq for OrderedPartition {
    fn eq(&self, other: &Self) -> bool {
        self.cells() == other.cells()
    }
}

impl Eq for OrderedPartition {}

impl std::fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.cells()).finish()
    }
}

/// Coarsest stable refinement of `p`.
///
/// Split cells keep their position; fragments are ordered by invariant value.
pub fn refine(d: &Digraph, p: &OrderedPartition) -> OrderedPartition {
    let mut q = p.clone();
    Refiner::new(d).refine_all(&mut q);
    q
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(FNV_PRIME)
}

/// Reusable scratch space for refinement on one digraph.
pub(crate) struct Refiner<'a> {
    d: &'a Digraph,
    out_cnt: Vec<u32>,
    in_cnt: Vec<u32>,
    digon_cnt: Vec<u32>,
    touched: Vec<usize>,
    is_touched: Vec<bool>,
    cell_marked: Vec<bool>,
    in_queue: Vec<bool>,
    scratch: Vec<(u64, usize)>,
}

impl<'a> Refiner<'a> {
    pub(crate) fn new(d: &'a Digraph) -> Refiner<'a> {
        let n = d.vertex_count();
        Refiner {
            d,
            out_cnt: vec![0; n],
            in_cnt: vec![0; n],
            digon_cnt: vec![0; n],
            touched: Vec::with_capacity(n),
            is_touched: vec![false; n],
            cell_marked: vec![false; n],
            in_queue: vec![false; n],
            scratch: Vec::with_capacity(n),
        }
    }

    /// Refines with every cell as an initial splitter.
    pub(crate) fn refine_all(&mut self, p: &mut OrderedPartition) -> u64 {
        let queue: VecDeque<usize> = p.cell_ranges().map(|(s, _)| s).collect();
        self.refine_from(p, queue)
    }

    /// Refines an equitable partition after one vertex was individualized
    /// into the singleton cell at `start`.
    pub(crate) fn refine_after(&mut self, p: &mut OrderedPartition, start: usize) -> u64 {
        self.refine_from(p, VecDeque::from([start]))
    }

    /// Runs the splitter queue to a fixed point and returns a hash of the
    /// splits performed. The hash is invariant under relabelling the
    /// digraph together with the partition.
    fn refine_from(&mut self, p: &mut OrderedPartition, mut queue: VecDeque<usize>) -> u64 {
        let d = self.d;
        let mut trace = FNV_OFFSET;
        for &s in &queue {
            self.in_queue[s] = true;
        }
        let mut touched_cells: Vec<usize> = Vec::new();
        while let Some(s) = queue.pop_front() {
            self.in_queue[s] = false;
            if p.is_discrete() {
                continue;
            }
            let end = p.cell_end[s];
            for pos in s..end {
                let w = p.lab[pos];
                for &u in d.in_neighbors(w) {
                    self.out_cnt[u] += 1;
                    self.touch(u);
                }
                for &u in d.out_neighbors(w) {
                    self.in_cnt[u] += 1;
                    self.touch(u);
                }
                for &u in d.digon_neighbors(w) {
                    self.digon_cnt[u] += 1;
                }
            }
            touched_cells.clear();
            for &u in &self.touched {
                let c = p.cell_of[u];
                if !self.cell_marked[c] {
                    self.cell_marked[c] = true;
                    touched_cells.push(c);
                }
            }
            touched_cells.sort_unstable();
            for &c in &touched_cells {
                self.cell_marked[c] = false;
                let cend = p.cell_end[c];
                if cend - c == 1 {
                    continue;
                }
                self.scratch.clear();
                for pos in c..cend {
                    let v = p.lab[pos];
                    let key = (u64::from(self.out_cnt[v]) << 42)
                        | (u64::from(self.in_cnt[v]) << 21)
                        | u64::from(self.digon_cnt[v]);
                    self.scratch.push((key, v));
                }
                self.scratch.sort_unstable();
                if self.scratch[0].0 == self.scratch[self.scratch.len() - 1].0 {
                    continue;
                }
                trace = mix(trace, c as u64);
                let was_queued = self.in_queue[c];
                let mut frag_start = c;
                for i in 0..self.scratch.len() {
                    let (key, v) = self.scratch[i];
                    p.lab[c + i] = v;
                    p.cell_of[v] = frag_start;
                    let last = i + 1 == self.scratch.len() || self.scratch[i + 1].0 != key;
                    if last {
                        let frag_end = c + i + 1;
                        p.cell_end[frag_start] = frag_end;
                        trace = mix(trace, key);
                        trace = mix(trace, (frag_end - frag_start) as u64);
                        if frag_start != c {
                            p.cells += 1;
                        }
                        if !(was_queued && frag_start == c) {
                            self.in_queue[frag_start] = true;
                            queue.push_back(frag_start);
                        }
                        frag_start = frag_end;
                    }
                }
            }
            for &u in &self.touched {
                self.out_cnt[u] = 0;
                self.in_cnt[u] = 0;
                self.digon_cnt[u] = 0;
                self.is_touched[u] = false;
            }
            self.touched.clear();
        }
        for s in queue {
            self.in_queue[s] = false;
        }
        mix(trace, p.cells as u64)
    }

    #[inline]
    fn touch(&mut self, u: usize) {
        if !self.is_touched[u] {
            self.is_touched[u] = true;
            self.touched.push(u);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn directed_triangle_is_stable() {
        let c = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(refine(&c, &OrderedPartition::unit(3)).cells(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn directed_path_becomes_discrete() {
        // degrees (out, in): u = (1,0), v = (1,1), w = (0,1)
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let r = refine(&path, &OrderedPartition::unit(3));
        assert_eq!(r.cells(), vec![vec![2], vec![0], vec![1]]);
    }

    #[test]
    fn split_cells_keep_position() {
        // 0 -> 1 inside the second cell; the first cell {2, 3} is untouched.
        let d = Digraph::from_arcs(4, [(0, 1)]).unwrap();
        let p = OrderedPartition::from_cells(4, &[vec![2, 3], vec![0, 1]]).unwrap();
        let r = refine(&d, &p);
        assert_eq!(r.cells(), vec![vec![2, 3], vec![1], vec![0]]);
    }

    #[test]
    fn from_cells_validates() {
        assert!(OrderedPartition::from_cells(3, &[vec![0, 1]]).is_err());
        assert!(OrderedPartition::from_cells(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(OrderedPartition::from_cells(2, &[vec![0], vec![]]).is_err());
    }

    proptest! {
        #[test]
        fn refinement_is_idempotent(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..50)) {
            let d = Digraph::from_arcs(n, raw.into_iter().filter(|&(u, v)| u < n && v < n && u != v)).unwrap();
            let once = refine(&d, &OrderedPartition::unit(n));
            let twice = refine(&d, &once);
            prop_assert_eq!(once.cells(), twice.cells());
        }
    }
}
