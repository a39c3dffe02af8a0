use std::fmt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image array.
///
/// Composition follows right actions: `p.then(q)` maps `x` to `q(p(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Precondition(format!(
                    "image array {images:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Permutation {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Lowest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }

    /// True iff the permutation maps arcs to arcs (and hence, being a
    /// bijection on a finite arc set, non-arcs to non-arcs).
    pub fn is_automorphism_of(&self, d: &Digraph) -> bool {
        self.degree() == d.vertex_count() && d.arcs().all(|(u, v)| d.has_arc(self.0[u], self.0[v]))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
