//! Exhaustive automorphism enumeration, used to cross-check the search.

use itertools::Itertools;

use super::chain::PermGroup;
use super::partition::OrderedPartition;
use super::perm::Permutation;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Same contract as [`super::automorphisms`], computed by trying all `n!`
/// permutations. Rejects digraphs on more than 8 vertices.
pub fn brute_force_automorphisms(d: &Digraph, colors: &OrderedPartition) -> Result<PermGroup> {
    let n = d.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!(
            "brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}"
        )));
    }
    let mut color = vec![0; n];
    for (c, cell) in colors.cells().iter().enumerate() {
        for &v in cell {
            color[v] = c;
        }
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut group = PermGroup::trivial(n);
    let mut count: u64 = 0;
    for images in (0..n).permutations(n) {
        if images.iter().enumerate().any(|(v, &w)| color[v] != color[w]) {
            continue;
        }
        let p = Permutation::from_images_unchecked(images);
        if !p.is_automorphism_of(d) {
            continue;
        }
        count += 1;
        if !group.contains(&p) {
            gens.push(p);
            group = PermGroup::from_generators(n, &gens)?;
        }
    }
    if group.order_u64() != Some(count) {
        return Err(Error::Internal(format!(
            "enumerated {count} automorphisms but the generated group has order {}",
            group.order()
        )));
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c4 = Digraph::from_arcs(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        let g = brute_force_automorphisms(&c4, &OrderedPartition::unit(4)).unwrap();
        assert_eq!(g.order_u64(), Some(4));
        let one = brute_force_automorphisms(&Digraph::empty(1), &OrderedPartition::unit(1)).unwrap();
        assert_eq!(one.order_u64(), Some(1));
        assert!(brute_force_automorphisms(&Digraph::empty(9), &OrderedPartition::unit(9)).is_err());
    }
}
