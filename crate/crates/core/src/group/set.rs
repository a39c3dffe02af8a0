use std::fmt;

use fixedbitset::FixedBitSet;

use super::Element;
use crate::error::GroupError;

/// A subset of a group: a sorted duplicate-free element list plus its
/// membership bitmask over the ambient order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    elems: Vec<Element>,
    mask: FixedBitSet,
}

impl ElementSet {
    pub fn empty(order: usize) -> ElementSet {
        ElementSet {
            elems: Vec::new(),
            mask: FixedBitSet::with_capacity(order),
        }
    }

    pub fn full(order: usize) -> ElementSet {
        let mut mask = FixedBitSet::with_capacity(order);
        mask.insert_range(..);
        ElementSet {
            elems: (0..order).collect(),
            mask,
        }
    }

    pub fn from_elements(
        order: usize,
        elems: impl IntoIterator<Item = Element>,
    ) -> Result<ElementSet, GroupError> {
        let mut mask = FixedBitSet::with_capacity(order);
        for x in elems {
            if x >= order {
                return Err(GroupError::Index { index: x, order });
            }
            mask.insert(x);
        }
        Ok(ElementSet::from_mask(mask))
    }

    fn from_mask(mask: FixedBitSet) -> ElementSet {
        ElementSet {
            elems: mask.ones().collect(),
            mask,
        }
    }

    /// Size of the ambient group.
    pub fn ambient_order(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.mask.contains(x)
    }

    pub fn insert(&mut self, x: Element) {
        if !self.mask.put(x) {
            let at = self.elems.partition_point(|&y| y < x);
            self.elems.insert(at, x);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.elems
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut mask = self.mask.clone();
        mask.union_with(&other.mask);
        ElementSet::from_mask(mask)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        ElementSet::from_mask(mask)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut mask = self.mask.clone();
        mask.difference_with(&other.mask);
        ElementSet::from_mask(mask)
    }

    pub fn complement(&self) -> ElementSet {
        let mut mask = self.mask.clone();
        mask.toggle_range(..);
        ElementSet::from_mask(mask)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.mask.is_disjoint(&other.mask)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.mask.is_subset(&other.mask)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}
