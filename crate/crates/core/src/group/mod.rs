//! Finite groups given by multiplication tables.
//!
//! Every group keeps the identity at index 0. Elements are plain indices
//! into the table; the constructors below fix a canonical enumeration so
//! that sets written in terms of named generators are reproducible by index.

mod parse;
mod set;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;

pub use parse::parse_group;
pub use set::ElementSet;

/// Index of a group element.
pub type Element = usize;

/// Largest group order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 512;

/// Associativity is checked on every triple up to this order, and on a
/// fixed random sample of triples above it.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    spec: String,
}

/// On-disk form of a group table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupTable {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl Group {
    /// Builds a group from a row-major table, checking the group axioms.
    pub fn from_table(
        mul: Vec<Vec<usize>>,
        labels: Vec<String>,
        spec: impl Into<String>,
    ) -> Result<Group, GroupError> {
        let order = mul.len();
        if order == 0 {
            return Err(GroupError::Table("empty table".into()));
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (x, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::Table(format!(
                    "row {x} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(GroupError::Table(format!("entry {v} in row {x} out of range")));
                }
                flat.push(v as u32);
            }
        }
        let labels = if labels.is_empty() {
            (0..order).map(|i| i.to_string()).collect()
        } else if labels.len() == order {
            labels
        } else {
            return Err(GroupError::Table(format!(
                "{} labels supplied for {order} elements",
                labels.len()
            )));
        };
        let at = |x: usize, y: usize| flat[x * order + y] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::Table(
                    "element 0 must be the identity".into(),
                ));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let mut seen = vec![false; order];
            for y in 0..order {
                let v = at(x, y);
                if seen[v] {
                    return Err(GroupError::Table(format!("row {x} repeats element {v}")));
                }
                seen[v] = true;
                if v == 0 {
                    *slot = y as u32;
                }
            }
        }
        for (x, &y) in inv.iter().enumerate() {
            let y = y as usize;
            if at(y, x) != 0 {
                return Err(GroupError::Table(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
        }
        let group = Group {
            order,
            mul: flat,
            inv,
            labels,
            spec: spec.into(),
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let k = self.order;
        let bad = |x: usize, y: usize, z: usize| {
            self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))
        };
        if k <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        if bad(x, y, z) {
                            return Err(GroupError::Table(format!(
                                "not associative at ({x}, {y}, {z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
                if bad(x, y, z) {
                    return Err(GroupError::Table(format!(
                        "not associative at ({x}, {y}, {z})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a group from a closed binary operation on `0..order` without
    /// re-checking the axioms. Only used by the constructors in this crate.
    fn from_fn(
        order: usize,
        labels: Vec<String>,
        spec: String,
        op: impl Fn(usize, usize) -> usize,
    ) -> Group {
        let mut mul = Vec::with_capacity(order * order);
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            for y in 0..order {
                let v = op(x, y);
                if v == 0 {
                    *slot = y as u32;
                }
                mul.push(v as u32);
            }
        }
        Group {
            order,
            mul,
            inv,
            labels,
            spec,
        }
    }

    /// The cyclic group `Zk`, enumerated as `1, a, a^2, ...`.
    pub fn cyclic(k: usize) -> Result<Group, GroupError> {
        Group::cyclic_power(k, 1)
    }

    /// The direct power `Zk^m` with generators `a, b, c, ...`.
    ///
    /// Elements are enumerated by exponent vector with the first generator
    /// varying fastest: for `Z2^3` the order is `1, a, b, ab, c, ac, bc, abc`.
    pub fn cyclic_power(k: usize, m: usize) -> Result<Group, GroupError> {
        if k == 0 || m == 0 {
            return Err(GroupError::Parse {
                spec: format!("Z{k}^{m}"),
                reason: "orders and exponents must be positive".into(),
            });
        }
        if m > 26 {
            return Err(GroupError::TooLarge(usize::MAX));
        }
        let order = checked_pow(k, m).filter(|&o| o <= MAX_ORDER);
        let order = order.ok_or(GroupError::TooLarge(checked_pow(k, m).unwrap_or(usize::MAX)))?;
        let digits = |mut x: usize| {
            let mut d = vec![0usize; m];
            for slot in d.iter_mut() {
                *slot = x % k;
                x /= k;
            }
            d
        };
        let labels = (0..order)
            .map(|x| {
                let d = digits(x);
                let mut s = String::new();
                for (t, &e) in d.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    s.push((b'a' + t as u8) as char);
                    if e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            })
            .collect();
        let spec = if m == 1 { format!("Z{k}") } else { format!("Z{k}^{m}") };
        Ok(Group::from_fn(order, labels, spec, |x, y| {
            let (dx, dy) = (digits(x), digits(y));
            dx.iter()
                .zip(&dy)
                .rev()
                .fold(0, |acc, (&u, &v)| acc * k + (u + v) % k)
        }))
    }

    /// The quaternion group `<a, b | a^4 = b^4 = 1, b^2 = a^2, a^b = a^-1>`,
    /// enumerated as `1, a, a^2, a^3, b, ab, a^2b, a^3b`.
    pub fn quaternion() -> Group {
        let labels = ["1", "a", "a^2", "a^3", "b", "ab", "a^2b", "a^3b"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Group::from_fn(8, labels, "Q8".into(), |x, y| {
            let (i1, j1) = (x % 4, x / 4);
            let (i2, j2) = (y % 4, y / 4);
            // b^j a^i = a^(-i) b^j for j odd, and b^2 = a^2.
            let mut i = if j1 == 1 { i1 + 4 - i2 } else { i1 + i2 };
            let mut j = j1 + j2;
            if j == 2 {
                i += 2;
                j = 0;
            }
            i % 4 + 4 * j
        })
    }

    /// The dihedral group of order `2k`, `<a, b | a^k = b^2 = 1, a^b = a^-1>`,
    /// enumerated as `1, a, ..., a^(k-1), b, ab, ..., a^(k-1)b`.
    pub fn dihedral(k: usize) -> Result<Group, GroupError> {
        if k < 3 {
            return Err(GroupError::Parse {
                spec: format!("D{k}"),
                reason: "dihedral groups need k >= 3 (order 2k)".into(),
            });
        }
        if 2 * k > MAX_ORDER {
            return Err(GroupError::TooLarge(2 * k));
        }
        let power = |i: usize, letter: &str| match i {
            0 => String::new(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        } + letter;
        let labels = (0..2 * k)
            .map(|x| {
                let s = power(x % k, if x >= k { "b" } else { "" });
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        Ok(Group::from_fn(2 * k, labels, format!("D{k}"), |x, y| {
            let (i1, j1) = (x % k, x / k);
            let (i2, j2) = (y % k, y / k);
            let i = if j1 == 1 { (i1 + k - i2) % k } else { (i1 + i2) % k };
            i + k * ((j1 + j2) % 2)
        }))
    }

    /// The symmetric group on `k <= 5` points. Elements are image tuples in
    /// lexicographic order; the product `xy` applies `x` first.
    pub fn symmetric(k: usize) -> Result<Group, GroupError> {
        if k == 0 || k > 5 {
            return Err(GroupError::Parse {
                spec: format!("S{k}"),
                reason: "symmetric groups are supported for 1 <= k <= 5".into(),
            });
        }
        let perms: Vec<Vec<usize>> = itertools::Itertools::permutations(0..k, k).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let labels = perms
            .iter()
            .map(|p| {
                let body: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                format!("[{}]", body.join(","))
            })
            .collect();
        let order = perms.len();
        Ok(Group::from_fn(order, labels, format!("S{k}"), |x, y| {
            let img: Vec<usize> = (0..k).map(|p| perms[y][perms[x][p]]).collect();
            index(&img)
        }))
    }

    /// The direct product `G x H`, enumerated lexicographically by pairs
    /// with the first component most significant.
    pub fn direct_product(g: &Group, h: &Group) -> Result<Group, GroupError> {
        let (a, b) = (g.order, h.order);
        let order = a * b;
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", g.label(x / b), h.label(x % b)))
            .collect();
        let spec = format!("{}x{}", g.spec, h.spec);
        Ok(Group::from_fn(order, labels, spec, |x, y| {
            g.mul(x / b, y / b) * b + h.mul(x % b, y % b)
        }))
    }

    /// Loads a group from a JSON table file.
    pub fn from_table_file(path: &std::path::Path) -> Result<Group, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Table(format!("{}: {e}", path.display())))?;
        let table: GroupTable =
            serde_json::from_str(&text).map_err(|e| GroupError::Table(e.to_string()))?;
        if table.order != table.mul.len() {
            return Err(GroupError::Table(format!(
                "declared order {} but table has {} rows",
                table.order,
                table.mul.len()
            )));
        }
        Group::from_table(table.mul, table.labels, format!("table:{}", path.display()))
    }

    pub fn to_table(&self) -> GroupTable {
        GroupTable {
            order: self.order,
            mul: (0..self.order)
                .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Element {
        0
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks an element up by its label.
    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    /// Group product. Panics on out-of-range indices; see [`Group::checked_mul`].
    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        assert!(x < self.order && y < self.order, "element index out of range");
        self.mul[x * self.order + y] as usize
    }

    pub fn checked_mul(&self, x: Element, y: Element) -> Result<Element, GroupError> {
        for v in [x, y] {
            if v >= self.order {
                return Err(GroupError::Index {
                    index: v,
                    order: self.order,
                });
            }
        }
        Ok(self.mul(x, y))
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: Element, k: usize) -> Element {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: Element) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    pub fn involution_count(&self) -> usize {
        self.elements().filter(|&x| self.element_order(x) == 2).count()
    }

    /// True iff every non-identity element has order 2 (vacuously for `Z1`).
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.elements().skip(1).all(|x| self.mul(x, x) == 0)
    }

    pub fn set_inverse(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.order, s.iter().map(|x| self.inv(x)))
            .expect("inverse indices are in range")
    }

    /// Right-multiplies every element of `s` by `g`.
    pub fn set_times(&self, s: &ElementSet, g: Element) -> ElementSet {
        ElementSet::from_elements(self.order, s.iter().map(|x| self.mul(x, g)))
            .expect("products are in range")
    }

    /// The subgroup generated by `s`.
    pub fn generated_subgroup(&self, s: &ElementSet) -> ElementSet {
        let mut members = ElementSet::empty(self.order);
        members.insert(0);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for g in s.iter() {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    frontier.push(y);
                }
            }
        }
        members
    }

    /// A generating set chosen greedily: repeatedly add the lowest-indexed
    /// element outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut current = ElementSet::from_elements(self.order, [0]).expect("identity");
        while current.len() < self.order {
            let next = self
                .elements()
                .find(|&x| !current.contains(x))
                .expect("proper subgroup has a complement");
            gens.push(next);
            current = self.generated_subgroup(
                &ElementSet::from_elements(self.order, gens.iter().copied()).expect("in range"),
            );
        }
        gens
    }

    /// Lowest-indexed element of the given order, if any.
    pub fn first_element_of_order(&self, k: usize) -> Option<Element> {
        self.elements().find(|&x| self.element_order(x) == k)
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Group, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(g.order(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = Group::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
        assert!(g.is_elementary_abelian_2());
    }

    #[test]
    fn quaternion_relations() {
        let q = Group::quaternion();
        let (a, b) = (1, 4);
        assert_eq!(q.element_order(a), 4);
        assert_eq!(q.element_order(b), 4);
        assert_eq!(q.mul(b, b), q.pow(a, 2));
        // a^b = b^-1 a b = a^-1
        assert_eq!(q.mul(q.mul(q.inv(b), a), b), q.inv(a));
        assert_eq!(q.label(q.mul(a, b)), "ab");
        assert_eq!(q.involution_count(), 1);
        assert!(!q.is_abelian());
        assert!(!q.is_elementary_abelian_2());
    }

    #[test]
    fn klein_products() {
        let k = Group::cyclic_power(2, 2).unwrap();
        assert_eq!(k.labels(), &["1", "a", "b", "ab"]);
        assert_eq!(k.mul(1, 2), 3);
        assert!(k.is_elementary_abelian_2());
        let e = Group::cyclic_power(2, 4).unwrap();
        assert!(e.is_elementary_abelian_2());
    }

    #[test]
    fn z2_cubed_enumeration() {
        let g = Group::cyclic_power(2, 3).unwrap();
        assert_eq!(g.labels(), &["1", "a", "b", "ab", "c", "ac", "bc", "abc"]);
    }

    #[test]
    fn set_inverse_examples() {
        let z3 = Group::cyclic(3).unwrap();
        assert_eq!(z3.set_inverse(&set(&z3, &[1])), set(&z3, &[2]));
        let q = Group::quaternion();
        // {1, a, b} -> {1, a^3, a^2 b}
        assert_eq!(q.set_inverse(&set(&q, &[0, 1, 4])), set(&q, &[0, 3, 6]));
        let e = Group::cyclic_power(2, 3).unwrap();
        let s = set(&e, &[1, 3, 6]);
        assert_eq!(e.set_inverse(&s), s);
    }

    #[test]
    fn element_orders() {
        let z3 = Group::cyclic(3).unwrap();
        assert_eq!(z3.element_order(1), 3);
        assert_eq!(z3.element_order(0), 1);
        let d4 = Group::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.element_order(1), 4);
        assert_eq!(d4.element_order(4), 2);
        assert_eq!(d4.involution_count(), 5);
    }

    #[test]
    fn symmetric_group_is_valid() {
        let s3 = Group::symmetric(3).unwrap();
        let table = s3.to_table();
        let rebuilt = Group::from_table(table.mul, table.labels, "S3").unwrap();
        assert_eq!(rebuilt, s3);
        assert!(!s3.is_abelian());
        assert_eq!(s3.exponent(), 6);
    }

    #[test]
    fn checked_mul_rejects_out_of_range() {
        let z3 = Group::cyclic(3).unwrap();
        assert_eq!(
            z3.checked_mul(1, 3),
            Err(GroupError::Index { index: 3, order: 3 })
        );
    }

    #[test]
    fn table_validation() {
        // identity not at index 0
        let bad = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            Group::from_table(bad, vec![], "t"),
            Err(GroupError::Table(_))
        ));
        // non-associative loop of order 5 (Latin square with identity)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(Group::from_table(loop5, vec![], "t").is_err());
    }

    #[test]
    fn generating_sets() {
        let g = Group::cyclic_power(2, 4).unwrap();
        assert_eq!(g.generating_set(), vec![1, 2, 4, 8]);
        let q = Group::quaternion();
        assert_eq!(q.generating_set(), vec![1, 4]);
    }
}
