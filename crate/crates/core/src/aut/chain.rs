//! Permutation groups stored as a base and strong generating set.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// One level of the stabilizer chain: the orbit of the base point under
/// the generators fixing all earlier base points, with a Schreier tree.
#[derive(Clone, Debug)]
struct ChainLevel {
    point: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    parent: Vec<usize>,
    via: Vec<usize>,
}

impl ChainLevel {
    fn new(point: usize, gens: Vec<usize>, all: &[Permutation], degree: usize) -> ChainLevel {
        let mut level = ChainLevel {
            point,
            gens,
            orbit: Vec::new(),
            parent: vec![NONE; degree],
            via: vec![NONE; degree],
        };
        level.rebuild(all);
        level
    }

    fn rebuild(&mut self, all: &[Permutation]) {
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.orbit.clear();
        self.orbit.push(self.point);
        self.parent[self.point] = self.point;
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for &g in &self.gens {
                let y = all[g].apply(x);
                if self.parent[y] == NONE {
                    self.parent[y] = x;
                    self.via[y] = g;
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    #[inline]
    fn in_orbit(&self, x: usize) -> bool {
        self.parent[x] != NONE
    }

    /// An element mapping the base point to `x`.
    fn transversal(&self, x: usize, all: &[Permutation]) -> Permutation {
        let mut path = Vec::new();
        let mut y = x;
        while y != self.point {
            path.push(self.via[y]);
            y = self.parent[y];
        }
        let degree = self.parent.len();
        path.iter()
            .rev()
            .fold(Permutation::identity(degree), |acc, &g| acc.then(&all[g]))
    }
}

/// A permutation group with a stabilizer chain for exact order and
/// membership queries.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: BigUint,
}

/// `{"order":k,"generators":[[images...],...]}`. Orders beyond `u64` are
/// written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupJson {
    pub order: serde_json::Value,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    /// The group generated by `gens`, via Schreier–Sims.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::Precondition(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut group = PermGroup::trivial(degree);
        for g in gens {
            if !g.is_identity() && !group.generators.contains(g) {
                group.generators.push(g.clone());
            }
        }
        group.schreier_sims();
        Ok(group)
    }

    /// Wraps a known base and strong generating set without completing it.
    /// The caller guarantees that, for every `i`, the generators fixing
    /// `base[..i]` pointwise generate that pointwise stabilizer.
    pub(crate) fn from_base_and_strong_generators(
        degree: usize,
        base: &[usize],
        gens: Vec<Permutation>,
    ) -> PermGroup {
        let mut group = PermGroup {
            degree,
            generators: gens.into_iter().filter(|g| !g.is_identity()).collect(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        for (i, &b) in base.iter().enumerate() {
            let level_gens = group.fixing_prefix(base, i);
            group.levels.push(ChainLevel::new(b, level_gens, &group.generators, degree));
        }
        group.levels.retain(|l| l.orbit.len() > 1);
        group.update_order();
        group
    }

    fn fixing_prefix(&self, base: &[usize], i: usize) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| base[..i].iter().all(|&b| self.generators[g].apply(b) == b))
            .collect()
    }

    fn update_order(&mut self) {
        self.order = self
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    fn base_points(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Sifts `g` through the levels starting at `from`. Returns the residue
    /// and the level at which sifting stopped (`levels.len()` if it got
    /// through every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.apply(level.point);
            if !level.in_orbit(beta) {
                return (h, l);
            }
            h = h.then(&level.transversal(beta, &self.generators).inverse());
        }
        (h, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let degree = self.degree;
        let mut base = self.base_points();
        for g in &self.generators {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().expect("non-identity generator"));
            }
        }
        self.levels.clear();
        for (i, &b) in base.iter().enumerate() {
            let level_gens = self.fixing_prefix(&base, i);
            self.levels.push(ChainLevel::new(b, level_gens, &self.generators, degree));
        }
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_new_strong_generator(level) {
                Some((y, j)) => {
                    let idx = self.generators.len();
                    let moved = y.first_moved();
                    self.generators.push(y);
                    if j == self.levels.len() {
                        let point = moved.expect("non-trivial residue moves a point");
                        self.levels
                            .push(ChainLevel::new(point, Vec::new(), &self.generators, degree));
                    }
                    for l in level + 1..=j {
                        self.levels[l].gens.push(idx);
                        let gens = std::mem::take(&mut self.generators);
                        self.levels[l].rebuild(&gens);
                        self.generators = gens;
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
        self.update_order();
    }

    /// Tests every Schreier generator at `level`; returns the first one that
    /// does not sift through the deeper levels, with its drop-out level.
    fn find_new_strong_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let u_beta = lv.transversal(beta, &self.generators);
            for &g in &lv.gens {
                let x = &self.generators[g];
                let image = x.apply(beta);
                let u_image = lv.transversal(image, &self.generators);
                let schreier = u_beta.then(x).then(&u_image.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip(&schreier, level + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.base_points()
    }

    /// Lengths of the fundamental orbits along the chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.strip(g, 0);
        j == self.levels.len() && residue.is_identity()
    }

    /// Orbits of the group, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    fn orbit_len(&self, v: usize) -> usize {
        self.orbits()
            .into_iter()
            .find(|o| o.binary_search(&v).is_ok())
            .map_or(1, |o| o.len())
    }

    /// True iff every point stabilizer is trivial.
    pub fn is_semiregular(&self) -> bool {
        self.orbits()
            .iter()
            .all(|o| BigUint::from(o.len()) == self.order)
    }

    /// Order of the stabilizer of `v`, by orbit–stabilizer.
    pub fn point_stabilizer_order(&self, v: usize) -> BigUint {
        &self.order / BigUint::from(self.orbit_len(v))
    }

    pub fn to_json_value(&self) -> PermGroupJson {
        let order = match self.order.to_u64() {
            Some(k) => serde_json::Value::from(k),
            None => serde_json::Value::from(self.order.to_string()),
        };
        PermGroupJson {
            order,
            generators: self.generators.iter().map(|g| g.images().to_vec()).collect(),
        }
    }
}
