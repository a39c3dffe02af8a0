//! n-Cayley digraphs: vertex set `G × Z_n`, arcs `(g_i, (t g)_j)` for
//! `t ∈ T[i][j]`. Vertex `g_i` has index `i·|G| + g`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::aut::{automorphism_order_capped, PermGroup, Permutation};
use crate::digraph::Digraph;
use crate::error::{DigraphError, Error, Result};
use crate::group::{parse_group, Element, ElementSet, Group};

/// The `n × n` matrix of connection sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionFamily {
    n: usize,
    order: usize,
    sets: Vec<ElementSet>,
}

/// `{"group":"<spec>","n":k,"sets":{"i,j":[...]}}`; absent keys mean ∅.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub group: String,
    pub n: usize,
    pub sets: BTreeMap<String, Vec<Element>>,
}

impl ConnectionFamily {
    /// All sets empty.
    pub fn empty(n: usize, order: usize) -> ConnectionFamily {
        ConnectionFamily {
            n,
            order,
            sets: vec![ElementSet::empty(order); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &ElementSet {
        &self.sets[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: ElementSet) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::Family(format!("index ({i},{j}) outside a family with n = {}", self.n)));
        }
        if s.ambient_order() != self.order {
            return Err(Error::Family(format!(
                "set over a group of order {} in a family over order {}",
                s.ambient_order(),
                self.order
            )));
        }
        self.sets[i * self.n + j] = s;
        Ok(())
    }

    /// Index arithmetic mod n, so recipes can write `T[i][i+1]` directly.
    pub(crate) fn set_mod(&mut self, i: usize, j: usize, s: ElementSet) {
        let n = self.n;
        self.set(i % n, j % n, s).expect("indices reduced mod n");
    }

    /// True iff every diagonal set is empty.
    pub fn is_partite(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_empty())
    }

    /// Out-valencies of the parts (row sums) and in-valencies (column sums).
    pub fn valency_profile(&self) -> (Vec<usize>, Vec<usize>) {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).len()).sum())
            .collect();
        let cols = (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).len()).sum())
            .collect();
        (rows, cols)
    }

    /// The common valency if all row and column sums agree.
    pub fn profile_valency(&self) -> Option<usize> {
        let (rows, cols) = self.valency_profile();
        let d = rows.first().copied().unwrap_or(0);
        rows.iter().chain(&cols).all(|&x| x == d).then_some(d)
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(ElementSet::len).sum()
    }

    pub fn to_json_value(&self, group_spec: &str) -> FamilyJson {
        let mut sets = BTreeMap::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let s = self.get(i, j);
                if !s.is_empty() {
                    sets.insert(format!("{i},{j}"), s.as_slice().to_vec());
                }
            }
        }
        FamilyJson {
            group: group_spec.to_string(),
            n: self.n,
            sets,
        }
    }

    pub fn from_json_value(json: &FamilyJson, order: usize) -> Result<ConnectionFamily> {
        if json.n == 0 {
            return Err(Error::Family("n must be positive".into()));
        }
        let mut family = ConnectionFamily::empty(json.n, order);
        for (key, elems) in &json.sets {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Family(format!("bad set key `{key}`")))?;
            family.set(i, j, ElementSet::from_elements(order, elems.iter().copied())?)?;
        }
        Ok(family)
    }

    /// Reads the family JSON together with the group it names.
    pub fn from_json(text: &str) -> Result<(Group, ConnectionFamily)> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let inner = value.get("family").cloned().unwrap_or(value);
        let json: FamilyJson = serde_json::from_value(inner)?;
        let group = parse_group(&json.group)?;
        let family = ConnectionFamily::from_json_value(&json, group.order())?;
        Ok((group, family))
    }

    /// Recovers the family of a digraph on `n·|G|` vertices, assuming it is
    /// an n-Cayley digraph of `group`. Fails if the right translations are
    /// not automorphisms.
    pub fn from_digraph(group: &Group, d: &Digraph) -> Result<ConnectionFamily> {
        let m = group.order();
        if m == 0 || !d.vertex_count().is_multiple_of(m) || d.vertex_count() == 0 {
            return Err(Error::Family(format!(
                "{} vertices is not a positive multiple of |G| = {m}",
                d.vertex_count()
            )));
        }
        let n = d.vertex_count() / m;
        let mut family = ConnectionFamily::empty(n, m);
        for i in 0..n {
            let mut rows = vec![Vec::new(); n];
            for &w in d.out_neighbors(i * m) {
                rows[w / m].push(w % m);
            }
            for (j, elems) in rows.into_iter().enumerate() {
                family.set(i, j, ElementSet::from_elements(m, elems)?)?;
            }
        }
        if &ncayley_digraph(group, &family)? != d {
            return Err(Error::Family("digraph is not invariant under right translations".into()));
        }
        Ok(family)
    }
}

/// Just the digraph of `Cay(G, T_{i,j})`, for search loops.
pub fn ncayley_digraph(group: &Group, family: &ConnectionFamily) -> Result<Digraph> {
    let m = group.order();
    if family.order != m {
        return Err(Error::Family(format!(
            "family over order {} used with a group of order {m}",
            family.order
        )));
    }
    let n = family.n;
    for i in 0..n {
        if family.get(i, i).contains(group.identity()) {
            return Err(DigraphError::Loop(i * m).into());
        }
    }
    let mut arcs = Vec::with_capacity(m * family.total_size());
    for i in 0..n {
        for j in 0..n {
            for t in family.get(i, j).iter() {
                for g in group.elements() {
                    arcs.push((i * m + g, j * m + group.mul(t, g)));
                }
            }
        }
    }
    Ok(Digraph::from_arcs(n * m, arcs)?)
}

/// `Cay(G, S)`.
pub fn cayley_digraph(group: &Group, s: &ElementSet) -> Result<Digraph> {
    let mut family = ConnectionFamily::empty(1, group.order());
    family.set(0, 0, s.clone())?;
    ncayley_digraph(group, &family)
}

/// `Cay(G, T01, T10)`, the 2-Cayley digraph with empty diagonal.
pub fn haar_family(order: usize, t01: &ElementSet, t10: &ElementSet) -> ConnectionFamily {
    let mut family = ConnectionFamily::empty(2, order);
    family.set_mod(0, 1, t01.clone());
    family.set_mod(1, 0, t10.clone());
    family
}

/// `R_n(g)` for every `g` in the group's generating set.
pub fn translation_generators(group: &Group, n: usize) -> Vec<Permutation> {
    let m = group.order();
    group
        .generating_set()
        .into_iter()
        .map(|g| {
            Permutation::from_images_unchecked(
                (0..n * m).map(|v| (v / m) * m + group.mul(v % m, g)).collect(),
            )
        })
        .collect()
}

/// True iff the automorphism group of `d`, an n-Cayley digraph of `group`,
/// is exactly `R_n(G)`. The search stops as soon as it finds more.
pub fn aut_is_translations(group: &Group, d: &Digraph) -> bool {
    let m = group.order();
    let known = translation_generators(group, d.vertex_count() / m);
    automorphism_order_capped(d, &known, m as u64) == Some(m as u64)
}

/// An n-Cayley digraph together with its group and family.
#[derive(Clone, Debug)]
pub struct NCayleyDigraph {
    group: Group,
    family: ConnectionFamily,
    digraph: Digraph,
}

pub fn build_ncayley(group: &Group, family: &ConnectionFamily) -> Result<NCayleyDigraph> {
    let digraph = ncayley_digraph(group, family)?;
    Ok(NCayleyDigraph {
        group: group.clone(),
        family: family.clone(),
        digraph,
    })
}

impl NCayleyDigraph {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn family(&self) -> &ConnectionFamily {
        &self.family
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn n(&self) -> usize {
        self.family.n
    }

    pub fn vertex(&self, g: Element, i: usize) -> usize {
        i * self.group.order() + g
    }

    /// `(g, i)` for the vertex `g_i`.
    pub fn element_of(&self, v: usize) -> (Element, usize) {
        (v % self.group.order(), v / self.group.order())
    }

    pub fn part(&self, i: usize) -> Vec<usize> {
        let m = self.group.order();
        (i * m..(i + 1) * m).collect()
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|i| self.part(i)).collect()
    }

    /// `R_n(g): x_i ↦ (x g)_i`.
    pub fn right_translation(&self, g: Element) -> Permutation {
        let m = self.group.order();
        let images = (0..self.n() * m)
            .map(|v| (v / m) * m + self.group.mul(v % m, g))
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// The group `R_n(G)`, generated by the translations of a generating set.
    pub fn translation_group(&self) -> PermGroup {
        let gens = translation_generators(&self.group, self.n());
        PermGroup::from_generators(self.digraph.vertex_count(), &gens)
            .expect("translations have the digraph's degree")
    }

    /// `g_i` labels such as `ab_2`.
    pub fn vertex_labels(&self) -> Vec<String> {
        (0..self.digraph.vertex_count())
            .map(|v| {
                let (g, i) = self.element_of(v);
                format!("{}_{}", self.group.label(g), i)
            })
            .collect()
    }
}
