//! Explicit connection families.
//!
//! Each recipe checks its preconditions (the ones that involve
//! automorphism groups through the oracle), emits a partite regular
//! family, and records the parameters it used.

use serde::Serialize;

use crate::classify::{identify_small, SmallGroup};
use crate::error::{RecipeError, Result};
use crate::group::{Element, ElementSet, Group};
use crate::ncayley::{aut_is_translations, cayley_digraph, haar_family, ncayley_digraph, ConnectionFamily};

/// Which construction produced a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// The empty digraph on `G` for `n = 1`, `|G| ≤ 2`.
    Empty,
    SmallCyclic,
    /// The `Z2` sets read literally from the prose; not a representation.
    SmallCyclicTextLiteral,
    Klein,
    Z2Cubed,
    Z2CubedDisconnected,
    ElementaryAbelianDrr,
    GeneralDrr,
    Exceptional,
    ExceptionalHaar,
    Haar,
    /// An asymmetric regular digraph found by search (trivial group only).
    TrivialGroupSearch,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Empty => "empty",
            Construction::SmallCyclic => "small-cyclic",
            Construction::SmallCyclicTextLiteral => "small-cyclic-text-literal",
            Construction::Klein => "klein",
            Construction::Z2Cubed => "z2-cubed",
            Construction::Z2CubedDisconnected => "z2-cubed-disconnected",
            Construction::ElementaryAbelianDrr => "elementary-abelian-drr",
            Construction::GeneralDrr => "general-drr",
            Construction::Exceptional => "exceptional",
            Construction::ExceptionalHaar => "exceptional-haar",
            Construction::Haar => "haar",
            Construction::TrivialGroupSearch => "trivial-group-search",
        }
    }
}

/// Sets and elements a recipe was run with.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecipeParams {
    pub r: Option<ElementSet>,
    pub l: Option<ElementSet>,
    pub k: Option<ElementSet>,
    pub s: Option<ElementSet>,
    pub w: Option<ElementSet>,
    pub a: Option<Element>,
    pub b: Option<Element>,
}

#[derive(Clone, Debug)]
pub struct RecipeOutput {
    pub family: ConnectionFamily,
    pub construction: Construction,
    pub params: RecipeParams,
}

impl RecipeOutput {
    fn new(family: ConnectionFamily, construction: Construction, params: RecipeParams) -> Result<RecipeOutput> {
        if !family.is_partite() || family.profile_valency().is_none() {
            return Err(RecipeError::Derivation(format!(
                "{} family is not partite and regular",
                construction.name()
            ))
            .into());
        }
        Ok(RecipeOutput {
            family,
            construction,
            params,
        })
    }
}

fn set(g: &Group, xs: impl IntoIterator<Item = Element>) -> ElementSet {
    ElementSet::from_elements(g.order(), xs).expect("group elements")
}

fn with_identity(g: &Group, s: &ElementSet) -> ElementSet {
    s.union(&set(g, [g.identity()]))
}

fn need_parts(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(RecipeError::TooFewParts { min, n }.into());
    }
    Ok(())
}

/// `T[i][i+1] = T[i+1][i] = {1}` for every `i` not in `skip`.
fn matchings(g: &Group, n: usize, skip: &[usize]) -> ConnectionFamily {
    let mut f = ConnectionFamily::empty(n, g.order());
    let one = set(g, [g.identity()]);
    for i in (0..n).filter(|i| !skip.contains(i)) {
        f.set_mod(i, i + 1, one.clone());
        f.set_mod(i + 1, i, one.clone());
    }
    f
}

fn small_cyclic(g: &Group, n: usize, text_literal: bool) -> Result<RecipeOutput> {
    if !matches!(g.order(), 2 | 3) {
        return Err(RecipeError::WrongGroup {
            expected: "Z2 or Z3".into(),
            actual: g.order(),
        }
        .into());
    }
    need_parts(n, 3)?;
    let a = g.generating_set()[0];
    let mut f = matchings(g, n, &[1]);
    let construction = if text_literal {
        f.set_mod(1, 2, set(g, [a]));
        f.set_mod(2, 1, set(g, [a]));
        Construction::SmallCyclicTextLiteral
    } else {
        f.set_mod(1, 2, set(g, [g.identity()]));
        f.set_mod(2, 1, set(g, [a]));
        Construction::SmallCyclic
    };
    RecipeOutput::new(
        f,
        construction,
        RecipeParams {
            a: Some(a),
            ..RecipeParams::default()
        },
    )
}

/// `Z2` or `Z3`, `n ≥ 3`: `T[1][2] = {1}`, `T[2][1] = {a}`, matchings elsewhere.
pub fn recipe_small_cyclic(g: &Group, n: usize) -> Result<RecipeOutput> {
    small_cyclic(g, n, false)
}

/// `T[1][2] = T[2][1] = {a}`. Not an n-PDR: `g_i -> g_(3-i)` is an extra
/// automorphism. For `Z2` and `n = 3` the digraph has 12 automorphisms.
pub fn recipe_small_cyclic_text_literal(g: &Group, n: usize) -> Result<RecipeOutput> {
    small_cyclic(g, n, true)
}

fn expect_kind(g: &Group, kind: SmallGroup) -> Result<()> {
    if identify_small(g) != kind {
        return Err(RecipeError::WrongGroup {
            expected: kind.name().into(),
            actual: g.order(),
        }
        .into());
    }
    Ok(())
}

pub fn recipe_klein(g: &Group, n: usize) -> Result<RecipeOutput> {
    expect_kind(g, SmallGroup::Z2_2)?;
    need_parts(n, 3)?;
    let gens = g.generating_set();
    let (a, b) = (gens[0], gens[1]);
    let mut f = matchings(g, n, &[0, 1]);
    f.set_mod(0, 1, set(g, [g.identity()]));
    f.set_mod(1, 0, set(g, [a]));
    f.set_mod(1, 2, set(g, [b]));
    f.set_mod(2, 1, set(g, [a]));
    RecipeOutput::new(
        f,
        Construction::Klein,
        RecipeParams {
            a: Some(a),
            b: Some(b),
            ..RecipeParams::default()
        },
    )
}

/// `T01 = {a}`, `T10 = {b}`, `T12 = {a}`, `T21 = {c}`, and for `i ≥ 2`
/// `T[i][i+1] = {a}`, `T[i+1][i] = {1}`.
///
/// With plain matchings on the tail every singleton family of this shape
/// has a reflection lifting to an automorphism; the `a` arcs break it.
pub fn recipe_z2_cubed(g: &Group, n: usize) -> Result<RecipeOutput> {
    z2_cubed(g, n, false)
}

/// Same special sets with plain matchings on the tail. The closed walks
/// only reach `{1, ab, ac, bc}`, so the digraph has two components and
/// 32 automorphisms.
pub fn recipe_z2_cubed_disconnected(g: &Group, n: usize) -> Result<RecipeOutput> {
    z2_cubed(g, n, true)
}

fn z2_cubed(g: &Group, n: usize, plain_tail: bool) -> Result<RecipeOutput> {
    expect_kind(g, SmallGroup::Z2_3)?;
    need_parts(n, 3)?;
    let gens = g.generating_set();
    let (a, b, c) = (gens[0], gens[1], gens[2]);
    let mut f = matchings(g, n, &[0, 1]);
    if !plain_tail {
        for i in 2..n {
            f.set_mod(i, i + 1, set(g, [a]));
        }
    }
    f.set_mod(0, 1, set(g, [a]));
    f.set_mod(1, 0, set(g, [b]));
    f.set_mod(1, 2, set(g, [a]));
    f.set_mod(2, 1, set(g, [c]));
    RecipeOutput::new(
        f,
        if plain_tail { Construction::Z2CubedDisconnected } else { Construction::Z2Cubed },
        RecipeParams {
            a: Some(a),
            b: Some(b),
            ..RecipeParams::default()
        },
    )
}

/// True iff `Cay(G, R)` is a DRR.
pub fn is_drr(g: &Group, r: &ElementSet) -> Result<bool> {
    if r.contains(g.identity()) {
        return Ok(false);
    }
    Ok(aut_is_translations(g, &cayley_digraph(g, r)?))
}

/// True iff `Cay(G, T01, T10)` is a 2-PDR. Equal sizes make it regular;
/// `Aut = R_2(G)` makes the parts its orbits.
pub fn is_haar_pdr(g: &Group, t01: &ElementSet, t10: &ElementSet) -> Result<bool> {
    if t01.len() != t10.len() {
        return Ok(false);
    }
    let d = ncayley_digraph(g, &haar_family(g.order(), t01, t10))?;
    Ok(aut_is_translations(g, &d))
}

/// Checks `1 ∉ R`, `2|R| < bound`, `Cay(G, R)` a DRR, `L ⊆ G ∖ (R⁻¹ ∪ {1})`
/// and `|L| = |R|`. `bound` is `|G| - 1` for the multi-part recipes and
/// `|G|` for the Haar recipe.
fn check_drr_pair(g: &Group, r: &ElementSet, l: &ElementSet, bound: usize) -> Result<()> {
    if r.contains(g.identity()) {
        return Err(RecipeError::IdentityInR.into());
    }
    if 2 * r.len() >= bound {
        return Err(RecipeError::RTooLarge {
            size: r.len(),
            bound: format!("{bound}/2"),
        }
        .into());
    }
    if !is_drr(g, r)? {
        let order = crate::aut::automorphisms(
            &cayley_digraph(g, r)?,
            &crate::aut::OrderedPartition::unit(g.order()),
        )
        .order()
        .to_string();
        return Err(RecipeError::NotDrr {
            aut_order: order,
            order: g.order(),
        }
        .into());
    }
    if l.contains(g.identity()) || !l.is_disjoint(&g.set_inverse(r)) {
        return Err(RecipeError::CompanionOverlap.into());
    }
    if l.len() != r.len() {
        return Err(RecipeError::CompanionSize { l: l.len(), r: r.len() }.into());
    }
    Ok(())
}

fn check_haar_pdr(g: &Group, r: &ElementSet, l: &ElementSet) -> Result<()> {
    if !is_haar_pdr(g, &with_identity(g, r), &with_identity(g, l))? {
        return Err(RecipeError::NotHaar.into());
    }
    Ok(())
}

/// The lowest-indexed non-identity element outside `R`.
pub fn default_extra_element(g: &Group, r: &ElementSet) -> Option<Element> {
    g.elements().skip(1).find(|&x| !r.contains(x))
}

/// Elementary abelian 2-groups with a DRR `Cay(G, R)` and companion `L`:
/// `T[i][i+1] = R ∪ {1}`, `T[1][0] = L ∪ {1}`, `T[i+1][i] = R ∪ {b}` for
/// `i ≠ 0`.
pub fn recipe_case11(
    g: &Group,
    n: usize,
    r: &ElementSet,
    l: &ElementSet,
    b: Element,
) -> Result<RecipeOutput> {
    need_parts(n, 3)?;
    if !g.is_elementary_abelian_2() {
        return Err(RecipeError::NotElementaryAbelian2.into());
    }
    if b >= g.order() || b == g.identity() || r.contains(b) {
        return Err(RecipeError::BadExtraElement(b).into());
    }
    check_drr_pair(g, r, l, g.order() - 1)?;
    check_haar_pdr(g, r, l)?;
    let r1 = with_identity(g, r);
    let rb = r.union(&set(g, [b]));
    let mut f = ConnectionFamily::empty(n, g.order());
    for i in 0..n {
        f.set_mod(i, i + 1, r1.clone());
    }
    f.set_mod(1, 0, with_identity(g, l));
    for i in 1..n {
        f.set_mod(i + 1, i, rb.clone());
    }
    RecipeOutput::new(
        f,
        Construction::ElementaryAbelianDrr,
        RecipeParams {
            r: Some(r.clone()),
            l: Some(l.clone()),
            b: Some(b),
            ..RecipeParams::default()
        },
    )
}

/// The lowest-indexed element of order at least 3.
pub fn default_long_element(g: &Group) -> Option<Element> {
    g.elements().find(|&x| g.element_order(x) >= 3)
}

/// `S = {1, a}` plus the first `|R| - 1` other elements, `W` the first
/// `|R| - 1` elements outside `S⁻¹`, `K = W ∪ {1, a⁻¹}`.
pub fn derive_s_w_k(g: &Group, r_len: usize, a: Element) -> Result<(ElementSet, ElementSet, ElementSet)> {
    let one = g.identity();
    let fill = r_len.saturating_sub(1);
    let mut s = set(g, [one, a]);
    for x in g.elements().filter(|&x| x != one && x != a).take(fill) {
        s.insert(x);
    }
    let s_inv = g.set_inverse(&s);
    let w = set(g, g.elements().filter(|&x| !s_inv.contains(x)).take(fill));
    let k = w.union(&set(g, [one, g.inv(a)]));
    let fail = |what: &str| Err(RecipeError::Derivation(what.into()).into());
    if s.len() != r_len + 1 || k.len() != r_len + 1 || w.len() != fill {
        return fail("|S| = |K| = |R| + 1 does not hold");
    }
    if s_inv.intersection(&k) != set(g, [one, g.inv(a)]) {
        return fail("S^-1 ∩ K differs from {1, a^-1}");
    }
    if !w.is_disjoint(&s_inv) {
        return fail("W meets S^-1");
    }
    Ok((s, w, k))
}

/// Groups with a DRR that are not elementary abelian 2-groups:
/// `T[0][1] = R ∪ {1}`, `T[1][0] = L ∪ {1}`, `T[i][i+1] = S`,
/// `T[i+1][i] = K` for `i ≠ 0`.
pub fn recipe_case12(
    g: &Group,
    n: usize,
    r: &ElementSet,
    l: &ElementSet,
    a: Element,
) -> Result<RecipeOutput> {
    need_parts(n, 3)?;
    if g.is_elementary_abelian_2() {
        return Err(RecipeError::ElementaryAbelian2.into());
    }
    if a >= g.order() || g.element_order(a) < 3 {
        return Err(RecipeError::ElementOrder {
            element: a,
            order: if a < g.order() { g.element_order(a) } else { 0 },
        }
        .into());
    }
    check_drr_pair(g, r, l, g.order() - 1)?;
    check_haar_pdr(g, r, l)?;
    let (s, w, k) = derive_s_w_k(g, r.len(), a)?;
    let mut f = ConnectionFamily::empty(n, g.order());
    f.set_mod(0, 1, with_identity(g, r));
    f.set_mod(1, 0, with_identity(g, l));
    for i in 1..n {
        f.set_mod(i, i + 1, s.clone());
        f.set_mod(i + 1, i, k.clone());
    }
    RecipeOutput::new(
        f,
        Construction::GeneralDrr,
        RecipeParams {
            r: Some(r.clone()),
            l: Some(l.clone()),
            k: Some(k),
            s: Some(s),
            w: Some(w),
            a: Some(a),
            b: None,
        },
    )
}

/// The hardcoded `R`, `L`, `K` for `Z2^4`, `Q8` and `Z3^2`, written in
/// terms of generators found in the given table.
pub fn exceptional_sets(g: &Group) -> Result<(ElementSet, ElementSet, ElementSet)> {
    let kind = identify_small(g);
    let gens = g.generating_set();
    let m = |x: Element, y: Element| g.mul(x, y);
    let one = g.identity();
    let (r, l) = match kind {
        SmallGroup::Z2_4 => {
            let (a, b, c, d) = (gens[0], gens[1], gens[2], gens[3]);
            let r = set(g, [one, a, b, c, d, m(a, d)]);
            let l = set(
                g,
                [
                    one,
                    m(a, c),
                    m(b, c),
                    m(m(a, b), c),
                    m(m(a, b), d),
                    m(m(b, c), d),
                ],
            );
            (r, l)
        }
        SmallGroup::Q8 => {
            let (a, b) = quaternion_generators(g)?;
            (set(g, [one, a, b]), set(g, [g.pow(a, 2), g.inv(b), m(a, b)]))
        }
        SmallGroup::Z3_2 => {
            let (a, b) = (gens[0], gens[1]);
            (set(g, [one, a, b]), set(g, [a, g.inv(b), m(a, b)]))
        }
        _ => {
            return Err(RecipeError::WrongGroup {
                expected: "Z2^4, Q8 or Z3^2".into(),
                actual: g.order(),
            }
            .into())
        }
    };
    let ab = m(gens[0], gens[1]);
    let r_inv = g.set_inverse(&r);
    let k = set(g, [ab]).union(&r_inv.difference(&set(g, [one])));
    Ok((r, l, k))
}

/// `a, b` with `a⁴ = 1`, `b² = a²`, `b⁻¹ a b = a⁻¹`.
fn quaternion_generators(g: &Group) -> Result<(Element, Element)> {
    let gens = g.generating_set();
    let (a, b) = (gens[0], gens[1]);
    let conj = g.mul(g.mul(g.inv(b), a), b);
    if gens.len() != 2 || g.pow(a, 4) != 0 || g.pow(b, 2) != g.pow(a, 2) || conj != g.inv(a) {
        return Err(RecipeError::ExceptionalCheck("no quaternion generators".into()).into());
    }
    Ok((a, b))
}

fn check_exceptional(g: &Group, r: &ElementSet, l: &ElementSet, k: &ElementSet) -> Result<()> {
    let fail = |what: &str| Err(RecipeError::ExceptionalCheck(what.into()).into());
    if r.intersection(&g.set_inverse(l)).len() != 1 {
        return fail("|R ∩ L^-1| != 1");
    }
    if r.len() != l.len() || r.len() != k.len() || r.len() < 3 {
        return fail("|K| = |R| = |L| >= 3 does not hold");
    }
    if r.intersection(&g.set_inverse(k)).len() != r.len() - 1 {
        return fail("|R ∩ K^-1| != |R| - 1");
    }
    if !is_haar_pdr(g, r, l)? {
        return fail("Cay(G, R, L) is not a 2-PDR");
    }
    Ok(())
}

/// `Z2^4`, `Q8`, `Z3^2` for `n ≥ 3`: `T[0][1] = R`, `T[1][0] = L`,
/// `T[i][i+1] = R`, `T[i+1][i] = K` for `i ≠ 0`.
pub fn recipe_exceptional(g: &Group, n: usize) -> Result<RecipeOutput> {
    let (r, l, k) = exceptional_sets(g)?;
    need_parts(n, 3)?;
    check_exceptional(g, &r, &l, &k)?;
    let mut f = ConnectionFamily::empty(n, g.order());
    f.set_mod(0, 1, r.clone());
    f.set_mod(1, 0, l.clone());
    for i in 1..n {
        f.set_mod(i, i + 1, r.clone());
        f.set_mod(i + 1, i, k.clone());
    }
    RecipeOutput::new(
        f,
        Construction::Exceptional,
        RecipeParams {
            r: Some(r),
            l: Some(l),
            k: Some(k),
            ..RecipeParams::default()
        },
    )
}

/// The 2-PDR `Cay(G, R, L)` of the exceptional groups.
pub fn recipe_exceptional_haar(g: &Group) -> Result<RecipeOutput> {
    let (r, l, k) = exceptional_sets(g)?;
    check_exceptional(g, &r, &l, &k)?;
    RecipeOutput::new(
        haar_family(g.order(), &r, &l),
        Construction::ExceptionalHaar,
        RecipeParams {
            r: Some(r),
            l: Some(l),
            ..RecipeParams::default()
        },
    )
}

/// `Cay(G, R ∪ {1}, L ∪ {1})` from a DRR `Cay(G, R)` with `|R| < |G|/2`
/// and `L ⊆ G ∖ (R⁻¹ ∪ {1})`, `|L| = |R|`.
pub fn recipe_hdr2(g: &Group, r: &ElementSet, l: &ElementSet) -> Result<RecipeOutput> {
    check_drr_pair(g, r, l, g.order())?;
    RecipeOutput::new(
        haar_family(g.order(), &with_identity(g, r), &with_identity(g, l)),
        Construction::Haar,
        RecipeParams {
            r: Some(r.clone()),
            l: Some(l.clone()),
            ..RecipeParams::default()
        },
    )
}

/// The empty digraph on `G` (`n = 1`).
pub fn recipe_empty(g: &Group) -> Result<RecipeOutput> {
    RecipeOutput::new(
        ConnectionFamily::empty(1, g.order()),
        Construction::Empty,
        RecipeParams::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{automorphisms, OrderedPartition};
    use crate::group::parse_group;
    use crate::ncayley::build_ncayley;

    fn aut_order(g: &Group, f: &ConnectionFamily) -> u64 {
        let d = ncayley_digraph(g, f).unwrap();
        automorphisms(&d, &OrderedPartition::unit(d.vertex_count()))
            .order_u64()
            .unwrap()
    }

    fn s(g: &Group, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(g.order(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn z2_drawn_family() {
        let g = parse_group("Z2").unwrap();
        let out = recipe_small_cyclic(&g, 3).unwrap();
        let x = build_ncayley(&g, &out.family).unwrap();
        let d = x.digraph();
        assert_eq!(d.arc_count(), 12);
        assert_eq!(d.is_regular(), Some(2));
        let v = |g: usize, i: usize| x.vertex(g, i);
        for (p, q) in [(v(0, 0), v(0, 1)), (v(1, 0), v(1, 1)), (v(0, 0), v(0, 2)), (v(1, 0), v(1, 2))] {
            assert!(d.has_arc(p, q) && d.has_arc(q, p));
        }
        for (p, q) in [(v(0, 1), v(0, 2)), (v(0, 2), v(1, 1)), (v(1, 1), v(1, 2)), (v(1, 2), v(0, 1))] {
            assert!(d.has_arc(p, q) && !d.has_arc(q, p));
        }
        assert!(!d.is_perfect_matching_between(&x.part(1), &x.part(2)));
        assert_eq!(aut_order(&g, &out.family), 2);
        let literal = recipe_small_cyclic_text_literal(&g, 3).unwrap();
        assert_eq!(aut_order(&g, &literal.family), 12);

        let x4 = build_ncayley(&g, &recipe_small_cyclic(&g, 4).unwrap().family).unwrap();
        assert!(x4.digraph().is_perfect_matching_between(&x4.part(2), &x4.part(3)));
    }

    #[test]
    fn z3_six_cycle() {
        let g = parse_group("Z3").unwrap();
        for n in 3..6 {
            let out = recipe_small_cyclic(&g, n).unwrap();
            let x = build_ncayley(&g, &out.family).unwrap();
            let mid: Vec<usize> = x.part(1).into_iter().chain(x.part(2)).collect();
            let (c, _) = x.digraph().induced(&mid).unwrap();
            assert_eq!(c.arc_count(), 6);
            assert_eq!(c.is_regular(), Some(1));
            assert_eq!(aut_order(&g, &out.family), 3);
            assert_eq!(aut_order(&g, &recipe_small_cyclic_text_literal(&g, n).unwrap().family), 6);
            if n == 4 {
                assert_eq!(out.family.valency_profile(), (vec![2; 4], vec![2; 4]));
            }
        }
        assert!(recipe_small_cyclic(&g, 2).is_err());
        assert!(recipe_small_cyclic(&parse_group("Z4").unwrap(), 3).is_err());
    }

    #[test]
    fn klein_structure() {
        let g = parse_group("Z2^2").unwrap();
        let out = recipe_klein(&g, 3).unwrap();
        let x = build_ncayley(&g, &out.family).unwrap();
        for (i, j) in [(0, 1), (1, 2)] {
            let vs: Vec<usize> = x.part(i).into_iter().chain(x.part(j)).collect();
            let (c, _) = x.digraph().induced(&vs).unwrap();
            assert_eq!(c.arc_count(), 8);
            assert_eq!(c.is_regular(), Some(1));
            assert!((0..8).all(|v| c.undirected_degree(v) == 0));
        }
        assert!(x.part(1).iter().all(|&v| x.digraph().undirected_degree(v) == 0));
        assert_eq!(aut_order(&g, &recipe_klein(&g, 5).unwrap().family), 4);
    }

    #[test]
    fn z2_cubed_structure() {
        let g = parse_group("Z2^3").unwrap();
        for n in 3..7 {
            let out = recipe_z2_cubed(&g, n).unwrap();
            let x = build_ncayley(&g, &out.family).unwrap();
            let vs: Vec<usize> = x.part(0).into_iter().chain(x.part(1)).collect();
            let (c, _) = x.digraph().induced(&vs).unwrap();
            assert_eq!(c.arc_count(), 16);
            assert_eq!(c.is_regular(), Some(1));
            assert_eq!(aut_order(&g, &out.family), 8);
            assert_eq!(out.family.valency_profile(), (vec![2; n], vec![2; n]));
            let plain = recipe_z2_cubed_disconnected(&g, n).unwrap().family;
            assert_eq!(aut_order(&g, &plain), 32);
            assert!(!build_ncayley(&g, &plain).unwrap().digraph().is_weakly_connected());
            assert!(x.digraph().is_weakly_connected());
        }
    }

    #[test]
    fn exceptional_checks() {
        let z = parse_group("Z2^4").unwrap();
        let (r, _, k) = exceptional_sets(&z).unwrap();
        assert_eq!(r.intersection(&z.set_inverse(&k)).len(), 5);
        let q = parse_group("Q8").unwrap();
        let (r, l, _) = exceptional_sets(&q).unwrap();
        assert_eq!(r, s(&q, &[0, 1, 4]));
        assert_eq!(l, s(&q, &[2, 5, 6]));
        assert_eq!(aut_order(&q, &recipe_exceptional(&q, 3).unwrap().family), 8);
        let n = parse_group("Z3^2").unwrap();
        assert_eq!(aut_order(&n, &recipe_exceptional(&n, 4).unwrap().family), 9);
        assert!(recipe_exceptional(&parse_group("Z6").unwrap(), 3).is_err());
    }

    #[test]
    fn s_w_k_derivation() {
        let g = parse_group("S4").unwrap();
        let a = default_long_element(&g).unwrap();
        for r_len in 1..11 {
            let (s_set, w, k) = derive_s_w_k(&g, r_len, a).unwrap();
            assert!(s_set.contains(0) && s_set.contains(a));
            assert!(k.contains(0) && k.contains(g.inv(a)));
            assert!(w.is_disjoint(&g.set_inverse(&s_set)));
            assert_eq!(s_set.intersection(&g.set_inverse(&k)), s(&g, &[0, a]));
        }
    }

    #[test]
    fn z4_general_and_haar() {
        let g = parse_group("Z4").unwrap();
        let r = s(&g, &[1]);
        assert!(is_drr(&g, &r).unwrap());
        // L must avoid R^-1 = {a^3} and 1, leaving a^2.
        let l = s(&g, &[2]);
        let hdr = recipe_hdr2(&g, &r, &l).unwrap();
        assert_eq!(aut_order(&g, &hdr.family), 4);
        let t01 = hdr.family.get(0, 1);
        let t10 = hdr.family.get(1, 0);
        assert_eq!(t01.intersection(&g.set_inverse(t10)), s(&g, &[0]));
        let out = recipe_case12(&g, 3, &r, &l, 1).unwrap();
        assert_eq!(aut_order(&g, &out.family), 4);
        let x = build_ncayley(&g, &out.family).unwrap();
        for v in 0..12 {
            let expected = if v < 8 { 3 } else { 4 };
            assert_eq!(x.digraph().undirected_degree(v), expected);
        }
        assert!(matches!(
            recipe_case12(&g, 3, &r, &l, 2),
            Err(crate::Error::Recipe(RecipeError::ElementOrder { .. }))
        ));
        assert!(recipe_hdr2(&g, &r, &s(&g, &[3])).is_err());
    }
}
