//! Searches for connection sets and exhaustive nonexistence checks.
//!
//! Every scan reports the first successful candidate in enumeration order,
//! so parallel and serial runs agree exactly.

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aut::{automorphism_order_capped, automorphisms, OrderedPartition};
use crate::classify::{admits_npdr, identify_small, SmallGroup};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, Group};
use crate::recipes::{is_drr, is_haar_pdr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Randomized,
    /// Exhaustive for groups of order at most 16, randomized above.
    Auto,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SearchMode> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "randomized" => Ok(SearchMode::Randomized),
            "auto" => Ok(SearchMode::Auto),
            _ => Err(Error::Precondition(format!("unknown search mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_candidates: u64,
    pub seed: u64,
    pub mode: SearchMode,
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_candidates: 1_000_000,
            seed: 0,
            mode: SearchMode::Auto,
            threads: 1,
        }
    }
}

const AUTO_EXHAUSTIVE_ORDER: usize = 16;

impl SearchBudget {
    fn exhaustive_for(&self, order: usize) -> bool {
        match self.mode {
            SearchMode::Exhaustive => true,
            SearchMode::Randomized => false,
            SearchMode::Auto => order <= AUTO_EXHAUSTIVE_ORDER,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// A search hit with the number of candidates examined up to and
/// including it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found<T> {
    pub value: T,
    pub candidates: u64,
}

struct Scan<C> {
    hit: Option<C>,
    examined: u64,
    space_exhausted: bool,
}

const CHUNK_PER_THREAD: usize = 64;

/// Runs `check` over at most `limit` candidates and returns the first one
/// accepted.
fn first_hit<C, I, F>(candidates: I, limit: u64, threads: usize, check: F) -> Result<Scan<C>>
where
    C: Send + Sync,
    I: Iterator<Item = C>,
    F: Fn(&C) -> Result<bool> + Sync,
{
    let mut it = candidates.fuse();
    let mut examined = 0u64;
    if threads <= 1 {
        while examined < limit {
            let Some(c) = it.next() else {
                return Ok(Scan { hit: None, examined, space_exhausted: true });
            };
            examined += 1;
            if check(&c)? {
                return Ok(Scan { hit: Some(c), examined, space_exhausted: false });
            }
        }
        let space_exhausted = it.next().is_none();
        return Ok(Scan { hit: None, examined, space_exhausted });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let chunk = CHUNK_PER_THREAD * threads;
    loop {
        let room = (limit - examined).min(chunk as u64) as usize;
        let batch: Vec<C> = it.by_ref().take(room).collect();
        if batch.is_empty() {
            let space_exhausted = room > 0 || it.next().is_none();
            return Ok(Scan { hit: None, examined, space_exhausted });
        }
        let found = pool.install(|| {
            batch.par_iter().enumerate().find_map_first(|(i, c)| match check(c) {
                Ok(false) => None,
                Ok(true) => Some(Ok(i)),
                Err(e) => Some(Err(e)),
            })
        });
        match found {
            Some(Ok(i)) => {
                let c = batch.into_iter().nth(i).expect("index from this batch");
                return Ok(Scan { hit: Some(c), examined: examined + i as u64 + 1, space_exhausted: false });
            }
            Some(Err(e)) => return Err(e),
            None => examined += batch.len() as u64,
        }
        if examined >= limit {
            let space_exhausted = it.next().is_none();
            return Ok(Scan { hit: None, examined, space_exhausted });
        }
    }
}

fn to_set(order: usize, xs: impl IntoIterator<Item = Element>) -> ElementSet {
    ElementSet::from_elements(order, xs).expect("group elements")
}

/// Subsets of `pool` of the given sizes, size by size, each size in
/// lexicographic order of positions in `pool`.
fn subsets_by_size(pool: Vec<Element>, sizes: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = Vec<Element>> {
    sizes.flat_map(move |k| pool.clone().into_iter().combinations(k))
}

/// Random `k`-subsets of `pool` with `k` uniform in `sizes`.
fn random_subsets(
    pool: Vec<Element>,
    sizes: std::ops::RangeInclusive<usize>,
    mut rng: ChaCha8Rng,
) -> impl Iterator<Item = Vec<Element>> {
    let (lo, hi) = sizes.into_inner();
    std::iter::from_fn(move || {
        let k = rng.gen_range(lo..=hi);
        let mut picked: Vec<Element> = sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i]).collect();
        picked.sort_unstable();
        Some(picked)
    })
}

/// The largest `|R|` allowed for a DRR connection set: `|R| < (|G|-1)/2`.
pub fn drr_size_bound(order: usize) -> usize {
    (order.saturating_sub(2)) / 2
}

/// A DRR connection set `R` with `1 ∉ R` and `|R| < (|G|-1)/2`. `None`
/// means every candidate was examined; running out of budget first is
/// `BudgetExhausted`.
pub fn find_drr(g: &Group, budget: &SearchBudget) -> Result<Option<Found<ElementSet>>> {
    let kind = identify_small(g);
    if g.order() < 4 || kind.lacks_drr() {
        return Err(Error::Precondition(format!(
            "{} admits no DRR to search for",
            g.spec()
        )));
    }
    let m = g.order();
    let max = drr_size_bound(m);
    let pool: Vec<Element> = g.elements().skip(1).collect();
    let generates = |r: &[Element]| g.generated_subgroup(&to_set(m, r.iter().copied())).len() == m;
    let check = |r: &Vec<Element>| -> Result<bool> {
        Ok(generates(r) && is_drr(g, &to_set(m, r.iter().copied()))?)
    };
    let scan = if budget.exhaustive_for(m) {
        first_hit(subsets_by_size(pool, 1..=max), budget.max_candidates, budget.threads, check)?
    } else {
        // small sets of elementary abelian 2-groups are never DRRs
        let candidates = random_subsets(pool, (max / 2).max(1)..=max, budget.rng(1));
        first_hit(candidates, budget.max_candidates, budget.threads, check)?
    };
    match scan.hit {
        Some(r) => Ok(Some(Found {
            value: to_set(m, r),
            candidates: scan.examined,
        })),
        None if scan.space_exhausted => Ok(None),
        None => Err(Error::BudgetExhausted {
            what: format!("DRR connection set for {}", g.spec()),
            budget: budget.max_candidates,
        }),
    }
}

/// `L ⊆ G ∖ (R⁻¹ ∪ {1})` with `|L| = |R|` such that
/// `Cay(G, R ∪ {1}, L ∪ {1})` is a 2-PDR.
pub fn find_hdr_companion(g: &Group, r: &ElementSet, budget: &SearchBudget) -> Result<Found<ElementSet>> {
    let m = g.order();
    if r.contains(g.identity()) || 2 * r.len() >= m {
        return Err(Error::Precondition("R must avoid 1 and satisfy |R| < |G|/2".into()));
    }
    if !is_drr(g, r)? {
        return Err(Error::Precondition("Cay(G, R) is not a DRR".into()));
    }
    let forbidden = g.set_inverse(r).union(&to_set(m, [g.identity()]));
    let pool: Vec<Element> = g.elements().filter(|&x| !forbidden.contains(x)).collect();
    let r1 = r.union(&to_set(m, [g.identity()]));
    let check = |l: &Vec<Element>| -> Result<bool> {
        let l1 = to_set(m, l.iter().copied().chain([g.identity()]));
        is_haar_pdr(g, &r1, &l1)
    };
    let k = r.len();
    let scan = if budget.exhaustive_for(m) {
        first_hit(pool.into_iter().combinations(k), budget.max_candidates, budget.threads, check)?
    } else {
        let mut rng = budget.rng(2);
        let candidates = std::iter::from_fn(move || {
            let mut l: Vec<Element> = pool.choose_multiple(&mut rng, k).copied().collect();
            l.sort_unstable();
            Some(l)
        });
        first_hit(candidates, budget.max_candidates, budget.threads, check)?
    };
    match scan.hit {
        Some(l) => Ok(Found {
            value: to_set(m, l),
            candidates: scan.examined,
        }),
        None => Err(Error::BudgetExhausted {
            what: format!("HDR companion for R = {r:?} in {}", g.spec()),
            budget: budget.max_candidates,
        }),
    }
}

/// A `d`-regular loop-free digraph on `n` vertices built from `d` random
/// derangements, or `None` if two of them collide.
fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Digraph> {
    let mut out: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    for _ in 0..d {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (v, &w) in perm.iter().enumerate() {
            if w == v || out[v].contains(&w) {
                return None;
            }
            out[v].push(w);
        }
    }
    let arcs = out.iter().enumerate().flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)));
    Some(Digraph::from_arcs(n, arcs).expect("derangements avoid loops"))
}

/// A regular asymmetric digraph on `n ≥ 6` vertices: an n-PDR of the
/// trivial group. Valency 2 is tried first, then 3, and so on.
pub fn find_trivial_group_npdr(n: usize, budget: &SearchBudget) -> Result<Found<Digraph>> {
    if n < 6 {
        return Err(Error::Precondition(format!("no asymmetric regular digraph search below 6 vertices (n = {n})")));
    }
    let valencies: Vec<usize> = (2..=(n - 1) / 2).collect();
    let share = (budget.max_candidates / valencies.len() as u64).max(1);
    let mut spent = 0u64;
    for (idx, &d) in valencies.iter().enumerate() {
        let left = budget.max_candidates.saturating_sub(spent);
        let quota = if idx + 1 == valencies.len() { left } else { share.min(left) };
        let mut rng = budget.rng(16 + d as u64);
        let candidates = std::iter::from_fn(move || Some(random_regular(n, d, &mut rng)));
        let check = |c: &Option<Digraph>| -> Result<bool> {
            Ok(c.as_ref().is_some_and(|dg| automorphism_order_capped(dg, &[], 1) == Some(1)))
        };
        let scan = first_hit(candidates, quota, budget.threads, check)?;
        spent += scan.examined;
        if let Some(Some(dg)) = scan.hit {
            let full = automorphisms(&dg, &OrderedPartition::unit(n));
            if full.order() != &BigUint::from(1u8) || dg.is_regular() != Some(d) {
                return Err(Error::Internal("trivial-group search result failed re-verification".into()));
            }
            return Ok(Found { value: dg, candidates: spent });
        }
    }
    Err(Error::BudgetExhausted {
        what: format!("asymmetric regular digraph on {n} vertices"),
        budget: budget.max_candidates,
    })
}

/// Record of an exhaustive (or analytic) proof that no candidate exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonExistenceCertificate {
    pub group: String,
    pub n: usize,
    pub candidates_enumerated: u64,
    pub claim: String,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
}

impl NonExistenceCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

const NO_NPDR: &str = "no n-PDR exists";

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Exhaustive or analytic proof that `g` has no n-PDR. Only instances
/// small enough to enumerate are accepted.
pub fn prove_nonexistence(g: &Group, n: usize, threads: usize) -> Result<NonExistenceCertificate> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if admits_npdr(g, n) {
        return Err(Error::Precondition(format!("{} admits a {n}-PDR", g.spec())));
    }
    let m = g.order();
    let kind = identify_small(g);
    let cert = |count: u64, method: &str| NonExistenceCertificate {
        group: g.spec().to_string(),
        n,
        candidates_enumerated: count,
        claim: NO_NPDR.into(),
        method: method.into(),
        basis: None,
    };
    if n == 1 {
        // The only partite candidate is the empty digraph on G.
        let empty = Digraph::empty(m);
        let aut = automorphisms(&empty, &OrderedPartition::unit(m));
        if aut.order() == &BigUint::from(m) {
            return Err(Error::CounterExample("empty digraph has |G| automorphisms".into()));
        }
        return Ok(cert(1, "analytic"));
    }
    if kind == SmallGroup::Z1 && (3..=5).contains(&n) {
        let count = exhaust_trivial_group(n, threads)?;
        return Ok(cert(count, "exhaustive"));
    }
    if n == 2 && m <= 8 {
        let count = exhaust_haar(g, threads)?;
        return Ok(cert(count, "exhaustive"));
    }
    Err(Error::TooLarge(format!("{} with n = {n}", g.spec())))
}

/// All `2^(n(n-1))` loop-free digraphs on `n` vertices; the regular ones
/// are checked for a trivial automorphism group.
fn exhaust_trivial_group(n: usize, threads: usize) -> Result<u64> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << slots.len();
    let regular = |mask: u64| {
        let mut out = vec![0u32; n];
        let mut inn = vec![0u32; n];
        for (b, &(u, v)) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                out[u] += 1;
                inn[v] += 1;
            }
        }
        out.iter().chain(&inn).all(|&x| x == out[0])
    };
    let check = |&mask: &u64| -> Result<bool> {
        if !regular(mask) {
            return Ok(false);
        }
        let arcs = slots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &a)| a);
        let d = Digraph::from_arcs(n, arcs)?;
        Ok(automorphism_order_capped(&d, &[], 1) == Some(1))
    };
    let scan = first_hit(0..total, total, threads, check)?;
    if let Some(mask) = scan.hit {
        return Err(Error::CounterExample(format!("arc mask {mask:#x} on {n} vertices")));
    }
    if scan.examined != total {
        return Err(Error::Internal(format!("enumerated {} of {total} digraphs", scan.examined)));
    }
    Ok(scan.examined)
}

/// All pairs `(T01, T10)` of equal-size subsets of `G`.
fn exhaust_haar(g: &Group, threads: usize) -> Result<u64> {
    let m = g.order();
    let subsets = |k: usize| g.elements().combinations(k).collect::<Vec<_>>();
    let pairs = (0..=m).flat_map(move |k| {
        let s = subsets(k);
        s.clone().into_iter().cartesian_product(s)
    });
    let check = |(a, b): &(Vec<Element>, Vec<Element>)| {
        is_haar_pdr(g, &to_set(m, a.iter().copied()), &to_set(m, b.iter().copied()))
    };
    let expected = binomial(2 * m as u64, m as u64);
    let scan = first_hit(pairs, expected, threads, check)?;
    if let Some((a, b)) = scan.hit {
        return Err(Error::CounterExample(format!("T01 = {a:?}, T10 = {b:?}")));
    }
    if scan.examined != expected || !scan.space_exhausted {
        return Err(Error::Internal(format!("enumerated {} of {expected} pairs", scan.examined)));
    }
    Ok(scan.examined)
}

/// Exhaustive check that no subset of `G ∖ {1}` is a DRR connection set.
pub fn prove_no_drr(g: &Group, threads: usize) -> Result<NonExistenceCertificate> {
    let m = g.order();
    if m > AUTO_EXHAUSTIVE_ORDER {
        return Err(Error::TooLarge(format!("DRR exhaustion for {}", g.spec())));
    }
    let pool: Vec<Element> = g.elements().skip(1).collect();
    let total = 1u64 << pool.len();
    let check = |r: &Vec<Element>| is_drr(g, &to_set(m, r.iter().copied()));
    let scan = first_hit(pool.into_iter().powerset(), total, threads, check)?;
    if let Some(r) = scan.hit {
        return Err(Error::CounterExample(format!("Cay({}, {r:?}) is a DRR", g.spec())));
    }
    if scan.examined != total {
        return Err(Error::Internal(format!("enumerated {} of {total} subsets", scan.examined)));
    }
    Ok(NonExistenceCertificate {
        group: g.spec().to_string(),
        n: 1,
        candidates_enumerated: total,
        claim: "no DRR exists".into(),
        method: "exhaustive".into(),
        basis: None,
    })
}
