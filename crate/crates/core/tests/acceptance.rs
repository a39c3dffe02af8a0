//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr.

mod common;

use std::io::Write as _;
use std::time::Instant;

use npdr_core::aut::{automorphisms, brute_force_automorphisms, OrderedPartition};
use npdr_core::ncayley::build_ncayley;
use npdr_core::recipes::{recipe_small_cyclic, recipe_small_cyclic_text_literal};
use npdr_core::search::{find_trivial_group_npdr, prove_no_drr, prove_nonexistence};
use npdr_core::{
    admits_npdr, build_npdr, parse_group, verify_npdr, ConnectionFamily, Digraph, ElementSet,
    Outcome, SearchBudget,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: usize, name: &str, start: Instant, failures: &[String]) {
    let secs = start.elapsed().as_secs_f64();
    // written to the raw stream so the line survives output capture
    let mut err = std::io::stderr().lock();
    if failures.is_empty() {
        let _ = writeln!(err, "PASS [{id}] {name} ({secs:.1}s)");
    } else {
        let _ = writeln!(err, "FAIL [{id}] {name} ({secs:.1}s): {}", failures.join("; "));
        panic!("criterion {id} failed");
    }
}

fn threads() -> usize {
    std::env::var("PDR_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(1)
}

#[test]
fn criterion_1_positive_matrix() {
    let start = Instant::now();
    let groups = ["Z2", "Z3", "Z2^2", "Z2^3", "Z2^4", "Q8", "Z3^2", "Z4", "Z5", "Z6", "S3", "D4"];
    let no_two = ["Z2", "Z3", "Z2^2", "Z2^3"];
    let budget = SearchBudget { threads: threads(), ..SearchBudget::default() };
    let mut failures = Vec::new();
    let mut cells = 0;
    for spec in groups {
        let g = parse_group(spec).unwrap();
        let first = if no_two.contains(&spec) { 3 } else { 2 };
        for n in first..=8 {
            cells += 1;
            assert!(admits_npdr(&g, n));
            let cert = match build_npdr(&g, n, &budget) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("{spec} n={n}: {e}"));
                    continue;
                }
            };
            let checks = cert.checks.unwrap_or_default();
            let order = cert.aut_order.clone().and_then(|v| v.as_u64());
            if cert.outcome != Outcome::Exists || !checks.all() || order != Some(g.order() as u64) {
                failures.push(format!("{spec} n={n}: {:?} {:?} {:?}", cert.outcome, order, checks));
                continue;
            }
            let fam = ConnectionFamily::from_json_value(cert.family.as_ref().unwrap(), g.order()).unwrap();
            let x = build_ncayley(&g, &fam).unwrap();
            let naive = common::refined_aut_count(x.digraph());
            if naive != g.order() as u64 {
                failures.push(format!("{spec} n={n}: oracle order {naive}"));
            }
        }
    }
    assert_eq!(cells, 12 * 6 + 8);
    report(1, &format!("positive construction matrix, {cells} cells"), start, &failures);
}

#[test]
fn criterion_2_negative_matrix() {
    let start = Instant::now();
    let cases: [(&str, usize, u64); 7] = [
        ("Z1", 3, 64),
        ("Z1", 4, 4096),
        ("Z1", 5, 1 << 20),
        ("Z2", 2, 6),
        ("Z3", 2, 20),
        ("Z2^2", 2, 70),
        ("Z2^3", 2, 12870),
    ];
    let mut failures = Vec::new();
    for (spec, n, expected) in cases {
        let g = parse_group(spec).unwrap();
        if admits_npdr(&g, n) {
            failures.push(format!("{spec} n={n}: classified positive"));
        }
        match prove_nonexistence(&g, n, threads()) {
            Ok(c) if c.candidates_enumerated == expected && c.method != "classification-cited" => {}
            Ok(c) => failures.push(format!("{spec} n={n}: {} candidates via {}", c.candidates_enumerated, c.method)),
            Err(e) => failures.push(format!("{spec} n={n}: {e}")),
        }
    }
    report(2, "negative matrix by exhaustion", start, &failures);
}

#[test]
fn criterion_3_drr_exhaustion() {
    let start = Instant::now();
    let cases: [(&str, u64); 5] = [("Z2^2", 8), ("Z2^3", 128), ("Q8", 128), ("Z3^2", 256), ("Z2^4", 32768)];
    let mut failures = Vec::new();
    for (spec, expected) in cases {
        let g = parse_group(spec).unwrap();
        match prove_no_drr(&g, threads()) {
            Ok(c) if c.candidates_enumerated == expected => {}
            Ok(c) => failures.push(format!("{spec}: {} subsets", c.candidates_enumerated)),
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    report(3, "exhaustive DRR nonexistence", start, &failures);
}

fn arc_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut check = |d: &Digraph, what: String| {
        let unit = OrderedPartition::unit(d.vertex_count());
        let fast = automorphisms(d, &unit);
        let slow = brute_force_automorphisms(d, &unit).unwrap();
        if fast.order() != slow.order() {
            failures.push(format!("{what}: {} vs {}", fast.order(), slow.order()));
        }
    };
    let slots = arc_slots(4);
    for mask in 0u32..1 << slots.len() {
        let arcs = slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &a)| a);
        check(&Digraph::from_arcs(4, arcs).unwrap(), format!("mask {mask}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..200 {
        let n = rng.gen_range(5..=8);
        let p: f64 = rng.gen_range(0.1..0.6);
        let arcs: Vec<_> = arc_slots(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
        check(&Digraph::from_arcs(n, arcs).unwrap(), format!("random #{k}"));
    }
    report(4, "oracle equivalence on 4096 + 200 digraphs", start, &failures);
}

#[test]
fn criterion_5_small_cyclic_regression() {
    let start = Instant::now();
    let g = parse_group("Z2").unwrap();
    let mut failures = Vec::new();
    for (out, expected, pass) in [
        (recipe_small_cyclic_text_literal(&g, 3).unwrap(), 12, false),
        (recipe_small_cyclic(&g, 3).unwrap(), 2, true),
    ] {
        let x = build_ncayley(&g, &out.family).unwrap();
        let cert = verify_npdr(&g, &x).unwrap();
        let order = cert.aut_order.as_ref().and_then(|v| v.as_u64());
        let naive = common::naive_aut_count(x.digraph());
        if order != Some(expected) || naive != expected || (cert.outcome == Outcome::Exists) != pass {
            failures.push(format!("{}: order {order:?}, oracle {naive}, {:?}", out.construction.name(), cert.outcome));
        }
    }
    report(5, "text-literal Z2 family has 12 automorphisms, drawn family has 2", start, &failures);
}

#[test]
fn criterion_6_trivial_group_search() {
    let start = Instant::now();
    let budget = SearchBudget { max_candidates: 1_000_000, threads: threads(), ..SearchBudget::default() };
    let mut failures = Vec::new();
    for n in 6..=8 {
        match find_trivial_group_npdr(n, &budget) {
            Ok(found) => {
                let d = &found.value;
                let order = automorphisms(d, &OrderedPartition::unit(n)).order_u64();
                let naive = common::naive_aut_count(d);
                if order != Some(1) || naive != 1 || d.is_regular().is_none() || found.candidates > 1_000_000 {
                    failures.push(format!("n={n}: order {order:?}, oracle {naive}"));
                }
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    report(6, "trivial-group n-PDRs for n = 6, 7, 8", start, &failures);
}

#[test]
fn criterion_7_property_suite() {
    let start = Instant::now();
    let g = parse_group("Z3^2").unwrap();
    let n = 3;
    let mut failures = Vec::new();
    let mut regular_seen = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = rng.gen_range(1..=4);
        let mut fam = ConnectionFamily::empty(n, g.order());
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let k = if seed % 2 == 0 { size } else { rng.gen_range(0..=4) };
                let mut elems: Vec<usize> = g.elements().collect();
                for t in 0..k {
                    let r = rng.gen_range(t..elems.len());
                    elems.swap(t, r);
                }
                fam.set(i, j, ElementSet::from_elements(g.order(), elems[..k].iter().copied()).unwrap()).unwrap();
            }
        }
        let x = build_ncayley(&g, &fam).unwrap();
        let d = x.digraph();
        let translations = x.translation_group();
        let mut orbits = translations.orbits();
        orbits.sort();
        let mut parts = x.parts();
        parts.sort();
        let all_auts = g.elements().all(|h| x.right_translation(h).is_automorphism_of(d));
        if !all_auts || !translations.is_semiregular() || orbits != parts {
            failures.push(format!("seed {seed}: translation action"));
        }
        if fam.profile_valency() != d.is_regular() {
            failures.push(format!("seed {seed}: {:?} vs {:?}", fam.profile_valency(), d.is_regular()));
        }
        regular_seen += usize::from(d.is_regular().is_some());
    }
    assert!(regular_seen >= 50);
    report(7, "random Z3^2 families with n = 3", start, &failures);
}
