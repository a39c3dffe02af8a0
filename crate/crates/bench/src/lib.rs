//! Fixtures shared by the benchmarks.

use npdr_core::{build_ncayley, build_npdr, parse_group, ConnectionFamily, Digraph, SearchBudget};

/// The verified n-PDR digraph for `spec` with `n` parts.
pub fn npdr_digraph(spec: &str, n: usize) -> Digraph {
    let g = parse_group(spec).expect("known group");
    let cert = build_npdr(&g, n, &SearchBudget::default()).expect("positive instance");
    let family = ConnectionFamily::from_json_value(cert.family.as_ref().expect("family"), g.order())
        .expect("stored family");
    build_ncayley(&g, &family).expect("family builds").digraph().clone()
}

/// Undirected cycle on `n` vertices, as digons.
pub fn cycle(n: usize) -> Digraph {
    Digraph::from_arcs(n, (0..n).flat_map(|i| [(i, (i + 1) % n), ((i + 1) % n, i)])).expect("valid arcs")
}
