#![allow(dead_code)]

use npdr_core::Digraph;

/// Counts automorphisms by plain backtracking over a breadth-first vertex
/// order, checking adjacency against every earlier vertex. Shares no code
/// with the refinement engine.
pub fn naive_aut_count(d: &Digraph) -> u64 {
    let n = d.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in d.out_neighbors(v).iter().chain(d.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(d, &order, 0, &mut image, &mut used)
}

fn extend(d: &Digraph, order: &[usize], depth: usize, image: &mut [usize], used: &mut [bool]) -> u64 {
    if depth == order.len() {
        return 1;
    }
    let v = order[depth];
    let mut total = 0;
    for w in 0..d.vertex_count() {
        if used[w] || d.out_degree(v) != d.out_degree(w) || d.in_degree(v) != d.in_degree(w) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let x = image[u];
            d.has_arc(u, v) == d.has_arc(x, w) && d.has_arc(v, u) == d.has_arc(w, x)
        });
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        total += extend(d, order, depth + 1, image, used);
        used[w] = false;
        image[v] = usize::MAX;
    }
    total
}

/// Counts automorphisms by individualization with a joint colour
/// refinement of two copies of `d`; every discrete leaf is checked as a
/// map. Written independently of the engine.
pub fn refined_aut_count(d: &Digraph) -> u64 {
    let n = d.vertex_count();
    let start = joint_refine(d, vec![0; n], vec![0; n]).expect("identical colourings");
    count_leaves(d, start.0, start.1)
}

fn count_leaves(d: &Digraph, left: Vec<usize>, right: Vec<usize>) -> u64 {
    let n = d.vertex_count();
    let mut sizes = std::collections::BTreeMap::<usize, usize>::new();
    for &c in &left {
        *sizes.entry(c).or_default() += 1;
    }
    let target = sizes.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
    let Some(color) = target else {
        let mut image = vec![0; n];
        for v in 0..n {
            image[v] = (0..n).find(|&w| right[w] == left[v]).unwrap();
        }
        let ok = d.arcs().all(|(u, v)| d.has_arc(image[u], image[v]));
        return u64::from(ok);
    };
    let fresh = left.iter().max().unwrap() + 1;
    let v = (0..n).find(|&x| left[x] == color).unwrap();
    let mut total = 0;
    for w in (0..n).filter(|&x| right[x] == color) {
        let mut l = left.clone();
        let mut r = right.clone();
        l[v] = fresh;
        r[w] = fresh;
        if let Some((l, r)) = joint_refine(d, l, r) {
            total += count_leaves(d, l, r);
        }
    }
    total
}

/// Refines two colourings of `d` with a shared signature table; `None` if
/// the colour histograms diverge.
fn joint_refine(d: &Digraph, mut left: Vec<usize>, mut right: Vec<usize>) -> Option<(Vec<usize>, Vec<usize>)> {
    use std::collections::HashMap;
    let n = d.vertex_count();
    let distinct = |c: &[usize]| c.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let before = distinct(&left);
        let mut table: HashMap<(usize, Vec<(usize, u8)>), usize> = HashMap::new();
        let mut recolor = |c: &[usize]| -> Vec<usize> {
            let sigs: Vec<_> = (0..n)
                .map(|v| {
                    let mut s: Vec<(usize, u8)> = d
                        .out_neighbors(v)
                        .iter()
                        .map(|&w| (c[w], 0))
                        .chain(d.in_neighbors(v).iter().map(|&w| (c[w], 1)))
                        .collect();
                    s.sort_unstable();
                    (c[v], s)
                })
                .collect();
            let mut keys: Vec<_> = sigs.clone();
            keys.sort();
            keys.dedup();
            for k in keys {
                let next = table.len();
                table.entry(k).or_insert(next);
            }
            sigs.into_iter().map(|s| table[&s]).collect()
        };
        let l = recolor(&left);
        let r = recolor(&right);
        let mut hl = l.clone();
        let mut hr = r.clone();
        hl.sort_unstable();
        hr.sort_unstable();
        if hl != hr {
            return None;
        }
        left = l;
        right = r;
        if distinct(&left) == before {
            return Some((left, right));
        }
    }
}
