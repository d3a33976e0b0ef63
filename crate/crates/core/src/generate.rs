//! Graph generators for property sweeps: seeded random chordal graphs and
//! exhaustive lists of small chordal graphs and trees up to isomorphism.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};

/// Largest vertex count for the exhaustive enumerations.
pub const ENUMERATE_MAX_VERTICES: usize = 8;

/// Random chordal graph on `n` vertices. Vertex `v` is joined to a random
/// clique among `0..v`, so reversing the index order gives a perfect
/// elimination ordering.
pub fn random_chordal_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut adj = vec![VertexSet::EMPTY; n];
    for v in 1..n {
        // Leave roughly one vertex in five unattached.
        if rng.gen_bool(0.2) {
            continue;
        }
        let anchor = rng.gen_range(0..v);
        let mut pool: Vec<usize> = adj[anchor].iter().filter(|&u| u < v).collect();
        pool.shuffle(&mut rng);
        let mut clique = VertexSet::singleton(anchor);
        for u in pool {
            if rng.gen_bool(0.5) && clique.is_subset(adj[u]) {
                clique.insert(u);
            }
        }
        for u in clique {
            edges.push((u, v));
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    Graph::new(n, edges).expect("generated edges are in range")
}

/// `count` random chordal graphs with vertex counts drawn from
/// `1..=max_n`. Graph `k` uses seed `seed + k` and is returned with it.
pub fn random_chordal_sample(count: usize, max_n: usize, seed: u64) -> Vec<(u64, Graph)> {
    (0..count as u64)
        .map(|k| {
            let s = seed.wrapping_add(k);
            let n = ChaCha8Rng::seed_from_u64(s ^ 0x9e37_79b9_7f4a_7c15).gen_range(1..=max_n);
            (s, random_chordal_graph(n, s))
        })
        .collect()
}

/// Upper-triangle adjacency bits in a fixed pair order.
fn adjacency_code(g: &Graph, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(perm[a], perm[b]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Canonical relabeling: vertices are grouped by decreasing degree and the
/// order inside each group minimizing the adjacency code is chosen.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.vertex_count();
    assert!(n <= ENUMERATE_MAX_VERTICES + 3, "canonical form is brute force");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut perm = Vec::with_capacity(n);
    search_perms(g, &classes, 0, &mut perm, &mut best);
    let (_, perm) = best.unwrap_or((0, Vec::new()));
    let mut position = vec![0; n];
    for (k, &v) in perm.iter().enumerate() {
        position[v] = k;
    }
    Graph::new(n, g.edges().into_iter().map(|(u, v)| (position[u], position[v]))).expect("relabeling is a bijection")
}

fn search_perms(
    g: &Graph,
    classes: &[Vec<usize>],
    class: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<(u64, Vec<usize>)>,
) {
    if class == classes.len() {
        let code = adjacency_code(g, perm);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm.clone()));
        }
        return;
    }
    let mut members = classes[class].clone();
    permute(&mut members, 0, &mut |p| {
        let len = perm.len();
        perm.extend_from_slice(p);
        search_perms(g, classes, class + 1, perm, best);
        perm.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Cliques of `g` (including the empty set).
fn cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::EMPTY];
    let mut stack = vec![(VertexSet::EMPTY, g.vertices())];
    while let Some((clique, cand)) = stack.pop() {
        for v in cand {
            let next = clique.with(v);
            out.push(next);
            let rest: VertexSet = cand.intersection(g.neighbors(v)).iter().filter(|&u| u > v).collect();
            if !rest.is_empty() {
                stack.push((next, rest));
            }
        }
    }
    out
}

/// All chordal graphs on exactly `k` vertices for each `k` in `1..=max_n`,
/// one per isomorphism class, in canonical labeling.
///
/// Every chordal graph has a simplicial vertex, so each class on `k + 1`
/// vertices arises from a class on `k` vertices by adding a vertex joined
/// to a clique.
pub fn chordal_graphs_up_to(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= ENUMERATE_MAX_VERTICES, "enumeration is capped at {ENUMERATE_MAX_VERTICES} vertices");
    let mut all = Vec::new();
    if max_n == 0 {
        return all;
    }
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    all.extend(level.iter().cloned());
    for k in 1..max_n {
        let mut next: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        for g in &level {
            for c in cliques(g) {
                let mut edges = g.edges();
                edges.extend(c.iter().map(|u| (u, k)));
                let h = Graph::new(k + 1, edges).expect("extension is in range");
                next.insert(canonical_form(&h).edges());
            }
        }
        level = next
            .into_iter()
            .map(|e| Graph::new(k + 1, e).expect("canonical graph"))
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// All trees on `1..=max_n` vertices up to isomorphism.
pub fn trees_up_to(max_n: usize) -> Vec<Graph> {
    chordal_graphs_up_to(max_n).into_iter().filter(Graph::is_tree).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_by_size(gs: &[Graph], max_n: usize) -> Vec<usize> {
        (1..=max_n).map(|n| gs.iter().filter(|g| g.vertex_count() == n).count()).collect()
    }

    #[test]
    fn chordal_class_counts() {
        // Unlabeled chordal graphs: 1, 2, 4, 10, 27, 94, 393.
        let gs = chordal_graphs_up_to(7);
        assert_eq!(count_by_size(&gs, 7), vec![1, 2, 4, 10, 27, 94, 393]);
        assert!(gs.iter().all(Graph::is_chordal));
    }

    #[test]
    fn tree_class_counts() {
        let ts = trees_up_to(7);
        assert_eq!(count_by_size(&ts, 7), vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let p = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let q = Graph::new(5, [(4, 3), (3, 2), (2, 1), (1, 0), (3, 1)]).unwrap();
        let r = Graph::new(5, [(2, 0), (0, 4), (4, 1), (1, 3), (0, 1)]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert_eq!(canonical_form(&p), canonical_form(&r));
        assert_ne!(canonical_form(&p), canonical_form(&Graph::path(5).unwrap()));
    }

    #[test]
    fn random_chordal_graphs_are_chordal_and_seeded() {
        for seed in 0..200 {
            let g = random_chordal_graph(8, seed);
            assert!(g.is_chordal(), "seed {seed}");
            assert_eq!(g, random_chordal_graph(8, seed));
        }
        let sample = random_chordal_sample(100, 8, 7);
        assert_eq!(sample.len(), 100);
        assert!(sample.iter().all(|(_, g)| (1..=8).contains(&g.vertex_count())));
        assert!(sample.iter().any(|(_, g)| g.edge_count() > 5));
    }
}
