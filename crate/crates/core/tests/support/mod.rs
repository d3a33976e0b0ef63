//! Independent brute-force oracles shared by the integration tests. Nothing
//! here calls into the homology, rank or search code under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use edgebetti::Graph;

/// Edges of the 13-vertex example graph, copied from its drawing.
pub const G53_FIGURE_EDGES: [(&str, &str); 24] = [
    ("x_1", "y_1"), ("x_2", "y_2"), ("x_3", "y_3"), ("x_4", "y_4"), ("x_5", "y_5"),
    ("z", "x_1"), ("z", "x_2"), ("z", "x_3"), ("z", "x_4"), ("z", "x_5"),
    ("z", "y_1"), ("z", "y_2"), ("z", "y_3"), ("z", "y_4"), ("z", "y_5"),
    ("w_2", "x_1"), ("w_2", "x_2"), ("w_2", "y_1"), ("w_2", "y_2"), ("w_2", "z"),
    ("w_1", "x_1"), ("w_1", "y_1"), ("w_1", "w_2"), ("w_1", "z"),
];

fn adjacent(edges: &[(usize, usize)], u: usize, v: usize) -> bool {
    edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
}

/// Rank of an integer matrix by Gaussian elimination over exact fractions.
pub fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<(i128, i128)>> =
        rows.iter().map(|r| r.iter().map(|&x| (x as i128, 1)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c].0 != 0) else { continue };
        m.swap(rank, p);
        let (pn, pd) = m[rank][c];
        for r in rank + 1..m.len() {
            if m[r][c].0 == 0 {
                continue;
            }
            // row_r -= (a / p) row_rank
            let (an, ad) = m[r][c];
            let (fnum, fden) = (an * pd, ad * pn);
            for k in 0..cols {
                let (xn, xd) = m[r][k];
                let (yn, yd) = m[rank][k];
                let num = xn * fden * yd - fnum * yn * xd;
                let den = xd * fden * yd;
                let g = gcd(num, den).max(1);
                let s = if den < 0 { -1 } else { 1 };
                m[r][k] = (s * num / g, s * den / g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduced homology dimensions of the complex whose faces are `faces`
/// (bitmasks, closed under subsets), keyed by dimension `k >= -1`.
pub fn brute_reduced_homology(faces: &[u64]) -> BTreeMap<i64, u64> {
    let max = faces.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize;
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); max + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    for g in &mut by_size {
        g.sort();
    }
    let mut ranks = vec![0usize; max + 2];
    for s in 1..=max {
        let rows: Vec<Vec<i64>> = by_size[s]
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; by_size[s - 1].len()];
                let verts: Vec<u32> = (0..64).filter(|&v| f >> v & 1 == 1).collect();
                for (m, v) in verts.iter().enumerate() {
                    let idx = by_size[s - 1].iter().position(|&g| g == f & !(1 << v)).unwrap();
                    row[idx] = if m % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        ranks[s] = dense_rank(&rows);
    }
    let mut out = BTreeMap::new();
    for s in 0..=max {
        let h = by_size[s].len() as i64 - ranks[s] as i64 - ranks[s + 1] as i64;
        if h > 0 {
            out.insert(s as i64 - 1, h as u64);
        }
    }
    out
}

fn is_independent(edges: &[(usize, usize)], set: u64) -> bool {
    edges.iter().all(|&(u, v)| set >> u & 1 == 0 || set >> v & 1 == 0)
}

/// Betti table of `S/I(G)` through the upper Koszul complexes
/// `K^W = {F ⊆ W : W \ F contains an edge}`, using
/// `β_{i,W}(S/I) = dim ~H_{i-2}(K^W)`. Returns `(i, j) ↦ β_{i,i+j}`.
pub fn koszul_betti(g: &Graph) -> BTreeMap<(usize, usize), u64> {
    let n = g.vertex_count();
    assert!(n <= 9, "brute-force oracle");
    let edges = g.edges();
    let mut table = BTreeMap::from([((0, 0), 1)]);
    for w in 1u64..1 << n {
        let faces: Vec<u64> = (0..=w)
            .filter(|&f| f & !w == 0 && !is_independent(&edges, w & !f))
            .collect();
        if faces.is_empty() {
            continue;
        }
        let size = w.count_ones() as usize;
        for (k, h) in brute_reduced_homology(&faces) {
            let i = (k + 2) as usize;
            *table.entry((i, size - i)).or_insert(0) += h;
        }
    }
    table
}

/// Number of independent subsets of `w` by size, by checking every subset
/// of `w`.
pub fn brute_independent_counts(g: &Graph, w: u64) -> Vec<u64> {
    let edges = g.edges();
    let mut counts = vec![0u64; w.count_ones() as usize + 1];
    let mut s = w;
    loop {
        if is_independent(&edges, s) {
            counts[s.count_ones() as usize] += 1;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & w;
    }
    counts
}

/// Reduced Euler characteristic of `Ind(G_W)` from brute-force face counts.
pub fn brute_reduced_euler(g: &Graph, w: u64) -> i64 {
    brute_independent_counts(g, w)
        .iter()
        .enumerate()
        .map(|(s, &c)| if s % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum()
}

/// True iff some induced subgraph on at least 4 vertices is a cycle.
pub fn naive_has_chordless_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    let edges = g.edges();
    (0u64..1 << n).filter(|s| s.count_ones() >= 4).any(|s| {
        let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let all_degree_two = verts
            .iter()
            .all(|&v| verts.iter().filter(|&&u| adjacent(&edges, u, v)).count() == 2);
        if !all_degree_two {
            return false;
        }
        // connected
        let mut seen = 1u64 << verts[0];
        loop {
            let next = verts
                .iter()
                .filter(|&&u| seen >> u & 1 == 0 && verts.iter().any(|&v| seen >> v & 1 == 1 && adjacent(&edges, u, v)))
                .fold(seen, |acc, &u| acc | 1 << u);
            if next == seen {
                break;
            }
            seen = next;
        }
        seen == s
    })
}

/// Maximum induced matching by trying every edge subset.
pub fn brute_induced_matching_number(g: &Graph) -> usize {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 20);
    let mut best = 0;
    for mask in 0u64..1 << m {
        let chosen: Vec<(usize, usize)> = (0..m).filter(|&k| mask >> k & 1 == 1).map(|k| edges[k]).collect();
        let ok = chosen.iter().enumerate().all(|(a, &(u, v))| {
            chosen[a + 1..].iter().all(|&(x, y)| {
                let disjoint = u != x && u != y && v != x && v != y;
                let unlinked = !adjacent(&edges, u, x)
                    && !adjacent(&edges, u, y)
                    && !adjacent(&edges, v, x)
                    && !adjacent(&edges, v, y);
                disjoint && unlinked
            })
        });
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Arbitrary graph on `n` vertices from an edge bitmask over pairs.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A 13-vertex graph whose independence complex is a flag triangulation of
/// the real projective plane, so its table depends on the characteristic.
pub fn projective_plane_graph() -> Graph {
    let edges = [
        (0, 1), (0, 2), (0, 3), (0, 7), (0, 11), (0, 12), (1, 2), (1, 4), (1, 7), (1, 9), (1, 10),
        (2, 5), (2, 8), (2, 10), (2, 12), (3, 4), (3, 6), (3, 11), (3, 12), (4, 6), (4, 9), (4, 10),
        (5, 8), (5, 9), (5, 10), (5, 11), (5, 12), (6, 7), (6, 8), (6, 10), (6, 12), (7, 8), (7, 9),
        (7, 10), (7, 11), (7, 12), (8, 9), (8, 11), (9, 11), (9, 12), (10, 11), (10, 12),
    ];
    Graph::new(13, edges).unwrap()
}

/// Writes `g` in the text format to a temporary file.
pub fn graph_file(g: &Graph) -> tempfile::NamedTempFile {
    use std::io::Write;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(g.to_text().as_bytes()).unwrap();
    f
}
