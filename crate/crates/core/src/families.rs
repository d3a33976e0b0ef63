//! Generators for the graph families built from triangles and paths around a
//! hub vertex `z`.
//!
//! Every generator uses the same index layout: the `x` block first
//! (`x_i ↦ i-1`), then the `y` block, then `z`, then the `w` block. Vertex
//! labels `x_1, .., y_1, .., z, w_1, ..` are attached.
//!
//! Two different graphs are commonly written `G_{r,1}`: the tree of `r`
//! paths of length two sharing `z` ([`path_star`]) and the star of `r`
//! triangles sharing `z` ([`star_triangle`]). They get separate
//! constructors, and [`g_rb`] only accepts `b >= 2`.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Index layout of a family graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyLayout {
    pub x_count: usize,
    pub y_count: usize,
    pub w_count: usize,
}

impl FamilyLayout {
    pub fn vertex_count(&self) -> usize {
        self.x_count + self.y_count + 1 + self.w_count
    }

    /// Index of `x_i`, 1-based.
    pub fn x(&self, i: usize) -> usize {
        debug_assert!((1..=self.x_count).contains(&i));
        i - 1
    }

    pub fn y(&self, i: usize) -> usize {
        debug_assert!((1..=self.y_count).contains(&i));
        self.x_count + i - 1
    }

    pub fn z(&self) -> usize {
        self.x_count + self.y_count
    }

    pub fn w(&self, j: usize) -> usize {
        debug_assert!((1..=self.w_count).contains(&j));
        self.x_count + self.y_count + j
    }

    pub fn labels(&self) -> Vec<String> {
        let mut labels = Vec::with_capacity(self.vertex_count());
        labels.extend((1..=self.x_count).map(|i| format!("x_{i}")));
        labels.extend((1..=self.y_count).map(|i| format!("y_{i}")));
        labels.push("z".to_owned());
        labels.extend((1..=self.w_count).map(|j| format!("w_{j}")));
        labels
    }

    fn build(&self, edges: Vec<(usize, usize)>) -> Graph {
        Graph::new(self.vertex_count(), edges)
            .and_then(|g| g.with_labels(self.labels()))
            .expect("family layout is consistent")
    }
}

pub fn path_star_layout(r: usize) -> FamilyLayout {
    FamilyLayout { x_count: r, y_count: r, w_count: 0 }
}

pub fn g_rb_layout(r: usize, b: usize) -> FamilyLayout {
    FamilyLayout { x_count: r, y_count: r, w_count: b.saturating_sub(1) }
}

pub fn g_pr1_layout(p: usize, r: usize) -> FamilyLayout {
    FamilyLayout { x_count: p.saturating_sub(1), y_count: r, w_count: 0 }
}

/// `r` paths `x_i - y_i - z` glued at `z`: a tree on `2r+1` vertices.
pub fn path_star(r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidParameters("path-star needs r >= 1".into()));
    }
    let l = path_star_layout(r);
    let edges = (1..=r)
        .flat_map(|i| [(l.z(), l.y(i)), (l.x(i), l.y(i))])
        .collect();
    Ok(l.build(edges))
}

/// `r` triangles `{z, x_i, y_i}` glued at `z`.
pub fn star_triangle(r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidParameters("star-triangle needs r >= 1".into()));
    }
    let l = g_rb_layout(r, 1);
    Ok(l.build(triangle_edges(&l, r)))
}

fn triangle_edges(l: &FamilyLayout, r: usize) -> Vec<(usize, usize)> {
    (1..=r)
        .flat_map(|i| [(l.z(), l.x(i)), (l.z(), l.y(i)), (l.x(i), l.y(i))])
        .collect()
}

/// The star triangle on `r` triangles plus vertices `w_1 .. w_{b-1}`, where
/// `w_j` is joined to `z`, `x_1..x_j`, `y_1..y_j` and `w_1..w_{j-1}`.
///
/// Requires `2 <= b <= r`. The graph has `2r + b` vertices.
pub fn g_rb(r: usize, b: usize) -> Result<Graph> {
    if b < 2 || b > r {
        let hint = if b == 1 {
            " (for b = 1 use path-star, the tree of r paths; star-triangle is a different graph)"
        } else {
            ""
        };
        return Err(Error::InvalidParameters(format!(
            "grb needs 2 <= b <= r, got r = {r}, b = {b}{hint}"
        )));
    }
    let l = g_rb_layout(r, b);
    let mut edges = triangle_edges(&l, r);
    for j in 1..b {
        edges.push((l.w(j), l.z()));
        for i in 1..=j {
            edges.push((l.w(j), l.x(i)));
            edges.push((l.w(j), l.y(i)));
        }
        for i in 1..j {
            edges.push((l.w(j), l.w(i)));
        }
    }
    Ok(l.build(edges))
}

/// Edge count of [`g_rb`]: `3r` triangle edges, and `w_j` adds `3j`.
pub fn g_rb_edge_count(r: usize, b: usize) -> usize {
    3 * r + 3 * (b - 1) * b / 2
}

/// Tree with edges `{z, y_i}` for `i <= r`, `{x_i, y_i}` for `i < r` and
/// `{x_j, y_r}` for `r <= j <= p-1`. Requires `1 <= r < p`; the graph has
/// `p + r` vertices. `g_pr1(r + 1, r)` is [`path_star`]`(r)`.
pub fn g_pr1(p: usize, r: usize) -> Result<Graph> {
    if r == 0 || r >= p {
        return Err(Error::InvalidParameters(format!(
            "gpr1 needs 1 <= r < p, got p = {p}, r = {r}"
        )));
    }
    let l = g_pr1_layout(p, r);
    let mut edges: Vec<_> = (1..=r).map(|i| (l.z(), l.y(i))).collect();
    edges.extend((1..r).map(|i| (l.x(i), l.y(i))));
    edges.extend((r..p).map(|j| (l.x(j), l.y(r))));
    Ok(l.build(edges))
}

/// Parses an inline family spec such as `grb:5,3`, `path-star:2`,
/// `star-triangle:4` or `gpr1:4,2`.
pub fn parse_family_spec(spec: &str) -> Result<Graph> {
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("family spec `{spec}` should look like name:args")))?;
    let params = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad family parameter `{a}` in `{spec}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    build_family(name, &params)
}

/// Builds a family graph from its name and integer parameters.
pub fn build_family(name: &str, params: &[usize]) -> Result<Graph> {
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "{name} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "path-star" => want(1).and_then(|_| path_star(params[0])),
        "star-triangle" => want(1).and_then(|_| star_triangle(params[0])),
        "grb" => want(2).and_then(|_| g_rb(params[0], params[1])),
        "gpr1" => want(2).and_then(|_| g_pr1(params[0], params[1])),
        other => Err(Error::InvalidParameters(format!(
            "unknown family `{other}` (expected path-star, star-triangle, grb or gpr1)"
        ))),
    }
}
