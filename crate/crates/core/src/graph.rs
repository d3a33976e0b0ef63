//! Finite simple graphs on dense vertex indices `0..n`, stored as adjacency
//! bitsets, together with the combinatorial primitives used throughout the
//! crate: induced subgraphs, neighborhoods, chordality and induced matchings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count representable by the `u64` bitsets.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of some ambient graph, as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    /// True iff every member is `< n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(VertexSet::full(n))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A set of edges, each stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Matching {
            edges: edges
                .into_iter()
                .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Pairwise disjoint edges.
    pub fn is_matching(&self) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &self.edges {
            if u == v || seen.contains(u) || seen.contains(v) {
                return false;
            }
            seen.insert(u);
            seen.insert(v);
        }
        true
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }
}

/// A finite simple graph: no loops, no multiple edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `0..n` with the given edges. Duplicate edges (in
    /// either orientation) collapse to one.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj, labels: None })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Attaches display names. Labels must be distinct and number exactly `n`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidLabels(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidLabels(format!("duplicate label `{}`", w[0])));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label if present, otherwise the index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Index of the vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Open neighborhood `N(v)`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// `N(v)`, or `N[v] = N(v) ∪ {v}` when `closed` is set.
    pub fn neighborhood(&self, v: usize, closed: bool) -> VertexSet {
        if closed {
            self.adj[v].with(v)
        } else {
            self.adj[v]
        }
    }

    /// True iff `s` contains no edge.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Induced subgraph on `w`. The returned map sends new index `k` to the
    /// original vertex; vertices keep their relative order. Labels carry over.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if !w.within(self.n) {
            let vertex = w.iter().find(|&v| v >= self.n).unwrap_or(self.n);
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        let map: Vec<usize> = w.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in map.iter().enumerate() {
            index[v] = k;
        }
        let adj = map
            .iter()
            .map(|&v| self.adj[v].intersection(w).iter().map(|u| index[u]).collect())
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| map.iter().map(|&v| l[v].clone()).collect());
        Ok((Graph { n: map.len(), adj, labels }, map))
    }

    /// True iff the graph has at most one connected component. The graph on
    /// zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0) == self.vertices()
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.adj[u]);
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// Visit order of maximum cardinality search, ties broken by the
    /// smallest vertex index.
    pub fn maximum_cardinality_search(&self) -> Vec<usize> {
        let mut weight = vec![0usize; self.n];
        let mut numbered = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| !numbered.contains(v))
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unnumbered vertex remains");
            numbered.insert(v);
            order.push(v);
            for u in self.adj[v].difference(numbered) {
                weight[u] += 1;
            }
        }
        order
    }

    /// A perfect elimination ordering, if one exists: every vertex's
    /// neighbors that come after it in the ordering form a clique.
    pub fn perfect_elimination_ordering(&self) -> Option<Vec<usize>> {
        let mut peo = self.maximum_cardinality_search();
        peo.reverse();
        let mut position = vec![0usize; self.n];
        for (k, &v) in peo.iter().enumerate() {
            position[v] = k;
        }
        for &v in &peo {
            let later: VertexSet = self.adj[v]
                .iter()
                .filter(|&u| position[u] > position[v])
                .collect();
            // The nearest later neighbor must see all the others.
            if let Some(parent) = later.iter().min_by_key(|&u| position[u]) {
                if !later.without(parent).is_subset(self.adj[parent]) {
                    return None;
                }
            }
        }
        Some(peo)
    }

    /// True iff every cycle of length greater than 3 has a chord.
    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_ordering().is_some()
    }

    /// True iff `m` is a matching and no edge of the graph meets two of its
    /// members. Errors if some member of `m` is not an edge.
    pub fn is_induced_matching(&self, m: &Matching) -> Result<bool> {
        for &(u, v) in &m.edges {
            if !self.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
        }
        if !m.is_matching() {
            return Ok(false);
        }
        for (a, &(u, v)) in m.edges.iter().enumerate() {
            let reach = self.adj[u].union(self.adj[v]);
            for &(x, y) in &m.edges[a + 1..] {
                if reach.contains(x) || reach.contains(y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Maximum size of an induced matching, by exhaustive branch and bound.
    pub fn induced_matching_number(&self) -> usize {
        let mut best = 0;
        self.indmatch_branch(self.vertices(), 0, &mut best);
        best
    }

    fn indmatch_branch(&self, avail: VertexSet, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        // Only vertices with a neighbor inside `avail` can still be matched.
        let live: VertexSet = avail
            .iter()
            .filter(|&v| !self.adj[v].is_disjoint(avail))
            .collect();
        if size + live.len() / 2 <= *best {
            return;
        }
        let u = match live.first() {
            Some(u) => u,
            None => return,
        };
        let blocked_u = self.adj[u].with(u);
        for v in self.adj[u].intersection(live) {
            let blocked = blocked_u.union(self.adj[v]);
            self.indmatch_branch(live.difference(blocked), size + 1, best);
        }
        self.indmatch_branch(live.without(u), size, best);
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        if let Some(labels) = &self.labels {
            out.push_str("# labels");
            for l in labels {
                out.push(' ');
                out.push_str(l);
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format: a header line `n m` followed by `m` lines
    /// `u v`. Lines starting with `#` are comments; a `# labels a b ..`
    /// comment attaches vertex labels.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut labels = None;
        let mut lines = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(names) = rest.trim_start().strip_prefix("labels") {
                    labels = Some(names.split_whitespace().map(str::to_owned).collect::<Vec<_>>());
                }
                continue;
            }
            if !line.is_empty() {
                lines.push((lineno + 1, line));
            }
        }
        let mut it = lines.into_iter();
        let (_, header) = it.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let (n, m) = parse_pair(header, 1)?;
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in it.by_ref().take(m) {
            edges.push(parse_pair(line, lineno)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("expected {m} edges, found {}", edges.len())));
        }
        if let Some((lineno, _)) = it.next() {
            return Err(Error::Parse(format!("line {lineno}: trailing content after {m} edges")));
        }
        let g = Graph::new(n, edges)?;
        match labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn parse_json(input: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(input)?;
        raw.try_into()
    }

    /// Parses either format, choosing JSON when the input starts with `{`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Graph::parse_json(input)
        } else {
            Graph::parse_text(input)
        }
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected two integers")))?;
        tok.parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: `{tok}` is not a nonnegative integer")))
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err(Error::Parse(format!("line {lineno}: expected two integers")));
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// JSON wire form: `{"n": int, "edges": [[u, v], ...], "labels": [...]?}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels.clone(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Graph> {
        let g = Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))?;
        match raw.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::path(4).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        let dup = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edges(), vec![(0, 1)]);
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 })));
        assert!(matches!(Graph::new(2, [(1, 1)]), Err(Error::LoopEdge(1))));
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn labels_must_be_distinct_and_complete() {
        let g = Graph::path(2).unwrap();
        assert!(g.clone().with_labels(vec!["a".into()]).is_err());
        assert!(g.clone().with_labels(vec!["a".into(), "a".into()]).is_err());
        let g = g.with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.vertex_by_label("b"), Some(1));
    }

    #[test]
    fn induced_subgraph_reindexes() {
        let c4 = Graph::cycle(4).unwrap();
        let (p3, map) = c4.induced_subgraph([0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(p3, Graph::path(3).unwrap());
        let (whole, _) = c4.induced_subgraph(c4.vertices()).unwrap();
        assert_eq!(whole, c4);
        assert!(c4.induced_subgraph(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn neighborhoods() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(g.neighborhood(2, false).is_empty());
        assert_eq!(g.neighborhood(2, true), VertexSet::singleton(2));
        assert_eq!(g.neighborhood(0, true), [0, 1].into_iter().collect());
    }

    #[test]
    fn chordality() {
        assert!(!Graph::cycle(4).unwrap().is_chordal());
        assert!(!Graph::cycle(5).unwrap().is_chordal());
        assert!(Graph::cycle(3).unwrap().is_chordal());
        assert!(Graph::complete(6).unwrap().is_chordal());
        assert!(Graph::empty(0).unwrap().is_chordal());
        // C4 plus one chord.
        assert!(Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap().is_chordal());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(2).unwrap().is_connected());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn induced_matchings() {
        let g = p4();
        let adjacent = Matching::new([(0, 1), (1, 2)]);
        assert!(!g.is_induced_matching(&adjacent).unwrap());
        let ends = Matching::new([(0, 1), (2, 3)]);
        assert!(!g.is_induced_matching(&ends).unwrap());
        assert!(g.is_induced_matching(&Matching::new([(1, 2)])).unwrap());
        assert!(matches!(g.is_induced_matching(&Matching::new([(0, 3)])), Err(Error::NotAnEdge(0, 3))));
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(two_k2.is_induced_matching(&ends).unwrap());
    }

    #[test]
    fn induced_matching_numbers() {
        assert_eq!(Graph::path(2).unwrap().induced_matching_number(), 1);
        assert_eq!(p4().induced_matching_number(), 1);
        assert_eq!(Graph::path(5).unwrap().induced_matching_number(), 2);
        assert_eq!(Graph::empty(0).unwrap().induced_matching_number(), 0);
        assert_eq!(Graph::empty(5).unwrap().induced_matching_number(), 0);
        assert_eq!(Graph::complete(5).unwrap().induced_matching_number(), 1);
    }

    #[test]
    fn text_and_json_formats() {
        let g = Graph::cycle(4)
            .unwrap()
            .with_labels(["a", "b", "c", "d"].map(String::from).to_vec())
            .unwrap();
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(Graph::parse(&g.to_json()).unwrap(), g);
        let plain = Graph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(plain, Graph::path(3).unwrap());
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("3 1\n0 x\n").is_err());
        assert!(Graph::parse("2 1\n0 0\n").is_err());
        assert!(Graph::parse("").is_err());
        let j = Graph::parse(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(j, Graph::path(2).unwrap());
    }
}
