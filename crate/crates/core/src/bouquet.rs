//! Strongly disjoint sets of bouquets and the search for them.
//!
//! A bouquet is a star `K_{1,d}`: a root joined to `d >= 1` leaves. A set of
//! pairwise vertex-disjoint bouquets is strongly disjoint when one edge can
//! be picked from each so that the picked edges form an induced matching.
//! With `s` bouquets covering `m` vertices its type is `(m - s, s)`.
//!
//! On a chordal graph, `β_{i,i+j}(S/I(G)) != 0` exactly when some induced
//! subgraph `G_W` is covered by a strongly disjoint set of bouquets of type
//! `(i, j)`. Since the set determines `W = V(𝓑)`, the search below never
//! enumerates `W` separately.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching, VertexSet};

/// Largest graph [`certified_positions`] accepts.
pub const CERTIFY_MAX_VERTICES: usize = 16;

/// A star subgraph: `root` joined to every vertex of `leaves`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bouquet {
    pub root: usize,
    pub leaves: VertexSet,
}

impl Bouquet {
    pub fn new(root: usize, leaves: impl IntoIterator<Item = usize>) -> Self {
        Bouquet { root, leaves: leaves.into_iter().collect() }
    }

    pub fn vertices(&self) -> VertexSet {
        self.leaves.with(self.root)
    }

    /// Checks the star structure in `g`.
    fn check_structure(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        for v in self.vertices() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if self.root >= n {
            return Err(Error::VertexOutOfRange { vertex: self.root, n });
        }
        let malformed = |reason: String| Err(Error::MalformedBouquet { root: self.root, reason });
        if self.leaves.is_empty() {
            return malformed("no leaves".into());
        }
        if self.leaves.contains(self.root) {
            return malformed("root is also a leaf".into());
        }
        if let Some(v) = self.leaves.difference(g.neighbors(self.root)).first() {
            return malformed(format!("leaf {v} is not adjacent to the root"));
        }
        Ok(())
    }
}

/// Bouquets with one representative edge each; `representatives[k]` belongs
/// to `bouquets[k]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BouquetSet {
    pub bouquets: Vec<Bouquet>,
    pub representatives: Vec<(usize, usize)>,
}

impl BouquetSet {
    pub fn new(bouquets: Vec<Bouquet>, representatives: Vec<(usize, usize)>) -> Self {
        BouquetSet { bouquets, representatives }
    }

    pub fn len(&self) -> usize {
        self.bouquets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bouquets.is_empty()
    }

    /// `V(𝓑)`.
    pub fn vertices(&self) -> VertexSet {
        self.bouquets
            .iter()
            .fold(VertexSet::EMPTY, |acc, b| acc.union(b.vertices()))
    }

    /// Sorts bouquets by root, keeping representatives aligned, and orients
    /// each representative as `(min, max)`.
    pub fn canonicalize(&mut self) {
        let mut pairs: Vec<(Bouquet, (usize, usize))> = self
            .bouquets
            .iter()
            .copied()
            .zip(self.representatives.iter().map(|&(u, v)| (u.min(v), u.max(v))))
            .collect();
        pairs.sort_by_key(|(b, _)| b.root);
        (self.bouquets, self.representatives) = pairs.into_iter().unzip();
    }
}

/// Checks that `bs` is a strongly disjoint set of bouquets of `g` with the
/// stored representatives.
///
/// A bouquet whose star structure is broken (no leaves, root among the
/// leaves, a leaf not adjacent to the root) is an error. Overlapping
/// bouquets or representatives that are not an induced matching give
/// `Ok(false)`.
pub fn validate_bouquet_set(g: &Graph, bs: &BouquetSet) -> Result<bool> {
    for b in &bs.bouquets {
        b.check_structure(g)?;
    }
    if bs.representatives.len() != bs.bouquets.len() {
        return Ok(false);
    }
    let mut seen = VertexSet::EMPTY;
    for b in &bs.bouquets {
        if !seen.is_disjoint(b.vertices()) {
            return Ok(false);
        }
        seen = seen.union(b.vertices());
    }
    for (b, &(u, v)) in bs.bouquets.iter().zip(&bs.representatives) {
        let joins_root = (u == b.root && b.leaves.contains(v)) || (v == b.root && b.leaves.contains(u));
        if !joins_root {
            return Ok(false);
        }
    }
    g.is_induced_matching(&Matching::new(bs.representatives.iter().copied()))
}

/// `(|V(𝓑)| - s, s)` for `s` bouquets.
pub fn certificate_type(bs: &BouquetSet) -> (usize, usize) {
    let s = bs.bouquets.len();
    let covered: usize = bs.bouquets.iter().map(|b| b.vertices().len()).sum();
    (covered - s, s)
}

/// A strongly disjoint set of bouquets of type `(i, j)` covering the
/// witness set `W`, certifying `β_{i,i+j} != 0` on chordal graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: (usize, usize),
    pub set: BouquetSet,
    pub witness: VertexSet,
}

impl Certificate {
    /// Validates `set` in `g` and wraps it with its type and witness.
    pub fn from_set(g: &Graph, mut set: BouquetSet) -> Result<Certificate> {
        if !validate_bouquet_set(g, &set)? {
            return Err(Error::InvalidParameters("not a strongly disjoint set of bouquets".into()));
        }
        set.canonicalize();
        Ok(Certificate { kind: certificate_type(&set), witness: set.vertices(), set })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CertificateJson::from(self)).expect("certificate serializes")
    }

    /// Parses the JSON form and revalidates it against `g`, including the
    /// declared type.
    pub fn from_json(g: &Graph, input: &str) -> Result<Certificate> {
        let raw: CertificateJson = serde_json::from_str(input)?;
        let set = BouquetSet::new(
            raw.bouquets
                .iter()
                .map(|b| Bouquet::new(b.root, b.leaves.iter().copied()))
                .collect(),
            raw.representatives.iter().map(|&[u, v]| (u, v)).collect(),
        );
        let cert = Certificate::from_set(g, set)?;
        if cert.kind != (raw.kind[0], raw.kind[1]) {
            return Err(Error::Parse(format!(
                "declared type ({}, {}) but bouquets have type {:?}",
                raw.kind[0], raw.kind[1], cert.kind
            )));
        }
        Ok(cert)
    }
}

#[derive(Serialize, Deserialize)]
struct BouquetJson {
    root: usize,
    leaves: Vec<usize>,
}

/// `{type: [i, j], bouquets: [{root, leaves}], representatives: [[u, v]]}`.
#[derive(Serialize, Deserialize)]
struct CertificateJson {
    #[serde(rename = "type")]
    kind: [usize; 2],
    bouquets: Vec<BouquetJson>,
    representatives: Vec<[usize; 2]>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            kind: [c.kind.0, c.kind.1],
            bouquets: c
                .set
                .bouquets
                .iter()
                .map(|b| BouquetJson { root: b.root, leaves: b.leaves.iter().collect() })
                .collect(),
            representatives: c.set.representatives.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// Calls `visit` on every induced matching of size `size`, as edge index
/// lists into `edges` in lexicographic order. Stops when `visit` returns
/// `true`.
fn for_each_induced_matching(
    g: &Graph,
    edges: &[(usize, usize)],
    size: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn go(
        g: &Graph,
        edges: &[(usize, usize)],
        size: usize,
        start: usize,
        blocked: VertexSet,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == size {
            return visit(chosen);
        }
        let need = size - chosen.len();
        for idx in start..edges.len() {
            if edges.len() - idx < need {
                break;
            }
            let (u, v) = edges[idx];
            if blocked.contains(u) || blocked.contains(v) {
                continue;
            }
            let closed = g.neighborhood(u, true).union(g.neighborhood(v, true));
            chosen.push(idx);
            if go(g, edges, size, idx + 1, blocked.union(closed), chosen, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(g, edges, size, 0, VertexSet::EMPTY, &mut Vec::with_capacity(size), visit)
}

/// Searches for a strongly disjoint set of bouquets of type `(i, j)` in some
/// induced subgraph of `g`.
///
/// The search is complete. Representative systems (induced matchings of
/// size `j`) are tried in lexicographic order of their sorted edge lists,
/// then root choices per edge (smaller endpoint first), and the `i - j`
/// extra leaves are the smallest vertices adjacent to some root, each
/// attached to the first bouquet whose root sees it. The first hit is
/// returned, so the answer is deterministic.
pub fn find_certificate(g: &Graph, i: usize, j: usize) -> Option<Certificate> {
    let n = g.vertex_count();
    if (i, j) == (0, 0) {
        return Some(Certificate { kind: (0, 0), set: BouquetSet::default(), witness: VertexSet::EMPTY });
    }
    if j == 0 || i < j || i + j > n {
        return None;
    }
    let extra = i - j;
    let edges = g.edges();
    let mut found = None;
    for_each_induced_matching(g, &edges, j, &mut |chosen| {
        let matched: Vec<(usize, usize)> = chosen.iter().map(|&k| edges[k]).collect();
        let covered: VertexSet = matched.iter().flat_map(|&(u, v)| [u, v]).collect();
        for mask in 0u64..1 << j {
            let roots: Vec<usize> = matched
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| if mask >> k & 1 == 1 { v } else { u })
                .collect();
            let reach = roots
                .iter()
                .fold(VertexSet::EMPTY, |acc, &r| acc.union(g.neighbors(r)))
                .difference(covered);
            if reach.len() < extra {
                continue;
            }
            let mut bouquets: Vec<Bouquet> = matched
                .iter()
                .zip(&roots)
                .map(|(&(u, v), &root)| Bouquet::new(root, [if root == u { v } else { u }]))
                .collect();
            for leaf in reach.iter().take(extra) {
                let k = roots
                    .iter()
                    .position(|&r| g.has_edge(r, leaf))
                    .expect("leaf is adjacent to a root");
                bouquets[k].leaves.insert(leaf);
            }
            let mut set = BouquetSet::new(bouquets, matched.clone());
            set.canonicalize();
            found = Some(Certificate { kind: (i, j), witness: set.vertices(), set });
            return true;
        }
        false
    });
    found
}

/// All `(i, j)` admitting a certificate, plus `(0, 0)`.
pub fn certified_positions(g: &Graph) -> Result<BTreeSet<(usize, usize)>> {
    let n = g.vertex_count();
    if n > CERTIFY_MAX_VERTICES {
        return Err(Error::CapExceeded { what: "certificate search", n, max: CERTIFY_MAX_VERTICES });
    }
    let mut out = BTreeSet::from([(0, 0)]);
    for j in 1..=n / 2 {
        // No induced matching of size j means nothing on this strand or above.
        if find_certificate(g, j, j).is_none() {
            break;
        }
        for i in j..=n - j {
            if find_certificate(g, i, j).is_some() {
                out.insert((i, j));
            }
        }
    }
    Ok(out)
}
