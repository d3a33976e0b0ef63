//! Graded Betti numbers of `S/I(G)` from Hochster's formula:
//!
//! ```text
//! β_{i,i+j}(S/I(G)) = Σ_{W ⊆ V, |W| = i+j} dim ~H_{j-1}(Ind(G_W); K)
//! ```
//!
//! where `Ind(G_W)` is the independence complex of the induced subgraph.
//! Reduced homology is computed from boundary-matrix ranks with exact
//! arithmetic over the chosen coefficient field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::linalg::{self, SparseVec};
use crate::table::{trim_poly, BettiTable};

/// Largest graph the subset sweep accepts.
pub const ORACLE_MAX_VERTICES: usize = 16;
/// Largest graph [`hilbert_numerator`] accepts.
pub const HILBERT_MAX_VERTICES: usize = 24;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    #[default]
    Rational,
    /// `GF(p)`; construct through [`FieldSpec::prime`] to check primality.
    Prime(u64),
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);

    pub fn prime(p: u64) -> Result<Self> {
        if linalg::is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rational"),
            FieldSpec::Prime(2) => f.write_str("gf2"),
            FieldSpec::Prime(p) => write!(f, "gfp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "q" | "qq" => Ok(FieldSpec::Rational),
            "gf2" => Ok(FieldSpec::GF2),
            _ => match s.strip_prefix("gfp:") {
                Some(p) => FieldSpec::prime(p.parse().map_err(|_| Error::UnknownField(s.to_owned()))?),
                None => Err(Error::UnknownField(s.to_owned())),
            },
        }
    }
}

/// A finite simplicial complex given by its facets. The empty face is
/// always a face, so a complex with no facets is `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: VertexSet,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Keeps only maximal nonempty facets, sorted.
    pub fn from_facets(vertices: VertexSet, facets: impl IntoIterator<Item = VertexSet>) -> Self {
        let all: BTreeSet<VertexSet> = facets.into_iter().filter(|f| !f.is_empty()).collect();
        let facets = all
            .iter()
            .filter(|&&f| !all.iter().any(|&g| g != f && f.is_subset(g)))
            .copied()
            .collect();
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Largest face dimension; `-1` for `{∅}`.
    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Faces grouped by size: entry `k` lists the faces with `k` vertices
    /// (dimension `k - 1`), in increasing bit order.
    pub fn faces_by_size(&self) -> Vec<Vec<u64>> {
        let mut by_size: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); (self.dimension() + 2) as usize];
        by_size[0].insert(0);
        for f in &self.facets {
            let bits = f.bits();
            // Every submask of the facet.
            let mut sub = bits;
            loop {
                by_size[sub.count_ones() as usize].insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bits;
            }
        }
        by_size.into_iter().map(|s| s.into_iter().collect()).collect()
    }
}

/// Independence complex: faces are the independent sets of `g`, facets the
/// maximal independent sets.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    let faces = independent_sets_by_size(g, g.vertices());
    let facets = faces
        .iter()
        .flatten()
        .copied()
        .filter(|&f| {
            let s = VertexSet::from_bits(f);
            // maximal iff every outside vertex has a neighbor inside
            g.vertices()
                .difference(s)
                .iter()
                .all(|v| !g.neighbors(v).is_disjoint(s))
        })
        .map(VertexSet::from_bits);
    SimplicialComplex::from_facets(g.vertices(), facets)
}

/// Independent subsets of `w`, grouped by size, each group increasing.
fn independent_sets_by_size(g: &Graph, w: VertexSet) -> Vec<Vec<u64>> {
    let mut by_size: Vec<Vec<u64>> = vec![vec![0]];
    // (face, candidates that may extend it)
    let mut stack = vec![(0u64, w)];
    while let Some((face, cand)) = stack.pop() {
        for v in cand {
            let next = face | 1u64 << v;
            let size = next.count_ones() as usize;
            if by_size.len() <= size {
                by_size.push(Vec::new());
            }
            by_size[size].push(next);
            let above = u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0);
            let rest = VertexSet::from_bits(cand.bits() & above).difference(g.neighbors(v));
            if !rest.is_empty() {
                stack.push((next, rest));
            }
        }
    }
    for group in &mut by_size {
        group.sort_unstable();
    }
    by_size
}

/// Dimensions of reduced homology `~H_k` for `k = -1, 0, 1, ..`, together
/// with the face counts they were computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    /// `dims[k + 1] = dim ~H_k`.
    dims: Vec<u64>,
    /// `face_counts[k + 1]` = number of `k`-dimensional faces.
    face_counts: Vec<u64>,
}

impl HomologyProfile {
    /// `dim ~H_k`; zero outside `[-1, dim]`.
    pub fn get(&self, k: i64) -> u64 {
        if k < -1 {
            return 0;
        }
        self.dims.get((k + 1) as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(k, dim ~H_k)` pairs.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (k as i64 - 1, d))
    }

    pub fn face_counts(&self) -> &[u64] {
        &self.face_counts
    }

    /// Reduced Euler characteristic `Σ_{k >= -1} (-1)^k f_k`.
    pub fn euler_from_faces(&self) -> i64 {
        alternating(&self.face_counts)
    }

    /// `Σ_{k >= -1} (-1)^k dim ~H_k`.
    pub fn euler_from_homology(&self) -> i64 {
        alternating(&self.dims)
    }

    pub fn is_euler_consistent(&self) -> bool {
        self.euler_from_faces() == self.euler_from_homology()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// `Σ (-1)^k x[k+1]` with index 0 standing for `k = -1`.
fn alternating(xs: &[u64]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(idx, &x)| if idx % 2 == 0 { -(x as i64) } else { x as i64 })
        .sum()
}

pub fn reduced_homology_dims(c: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    homology_from_faces(&c.faces_by_size(), field)
}

/// `dim ~H_k = f_k - rank ∂_k - rank ∂_{k+1}`, where `∂_0` sends every
/// vertex to the empty face.
fn homology_from_faces(by_size: &[Vec<u64>], field: FieldSpec) -> HomologyProfile {
    let face_counts: Vec<u64> = by_size.iter().map(|g| g.len() as u64).collect();
    // ranks[s] = rank of the boundary map out of faces with s vertices.
    let mut ranks = vec![0usize; by_size.len() + 1];
    for s in 1..by_size.len() {
        let lower = &by_size[s - 1];
        let columns: Vec<SparseVec<i64>> = by_size[s]
            .iter()
            .map(|&face| boundary(face, lower))
            .collect();
        ranks[s] = linalg::rank(&columns, field);
    }
    let dims = (0..by_size.len())
        .map(|s| {
            let h = face_counts[s] as i64 - ranks[s] as i64 - ranks[s + 1] as i64;
            debug_assert!(h >= 0);
            h as u64
        })
        .collect();
    HomologyProfile { dims, face_counts }
}

fn boundary(face: u64, lower: &[u64]) -> SparseVec<i64> {
    let mut col: SparseVec<i64> = VertexSet::from_bits(face)
        .iter()
        .enumerate()
        .map(|(m, v)| {
            let row = lower
                .binary_search(&(face & !(1u64 << v)))
                .expect("face complex is closed under subsets");
            (row, if m % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    col.sort_unstable_by_key(|e| e.0);
    col
}

/// Homology of `Ind(G_W)`, or `None` when `G_W` has an isolated vertex:
/// the complex is then a cone over that vertex and acyclic.
fn subset_homology(g: &Graph, w: VertexSet, field: FieldSpec) -> Option<HomologyProfile> {
    if w.iter().any(|v| g.neighbors(v).is_disjoint(w)) {
        return None;
    }
    Some(homology_from_faces(&independent_sets_by_size(g, w), field))
}

/// Reduced homology of `Ind(G_W)` for one vertex subset.
pub fn induced_independence_homology(g: &Graph, w: VertexSet, field: FieldSpec) -> Result<HomologyProfile> {
    if !w.within(g.vertex_count()) {
        let vertex = w.iter().find(|&v| v >= g.vertex_count()).unwrap_or(0);
        return Err(Error::VertexOutOfRange { vertex, n: g.vertex_count() });
    }
    Ok(homology_from_faces(&independent_sets_by_size(g, w), field))
}

/// Options for the Hochster subset sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    pub field: FieldSpec,
    /// Worker threads; `0` uses the rayon default, `1` runs sequentially.
    pub jobs: usize,
}

impl SweepOptions {
    pub fn new(field: FieldSpec) -> Self {
        SweepOptions { field, jobs: 0 }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

/// Bookkeeping from one sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    /// Nonempty subsets visited.
    pub subsets: u64,
    /// Subsets skipped because `G_W` has an isolated vertex.
    pub cones: u64,
    /// Homology computations performed.
    pub homology_computations: u64,
    /// Computations whose Euler characteristic from faces and from homology
    /// disagreed. Always zero unless the rank computation is broken.
    pub euler_mismatches: u64,
}

impl SweepStats {
    fn merge(mut self, other: SweepStats) -> SweepStats {
        self.subsets += other.subsets;
        self.cones += other.cones;
        self.homology_computations += other.homology_computations;
        self.euler_mismatches += other.euler_mismatches;
        self
    }
}

type Cells = BTreeMap<(usize, usize), u64>;

fn sweep_one(g: &Graph, w: VertexSet, field: FieldSpec, cells: &mut Cells, stats: &mut SweepStats) {
    stats.subsets += 1;
    let Some(profile) = subset_homology(g, w, field) else {
        stats.cones += 1;
        return;
    };
    stats.homology_computations += 1;
    if !profile.is_euler_consistent() {
        stats.euler_mismatches += 1;
    }
    let size = w.len();
    for (k, d) in profile.nonzero() {
        // ~H_{j-1} feeds β_{i,i+j} with i + j = |W|.
        let j = (k + 1) as usize;
        *cells.entry((size - j, j)).or_insert(0) += d;
    }
}

fn merge_cells(mut a: Cells, b: Cells) -> Cells {
    for (key, v) in b {
        *a.entry(key).or_insert(0) += v;
    }
    a
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.vertex_count() > ORACLE_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "Hochster subset sweep",
            n: g.vertex_count(),
            max: ORACLE_MAX_VERTICES,
        });
    }
    Ok(())
}

fn run_sweep<F>(jobs: usize, f: F) -> (Cells, SweepStats)
where
    F: FnOnce() -> (Cells, SweepStats) + Send,
{
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Full Betti table of `S/I(g)` with sweep statistics.
pub fn betti_table_with_stats(g: &Graph, opts: SweepOptions) -> Result<(BettiTable, SweepStats)> {
    check_cap(g)?;
    let n = g.vertex_count();
    let field = opts.field;
    let (cells, stats) = if opts.jobs == 1 {
        let mut cells = Cells::new();
        let mut stats = SweepStats::default();
        for bits in 1..1u64 << n {
            sweep_one(g, VertexSet::from_bits(bits), field, &mut cells, &mut stats);
        }
        (cells, stats)
    } else {
        run_sweep(opts.jobs, || {
            (1..1u64 << n)
                .into_par_iter()
                .fold(
                    || (Cells::new(), SweepStats::default()),
                    |(mut cells, mut stats), bits| {
                        sweep_one(g, VertexSet::from_bits(bits), field, &mut cells, &mut stats);
                        (cells, stats)
                    },
                )
                .reduce(
                    || (Cells::new(), SweepStats::default()),
                    |(a, sa), (b, sb)| (merge_cells(a, b), sa.merge(sb)),
                )
        })
    };
    let mut table = BettiTable::new(n);
    for ((i, j), v) in cells {
        table.add(i, j, v);
    }
    Ok((table, stats))
}

pub fn betti_table_with(g: &Graph, opts: SweepOptions) -> Result<BettiTable> {
    betti_table_with_stats(g, opts).map(|(t, _)| t)
}

/// Full Betti table of `S/I(g)` over `field`.
pub fn betti_table(g: &Graph, field: FieldSpec) -> Result<BettiTable> {
    betti_table_with(g, SweepOptions::new(field))
}

/// Single Betti number `β_{i,i+j}`, sweeping only subsets of size `i + j`.
pub fn betti_single(g: &Graph, i: usize, j: usize, field: FieldSpec) -> Result<u64> {
    let n = g.vertex_count();
    if i + j > n {
        return Err(Error::CellOutOfRange { i, j, n });
    }
    check_cap(g)?;
    if i + j == 0 {
        return Ok(1);
    }
    if j == 0 {
        return Ok(0);
    }
    let size = i + j;
    let mut total = 0;
    for w in subsets_of_size(n, size) {
        if let Some(profile) = subset_homology(g, w, field) {
            total += profile.get(j as i64 - 1);
        }
    }
    Ok(total)
}

/// Subsets of `0..n` with exactly `k` members, in increasing bit order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut next = if k == 0 {
        Some(0)
    } else if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && nxt < limit).then_some(nxt)
        };
        Some(VertexSet::from_bits(cur))
    })
}

/// Numerator of the Hilbert series of `S/I(g)`:
/// `Σ_{A independent} t^{|A|} (1 - t)^{n - |A|}`, as coefficients by degree.
pub fn hilbert_numerator(g: &Graph) -> Result<Vec<i128>> {
    let n = g.vertex_count();
    if n > HILBERT_MAX_VERTICES {
        return Err(Error::CapExceeded { what: "Hilbert numerator", n, max: HILBERT_MAX_VERTICES });
    }
    let counts: Vec<i128> = independent_sets_by_size(g, g.vertices())
        .iter()
        .map(|s| s.len() as i128)
        .collect();
    let mut coeffs = vec![0i128; n + 1];
    for (a, &count) in counts.iter().enumerate() {
        // t^a (1 - t)^{n-a}
        let m = n - a;
        let mut binom = 1i128;
        for k in 0..=m {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            coeffs[a + k] += sign * count * binom;
            binom = binom * (m - k) as i128 / (k + 1) as i128;
        }
    }
    Ok(trim_poly(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn k2() -> Graph {
        Graph::path(2).unwrap()
    }

    fn facet_sets(c: &SimplicialComplex) -> Vec<Vec<usize>> {
        c.facets().iter().map(|f| f.iter().collect()).collect()
    }

    #[test]
    fn independence_complexes() {
        assert_eq!(facet_sets(&independence_complex(&k2())), vec![vec![0], vec![1]]);
        let c4 = Graph::cycle(4).unwrap();
        let mut f = facet_sets(&independence_complex(&c4));
        f.sort();
        assert_eq!(f, vec![vec![0, 2], vec![1, 3]]);
        let c5 = independence_complex(&Graph::cycle(5).unwrap());
        assert_eq!(c5.facets().len(), 5);
        assert!(c5.facets().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn reduced_homology_examples() {
        let pts = independence_complex(&k2());
        let h = reduced_homology_dims(&pts, FieldSpec::Rational);
        assert_eq!(h.nonzero().collect::<Vec<_>>(), vec![(0, 1)]);

        let hollow = SimplicialComplex::from_facets(
            VertexSet::full(3),
            [[0, 1], [1, 2], [0, 2]].map(|f| f.into_iter().collect()),
        );
        let h = reduced_homology_dims(&hollow, FieldSpec::Rational);
        assert_eq!(h.nonzero().collect::<Vec<_>>(), vec![(1, 1)]);

        let pentagon = independence_complex(&Graph::cycle(5).unwrap());
        let h = reduced_homology_dims(&pentagon, FieldSpec::GF2);
        assert_eq!(h.nonzero().collect::<Vec<_>>(), vec![(1, 1)]);

        let void = SimplicialComplex::from_facets(VertexSet::EMPTY, []);
        let h = reduced_homology_dims(&void, FieldSpec::Rational);
        assert_eq!(h.get(-1), 1);
        assert_eq!(h.get(-2), 0);
        assert_eq!(h.get(5), 0);
    }

    #[test]
    fn projective_plane_detects_characteristic() {
        // Minimal 6-vertex triangulation of RP^2: ~H_1 = Z/2.
        let facets = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let c = SimplicialComplex::from_facets(VertexSet::full(6), facets.map(|f| f.into_iter().collect()));
        let q = reduced_homology_dims(&c, FieldSpec::Rational);
        assert!(q.is_acyclic());
        let f2 = reduced_homology_dims(&c, FieldSpec::GF2);
        assert_eq!(f2.nonzero().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
        assert!(q.is_euler_consistent() && f2.is_euler_consistent());
    }

    #[test]
    fn small_tables() {
        let t = betti_table(&k2(), FieldSpec::Rational).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 1)]);
        let t = betti_table(&Graph::complete(3).unwrap(), FieldSpec::Rational).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 3), (2, 1, 2)]);
        let t = betti_table(&Graph::empty(3).unwrap(), FieldSpec::Rational).unwrap();
        assert_eq!(t, BettiTable::new(3));
    }

    #[test]
    fn single_cells() {
        let g = families::g_rb(2, 2).unwrap();
        let t = betti_table(&g, FieldSpec::Rational).unwrap();
        for i in 0..=6 {
            for j in 0..=6 - i {
                assert_eq!(betti_single(&g, i, j, FieldSpec::Rational).unwrap(), t.get(i, j), "({i},{j})");
            }
        }
        assert!(matches!(betti_single(&g, 5, 2, FieldSpec::Rational), Err(Error::CellOutOfRange { .. })));
        assert_eq!(betti_single(&Graph::empty(0).unwrap(), 0, 0, FieldSpec::Rational).unwrap(), 1);
    }

    #[test]
    fn hilbert_numerators() {
        assert_eq!(hilbert_numerator(&k2()).unwrap(), vec![1, 0, -1]);
        assert_eq!(hilbert_numerator(&Graph::complete(3).unwrap()).unwrap(), vec![1, 0, -3, 2]);
        assert_eq!(hilbert_numerator(&Graph::empty(3).unwrap()).unwrap(), vec![1]);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(4, 0).collect::<Vec<_>>(), vec![VertexSet::EMPTY]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(3, 3).count(), 1);
        let all: Vec<u64> = subsets_of_size(6, 3).map(|s| s.bits()).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fields_parse() {
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("gf2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("gfp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!(matches!("gfp:8".parse::<FieldSpec>(), Err(Error::NotPrime(8))));
        assert!("real".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "gfp:7");
    }

    #[test]
    fn oversize_graph_is_refused() {
        let g = Graph::empty(17).unwrap();
        assert!(matches!(betti_table(&g, FieldSpec::GF2), Err(Error::CapExceeded { .. })));
    }
}
