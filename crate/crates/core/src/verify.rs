//! Replays the structural claims about the graph families as executable
//! checks and collects the outcomes into reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::{extremal_positions, has_unique_extremal, projective_dimension, regularity};
use crate::bouquet::{certificate_type, certified_positions, find_certificate, validate_bouquet_set, Bouquet, BouquetSet};
use crate::error::{Error, Result};
use crate::families::{self, g_rb_layout, path_star_layout};
use crate::graph::Graph;
use crate::homology::{betti_table_with, FieldSpec, SweepOptions};
use crate::table::BettiTable;

/// Oracle cap for the harness.
pub const HARNESS_MAX_VERTICES: usize = 13;
/// Cap for the full certificate/oracle equivalence.
pub const SUPPORT_MAX_VERTICES: usize = 10;

/// Betti values of the 13-vertex graph with `r = 5`, `b = 3`, strand by
/// strand: `(j, first i, values)`.
pub const G53_TABLE: [(usize, usize, &[u64]); 5] = [
    (1, 1, &[24, 94, 248, 512, 798, 925, 792, 495, 220, 66, 12, 1]),
    (2, 2, &[33, 86, 91, 53, 18, 3]),
    (3, 3, &[37, 100, 105, 57, 18, 3]),
    (4, 4, &[18, 49, 49, 23, 6, 1]),
    (5, 5, &[3, 8, 7, 2]),
];

/// The reference table for `g_rb(5, 3)` as a [`BettiTable`].
pub fn g53_expected_table() -> BettiTable {
    let cells = G53_TABLE.iter().flat_map(|&(j, start, values)| {
        values.iter().enumerate().map(move |(k, &v)| (start + k, j, v))
    });
    BettiTable::from_entries(13, std::iter::once((0, 0, 1)).chain(cells)).expect("table is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn eq<T: Debug + PartialEq>(name: impl Into<String>, expected: T, computed: T) -> Check {
        Check {
            name: name.into(),
            pass: expected == computed,
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: BTreeMap<String, u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    fn new(claim: &str, params: &[(&str, u64)]) -> Self {
        VerificationReport {
            claim: claim.to_owned(),
            params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            status: Status::Pass,
            note: None,
            checks: Vec::new(),
            runtime_ms: None,
        }
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn check<T: Debug + PartialEq>(&mut self, name: &str, expected: T, computed: T) {
        self.push(Check::eq(name, expected, computed));
    }

    fn skipped(mut self, note: &str) -> Self {
        self.status = Status::Skipped;
        self.note = Some(note.to_owned());
        self
    }

    fn finish(mut self, started: Instant) -> Self {
        if self.status != Status::Skipped {
            self.status = if self.checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail };
        }
        self.runtime_ms = Some(started.elapsed().as_millis() as u64);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One JSON object; `runtime_ms` is dropped unless `timings` is set so
    /// output is reproducible.
    pub fn to_json_line(&self, timings: bool) -> String {
        let mut copy = self.clone();
        if !timings {
            copy.runtime_ms = None;
        }
        serde_json::to_string(&copy).expect("report serializes")
    }
}

/// Runs the checks with a given sweep configuration.
#[derive(Clone, Copy, Debug, Default)]
pub struct Verifier {
    pub sweep: SweepOptions,
}

impl Verifier {
    pub fn new(sweep: SweepOptions) -> Self {
        Verifier { sweep }
    }

    fn table(&self, g: &Graph) -> Result<BettiTable> {
        if g.vertex_count() > HARNESS_MAX_VERTICES {
            return Err(Error::CapExceeded { what: "verification oracle", n: g.vertex_count(), max: HARNESS_MAX_VERTICES });
        }
        betti_table_with(g, self.sweep)
    }

    /// The tree of `r` paths around `z`: chordal, a tree, `reg = r`, and a
    /// single extremal Betti number at `(r+1, r)` certified by the bouquets
    /// `{x_i, y_i}` (`i < r`) and `{x_r, y_r, z}`.
    pub fn first_step(&self, r: usize) -> Result<VerificationReport> {
        if !(1..=6).contains(&r) {
            return Err(Error::InvalidParameters(format!("first-step needs 1 <= r <= 6, got {r}")));
        }
        let started = Instant::now();
        let g = families::path_star(r)?;
        let t = self.table(&g)?;
        let mut rep = VerificationReport::new("first-step", &[("r", r as u64)]);
        rep.check("chordal", true, g.is_chordal());
        rep.check("tree", true, g.is_tree());
        rep.check("regularity", r, regularity(&t));
        rep.check("projective_dimension", r + 1, projective_dimension(&t));
        rep.check("extremal_positions", vec![(r + 1, r)], extremal_positions(&t).coordinates());
        rep.check("unique_extremal", (true, Some((r + 1, r))), has_unique_extremal(&t));

        let l = path_star_layout(r);
        let mut bouquets: Vec<Bouquet> = (1..r).map(|i| Bouquet::new(l.y(i), [l.x(i)])).collect();
        bouquets.push(Bouquet::new(l.y(r), [l.x(r), l.z()]));
        let set = BouquetSet::new(bouquets, (1..=r).map(|i| (l.x(i), l.y(i))).collect());
        rep.check("constructed_bouquets_valid", true, validate_bouquet_set(&g, &set)?);
        rep.check("constructed_bouquets_type", (r + 1, r), certificate_type(&set));
        rep.check("certificate_found", Some((r + 1, r)), find_certificate(&g, r + 1, r).map(|c| c.kind));
        Ok(rep.finish(started))
    }

    /// For `2 <= b <= r`: chordal, `indmatch = reg = r`,
    /// `projdim = 2r + b - 1`, exactly `b` extremal Betti numbers at
    /// `(r+b+i-1, r-i+1)` for `i < b` and `(2r+b-1, 1)`, and the vanishing
    /// rectangle `β_{r+2b-2+i, ·+j} = 0` for `1 <= i <= r-b`,
    /// `2 <= j <= r-b-i+2`, checked both in the table and by failing
    /// certificate searches.
    pub fn theorem(&self, r: usize, b: usize) -> Result<VerificationReport> {
        if b < 2 || b > r {
            return Err(Error::InvalidParameters(format!("theorem needs 2 <= b <= r, got r = {r}, b = {b}")));
        }
        if 2 * r + b > HARNESS_MAX_VERTICES {
            return Err(Error::CapExceeded { what: "theorem check", n: 2 * r + b, max: HARNESS_MAX_VERTICES });
        }
        let started = Instant::now();
        let g = families::g_rb(r, b)?;
        let t = self.table(&g)?;
        let report = extremal_positions(&t);
        let mut rep = VerificationReport::new("theorem", &[("r", r as u64), ("b", b as u64)]);
        rep.check("vertex_count", 2 * r + b, g.vertex_count());
        rep.check("connected", true, g.is_connected());
        rep.check("chordal", true, g.is_chordal());
        rep.check("induced_matching_number", r, g.induced_matching_number());
        rep.check("regularity", r, regularity(&t));
        rep.check("projective_dimension", 2 * r + b - 1, projective_dimension(&t));
        rep.check("extremal_count", b, report.count());
        let mut expected: Vec<(usize, usize)> = (1..b).map(|i| (r + b + i - 1, r - i + 1)).collect();
        expected.push((2 * r + b - 1, 1));
        rep.check("extremal_positions", expected.clone(), report.coordinates());
        if (r, b) == (5, 3) {
            let values: Vec<u64> = report.positions.iter().map(|e| e.value).collect();
            rep.check("extremal_values", vec![2, 1, 1], values);
        }

        let rectangle: Vec<(usize, usize)> = (1..=r - b)
            .flat_map(|i| (2..=r - b - i + 2).map(move |j| (r + 2 * b - 2 + i, j)))
            .collect();
        let in_table: Vec<(usize, usize)> = rectangle.iter().copied().filter(|&(i, j)| t.get(i, j) != 0).collect();
        rep.check("vanishing_rectangle_table", Vec::<(usize, usize)>::new(), in_table);
        let certified: Vec<(usize, usize)> = rectangle
            .iter()
            .copied()
            .filter(|&(i, j)| find_certificate(&g, i, j).is_some())
            .collect();
        rep.check("vanishing_rectangle_certificates", Vec::<(usize, usize)>::new(), certified);

        // Bouquet sets B_i: w_i with its whole neighborhood, plus {x_k, y_k}
        // for k > i; and the hub bouquet at z.
        let l = g_rb_layout(r, b);
        for i in 1..b {
            let w = l.w(i);
            let mut bouquets = vec![Bouquet { root: w, leaves: g.neighbors(w) }];
            let mut reps = vec![(w, l.x(i))];
            for k in i + 1..=r {
                bouquets.push(Bouquet::new(l.x(k), [l.y(k)]));
                reps.push((l.x(k), l.y(k)));
            }
            let set = BouquetSet::new(bouquets, reps);
            rep.check(&format!("bouquets_{i}_valid"), true, validate_bouquet_set(&g, &set)?);
            rep.check(&format!("bouquets_{i}_type"), (r + b + i - 1, r - i + 1), certificate_type(&set));
        }
        let z = l.z();
        let hub = BouquetSet::new(
            vec![Bouquet { root: z, leaves: g.neighbors(z) }],
            vec![(z, l.x(1))],
        );
        rep.check("hub_bouquet_valid", true, validate_bouquet_set(&g, &hub)?);
        rep.check("hub_bouquet_type", (2 * r + b - 1, 1), certificate_type(&hub));
        let found: Vec<bool> = expected.iter().map(|&(i, j)| find_certificate(&g, i, j).is_some()).collect();
        rep.check("extremal_positions_certified", vec![true; expected.len()], found);
        Ok(rep.finish(started))
    }

    /// Certificate search agrees with the Betti support. Non-chordal input
    /// yields a skipped report.
    pub fn support(&self, g: &Graph) -> Result<VerificationReport> {
        let n = g.vertex_count();
        if n > SUPPORT_MAX_VERTICES {
            return Err(Error::CapExceeded { what: "certificate equivalence", n, max: SUPPORT_MAX_VERTICES });
        }
        let started = Instant::now();
        let rep = VerificationReport::new("support", &[("n", n as u64), ("m", g.edge_count() as u64)]);
        if !g.is_chordal() {
            return Ok(rep.skipped("graph is not chordal").finish(started));
        }
        let mut rep = rep;
        let support = self.table(g)?.support();
        let certified = certified_positions(g)?;
        rep.check("certified_positions_eq_support", support, certified);
        Ok(rep.finish(started))
    }

    /// The tree with `p + r` vertices: `reg = r`, `projdim = p` and a single
    /// extremal Betti number at `(p, r)`.
    pub fn g_pr1(&self, p: usize, r: usize) -> Result<VerificationReport> {
        if r == 0 || r >= p {
            return Err(Error::InvalidParameters(format!("gpr1 needs 1 <= r < p, got p = {p}, r = {r}")));
        }
        if p + r > HARNESS_MAX_VERTICES {
            return Err(Error::CapExceeded { what: "gpr1 check", n: p + r, max: HARNESS_MAX_VERTICES });
        }
        let started = Instant::now();
        let g = families::g_pr1(p, r)?;
        let t = self.table(&g)?;
        let mut rep = VerificationReport::new("gpr1", &[("p", p as u64), ("r", r as u64)]);
        rep.check("tree", true, g.is_tree());
        rep.check("regularity", r, regularity(&t));
        rep.check("projective_dimension", p, projective_dimension(&t));
        rep.check("extremal_positions", vec![(p, r)], extremal_positions(&t).coordinates());
        rep.check("unique_extremal", (true, Some((p, r))), has_unique_extremal(&t));
        rep.check("certificate_found", Some((p, r)), find_certificate(&g, p, r).map(|c| c.kind));
        if p == r + 1 {
            rep.check("equals_path_star", true, g == families::path_star(r)?);
        }
        Ok(rep.finish(started))
    }

    /// `reg = indmatch` on chordal graphs; skipped otherwise.
    pub fn reg_eq_indmatch(&self, g: &Graph) -> Result<VerificationReport> {
        let started = Instant::now();
        let rep = VerificationReport::new(
            "reg-indmatch",
            &[("n", g.vertex_count() as u64), ("m", g.edge_count() as u64)],
        );
        if !g.is_chordal() {
            return Ok(rep.skipped("graph is not chordal").finish(started));
        }
        let mut rep = rep;
        let t = self.table(g)?;
        rep.check("regularity_eq_induced_matching_number", g.induced_matching_number(), regularity(&t));
        Ok(rep.finish(started))
    }
}

pub fn verify_first_step(r: usize) -> Result<VerificationReport> {
    Verifier::default().first_step(r)
}

pub fn verify_theorem(r: usize, b: usize) -> Result<VerificationReport> {
    Verifier::default().theorem(r, b)
}

pub fn verify_support(g: &Graph) -> Result<VerificationReport> {
    Verifier::default().support(g)
}

#[doc(hidden)]
pub use verify_support as verify_kimura;

pub fn verify_g_pr1(p: usize, r: usize) -> Result<VerificationReport> {
    Verifier::default().g_pr1(p, r)
}

pub fn verify_reg_eq_indmatch(g: &Graph) -> Result<VerificationReport> {
    Verifier::default().reg_eq_indmatch(g)
}

/// Positions where two tables differ, with both values.
pub fn table_diff(a: &BettiTable, b: &BettiTable) -> Vec<(usize, usize, u64, u64)> {
    let keys: BTreeSet<(usize, usize)> = a.support().union(&b.support()).copied().collect();
    keys.into_iter()
        .filter(|&(i, j)| a.get(i, j) != b.get(i, j))
        .map(|(i, j)| (i, j, a.get(i, j), b.get(i, j)))
        .collect()
}

/// Compares the tables of `g` over two fields.
pub fn field_comparison(g: &Graph, first: FieldSpec, second: FieldSpec, jobs: usize) -> Result<Vec<(usize, usize, u64, u64)>> {
    let a = betti_table_with(g, SweepOptions { field: first, jobs })?;
    let b = betti_table_with(g, SweepOptions { field: second, jobs })?;
    Ok(table_diff(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_first_steps() {
        for r in 1..=3 {
            let rep = verify_first_step(r).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
        assert!(verify_first_step(0).is_err());
        assert!(verify_first_step(7).is_err());
    }

    #[test]
    fn small_theorems() {
        for (r, b) in [(2, 2), (3, 2), (3, 3)] {
            let rep = verify_theorem(r, b).unwrap();
            assert!(rep.passed(), "({r},{b}) {:?}", rep.failures().collect::<Vec<_>>());
        }
        assert!(verify_theorem(3, 1).is_err());
        assert!(verify_theorem(6, 2).is_err());
    }

    #[test]
    fn support_skips_non_chordal() {
        let rep = verify_support(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(rep.status, Status::Skipped);
        let rep = verify_support(&families::star_triangle(2).unwrap()).unwrap();
        assert!(rep.passed());
        assert!(verify_support(&Graph::empty(11).unwrap()).is_err());
    }

    #[test]
    fn gpr1_reports() {
        for (p, r) in [(4, 2), (2, 1), (5, 3)] {
            assert!(verify_g_pr1(p, r).unwrap().passed());
        }
        assert!(verify_g_pr1(2, 2).is_err());
    }

    #[test]
    fn reg_indmatch() {
        assert!(verify_reg_eq_indmatch(&Graph::path(2).unwrap()).unwrap().passed());
        assert_eq!(verify_reg_eq_indmatch(&Graph::cycle(5).unwrap()).unwrap().status, Status::Skipped);
    }

    #[test]
    fn report_json_is_reproducible() {
        let a = verify_first_step(2).unwrap().to_json_line(false);
        let b = verify_first_step(2).unwrap().to_json_line(false);
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"claim":"first-step","params":{"r":2},"status":"pass""#));
        assert!(!a.contains("runtime_ms"));
    }

    #[test]
    fn failing_check_fails_report() {
        let mut rep = VerificationReport::new("x", &[]);
        rep.check("one", 1, 2);
        let rep = rep.finish(Instant::now());
        assert!(rep.failed());
        assert_eq!(rep.failures().count(), 1);
    }

    #[test]
    fn expected_g53_table_shape() {
        let t = g53_expected_table();
        assert_eq!(t.len(), 35);
        assert_eq!(t.get(1, 1), 24);
        assert_eq!(t.get(8, 5), 2);
    }
}
