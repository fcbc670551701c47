//! Exhaustive generation of small multigraphs up to isomorphism, the search
//! for labeled pairs with equal lift matroids, and sweeps that check every
//! claim of the classification over a range.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, from_code, Code};
use crate::classify::{
    check_cut_edge_transfer, check_ear_transfer, check_loop_corollary, check_loop_link_signature,
    classify_pair, corollary_guard, Case,
};
use crate::edgeset::{permute_mask, subsets, Label, Mask, MAX_EDGES};
use crate::error::{Error, Result};
use crate::isomorphism::{
    for_each_matroid_isomorphism, spanning_trees, two_isomorphic, CertificateSearch, DEFAULT_DEPTH,
};
use crate::matroid::{
    check_minor_identities, graphic_circuits, is_independent_lift_mask, lift_circuit_shape,
    lift_circuits, rank_graphic_mask, rank_lift_mask, CircuitFamily,
};
use crate::multigraph::{Edge, Multigraph};

/// Largest vertex count accepted by [`gen_multigraphs`].
pub const MAX_VERTICES: usize = 8;

/// Which graphs a sweep covers. Graphs never have isolated vertices, except
/// the single-vertex graph with no edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRange {
    pub max_vertices: usize,
    pub max_edges: usize,
    #[serde(default)]
    pub min_vertices: usize,
    #[serde(default)]
    pub min_edges: usize,
    #[serde(default)]
    pub connected: bool,
    #[serde(default)]
    pub two_edge_connected: bool,
    #[serde(default)]
    pub cosimple: bool,
    #[serde(default)]
    pub loopless: bool,
}

impl SearchRange {
    pub fn new(max_vertices: usize, max_edges: usize) -> Self {
        SearchRange {
            max_vertices,
            max_edges,
            min_vertices: 0,
            min_edges: 0,
            connected: false,
            two_edge_connected: false,
            cosimple: false,
            loopless: false,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn two_edge_connected(mut self) -> Self {
        self.two_edge_connected = true;
        self
    }

    pub fn cosimple(mut self) -> Self {
        self.cosimple = true;
        self
    }

    pub fn loopless(mut self) -> Self {
        self.loopless = true;
        self
    }

    pub fn min_vertices(mut self, v: usize) -> Self {
        self.min_vertices = v;
        self
    }

    pub fn min_edges(mut self, m: usize) -> Self {
        self.min_edges = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_vertices > MAX_VERTICES {
            return Err(Error::InvalidParameters(format!(
                "at most {MAX_VERTICES} vertices are supported"
            )));
        }
        if self.max_edges > MAX_EDGES {
            return Err(Error::TooManyEdges(self.max_edges));
        }
        if self.min_vertices > self.max_vertices || self.min_edges > self.max_edges {
            return Err(Error::InvalidParameters("empty range".into()));
        }
        Ok(())
    }

    /// The output filter, not counting the vertex and edge limits.
    pub fn admits(&self, g: &Multigraph) -> bool {
        g.vertex_count() >= self.min_vertices
            && g.vertex_count() <= self.max_vertices
            && g.edge_count() >= self.min_edges
            && g.edge_count() <= self.max_edges
            && (!self.connected || g.is_connected())
            && (!self.loopless || g.loop_mask() == 0)
            && (!self.two_edge_connected || g.is_2_edge_connected())
            && (!self.cosimple || g.is_cosimple())
    }
}

/// Every graph in `range` exactly once up to isomorphism, in canonical form,
/// ordered by edge count and then by canonical code.
pub fn gen_multigraphs(range: &SearchRange) -> Result<Vec<Multigraph>> {
    range.validate()?;
    let mut out = Vec::new();
    for level in levels(range) {
        out.extend(
            level
                .iter()
                .map(|code| from_code(code))
                .filter(|g| range.admits(g)),
        );
    }
    Ok(out)
}

/// Canonical codes of all graphs with `0..=max_edges` edges that the
/// generator grows from. Level 0 is the single vertex in connected mode and
/// the empty graph otherwise; the empty graph is reported as a single vertex.
fn levels(range: &SearchRange) -> Vec<Vec<Code>> {
    let single = canonical_code(&Multigraph::empty(1));
    let seed = if range.connected {
        single.clone()
    } else {
        Vec::new()
    };
    let mut levels = vec![vec![seed]];
    for _ in 0..range.max_edges {
        let previous = levels.last().expect("seeded");
        let mut next: Vec<Code> = previous
            .par_iter()
            .flat_map_iter(|code| children(&from_code(code), range))
            .collect::<HashSet<Code>>()
            .into_iter()
            .collect();
        next.sort();
        levels.push(next);
    }
    if !range.connected && range.max_vertices >= 1 {
        levels[0] = vec![single];
    } else if range.max_vertices == 0 {
        levels[0].clear();
    }
    levels
}

/// One more edge: between present vertices, to one new vertex, or (without
/// the connectivity constraint) as a loop on, or link between, new vertices.
fn children(g: &Multigraph, range: &SearchRange) -> Vec<Code> {
    let n = g.vertex_count();
    let mut options: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..n {
        for w in u..n {
            options.push((n, u, w));
        }
        options.push((n + 1, u, n));
    }
    if !range.connected {
        options.push((n + 1, n, n));
        options.push((n + 2, n, n + 1));
    }
    let label = g.edges().iter().map(|e| e.label).max().unwrap_or(0) + 1;
    options
        .into_iter()
        .filter(|&(size, u, w)| size <= range.max_vertices && !(range.loopless && u == w))
        .map(|(size, u, w)| {
            let mut edges = g.edges().to_vec();
            edges.push(Edge::new(label, u, w));
            canonical_code(&Multigraph::from_valid(size, edges))
        })
        .collect::<HashSet<_>>()
        .into_iter()
        .collect()
}

/// The claims a sweep can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Deletion and contraction identities of the lift matroid, every edge.
    MinorIdentities,
    /// A loop shared by both graphs forces 2-isomorphism.
    LoopCorollary,
    /// Ears agree once every series class is an ear.
    EarTransfer,
    /// Cut-edges agree.
    CutEdgeTransfer,
    /// Every qualifying pair gets a case other than `unclassified`.
    TheoremTotality,
    /// Five or more vertices after cosimplification force 2-isomorphism.
    CorollaryGuard,
    /// Circuit elimination, and circuits are exactly the two-cycle shapes.
    CircuitAxioms,
    /// Rank and independence formulas agree with the circuits.
    OracleAgreement,
    /// Bridgeless connected graphs with two or more lift circuits have
    /// lift rank `|V|`.
    RankClaim,
    /// A link of one graph that is a loop of the other leaves a `K_2^n`
    /// subdivision, `n >= 3`, on the loop side.
    LoopLinkSignature,
    /// On connected graphs: equal cycles, equal spanning trees and reachable
    /// by moves are the same relation.
    WhitneyEquivalence,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::MinorIdentities,
        Check::LoopCorollary,
        Check::EarTransfer,
        Check::CutEdgeTransfer,
        Check::TheoremTotality,
        Check::CorollaryGuard,
        Check::CircuitAxioms,
        Check::OracleAgreement,
        Check::RankClaim,
        Check::LoopLinkSignature,
        Check::WhitneyEquivalence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::MinorIdentities => "minor-identities",
            Check::LoopCorollary => "loop-corollary",
            Check::EarTransfer => "ear-transfer",
            Check::CutEdgeTransfer => "cut-edge-transfer",
            Check::TheoremTotality => "theorem-totality",
            Check::CorollaryGuard => "corollary-guard",
            Check::CircuitAxioms => "circuit-axioms",
            Check::OracleAgreement => "oracle-agreement",
            Check::RankClaim => "rank-claim",
            Check::LoopLinkSignature => "loop-link-signature",
            Check::WhitneyEquivalence => "whitney-equivalence",
        }
    }

    fn is_pair_check(self) -> bool {
        matches!(
            self,
            Check::LoopCorollary
                | Check::EarTransfer
                | Check::CutEdgeTransfer
                | Check::TheoremTotality
                | Check::CorollaryGuard
                | Check::LoopLinkSignature
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown check `{s}`")))
    }
}

/// A labeled pair with equal lift matroids that is not 2-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualLiftPair {
    pub g1: Multigraph,
    pub g2: Multigraph,
    /// `(label in the enumerated graph, label in g2)`: how `g2` was
    /// relabeled so that its lift matroid equals that of `g1`.
    pub relabeling: Vec<(Label, Label)>,
    /// Distinct labeled `g2` (up to vertex renaming) for the same two
    /// enumerated graphs; `g2` is the first.
    pub variants: usize,
}

/// Graphs with their lift matroids, grouped by an isomorphism invariant of
/// the matroid.
struct Prepared {
    graphs: Vec<Multigraph>,
    lifts: Vec<CircuitFamily>,
    buckets: Vec<Vec<usize>>,
}

fn matroid_key(m: &CircuitFamily) -> (usize, Vec<Vec<usize>>) {
    let n = m.ground_labels().len();
    let mut profiles = vec![vec![0usize; n + 1]; n];
    for &c in m.circuit_masks() {
        for i in crate::edgeset::bits(c) {
            profiles[i][c.count_ones() as usize] += 1;
        }
    }
    profiles.sort();
    (m.len(), profiles)
}

fn prepare(graphs: Vec<Multigraph>, min_circuits: usize) -> Prepared {
    let lifts: Vec<CircuitFamily> = graphs.par_iter().map(lift_circuits).collect();
    let mut groups: BTreeMap<(usize, (usize, Vec<Vec<usize>>)), Vec<usize>> = BTreeMap::new();
    for (i, lift) in lifts.iter().enumerate() {
        if lift.len() >= min_circuits {
            groups
                .entry((graphs[i].edge_count(), matroid_key(lift)))
                .or_default()
                .push(i);
        }
    }
    Prepared {
        graphs,
        lifts,
        buckets: groups.into_values().collect(),
    }
}

/// Every labeled partner of `graphs[i]` built from `graphs[j]`: one per
/// vertex renaming, in discovery order, with the relabeling used.
fn partners(p: &Prepared, i: usize, j: usize) -> Vec<(Multigraph, Vec<(Label, Label)>)> {
    let (gi, gj) = (&p.graphs[i], &p.graphs[j]);
    let target = &p.lifts[i];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for_each_matroid_isomorphism(&p.lifts[j], target, |map| {
        let relabeling: Vec<(Label, Label)> = gj
            .labels()
            .enumerate()
            .map(|(k, l)| (l, target.ground_labels()[map[k]]))
            .collect();
        let g2 = gj
            .relabel(|l| relabeling[gj.index_of(l).expect("own label")].1)
            .expect("bijection");
        if seen.insert(g2.vertex_free_key()) {
            out.push((g2, relabeling));
        }
        ControlFlow::Continue(())
    });
    let _ = gi;
    out
}

/// Index pairs `i <= j` sharing a bucket.
fn bucket_pairs(p: &Prepared) -> Vec<(usize, usize)> {
    p.buckets
        .iter()
        .flat_map(|b| {
            b.iter()
                .enumerate()
                .flat_map(move |(x, &i)| b[x..].iter().map(move |&j| (i, j)))
        })
        .collect()
}

/// All labeled pairs in `range` with equal lift matroids, at least two lift
/// circuits, and not 2-isomorphic. One pair per unordered pair of
/// enumerated graphs, with the number of labeled variants.
pub fn find_equal_lift_pairs(range: &SearchRange) -> Result<Vec<EqualLiftPair>> {
    let p = prepare(gen_multigraphs(range)?, 2);
    Ok(bucket_pairs(&p)
        .into_par_iter()
        .filter_map(|(i, j)| {
            let gi = &p.graphs[i];
            let mut found = partners(&p, i, j)
                .into_iter()
                .filter(|(g2, _)| !two_isomorphic(gi, g2).expect("same ground"));
            let (g2, relabeling) = found.next()?;
            Some(EqualLiftPair {
                g1: gi.clone(),
                g2,
                relabeling,
                variants: 1 + found.count(),
            })
        })
        .collect())
}

/// One failed claim, with the graphs that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub message: String,
    pub graphs: Vec<Multigraph>,
}

impl Violation {
    fn size(&self) -> (usize, usize, String) {
        (
            self.graphs.iter().map(Multigraph::edge_count).max().unwrap_or(0),
            self.graphs.iter().map(Multigraph::vertex_count).max().unwrap_or(0),
            serde_json::to_string(&self.graphs).expect("graphs serialize"),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    /// Instances the claim was evaluated on.
    pub checked: usize,
    /// Instances outside the claim's hypotheses.
    pub skipped: usize,
    pub violations: usize,
}

/// Largest number of violations kept per check; the smallest are kept.
pub const VIOLATIONS_KEPT: usize = 10;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub range: SearchRange,
    pub checks: Vec<Check>,
    pub graphs: usize,
    /// Labeled pairs with equal lift matroids and at least two lift
    /// circuits, one per vertex renaming of the second graph.
    pub equal_lift_pairs: usize,
    /// Those pairs by case; present when `theorem-totality` ran.
    pub case_counts: BTreeMap<String, usize>,
    pub exceptional_pairs: Vec<ExceptionalFinding>,
    pub stats: BTreeMap<Check, CheckStats>,
    pub violations: Vec<Violation>,
    pub wall_time_ms: u64,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.stats.values().all(|s| s.violations == 0)
    }

    pub fn stat(&self, check: Check) -> CheckStats {
        self.stats.get(&check).cloned().unwrap_or_default()
    }

    /// Pairs per case name.
    pub fn count(&self, case: &str) -> usize {
        self.case_counts.get(case).copied().unwrap_or(0)
    }
}

/// A non-2-isomorphic pair found by the sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalFinding {
    pub case: Case,
    #[serde(flatten)]
    pub pair: EqualLiftPair,
}

#[derive(Default)]
struct Tally {
    stats: BTreeMap<Check, CheckStats>,
    violations: Vec<Violation>,
}

impl Tally {
    fn record(&mut self, check: Check, outcome: Outcome, graphs: &[&Multigraph]) {
        let stats = self.stats.entry(check).or_default();
        match outcome {
            Outcome::Holds => stats.checked += 1,
            Outcome::Skipped => stats.skipped += 1,
            Outcome::Fails(message) => {
                stats.checked += 1;
                stats.violations += 1;
                self.violations.push(Violation {
                    check,
                    message,
                    graphs: graphs.iter().map(|g| (*g).clone()).collect(),
                });
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (check, s) in other.stats {
            let mine = self.stats.entry(check).or_default();
            mine.checked += s.checked;
            mine.skipped += s.skipped;
            mine.violations += s.violations;
        }
        self.violations.extend(other.violations);
        self
    }
}

enum Outcome {
    Holds,
    Skipped,
    Fails(String),
}

fn holds(ok: bool, message: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Fails(message())
    }
}

fn from_result(result: Result<bool>, message: impl FnOnce() -> String) -> Outcome {
    match result {
        Ok(ok) => holds(ok, message),
        Err(Error::Hypothesis(_) | Error::Disconnected) => Outcome::Skipped,
        Err(e) => Outcome::Fails(e.to_string()),
    }
}

fn graph_checks(g: &Multigraph, lift: &CircuitFamily, checks: &[Check]) -> Tally {
    let mut tally = Tally::default();
    let all = g.full_mask();
    for &check in checks {
        match check {
            Check::MinorIdentities => {
                for e in g.labels() {
                    let outcome = match check_minor_identities(g, e) {
                        Ok(report) => holds(report.holds(), || format!("identities fail at edge {e}: {report:?}")),
                        Err(err) => Outcome::Fails(err.to_string()),
                    };
                    tally.record(check, outcome, &[g]);
                }
            }
            Check::CircuitAxioms => {
                let elimination = lift.elimination_failure();
                let shapes = subsets(all).find(|&x| {
                    lift.circuit_masks().binary_search(&x).is_ok() != lift_circuit_shape(g, x).is_some()
                });
                let outcome = match (elimination, shapes) {
                    (None, None) => Outcome::Holds,
                    (Some(f), _) => Outcome::Fails(format!("elimination fails: {f:?}")),
                    (_, Some(x)) => Outcome::Fails(format!(
                        "circuits and two-cycle shapes disagree on {:?}",
                        g.edge_set(x)
                    )),
                };
                tally.record(check, outcome, &[g]);
            }
            Check::OracleAgreement => {
                let graphic = graphic_circuits(g);
                let bad = subsets(all).find(|&x| {
                    is_independent_lift_mask(g, x) != lift.is_independent_mask(x)
                        || rank_lift_mask(g, x) != lift.rank_by_search(x)
                        || rank_graphic_mask(g, x) != graphic.rank_by_search(x)
                });
                tally.record(
                    check,
                    holds(bad.is_none(), || format!("rank or independence disagrees on {:?}", g.edge_set(bad.unwrap_or(0)))),
                    &[g],
                );
            }
            Check::RankClaim => {
                let outcome = if g.is_connected() && g.is_2_edge_connected() && lift.len() >= 2 {
                    let r = rank_lift_mask(g, all);
                    holds(r == g.vertex_count(), || {
                        format!("lift rank {r} but {} vertices", g.vertex_count())
                    })
                } else {
                    Outcome::Skipped
                };
                tally.record(check, outcome, &[g]);
            }
            _ => {}
        }
    }
    tally
}

/// Runs the pair checks on `(g1, g2)` in both orders. Returns the case of
/// `(g1, g2)` when the classification ran on it.
fn pair_checks(g1: &Multigraph, g2: &Multigraph, lift: &CircuitFamily, checks: &[Check], tally: &mut Tally) -> Option<Case> {
    let mut case = None;
    for (first, (a, b)) in [(true, (g1, g2)), (false, (g2, g1))] {
        for &check in checks {
            let outcome = match check {
                Check::TheoremTotality => {
                    if a.is_2_edge_connected() && lift.len() >= 2 {
                        match classify_pair(a, b) {
                            Ok(c) => {
                                let ok = c.case != Case::Unclassified;
                                if first || case.is_none() {
                                    case = Some(c.case);
                                }
                                holds(ok, || "no case applies".into())
                            }
                            Err(e) => Outcome::Fails(e.to_string()),
                        }
                    } else {
                        Outcome::Skipped
                    }
                }
                Check::LoopCorollary => from_result(check_loop_corollary(a, b), || {
                    "a shared loop but not 2-isomorphic".into()
                }),
                Check::EarTransfer => from_result(check_ear_transfer(a, b), || "ears differ".into()),
                Check::CutEdgeTransfer => from_result(check_cut_edge_transfer(a, b), || {
                    "cut-edges differ".into()
                }),
                Check::CorollaryGuard => from_result(corollary_guard(a, b), || {
                    "co(G1) has five or more vertices but the graphs are not 2-isomorphic".into()
                }),
                Check::LoopLinkSignature => {
                    if a.is_2_edge_connected() && lift.len() >= 2 {
                        from_result(check_loop_link_signature(a, b), || {
                            "loop side is not a K_2^n subdivision".into()
                        })
                    } else {
                        Outcome::Skipped
                    }
                }
                _ => continue,
            };
            tally.record(check, outcome, &[a, b]);
        }
    }
    case
}

/// Checks every claim in `checks` over `range`.
///
/// Graph checks run on every enumerated graph. Pair checks run on every
/// labeled pair with equal lift matroids and at least one lift circuit, in
/// both orders; each check applies its own hypotheses and counts the rest as
/// skipped.
pub fn sweep(range: &SearchRange, checks: &[Check]) -> Result<SweepReport> {
    let started = Instant::now();
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let graphs = gen_multigraphs(range)?;
    let count = graphs.len();
    let p = prepare(graphs, 1);

    let mut tally = p
        .graphs
        .par_iter()
        .zip(p.lifts.par_iter())
        .map(|(g, lift)| graph_checks(g, lift, &checks))
        .reduce(Tally::default, Tally::merge);

    let mut equal_lift_pairs = 0;
    let mut case_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut exceptional_pairs = Vec::new();
    if checks.iter().any(|c| c.is_pair_check()) {
        let results: Vec<(Tally, usize, BTreeMap<String, usize>, Option<ExceptionalFinding>)> =
            bucket_pairs(&p)
                .into_par_iter()
                .map(|(i, j)| {
                    let gi = &p.graphs[i];
                    let lift = &p.lifts[i];
                    let mut local = Tally::default();
                    let mut counts = BTreeMap::new();
                    let mut finding: Option<ExceptionalFinding> = None;
                    let found = partners(&p, i, j);
                    let labeled = found.len();
                    for (g2, relabeling) in found {
                        let case = pair_checks(gi, &g2, lift, &checks, &mut local);
                        if let Some(case) = &case {
                            if lift.len() >= 2 {
                                *counts.entry(case.name()).or_insert(0) += 1;
                            }
                        }
                        if lift.len() >= 2 && !two_isomorphic(gi, &g2).expect("same ground") {
                            match &mut finding {
                                Some(f) => f.pair.variants += 1,
                                None => {
                                    finding = Some(ExceptionalFinding {
                                        case: case.unwrap_or(Case::Unclassified),
                                        pair: EqualLiftPair {
                                            g1: gi.clone(),
                                            g2,
                                            relabeling,
                                            variants: 1,
                                        },
                                    })
                                }
                            }
                        }
                    }
                    let pairs = if lift.len() >= 2 { labeled } else { 0 };
                    (local, pairs, counts, finding)
                })
                .collect();
        for (local, pairs, counts, finding) in results {
            tally = tally.merge(local);
            equal_lift_pairs += pairs;
            for (k, v) in counts {
                *case_counts.entry(k).or_insert(0) += v;
            }
            exceptional_pairs.extend(finding);
        }
    }

    if checks.contains(&Check::WhitneyEquivalence) {
        tally = tally.merge(whitney_equivalence(&p.graphs, DEFAULT_DEPTH));
    }

    for &check in &checks {
        tally.stats.entry(check).or_default();
    }
    let mut violations = tally.violations;
    violations.sort_by_key(|v| (v.check, v.size()));
    let mut kept: BTreeMap<Check, usize> = BTreeMap::new();
    violations.retain(|v| {
        let n = kept.entry(v.check).or_insert(0);
        *n += 1;
        *n <= VIOLATIONS_KEPT
    });
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        range: range.clone(),
        checks,
        graphs: count,
        equal_lift_pairs,
        case_counts,
        exceptional_pairs,
        stats: tally.stats,
        violations,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

/// Relation check on the connected graphs of `graphs`, for every labeled
/// pair on a common ground set: equal cycles, equal spanning trees, and a
/// certificate of at most `depth` moves must agree.
///
/// Each enumerated graph `R` serves as the first graph; every labeled second
/// graph is a relabeling `pi(S)` of an enumerated `S` with the same numbers
/// of edges, vertices, cycles and spanning trees (otherwise both relations
/// fail for size reasons). All `pi` are tried. The certificate search runs
/// once from `R`; it must reach exactly the `pi(S)` with the cycles of `R`,
/// and never leave the cycles of `R`.
fn whitney_equivalence(graphs: &[Multigraph], depth: usize) -> Tally {
    let connected: Vec<&Multigraph> = graphs.iter().filter(|g| g.is_connected()).collect();
    struct Info {
        cycles: Vec<Mask>,
        trees: Vec<Mask>,
    }
    let info: Vec<Info> = connected
        .par_iter()
        .map(|g| {
            let mut trees = spanning_trees(g);
            trees.sort_unstable();
            Info {
                cycles: g.cycle_masks(),
                trees,
            }
        })
        .collect();
    let key = |k: usize| {
        let g = connected[k];
        let mut sizes: Vec<u32> = info[k].cycles.iter().map(|c| c.count_ones()).collect();
        sizes.sort_unstable();
        (g.edge_count(), g.vertex_count(), info[k].trees.len(), sizes)
    };
    let mut groups: HashMap<_, Vec<usize>> = HashMap::new();
    for k in 0..connected.len() {
        groups.entry(key(k)).or_default().push(k);
    }
    (0..connected.len())
        .into_par_iter()
        .map(|r| {
            let mut tally = Tally::default();
            let g = connected[r];
            let m = g.edge_count();
            let search = CertificateSearch::run(g, depth);
            let labels: Vec<Label> = g.labels().collect();
            let sound = search.states().all(|s| s.cycle_masks() == info[r].cycles);
            tally.record(
                Check::WhitneyEquivalence,
                holds(sound, || "a move changed the cycles".into()),
                &[g],
            );
            let mut reached = 0;
            let mut expected = 0;
            let mut mismatch: Option<Multigraph> = None;
            for &s in &groups[&key(r)] {
                let gs = connected[s];
                for_each_permutation(m, |pi| {
                    let mut cycles: Vec<Mask> = info[s].cycles.iter().map(|&c| permute_mask(c, pi)).collect();
                    cycles.sort_unstable();
                    let mut trees: Vec<Mask> = info[s].trees.iter().map(|&t| permute_mask(t, pi)).collect();
                    trees.sort_unstable();
                    let same_cycles = cycles == info[r].cycles;
                    let same_trees = trees == info[r].trees;
                    if same_cycles {
                        expected += 1;
                        let target = gs.relabel(|l| labels[pi[gs.index_of(l).expect("own")]]).expect("bijection");
                        if search.lookup(&target).certificate().is_some() {
                            reached += 1;
                        } else if mismatch.is_none() {
                            mismatch = Some(target);
                        }
                    }
                    if same_cycles != same_trees && mismatch.is_none() {
                        mismatch = Some(gs.relabel(|l| labels[pi[gs.index_of(l).expect("own")]]).expect("bijection"));
                    }
                });
            }
            let outcome = holds(mismatch.is_none(), || {
                format!("{reached} of {expected} 2-isomorphic relabelings reached; the relations disagree")
            });
            match &mismatch {
                Some(t) => tally.record(Check::WhitneyEquivalence, outcome, &[g, t]),
                None => tally.record(Check::WhitneyEquivalence, outcome, &[g]),
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

/// Heap's algorithm over `0..n`.
fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
