//! Which case of the classification a pair of graphs with equal lift
//! matroids falls into.
//!
//! Cases are tested in order:
//!
//! 1. the graphs are 2-isomorphic;
//! 2. they have the same series classes and both cosimplify to graphs
//!    2-isomorphic to `K4`;
//! 3. they have the same series classes and both cosimplify to graphs
//!    2-isomorphic to `K_3^{m,2,n}`, `m` in `{1, 2}`, `n >= 2`; for `n >= 3`
//!    the `n` parallel ears of `G1` are parallel in `G2` too;
//! 4. one of the exceptional shapes of [`crate::families`].
//!
//! Ears and series classes agree after the graphs are switched so that every
//! series class is an ear, and series classes are a 2-isomorphism invariant,
//! so the ear conditions are checked on series classes. Vertices are not
//! shared between the two graphs; "the same ends" is read as "parallel in both
//! cosimplifications".

use serde::{Deserialize, Serialize};

use crate::edgeset::{bits, EdgeSet, Label, Mask};
use crate::error::{Error, Result};
use crate::families::{gen, k2n_subdivision_order, ExceptionalShape, FamilySpec};
use crate::isomorphism::{are_isomorphic_matroids, find_switch_certificate, two_isomorphic, SwitchCertificate};
use crate::matroid::{graphic_circuits, lift_circuits, CircuitFamily};
use crate::multigraph::{Edge, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Case {
    TwoIsomorphic,
    K4Subdivisions,
    K3m2nSubdivisions { m: usize, n: usize },
    Exceptional { shape: ExceptionalShape },
    Unclassified,
}

impl Case {
    /// Stable name used in reports.
    pub fn name(&self) -> String {
        match self {
            Case::TwoIsomorphic => "two-isomorphic".into(),
            Case::K4Subdivisions => "k4-subdivisions".into(),
            Case::K3m2nSubdivisions { m, n } => format!("k3-{m}-2-{n}-subdivisions"),
            Case::Exceptional { shape } => {
                format!("exceptional-{}", serde_json::to_value(shape).expect("unit enum").as_str().unwrap_or(""))
            }
            Case::Unclassified => "unclassified".into(),
        }
    }
}

/// Evidence for the case found. Fields that do not apply are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    /// Series classes shared by both graphs: the common ears.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ears: Option<Vec<EdgeSet>>,
    /// `co(G1)` and `co(G2)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosimplifications: Option<(Multigraph, Multigraph)>,
    /// The ears forming the large parallel family, or the parallel class of
    /// the four-vertex split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel_ears: Option<Vec<EdgeSet>>,
    /// `e` of the loop shapes, `f` of the four-vertex split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub designated_edge: Option<Label>,
    /// The path that is a cycle of `G1` in the loop-swap shape.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_path: Option<EdgeSet>,
    /// Which graph carries the loop in the loop shapes (1 or 2).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_side: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SwitchCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub case: Case,
    pub witnesses: Witnesses,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Classification {
    fn new(case: Case, witnesses: Witnesses) -> Self {
        Classification {
            case,
            witnesses,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Search for a move certificate of this depth when the graphs are
    /// 2-isomorphic.
    pub certificate_depth: Option<usize>,
}

fn hypothesis(message: impl Into<String>) -> Error {
    Error::Hypothesis(message.into())
}

/// Checks the hypotheses of the classification and returns the common lift.
fn check_hypotheses(g1: &Multigraph, g2: &Multigraph) -> Result<CircuitFamily> {
    if !g1.labels().eq(g2.labels()) {
        return Err(Error::GroundMismatch);
    }
    let lift = lift_circuits(g1);
    if lift != lift_circuits(g2) {
        return Err(hypothesis("the lift matroids differ"));
    }
    if !g1.is_2_edge_connected() {
        return Err(hypothesis("G1 is not 2-edge-connected"));
    }
    if lift.len() < 2 {
        return Err(hypothesis("the lift matroid has fewer than two circuits"));
    }
    Ok(lift)
}

pub fn classify_pair(g1: &Multigraph, g2: &Multigraph) -> Result<Classification> {
    classify_pair_with(g1, g2, &ClassifyOptions::default())
}

pub fn classify_pair_with(
    g1: &Multigraph,
    g2: &Multigraph,
    options: &ClassifyOptions,
) -> Result<Classification> {
    check_hypotheses(g1, g2)?;
    if two_isomorphic(g1, g2)? {
        let mut witnesses = Witnesses::default();
        let mut notes = Vec::new();
        if let Some(depth) = options.certificate_depth {
            match find_switch_certificate(g1, g2, depth)? {
                crate::isomorphism::CertificateOutcome::Found { certificate } => {
                    witnesses.certificate = Some(certificate)
                }
                other => notes.push(format!("no certificate within {depth} moves: {other:?}")),
            }
        }
        return Ok(Classification {
            case: Case::TwoIsomorphic,
            witnesses,
            notes,
        });
    }
    if let Some(found) = shared_ears_case(g1, g2)? {
        return Ok(found);
    }
    if let Some(found) = loop_shape(g1, g2)? {
        return Ok(found);
    }
    let mut unclassified = Classification::new(Case::Unclassified, Witnesses::default());
    unclassified
        .notes
        .push("no case of the classification matches this pair".into());
    Ok(unclassified)
}

fn graphic_of(spec: FamilySpec) -> CircuitFamily {
    graphic_circuits(&gen(&spec).expect("valid named graph"))
}

/// Parallel classes of a loopless matroid: elements pairwise in 2-circuits.
fn matroid_parallel_classes(m: &CircuitFamily) -> Vec<Mask> {
    let n = m.ground_labels().len();
    let mut classes: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
    for &c in m.circuit_masks().iter().filter(|c| c.count_ones() == 2) {
        let (i, j) = (c.trailing_zeros() as usize, 63 - c.leading_zeros() as usize);
        let merged = classes[i] | classes[j];
        for k in bits(merged) {
            classes[k] = merged;
        }
    }
    classes.sort_unstable();
    classes.dedup();
    classes
}

/// Cases 2 and 3, and the four-vertex split of case 4.
fn shared_ears_case(g1: &Multigraph, g2: &Multigraph) -> Result<Option<Classification>> {
    let classes = g1.series_classes();
    if classes != g2.series_classes() {
        return Ok(None);
    }
    let (co1, co2) = (g1.cosimplify(), g2.cosimplify());
    if !co1.labels().eq(co2.labels()) {
        return Ok(None);
    }
    let (m1, m2) = (graphic_circuits(&co1), graphic_circuits(&co2));
    // ear of each element of co(G)
    let ear_of = |label: Label| -> EdgeSet {
        classes
            .iter()
            .find(|c| c.contains(label))
            .cloned()
            .expect("every label lies in a series class")
    };
    let ears_of_mask = |m: &CircuitFamily, mask: Mask| -> Vec<EdgeSet> {
        bits(mask).map(|i| ear_of(m.ground_labels()[i])).collect()
    };
    let mut witnesses = Witnesses {
        ears: Some(classes.clone()),
        cosimplifications: Some((co1.clone(), co2.clone())),
        ..Witnesses::default()
    };
    let size = co1.edge_count();
    let both = |shape: &CircuitFamily| {
        are_isomorphic_matroids(&m1, shape) && are_isomorphic_matroids(&m2, shape)
    };

    if size == 6 && both(&graphic_of(FamilySpec::Complete { m: 4 })) {
        return Ok(Some(Classification::new(Case::K4Subdivisions, witnesses)));
    }

    for m in [1usize, 2] {
        let Some(n) = size.checked_sub(m + 2).filter(|&n| n >= 2) else {
            continue;
        };
        if !both(&graphic_of(FamilySpec::Triangle { k: m, l: 2, m: n })) {
            continue;
        }
        if n >= 3 {
            let big = |mat: &CircuitFamily| {
                matroid_parallel_classes(mat)
                    .into_iter()
                    .find(|c| c.count_ones() as usize == n)
                    .map(|c| mat.to_edge_set(c))
            };
            let (p1, p2) = (big(&m1), big(&m2));
            if p1.is_none() || p1 != p2 {
                continue;
            }
            let p = p1.expect("checked");
            witnesses.parallel_ears = Some(p.iter().map(ear_of).collect());
        }
        return Ok(Some(Classification::new(Case::K3m2nSubdivisions { m, n }, witnesses)));
    }

    if size >= 7 && both(&graphic_of(FamilySpec::SplitK4 { k: size - 5 })) {
        let k = size - 5;
        // f: the element outside P in no triangle with an element of P
        let split_parts = |mat: &CircuitFamily| -> Option<(Mask, usize)> {
            let p = matroid_parallel_classes(mat)
                .into_iter()
                .find(|c| c.count_ones() as usize == k)?;
            let triangles: Vec<Mask> = mat
                .circuit_masks()
                .iter()
                .copied()
                .filter(|c| c.count_ones() == 3)
                .collect();
            let f = (0..mat.ground_labels().len()).find(|&i| {
                p & (1 << i) == 0 && !triangles.iter().any(|t| t & (1 << i) != 0 && t & p != 0)
            })?;
            Some((p, f))
        };
        if let (Some((p1, f1)), Some((p2, f2))) = (split_parts(&m1), split_parts(&m2)) {
            if p1 == p2 && f1 == f2 {
                witnesses.parallel_ears = Some(ears_of_mask(&m1, p1));
                witnesses.designated_edge = Some(m1.ground_labels()[f1]);
                return Ok(Some(Classification::new(
                    Case::Exceptional {
                        shape: ExceptionalShape::FourVertexSplit,
                    },
                    witnesses,
                )));
            }
        }
    }
    Ok(None)
}

/// The loop shapes: an edge is a link of one graph and a loop of the other.
/// A series class that is a closed cycle in exactly one graph, shrunk to its
/// largest edge `e` in both graphs, so that `e` is a loop on one side and a
/// link on the other. Single edges are tried whatever their series class.
fn loop_shape(g1: &Multigraph, g2: &Multigraph) -> Result<Option<Classification>> {
    let cycles1 = g1.cycle_masks();
    let cycles2 = g2.cycle_masks();
    let classes2 = g2.series_class_masks();
    let singles = (0..g1.edge_count()).map(|i| 1 << i);
    let shared = g1
        .series_class_masks()
        .into_iter()
        .filter(|c| c.count_ones() > 1 && classes2.contains(c));
    for class in singles.chain(shared) {
        if cycles1.contains(&class) == cycles2.contains(&class) {
            continue;
        }
        let labels: Vec<Label> = g1.edge_set(class).iter().collect();
        let (&e, shrink) = labels.split_last().expect("nonempty class");
        let (mut h1, mut h2) = (g1.clone(), g2.clone());
        for &l in shrink {
            h1 = h1.contract_link(l)?;
            h2 = h2.contract_link(l)?;
        }
        if let Some(found) = loop_shape_at(&h1, &h2, e)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn loop_shape_at(g1: &Multigraph, g2: &Multigraph, e: Label) -> Result<Option<Classification>> {
    {
        let l2 = g2.is_loop(e)?;
        let (link_side, loop_side, side) = if l2 { (g1, g2, 2) } else { (g2, g1, 1) };
        let rest = loop_side.delete_edge(e)?.without_isolated_vertices();
        if !k2n_subdivision_order(&rest).is_some_and(|n| n >= 3) {
            return Ok(None);
        }
        let mut witnesses = Witnesses {
            designated_edge: Some(e),
            loop_side: Some(side),
            ..Witnesses::default()
        };
        let shapes = loop_link_models(&rest, e);
        for (cycle_path, model) in shapes {
            if two_isomorphic(link_side, &model)? {
                let shape = if cycle_path.is_some() {
                    ExceptionalShape::LoopSwap
                } else {
                    ExceptionalShape::LoopLink
                };
                witnesses.cycle_path = cycle_path;
                return Ok(Some(Classification::new(Case::Exceptional { shape }, witnesses)));
            }
        }
    }
    Ok(None)
}

/// The graphs the link side may be 2-isomorphic to, built from the
/// `K_2^n` subdivision `rest` on the loop side: `e` joined to the branch
/// vertices, and optionally one path closed into a cycle.
fn loop_link_models(rest: &Multigraph, e: Label) -> Vec<(Option<EdgeSet>, Multigraph)> {
    let degrees = rest.degrees();
    let branch: Vec<usize> = (0..rest.vertex_count()).filter(|&v| degrees[v] != 2).collect();
    let (x, y) = (branch[0], branch[1]);
    let with_e = |edges: Vec<Edge>| {
        let mut triples: Vec<_> = edges.iter().map(|d| (d.label, d.u, d.v)).collect();
        triples.push((e, x, y));
        Multigraph::new(rest.vertex_count(), triples).expect("fresh label")
    };
    let mut models = vec![(None, with_e(rest.edges().to_vec()))];
    for ear in rest.ear_masks() {
        // move the end of the path at y over to x
        let edges = rest
            .edges()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                if ear & (1 << i) != 0 && (d.u == y || d.v == y) {
                    let other = if d.u == y { d.v } else { d.u };
                    Edge::new(d.label, other, x)
                } else {
                    *d
                }
            })
            .collect();
        models.push((Some(rest.edge_set(ear)), with_e(edges)));
    }
    models
}

fn common_lift(g1: &Multigraph, g2: &Multigraph) -> Result<CircuitFamily> {
    if !g1.labels().eq(g2.labels()) {
        return Err(Error::GroundMismatch);
    }
    let lift = lift_circuits(g1);
    if lift != lift_circuits(g2) {
        return Err(hypothesis("the lift matroids differ"));
    }
    Ok(lift)
}

/// An edge is a cut-edge of `G1` iff it is one of `G2`, given equal lifts and
/// at least two cycles in each graph. Also checks the finer statement: `e`
/// is a cut-edge of `G1` iff it is a cut-edge of `G2` or `G2 \ e` is a forest.
pub fn check_cut_edge_transfer(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    common_lift(g1, g2)?;
    if g1.cycle_masks().len() < 2 || g2.cycle_masks().len() < 2 {
        return Err(hypothesis("both graphs need at least two cycles"));
    }
    let (c1, c2) = (g1.cut_edge_mask(), g2.cut_edge_mask());
    let finer = (0..g1.edge_count()).all(|i| {
        let forest = g2.cyclomatic(g2.full_mask() & !(1 << i)) == 0;
        (c1 & (1 << i) != 0) == (c2 & (1 << i) != 0 || forest)
    });
    Ok(c1 == c2 && finer)
}

/// Ears of `G1` and `G2` coincide when every series class of each is an ear.
pub fn check_ear_transfer(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    let lift = common_lift(g1, g2)?;
    if lift.len() < 2 {
        return Err(hypothesis("the lift matroid has fewer than two circuits"));
    }
    for (name, g) in [("G1", g1), ("G2", g2)] {
        if !g.is_connected() || !g.is_2_edge_connected() {
            return Err(hypothesis(format!("{name} is not connected and 2-edge-connected")));
        }
        if !series_classes_are_ears(g) {
            return Err(hypothesis(format!("some series class of {name} is not an ear")));
        }
    }
    Ok(g1.ear_masks() == g2.ear_masks())
}

pub fn series_classes_are_ears(g: &Multigraph) -> bool {
    let ears = g.ear_masks();
    g.series_class_masks().iter().all(|c| ears.contains(c))
}

/// If `co(G1)` has at least five vertices the graphs are 2-isomorphic.
pub fn corollary_guard(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    let lift = common_lift(g1, g2)?;
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::Disconnected);
    }
    if lift.len() < 2 {
        return Err(hypothesis("the lift matroid has fewer than two circuits"));
    }
    Ok(g1.cosimplify().vertex_count() < 5 || two_isomorphic(g1, g2)?)
}

/// A loop shared by both graphs forces 2-isomorphism.
pub fn check_loop_corollary(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    common_lift(g1, g2)?;
    if g1.loop_mask() & g2.loop_mask() == 0 {
        return Err(hypothesis("no edge is a loop of both graphs"));
    }
    two_isomorphic(g1, g2)
}

/// When an edge is a link of one graph and a loop of the other and the
/// graphs are not 2-isomorphic, the loop side minus that edge is a `K_2^n`
/// subdivision with `n >= 3`.
pub fn check_loop_link_signature(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    common_lift(g1, g2)?;
    if two_isomorphic(g1, g2)? {
        return Ok(true);
    }
    let mismatched = g1.loop_mask() ^ g2.loop_mask();
    for i in bits(mismatched) {
        let label = g1.edges()[i].label;
        let loop_side = if g1.is_loop(label)? { g1 } else { g2 };
        let rest = loop_side.delete_edge(label)?;
        if !k2n_subdivision_order(&rest).is_some_and(|n| n >= 3) {
            return Ok(false);
        }
    }
    Ok(true)
}
