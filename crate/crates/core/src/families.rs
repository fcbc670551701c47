//! Named graphs and the pairs of graphs with equal lift matroids that are
//! not 2-isomorphic.
//!
//! Named graphs are labeled `1..=m`. The exceptional pairs come in three
//! shapes, with `P1, ..., Pn` paths between two branch vertices `x` and `y`
//! and `e` a designated edge:
//!
//! * loop-link: `G1` has `e` as one more path from `x` to `y`; `G2` has `e` as
//!   a loop.
//! * loop-swap: `G1` has `e` as a path from `x` to `y` and `P1` closed up into
//!   a cycle through `x`; `G2` has `P1` as a path and `e` as a loop.
//! * four-vertex split: `K4` on `a, b1, b2, c` with `ac` replaced by `k >= 2`
//!   parallel edges and `f = b1b2`; `G2` exchanges the edges `ab2` and `b2c`
//!   of `G1`, so that `f` lies in the triangles `{e1, e2, f}`, `{e3, e4, f}`
//!   in `G1` and `{e1, e4, f}`, `{e2, e3, f}` in `G2`.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::is_isomorphic;
use crate::edgeset::Label;
use crate::enumerate::{gen_multigraphs, SearchRange};
use crate::error::{Error, Result};
use crate::isomorphism::{for_each_matroid_isomorphism, two_isomorphic};
use crate::matroid::lift_circuits;
use crate::multigraph::Multigraph;

/// A named graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `K_m`, edges in lexicographic order of their ends.
    Complete { m: usize },
    /// `K_2^m`.
    Banana { m: usize },
    /// `K_3^{k,l,m}`: `k` edges `01`, then `l` edges `12`, then `m` edges `20`.
    Triangle { k: usize, l: usize, m: usize },
    /// `K_4` with the edge `03` replaced by `k` parallel edges; the edge
    /// `12` opposite them is labeled 5.
    SplitK4 { k: usize },
    /// `base` with edge `label` replaced by a path of `pieces` edges, for
    /// each `(label, pieces)`; the result is relabeled `1..=m` in label
    /// order.
    Subdivision {
        base: Box<FamilySpec>,
        paths: Vec<(Label, usize)>,
    },
}

fn invalid(message: impl Into<String>) -> Error {
    Error::InvalidParameters(message.into())
}

/// Relabels `1..=m` following the current label order.
fn compact(g: &Multigraph) -> Multigraph {
    let labels: Vec<Label> = g.labels().collect();
    g.relabel(|l| labels.binary_search(&l).expect("own label") as Label + 1)
        .expect("compact labels are distinct")
}

pub fn gen(spec: &FamilySpec) -> Result<Multigraph> {
    match *spec {
        FamilySpec::Complete { m } => {
            if m == 0 || m > 11 {
                return Err(invalid("K_m needs 1 <= m <= 11"));
            }
            let pairs = (0..m).flat_map(|u| (u + 1..m).map(move |w| (u, w)));
            Multigraph::new(m, pairs.zip(1..).map(|((u, w), l)| (l, u, w)))
        }
        FamilySpec::Banana { m } => Multigraph::new(2, (1..=m as Label).map(|l| (l, 0, 1))),
        FamilySpec::Triangle { k, l, m } => {
            if k == 0 || l == 0 || m == 0 {
                return Err(invalid("K_3^{k,l,m} needs k, l, m >= 1"));
            }
            let ends = std::iter::repeat((0, 1))
                .take(k)
                .chain(std::iter::repeat((1, 2)).take(l))
                .chain(std::iter::repeat((2, 0)).take(m));
            Multigraph::new(3, ends.zip(1..).map(|((u, w), label)| (label, u, w)))
        }
        FamilySpec::SplitK4 { k } => {
            if k < 2 {
                return Err(invalid("the split K4 needs k >= 2 parallel edges"));
            }
            split_k4(k, false)
        }
        FamilySpec::Subdivision {
            ref base,
            ref paths,
        } => {
            let mut g = gen(base)?;
            for &(label, pieces) in paths {
                g = g.subdivide(label, pieces)?;
            }
            Ok(compact(&g))
        }
    }
}

/// Vertices `a = 0, b1 = 1, b2 = 2, c = 3`; edges `e1..e5` then the parallel
/// class `6..=k + 5` on `ac`. `swapped` exchanges the roles of `e2` and `e4`.
fn split_k4(k: usize, swapped: bool) -> Result<Multigraph> {
    let (e2, e4) = if swapped { ((2, 3), (0, 2)) } else { ((0, 2), (2, 3)) };
    let mut edges = vec![(1, 0, 1), (2, e2.0, e2.1), (3, 1, 3), (4, e4.0, e4.1), (5, 1, 2)];
    edges.extend((6..6 + k as Label).map(|l| (l, 0, 3)));
    Multigraph::new(4, edges)
}

/// The exceptional families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionalId {
    /// Loop-link shape with every path subdivided once; `n` paths.
    LoopLink,
    /// Loop-swap shape with every path subdivided once; `n` paths.
    LoopSwap,
    /// Loop-link shape on two vertices: `K_2^{n+1}` against `K_2^n` plus a
    /// loop.
    TwoVertex,
    /// Four-vertex split with `n` edges in total.
    FourVertexSplit,
    /// Cosimple loop-link shape, `n` paths.
    Case4a,
    /// Cosimple loop-swap shape, `n` paths.
    Case4b,
    /// Four-vertex split with `n` parallel edges.
    Case4c,
}

impl ExceptionalId {
    pub const ALL: [ExceptionalId; 7] = [
        ExceptionalId::LoopLink,
        ExceptionalId::LoopSwap,
        ExceptionalId::TwoVertex,
        ExceptionalId::FourVertexSplit,
        ExceptionalId::Case4a,
        ExceptionalId::Case4b,
        ExceptionalId::Case4c,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExceptionalId::LoopLink => "loop-link",
            ExceptionalId::LoopSwap => "loop-swap",
            ExceptionalId::TwoVertex => "two-vertex",
            ExceptionalId::FourVertexSplit => "four-vertex-split",
            ExceptionalId::Case4a => "case4a",
            ExceptionalId::Case4b => "case4b",
            ExceptionalId::Case4c => "case4c",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            ExceptionalId::FourVertexSplit => 7,
            ExceptionalId::Case4c => 2,
            _ => 3,
        }
    }

    pub fn shape(self) -> ExceptionalShape {
        match self {
            ExceptionalId::LoopLink | ExceptionalId::TwoVertex | ExceptionalId::Case4a => {
                ExceptionalShape::LoopLink
            }
            ExceptionalId::LoopSwap | ExceptionalId::Case4b => ExceptionalShape::LoopSwap,
            ExceptionalId::FourVertexSplit | ExceptionalId::Case4c => {
                ExceptionalShape::FourVertexSplit
            }
        }
    }
}

impl fmt::Display for ExceptionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExceptionalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExceptionalId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionalShape {
    LoopLink,
    LoopSwap,
    FourVertexSplit,
}

/// Paths `P1..Pn` labeled `1..=n` between vertices 0 and 1, `e = n + 1`.
/// `cycle` closes `P1` into a loop at vertex 0 in `G1`.
fn loop_pair(n: usize, cycle: bool) -> (Multigraph, Multigraph) {
    let e = n as Label + 1;
    let paths = (1..=n as Label).map(|l| (l, 0, 1));
    let g1: Vec<_> = paths
        .clone()
        .map(|(l, u, w)| if cycle && l == 1 { (l, u, u) } else { (l, u, w) })
        .chain([(e, 0, 1)])
        .collect();
    let g2: Vec<_> = paths.chain([(e, 0, 0)]).collect();
    (
        Multigraph::new(2, g1).expect("valid"),
        Multigraph::new(2, g2).expect("valid"),
    )
}

fn subdivide_paths(pair: (Multigraph, Multigraph), n: usize) -> Result<(Multigraph, Multigraph)> {
    let (mut g1, mut g2) = pair;
    for label in 1..=n as Label {
        g1 = g1.subdivide(label, 2)?;
        g2 = g2.subdivide(label, 2)?;
    }
    // e = n + 1 sorts before the path labels; move it back to the end
    let m = g1.edge_count() as Label;
    let last = |g: &Multigraph| compact(g).relabel(|l| if l == 1 { m } else { l - 1 });
    Ok((last(&g1)?, last(&g2)?))
}

/// The pair `(G1, G2)` of family `id` with parameter `n`, checked with
/// [`post_check`] before it is returned.
pub fn exceptional_pair(id: ExceptionalId, n: usize) -> Result<(Multigraph, Multigraph)> {
    if n < id.min_n() || n > 40 {
        return Err(invalid(format!(
            "{id} needs {} <= n <= 40, got {n}",
            id.min_n()
        )));
    }
    let pair = match id {
        ExceptionalId::LoopLink => subdivide_paths(loop_pair(n, false), n)?,
        ExceptionalId::LoopSwap => subdivide_paths(loop_pair(n, true), n)?,
        ExceptionalId::TwoVertex | ExceptionalId::Case4a => loop_pair(n, false),
        ExceptionalId::Case4b => loop_pair(n, true),
        ExceptionalId::FourVertexSplit => (split_k4(n - 5, false)?, split_k4(n - 5, true)?),
        ExceptionalId::Case4c => (split_k4(n, false)?, split_k4(n, true)?),
    };
    post_check(id, &pair.0, &pair.1)?;
    Ok(pair)
}

/// The designated edge of a pair built by [`exceptional_pair`]: `e` for the
/// loop shapes, `f` for the split.
pub fn designated_edge(id: ExceptionalId, g1: &Multigraph) -> Label {
    match id.shape() {
        ExceptionalShape::FourVertexSplit => 5,
        _ => g1.labels().max().expect("nonempty"),
    }
}

/// Hypotheses and signature every emitted pair must satisfy.
pub fn post_check(id: ExceptionalId, g1: &Multigraph, g2: &Multigraph) -> Result<()> {
    let fail = |what: &str| Err(Error::PostCheck(format!("{id}: {what}")));
    let lift = lift_circuits(g1);
    if lift != lift_circuits(g2) {
        return fail("lift matroids differ");
    }
    if lift.len() < 2 {
        return fail("fewer than two lift circuits");
    }
    if two_isomorphic(g1, g2)? {
        return fail("the graphs are 2-isomorphic");
    }
    if !g1.is_2_edge_connected() || !g2.is_2_edge_connected() {
        return fail("not 2-edge-connected");
    }
    let f = designated_edge(id, g1);
    match id.shape() {
        ExceptionalShape::LoopLink | ExceptionalShape::LoopSwap => {
            if g1.is_loop(f)? || !g2.is_loop(f)? {
                return fail("the designated edge must be a link of G1 and a loop of G2");
            }
            let rest = g2.delete_edge(f)?;
            let co = rest.without_isolated_vertices().cosimplify();
            let Some(n) = k2n_subdivision_order(&rest) else {
                return fail("G2 minus the loop is not a K_2^n subdivision");
            };
            if n < 3 || !is_isomorphic(&co, &gen(&FamilySpec::Banana { m: n })?) {
                return fail("G2 minus the loop is not a K_2^n subdivision with n >= 3");
            }
        }
        ExceptionalShape::FourVertexSplit => {
            for g in [g1, g2] {
                if !g.is_cosimple() || g.vertex_count() != 4 || g.loop_mask() != 0 {
                    return fail("both graphs must be cosimple and loopless on four vertices");
                }
                let k = g.edge_count() - 5;
                let contracted = g.contract_link(f)?;
                let shape = gen(&FamilySpec::Triangle { k: 2, l: 2, m: k })?;
                if !is_isomorphic(&contracted.without_isolated_vertices(), &shape) {
                    return fail("contracting f does not give K_3^{2,2,k}");
                }
            }
        }
    }
    Ok(())
}

/// `Some(n)` when `h`, ignoring isolated vertices, is a subdivision of
/// `K_2^n` with `n >= 2`: connected, loopless, two vertices of degree `n`,
/// all others of degree two, and every edge on a path between the two.
pub fn k2n_subdivision_order(h: &Multigraph) -> Option<usize> {
    let h = h.without_isolated_vertices();
    if h.edge_count() == 0 || !h.is_connected() || h.loop_mask() != 0 {
        return None;
    }
    let degrees = h.degrees();
    let branch: Vec<usize> = (0..h.vertex_count()).filter(|&v| degrees[v] != 2).collect();
    match branch.as_slice() {
        &[x, y] if degrees[x] == degrees[y] && degrees[x] >= 3 => {
            let ears = h.ear_masks();
            let covered = ears.iter().fold(0, |acc, e| acc | e);
            (ears.len() == degrees[x] && covered == h.full_mask()).then_some(degrees[x])
        }
        [] if h.vertex_count() >= 2 => Some(2),
        _ => None,
    }
}

/// Exhaustive search at one size: all labeled pairs `(G1, G2)` with `G1` in
/// `range`, `G2` any graph without isolated vertices on the same ground set,
/// equal lift matroids, at least two lift circuits, not 2-isomorphic, and
/// accepted by `keep`. One `G2` per vertex renaming.
pub fn discover<F>(range: &SearchRange, mut keep: F) -> Result<Vec<(Multigraph, Multigraph)>>
where
    F: FnMut(&Multigraph, &Multigraph) -> bool,
{
    let firsts = gen_multigraphs(range)?;
    let mut partners_range = SearchRange::new(range.max_edges.min(crate::enumerate::MAX_VERTICES), range.max_edges);
    partners_range.min_edges = range.min_edges;
    let partners = gen_multigraphs(&partners_range)?;
    let mut found = Vec::new();
    for g1 in &firsts {
        let l1 = lift_circuits(g1);
        if l1.len() < 2 {
            continue;
        }
        let mut seen = std::collections::HashSet::new();
        for s in partners.iter().filter(|s| s.edge_count() == g1.edge_count()) {
            let ls = lift_circuits(s);
            for_each_matroid_isomorphism(&ls, &l1, |map| {
                let g2 = s
                    .relabel(|l| l1.ground_labels()[map[s.index_of(l).expect("own label")]])
                    .expect("bijection");
                if seen.insert(g2.vertex_free_key())
                    && !two_isomorphic(g1, &g2).expect("same ground")
                    && keep(g1, &g2)
                {
                    found.push((g1.clone(), g2));
                }
                ControlFlow::Continue(())
            });
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let k24 = gen(&FamilySpec::Banana { m: 4 }).unwrap();
        assert_eq!((k24.vertex_count(), k24.edge_count()), (2, 4));
        let k3 = gen(&FamilySpec::Triangle { k: 1, l: 2, m: 2 }).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 5));
        let k4 = gen(&FamilySpec::Complete { m: 4 }).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        assert_eq!(k4.simplify(), k4);
        assert!(gen(&FamilySpec::Triangle { k: 0, l: 2, m: 2 }).is_err());
    }

    #[test]
    fn subdivision_recipe_is_compact() {
        let spec = FamilySpec::Subdivision {
            base: Box::new(FamilySpec::Complete { m: 4 }),
            paths: vec![(1, 2)],
        };
        let g = gen(&spec).unwrap();
        assert_eq!(g.labels().collect::<Vec<_>>(), (1..=7).collect::<Vec<_>>());
        assert_eq!(g.ears().unwrap().len(), 6);
    }

    #[test]
    fn every_family_at_its_minimum() {
        for id in ExceptionalId::ALL {
            let (g1, g2) = exceptional_pair(id, id.min_n()).unwrap();
            assert_eq!(g1.ground(), g2.ground(), "{id}");
            assert!(exceptional_pair(id, id.min_n() - 1).is_err());
        }
    }

    #[test]
    fn post_check_rejects_single_circuit() {
        let (g1, g2) = loop_pair(2, false);
        assert!(matches!(
            post_check(ExceptionalId::TwoVertex, &g1, &g2),
            Err(Error::PostCheck(_))
        ));
    }

    #[test]
    fn k2n_detector() {
        assert_eq!(k2n_subdivision_order(&gen(&FamilySpec::Banana { m: 4 }).unwrap()), Some(4));
        let sub = gen(&FamilySpec::Subdivision {
            base: Box::new(FamilySpec::Banana { m: 3 }),
            paths: vec![(1, 3), (2, 2)],
        })
        .unwrap();
        assert_eq!(k2n_subdivision_order(&sub), Some(3));
        assert_eq!(k2n_subdivision_order(&gen(&FamilySpec::Complete { m: 4 }).unwrap()), None);
        // a theta between 0 and 1 with a closed path hung on each end
        let hung = Multigraph::new(
            6,
            [(1, 0, 1), (2, 0, 1), (3, 0, 2), (4, 2, 3), (5, 3, 0), (6, 1, 4), (7, 4, 5), (8, 5, 1)],
        )
        .unwrap();
        assert_eq!(k2n_subdivision_order(&hung), None);
        let bowtie = Multigraph::new(5, [(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 0, 3), (5, 3, 4), (6, 4, 0)]).unwrap();
        assert_eq!(k2n_subdivision_order(&bowtie), None);
    }
}
