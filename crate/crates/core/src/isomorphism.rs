//! Whitney 2-isomorphism: the three moves, the labeled decision procedure,
//! replayable move certificates, and edge bijections between matroids.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::edgeset::{bits, full_mask, subsets, EdgeSet, Label, Mask};
use crate::error::{Error, Result};
use crate::matroid::CircuitFamily;
use crate::multigraph::{Edge, Multigraph};

/// Default bound on the number of moves in a certificate search.
pub const DEFAULT_DEPTH: usize = 6;

fn vertex_mask(g: &Multigraph, mask: Mask) -> u64 {
    bits(mask).fold(0, |acc, i| {
        let e = g.edges()[i];
        acc | (1 << e.u) | (1 << e.v)
    })
}

/// Re-glues `G|X1` and `G|X2` with `u1` and `u2` exchanged on the `X2` side.
pub fn whitney_switch(g: &Multigraph, x1: &EdgeSet, u1: usize, u2: usize) -> Result<Multigraph> {
    let mask = g.mask_of(x1)?;
    switch_mask(g, mask, u1, u2)
}

fn switch_mask(g: &Multigraph, x1: Mask, u1: usize, u2: usize) -> Result<Multigraph> {
    if g.vertex_count() > 64 {
        return Err(Error::InvalidSwitch("more than 64 vertices".into()));
    }
    let x2 = g.full_mask() & !x1;
    let shared = vertex_mask(g, x1) & vertex_mask(g, x2);
    let expected = if u1 < 64 && u2 < 64 && u1 != u2 {
        (1u64 << u1) | (1 << u2)
    } else {
        0
    };
    if expected == 0 || shared != expected {
        return Err(Error::InvalidSwitch(format!(
            "the two sides must share exactly the vertices {u1} and {u2}, they share {:?}",
            bits(shared).collect::<Vec<_>>()
        )));
    }
    let swap = |x: usize| match x {
        _ if x == u1 => u2,
        _ if x == u2 => u1,
        _ => x,
    };
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if x2 & (1 << i) != 0 {
                Edge::new(e.label, swap(e.u), swap(e.v))
            } else {
                *e
            }
        })
        .collect();
    Ok(Multigraph::from_valid(g.vertex_count(), edges))
}

fn same_ground(g1: &Multigraph, g2: &Multigraph) -> Result<()> {
    if g1.labels().eq(g2.labels()) {
        Ok(())
    } else {
        Err(Error::GroundMismatch)
    }
}

/// Labeled 2-isomorphism: the two graphs have the same cycles.
pub fn two_isomorphic(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    same_ground(g1, g2)?;
    Ok(g1.cycle_masks() == g2.cycle_masks())
}

/// One step of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// See [`whitney_switch`].
    WhitneySwitch { x1: EdgeSet, u1: usize, u2: usize },
    /// Glues two vertices of different components; the larger index goes
    /// away and the indices above it shift down.
    IdentifyVertices { a: usize, b: usize },
    /// Pulls every block apart at its cut vertices. Blocks are numbered by
    /// their smallest label and keep the relative order of their vertices.
    SplitIntoBlocks,
}

impl Move {
    pub fn apply(&self, g: &Multigraph) -> Result<Multigraph> {
        match self {
            Move::WhitneySwitch { x1, u1, u2 } => whitney_switch(g, x1, *u1, *u2),
            Move::IdentifyVertices { a, b } => identify_vertices(g, *a, *b),
            Move::SplitIntoBlocks => Ok(split_into_blocks(g, &graphic_components(g))),
        }
    }
}

pub fn identify_vertices(g: &Multigraph, a: usize, b: usize) -> Result<Multigraph> {
    let n = g.vertex_count();
    for v in [a, b] {
        if v >= n {
            return Err(Error::UnknownVertex {
                vertex: v,
                vertex_count: n,
            });
        }
    }
    let ids = g.component_ids();
    if ids[a] == ids[b] {
        return Err(Error::InvalidParameters(format!(
            "vertices {a} and {b} lie in the same component"
        )));
    }
    Ok(g.identify(a, b, None))
}

/// Components of `M(G)` as edge masks: the blocks of `G`, with every loop and
/// every bridge on its own.
pub fn graphic_components(g: &Multigraph) -> Vec<Mask> {
    let m = g.edge_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in g.cycle_masks() {
        let mut it = bits(c);
        if let Some(first) = it.next() {
            for i in it {
                let (ra, rb) = (find(&mut parent, first), find(&mut parent, i));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Mask> = vec![0; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        groups[r] |= 1 << i;
    }
    groups.retain(|&g| g != 0);
    groups.sort_by_key(|g| g.trailing_zeros());
    groups
}

fn split_into_blocks(g: &Multigraph, blocks: &[Mask]) -> Multigraph {
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut offset = 0;
    for &block in blocks {
        let sub = g.subgraph_on_mask(block);
        for e in sub.graph.edges() {
            edges.push(Edge::new(e.label, e.u + offset, e.v + offset));
        }
        offset += sub.graph.vertex_count();
    }
    Multigraph::from_valid(offset, edges)
}

/// A replayable sequence of moves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchCertificate {
    pub moves: Vec<Move>,
}

impl SwitchCertificate {
    /// Applies the moves to `source` after dropping its isolated vertices.
    pub fn replay(&self, source: &Multigraph) -> Result<Multigraph> {
        self.moves
            .iter()
            .try_fold(source.without_isolated_vertices(), |g, m| m.apply(&g))
    }

    /// The replay ends at `target`, up to vertex renaming.
    pub fn verify(&self, source: &Multigraph, target: &Multigraph) -> bool {
        self.replay(source)
            .map(|g| g.equal_up_to_vertex_renaming(target))
            .unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CertificateOutcome {
    Found { certificate: SwitchCertificate },
    /// No sequence of moves of any length reaches the target.
    NotFound,
    /// Nothing within the depth bound reaches the target, but the search
    /// was cut off.
    BoundExceeded { depth_limit: usize },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&SwitchCertificate> {
        match self {
            CertificateOutcome::Found { certificate } => Some(certificate),
            _ => None,
        }
    }
}

/// Breadth-first search over the moves from one source, reusable for many
/// targets. States are graphs up to vertex renaming.
pub struct CertificateSearch {
    source: Multigraph,
    depth_limit: usize,
    nodes: Vec<(Multigraph, Option<(usize, Move)>)>,
    index: HashMap<Vec<Mask>, usize>,
    cycles: Vec<Mask>,
    truncated: bool,
}

impl CertificateSearch {
    /// Explores every state within `depth_limit` moves of `source`.
    pub fn run(source: &Multigraph, depth_limit: usize) -> Self {
        let mut search = Self::start(source, depth_limit);
        search.explore(|_| false);
        search
    }

    fn start(source: &Multigraph, depth_limit: usize) -> Self {
        let start = source.without_isolated_vertices();
        let mut index = HashMap::new();
        index.insert(start.vertex_free_key(), 0);
        CertificateSearch {
            source: source.clone(),
            depth_limit,
            cycles: start.cycle_masks(),
            nodes: vec![(start, None)],
            index,
            truncated: false,
        }
    }

    /// Runs until `stop` accepts a newly reached state or the bound is hit.
    fn explore<F: FnMut(&Multigraph) -> bool>(&mut self, mut stop: F) -> Option<usize> {
        if stop(&self.nodes[0].0) {
            return Some(0);
        }
        let blocks = graphic_components(&self.nodes[0].0);
        let mut frontier = VecDeque::from([0usize]);
        for _ in 0..self.depth_limit {
            let mut next = VecDeque::new();
            while let Some(at) = frontier.pop_front() {
                let g = self.nodes[at].0.clone();
                for (child, mv) in neighbours(&g, &blocks) {
                    let key = child.vertex_free_key();
                    if self.index.contains_key(&key) {
                        continue;
                    }
                    let id = self.nodes.len();
                    self.index.insert(key, id);
                    let hit = stop(&child);
                    self.nodes.push((child, Some((at, mv))));
                    if hit {
                        return Some(id);
                    }
                    next.push_back(id);
                }
            }
            frontier = next;
            if frontier.is_empty() {
                return None;
            }
        }
        self.truncated = frontier.iter().any(|&at| {
            neighbours(&self.nodes[at].0, &blocks)
                .any(|(child, _)| !self.index.contains_key(&child.vertex_free_key()))
        });
        None
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    /// Number of distinct states reached.
    pub fn state_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn states(&self) -> impl Iterator<Item = &Multigraph> {
        self.nodes.iter().map(|(g, _)| g)
    }

    /// States with unreached neighbours remained at the depth bound.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn certificate_to(&self, mut id: usize) -> SwitchCertificate {
        let mut moves = Vec::new();
        while let Some((parent, mv)) = &self.nodes[id].1 {
            moves.push(mv.clone());
            id = *parent;
        }
        moves.reverse();
        SwitchCertificate { moves }
    }

    pub fn lookup(&self, target: &Multigraph) -> CertificateOutcome {
        if !self.source.labels().eq(target.labels()) || target.cycle_masks() != self.cycles {
            return CertificateOutcome::NotFound;
        }
        match self.index.get(&target.vertex_free_key()) {
            Some(&id) => {
                let certificate = self.certificate_to(id);
                debug_assert!(certificate.verify(&self.source, target));
                CertificateOutcome::Found { certificate }
            }
            None if self.truncated => CertificateOutcome::BoundExceeded {
                depth_limit: self.depth_limit,
            },
            None => CertificateOutcome::NotFound,
        }
    }
}

/// Moves applicable to `g`, each with the state it produces. `blocks` are the
/// components of `M(g)`, which no move changes.
fn neighbours<'a>(
    g: &'a Multigraph,
    blocks: &'a [Mask],
) -> impl Iterator<Item = (Multigraph, Move)> + 'a {
    let m = g.edge_count();
    let n = g.vertex_count();
    let all = full_mask(m);
    // X1 never contains edge 0: swapping on the other side gives the same
    // graph up to renaming.
    let switches = subsets(all & !1)
        .filter(move |&x1| x1 != 0)
        .filter_map(move |x1| {
            let shared = vertex_mask(g, x1) & vertex_mask(g, all & !x1);
            if shared.count_ones() != 2 {
                return None;
            }
            let u1 = shared.trailing_zeros() as usize;
            let u2 = 63 - shared.leading_zeros() as usize;
            let child = switch_mask(g, x1, u1, u2).ok()?;
            Some((
                child,
                Move::WhitneySwitch {
                    x1: g.edge_set(x1),
                    u1,
                    u2,
                },
            ))
        });
    let ids = g.component_ids();
    let identifications = (0..n).flat_map(move |a| {
        let ids = ids.clone();
        (a + 1..n)
            .filter(move |&b| ids[a] != ids[b])
            .map(move |b| (g.identify(a, b, None), Move::IdentifyVertices { a, b }))
    });
    let split = split_into_blocks(g, blocks);
    let split = (split.vertex_count() != n).then_some((split, Move::SplitIntoBlocks));
    switches.chain(identifications).chain(split)
}

/// Bounded breadth-first search for a move sequence from `g1` to `g2`.
///
/// Returns `NotFound` at once when the cycle families differ, since every
/// move preserves them.
pub fn find_switch_certificate(
    g1: &Multigraph,
    g2: &Multigraph,
    depth_limit: usize,
) -> Result<CertificateOutcome> {
    if !two_isomorphic(g1, g2)? {
        return Ok(CertificateOutcome::NotFound);
    }
    let target = g2.vertex_free_key();
    let mut search = CertificateSearch::start(g1, depth_limit);
    match search.explore(|g| g.vertex_free_key() == target) {
        Some(id) => {
            let certificate = search.certificate_to(id);
            if !certificate.verify(g1, g2) {
                return Err(Error::InvalidSwitch("certificate failed to replay".into()));
            }
            Ok(CertificateOutcome::Found { certificate })
        }
        None if search.truncated => Ok(CertificateOutcome::BoundExceeded { depth_limit }),
        None => Ok(CertificateOutcome::NotFound),
    }
}

/// Edge sets of all spanning trees (spanning forests of the non-trivial part
/// for a single vertex).
pub fn spanning_trees(g: &Multigraph) -> Vec<Mask> {
    let (v, c) = g.span_counts(g.full_mask());
    let rank = v - c;
    subsets(g.full_mask())
        .filter(|&x| x.count_ones() as usize == rank && g.cyclomatic(x) == 0)
        .collect()
}

/// Compares the spanning-tree families of two connected graphs on the same
/// ground set and vertex count.
pub fn spanning_tree_sets_equal(g1: &Multigraph, g2: &Multigraph) -> Result<bool> {
    same_ground(g1, g2)?;
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::Disconnected);
    }
    if g1.vertex_count() != g2.vertex_count() {
        return Err(Error::Hypothesis("vertex counts differ".into()));
    }
    let mut a = spanning_trees(g1);
    let mut b = spanning_trees(g2);
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

/// Per-element invariant: number of circuits through the element, by size.
fn element_profiles(family: &CircuitFamily) -> Vec<Vec<usize>> {
    let n = family.ground_labels().len();
    let mut profiles = vec![vec![0usize; n + 1]; n];
    for &c in family.circuit_masks() {
        let size = c.count_ones() as usize;
        for i in bits(c) {
            profiles[i][size] += 1;
        }
    }
    profiles
}

/// Visits every bijection of ground indices `a -> b` carrying circuits onto
/// circuits. `map[i]` is the index in `b` of element `i` of `a`.
pub fn for_each_matroid_isomorphism<F>(a: &CircuitFamily, b: &CircuitFamily, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = a.ground_labels().len();
    if n != b.ground_labels().len() || a.len() != b.len() {
        return;
    }
    let pa = element_profiles(a);
    let pb = element_profiles(b);
    let mut sorted_a = pa.clone();
    let mut sorted_b = pb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| pa[i] == pb[j]).collect())
        .collect();
    // circuits of a whose largest element is i get checked once i is placed
    let mut closing: Vec<Vec<Mask>> = vec![Vec::new(); n];
    for &c in a.circuit_masks() {
        closing[63 - c.leading_zeros() as usize].push(c);
    }
    let targets: HashSet<Mask> = b.circuit_masks().iter().copied().collect();
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    let _ = assign(0, &candidates, &closing, &targets, &mut map, &mut used, &mut visit);
}

fn assign<F>(
    i: usize,
    candidates: &[Vec<usize>],
    closing: &[Vec<Mask>],
    targets: &HashSet<Mask>,
    map: &mut [usize],
    used: &mut u64,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if i == map.len() {
        return visit(map);
    }
    for &j in &candidates[i] {
        if *used & (1 << j) != 0 {
            continue;
        }
        map[i] = j;
        let image_ok = closing[i]
            .iter()
            .all(|&c| targets.contains(&bits(c).fold(0, |acc, k| acc | (1u64 << map[k]))));
        if image_ok {
            *used |= 1 << j;
            let flow = assign(i + 1, candidates, closing, targets, map, used, visit);
            *used &= !(1 << j);
            flow?;
        }
    }
    map[i] = usize::MAX;
    ControlFlow::Continue(())
}

/// All label bijections `ground(a) -> ground(b)` carrying circuits onto
/// circuits, each as `(label in a, label in b)` pairs sorted by the first.
pub fn matroid_isomorphisms(a: &CircuitFamily, b: &CircuitFamily) -> Vec<Vec<(Label, Label)>> {
    let mut out = Vec::new();
    for_each_matroid_isomorphism(a, b, |map| {
        out.push(
            map.iter()
                .enumerate()
                .map(|(i, &j)| (a.ground_labels()[i], b.ground_labels()[j]))
                .collect(),
        );
        ControlFlow::Continue(())
    });
    out
}

pub fn are_isomorphic_matroids(a: &CircuitFamily, b: &CircuitFamily) -> bool {
    let mut found = false;
    for_each_matroid_isomorphism(a, b, |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}
