//! Edge-labeled multigraphs with loops and parallel edges.
//!
//! Graphs are immutable values: every operation returns a new graph. Edges
//! are kept sorted by label, which fixes the bit assignment used by masks
//! (see [`crate::edgeset`]). Vertex indices are `0..vertex_count`; isolated
//! vertices are allowed but carry no information for any of the matroids.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::edgeset::{bits, full_mask, EdgeSet, Label, Mask, MAX_EDGES};
use crate::error::{Error, Result};

/// Labels created by [`Multigraph::subdivide`] are `label * SUBDIVISION_STRIDE + i`
/// for the `i`-th piece, `1 <= i < SUBDIVISION_STRIDE`.
pub const SUBDIVISION_STRIDE: Label = 100;

/// Label of piece `index` (1-based) when `label` is subdivided.
pub fn subdivision_label(label: Label, index: usize) -> Option<Label> {
    if index == 0 || index >= SUBDIVISION_STRIDE as usize {
        return None;
    }
    label
        .checked_mul(SUBDIVISION_STRIDE)
        .and_then(|base| base.checked_add(index as Label))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub label: Label,
    /// Smaller endpoint.
    pub u: usize,
    /// Larger endpoint; equal to `u` for a loop.
    pub v: usize,
}

impl Edge {
    pub(crate) fn new(label: Label, a: usize, b: usize) -> Self {
        Edge {
            label,
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn is_link(&self) -> bool {
        self.u != self.v
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph with uniquely labeled edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// `G|X` together with the map back to the parent's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Multigraph,
    /// `original_vertex[i]` is the parent vertex renumbered to `i`.
    pub original_vertex: Vec<usize>,
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Multigraph {
    /// Builds a graph from `(label, u, w)` triples.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, usize, usize)>,
    {
        let mut list = Vec::new();
        for (label, a, b) in edges {
            if label == 0 {
                return Err(Error::InvalidLabel(label));
            }
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(Error::UnknownVertex {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            list.push(Edge::new(label, a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::DuplicateLabel(w[0].label));
        }
        if list.len() > MAX_EDGES {
            return Err(Error::TooManyEdges(list.len()));
        }
        Ok(Multigraph {
            vertex_count,
            edges: list,
        })
    }

    /// Graph with `vertex_count` vertices and no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Internal constructor for edge lists already known to be valid.
    pub(crate) fn from_valid(vertex_count: usize, mut edges: Vec<Edge>) -> Self {
        for e in &mut edges {
            *e = Edge::new(e.label, e.u, e.v);
        }
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0].label < w[1].label));
        debug_assert!(edges.iter().all(|e| e.v < vertex_count));
        Multigraph {
            vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by label.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.edges.iter().map(|e| e.label)
    }

    pub fn ground(&self) -> EdgeSet {
        self.labels().collect()
    }

    /// Position of `label` in the sorted edge list, i.e. its mask bit.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.edges.binary_search_by_key(&label, |e| e.label).ok()
    }

    pub fn edge(&self, label: Label) -> Result<&Edge> {
        self.index_of(label)
            .map(|i| &self.edges[i])
            .ok_or(Error::UnknownLabel(label))
    }

    pub fn is_loop(&self, label: Label) -> Result<bool> {
        Ok(self.edge(label)?.is_loop())
    }

    pub fn loops(&self) -> EdgeSet {
        self.edges
            .iter()
            .filter(|e| e.is_loop())
            .map(|e| e.label)
            .collect()
    }

    pub fn loop_mask(&self) -> Mask {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_loop())
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    pub fn full_mask(&self) -> Mask {
        full_mask(self.edges.len())
    }

    pub fn mask_of(&self, set: &EdgeSet) -> Result<Mask> {
        set.iter().try_fold(0u64, |acc, label| {
            self.index_of(label)
                .map(|i| acc | (1 << i))
                .ok_or(Error::UnknownLabel(label))
        })
    }

    pub fn edge_set(&self, mask: Mask) -> EdgeSet {
        bits(mask).map(|i| self.edges[i].label).collect()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::UnknownVertex {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Degree of `v`; a loop contributes two.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Edges incident with `v`; a loop appears once.
    pub fn star(&self, v: usize) -> Result<EdgeSet> {
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| e.label)
            .collect())
    }

    /// Star masks of all vertices.
    pub fn star_masks(&self) -> Vec<Mask> {
        let mut stars = vec![0; self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            stars[e.u] |= 1 << i;
            stars[e.v] |= 1 << i;
        }
        stars
    }

    /// A key that identifies the graph up to renaming of its vertices and
    /// dropping isolated vertices: the sorted star masks. An edge is a loop
    /// exactly when it lies in one star.
    pub fn vertex_free_key(&self) -> Vec<Mask> {
        let mut stars: Vec<Mask> = self.star_masks().into_iter().filter(|&s| s != 0).collect();
        stars.sort_unstable();
        stars
    }

    /// Same labels and the same incidences after renaming vertices
    /// (isolated vertices ignored).
    pub fn equal_up_to_vertex_renaming(&self, other: &Multigraph) -> bool {
        self.labels().eq(other.labels()) && self.vertex_free_key() == other.vertex_free_key()
    }

    /// Renames edge labels through `rename`.
    pub fn relabel<F: FnMut(Label) -> Label>(&self, mut rename: F) -> Result<Multigraph> {
        Multigraph::new(
            self.vertex_count,
            self.edges.iter().map(|e| (rename(e.label), e.u, e.v)),
        )
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated_vertices(&self) -> Multigraph {
        self.subgraph_on_mask(self.full_mask()).graph
    }

    /// `G|X`: the subgraph with edge set `X` and no isolated vertices.
    pub fn subgraph_on(&self, set: &EdgeSet) -> Result<InducedSubgraph> {
        let mask = self.mask_of(set)?;
        Ok(self.subgraph_on_mask(mask))
    }

    pub fn subgraph_on_mask(&self, mask: Mask) -> InducedSubgraph {
        let mut new_index = vec![usize::MAX; self.vertex_count];
        for i in bits(mask) {
            let e = self.edges[i];
            new_index[e.u] = 0;
            new_index[e.v] = 0;
        }
        let mut original_vertex = Vec::new();
        for (v, slot) in new_index.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = original_vertex.len();
                original_vertex.push(v);
            }
        }
        let edges = bits(mask)
            .map(|i| {
                let e = self.edges[i];
                Edge::new(e.label, new_index[e.u], new_index[e.v])
            })
            .collect();
        InducedSubgraph {
            graph: Multigraph::from_valid(original_vertex.len(), edges),
            original_vertex,
        }
    }

    /// `G \ e`.
    pub fn delete_edge(&self, label: Label) -> Result<Multigraph> {
        let i = self.index_of(label).ok_or(Error::UnknownLabel(label))?;
        let mut edges = self.edges.clone();
        edges.remove(i);
        Ok(Multigraph {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// `G / e` for a link `e`: its endpoints are identified (the larger index
    /// disappears) and `e` is removed. Edges parallel to `e` become loops.
    pub fn contract_link(&self, label: Label) -> Result<Multigraph> {
        let e = *self.edge(label)?;
        if e.is_loop() {
            return Err(Error::NotALink(label));
        }
        Ok(self.identify(e.u, e.v, Some(label)))
    }

    /// Merges vertex `b` into `a` (indices above `b` shift down), optionally
    /// dropping one edge.
    pub(crate) fn identify(&self, a: usize, b: usize, drop: Option<Label>) -> Multigraph {
        let (keep, gone) = (a.min(b), a.max(b));
        let remap = |x: usize| {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|e| Some(e.label) != drop)
            .map(|e| Edge::new(e.label, remap(e.u), remap(e.v)))
            .collect();
        Multigraph::from_valid(self.vertex_count - 1, edges)
    }

    /// Union-find over the vertices joined by the edges of `mask`.
    pub(crate) fn dsu_of(&self, mask: Mask) -> Dsu {
        let mut dsu = Dsu::new(self.vertex_count);
        for i in bits(mask) {
            let e = self.edges[i];
            dsu.union(e.u, e.v);
        }
        dsu
    }

    /// `(|V(G|X)|, number of components of G|X)`.
    pub fn span_counts(&self, mask: Mask) -> (usize, usize) {
        let mut dsu = Dsu::new(self.vertex_count);
        let mut touched = vec![false; self.vertex_count];
        let mut vertices = 0;
        let mut merges = 0;
        for i in bits(mask) {
            let e = self.edges[i];
            for x in [e.u, e.v] {
                if !touched[x] {
                    touched[x] = true;
                    vertices += 1;
                }
            }
            if dsu.union(e.u, e.v) {
                merges += 1;
            }
        }
        (vertices, vertices - merges)
    }

    /// Cyclomatic number `|X| - |V(G|X)| + c(G|X)`.
    pub fn cyclomatic(&self, mask: Mask) -> usize {
        let (v, c) = self.span_counts(mask);
        mask.count_ones() as usize + c - v
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut dsu = self.dsu_of(self.full_mask());
        (0..self.vertex_count).filter(|&v| dsu.find(v) == v).count()
    }

    /// Connected in the usual sense; the graph with no vertices counts as
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Component index of every vertex, numbered by smallest vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut dsu = self.dsu_of(self.full_mask());
        let mut id = HashMap::new();
        (0..self.vertex_count)
            .map(|v| {
                let r = dsu.find(v);
                let next = id.len();
                *id.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Bridges as a mask.
    pub fn cut_edge_mask(&self) -> Mask {
        let all = self.full_mask();
        let mut out = 0;
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            let mut dsu = self.dsu_of(all & !(1 << i));
            if dsu.find(e.u) != dsu.find(e.v) {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn cut_edges(&self) -> EdgeSet {
        self.edge_set(self.cut_edge_mask())
    }

    /// Every edge lies on a cycle (loops are cycles). Connectivity is not
    /// required.
    pub fn is_2_edge_connected(&self) -> bool {
        self.cut_edge_mask() == 0
    }

    /// Edge sets of all cycles, loops and parallel pairs included, sorted.
    pub fn cycle_masks(&self) -> Vec<Mask> {
        let n = self.vertex_count;
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut found = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                found.insert(1u64 << i);
            } else {
                adjacency[e.u].push((i, e.v));
                adjacency[e.v].push((i, e.u));
            }
        }
        // Each cycle is found from its smallest vertex, once per direction;
        // keeping first edge < closing edge picks one direction.
        let mut on_path = vec![false; n];
        for start in 0..n {
            on_path[start] = true;
            for &(first, next) in &adjacency[start] {
                if next < start {
                    continue;
                }
                walk_cycles(
                    &adjacency,
                    start,
                    first,
                    next,
                    1 << first,
                    &mut on_path,
                    &mut found,
                );
            }
            on_path[start] = false;
        }
        found.into_iter().collect()
    }

    /// Links grouped by endpoint pair, sorted by smallest label. Loops are
    /// not in any parallel class.
    pub fn parallel_classes(&self) -> Vec<EdgeSet> {
        let mut groups: BTreeMap<(usize, usize), EdgeSet> = BTreeMap::new();
        for e in self.edges.iter().filter(|e| e.is_link()) {
            groups.entry((e.u, e.v)).or_default().insert(e.label);
        }
        let mut classes: Vec<EdgeSet> = groups.into_values().collect();
        classes.sort();
        classes
    }

    /// Partition of the edges by "every cycle contains both or neither".
    pub fn series_class_masks(&self) -> Vec<Mask> {
        let cycles = self.cycle_masks();
        let mut groups: BTreeMap<Vec<bool>, Mask> = BTreeMap::new();
        for i in 0..self.edges.len() {
            let signature: Vec<bool> = cycles.iter().map(|c| c & (1 << i) != 0).collect();
            *groups.entry(signature).or_default() |= 1 << i;
        }
        let mut classes: Vec<Mask> = groups.into_values().collect();
        classes.sort_by_key(|m| m.trailing_zeros());
        classes
    }

    pub fn series_classes(&self) -> Vec<EdgeSet> {
        self.series_class_masks()
            .into_iter()
            .map(|m| self.edge_set(m))
            .collect()
    }

    /// Edge sets of all ears: paths whose inner vertices have degree two and
    /// whose (distinct) ends have degree at least three, lying on a cycle.
    pub fn ears(&self) -> Result<Vec<EdgeSet>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self
            .ear_masks()
            .into_iter()
            .map(|m| self.edge_set(m))
            .collect())
    }

    pub(crate) fn ear_masks(&self) -> Vec<Mask> {
        let deg = self.degrees();
        let bridges = self.cut_edge_mask();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_link() {
                incident[e.u].push(i);
                incident[e.v].push(i);
            }
        }
        let mut ears = BTreeSet::new();
        for start in (0..self.vertex_count).filter(|&v| deg[v] >= 3) {
            for &first in &incident[start] {
                let mut mask = 1u64 << first;
                let mut prev = first;
                let mut at = self.edges[first].other(start);
                while deg[at] == 2 && at != start {
                    let Some(&next) = incident[at].iter().find(|&&j| j != prev) else {
                        break;
                    };
                    mask |= 1 << next;
                    prev = next;
                    at = self.edges[next].other(at);
                }
                if at != start && deg[at] >= 3 && bridges & mask == 0 {
                    ears.insert(mask);
                }
            }
        }
        let mut out: Vec<Mask> = ears.into_iter().collect();
        out.sort_by_key(|m| m.trailing_zeros());
        out
    }

    /// `si(G)`: loops deleted, each parallel class reduced to its smallest
    /// label.
    pub fn simplify(&self) -> Multigraph {
        let mut seen = BTreeSet::new();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.is_link() && seen.insert((e.u, e.v)))
            .copied()
            .collect();
        Multigraph::from_valid(self.vertex_count, edges)
    }

    /// `co(G)`: bridges contracted, then each series class contracted onto
    /// its smallest label.
    pub fn cosimplify(&self) -> Multigraph {
        let mut g = self.clone();
        for label in self.cut_edges() {
            g = g.contract_link(label).expect("a bridge is a link");
        }
        let classes = g.series_classes();
        for class in classes.into_iter().filter(|c| c.len() > 1) {
            for label in class.iter().skip(1) {
                g = g
                    .contract_link(label)
                    .expect("non-distinguished series elements stay links");
            }
        }
        g
    }

    /// No bridges and no series class with two or more edges.
    pub fn is_cosimple(&self) -> bool {
        self.cut_edge_mask() == 0 && self.series_class_masks().iter().all(|m| m.count_ones() == 1)
    }

    /// Replaces `label` by a path of `pieces` edges labeled
    /// [`subdivision_label`]`(label, 1..=pieces)`; new vertices are appended.
    /// `pieces == 1` returns the graph unchanged.
    pub fn subdivide(&self, label: Label, pieces: usize) -> Result<Multigraph> {
        let e = *self.edge(label)?;
        if pieces == 0 {
            return Err(Error::InvalidParameters(
                "subdivision needs at least one piece".into(),
            ));
        }
        if pieces == 1 {
            return Ok(self.clone());
        }
        let mut triples: Vec<(Label, usize, usize)> = self
            .edges
            .iter()
            .filter(|f| f.label != label)
            .map(|f| (f.label, f.u, f.v))
            .collect();
        let mut at = e.u;
        for i in 1..=pieces {
            let new_label = subdivision_label(label, i).ok_or_else(|| {
                Error::InvalidParameters(format!("cannot subdivide {label} into {pieces} pieces"))
            })?;
            if self.index_of(new_label).is_some() {
                return Err(Error::DuplicateLabel(new_label));
            }
            let to = if i == pieces {
                e.v
            } else {
                self.vertex_count + i - 1
            };
            triples.push((new_label, at, to));
            at = to;
        }
        Multigraph::new(self.vertex_count + pieces - 1, triples)
    }
}

fn walk_cycles(
    adjacency: &[Vec<(usize, usize)>],
    start: usize,
    first: usize,
    at: usize,
    path: Mask,
    on_path: &mut [bool],
    found: &mut BTreeSet<Mask>,
) {
    on_path[at] = true;
    for &(edge, next) in &adjacency[at] {
        if path & (1 << edge) != 0 {
            continue;
        }
        if next == start {
            if first < edge {
                found.insert(path | (1 << edge));
            }
        } else if next > start && !on_path[next] {
            walk_cycles(
                adjacency,
                start,
                first,
                next,
                path | (1 << edge),
                on_path,
                found,
            );
        }
    }
    on_path[at] = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Multigraph {
        Multigraph::new(
            4,
            [(1, 0, 1), (2, 0, 2), (3, 0, 3), (4, 1, 2), (5, 1, 3), (6, 2, 3)],
        )
        .unwrap()
    }

    fn banana(m: usize) -> Multigraph {
        Multigraph::new(2, (1..=m as Label).map(|l| (l, 0, 1))).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i as Label + 1, i, (i + 1) % n))).unwrap()
    }

    fn set<const N: usize>(labels: [Label; N]) -> EdgeSet {
        EdgeSet::from(labels)
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Multigraph::new(2, [(1, 0, 1), (1, 1, 0)]),
            Err(Error::DuplicateLabel(1))
        );
        assert_eq!(Multigraph::new(2, [(0, 0, 1)]), Err(Error::InvalidLabel(0)));
        assert!(matches!(
            Multigraph::new(2, [(1, 0, 2)]),
            Err(Error::UnknownVertex { vertex: 2, .. })
        ));
        assert_eq!(
            Multigraph::new(1, (1..=65).map(|l| (l, 0, 0))),
            Err(Error::TooManyEdges(65))
        );
    }

    #[test]
    fn subgraph_on_examples() {
        let tri = k4().subgraph_on(&set([1, 2, 4])).unwrap();
        assert_eq!((tri.graph.vertex_count(), tri.graph.edge_count()), (3, 3));
        assert_eq!(tri.original_vertex, vec![0, 1, 2]);

        let empty = k4().subgraph_on(&EdgeSet::new()).unwrap();
        assert_eq!(empty.graph.vertex_count(), 0);

        let pair = banana(3).subgraph_on(&set([1, 2])).unwrap();
        assert_eq!(pair.graph, banana(2));

        assert_eq!(
            k4().subgraph_on(&set([9])).unwrap_err(),
            Error::UnknownLabel(9)
        );
    }

    #[test]
    fn subgraph_on_renumbers_vertices() {
        let sub = k4().subgraph_on(&set([6])).unwrap();
        assert_eq!(sub.original_vertex, vec![2, 3]);
        assert_eq!(sub.graph.edges()[0], Edge { label: 6, u: 0, v: 1 });
    }

    #[test]
    fn delete_and_contract_examples() {
        assert_eq!(banana(3).delete_edge(3).unwrap(), banana(2));

        let shrunk = banana(3).contract_link(3).unwrap();
        assert_eq!(shrunk.vertex_count(), 1);
        assert_eq!(shrunk.loops(), set([1, 2]));

        let tri = cycle(3).contract_link(2).unwrap();
        assert_eq!(tri.vertex_count(), 2);
        assert_eq!(tri.parallel_classes(), vec![set([1, 3])]);

        let with_loop = Multigraph::new(1, [(1, 0, 0)]).unwrap();
        assert_eq!(with_loop.contract_link(1), Err(Error::NotALink(1)));
        assert_eq!(banana(2).delete_edge(7), Err(Error::UnknownLabel(7)));
    }

    #[test]
    fn cut_edge_examples() {
        let path = Multigraph::new(3, [(1, 0, 1), (2, 1, 2)]).unwrap();
        assert_eq!(path.cut_edges(), set([1, 2]));
        assert!(!path.is_2_edge_connected());

        assert!(k4().cut_edges().is_empty());
        assert!(k4().is_2_edge_connected());

        let dumbbell = Multigraph::new(
            6,
            [
                (1, 0, 1),
                (2, 1, 2),
                (3, 2, 0),
                (4, 3, 4),
                (5, 4, 5),
                (6, 5, 3),
                (7, 0, 3),
            ],
        )
        .unwrap();
        assert_eq!(dumbbell.cut_edges(), set([7]));
    }

    #[test]
    fn loops_are_never_bridges() {
        let g = Multigraph::new(1, [(1, 0, 0)]).unwrap();
        assert!(g.is_2_edge_connected());
    }

    #[test]
    fn parallel_and_series_examples() {
        let b4 = banana(4);
        assert_eq!(b4.parallel_classes(), vec![set([1, 2, 3, 4])]);
        assert_eq!(
            b4.series_classes(),
            vec![set([1]), set([2]), set([3]), set([4])]
        );

        let c4 = cycle(4);
        assert_eq!(c4.series_classes(), vec![set([1, 2, 3, 4])]);
        assert_eq!(c4.parallel_classes().len(), 4);

        // K_3^{1,2,2}: a = 1, b = {2,3}, c = {4,5}
        let k3 = Multigraph::new(3, [(1, 0, 1), (2, 1, 2), (3, 1, 2), (4, 2, 0), (5, 2, 0)])
            .unwrap();
        assert_eq!(
            k3.parallel_classes(),
            vec![set([1]), set([2, 3]), set([4, 5])]
        );
    }

    #[test]
    fn ear_examples() {
        let ears = k4().ears().unwrap();
        assert_eq!(ears.len(), 6);
        assert!(ears.iter().all(|e| e.len() == 1));

        let sub = k4().subdivide(1, 2).unwrap();
        let ears = sub.ears().unwrap();
        assert_eq!(ears.len(), 6);
        assert!(ears.contains(&set([101, 102])));

        assert!(cycle(5).ears().unwrap().is_empty());

        let two_parts = Multigraph::new(4, [(1, 0, 1), (2, 2, 3)]).unwrap();
        assert_eq!(two_parts.ears(), Err(Error::Disconnected));
    }

    #[test]
    fn a_closed_chain_is_not_an_ear() {
        // triangle 1-2-3 at vertex 0 plus a pendant 2-cycle {4,5} at vertex 0
        let g = Multigraph::new(4, [(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 0, 3), (5, 0, 3)])
            .unwrap();
        assert!(g.ears().unwrap().is_empty());
    }

    #[test]
    fn simplify_examples() {
        assert_eq!(banana(3).simplify(), banana(1));
        let loops = Multigraph::new(2, [(1, 0, 0), (2, 1, 1)]).unwrap();
        assert_eq!(loops.simplify(), Multigraph::empty(2));
        assert_eq!(k4().simplify(), k4());
    }

    #[test]
    fn cosimplify_examples() {
        let co = cycle(6).cosimplify();
        assert_eq!(co.vertex_count(), 1);
        assert_eq!(co.loops(), set([1]));

        let mut sub = k4();
        for l in 1..=6 {
            sub = sub.subdivide(l, 2).unwrap();
        }
        let co = sub.cosimplify();
        assert_eq!(co.vertex_count(), 4);
        assert_eq!(co.ground(), set([101, 201, 301, 401, 501, 601]));
        assert!(co.is_cosimple());

        assert_eq!(banana(3).cosimplify(), banana(3));
    }

    #[test]
    fn subdivide_star_cosimple_examples() {
        let theta = banana(2).subdivide(1, 2).unwrap();
        assert_eq!(theta.vertex_count(), 3);
        assert_eq!(theta.ground(), set([2, 101, 102]));
        assert_eq!(banana(2).subdivide(1, 1).unwrap(), banana(2));

        assert_eq!(k4().star(0).unwrap(), set([1, 2, 3]));
        assert!(k4().star(4).is_err());
        assert!(banana(2).subdivide(9, 2).is_err());

        assert!(!cycle(4).is_cosimple());
        assert!(k4().is_cosimple());
    }

    #[test]
    fn loop_subdivides_into_a_cycle() {
        let g = Multigraph::new(1, [(3, 0, 0)]).unwrap().subdivide(3, 3).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.cycle_masks(), vec![0b111]);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(k4().cycle_masks().len(), 7);
        assert_eq!(banana(3).cycle_masks(), vec![0b011, 0b101, 0b110]);
        let single_loop = Multigraph::new(1, [(7, 0, 0)]).unwrap();
        assert_eq!(single_loop.cycle_masks(), vec![1]);
    }

    #[test]
    fn vertex_free_key_ignores_numbering() {
        let a = Multigraph::new(3, [(1, 0, 1), (2, 1, 2)]).unwrap();
        let b = Multigraph::new(4, [(1, 3, 0), (2, 0, 2)]).unwrap();
        assert!(a.equal_up_to_vertex_renaming(&b));
        let c = Multigraph::new(3, [(1, 0, 1), (2, 0, 2)]).unwrap();
        assert!(a.equal_up_to_vertex_renaming(&c));
        let d = Multigraph::new(3, [(1, 0, 1), (2, 2, 2)]).unwrap();
        assert!(!a.equal_up_to_vertex_renaming(&d));
    }
}
