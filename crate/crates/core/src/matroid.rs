//! Graphic and bicircular lift matroids as circuit families, with the rank
//! and independence oracles that describe the same matroids numerically.
//!
//! A lift circuit is a minimal edge set containing two cycles. Any such set is
//! the union of the two cycles it contains, so [`lift_circuits`] takes every
//! pairwise union of cycles and keeps the minimal ones. The structural
//! description (two disjoint cycles, two cycles meeting in one vertex, or a
//! theta) is kept separate in [`lift_circuit_shape`] and used to validate the
//! construction.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::edgeset::{bits, full_mask, remove_bit, subsets, EdgeSet, Label, Mask};
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// A matroid on a labeled ground set, given by its circuits.
///
/// Circuits are masks over the sorted ground labels, kept sorted and
/// inclusion-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircuitFamily {
    ground: Vec<Label>,
    circuits: Vec<Mask>,
}

impl CircuitFamily {
    /// Validates an explicit family: circuits must be nonempty, inside the
    /// ground set, and form an antichain.
    pub fn new(ground: &EdgeSet, circuits: &[EdgeSet]) -> Result<Self> {
        let labels = ground.to_vec();
        if labels.len() > crate::edgeset::MAX_EDGES {
            return Err(Error::TooManyEdges(labels.len()));
        }
        let mut masks = Vec::with_capacity(circuits.len());
        for c in circuits {
            if c.is_empty() {
                return Err(Error::InvalidParameters("empty circuit".into()));
            }
            let mask = c.iter().try_fold(0u64, |acc, l| {
                labels
                    .binary_search(&l)
                    .map(|i| acc | (1 << i))
                    .map_err(|_| Error::UnknownLabel(l))
            })?;
            masks.push(mask);
        }
        masks.sort_unstable();
        masks.dedup();
        for (i, &a) in masks.iter().enumerate() {
            if masks.iter().enumerate().any(|(j, &b)| i != j && a & b == a) {
                return Err(Error::InvalidParameters(
                    "circuits must not contain one another".into(),
                ));
            }
        }
        Ok(CircuitFamily {
            ground: labels,
            circuits: masks,
        })
    }

    /// Keeps the inclusion-minimal nonempty members of `candidates`.
    pub(crate) fn from_candidates(ground: Vec<Label>, candidates: Vec<Mask>) -> Self {
        CircuitFamily {
            ground,
            circuits: minimal_sets(candidates),
        }
    }

    pub fn ground(&self) -> EdgeSet {
        self.ground.iter().copied().collect()
    }

    pub fn ground_labels(&self) -> &[Label] {
        &self.ground
    }

    /// Circuits as masks over [`Self::ground_labels`].
    pub fn circuit_masks(&self) -> &[Mask] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn to_edge_set(&self, mask: Mask) -> EdgeSet {
        bits(mask).map(|i| self.ground[i]).collect()
    }

    fn mask_of(&self, set: &EdgeSet) -> Result<Mask> {
        set.iter().try_fold(0u64, |acc, l| {
            self.ground
                .binary_search(&l)
                .map(|i| acc | (1 << i))
                .map_err(|_| Error::UnknownLabel(l))
        })
    }

    /// Circuits as label sets, in lexicographic order of their sorted labels.
    pub fn circuits(&self) -> Vec<EdgeSet> {
        let mut out: Vec<EdgeSet> = self.circuits.iter().map(|&m| self.to_edge_set(m)).collect();
        out.sort_by(|a, b| a.iter().cmp(b.iter()));
        out
    }

    pub fn contains(&self, set: &EdgeSet) -> bool {
        self.mask_of(set)
            .map(|m| self.circuits.binary_search(&m).is_ok())
            .unwrap_or(false)
    }

    /// `X` contains no circuit.
    pub fn is_independent(&self, set: &EdgeSet) -> Result<bool> {
        Ok(self.is_independent_mask(self.mask_of(set)?))
    }

    pub fn is_independent_mask(&self, mask: Mask) -> bool {
        self.circuits.iter().all(|&c| c & mask != c)
    }

    /// Size of a largest independent subset of `mask`, by exhaustive search.
    /// Exponential in `|mask|`; meant as a test oracle.
    pub fn rank_by_search(&self, mask: Mask) -> usize {
        subsets(mask)
            .filter(|&s| self.is_independent_mask(s))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Elements in no circuit.
    pub fn coloops(&self) -> EdgeSet {
        let covered = self.circuits.iter().fold(0, |acc, c| acc | c);
        self.to_edge_set(full_mask(self.ground.len()) & !covered)
    }

    fn position(&self, label: Label) -> Result<usize> {
        self.ground
            .binary_search(&label)
            .map_err(|_| Error::UnknownLabel(label))
    }

    /// `M \ e`: the circuits avoiding `e`.
    pub fn delete(&self, label: Label) -> Result<CircuitFamily> {
        let i = self.position(label)?;
        let mut ground = self.ground.clone();
        ground.remove(i);
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| c & (1 << i) == 0)
            .map(|&c| remove_bit(c, i))
            .collect();
        Ok(CircuitFamily::from_candidates(ground, circuits))
    }

    /// `M / e`: the minimal nonempty sets among `C - e`.
    pub fn contract(&self, label: Label) -> Result<CircuitFamily> {
        let i = self.position(label)?;
        let mut ground = self.ground.clone();
        ground.remove(i);
        let candidates = self
            .circuits
            .iter()
            .map(|&c| remove_bit(c & !(1 << i), i))
            .filter(|&c| c != 0)
            .collect();
        Ok(CircuitFamily::from_candidates(ground, candidates))
    }

    /// Checks the circuit elimination axiom on every pair of circuits.
    /// Returns the first failing `(C1, C2, e)` if any.
    pub fn elimination_failure(&self) -> Option<(EdgeSet, EdgeSet, Label)> {
        for (a, &c1) in self.circuits.iter().enumerate() {
            for &c2 in &self.circuits[a + 1..] {
                for e in bits(c1 & c2) {
                    let rest = (c1 | c2) & !(1 << e);
                    if self.is_independent_mask(rest) {
                        return Some((self.to_edge_set(c1), self.to_edge_set(c2), self.ground[e]));
                    }
                }
            }
        }
        None
    }
}

impl Serialize for CircuitFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.circuits().serialize(serializer)
    }
}

/// Inclusion-minimal nonempty members, sorted and deduplicated.
pub(crate) fn minimal_sets(mut candidates: Vec<Mask>) -> Vec<Mask> {
    candidates.retain(|&c| c != 0);
    candidates.sort_unstable_by_key(|&c| (c.count_ones(), c));
    candidates.dedup();
    let mut kept: Vec<Mask> = Vec::new();
    for c in candidates {
        if kept.iter().all(|&k| k & c != k) {
            kept.push(c);
        }
    }
    kept.sort_unstable();
    kept
}

/// All cycles of `G`; loops are 1-cycles and parallel pairs 2-cycles.
pub fn cycles(g: &Multigraph) -> Vec<EdgeSet> {
    graphic_circuits(g).circuits()
}

/// `M(G)`.
pub fn graphic_circuits(g: &Multigraph) -> CircuitFamily {
    CircuitFamily {
        ground: g.labels().collect(),
        circuits: g.cycle_masks(),
    }
}

/// `L(G)`: minimal unions of two distinct cycles.
pub fn lift_circuits(g: &Multigraph) -> CircuitFamily {
    lift_from_cycles(g.labels().collect(), &g.cycle_masks())
}

pub(crate) fn lift_from_cycles(ground: Vec<Label>, cycles: &[Mask]) -> CircuitFamily {
    let mut unions = HashSet::new();
    for (i, &a) in cycles.iter().enumerate() {
        for &b in &cycles[i + 1..] {
            unions.insert(a | b);
        }
    }
    CircuitFamily::from_candidates(ground, unions.into_iter().collect())
}

/// The three ways two cycles can form a minimal dependent set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftCircuitShape {
    /// Two vertex-disjoint cycles.
    DisjointCycles,
    /// Two edge-disjoint cycles meeting in exactly one vertex.
    TightHandcuff,
    /// Three internally disjoint paths between two distinct vertices.
    Theta,
}

/// Recognizes `G|X` as one of the lift-circuit configurations.
pub fn lift_circuit_shape(g: &Multigraph, mask: Mask) -> Option<LiftCircuitShape> {
    if g.cyclomatic(mask) != 2 {
        return None;
    }
    let sub = g.subgraph_on_mask(mask).graph;
    if !sub.is_2_edge_connected() {
        return None;
    }
    match sub.component_count() {
        2 => Some(LiftCircuitShape::DisjointCycles),
        1 if sub.degrees().contains(&4) => Some(LiftCircuitShape::TightHandcuff),
        1 => Some(LiftCircuitShape::Theta),
        _ => None,
    }
}

/// Rank of `X` in `M(G)`: `|V(G|X)| - c(G|X)`.
pub fn rank_graphic(g: &Multigraph, set: &EdgeSet) -> Result<usize> {
    Ok(rank_graphic_mask(g, g.mask_of(set)?))
}

pub fn rank_graphic_mask(g: &Multigraph, mask: Mask) -> usize {
    let (v, c) = g.span_counts(mask);
    v - c
}

/// Rank of `X` in `L(G)`: the graphic rank, plus one if `X` contains a cycle.
pub fn rank_lift(g: &Multigraph, set: &EdgeSet) -> Result<usize> {
    Ok(rank_lift_mask(g, g.mask_of(set)?))
}

pub fn rank_lift_mask(g: &Multigraph, mask: Mask) -> usize {
    let (v, c) = g.span_counts(mask);
    let size = mask.count_ones() as usize;
    let graphic = v - c;
    let has_cycle = size > graphic;
    (graphic + has_cycle as usize).min(size)
}

/// `X` is independent in `L(G)` iff `G|X` has at most one cycle, i.e. its
/// cyclomatic number is at most one.
pub fn is_independent_lift(g: &Multigraph, set: &EdgeSet) -> Result<bool> {
    Ok(is_independent_lift_mask(g, g.mask_of(set)?))
}

pub fn is_independent_lift_mask(g: &Multigraph, mask: Mask) -> bool {
    g.cyclomatic(mask) <= 1
}

/// Labeled equality: same ground set, same circuits.
pub fn matroid_equal(a: &CircuitFamily, b: &CircuitFamily) -> bool {
    a == b
}

pub fn coloops(family: &CircuitFamily) -> EdgeSet {
    family.coloops()
}

/// `X` is a minimal edge cut of `G`.
pub fn is_bond(g: &Multigraph, set: &EdgeSet) -> Result<bool> {
    let mask = g.mask_of(set)?;
    if mask == 0 {
        return Ok(false);
    }
    let all = g.full_mask();
    let components = |m: Mask| {
        let mut dsu = g.dsu_of(m);
        (0..g.vertex_count()).filter(|&v| dsu.find(v) == v).count()
    };
    let base = components(all);
    if components(all & !mask) == base {
        return Ok(false);
    }
    Ok(bits(mask).all(|i| components(all & !(mask & !(1 << i))) == base))
}

/// Both sides of each applicable deletion/contraction identity for `L(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorIdentities {
    pub edge: Label,
    pub is_loop: bool,
    /// `L(G \ e) = L(G) \ e`.
    pub deletion: bool,
    /// `L(G) / e = M(G \ e)`, checked when `e` is a loop.
    pub loop_contraction: Option<bool>,
    /// `L(G) / e = L(G / e)`, checked when `e` is a link.
    pub link_contraction: Option<bool>,
}

impl MinorIdentities {
    pub fn holds(&self) -> bool {
        self.deletion
            && self.loop_contraction.unwrap_or(true)
            && self.link_contraction.unwrap_or(true)
    }
}

pub fn check_minor_identities(g: &Multigraph, label: Label) -> Result<MinorIdentities> {
    let is_loop = g.is_loop(label)?;
    let lift = lift_circuits(g);
    let deleted_graph = g.delete_edge(label)?;
    let deletion = lift_circuits(&deleted_graph) == lift.delete(label)?;
    let contracted = lift.contract(label)?;
    let (loop_contraction, link_contraction) = if is_loop {
        (Some(contracted == graphic_circuits(&deleted_graph)), None)
    } else {
        (None, Some(contracted == lift_circuits(&g.contract_link(label)?)))
    };
    Ok(MinorIdentities {
        edge: label,
        is_loop,
        deletion,
        loop_contraction,
        link_contraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(Label, usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.iter().copied()).unwrap()
    }

    fn k4() -> Multigraph {
        g(4, &[(1, 0, 1), (2, 0, 2), (3, 0, 3), (4, 1, 2), (5, 1, 3), (6, 2, 3)])
    }

    fn banana(m: Label) -> Multigraph {
        Multigraph::new(2, (1..=m).map(|l| (l, 0, 1))).unwrap()
    }

    fn set<const N: usize>(labels: [Label; N]) -> EdgeSet {
        EdgeSet::from(labels)
    }

    /// Cycles by definition: `G|X` connected and 2-regular (a loop counts two).
    fn cycles_by_definition(g: &Multigraph) -> Vec<Mask> {
        subsets(g.full_mask())
            .filter(|&x| {
                x != 0 && {
                    let sub = g.subgraph_on_mask(x).graph;
                    sub.is_connected() && sub.degrees().iter().all(|&d| d == 2)
                }
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Lift circuits by definition: minimal sets containing two cycles.
    fn lift_by_definition(g: &Multigraph) -> Vec<Mask> {
        let cycles = cycles_by_definition(g);
        let dependent = |x: Mask| cycles.iter().filter(|&&c| c & x == c).count() >= 2;
        let mut out: Vec<Mask> = subsets(g.full_mask())
            .filter(|&x| dependent(x) && bits(x).all(|i| !dependent(x & !(1 << i))))
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(cycles(&k4()).len(), 7);
        assert_eq!(cycles_by_definition(&k4()), k4().cycle_masks());
        assert_eq!(
            cycles(&banana(3)),
            vec![set([1, 2]), set([1, 3]), set([2, 3])]
        );
        assert_eq!(cycles(&g(1, &[(7, 0, 0)])), vec![set([7])]);
    }

    #[test]
    fn k4_lift_is_uniform() {
        let lift = lift_circuits(&k4());
        assert_eq!(lift.len(), 6);
        assert!(lift.circuit_masks().iter().all(|c| c.count_ones() == 5));
        assert_eq!(lift.circuit_masks(), lift_by_definition(&k4()).as_slice());
    }

    #[test]
    fn small_lift_examples() {
        assert_eq!(lift_circuits(&banana(3)).circuits(), vec![set([1, 2, 3])]);
        // loops a=1 and b=2 at distinct vertices joined by the link c=3
        let handcuff = g(2, &[(1, 0, 0), (2, 1, 1), (3, 0, 1)]);
        assert_eq!(lift_circuits(&handcuff).circuits(), vec![set([1, 2])]);
    }

    #[test]
    fn rank_examples() {
        let all = k4().ground();
        assert_eq!(rank_lift(&k4(), &all).unwrap(), 4);
        assert_eq!(rank_graphic(&k4(), &all).unwrap(), 3);
        assert_eq!(rank_lift(&k4(), &EdgeSet::new()).unwrap(), 0);
        assert_eq!(rank_lift(&banana(3), &set([1, 2])).unwrap(), 2);
        assert!(rank_lift(&k4(), &set([8])).is_err());
    }

    #[test]
    fn independence_examples() {
        assert!(is_independent_lift(&k4(), &set([1, 2, 4])).unwrap());
        assert!(!is_independent_lift(&banana(3), &set([1, 2, 3])).unwrap());
        let loops = g(2, &[(1, 0, 0), (2, 1, 1)]);
        assert!(!is_independent_lift(&loops, &set([1, 2])).unwrap());
    }

    #[test]
    fn equality_examples() {
        let relabeled = g(4, &[(6, 0, 1), (5, 0, 2), (4, 0, 3), (3, 1, 2), (2, 1, 3), (1, 2, 3)]);
        assert!(matroid_equal(&lift_circuits(&k4()), &lift_circuits(&relabeled)));
        assert!(!matroid_equal(
            &lift_circuits(&banana(3)),
            &graphic_circuits(&banana(3))
        ));
        assert!(matroid_equal(&lift_circuits(&k4()), &lift_circuits(&k4())));
    }

    #[test]
    fn coloop_and_bond_examples() {
        let dumbbell = g(
            6,
            &[(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 3, 4), (5, 4, 5), (6, 5, 3), (7, 0, 3)],
        );
        assert_eq!(coloops(&lift_circuits(&dumbbell)), set([7]));
        assert!(coloops(&lift_circuits(&k4())).is_empty());

        let c4 = g(4, &[(1, 0, 1), (2, 1, 2), (3, 2, 3), (4, 3, 0)]);
        assert!(is_bond(&c4, &set([1, 3])).unwrap());
        assert!(!is_bond(&c4, &set([1])).unwrap());
        assert!(!is_bond(&c4, &set([1, 2, 3])).unwrap());
        assert!(is_bond(&dumbbell, &set([7])).unwrap());
    }

    #[test]
    fn minor_identity_examples() {
        let report = check_minor_identities(&banana(3), 1).unwrap();
        assert!(report.deletion);
        assert!(lift_circuits(&banana(3)).delete(1).unwrap().is_empty());

        // loop 4 at vertex 0 of the triangle 1,2,3
        let looped = g(3, &[(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 0, 0)]);
        let report = check_minor_identities(&looped, 4).unwrap();
        assert_eq!(report.loop_contraction, Some(true));
        assert_eq!(
            lift_circuits(&looped).contract(4).unwrap().circuits(),
            vec![set([1, 2, 3])]
        );

        for e in 1..=6 {
            let report = check_minor_identities(&k4(), e).unwrap();
            assert!(report.holds(), "{report:?}");
            assert_eq!(report.link_contraction, Some(true));
        }
    }

    #[test]
    fn shapes_of_small_circuits() {
        let looped = g(3, &[(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 0, 0)]);
        assert_eq!(
            lift_circuit_shape(&looped, 0b1111),
            Some(LiftCircuitShape::TightHandcuff)
        );
        assert_eq!(
            lift_circuit_shape(&banana(3), 0b111),
            Some(LiftCircuitShape::Theta)
        );
        let loops = g(2, &[(1, 0, 0), (2, 1, 1), (3, 0, 1)]);
        assert_eq!(
            lift_circuit_shape(&loops, 0b011),
            Some(LiftCircuitShape::DisjointCycles)
        );
        // the loose handcuff contains a bridge
        assert_eq!(lift_circuit_shape(&loops, 0b111), None);
    }

    #[test]
    fn explicit_families_are_validated() {
        let ground = set([1, 2, 3]);
        assert!(CircuitFamily::new(&ground, &[set([1, 2]), set([1, 2, 3])]).is_err());
        assert!(CircuitFamily::new(&ground, &[EdgeSet::new()]).is_err());
        assert!(CircuitFamily::new(&ground, &[set([4])]).is_err());
        let ok = CircuitFamily::new(&ground, &[set([2, 3]), set([1, 2])]).unwrap();
        assert_eq!(serde_json::to_string(&ok).unwrap(), "[[1,2],[2,3]]");
        assert_eq!(ok.rank_by_search(0b111), 2);
    }
}
