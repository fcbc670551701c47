//! Canonical forms of multigraphs up to isomorphism.
//!
//! Each component is canonized separately by colour refinement followed by
//! individualization of one vertex at a time; the code of a vertex ordering
//! is its upper-triangular multiplicity matrix (loops on the diagonal), and
//! the component code is the smallest code over all discrete leaves. A graph's
//! code is its component codes, sorted and concatenated. Isolated vertices are
//! components too, so they are part of the code.

use std::collections::BTreeMap;

use crate::edgeset::Label;
use crate::multigraph::{Edge, Multigraph};

/// Canonical code. Two graphs are isomorphic iff their codes are equal, and
/// [`from_code`] rebuilds a representative.
pub type Code = Vec<u8>;

pub fn canonical_code(g: &Multigraph) -> Code {
    let ids = g.component_ids();
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in ids.iter().enumerate() {
        members[c].push(v);
    }
    let full = multiplicities(g);
    let mut codes: Vec<Code> = members
        .iter()
        .map(|vs| {
            let matrix: Vec<Vec<u8>> = vs
                .iter()
                .map(|&a| vs.iter().map(|&b| full[a][b]).collect())
                .collect();
            component_code(&matrix)
        })
        .collect();
    codes.sort();
    codes.concat()
}

/// The representative with vertices in canonical order and edges labeled
/// `1..=m` in code order.
pub fn canonical_form(g: &Multigraph) -> Multigraph {
    from_code(&canonical_code(g))
}

pub fn is_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_code(a) == canonical_code(b)
}

/// Inverse of [`canonical_code`] up to isomorphism.
///
/// # Panics
///
/// On a malformed code.
pub fn from_code(code: &[u8]) -> Multigraph {
    let mut edges = Vec::new();
    let mut offset = 0;
    let mut rest = code;
    let mut label: Label = 1;
    while let Some((&n, tail)) = rest.split_first() {
        let n = n as usize;
        let cells = n * (n + 1) / 2;
        let (matrix, after) = tail.split_at(cells);
        let mut k = 0;
        for j in 0..n {
            for i in 0..=j {
                for _ in 0..matrix[k] {
                    edges.push(Edge::new(label, offset + i, offset + j));
                    label += 1;
                }
                k += 1;
            }
        }
        offset += n;
        rest = after;
    }
    Multigraph::from_valid(offset, edges)
}

fn multiplicities(g: &Multigraph) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0u8; n]; n];
    for e in g.edges() {
        m[e.u][e.v] += 1;
        if e.u != e.v {
            m[e.v][e.u] += 1;
        }
    }
    m
}

/// Code of one connected component given as a symmetric multiplicity matrix.
fn component_code(matrix: &[Vec<u8>]) -> Code {
    let n = matrix.len();
    let initial: Vec<u32> = {
        let keys: Vec<(u8, usize)> = (0..n)
            .map(|v| {
                let degree = (0..n).map(|w| matrix[v][w] as usize).sum::<usize>() + matrix[v][v] as usize;
                (matrix[v][v], degree)
            })
            .collect();
        ranks(&keys)
    };
    let colours = refine(matrix, initial);
    let mut best: Option<Code> = None;
    search(matrix, colours, &mut best);
    best.expect("at least one leaf")
}

/// Dense ranks of `keys` in sorted order.
fn ranks<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let order: BTreeMap<K, u32> = keys
        .iter()
        .cloned()
        .map(|k| (k, 0))
        .collect::<BTreeMap<_, _>>()
        .into_keys()
        .enumerate()
        .map(|(i, k)| (k, i as u32))
        .collect();
    keys.iter().map(|k| order[k]).collect()
}

fn class_count(colours: &[u32]) -> usize {
    let mut seen: Vec<u32> = colours.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Equitable refinement; new colours are ordered by (old colour, neighbour
/// colour multiset), so the result depends only on the isomorphism type.
fn refine(matrix: &[Vec<u8>], mut colours: Vec<u32>) -> Vec<u32> {
    let n = matrix.len();
    loop {
        let before = class_count(&colours);
        let keys: Vec<(u32, Vec<(u32, u8)>)> = (0..n)
            .map(|v| {
                let mut around: Vec<(u32, u8)> = (0..n)
                    .filter(|&w| w != v && matrix[v][w] > 0)
                    .map(|w| (colours[w], matrix[v][w]))
                    .collect();
                around.sort_unstable();
                (colours[v], around)
            })
            .collect();
        colours = ranks(&keys);
        if class_count(&colours) == before {
            return colours;
        }
    }
}

fn search(matrix: &[Vec<u8>], colours: Vec<u32>, best: &mut Option<Code>) {
    let n = matrix.len();
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c as usize] += 1;
    }
    let Some(cell) = (0..n).find(|&c| sizes[c] > 1) else {
        let mut order = vec![0; n];
        for (v, &c) in colours.iter().enumerate() {
            order[c as usize] = v;
        }
        let code = leaf_code(matrix, &order);
        if best.as_ref().map_or(true, |b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for v in (0..n).filter(|&v| colours[v] as usize == cell) {
        let split: Vec<u32> = colours
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + u32::from(!(w == v) && c as usize == cell))
            .collect();
        let split = ranks(&split);
        search(matrix, refine(matrix, split), best);
    }
}

fn leaf_code(matrix: &[Vec<u8>], order: &[usize]) -> Code {
    let n = order.len();
    let mut code = Vec::with_capacity(1 + n * (n + 1) / 2);
    code.push(n as u8);
    for j in 0..n {
        for i in 0..=j {
            code.push(matrix[order[i]][order[j]]);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(Label, usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.iter().copied()).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn rename(g: &Multigraph, p: &[usize]) -> Multigraph {
        Multigraph::new(
            g.vertex_count(),
            g.edges().iter().map(|e| (e.label, p[e.u], p[e.v])),
        )
        .unwrap()
    }

    #[test]
    fn invariant_under_vertex_renaming() {
        let samples = [
            g(4, &[(1, 0, 1), (2, 0, 2), (3, 0, 3), (4, 1, 2), (5, 1, 3), (6, 2, 3)]),
            g(5, &[(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 3, 4), (5, 3, 3), (6, 0, 0)]),
            g(4, &[(1, 0, 1), (2, 0, 1), (3, 1, 2), (4, 2, 3), (5, 3, 0)]),
            g(5, &[(1, 0, 1), (2, 1, 2)]),
        ];
        for s in &samples {
            let code = canonical_code(s);
            for p in permutations(s.vertex_count()) {
                assert_eq!(canonical_code(&rename(s, &p)), code);
            }
            let back = from_code(&code);
            assert_eq!(canonical_code(&back), code);
            assert_eq!(back.vertex_count(), s.vertex_count());
        }
    }

    #[test]
    fn separates_small_nonisomorphic_graphs() {
        // 6-cycle versus two triangles: same degrees everywhere
        let hexagon = g(6, &[(1, 0, 1), (2, 1, 2), (3, 2, 3), (4, 3, 4), (5, 4, 5), (6, 5, 0)]);
        let triangles = g(6, &[(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 3, 4), (5, 4, 5), (6, 5, 3)]);
        assert!(!is_isomorphic(&hexagon, &triangles));
        // K_{3,3} versus the prism
        let k33 = g(6, &[(1, 0, 3), (2, 0, 4), (3, 0, 5), (4, 1, 3), (5, 1, 4), (6, 1, 5), (7, 2, 3), (8, 2, 4), (9, 2, 5)]);
        let prism = g(6, &[(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 3, 4), (5, 4, 5), (6, 5, 3), (7, 0, 3), (8, 1, 4), (9, 2, 5)]);
        assert!(!is_isomorphic(&k33, &prism));
        // a loop is not a parallel pair
        assert!(!is_isomorphic(&g(1, &[(1, 0, 0), (2, 0, 0)]), &g(2, &[(1, 0, 1), (2, 0, 1)])));
    }

    #[test]
    fn single_vertex_and_empty() {
        assert_eq!(canonical_code(&Multigraph::empty(1)), vec![1, 0]);
        assert!(canonical_code(&Multigraph::empty(0)).is_empty());
        assert_eq!(from_code(&[]).vertex_count(), 0);
    }
}
