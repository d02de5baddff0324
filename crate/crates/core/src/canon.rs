//! Canonical forms for small graphs.
//!
//! Colour refinement followed by individualization of the first smallest
//! non-trivial cell; every leaf of the search tree yields a discrete labelling
//! and the lexicographically smallest adjacency code wins. There is no
//! automorphism pruning, so this is meant for desk-scale graphs only.

use crate::graph::Graph;

/// Isomorphism-invariant code of a graph: vertex count, edge count and the
/// upper triangle of the canonically relabelled adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertices: usize,
    pub edges: usize,
    code: Vec<bool>,
}

impl CanonicalForm {
    /// Hex rendering of the adjacency code, for reports.
    pub fn to_hex(&self) -> String {
        let mut out = format!("{}:{}:", self.vertices, self.edges);
        for chunk in self.code.chunks(4) {
            let mut nibble = 0u8;
            for (i, &bit) in chunk.iter().enumerate() {
                if bit {
                    nibble |= 1 << (3 - i);
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let colors = refine(g, vec![0; n]);
    let mut best: Option<Vec<bool>> = None;
    search(g, colors, &mut best);
    CanonicalForm {
        vertices: n,
        edges: g.edge_count(),
        code: best.unwrap_or_default(),
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let before = count_distinct(&colors);
        colors = next;
        if count_distinct(&colors) == before {
            return colors;
        }
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<bool>>) {
    let n = colors.len();
    if count_distinct(&colors) == n {
        let code = adjacency_code(g, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    // first (by colour) cell with more than one vertex
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).expect("non-discrete partition");
    for v in (0..n).filter(|&v| colors[v] == target) {
        // split v off ahead of its cell; colours stay dense after refinement
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + usize::from(!(c == target && w == v)))
            .collect();
        search(g, refine(g, split), best);
    }
}

fn adjacency_code(g: &Graph, labels: &[usize]) -> Vec<bool> {
    let n = labels.len();
    let mut order = vec![0; n];
    for (v, &l) in labels.iter().enumerate() {
        order[l] = v;
    }
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(g.has_edge(order[i], order[j]));
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_graphs_share_a_form() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(!are_isomorphic(&a, &Graph::star(3)));
    }

    #[test]
    fn subdivided_triangle_is_c4() {
        let g = Graph::complete(3).subdivide_edge(0).unwrap();
        assert!(are_isomorphic(&g, &Graph::cycle(4)));
        let p = Graph::path(3).subdivide_edge(0).unwrap();
        assert!(are_isomorphic(&p, &Graph::path(4)));
    }

    #[test]
    fn regular_graphs_are_separated() {
        // C6 and two disjoint triangles are both 2-regular on six vertices
        let c6 = Graph::cycle(6);
        let triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&c6, &triangles));
    }
}
