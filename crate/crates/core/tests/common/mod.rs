//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! search or classification code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use conway_core::{Graph, Subgraph};

/// Every assignment `0..n → 0..m`, in lexicographic order.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut a = vec![0; n];
    loop {
        out.push(a.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < m {
                break;
            }
            a[i] = 0;
        }
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    all_maps(n, n)
        .into_iter()
        .filter(|a| a.iter().collect::<BTreeSet<_>>().len() == n)
        .collect()
}

fn adjacent(g: &Graph, a: usize, b: usize) -> bool {
    g.edges().iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
}

/// Independent classification of a vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Brute {
    pub hom: bool,
    pub w_hom: bool,
    pub injective: bool,
    pub surjective: bool,
    pub fibered: bool,
    pub w_fibered: bool,
}

pub fn classify(s: &Graph, t: &Graph, a: &[usize]) -> Brute {
    let hom = s.edges().iter().all(|&(x, y)| adjacent(t, a[x], a[y]));
    let w_hom = s.edges().iter().all(|&(x, y)| a[x] == a[y] || adjacent(t, a[x], a[y]));
    let image: BTreeSet<usize> = a.iter().copied().collect();
    let injective = image.len() == a.len();
    let surjective = image.len() == t.vertex_count();
    let covered = t.edges().iter().all(|&(x, y)| {
        s.edges()
            .iter()
            .any(|&(u, v)| (a[u], a[v]) == (x, y) || (a[u], a[v]) == (y, x))
    });
    Brute {
        hom,
        w_hom,
        injective,
        surjective,
        fibered: hom && surjective && covered,
        w_fibered: w_hom && surjective && covered,
    }
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    permutations(a.vertex_count())
        .iter()
        .any(|p| a.edges().iter().all(|&(x, y)| adjacent(b, p[x], p[y])))
}

fn connected_on(pairs: &[(usize, usize)], vertices: &[usize]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let mut reached = vec![vertices[0]];
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in pairs {
            let (ha, hb) = (reached.contains(&a), reached.contains(&b));
            if ha != hb {
                reached.push(if ha { b } else { a });
                changed = true;
            }
        }
    }
    vertices.iter().all(|v| reached.contains(v))
}

/// All simple graphs on `1..=max_n` vertices, one per isomorphism class.
pub fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for n in 1..=max_n {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << slots.len()) {
            let pairs: Vec<_> = slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(n, &pairs).unwrap();
            if !out.iter().any(|h| isomorphic(h, &g)) {
                out.push(g);
            }
        }
    }
    out
}

pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    all_graphs(max_n)
        .into_iter()
        .filter(|g| {
            let vs: Vec<usize> = g.vertices().collect();
            connected_on(g.edges(), &vs)
        })
        .collect()
}

/// Every connected subgraph, by trying all vertex and edge subsets.
pub fn connected_subgraphs(g: &Graph) -> Vec<Subgraph> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut out = Vec::new();
    for vmask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| vmask & (1 << v) != 0).collect();
        for emask in 0u32..(1 << m) {
            let es: Vec<usize> = (0..m).filter(|&e| emask & (1 << e) != 0).collect();
            let ok = es.iter().all(|&e| {
                let (a, b) = g.endpoints(e);
                vs.contains(&a) && vs.contains(&b)
            });
            if !ok {
                continue;
            }
            let pairs: Vec<_> = es.iter().map(|&e| g.endpoints(e)).collect();
            if connected_on(&pairs, &vs) {
                out.push(Subgraph::new(g, vs.clone(), es).unwrap());
            }
        }
    }
    out.sort();
    out
}

pub fn contains(a: &Subgraph, b: &Subgraph) -> bool {
    a.vertices().all(|v| b.contains_vertex(v)) && a.edges().all(|e| b.contains_edge(e))
}

/// Monotonicity of a map between containment orders, checked pairwise.
pub fn monotone(src: &[Subgraph], tgt: &[Subgraph], a: &[usize]) -> bool {
    (0..src.len()).all(|x| (0..src.len()).all(|y| !contains(&src[x], &src[y]) || contains(&tgt[a[x]], &tgt[a[y]])))
}

/// Continuity from the definition: the preimage of every basic open set
/// (a down-set) must be down-closed.
pub fn continuous(src: &[Subgraph], tgt: &[Subgraph], a: &[usize]) -> bool {
    (0..tgt.len()).all(|y| {
        let pre: Vec<usize> = (0..src.len()).filter(|&x| contains(&tgt[a[x]], &tgt[y])).collect();
        pre.iter()
            .all(|&x| (0..src.len()).all(|z| !contains(&src[z], &src[x]) || pre.contains(&z)))
    })
}
