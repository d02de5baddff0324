//! Finite simple graphs and their connected subgraphs.
//!
//! Vertices and edges are addressed by dense zero-based positions inside the
//! Rust API. Default labels are one-based (`v1`, `e1`, ...), which is also the
//! numbering used by the document format and every rendered report.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Default cap on the number of connected subgraphs a single enumeration may
/// produce.
pub const DEFAULT_SUBGRAPH_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop edge at `{0}`; graphs must be simple")]
    LoopEdge(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("duplicate edge label `{0}`")]
    DuplicateEdgeLabel(String),
    #[error("edge index {0} out of range")]
    UnknownEdge(usize),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    NotConnected,
    #[error("connected subgraph enumeration exceeded the cap of {cap} subgraphs")]
    EnumerationBudgetExceeded { cap: usize },
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
    /// Endpoints of each edge, stored with the smaller index first.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

fn normalize(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Graph {
    /// Builds a graph from vertex names and edges given as name pairs.
    ///
    /// Edge labels default to `e1, e2, ...` in the given order.
    pub fn build<S: AsRef<str>>(
        vertex_names: &[S],
        edge_pairs: &[(S, S)],
    ) -> Result<Graph, GraphError> {
        let mut index = HashMap::new();
        for (i, name) in vertex_names.iter().enumerate() {
            if index.insert(name.as_ref().to_string(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.as_ref().to_string()));
            }
        }
        let mut pairs = Vec::with_capacity(edge_pairs.len());
        for (a, b) in edge_pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| GraphError::UnknownEndpoint(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| GraphError::UnknownEndpoint(b.as_ref().to_string()))?;
            pairs.push((ia, ib));
        }
        let vertex_labels = vertex_names.iter().map(|s| s.as_ref().to_string()).collect();
        let edge_labels = (1..=pairs.len()).map(|i| format!("e{i}")).collect();
        Graph::with_labels(vertex_labels, pairs, edge_labels)
    }

    /// Builds a graph on `n` vertices labelled `v1..vn` from zero-based edge pairs.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let vertex_labels = (1..=n).map(|i| format!("v{i}")).collect();
        let edge_labels = (1..=pairs.len()).map(|i| format!("e{i}")).collect();
        Graph::with_labels(vertex_labels, pairs.to_vec(), edge_labels)
    }

    /// Builds a graph with explicit labels for every vertex and edge.
    pub fn with_labels(
        vertex_labels: Vec<String>,
        pairs: Vec<(usize, usize)>,
        edge_labels: Vec<String>,
    ) -> Result<Graph, GraphError> {
        assert_eq!(pairs.len(), edge_labels.len(), "one label per edge");
        let n = vertex_labels.len();
        let mut seen = HashMap::new();
        for label in &vertex_labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateVertex(label.clone()));
            }
        }
        let mut seen_edges = HashMap::new();
        for label in &edge_labels {
            if seen_edges.insert(label.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateEdgeLabel(label.clone()));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_lookup = HashMap::with_capacity(pairs.len());
        let mut edges = Vec::with_capacity(pairs.len());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::UnknownEndpoint(format!("#{}", v + 1)));
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge(vertex_labels[a].clone()));
            }
            let key = normalize(a, b);
            if edge_lookup.insert(key, i).is_some() {
                return Err(GraphError::DuplicateEdge(
                    vertex_labels[key.0].clone(),
                    vertex_labels[key.1].clone(),
                ));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            edges.push(key);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_labels,
            edge_labels,
            edges,
            adjacency,
            edge_lookup,
        })
    }

    /// The single-vertex edgeless graph `({v}, ∅)`.
    pub fn point() -> Graph {
        Graph::from_edges(1, &[]).expect("valid")
    }

    /// Path on `n ≥ 1` vertices `v1 - v2 - ... - vn`.
    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &pairs).expect("valid")
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((0, n - 1));
        Graph::from_edges(n, &pairs).expect("valid")
    }

    /// Complete graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                pairs.push((a, b));
            }
        }
        Graph::from_edges(n, &pairs).expect("valid")
    }

    /// Star with centre `v1` and `leaves` pendant vertices.
    pub fn star(leaves: usize) -> Graph {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &pairs).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    /// Edge endpoints, smaller vertex index first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_lookup.get(&normalize(a, b)).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_between(a, b).is_some()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn edge_label(&self, e: usize) -> &str {
        &self.edge_labels[e]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn edge_by_label(&self, label: &str) -> Option<usize> {
        self.edge_labels.iter().position(|l| l == label)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count()
    }

    /// Fails unless the graph is non-empty and connected.
    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.vertex_count() == 0 {
            Err(GraphError::Empty)
        } else if !self.is_connected() {
            Err(GraphError::NotConnected)
        } else {
            Ok(())
        }
    }

    /// The whole graph as a subgraph of itself.
    pub fn full_subgraph(&self) -> Subgraph {
        let mut s = Subgraph::empty(self);
        s.vertices.insert_range(..);
        s.edges.insert_range(..);
        s
    }

    /// Materializes a subgraph as a standalone graph, keeping labels and the
    /// relative order of vertices and edges.
    ///
    /// Returns the graph together with the parent vertex index of each new vertex.
    pub fn extract(&self, sub: &Subgraph) -> (Graph, Vec<usize>) {
        let vertices: Vec<usize> = sub.vertices().collect();
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let mut pairs = Vec::new();
        let mut edge_labels = Vec::new();
        for e in sub.edges() {
            let (a, b) = self.endpoints(e);
            pairs.push((position[a], position[b]));
            edge_labels.push(self.edge_label(e).to_string());
        }
        let vertex_labels = vertices
            .iter()
            .map(|&v| self.vertex_label(v).to_string())
            .collect();
        let g = Graph::with_labels(vertex_labels, pairs, edge_labels)
            .expect("a subgraph of a simple graph is simple");
        (g, vertices)
    }

    /// Adds a loop at every vertex.
    pub fn loop_augment(&self) -> LoopedGraph {
        LoopedGraph { base: self.clone() }
    }

    /// Replaces edge `e = (a, b)` by `(a, s)` and `(s, b)` for a fresh vertex `s`.
    ///
    /// The first half keeps the position of `e`, the second half is appended
    /// as the last edge, and `s` becomes the last vertex.
    pub fn subdivide_edge(&self, e: usize) -> Result<Graph, GraphError> {
        if e >= self.edge_count() {
            return Err(GraphError::UnknownEdge(e));
        }
        let (a, b) = self.endpoints(e);
        let fresh = self.vertex_count();
        let mut vertex_labels = self.vertex_labels.clone();
        vertex_labels.push(self.fresh_label(&format!("s{}", self.edge_label(e)), true));
        let mut pairs = self.edges.clone();
        pairs[e] = (a, fresh);
        pairs.push((fresh, b));
        let mut edge_labels = self.edge_labels.clone();
        edge_labels[e] = format!("{}'", self.edge_label(e));
        edge_labels.push(self.fresh_label(&format!("{}''", self.edge_label(e)), false));
        Graph::with_labels(vertex_labels, pairs, edge_labels)
    }

    fn fresh_label(&self, base: &str, vertex: bool) -> String {
        let taken = |s: &str| {
            if vertex {
                self.vertex_by_label(s).is_some()
            } else {
                self.edge_by_label(s).is_some()
            }
        };
        let mut label = base.to_string();
        while taken(&label) {
            label.push('\'');
        }
        label
    }

    /// Every connected subgraph exactly once, in canonical order.
    ///
    /// Connected vertex sets are grown from each seed vertex (ESU style); for
    /// every vertex set the connected spanning edge subsets of its induced
    /// edges are then enumerated by include/exclude branching that never
    /// excludes a bridge.
    pub fn connected_subgraphs(&self, cap: usize) -> Result<Vec<Subgraph>, GraphError> {
        self.require_connected()?;
        let mut out = Vec::new();
        let mut vertex_sets = Vec::new();
        for root in self.vertices() {
            let mut current = vec![root];
            let ext: Vec<usize> = self.neighbors(root).iter().copied().filter(|&u| u > root).collect();
            self.grow_vertex_set(root, &mut current, ext, &mut vertex_sets);
        }
        for set in vertex_sets {
            self.spanning_edge_subsets(&set, cap, &mut out)?;
        }
        out.sort();
        Ok(out)
    }

    fn grow_vertex_set(
        &self,
        root: usize,
        current: &mut Vec<usize>,
        mut ext: Vec<usize>,
        sink: &mut Vec<Vec<usize>>,
    ) {
        sink.push(current.clone());
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            for &u in self.neighbors(w) {
                if u <= root || current.contains(&u) || ext.contains(&u) || u == w {
                    continue;
                }
                // exclusive neighbourhood: skip vertices already adjacent to the set
                if current.iter().any(|&c| self.has_edge(c, u)) {
                    continue;
                }
                next_ext.push(u);
            }
            current.push(w);
            self.grow_vertex_set(root, current, next_ext, sink);
            current.pop();
        }
    }

    fn spanning_edge_subsets(
        &self,
        vertex_set: &[usize],
        cap: usize,
        out: &mut Vec<Subgraph>,
    ) -> Result<(), GraphError> {
        let mut vertices = FixedBitSet::with_capacity(self.vertex_count());
        for &v in vertex_set {
            vertices.insert(v);
        }
        let induced: Vec<usize> = (0..self.edge_count())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                vertices.contains(a) && vertices.contains(b)
            })
            .collect();
        let mut excluded = FixedBitSet::with_capacity(self.edge_count());
        self.branch_edges(&vertices, &induced, 0, &mut excluded, cap, out)
    }

    fn branch_edges(
        &self,
        vertices: &FixedBitSet,
        induced: &[usize],
        k: usize,
        excluded: &mut FixedBitSet,
        cap: usize,
        out: &mut Vec<Subgraph>,
    ) -> Result<(), GraphError> {
        if k == induced.len() {
            if out.len() >= cap {
                return Err(GraphError::EnumerationBudgetExceeded { cap });
            }
            let mut edges = FixedBitSet::with_capacity(self.edge_count());
            for &e in induced {
                if !excluded.contains(e) {
                    edges.insert(e);
                }
            }
            out.push(Subgraph {
                vertices: vertices.clone(),
                edges,
            });
            return Ok(());
        }
        let e = induced[k];
        self.branch_edges(vertices, induced, k + 1, excluded, cap, out)?;
        excluded.insert(e);
        if self.spans_connected(vertices, induced, excluded) {
            self.branch_edges(vertices, induced, k + 1, excluded, cap, out)?;
        }
        excluded.set(e, false);
        Ok(())
    }

    fn spans_connected(&self, vertices: &FixedBitSet, induced: &[usize], excluded: &FixedBitSet) -> bool {
        let edges = induced.iter().copied().filter(|&e| !excluded.contains(e));
        component_count(self, vertices, edges) == 1
    }
}

fn component_count(g: &Graph, vertices: &FixedBitSet, edges: impl Iterator<Item = usize>) -> usize {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = vertices.count_ones(..);
    for e in edges {
        let (a, b) = g.endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{}}}, {{", self.vertex_labels.join(", "))?;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}=({},{})",
                self.edge_labels[i], self.vertex_labels[a], self.vertex_labels[b]
            )?;
        }
        write!(f, "}})")
    }
}

/// A subgraph of some parent graph: a vertex subset and an edge subset.
///
/// Ordered canonically: lexicographically by sorted vertex indices, then by
/// sorted edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgraph {
    vertices: FixedBitSet,
    edges: FixedBitSet,
}

impl Subgraph {
    pub fn empty(parent: &Graph) -> Subgraph {
        Subgraph {
            vertices: FixedBitSet::with_capacity(parent.vertex_count()),
            edges: FixedBitSet::with_capacity(parent.edge_count()),
        }
    }

    /// Builds a subgraph of `parent`, checking that every edge has both
    /// endpoints included.
    pub fn new(
        parent: &Graph,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
    ) -> Result<Subgraph, GraphError> {
        let mut s = Subgraph::empty(parent);
        for v in vertices {
            if v >= parent.vertex_count() {
                return Err(GraphError::UnknownVertex(v));
            }
            s.vertices.insert(v);
        }
        for e in edges {
            if e >= parent.edge_count() {
                return Err(GraphError::UnknownEdge(e));
            }
            let (a, b) = parent.endpoints(e);
            if !s.vertices.contains(a) {
                return Err(GraphError::UnknownEndpoint(parent.vertex_label(a).to_string()));
            }
            if !s.vertices.contains(b) {
                return Err(GraphError::UnknownEndpoint(parent.vertex_label(b).to_string()));
            }
            s.edges.insert(e);
        }
        Ok(s)
    }

    /// `({v}, ∅)`.
    pub fn vertex(parent: &Graph, v: usize) -> Subgraph {
        Subgraph::new(parent, [v], []).expect("vertex in range")
    }

    /// `({a, b}, {e})` for `e = (a, b)`.
    pub fn edge(parent: &Graph, e: usize) -> Subgraph {
        let (a, b) = parent.endpoints(e);
        Subgraph::new(parent, [a, b], [e]).expect("edge in range")
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.ones()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.ones()
    }

    pub fn vertex_set(&self) -> &FixedBitSet {
        &self.vertices
    }

    pub fn edge_set(&self) -> &FixedBitSet {
        &self.edges
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.contains(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    /// Number of vertices plus edges.
    pub fn size(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    pub fn union_with(&mut self, other: &Subgraph) {
        self.vertices.union_with(&other.vertices);
        self.edges.union_with(&other.edges);
    }

    pub fn is_connected(&self, parent: &Graph) -> bool {
        self.vertex_count() > 0 && component_count(parent, &self.vertices, self.edges.ones()) == 1
    }

    /// Checks every included edge has both endpoints included.
    pub fn is_well_formed(&self, parent: &Graph) -> bool {
        self.edges.ones().all(|e| {
            let (a, b) = parent.endpoints(e);
            self.vertices.contains(a) && self.vertices.contains(b)
        })
    }

    /// Renders as `({v1, v2}, {e1})` using the parent's labels.
    pub fn display<'a>(&'a self, parent: &'a Graph) -> SubgraphDisplay<'a> {
        SubgraphDisplay { sub: self, parent }
    }
}

impl PartialOrd for Subgraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vertices
            .ones()
            .cmp(other.vertices.ones())
            .then_with(|| self.edges.ones().cmp(other.edges.ones()))
    }
}

pub struct SubgraphDisplay<'a> {
    sub: &'a Subgraph,
    parent: &'a Graph,
}

impl fmt::Display for SubgraphDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<&str> = self.sub.vertices().map(|v| self.parent.vertex_label(v)).collect();
        let es: Vec<&str> = self.sub.edges().map(|e| self.parent.edge_label(e)).collect();
        if es.is_empty() {
            write!(f, "({{{}}}, ∅)", vs.join(", "))
        } else {
            write!(f, "({{{}}}, {{{}}})", vs.join(", "), es.join(", "))
        }
    }
}

/// An edge of a loop-augmented graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LoopedEdge {
    /// An original edge of the base graph.
    Edge(usize),
    /// The loop `(v, v)`.
    Loop(usize),
}

/// Image of a looped edge under the projection that collapses loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Projected {
    Edge(usize),
    Vertex(usize),
}

/// `G∘ = (V, E ∪ {(v, v)})` together with its projection back to `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopedGraph {
    base: Graph,
}

impl LoopedGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Original edges first, then one loop per vertex.
    pub fn edges(&self) -> Vec<LoopedEdge> {
        (0..self.base.edge_count())
            .map(LoopedEdge::Edge)
            .chain(self.base.vertices().map(LoopedEdge::Loop))
            .collect()
    }

    pub fn endpoints(&self, edge: LoopedEdge) -> (usize, usize) {
        match edge {
            LoopedEdge::Edge(e) => self.base.endpoints(e),
            LoopedEdge::Loop(v) => (v, v),
        }
    }

    /// Finds the looped edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<LoopedEdge> {
        if a == b {
            (a < self.base.vertex_count()).then_some(LoopedEdge::Loop(a))
        } else {
            self.base.edge_between(a, b).map(LoopedEdge::Edge)
        }
    }

    /// Projection: loops collapse to their vertex, everything else is fixed.
    pub fn project(&self, edge: LoopedEdge) -> Projected {
        match edge {
            LoopedEdge::Edge(e) => Projected::Edge(e),
            LoopedEdge::Loop(v) => Projected::Vertex(v),
        }
    }

    /// Drops every loop, recovering the base graph.
    pub fn project_graph(&self) -> Graph {
        let vertex_labels = self.base.vertex_labels().to_vec();
        let mut pairs = Vec::new();
        let mut labels = Vec::new();
        for edge in self.edges() {
            if let Projected::Edge(e) = self.project(edge) {
                pairs.push(self.base.endpoints(e));
                labels.push(self.base.edge_label(e).to_string());
            }
        }
        Graph::with_labels(vertex_labels, pairs, labels).expect("base graph is simple")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_connected(g: &Graph) -> Vec<Subgraph> {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let mut out = Vec::new();
        for vmask in 1u32..(1 << n) {
            for emask in 0u32..(1 << m) {
                let vs = (0..n).filter(|i| vmask & (1 << i) != 0);
                let es = (0..m).filter(|i| emask & (1 << i) != 0);
                if let Ok(s) = Subgraph::new(g, vs, es) {
                    if s.is_connected(g) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::build(&["a"], &[("a", "a")]),
            Err(GraphError::LoopEdge("a".into()))
        );
        assert_eq!(
            Graph::build(&["a", "a"], &[]),
            Err(GraphError::DuplicateVertex("a".into()))
        );
        assert_eq!(
            Graph::build(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge("a".into(), "b".into()))
        );
        assert_eq!(
            Graph::build(&["a"], &[("a", "z")]),
            Err(GraphError::UnknownEndpoint("z".into()))
        );
    }

    #[test]
    fn build_path_from_names() {
        let g = Graph::build(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v3")]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_labels(), ["e1", "e2"]);
        assert_eq!(g.endpoints(1), (0, 2));
        let single = Graph::build(&["v"], &[]).unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
    }

    #[test]
    fn path_has_six_connected_subgraphs() {
        let g = Graph::build(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v3")]).unwrap();
        let subs = g.connected_subgraphs(DEFAULT_SUBGRAPH_CAP).unwrap();
        let shown: Vec<String> = subs.iter().map(|s| s.display(&g).to_string()).collect();
        assert_eq!(
            shown,
            [
                "({v1}, ∅)",
                "({v1, v2}, {e1})",
                "({v1, v2, v3}, {e1, e2})",
                "({v1, v3}, {e2})",
                "({v2}, ∅)",
                "({v3}, ∅)",
            ]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for g in [
            Graph::point(),
            Graph::path(4),
            Graph::cycle(4),
            Graph::complete(4),
            Graph::star(3),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
        ] {
            assert_eq!(g.connected_subgraphs(DEFAULT_SUBGRAPH_CAP).unwrap(), brute_force_connected(&g));
        }
        assert_eq!(Graph::complete(3).connected_subgraphs(100).unwrap().len(), 10);
        assert_eq!(Graph::point().connected_subgraphs(100).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_respects_cap_and_connectivity() {
        assert_eq!(
            Graph::complete(4).connected_subgraphs(5),
            Err(GraphError::EnumerationBudgetExceeded { cap: 5 })
        );
        let disconnected = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(disconnected.connected_subgraphs(10), Err(GraphError::NotConnected));
    }

    #[test]
    fn loop_augmentation() {
        let edge = Graph::path(2);
        let looped = edge.loop_augment();
        let pairs: Vec<_> = looped.edges().into_iter().map(|e| looped.endpoints(e)).collect();
        assert_eq!(pairs, [(0, 1), (0, 0), (1, 1)]);
        assert_eq!(Graph::point().loop_augment().edges(), [LoopedEdge::Loop(0)]);
        let p3 = Graph::path(3);
        assert_eq!(p3.loop_augment().edges().len(), p3.edge_count() + p3.vertex_count());
        assert_eq!(p3.loop_augment().project_graph(), p3);
        assert_eq!(looped.project(LoopedEdge::Loop(1)), Projected::Vertex(1));
    }

    #[test]
    fn subdivision() {
        let g = Graph::path(2).subdivide_edge(0).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), [(0, 2), (1, 2)]);
        assert_eq!(Graph::path(2).subdivide_edge(3), Err(GraphError::UnknownEdge(3)));
        let k3 = Graph::complete(3).subdivide_edge(0).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (4, 4));
        assert!(k3.vertices().all(|v| k3.degree(v) == 2));
    }
}
