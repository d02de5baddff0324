//! The graph topology: connected subgraphs of a graph ordered by containment,
//! maps between such collections, and lifts of (w-)homomorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Subgraph};
use crate::morphism::{classify_assignment, GraphMap};
use crate::poset::{self, find_poset_map, FinitePoset, MapMode, PartialOrder, PosetError, PosetSearch, PosetTopology};

/// Above this many elements down-sets are computed on demand instead of cached.
const CACHE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("map is not a w-homomorphism")]
    NotWHomomorphism,
    #[error("collection is malformed: {0}")]
    MalformedCollection(String),
    #[error("{0} is not a connected subgraph of the target")]
    NotInCollection(String),
    #[error("no generator lies below {0}")]
    MissingGenerator(String),
    #[error("assignment has {got} entries but the collection has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("map endpoints do not match the given spaces")]
    SpaceMismatch,
}

/// `(C_G, ⊂)` for a connected graph `G`, with its poset topology.
#[derive(Debug, Clone)]
pub struct GraphTopologySpace {
    graph: Graph,
    collection: Vec<Subgraph>,
    index: HashMap<Subgraph, usize>,
    below: Option<Vec<FixedBitSet>>,
}

impl PartialEq for GraphTopologySpace {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.collection == other.collection
    }
}

impl Eq for GraphTopologySpace {}

impl GraphTopologySpace {
    /// Enumerates `C_G`; elements are numbered in the canonical subgraph order.
    pub fn new(graph: &Graph, cap: usize) -> Result<GraphTopologySpace, TopologyError> {
        graph.require_connected()?;
        let collection = graph.connected_subgraphs(cap)?;
        Ok(GraphTopologySpace::from_parts(graph.clone(), collection))
    }

    fn from_parts(graph: Graph, collection: Vec<Subgraph>) -> GraphTopologySpace {
        let index = collection
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let below = (collection.len() <= CACHE_LIMIT).then(|| {
            collection
                .iter()
                .map(|top| {
                    let mut set = FixedBitSet::with_capacity(collection.len());
                    for (i, s) in collection.iter().enumerate() {
                        if s.is_subgraph_of(top) {
                            set.insert(i);
                        }
                    }
                    set
                })
                .collect()
        });
        GraphTopologySpace {
            graph,
            collection,
            index,
            below,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn collection(&self) -> &[Subgraph] {
        &self.collection
    }

    pub fn len(&self) -> usize {
        self.collection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collection.is_empty()
    }

    pub fn element(&self, i: usize) -> &Subgraph {
        &self.collection[i]
    }

    pub fn index_of(&self, sub: &Subgraph) -> Option<usize> {
        self.index.get(sub).copied()
    }

    pub fn vertex_element(&self, v: usize) -> usize {
        self.index[&Subgraph::vertex(&self.graph, v)]
    }

    pub fn edge_element(&self, e: usize) -> usize {
        self.index[&Subgraph::edge(&self.graph, e)]
    }

    pub fn top(&self) -> usize {
        self.index[&self.graph.full_subgraph()]
    }

    pub fn display(&self, i: usize) -> String {
        self.collection[i].display(&self.graph).to_string()
    }

    pub fn topology(&self) -> PosetTopology<'_, Self> {
        PosetTopology::new(self)
    }

    /// The containment order as an explicit matrix-backed poset.
    pub fn poset(&self) -> FinitePoset {
        FinitePoset::from_order(self)
    }

    /// Rebuilds `G` from the vertex and single-edge elements, keeping the
    /// original indices and labels.
    pub fn recover_graph(&self) -> Result<Graph, TopologyError> {
        let n = self.graph.vertex_count();
        let mut pairs = Vec::new();
        let mut seen = vec![false; n];
        for s in &self.collection {
            match (s.vertex_count(), s.edge_count()) {
                (1, 0) => {
                    let v = s.vertices().next().expect("one vertex");
                    seen[v] = true;
                }
                (2, 1) => {
                    let e = s.edges().next().expect("one edge");
                    let mut vs = s.vertices();
                    pairs.push((e, (vs.next().unwrap(), vs.next().unwrap())));
                }
                _ => {}
            }
        }
        if let Some(v) = seen.iter().position(|&x| !x) {
            return Err(TopologyError::MalformedCollection(format!(
                "vertex {} has no singleton element",
                self.graph.vertex_label(v)
            )));
        }
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(i, &(e, _))| i != e) || pairs.len() != self.graph.edge_count() {
            return Err(TopologyError::MalformedCollection("edge elements are incomplete".into()));
        }
        let edge_labels = pairs.iter().map(|&(e, _)| self.graph.edge_label(e).to_string()).collect();
        Ok(Graph::with_labels(
            self.graph.vertex_labels().to_vec(),
            pairs.into_iter().map(|(_, p)| p).collect(),
            edge_labels,
        )?)
    }
}

impl PartialOrder for GraphTopologySpace {
    fn size(&self) -> usize {
        self.collection.len()
    }

    fn le(&self, a: usize, b: usize) -> bool {
        match &self.below {
            Some(below) => below[b].contains(a),
            None => self.collection[a].is_subgraph_of(&self.collection[b]),
        }
    }

    fn down_set(&self, x: usize) -> FixedBitSet {
        match &self.below {
            Some(below) => below[x].clone(),
            None => {
                let mut s = FixedBitSet::with_capacity(self.size());
                for y in 0..self.size() {
                    if self.le(y, x) {
                        s.insert(y);
                    }
                }
                s
            }
        }
    }

    fn label(&self, x: usize) -> String {
        self.display(x)
    }
}

/// Rebuilds a graph from nothing but a containment order: minimal elements are
/// vertices, and elements covering exactly two minimal elements (and nothing
/// else) are edges. The result is isomorphic to the original graph.
pub fn recover_graph_from_order<P: PartialOrder + ?Sized>(order: &P) -> Result<Graph, TopologyError> {
    let n = order.size();
    let minimal: Vec<usize> = (0..n).filter(|&x| order.down_set(x).count_ones(..) == 1).collect();
    if minimal.is_empty() {
        return Err(TopologyError::MalformedCollection("no minimal elements".into()));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &x) in minimal.iter().enumerate() {
        position[x] = i;
    }
    let mut pairs = Vec::new();
    for x in 0..n {
        let down = order.down_set(x);
        if down.count_ones(..) != 3 {
            continue;
        }
        let ends: Vec<usize> = down.ones().filter(|&y| y != x).collect();
        if ends.iter().all(|&y| position[y] != usize::MAX) {
            pairs.push((position[ends[0]], position[ends[1]]));
        }
    }
    Ok(Graph::from_edges(minimal.len(), &pairs)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    LiftedFromHom,
    LiftedFromWHom,
    Free,
}

/// A total map `C_G → C_G'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionMap {
    source: Arc<GraphTopologySpace>,
    target: Arc<GraphTopologySpace>,
    assignment: Vec<usize>,
    provenance: Provenance,
}

/// Decision results for a collection map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CollectionClass {
    pub continuous: bool,
    pub injective: bool,
    pub surjective: bool,
    pub embedding: bool,
    pub homeomorphic: bool,
}

impl CollectionMap {
    pub fn new(
        source: Arc<GraphTopologySpace>,
        target: Arc<GraphTopologySpace>,
        assignment: Vec<usize>,
    ) -> Result<CollectionMap, TopologyError> {
        if assignment.len() != source.len() {
            return Err(TopologyError::WrongLength {
                expected: source.len(),
                got: assignment.len(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(PosetError::UnknownElement(bad).into());
        }
        Ok(CollectionMap {
            source,
            target,
            assignment,
            provenance: Provenance::Free,
        })
    }

    /// Extends images given on some elements to all of `C_G`: an element
    /// without an explicit image goes to the union of the images of every
    /// generator it contains. That union has to be connected.
    pub fn from_generators(
        source: Arc<GraphTopologySpace>,
        target: Arc<GraphTopologySpace>,
        entries: &[(Subgraph, Subgraph)],
    ) -> Result<CollectionMap, TopologyError> {
        let mut given: Vec<Option<usize>> = vec![None; source.len()];
        for (from, to) in entries {
            let x = source
                .index_of(from)
                .ok_or_else(|| TopologyError::NotInCollection(from.display(source.graph()).to_string()))?;
            let y = target
                .index_of(to)
                .ok_or_else(|| TopologyError::NotInCollection(to.display(target.graph()).to_string()))?;
            given[x] = Some(y);
        }
        let mut assignment = Vec::with_capacity(source.len());
        for x in 0..source.len() {
            if let Some(y) = given[x] {
                assignment.push(y);
                continue;
            }
            let mut union = Subgraph::empty(target.graph());
            let mut any = false;
            for (g, image) in given.iter().enumerate() {
                if let Some(y) = image {
                    if source.le(g, x) {
                        union.union_with(target.element(*y));
                        any = true;
                    }
                }
            }
            if !any {
                return Err(TopologyError::MissingGenerator(source.display(x)));
            }
            let y = target
                .index_of(&union)
                .ok_or_else(|| TopologyError::NotInCollection(union.display(target.graph()).to_string()))?;
            assignment.push(y);
        }
        CollectionMap::new(source, target, assignment)
    }

    /// `f̂(H) = (f(V_H), f(E_H))` with edges that collapse onto a vertex
    /// dropped.
    pub fn lift(
        f: &GraphMap,
        source: Arc<GraphTopologySpace>,
        target: Arc<GraphTopologySpace>,
    ) -> Result<CollectionMap, TopologyError> {
        if source.graph() != f.source() || target.graph() != f.target() {
            return Err(TopologyError::SpaceMismatch);
        }
        let class = f.classify();
        if !class.is_w_hom {
            return Err(TopologyError::NotWHomomorphism);
        }
        let (src, tgt) = (source.graph(), target.graph());
        let edge_image: Vec<Option<usize>> = src
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (fa, fb) = (f.image(a), f.image(b));
                (fa != fb).then(|| tgt.edge_between(fa, fb).expect("w-hom maps edges to edges"))
            })
            .collect();
        let assignment = source
            .collection()
            .iter()
            .map(|h| {
                let image = Subgraph::new(
                    tgt,
                    h.vertices().map(|v| f.image(v)),
                    h.edges().filter_map(|e| edge_image[e]),
                )
                .expect("image of a subgraph is a subgraph");
                target.index_of(&image).expect("image of a connected subgraph is connected")
            })
            .collect();
        let mut map = CollectionMap::new(source, target, assignment)?;
        map.provenance = if class.is_hom {
            Provenance::LiftedFromHom
        } else {
            Provenance::LiftedFromWHom
        };
        Ok(map)
    }

    pub fn identity(space: Arc<GraphTopologySpace>) -> CollectionMap {
        let n = space.len();
        let mut map = CollectionMap::new(space.clone(), space, (0..n).collect()).expect("identity");
        map.provenance = Provenance::LiftedFromHom;
        map
    }

    pub fn source(&self) -> &Arc<GraphTopologySpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GraphTopologySpace> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn image(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// Image of a subgraph of the source graph, if it is a collection element.
    pub fn apply(&self, sub: &Subgraph) -> Option<&Subgraph> {
        self.source
            .index_of(sub)
            .map(|x| self.target.element(self.assignment[x]))
    }

    pub fn classify(&self) -> CollectionClass {
        classify_collection_map(self)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target.len());
        self.assignment.iter().all(|&y| !seen.put(y))
    }

    pub fn is_continuous(&self) -> bool {
        poset::is_continuous(&*self.source, &*self.target, &self.assignment)
            .expect("total map")
            .holds()
    }

    /// Whether the image is a single element.
    pub fn is_trivial(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn classify_collection_map(m: &CollectionMap) -> CollectionClass {
    let (s, t, a) = (&*m.source, &*m.target, &m.assignment[..]);
    let injective = m.is_injective();
    let mut hit = FixedBitSet::with_capacity(t.len());
    for &y in a {
        hit.insert(y);
    }
    CollectionClass {
        continuous: m.is_continuous(),
        injective,
        surjective: hit.count_ones(..) == t.len(),
        embedding: poset::is_embedding(s, t, a).expect("total map"),
        homeomorphic: poset::is_homeomorphism(s, t, a).expect("total map"),
    }
}

/// Complete search for a monotone injection `C_G → C_G'`.
pub fn find_continuous_injection(
    source: &Arc<GraphTopologySpace>,
    target: &Arc<GraphTopologySpace>,
    budget: u64,
) -> Result<Option<CollectionMap>, TopologyError> {
    find_collection_map(source, target, &PosetSearch::new(MapMode::Injective, budget))
}

/// Complete search for a continuous map of the requested kind.
pub fn find_collection_map(
    source: &Arc<GraphTopologySpace>,
    target: &Arc<GraphTopologySpace>,
    search: &PosetSearch,
) -> Result<Option<CollectionMap>, TopologyError> {
    match find_poset_map(&**source, &**target, search)? {
        Some(a) => Ok(Some(CollectionMap::new(source.clone(), target.clone(), a)?)),
        None => Ok(None),
    }
}

/// A connected graph holding disjoint copies of two graphs.
#[derive(Debug, Clone)]
pub struct CommonSupergraph {
    pub graph: Graph,
    /// Inclusion of the first graph (an injective hom).
    pub left: GraphMap,
    /// Inclusion of the second graph.
    pub right: GraphMap,
}

/// Disjoint union of `g` and `h` plus one bridge edge between their first
/// vertices. Labels are prefixed with `a.` and `b.`.
pub fn common_supergraph(g: &Graph, h: &Graph) -> CommonSupergraph {
    let offset = g.vertex_count();
    let mut vertex_labels: Vec<String> = g.vertex_labels().iter().map(|l| format!("a.{l}")).collect();
    vertex_labels.extend(h.vertex_labels().iter().map(|l| format!("b.{l}")));
    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    pairs.extend(h.edges().iter().map(|&(x, y)| (x + offset, y + offset)));
    let mut edge_labels: Vec<String> = g.edge_labels().iter().map(|l| format!("a.{l}")).collect();
    edge_labels.extend(h.edge_labels().iter().map(|l| format!("b.{l}")));
    pairs.push((0, offset));
    edge_labels.push("bridge".into());
    let graph = Graph::with_labels(vertex_labels, pairs, edge_labels).expect("disjoint union is simple");
    let left = GraphMap::new(g.clone(), graph.clone(), (0..offset).collect()).expect("in range");
    let right = GraphMap::new(h.clone(), graph.clone(), (offset..graph.vertex_count()).collect())
        .expect("in range");
    debug_assert!(classify_assignment(g, &graph, left.assignment()).is_hom);
    CommonSupergraph { graph, left, right }
}

#[cfg(test)]
impl CollectionMap {
    fn with_free_provenance(mut self) -> Self {
        self.provenance = Provenance::Free;
        self
    }
}
