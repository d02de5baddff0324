//! Pointed graphs, the backward map induced by a continuous injection of
//! collections, and the responsibility map of a t-Conway triplet.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::morphism::GraphMap;
use crate::topology::CollectionMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InducedError {
    #[error("collection map is not a continuous injection")]
    NotContinuousInjection,
    #[error("projection is not a surjective w-homomorphism")]
    NotSurjectiveWHom,
    #[error("projection target does not match the source of the collection map")]
    Mismatch,
}

/// A vertex, an edge, or the generic point `*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Edge(usize),
    Star,
}

/// A graph together with a generic point `*` that is neither a vertex nor an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedGraph {
    base: Graph,
}

impl PointedGraph {
    pub fn new(base: Graph) -> PointedGraph {
        PointedGraph { base }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Vertices, then edges, then `*`.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.base
            .vertices()
            .map(Element::Vertex)
            .chain((0..self.base.edge_count()).map(Element::Edge))
            .chain(std::iter::once(Element::Star))
    }

    pub fn label(&self, x: Element) -> &str {
        match x {
            Element::Vertex(v) => self.base.vertex_label(v),
            Element::Edge(e) => self.base.edge_label(e),
            Element::Star => "*",
        }
    }
}

/// Which rule decided an element's image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    VertexImage,
    EdgeImage,
    Unmatched,
}

/// `f* : Ḡ' → Ḡ` for a continuous injection `f : C_G → C_G'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    source: PointedGraph,
    target: PointedGraph,
    vertices: Vec<(Element, Clause)>,
    edges: Vec<(Element, Clause)>,
}

impl InducedMap {
    /// Ḡ', the graph the collection map lands in.
    pub fn source(&self) -> &PointedGraph {
        &self.source
    }

    /// Ḡ, the graph the collection map starts from.
    pub fn target(&self) -> &PointedGraph {
        &self.target
    }

    pub fn image(&self, x: Element) -> Element {
        match x {
            Element::Vertex(v) => self.vertices[v].0,
            Element::Edge(e) => self.edges[e].0,
            Element::Star => Element::Star,
        }
    }

    pub fn clause(&self, x: Element) -> Clause {
        match x {
            Element::Vertex(v) => self.vertices[v].1,
            Element::Edge(e) => self.edges[e].1,
            Element::Star => Clause::Unmatched,
        }
    }

    /// Rows `(x, f*(x))` as labels, vertices first, ending with `* ↦ *`.
    pub fn table(&self) -> Vec<(String, String)> {
        self.source
            .elements()
            .map(|x| (self.source.label(x).to_string(), self.target.label(self.image(x)).to_string()))
            .collect()
    }

    /// Elements of Ḡ' sent to `y`.
    pub fn preimage(&self, y: Element) -> Vec<Element> {
        self.source.elements().filter(|&x| self.image(x) == y).collect()
    }
}

impl fmt::Display for InducedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in self.table() {
            writeln!(f, "{x} ↦ {y}")?;
        }
        Ok(())
    }
}

/// Builds `f*` by three rules applied in order.
///
/// 1. Every vertex and edge of `f({v}, ∅)` goes to `v`. Vertices are visited
///    by image size, then index; an element already claimed keeps its image.
/// 2. For edges `e` in ascending index, a vertex of `f(e)` outside every
///    vertex image goes to the lower-index endpoint of `e` (later edges
///    overwrite earlier ones), and an edge of `f(e)` not claimed by rule 1 and
///    not in the image of any earlier edge goes to `e`.
/// 3. Everything left goes to `*`.
pub fn induce_fstar(f: &CollectionMap) -> Result<InducedMap, InducedError> {
    let class = f.classify();
    if !(class.continuous && class.injective) {
        return Err(InducedError::NotContinuousInjection);
    }
    let (src, tgt) = (f.source(), f.target());
    let (g, g_prime) = (src.graph(), tgt.graph());
    let mut vertices = vec![(Element::Star, Clause::Unmatched); g_prime.vertex_count()];
    let mut edges = vec![(Element::Star, Clause::Unmatched); g_prime.edge_count()];

    let vertex_images: Vec<_> = g.vertices().map(|v| tgt.element(f.image(src.vertex_element(v)))).collect();
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (vertex_images[v].size(), v));
    for v in order {
        let image = vertex_images[v];
        for x in image.vertices() {
            if vertices[x].1 == Clause::Unmatched {
                vertices[x] = (Element::Vertex(v), Clause::VertexImage);
            }
        }
        for y in image.edges() {
            if edges[y].1 == Clause::Unmatched {
                edges[y] = (Element::Vertex(v), Clause::VertexImage);
            }
        }
    }

    let mut earlier_edges = vec![false; g_prime.edge_count()];
    for e in 0..g.edge_count() {
        let image = tgt.element(f.image(src.edge_element(e)));
        let t0 = g.endpoints(e).0;
        for x in image.vertices() {
            if vertices[x].1 != Clause::VertexImage {
                vertices[x] = (Element::Vertex(t0), Clause::EdgeImage);
            }
        }
        for y in image.edges() {
            if edges[y].1 != Clause::VertexImage && !earlier_edges[y] {
                edges[y] = (Element::Edge(e), Clause::EdgeImage);
            }
        }
        for y in image.edges() {
            earlier_edges[y] = true;
        }
    }

    Ok(InducedMap {
        source: PointedGraph::new(g_prime.clone()),
        target: PointedGraph::new(g.clone()),
        vertices,
        edges,
    })
}

/// The part of the system graph a team or channel answers for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Responsibility {
    Modules { vertices: Vec<usize>, edges: Vec<usize> },
    Star,
}

/// `q̂#`: organization vertices and edges to parts of the system graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TConwayMorphism {
    system: Graph,
    organization: Graph,
    task: Graph,
    induced: InducedMap,
    vertices: Vec<Responsibility>,
    edges: Vec<Responsibility>,
}

impl TConwayMorphism {
    pub fn system(&self) -> &Graph {
        &self.system
    }

    pub fn organization(&self) -> &Graph {
        &self.organization
    }

    pub fn task(&self) -> &Graph {
        &self.task
    }

    /// `î*`, from the organization to the task graph.
    pub fn induced(&self) -> &InducedMap {
        &self.induced
    }

    pub fn vertex(&self, v: usize) -> &Responsibility {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Responsibility {
        &self.edges[e]
    }

    /// Rows `(organization element, owned system elements)`; `*` when unmatched.
    pub fn table(&self) -> Vec<(String, String)> {
        let render = |r: &Responsibility| match r {
            Responsibility::Star => "*".to_string(),
            Responsibility::Modules { vertices, edges } => {
                let mut parts: Vec<&str> = vertices.iter().map(|&v| self.system.vertex_label(v)).collect();
                parts.extend(edges.iter().map(|&e| self.system.edge_label(e)));
                format!("{{{}}}", parts.join(", "))
            }
        };
        let org = &self.organization;
        org.vertices()
            .map(|v| (org.vertex_label(v).to_string(), render(&self.vertices[v])))
            .chain((0..org.edge_count()).map(|e| (org.edge_label(e).to_string(), render(&self.edges[e]))))
            .collect()
    }
}

/// Composes the induced map of `ihat : C_T → C_O` with the fibers of the
/// surjective w-hom `p : G_S → G_T`.
///
/// An organization element whose induced image is a task vertex `t` answers
/// for the fiber `p⁻¹(t)` together with the system edges collapsed into it; one
/// whose image is a task edge answers for the system edges over that edge.
pub fn conway_fsharp(p: &GraphMap, ihat: &CollectionMap) -> Result<TConwayMorphism, InducedError> {
    let class = p.classify();
    if !(class.is_w_hom && class.is_surjective) {
        return Err(InducedError::NotSurjectiveWHom);
    }
    if p.target() != ihat.source().graph() {
        return Err(InducedError::Mismatch);
    }
    let induced = induce_fstar(ihat)?;
    let system = p.source();
    let task = p.target();
    let owned = |y: Element| -> Responsibility {
        match y {
            Element::Star => Responsibility::Star,
            Element::Vertex(t) => Responsibility::Modules {
                vertices: system.vertices().filter(|&v| p.image(v) == t).collect(),
                edges: (0..system.edge_count())
                    .filter(|&e| {
                        let (a, b) = system.endpoints(e);
                        p.image(a) == t && p.image(b) == t
                    })
                    .collect(),
            },
            Element::Edge(f) => Responsibility::Modules {
                vertices: Vec::new(),
                edges: p.edge_preimage(f),
            },
        }
    };
    let org = ihat.target().graph();
    let vertices = org.vertices().map(|v| owned(induced.image(Element::Vertex(v)))).collect();
    let edges = (0..org.edge_count()).map(|e| owned(induced.image(Element::Edge(e)))).collect();
    Ok(TConwayMorphism {
        system: system.clone(),
        organization: org.clone(),
        task: task.clone(),
        induced,
        vertices,
        edges,
    })
}
