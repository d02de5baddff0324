//! Graph and map documents (JSON) and DOT export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::{build_hierarchy, HierarchySequence};
use crate::graph::{Graph, Subgraph};
use crate::morphism::GraphMap;
use crate::topology::{CollectionMap, GraphTopologySpace};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl DocumentError {
    fn from_json(e: serde_json::Error) -> DocumentError {
        use serde_json::error::Category;
        match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => DocumentError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            },
            Category::Data => DocumentError::Schema(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    Organization,
    Task,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub endpoints: [String; 2],
}

/// One graph on disk. Vertex and edge ids become the graph's labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format_version: u32,
    pub role: Role,
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
    /// Successive vertex partitions, each a list of blocks of vertex ids.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<Vec<Vec<Vec<String>>>>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph, role: Role) -> GraphDocument {
        GraphDocument {
            format_version: FORMAT_VERSION,
            role,
            vertices: g
                .vertex_labels()
                .iter()
                .map(|l| VertexEntry {
                    id: l.clone(),
                    label: None,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| EdgeEntry {
                    id: g.edge_label(e).to_string(),
                    endpoints: [g.vertex_label(a).to_string(), g.vertex_label(b).to_string()],
                })
                .collect(),
            hierarchy: None,
        }
    }

    /// Builds the graph, checking ids first (schema) and graph invariants second.
    pub fn to_graph(&self) -> Result<Graph, DocumentError> {
        let mut ids = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if ids.insert(v.id.as_str(), i).is_some() {
                return Err(DocumentError::Schema(format!("duplicate vertex id `{}`", v.id)));
            }
        }
        let mut edge_ids = HashMap::new();
        let mut pairs = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if edge_ids.insert(e.id.as_str(), ()).is_some() {
                return Err(DocumentError::Schema(format!("duplicate edge id `{}`", e.id)));
            }
            let mut ends = [0; 2];
            for (slot, name) in ends.iter_mut().zip(&e.endpoints) {
                *slot = *ids.get(name.as_str()).ok_or_else(|| {
                    DocumentError::Schema(format!("edge `{}` references unknown vertex `{name}`", e.id))
                })?;
            }
            pairs.push((ends[0], ends[1]));
        }
        Graph::with_labels(
            self.vertices.iter().map(|v| v.id.clone()).collect(),
            pairs,
            self.edges.iter().map(|e| e.id.clone()).collect(),
        )
        .map_err(|e| DocumentError::Validation(e.to_string()))
    }

    /// The hierarchy plan as vertex indices.
    pub fn plan(&self, g: &Graph) -> Result<Vec<Vec<Vec<usize>>>, DocumentError> {
        let Some(hierarchy) = &self.hierarchy else {
            return Ok(Vec::new());
        };
        hierarchy
            .iter()
            .map(|partition| {
                partition
                    .iter()
                    .map(|block| {
                        block
                            .iter()
                            .map(|id| {
                                g.vertex_by_label(id).ok_or_else(|| {
                                    DocumentError::Schema(format!("hierarchy references unknown vertex `{id}`"))
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn hierarchy_sequence(&self, g: &Graph) -> Result<HierarchySequence, DocumentError> {
        build_hierarchy(g, &self.plan(g)?).map_err(|e| DocumentError::Validation(e.to_string()))
    }
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument, DocumentError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(DocumentError::from_json)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocumentError::Schema(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    let g = doc.to_graph()?;
    if doc.hierarchy.is_some() {
        doc.hierarchy_sequence(&g)?;
    }
    Ok(doc)
}

pub fn serialize_graph_document(doc: &GraphDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Subgraph given by vertex and edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgraphRef {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<String>,
}

impl SubgraphRef {
    pub fn resolve(&self, g: &Graph) -> Result<Subgraph, DocumentError> {
        let vs = self
            .vertices
            .iter()
            .map(|id| g.vertex_by_label(id).ok_or_else(|| DocumentError::Schema(format!("unknown vertex `{id}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let es = self
            .edges
            .iter()
            .map(|id| g.edge_by_label(id).ok_or_else(|| DocumentError::Schema(format!("unknown edge `{id}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Subgraph::new(g, vs, es).map_err(|e| DocumentError::Validation(e.to_string()))
    }

    pub fn of(g: &Graph, sub: &Subgraph) -> SubgraphRef {
        SubgraphRef {
            vertices: sub.vertices().map(|v| g.vertex_label(v).to_string()).collect(),
            edges: sub.edges().map(|e| g.edge_label(e).to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub source: SubgraphRef,
    pub target: SubgraphRef,
}

/// A vertex map between two graphs, or generator images of a collection map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MapDocument {
    VertexMap { assignment: BTreeMap<String, String> },
    CollectionMap { entries: Vec<GeneratorEntry> },
}

pub fn parse_map_document(text: &str) -> Result<MapDocument, DocumentError> {
    serde_json::from_str(text).map_err(DocumentError::from_json)
}

impl MapDocument {
    pub fn to_graph_map(&self, source: &Graph, target: &Graph) -> Result<GraphMap, DocumentError> {
        let MapDocument::VertexMap { assignment } = self else {
            return Err(DocumentError::Schema("expected a vertex-map".into()));
        };
        let mut images = vec![None; source.vertex_count()];
        for (from, to) in assignment {
            let v = source
                .vertex_by_label(from)
                .ok_or_else(|| DocumentError::Schema(format!("unknown source vertex `{from}`")))?;
            let t = target
                .vertex_by_label(to)
                .ok_or_else(|| DocumentError::Schema(format!("unknown target vertex `{to}`")))?;
            images[v] = Some(t);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(v, t)| {
                t.ok_or_else(|| DocumentError::Validation(format!("vertex `{}` has no image", source.vertex_label(v))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GraphMap::new(source.clone(), target.clone(), images).map_err(|e| DocumentError::Validation(e.to_string()))
    }

    pub fn to_collection_map(
        &self,
        source: &Arc<GraphTopologySpace>,
        target: &Arc<GraphTopologySpace>,
    ) -> Result<CollectionMap, DocumentError> {
        let MapDocument::CollectionMap { entries } = self else {
            return Err(DocumentError::Schema("expected a collection-map".into()));
        };
        let pairs = entries
            .iter()
            .map(|e| Ok((e.source.resolve(source.graph())?, e.target.resolve(target.graph())?)))
            .collect::<Result<Vec<_>, DocumentError>>()?;
        CollectionMap::from_generators(source.clone(), target.clone(), &pairs)
            .map_err(|e| DocumentError::Validation(e.to_string()))
    }

    pub fn from_graph_map(m: &GraphMap) -> MapDocument {
        let (s, t) = (m.source(), m.target());
        MapDocument::VertexMap {
            assignment: s
                .vertices()
                .map(|v| (s.vertex_label(v).to_string(), t.vertex_label(m.image(v)).to_string()))
                .collect(),
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// Rendering options for [`export_dot`].
#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    pub name: Option<String>,
    /// Colour class of each vertex, e.g. the task vertex owning it.
    pub classes: Option<Vec<usize>>,
    /// Caption for each colour class.
    pub class_labels: Vec<String>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Deterministic DOT text for an undirected graph.
pub fn export_dot(g: &Graph, options: &DotOptions) -> String {
    let mut out = String::new();
    let name = options.name.as_deref().unwrap_or("G");
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in g.vertices() {
        let label = g.vertex_label(v);
        match options.classes.as_ref().map(|c| c[v]) {
            Some(c) => {
                let caption = options.class_labels.get(c).map(String::as_str).unwrap_or("");
                writeln!(
                    out,
                    "  {} [label={}, style=filled, fillcolor={}, group={}, tooltip={}];",
                    quote(label),
                    quote(label),
                    quote(PALETTE[c % PALETTE.len()]),
                    c,
                    quote(caption)
                )
                .unwrap();
            }
            None => writeln!(out, "  {} [label={}];", quote(label), quote(label)).unwrap(),
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let same = options.classes.as_ref().is_some_and(|c| c[a] == c[b]);
        let style = if same { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} -- {} [label={}{}];",
            quote(g.vertex_label(a)),
            quote(g.vertex_label(b)),
            quote(g.edge_label(e)),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = r#"{
  "format_version": 1,
  "role": "system",
  "vertices": [{"id": "v1"}, {"id": "v2"}, {"id": "v3"}],
  "edges": [
    {"id": "e1", "endpoints": ["v1", "v2"]},
    {"id": "e2", "endpoints": ["v1", "v3"]}
  ]
}"#;

    #[test]
    fn parses_p3() {
        let doc = parse_graph_document(P3).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(g, Graph::star(2));
        let again = parse_graph_document(&serialize_graph_document(&doc)).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn minimal_document() {
        let doc = parse_graph_document(r#"{"format_version":1,"role":"organization","vertices":[{"id":"v1"}]}"#).unwrap();
        assert_eq!(doc.to_graph().unwrap(), Graph::point());
    }

    #[test]
    fn error_classes() {
        let syntax = parse_graph_document("{\n  \"format_version\": 1,\n  oops\n}").unwrap_err();
        assert!(matches!(syntax, DocumentError::Parse { line: 3, .. }));
        let unknown = P3.replace("[\"v1\", \"v3\"]", "[\"v1\", \"v9\"]");
        assert!(matches!(parse_graph_document(&unknown), Err(DocumentError::Schema(_))));
        let version = P3.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(matches!(parse_graph_document(&version), Err(DocumentError::Schema(_))));
        let missing = r#"{"format_version":1,"vertices":[]}"#;
        assert!(matches!(parse_graph_document(missing), Err(DocumentError::Schema(_))));
        let looped = P3.replace("[\"v1\", \"v3\"]", "[\"v1\", \"v1\"]");
        assert!(matches!(parse_graph_document(&looped), Err(DocumentError::Validation(_))));
    }

    #[test]
    fn hierarchy_is_validated() {
        let mut doc = GraphDocument::from_graph(&Graph::path(4), Role::System);
        doc.hierarchy = Some(vec![vec![vec!["v1".into(), "v3".into()], vec!["v2".into(), "v4".into()]]]);
        let text = serialize_graph_document(&doc);
        assert!(matches!(parse_graph_document(&text), Err(DocumentError::Validation(_))));
        doc.hierarchy = Some(vec![vec![vec!["v1".into(), "v2".into()], vec!["v3".into(), "v4".into()]]]);
        let parsed = parse_graph_document(&serialize_graph_document(&doc)).unwrap();
        assert_eq!(parsed.hierarchy_sequence(&Graph::path(4)).unwrap().len(), 3);
    }

    #[test]
    fn map_documents() {
        let text = r#"{"kind": "vertex-map", "assignment": {"v1": "v1", "v2": "v2", "v3": "v2"}}"#;
        let m = parse_map_document(text).unwrap();
        let q = m.to_graph_map(&Graph::star(2), &Graph::path(2)).unwrap();
        assert_eq!(q.assignment(), &[0, 1, 1]);
        assert_eq!(MapDocument::from_graph_map(&q), m);
        assert!(matches!(parse_map_document(r#"{"kind": "other"}"#), Err(DocumentError::Schema(_))));
    }

    #[test]
    fn dot_is_deterministic_and_coloured() {
        let g = Graph::star(2);
        let plain = export_dot(&Graph::point(), &DotOptions::default());
        assert_eq!(plain, "graph \"G\" {\n  node [shape=circle];\n  \"v1\" [label=\"v1\"];\n}\n");
        let opts = DotOptions {
            name: Some("P3".into()),
            classes: Some(vec![0, 1, 1]),
            class_labels: vec!["A".into(), "B".into()],
        };
        let a = export_dot(&g, &opts);
        assert_eq!(a, export_dot(&g, &opts));
        assert_eq!(a.matches("fillcolor").count(), 3);
        assert!(a.contains(PALETTE[0]) && a.contains(PALETTE[1]));
    }
}
