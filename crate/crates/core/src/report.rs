//! Machine-readable analysis reports and their text rendering.
//!
//! Every section stores labels rather than indices so the JSON stands on its
//! own; the text rendering is produced from the same structure.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::conway::{
    ConwayTriplet, DoubletReport, Fallback, LadderReport, LevelOutcome, TaskAlternative, Verdict,
};
use crate::graph::Graph;
use crate::induced::{InducedMap, TConwayMorphism};
use crate::morphism::{GraphMap, MorphismLevel};
use crate::poset::cover_relations;
use crate::topology::GraphTopologySpace;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRow {
    pub id: String,
    pub endpoints: [String; 2],
}

impl GraphSummary {
    fn size(&self) -> String {
        counted(self.vertices.len(), self.edges.len())
    }

    pub fn of(name: &str, g: &Graph) -> GraphSummary {
        GraphSummary {
            name: name.to_string(),
            vertices: g.vertex_labels().to_vec(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| EdgeRow {
                    id: g.edge_label(e).to_string(),
                    endpoints: [g.vertex_label(a).to_string(), g.vertex_label(b).to_string()],
                })
                .collect(),
        }
    }
}

/// One row `from ↦ to` of a map table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRow {
    pub from: String,
    pub to: String,
}

pub fn map_rows(m: &GraphMap) -> Vec<MapRow> {
    let (s, t) = (m.source(), m.target());
    s.vertices()
        .map(|v| MapRow {
            from: s.vertex_label(v).to_string(),
            to: t.vertex_label(m.image(v)).to_string(),
        })
        .collect()
}

fn assignment_rows(source: &Graph, target: &Graph, a: &[usize]) -> Vec<MapRow> {
    source
        .vertices()
        .map(|v| MapRow {
            from: source.vertex_label(v).to_string(),
            to: target.vertex_label(a[v]).to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSection {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<MapRow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologicalSection {
    pub continuous_map: Verdict,
    pub nontrivial_map: Verdict,
    pub continuous_injection: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injection_witness: Option<Vec<MapRow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoreComplicatedSection {
    pub literal: bool,
    pub excluding_constant_maps: Option<bool>,
    pub caveat: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubletSection {
    pub hom: LevelSection,
    pub w_hom: LevelSection,
    pub topological: TopologicalSection,
    pub more_complicated: MoreComplicatedSection,
}

impl DoubletSection {
    /// `spaces` are the two collections, needed to label an injection witness.
    pub fn of(
        r: &DoubletReport,
        gs: &Graph,
        go: &Graph,
        spaces: Option<(&GraphTopologySpace, &GraphTopologySpace)>,
    ) -> DoubletSection {
        let level = |o: &LevelOutcome| LevelSection {
            verdict: o.verdict,
            witness: o.witness.as_ref().map(|a| assignment_rows(gs, go, a)),
        };
        let injection_witness = match (&r.topological.injection_witness, spaces) {
            (Some(a), Some((s, o))) => Some(
                a.iter()
                    .enumerate()
                    .map(|(x, &y)| MapRow {
                        from: s.display(x),
                        to: o.display(y),
                    })
                    .collect(),
            ),
            _ => None,
        };
        DoubletSection {
            hom: level(&r.hom),
            w_hom: level(&r.w_hom),
            topological: TopologicalSection {
                continuous_map: r.topological.continuous_map,
                nontrivial_map: r.topological.nontrivial_map,
                continuous_injection: r.topological.continuous_injection,
                injection_witness,
            },
            more_complicated: MoreComplicatedSection {
                literal: r.more_complicated.literal,
                excluding_constant_maps: r.more_complicated.excluding_constant_maps,
                caveat: r.more_complicated.caveat.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    pub task_vertex: String,
    pub system_vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexitySection {
    pub edges: usize,
    pub vertices: usize,
    pub canonical: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletSection {
    pub rank: usize,
    pub level: MorphismLevel,
    pub pareto: bool,
    pub correspondences: usize,
    pub complexity: ComplexitySection,
    pub task: GraphSummary,
    pub p: Vec<MapRow>,
    pub i: Vec<MapRow>,
    pub fibers: Vec<FiberRow>,
    /// Organization element to owned system elements, `*` when unmatched.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub responsibilities: Option<Vec<MapRow>>,
}

impl TripletSection {
    pub fn of(rank: usize, t: &ConwayTriplet, q_sharp: Option<&TConwayMorphism>) -> TripletSection {
        let (gs, gt) = (t.system(), t.task());
        TripletSection {
            rank,
            level: t.level,
            pareto: true,
            correspondences: 1,
            complexity: ComplexitySection {
                edges: t.complexity.edges,
                vertices: t.complexity.vertices,
                canonical: t.complexity.canonical.to_hex(),
            },
            task: GraphSummary::of("task", gt),
            p: map_rows(&t.p),
            i: map_rows(&t.i),
            fibers: t
                .fibers()
                .iter()
                .enumerate()
                .map(|(tv, f)| FiberRow {
                    task_vertex: gt.vertex_label(tv).to_string(),
                    system_vertices: f.iter().map(|&v| gs.vertex_label(v).to_string()).collect(),
                })
                .collect(),
            responsibilities: q_sharp.map(|q| {
                q.table()
                    .into_iter()
                    .map(|(from, to)| MapRow { from, to })
                    .collect()
            }),
        }
    }

    pub fn of_alternative(rank: usize, a: &TaskAlternative, q_sharp: Option<&TConwayMorphism>) -> TripletSection {
        let mut s = TripletSection::of(rank, &a.triplet, q_sharp);
        s.pareto = a.pareto;
        s.correspondences = a.correspondences.len();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallbackSection {
    pub level: MorphismLevel,
    pub kept_vertices: Vec<String>,
    pub kept_edges: Vec<String>,
    pub dropped_vertices: Vec<String>,
    pub dropped_edges: Vec<String>,
    pub map: Vec<MapRow>,
    pub exhaustive: bool,
    pub warning: String,
}

impl FallbackSection {
    pub fn of(gs: &Graph, level: MorphismLevel, f: &Fallback) -> FallbackSection {
        let labels = |vs: &[usize]| vs.iter().map(|&v| gs.vertex_label(v).to_string()).collect();
        let edge_labels = |es: &[usize]| es.iter().map(|&e| gs.edge_label(e).to_string()).collect();
        let warning = if f.dropped_vertices.is_empty() && f.dropped_edges.is_empty() {
            "the whole system corresponds to the organization".to_string()
        } else {
            format!(
                "only part of the system corresponds to the organization; {} vertices and {} edges are outside it, \
so the system will tend to be reshaped after the organization",
                f.dropped_vertices.len(),
                f.dropped_edges.len()
            )
        };
        FallbackSection {
            level,
            kept_vertices: labels(&f.subgraph.vertices().collect::<Vec<_>>()),
            kept_edges: edge_labels(&f.subgraph.edges().collect::<Vec<_>>()),
            dropped_vertices: labels(&f.dropped_vertices),
            dropped_edges: edge_labels(&f.dropped_edges),
            map: map_rows(&f.map),
            exhaustive: f.exhaustive,
            warning,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySection {
    pub graph: GraphSummary,
    pub element_count: usize,
    pub elements: Vec<String>,
    /// Cover relations of the containment order.
    pub covers: Vec<MapRow>,
}

impl TopologySection {
    pub fn of(name: &str, space: &GraphTopologySpace) -> TopologySection {
        TopologySection {
            graph: GraphSummary::of(name, space.graph()),
            element_count: space.len(),
            elements: (0..space.len()).map(|x| space.display(x)).collect(),
            covers: cover_relations(space)
                .into_iter()
                .map(|(a, b)| MapRow {
                    from: space.display(a),
                    to: space.display(b),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedSection {
    pub induced: Vec<MapRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub responsibilities: Option<Vec<MapRow>>,
}

impl InducedSection {
    pub fn of(f: &InducedMap, q_sharp: Option<&TConwayMorphism>) -> InducedSection {
        let rows = |t: Vec<(String, String)>| t.into_iter().map(|(from, to)| MapRow { from, to }).collect();
        InducedSection {
            induced: rows(f.table()),
            responsibilities: q_sharp.map(|q| rows(q.table())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderSection {
    pub commutes: bool,
    pub levels: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<LadderReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Everything one CLI invocation computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub report_version: u32,
    pub command: String,
    pub budgets: Budgets,
    pub system: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub organization: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doublet: Option<DoubletSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triplets: Vec<TripletSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triplets_complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<FallbackSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced: Option<InducedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderSection>,
}

impl AnalysisReport {
    pub fn new(command: &str, budgets: Budgets, system: GraphSummary) -> AnalysisReport {
        AnalysisReport {
            report_version: REPORT_VERSION,
            command: command.to_string(),
            budgets,
            system,
            organization: None,
            doublet: None,
            triplets: Vec::new(),
            triplets_complete: None,
            fallback: None,
            topology: None,
            induced: None,
            ladder: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "system: {} ({})", self.system.name, self.system.size()).unwrap();
        if let Some(o) = &self.organization {
            writeln!(w, "organization: {} ({})", o.name, o.size()).unwrap();
        }
        if let Some(d) = &self.doublet {
            writeln!(w, "\ncorrespondences").unwrap();
            for (name, s) in [("hom", &d.hom), ("w-hom", &d.w_hom)] {
                writeln!(w, "  {name:<22} {}", verdict_text(s.verdict)).unwrap();
                if let Some(rows) = &s.witness {
                    writeln!(w, "    witness: {}", inline_rows(rows)).unwrap();
                }
            }
            let t = &d.topological;
            writeln!(w, "  {:<22} {}", "continuous map", verdict_text(t.continuous_map)).unwrap();
            writeln!(w, "  {:<22} {}", "non-constant map", verdict_text(t.nontrivial_map)).unwrap();
            writeln!(w, "  {:<22} {}", "continuous injection", verdict_text(t.continuous_injection)).unwrap();
            let mc = &d.more_complicated;
            let reading = match mc.excluding_constant_maps {
                Some(true) => "yes",
                Some(false) => "no",
                None => "undecided",
            };
            writeln!(w, "  system more complicated than organization: {reading} (note: {})", mc.caveat).unwrap();
        }
        for t in &self.triplets {
            writeln!(
                w,
                "\ntask graph #{} ({}, {}{}, {} correspondence{})",
                t.rank,
                t.level,
                counted(t.complexity.vertices, t.complexity.edges),
                if t.pareto { ", pareto-minimal" } else { "" },
                t.correspondences,
                if t.correspondences == 1 { "" } else { "s" }
            )
            .unwrap();
            for e in &t.task.edges {
                writeln!(w, "  {}: {} -- {}", e.id, e.endpoints[0], e.endpoints[1]).unwrap();
            }
            writeln!(w, "  p: {}", inline_rows(&t.p)).unwrap();
            writeln!(w, "  i: {}", inline_rows(&t.i)).unwrap();
            for f in &t.fibers {
                writeln!(w, "  fiber {}: {{{}}}", f.task_vertex, f.system_vertices.join(", ")).unwrap();
            }
            if let Some(r) = &t.responsibilities {
                writeln!(w, "  responsibilities:").unwrap();
                for row in r {
                    writeln!(w, "    {} ↦ {}", row.from, row.to).unwrap();
                }
            }
        }
        if self.triplets_complete == Some(false) {
            writeln!(w, "\nwarning: search budget exhausted; the task list may be incomplete").unwrap();
        }
        if let Some(f) = &self.fallback {
            writeln!(w, "\ntruncated system ({})", f.level).unwrap();
            writeln!(w, "  kept vertices: {{{}}}", f.kept_vertices.join(", ")).unwrap();
            writeln!(w, "  kept edges: {{{}}}", f.kept_edges.join(", ")).unwrap();
            writeln!(w, "  map: {}", inline_rows(&f.map)).unwrap();
            if !f.exhaustive {
                writeln!(w, "  (budget exhausted; the truncation may not be maximal)").unwrap();
            }
            writeln!(w, "  warning: {}", f.warning).unwrap();
        }
        if let Some(t) = &self.topology {
            writeln!(w, "{} connected subgraphs", t.element_count).unwrap();
            for e in &t.elements {
                writeln!(w, "  {e}").unwrap();
            }
            writeln!(w, "covers").unwrap();
            for c in &t.covers {
                writeln!(w, "  {} ⊂ {}", c.from, c.to).unwrap();
            }
        }
        if let Some(i) = &self.induced {
            writeln!(w, "\ninduced map").unwrap();
            for row in &i.induced {
                writeln!(w, "  {} ↦ {}", row.from, row.to).unwrap();
            }
            if let Some(r) = &i.responsibilities {
                writeln!(w, "responsibilities").unwrap();
                for row in r {
                    writeln!(w, "  {} ↦ {}", row.from, row.to).unwrap();
                }
            }
        }
        if let Some(l) = &self.ladder {
            writeln!(w, "\nladder with {} levels: {}", l.levels, if l.commutes { "commutes" } else { "does not commute" }).unwrap();
            if let Some(e) = &l.error {
                writeln!(w, "  {e}").unwrap();
            }
            if let Some(r) = &l.report {
                for rung in &r.rungs {
                    let level = rung.rung_level.map_or("not a w-hom".to_string(), |l| l.to_string());
                    write!(w, "  rung {}: {level}", rung.level).unwrap();
                    if let Some(v) = rung.diagonal_w_hom {
                        write!(w, "; diagonal w-hom {}", verdict_text(v)).unwrap();
                    }
                    if let Some(c) = rung.diagonal_nontrivial_continuous {
                        write!(w, "; diagonal non-constant continuous map {}", if c { "exists" } else { "absent" }).unwrap();
                    }
                    writeln!(w).unwrap();
                }
            }
        }
        out
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Exists => "exists",
        Verdict::ProvenAbsent => "absent",
        Verdict::BudgetExceeded => "budget exceeded",
    }
}

fn inline_rows(rows: &[MapRow]) -> String {
    rows.iter()
        .map(|r| format!("{}→{}", r.from, r.to))
        .collect::<Vec<_>>()
        .join(", ")
}

fn counted(vertices: usize, edges: usize) -> String {
    let v = if vertices == 1 { "vertex" } else { "vertices" };
    let e = if edges == 1 { "edge" } else { "edges" };
    format!("{vertices} {v}, {edges} {e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::analyze_doublet;

    #[test]
    fn text_and_json_share_data() {
        let gs = Graph::star(2);
        let go = Graph::point();
        let r = analyze_doublet(&gs, &go, &Budgets::default()).unwrap();
        let mut report = AnalysisReport::new("analyze", Budgets::default(), GraphSummary::of("P3", &gs));
        report.organization = Some(GraphSummary::of("point", &go));
        report.doublet = Some(DoubletSection::of(&r, &gs, &go, None));
        let text = report.render_text();
        assert!(text.contains("hom                    absent"));
        assert!(text.contains("w-hom                  exists"));
        let back: AnalysisReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }
}
