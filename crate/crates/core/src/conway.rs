//! Conway correspondences between a system graph and an organization graph:
//! doublets, triplet decompositions through task graphs, the truncated
//! fallback, and hierarchical ladders.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budgets;
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{Graph, GraphError, Subgraph};
use crate::morphism::{
    find_morphism, search_morphisms, GraphMap, MorphismConstraints, MorphismError, MorphismLevel,
};
use crate::topology::{find_continuous_injection, CollectionMap, GraphTopologySpace, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("map is not a {0}")]
    NotMorphismAtLevel(MorphismLevel),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("ladder sequences have lengths {system}, {organization} and {rungs} rungs")]
    LengthMismatch {
        system: usize,
        organization: usize,
        rungs: usize,
    },
    #[error("rung {level} does not connect the graphs at that level")]
    RungMismatch { level: usize },
    #[error("square {level} does not commute at system vertex {vertex}")]
    NonCommutingSquare { level: usize, vertex: String },
    #[error("task triangle at level {level} does not commute at system vertex {vertex}")]
    NonCommutingTriangle { level: usize, vertex: String },
}

/// Level at which a correspondence is sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Hom,
    WHom,
    Topological,
}

impl From<MorphismLevel> for Level {
    fn from(l: MorphismLevel) -> Self {
        match l {
            MorphismLevel::Hom => Level::Hom,
            MorphismLevel::WHom => Level::WHom,
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Level::Hom => "hom",
            Level::WHom => "w-hom",
            Level::Topological => "topological",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exists,
    ProvenAbsent,
    BudgetExceeded,
}

impl Verdict {
    pub fn exists(self) -> bool {
        self == Verdict::Exists
    }
}

/// Outcome of one graph-level search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOutcome {
    pub verdict: Verdict,
    /// Image of each system vertex, when found.
    pub witness: Option<Vec<usize>>,
}

/// Outcomes at the level of collection maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologicalOutcome {
    /// A continuous map always exists: send everything to one point element.
    pub continuous_map: Verdict,
    /// A continuous map whose image has more than one element.
    pub nontrivial_map: Verdict,
    pub continuous_injection: Verdict,
    /// Images of the system's collection elements, when an injection was found.
    pub injection_witness: Option<Vec<usize>>,
}

/// Whether the system counts as "more complicated" than the organization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityVerdict {
    /// Read literally (no continuous map at all); never true.
    pub literal: bool,
    /// Read as "no continuous map other than constant ones".
    pub excluding_constant_maps: Option<bool>,
    pub caveat: String,
}

const COMPLEXITY_CAVEAT: &str = "constant maps are always continuous, so the literal reading never holds; \
the second reading excludes maps whose image is a single element";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubletReport {
    pub hom: LevelOutcome,
    pub w_hom: LevelOutcome,
    pub topological: TopologicalOutcome,
    pub more_complicated: ComplexityVerdict,
}

impl DoubletReport {
    /// hom ⟹ w-hom ⟹ continuous map, counting only decided verdicts.
    pub fn is_monotone(&self) -> bool {
        let implies = |a: Verdict, b: Verdict| a != Verdict::Exists || b != Verdict::ProvenAbsent;
        implies(self.hom.verdict, self.w_hom.verdict) && implies(self.w_hom.verdict, self.topological.continuous_map)
    }

    pub fn verdict(&self, level: Level) -> Verdict {
        match level {
            Level::Hom => self.hom.verdict,
            Level::WHom => self.w_hom.verdict,
            Level::Topological => self.topological.continuous_map,
        }
    }

    pub fn any_budget_exceeded(&self) -> bool {
        [
            self.hom.verdict,
            self.w_hom.verdict,
            self.topological.nontrivial_map,
            self.topological.continuous_injection,
        ]
        .contains(&Verdict::BudgetExceeded)
    }
}

fn search_level(gs: &Graph, go: &Graph, level: MorphismLevel, budget: u64) -> LevelOutcome {
    match find_morphism(gs, go, &MorphismConstraints::new(level), budget) {
        Ok(Some(m)) => LevelOutcome {
            verdict: Verdict::Exists,
            witness: Some(m.assignment().to_vec()),
        },
        Ok(None) => LevelOutcome {
            verdict: Verdict::ProvenAbsent,
            witness: None,
        },
        Err(_) => LevelOutcome {
            verdict: Verdict::BudgetExceeded,
            witness: None,
        },
    }
}

/// A non-constant continuous map `C_S → C_O` exists exactly when both graphs
/// have an edge: send vertex elements to one endpoint of an organization edge
/// and every other element to that edge.
fn nontrivial_map_exists(gs: &Graph, go: &Graph) -> bool {
    gs.edge_count() > 0 && go.edge_count() > 0
}

/// Searches for correspondences at every level; budget overruns are recorded
/// in the report rather than returned as errors.
pub fn analyze_doublet(gs: &Graph, go: &Graph, budgets: &Budgets) -> Result<DoubletReport, ConwayError> {
    gs.require_connected()?;
    go.require_connected()?;
    let hom = search_level(gs, go, MorphismLevel::Hom, budgets.search_budget);
    let w_hom = search_level(gs, go, MorphismLevel::WHom, budgets.search_budget);
    let nontrivial = nontrivial_map_exists(gs, go);
    let (continuous_injection, injection_witness) = match spaces(gs, go, budgets.subgraph_cap) {
        Ok((s, o)) => match find_continuous_injection(&s, &o, budgets.search_budget) {
            Ok(Some(m)) => (Verdict::Exists, Some(m.assignment().to_vec())),
            Ok(None) => (Verdict::ProvenAbsent, None),
            Err(_) => (Verdict::BudgetExceeded, None),
        },
        Err(_) => (Verdict::BudgetExceeded, None),
    };
    Ok(DoubletReport {
        hom,
        w_hom,
        topological: TopologicalOutcome {
            continuous_map: Verdict::Exists,
            nontrivial_map: if nontrivial {
                Verdict::Exists
            } else {
                Verdict::ProvenAbsent
            },
            continuous_injection,
            injection_witness,
        },
        more_complicated: ComplexityVerdict {
            literal: false,
            excluding_constant_maps: Some(!nontrivial),
            caveat: COMPLEXITY_CAVEAT.to_string(),
        },
    })
}

fn spaces(
    gs: &Graph,
    go: &Graph,
    cap: usize,
) -> Result<(Arc<GraphTopologySpace>, Arc<GraphTopologySpace>), TopologyError> {
    Ok((
        Arc::new(GraphTopologySpace::new(gs, cap)?),
        Arc::new(GraphTopologySpace::new(go, cap)?),
    ))
}

/// Ordering key for task graphs: fewer edges, then fewer vertices, then the
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complexity {
    pub edges: usize,
    pub vertices: usize,
    pub canonical: CanonicalForm,
}

impl Complexity {
    pub fn of(g: &Graph) -> Complexity {
        Complexity {
            edges: g.edge_count(),
            vertices: g.vertex_count(),
            canonical: canonical_form(g),
        }
    }

    /// Pareto dominance on (edges, vertices).
    pub fn dominates(&self, other: &Complexity) -> bool {
        self.edges <= other.edges
            && self.vertices <= other.vertices
            && (self.edges, self.vertices) != (other.edges, other.vertices)
    }
}

/// `q = i ∘ p` with `p : G_S → G_T` surjective and `i : G_T → G_O` injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayTriplet {
    pub level: MorphismLevel,
    pub p: GraphMap,
    pub i: GraphMap,
    pub complexity: Complexity,
}

impl ConwayTriplet {
    pub fn system(&self) -> &Graph {
        self.p.source()
    }

    pub fn task(&self) -> &Graph {
        self.p.target()
    }

    pub fn organization(&self) -> &Graph {
        self.i.target()
    }

    pub fn q(&self) -> GraphMap {
        self.p.then(&self.i).expect("p and i compose")
    }

    /// For each task vertex, the system vertices it owns.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        self.p.fibers()
    }

    /// Re-checks every triplet invariant.
    pub fn verify(&self) -> bool {
        let pc = self.p.classify();
        let ic = self.i.classify();
        pc.is_surjective && pc.is_fibered_at(self.level) && ic.is_hom && ic.is_injective
    }
}

/// Factors `q` through its image.
///
/// The task graph has the image vertices of `q` (in organization order) and
/// the organization edges hit by non-collapsed system edges; `p` is the
/// corestriction and `i` the inclusion.
pub fn decompose(q: &GraphMap, level: MorphismLevel) -> Result<ConwayTriplet, ConwayError> {
    if !q.classify().is_at_level(level) {
        return Err(ConwayError::NotMorphismAtLevel(level));
    }
    let (gs, go) = (q.source(), q.target());
    let mut used = vec![false; go.vertex_count()];
    for &t in q.assignment() {
        used[t] = true;
    }
    let image: Vec<usize> = go.vertices().filter(|&v| used[v]).collect();
    let mut position = vec![usize::MAX; go.vertex_count()];
    for (i, &v) in image.iter().enumerate() {
        position[v] = i;
    }
    let mut hit = vec![false; go.edge_count()];
    for &(a, b) in gs.edges() {
        let (x, y) = (q.image(a), q.image(b));
        if x != y {
            hit[go.edge_between(x, y).expect("q is a w-hom")] = true;
        }
    }
    let task_edges: Vec<usize> = (0..go.edge_count()).filter(|&e| hit[e]).collect();
    let task = Graph::with_labels(
        image.iter().map(|&v| go.vertex_label(v).to_string()).collect(),
        task_edges
            .iter()
            .map(|&e| {
                let (a, b) = go.endpoints(e);
                (position[a], position[b])
            })
            .collect(),
        task_edges.iter().map(|&e| go.edge_label(e).to_string()).collect(),
    )?;
    let p = GraphMap::new(gs.clone(), task.clone(), q.assignment().iter().map(|&t| position[t]).collect())?;
    let i = GraphMap::new(task.clone(), go.clone(), image)?;
    let complexity = Complexity::of(&task);
    let triplet = ConwayTriplet {
        level,
        p,
        i,
        complexity,
    };
    debug_assert_eq!(triplet.q().assignment(), q.assignment());
    Ok(triplet)
}

/// A t-Conway triplet: the lift of a surjective w-hom `p` and a continuous
/// injection `î` of the task collection into the organization collection.
#[derive(Debug, Clone)]
pub struct TopologicalTriplet {
    pub p: GraphMap,
    pub p_hat: CollectionMap,
    pub i_hat: CollectionMap,
}

/// Completes `p : G_S → G_T` to a t-Conway triplet by searching for `î`.
pub fn decompose_topological(
    p: &GraphMap,
    go: &Graph,
    budgets: &Budgets,
) -> Result<Option<TopologicalTriplet>, ConwayError> {
    let class = p.classify();
    if !(class.is_w_hom && class.is_surjective) {
        return Err(ConwayError::NotMorphismAtLevel(MorphismLevel::WHom));
    }
    let s = Arc::new(GraphTopologySpace::new(p.source(), budgets.subgraph_cap)?);
    let t = Arc::new(GraphTopologySpace::new(p.target(), budgets.subgraph_cap)?);
    let o = Arc::new(GraphTopologySpace::new(go, budgets.subgraph_cap)?);
    let p_hat = CollectionMap::lift(p, s, t.clone())?;
    Ok(find_continuous_injection(&t, &o, budgets.search_budget)?.map(|i_hat| TopologicalTriplet {
        p: p.clone(),
        p_hat,
        i_hat,
    }))
}

/// One class of correspondences sharing a fiber partition of the system.
#[derive(Debug, Clone)]
pub struct TaskAlternative {
    pub triplet: ConwayTriplet,
    /// Every correspondence `q` in the class, as system-vertex images.
    pub correspondences: Vec<Vec<usize>>,
    /// Not Pareto-dominated on (edges, vertices) by another alternative.
    pub pareto: bool,
}

#[derive(Debug, Clone)]
pub struct TaskEnumeration {
    pub alternatives: Vec<TaskAlternative>,
    /// False when the search budget ran out and the list may be partial.
    pub complete: bool,
}

fn fiber_partition(assignment: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &t) in assignment.iter().enumerate() {
        blocks.entry(t).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
    out.sort();
    out
}

/// Enumerates every correspondence at `level`, groups them by the partition
/// their fibers induce on the system, and ranks the classes by task-graph
/// complexity with the Pareto-minimal classes first.
pub fn enumerate_task_graphs(
    gs: &Graph,
    go: &Graph,
    level: MorphismLevel,
    budget: u64,
) -> Result<TaskEnumeration, ConwayError> {
    let mut classes: HashMap<Vec<Vec<usize>>, Vec<Vec<usize>>> = HashMap::new();
    let mut first_seen: Vec<Vec<Vec<usize>>> = Vec::new();
    let outcome = search_morphisms(gs, go, &MorphismConstraints::new(level), budget, |a| {
        let key = fiber_partition(a);
        let entry = classes.entry(key.clone()).or_default();
        if entry.is_empty() {
            first_seen.push(key);
        }
        entry.push(a.to_vec());
        ControlFlow::Continue(())
    });
    let complete = match outcome {
        Ok(_) => true,
        Err(MorphismError::SearchBudgetExceeded { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let mut alternatives = Vec::new();
    for key in first_seen {
        let correspondences = classes.remove(&key).expect("recorded class");
        let q = GraphMap::new(gs.clone(), go.clone(), correspondences[0].clone())?;
        alternatives.push(TaskAlternative {
            triplet: decompose(&q, level)?,
            correspondences,
            pareto: false,
        });
    }
    let complexities: Vec<Complexity> = alternatives.iter().map(|a| a.triplet.complexity.clone()).collect();
    for (i, alt) in alternatives.iter_mut().enumerate() {
        alt.pareto = !complexities.iter().any(|c| c.dominates(&complexities[i]));
    }
    alternatives.sort_by(|a, b| {
        (!a.pareto, &a.triplet.complexity, fiber_partition(a.triplet.p.assignment()))
            .cmp(&(!b.pareto, &b.triplet.complexity, fiber_partition(b.triplet.p.assignment())))
    });
    Ok(TaskEnumeration {
        alternatives,
        complete,
    })
}

/// A largest connected piece of the system that does correspond to the
/// organization.
#[derive(Debug, Clone)]
pub struct Fallback {
    pub subgraph: Subgraph,
    /// The truncated system graph `G_S'`, extracted from the subgraph.
    pub truncated: Graph,
    /// System vertex of each vertex of `truncated`.
    pub embedding: Vec<usize>,
    pub map: GraphMap,
    pub dropped_vertices: Vec<usize>,
    pub dropped_edges: Vec<usize>,
    /// False when a budget cut the search short and the result may not be maximal.
    pub exhaustive: bool,
}

/// Finds a maximum (vertices, then edges) connected subgraph of `gs` that
/// admits a correspondence to `go` at `level`. A single vertex always does.
pub fn truncated_fallback(gs: &Graph, go: &Graph, level: MorphismLevel, budgets: &Budgets) -> Fallback {
    let constraints = MorphismConstraints::new(level);
    let single = |exhaustive: bool| {
        let sub = Subgraph::vertex(gs, 0);
        let (truncated, embedding) = gs.extract(&sub);
        let map = GraphMap::constant(&truncated, go, 0);
        finish(gs, sub, truncated, embedding, map, exhaustive)
    };
    let mut candidates = match gs.connected_subgraphs(budgets.subgraph_cap) {
        Ok(c) => c,
        Err(_) => return single(false),
    };
    candidates.sort_by(|a, b| {
        (b.vertex_count(), b.edge_count())
            .cmp(&(a.vertex_count(), a.edge_count()))
            .then_with(|| a.cmp(b))
    });
    let mut known: HashMap<CanonicalForm, bool> = HashMap::new();
    let mut exhaustive = true;
    for sub in candidates {
        let (truncated, embedding) = gs.extract(&sub);
        let form = canonical_form(&truncated);
        if known.get(&form) == Some(&false) {
            continue;
        }
        match find_morphism(&truncated, go, &constraints, budgets.search_budget) {
            Ok(Some(map)) => return finish(gs, sub, truncated, embedding, map, exhaustive),
            Ok(None) => {
                known.insert(form, false);
            }
            Err(_) => exhaustive = false,
        }
    }
    single(exhaustive)
}

fn finish(
    gs: &Graph,
    subgraph: Subgraph,
    truncated: Graph,
    embedding: Vec<usize>,
    map: GraphMap,
    exhaustive: bool,
) -> Fallback {
    let dropped_vertices = gs.vertices().filter(|&v| !subgraph.contains_vertex(v)).collect();
    let dropped_edges = (0..gs.edge_count()).filter(|&e| !subgraph.contains_edge(e)).collect();
    Fallback {
        subgraph,
        truncated,
        embedding,
        map,
        dropped_vertices,
        dropped_edges,
        exhaustive,
    }
}

/// `G_0 → G_1 → ... → G_t = ({v}, ∅)` by surjective w-fibered w-homs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchySequence {
    pub graphs: Vec<Graph>,
    pub maps: Vec<GraphMap>,
    /// For each level, the block of original vertices behind each vertex.
    pub blocks: Vec<Vec<Vec<usize>>>,
}

impl HierarchySequence {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// `p_{k-1} ∘ ... ∘ p_0`, the map from `G_0` to `G_k`.
    pub fn prefix(&self, k: usize) -> GraphMap {
        let mut m = GraphMap::identity(&self.graphs[0]);
        for p in &self.maps[..k] {
            m = m.then(p).expect("consecutive maps compose");
        }
        m
    }
}

fn normalize_partition(n: usize, partition: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, ConwayError> {
    let mut seen = vec![false; n];
    let mut blocks = Vec::with_capacity(partition.len());
    for block in partition {
        if block.is_empty() {
            return Err(ConwayError::InvalidPartition("empty block".into()));
        }
        let mut b = block.clone();
        b.sort_unstable();
        for &v in &b {
            if v >= n {
                return Err(ConwayError::InvalidPartition(format!("vertex index {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ConwayError::InvalidPartition(format!("vertex #{} appears twice", v + 1)));
            }
        }
        blocks.push(b);
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(ConwayError::InvalidPartition(format!("vertex #{} is not covered", v + 1)));
    }
    blocks.sort();
    Ok(blocks)
}

/// Builds the sequence of quotients of `g` by `plan`, each partition given
/// over the vertices of `g`. Blocks must induce connected subgraphs and each
/// partition must coarsen the one before; the single-block partition is
/// appended when missing, and partitions that repeat the previous level are
/// skipped.
pub fn build_hierarchy(g: &Graph, plan: &[Vec<Vec<usize>>]) -> Result<HierarchySequence, ConwayError> {
    g.require_connected()?;
    let n = g.vertex_count();
    let mut partitions: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for partition in plan {
        let blocks = normalize_partition(n, partition)?;
        for b in &blocks {
            let sub = induced_subgraph(g, b);
            if !sub.is_connected(g) {
                return Err(ConwayError::InvalidPartition(format!(
                    "block {} is not connected",
                    block_label(g, b)
                )));
            }
        }
        let previous = partitions.last().expect("non-empty");
        for b in previous {
            if !blocks.iter().any(|c| b.iter().all(|v| c.contains(v))) {
                return Err(ConwayError::InvalidPartition(format!(
                    "block {} is split by a later partition",
                    block_label(g, b)
                )));
            }
        }
        if blocks != *previous {
            partitions.push(blocks);
        }
    }
    if partitions.last().expect("non-empty").len() != 1 {
        partitions.push(vec![(0..n).collect()]);
    }
    let mut graphs = vec![g.clone()];
    for blocks in &partitions[1..] {
        graphs.push(quotient(g, blocks));
    }
    let mut maps = Vec::new();
    for k in 0..partitions.len() - 1 {
        let assignment = partitions[k]
            .iter()
            .map(|b| {
                partitions[k + 1]
                    .iter()
                    .position(|c| c.contains(&b[0]))
                    .expect("coarsening")
            })
            .collect();
        maps.push(GraphMap::new(graphs[k].clone(), graphs[k + 1].clone(), assignment)?);
    }
    Ok(HierarchySequence {
        graphs,
        maps,
        blocks: partitions,
    })
}

fn induced_subgraph(g: &Graph, block: &[usize]) -> Subgraph {
    let edges = (0..g.edge_count()).filter(|&e| {
        let (a, b) = g.endpoints(e);
        block.contains(&a) && block.contains(&b)
    });
    Subgraph::new(g, block.iter().copied(), edges).expect("induced subgraph")
}

fn block_label(g: &Graph, block: &[usize]) -> String {
    block.iter().map(|&v| g.vertex_label(v)).collect::<Vec<_>>().join("+")
}

/// Contracts every block to one vertex labelled by joining its members.
pub fn quotient(g: &Graph, blocks: &[Vec<usize>]) -> Graph {
    let mut owner = vec![0; g.vertex_count()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            owner[v] = i;
        }
    }
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (owner[a].min(owner[b]), owner[a].max(owner[b])))
        .filter(|&(a, b)| a != b)
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let labels: Vec<String> = blocks.iter().map(|b| block_label(g, b)).collect();
    let edge_labels = (1..=pairs.len()).map(|i| format!("e{i}")).collect();
    Graph::with_labels(labels, pairs, edge_labels).expect("quotient of a simple graph is simple")
}

/// Two hierarchies joined level by level by rung maps `q_i`.
#[derive(Debug, Clone)]
pub struct LadderDiagram {
    pub system: HierarchySequence,
    pub organization: HierarchySequence,
    pub rungs: Vec<GraphMap>,
    /// Optional `(p^(i), i^(i))` factoring each rung.
    pub tasks: Vec<Option<(GraphMap, GraphMap)>>,
}

impl LadderDiagram {
    pub fn new(system: HierarchySequence, organization: HierarchySequence, rungs: Vec<GraphMap>) -> LadderDiagram {
        let tasks = vec![None; rungs.len()];
        LadderDiagram {
            system,
            organization,
            rungs,
            tasks,
        }
    }

    /// Rungs above the first, pushed up the ladder:
    /// `q_{i+1}(B) = p'_i(q_i(v))` for the first vertex `v` of the fiber `B`.
    pub fn derive_rungs(
        system: &HierarchySequence,
        organization: &HierarchySequence,
        q0: GraphMap,
    ) -> Result<Vec<GraphMap>, ConwayError> {
        if system.len() != organization.len() {
            return Err(ConwayError::LengthMismatch {
                system: system.len(),
                organization: organization.len(),
                rungs: 1,
            });
        }
        let mut rungs = vec![q0];
        for k in 0..system.len() - 1 {
            let (p, p_org) = (&system.maps[k], &organization.maps[k]);
            let q = rungs.last().expect("non-empty");
            let fibers = p.fibers();
            let assignment = fibers.iter().map(|f| p_org.image(q.image(f[0]))).collect();
            rungs.push(GraphMap::new(
                system.graphs[k + 1].clone(),
                organization.graphs[k + 1].clone(),
                assignment,
            )?);
        }
        Ok(rungs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RungReport {
    pub level: usize,
    /// Strongest level the rung reaches, if it is a w-hom at all.
    pub rung_level: Option<MorphismLevel>,
    pub triangle_commutes: Option<bool>,
    /// Diagonal `G_{S,i+1} → G_{O,i}`, absent on the top rung.
    pub diagonal_w_hom: Option<Verdict>,
    pub diagonal_nontrivial_continuous: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderReport {
    pub squares: usize,
    pub rungs: Vec<RungReport>,
}

/// Verifies `q_{i+1} ∘ p_i = p'_i ∘ q_i` on every vertex, and each attached
/// task triangle `q_i = i^(i) ∘ p^(i)`.
pub fn check_ladder(ld: &LadderDiagram, budget: u64) -> Result<LadderReport, ConwayError> {
    let (s, o) = (&ld.system, &ld.organization);
    if s.len() != o.len() || s.len() != ld.rungs.len() || ld.tasks.len() != ld.rungs.len() {
        return Err(ConwayError::LengthMismatch {
            system: s.len(),
            organization: o.len(),
            rungs: ld.rungs.len(),
        });
    }
    for (k, q) in ld.rungs.iter().enumerate() {
        if q.source() != &s.graphs[k] || q.target() != &o.graphs[k] {
            return Err(ConwayError::RungMismatch { level: k });
        }
    }
    for k in 0..s.len() - 1 {
        let (p, p_org, q, q_next) = (&s.maps[k], &o.maps[k], &ld.rungs[k], &ld.rungs[k + 1]);
        for v in s.graphs[k].vertices() {
            if q_next.image(p.image(v)) != p_org.image(q.image(v)) {
                return Err(ConwayError::NonCommutingSquare {
                    level: k,
                    vertex: s.graphs[k].vertex_label(v).to_string(),
                });
            }
        }
    }
    let mut rungs = Vec::new();
    for (k, q) in ld.rungs.iter().enumerate() {
        let triangle_commutes = match &ld.tasks[k] {
            None => None,
            Some((pt, it)) => {
                let composed = pt.then(it).map_err(|_| ConwayError::RungMismatch { level: k })?;
                if let Some(v) = (0..q.source().vertex_count()).find(|&v| composed.image(v) != q.image(v)) {
                    return Err(ConwayError::NonCommutingTriangle {
                        level: k,
                        vertex: q.source().vertex_label(v).to_string(),
                    });
                }
                Some(true)
            }
        };
        let (diagonal_w_hom, diagonal_nontrivial_continuous) = if k + 1 < s.len() {
            let (upper, lower) = (&s.graphs[k + 1], &o.graphs[k]);
            let verdict = search_level(upper, lower, MorphismLevel::WHom, budget).verdict;
            (Some(verdict), Some(nontrivial_map_exists(upper, lower)))
        } else {
            (None, None)
        };
        rungs.push(RungReport {
            level: k,
            rung_level: q.classify().level(),
            triangle_commutes,
            diagonal_w_hom,
            diagonal_nontrivial_continuous,
        });
    }
    Ok(LadderReport {
        squares: s.len() - 1,
        rungs,
    })
}
