use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conway_core::budget::{SEARCH_BUDGET_ENV, SUBGRAPH_CAP_ENV};
use conway_core::conway::{check_ladder, decompose, enumerate_task_graphs, truncated_fallback, LadderDiagram};
use conway_core::io::{
    export_dot, parse_graph_document, parse_map_document, DocumentError, DotOptions, GraphDocument, MapDocument,
};
use conway_core::report::{
    AnalysisReport, DoubletSection, FallbackSection, GraphSummary, InducedSection, LadderSection, TopologySection,
    TripletSection,
};
use conway_core::{
    analyze_doublet, conway_fsharp, find_morphism, induce_fstar, Budgets, CollectionMap, ConwayError, Graph, GraphError,
    GraphMap, GraphTopologySpace, InducedMap, MorphismConstraints, MorphismError, MorphismLevel, PosetError,
    TConwayMorphism, TopologyError, Verdict, DEFAULT_SEARCH_BUDGET, DEFAULT_SUBGRAPH_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "conway", version, about = "Compare a system graph with an organization graph")]
struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Most connected subgraphs enumerated per graph.
    #[arg(long, global = true, env = SUBGRAPH_CAP_ENV, default_value_t = DEFAULT_SUBGRAPH_CAP)]
    subgraph_cap: usize,
    /// Most nodes visited by one search.
    #[arg(long, global = true, env = SEARCH_BUDGET_ENV, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Which correspondences G_S -> G_O exist, with a truncation fallback.
    Analyze {
        #[command(flatten)]
        pair: Pair,
        /// Exit 1 when the correspondence at --level is proven absent.
        #[arg(long)]
        require: bool,
        #[arg(long, value_enum, default_value_t = LevelArg::Hom)]
        level: LevelArg,
    },
    /// Factor a given correspondence through its task graph.
    Decompose {
        #[command(flatten)]
        pair: Pair,
        /// Vertex-map document for q.
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::WHom)]
        level: LevelArg,
    },
    /// Rank the task graphs of every correspondence.
    Tasks {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = LevelArg::Hom)]
        level: LevelArg,
        /// Print at most this many triplets.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// The connected-subgraph poset of one graph.
    Topology { graph: PathBuf },
    /// Induced tables f* and, for vertex maps, q#.
    Induced {
        #[command(flatten)]
        pair: Pair,
        /// Vertex-map or collection-map document.
        #[arg(long)]
        map: PathBuf,
    },
    /// Check the ladder built from both documents' hierarchy plans.
    Hierarchy {
        #[command(flatten)]
        pair: Pair,
        /// Vertex-map document for the bottom rung; searched for when omitted.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LevelArg::Hom)]
        level: LevelArg,
    },
    /// Emit DOT, optionally coloring the fibers of a correspondence.
    Export {
        graph: PathBuf,
        /// Organization document, required with --map.
        #[arg(long, requires = "map")]
        organization: Option<PathBuf>,
        #[arg(long, requires = "organization")]
        map: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Pair {
    system: PathBuf,
    organization: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LevelArg {
    Hom,
    WHom,
}

impl From<LevelArg> for MorphismLevel {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Hom => MorphismLevel::Hom,
            LevelArg::WHom => MorphismLevel::WHom,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::EnumerationBudgetExceeded { .. } => Failure::Budget(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<MorphismError> for Failure {
    fn from(e: MorphismError) -> Self {
        match e {
            MorphismError::SearchBudgetExceeded { .. } => Failure::Budget(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<TopologyError> for Failure {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::Graph(g) => g.into(),
            TopologyError::Poset(PosetError::SearchBudgetExceeded { .. } | PosetError::TooLarge(_)) => {
                Failure::Budget(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<ConwayError> for Failure {
    fn from(e: ConwayError) -> Self {
        match e {
            ConwayError::Graph(g) => g.into(),
            ConwayError::Morphism(m) => m.into(),
            ConwayError::Topology(t) => t.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<conway_core::induced::InducedError> for Failure {
    fn from(e: conway_core::induced::InducedError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, DocumentError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<(GraphDocument, Graph), Failure> {
    let doc = in_file(path, parse_graph_document(&read(path)?))?;
    let g = in_file(path, doc.to_graph())?;
    Ok((doc, g))
}

fn load_map(path: &Path) -> Result<MapDocument, Failure> {
    in_file(path, parse_map_document(&read(path)?))
}

fn name_of(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn space(g: &Graph, budgets: &Budgets) -> Result<Arc<GraphTopologySpace>, Failure> {
    Ok(Arc::new(GraphTopologySpace::new(g, budgets.subgraph_cap)?))
}

/// A finished command: the report plus the exit status it warrants.
struct Output {
    report: Option<AnalysisReport>,
    text: Option<String>,
    code: u8,
}

impl Output {
    fn report(report: AnalysisReport, code: u8) -> Output {
        Output {
            report: Some(report),
            text: None,
            code,
        }
    }
}

fn pair_report(command: &str, budgets: Budgets, pair: &Pair, gs: &Graph, go: &Graph) -> AnalysisReport {
    let mut r = AnalysisReport::new(command, budgets, GraphSummary::of(&name_of(&pair.system), gs));
    r.organization = Some(GraphSummary::of(&name_of(&pair.organization), go));
    r
}

fn analyze(budgets: Budgets, pair: &Pair, require: bool, level: MorphismLevel) -> Result<Output, Failure> {
    let (_, gs) = load_graph(&pair.system)?;
    let (_, go) = load_graph(&pair.organization)?;
    let doublet = analyze_doublet(&gs, &go, &budgets)?;
    let mut r = pair_report("analyze", budgets, pair, &gs, &go);
    let spaces = match (space(&gs, &budgets), space(&go, &budgets)) {
        (Ok(s), Ok(o)) => Some((s, o)),
        _ => None,
    };
    r.doublet = Some(DoubletSection::of(
        &doublet,
        &gs,
        &go,
        spaces.as_ref().map(|(s, o)| (&**s, &**o)),
    ));
    let outcome = match level {
        MorphismLevel::Hom => &doublet.hom,
        MorphismLevel::WHom => &doublet.w_hom,
    };
    if outcome.verdict != Verdict::Exists {
        let f = truncated_fallback(&gs, &go, level, &budgets);
        r.fallback = Some(FallbackSection::of(&gs, level, &f));
    }
    let code = match outcome.verdict {
        Verdict::BudgetExceeded => 3,
        Verdict::ProvenAbsent if require => 1,
        _ => 0,
    };
    Ok(Output::report(r, code))
}

fn vertex_map(path: &Path, gs: &Graph, go: &Graph) -> Result<GraphMap, Failure> {
    in_file(path, load_map(path)?.to_graph_map(gs, go))
}

/// f* of the lifted task inclusion, and q# built from it.
fn task_tables(
    p: &GraphMap,
    i: &GraphMap,
    budgets: &Budgets,
) -> Result<(InducedMap, TConwayMorphism), Failure> {
    let ihat = CollectionMap::lift(i, space(i.source(), budgets)?, space(i.target(), budgets)?)?;
    Ok((induce_fstar(&ihat)?, conway_fsharp(p, &ihat)?))
}

fn decompose_cmd(budgets: Budgets, pair: &Pair, map: &Path, level: MorphismLevel) -> Result<Output, Failure> {
    let (_, gs) = load_graph(&pair.system)?;
    let (_, go) = load_graph(&pair.organization)?;
    let q = vertex_map(map, &gs, &go)?;
    let t = decompose(&q, level).map_err(|e| Failure::Input(format!("{}: {e}", map.display())))?;
    let (_, q_sharp) = task_tables(&t.p, &t.i, &budgets)?;
    let mut r = pair_report("decompose", budgets, pair, &gs, &go);
    r.triplets.push(TripletSection::of(1, &t, Some(&q_sharp)));
    Ok(Output::report(r, 0))
}

fn tasks(budgets: Budgets, pair: &Pair, level: MorphismLevel, limit: Option<usize>) -> Result<Output, Failure> {
    let (_, gs) = load_graph(&pair.system)?;
    let (_, go) = load_graph(&pair.organization)?;
    let found = enumerate_task_graphs(&gs, &go, level, budgets.search_budget)?;
    let mut r = pair_report("tasks", budgets, pair, &gs, &go);
    let shown = limit.unwrap_or(usize::MAX);
    for (rank, a) in found.alternatives.iter().enumerate().take(shown) {
        let (_, q_sharp) = task_tables(&a.triplet.p, &a.triplet.i, &budgets)?;
        r.triplets.push(TripletSection::of_alternative(rank + 1, a, Some(&q_sharp)));
    }
    r.triplets_complete = Some(found.complete);
    if found.alternatives.is_empty() && found.complete {
        let f = truncated_fallback(&gs, &go, level, &budgets);
        r.fallback = Some(FallbackSection::of(&gs, level, &f));
    }
    Ok(Output::report(r, if found.complete { 0 } else { 3 }))
}

fn topology(budgets: Budgets, path: &Path) -> Result<Output, Failure> {
    let (_, g) = load_graph(path)?;
    let s = space(&g, &budgets)?;
    let mut r = AnalysisReport::new("topology", budgets, GraphSummary::of(&name_of(path), &g));
    r.topology = Some(TopologySection::of(&name_of(path), &s));
    Ok(Output::report(r, 0))
}

fn induced(budgets: Budgets, pair: &Pair, map: &Path) -> Result<Output, Failure> {
    let (_, gs) = load_graph(&pair.system)?;
    let (_, go) = load_graph(&pair.organization)?;
    let doc = load_map(map)?;
    let mut r = pair_report("induced", budgets, pair, &gs, &go);
    r.induced = Some(match &doc {
        MapDocument::VertexMap { .. } => {
            let q = in_file(map, doc.to_graph_map(&gs, &go))?;
            let t = decompose(&q, MorphismLevel::WHom).map_err(|e| Failure::Input(format!("{}: {e}", map.display())))?;
            let (fstar, q_sharp) = task_tables(&t.p, &t.i, &budgets)?;
            InducedSection::of(&fstar, Some(&q_sharp))
        }
        MapDocument::CollectionMap { .. } => {
            let f = in_file(map, doc.to_collection_map(&space(&gs, &budgets)?, &space(&go, &budgets)?))?;
            InducedSection::of(&induce_fstar(&f)?, None)
        }
    });
    Ok(Output::report(r, 0))
}

fn hierarchy(budgets: Budgets, pair: &Pair, map: Option<&Path>, level: MorphismLevel) -> Result<Output, Failure> {
    let (ds, gs) = load_graph(&pair.system)?;
    let (dorg, go) = load_graph(&pair.organization)?;
    let s = in_file(&pair.system, ds.hierarchy_sequence(&gs))?;
    let o = in_file(&pair.organization, dorg.hierarchy_sequence(&go))?;
    let mut r = pair_report("hierarchy", budgets, pair, &gs, &go);
    let q0 = match map {
        Some(path) => Some(vertex_map(path, &gs, &go)?),
        None => find_morphism(&gs, &go, &MorphismConstraints::new(level), budgets.search_budget)?,
    };
    let section = match q0 {
        None => LadderSection {
            commutes: false,
            levels: s.len(),
            report: None,
            error: Some(format!("no {level} from the system graph to the organization graph")),
        },
        Some(q0) => {
            let checked = LadderDiagram::derive_rungs(&s, &o, q0)
                .and_then(|rungs| check_ladder(&LadderDiagram::new(s.clone(), o.clone(), rungs), budgets.search_budget));
            match checked {
                Ok(report) => LadderSection {
                    commutes: true,
                    levels: s.len(),
                    report: Some(report),
                    error: None,
                },
                Err(e @ (ConwayError::Morphism(MorphismError::SearchBudgetExceeded { .. })
                | ConwayError::Topology(_))) => return Err(e.into()),
                Err(e) => LadderSection {
                    commutes: false,
                    levels: s.len(),
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        }
    };
    r.ladder = Some(section);
    Ok(Output::report(r, 0))
}

fn export(path: &Path, organization: Option<&Path>, map: Option<&Path>, name: Option<String>) -> Result<Output, Failure> {
    let (_, g) = load_graph(path)?;
    let mut options = DotOptions {
        name: Some(name.unwrap_or_else(|| name_of(path))),
        ..DotOptions::default()
    };
    if let (Some(org), Some(map)) = (organization, map) {
        let (_, go) = load_graph(org)?;
        let q = vertex_map(map, &g, &go)?;
        let t = decompose(&q, MorphismLevel::WHom).map_err(|e| Failure::Input(format!("{}: {e}", map.display())))?;
        options.classes = Some(t.p.assignment().to_vec());
        options.class_labels = t.task().vertex_labels().to_vec();
    }
    Ok(Output {
        report: None,
        text: Some(export_dot(&g, &options)),
        code: 0,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budgets = Budgets {
        subgraph_cap: cli.subgraph_cap,
        search_budget: cli.search_budget,
    };
    match &cli.command {
        Command::Analyze { pair, require, level } => analyze(budgets, pair, *require, (*level).into()),
        Command::Decompose { pair, map, level } => decompose_cmd(budgets, pair, map, (*level).into()),
        Command::Tasks { pair, level, limit } => tasks(budgets, pair, (*level).into(), *limit),
        Command::Topology { graph } => topology(budgets, graph),
        Command::Induced { pair, map } => induced(budgets, pair, map),
        Command::Hierarchy { pair, map, level } => hierarchy(budgets, pair, map.as_deref(), (*level).into()),
        Command::Export {
            graph,
            organization,
            map,
            name,
        } => export(graph, organization.as_deref(), map.as_deref(), name.clone()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match (&out.report, &out.text) {
                (Some(r), _) if cli.json => print!("{}", r.to_json()),
                (Some(r), _) => print!("{}", r.render_text()),
                (None, Some(t)) => print!("{t}"),
                (None, None) => {}
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Budget(m) => eprintln!("budget exceeded: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
