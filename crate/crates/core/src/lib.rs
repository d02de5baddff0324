//! Graph homomorphisms, the topology of connected subgraphs, and Conway
//! correspondences between system, organization and task graphs.

pub mod budget;
pub mod canon;
pub mod conway;
pub mod graph;
pub mod induced;
pub mod io;
pub mod morphism;
pub mod poset;
pub mod report;
pub mod topology;

#[cfg(test)]
mod proptests;

pub use budget::Budgets;
pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use conway::{
    analyze_doublet, build_hierarchy, check_ladder, decompose, enumerate_task_graphs, truncated_fallback,
    ConwayError, ConwayTriplet, DoubletReport, HierarchySequence, LadderDiagram, Level, Verdict,
};
pub use graph::{Graph, GraphError, Subgraph, DEFAULT_SUBGRAPH_CAP};
pub use induced::{conway_fsharp, induce_fstar, Element, InducedMap, PointedGraph, TConwayMorphism};
pub use morphism::{
    find_morphism, GraphMap, MorphismClass, MorphismConstraints, MorphismError, MorphismLevel, DEFAULT_SEARCH_BUDGET,
};
pub use poset::{FinitePoset, PartialOrder, PosetError, PosetTopology};
pub use topology::{common_supergraph, find_continuous_injection, CollectionMap, GraphTopologySpace, TopologyError};
