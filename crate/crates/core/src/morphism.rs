//! Homomorphisms and w-homomorphisms between simple graphs.
//!
//! A w-homomorphism may collapse an edge onto a single vertex; equivalently it
//! is a homomorphism into the loop-augmented target followed by projection.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Default node budget for backtracking searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("assignment has {got} entries but the source has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("image {image} of vertex {vertex} is not a target vertex")]
    ImageOutOfRange { vertex: usize, image: usize },
    #[error("cannot compose: target of the first map is not the source of the second")]
    CompositionMismatch,
    #[error("pinned assignment {vertex} -> {image} references a missing vertex")]
    InvalidPin { vertex: usize, image: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MorphismLevel {
    #[serde(rename = "hom")]
    Hom,
    #[serde(rename = "w-hom")]
    WHom,
}

impl std::fmt::Display for MorphismLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MorphismLevel::Hom => "hom",
            MorphismLevel::WHom => "w-hom",
        })
    }
}

/// A total vertex map between two graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    source: Graph,
    target: Graph,
    assignment: Vec<usize>,
}

impl GraphMap {
    pub fn new(source: Graph, target: Graph, assignment: Vec<usize>) -> Result<GraphMap, MorphismError> {
        if assignment.len() != source.vertex_count() {
            return Err(MorphismError::WrongLength {
                expected: source.vertex_count(),
                got: assignment.len(),
            });
        }
        if let Some((vertex, &image)) = assignment
            .iter()
            .enumerate()
            .find(|(_, &t)| t >= target.vertex_count())
        {
            return Err(MorphismError::ImageOutOfRange { vertex, image });
        }
        Ok(GraphMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(g: &Graph) -> GraphMap {
        GraphMap {
            source: g.clone(),
            target: g.clone(),
            assignment: g.vertices().collect(),
        }
    }

    /// The constant map onto vertex `v` of `target`.
    pub fn constant(source: &Graph, target: &Graph, v: usize) -> GraphMap {
        GraphMap::new(source.clone(), target.clone(), vec![v; source.vertex_count()])
            .expect("constant image in range")
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn classify(&self) -> MorphismClass {
        classify_assignment(&self.source, &self.target, &self.assignment)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GraphMap) -> Result<GraphMap, MorphismError> {
        if self.target != other.source {
            return Err(MorphismError::CompositionMismatch);
        }
        let assignment = self.assignment.iter().map(|&v| other.assignment[v]).collect();
        Ok(GraphMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assignment,
        })
    }

    /// Source vertices grouped by image, indexed by target vertex.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.vertex_count()];
        for (v, &t) in self.assignment.iter().enumerate() {
            fibers[t].push(v);
        }
        fibers
    }

    /// Source edges whose endpoints land on the same vertex.
    pub fn collapsed_edges(&self) -> Vec<usize> {
        (0..self.source.edge_count())
            .filter(|&e| {
                let (a, b) = self.source.endpoints(e);
                self.assignment[a] == self.assignment[b]
            })
            .collect()
    }

    /// Source edges mapped onto target edge `e`.
    pub fn edge_preimage(&self, e: usize) -> Vec<usize> {
        let (x, y) = self.target.endpoints(e);
        (0..self.source.edge_count())
            .filter(|&se| {
                let (a, b) = self.source.endpoints(se);
                let (fa, fb) = (self.assignment[a], self.assignment[b]);
                (fa, fb) == (x, y) || (fa, fb) == (y, x)
            })
            .collect()
    }
}

/// Exact classification of a vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MorphismClass {
    pub is_hom: bool,
    pub is_w_hom: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    /// Surjective hom whose edge image is all of the target's edges.
    pub is_fibered: bool,
    /// Surjective w-hom whose non-collapsed edge image is all of the target's edges.
    pub is_w_fibered: bool,
}

impl MorphismClass {
    pub fn is_at_level(&self, level: MorphismLevel) -> bool {
        match level {
            MorphismLevel::Hom => self.is_hom,
            MorphismLevel::WHom => self.is_w_hom,
        }
    }

    pub fn is_fibered_at(&self, level: MorphismLevel) -> bool {
        match level {
            MorphismLevel::Hom => self.is_fibered,
            MorphismLevel::WHom => self.is_w_fibered,
        }
    }

    /// Strongest level this map reaches, if any.
    pub fn level(&self) -> Option<MorphismLevel> {
        if self.is_hom {
            Some(MorphismLevel::Hom)
        } else if self.is_w_hom {
            Some(MorphismLevel::WHom)
        } else {
            None
        }
    }
}

/// Classifies a raw assignment; `assignment` must be total and in range.
pub fn classify_assignment(source: &Graph, target: &Graph, assignment: &[usize]) -> MorphismClass {
    let mut is_hom = true;
    let mut is_w_hom = true;
    let mut covered = vec![false; target.edge_count()];
    for &(a, b) in source.edges() {
        let (fa, fb) = (assignment[a], assignment[b]);
        if fa == fb {
            is_hom = false;
            continue;
        }
        match target.edge_between(fa, fb) {
            Some(e) => covered[e] = true,
            None => {
                is_hom = false;
                is_w_hom = false;
            }
        }
    }
    let mut hit = vec![false; target.vertex_count()];
    let mut is_injective = true;
    for &t in assignment {
        if hit[t] {
            is_injective = false;
        }
        hit[t] = true;
    }
    let is_surjective = hit.iter().all(|&h| h);
    let edges_exhausted = covered.iter().all(|&c| c);
    MorphismClass {
        is_hom,
        is_w_hom,
        is_injective,
        is_surjective,
        is_fibered: is_hom && is_surjective && edges_exhausted,
        is_w_fibered: is_w_hom && is_surjective && edges_exhausted,
    }
}

/// What a morphism search must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismConstraints {
    pub level: MorphismLevel,
    pub require_injective: bool,
    pub require_surjective: bool,
    /// Fibered at `Hom`, w-fibered at `WHom`; implies surjective.
    pub require_fibered: bool,
    /// Partial assignment `(source vertex, target vertex)` the result must extend.
    pub pinned: Vec<(usize, usize)>,
}

impl MorphismConstraints {
    pub fn new(level: MorphismLevel) -> Self {
        MorphismConstraints {
            level,
            require_injective: false,
            require_surjective: false,
            require_fibered: false,
            pinned: Vec::new(),
        }
    }

    pub fn hom() -> Self {
        Self::new(MorphismLevel::Hom)
    }

    pub fn w_hom() -> Self {
        Self::new(MorphismLevel::WHom)
    }

    pub fn injective(mut self) -> Self {
        self.require_injective = true;
        self
    }

    pub fn surjective(mut self) -> Self {
        self.require_surjective = true;
        self
    }

    pub fn fibered(mut self) -> Self {
        self.require_fibered = true;
        self
    }

    pub fn pin(mut self, vertex: usize, image: usize) -> Self {
        self.pinned.push((vertex, image));
        self
    }

    /// Whether a classified map meets every constraint except the pins.
    pub fn accepts(&self, class: &MorphismClass) -> bool {
        class.is_at_level(self.level)
            && (!self.require_injective || class.is_injective)
            && (!(self.require_surjective || self.require_fibered) || class.is_surjective)
            && (!self.require_fibered || class.is_fibered_at(self.level))
    }
}

/// Finds one map satisfying `constraints`, or proves none exists.
///
/// Returns `Ok(None)` only when the search space was exhausted within budget.
pub fn find_morphism(
    source: &Graph,
    target: &Graph,
    constraints: &MorphismConstraints,
    budget: u64,
) -> Result<Option<GraphMap>, MorphismError> {
    let mut found = None;
    search_morphisms(source, target, constraints, budget, |assignment| {
        found = Some(assignment.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|a| GraphMap::new(source.clone(), target.clone(), a).expect("search yields total maps")))
}

/// Enumerates every map satisfying `constraints`, in search order.
pub fn all_morphisms(
    source: &Graph,
    target: &Graph,
    constraints: &MorphismConstraints,
    budget: u64,
) -> Result<Vec<Vec<usize>>, MorphismError> {
    let mut out = Vec::new();
    search_morphisms(source, target, constraints, budget, |assignment| {
        out.push(assignment.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Whether the two graphs are isomorphic, decided by a bijective hom search.
pub fn isomorphism(a: &Graph, b: &Graph, budget: u64) -> Result<Option<GraphMap>, MorphismError> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    // a bijective hom between graphs with equally many edges reflects edges too
    find_morphism(a, b, &MorphismConstraints::hom().injective().surjective(), budget)
}

/// Backtracking with forward checking. Source vertices are assigned in
/// descending degree order (ties by index); candidates are tried in target
/// index order. `visit` sees each complete solution and may stop the search.
pub fn search_morphisms<F>(
    source: &Graph,
    target: &Graph,
    constraints: &MorphismConstraints,
    budget: u64,
    mut visit: F,
) -> Result<(), MorphismError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = source.vertex_count();
    let t = target.vertex_count();
    let mut domains: Vec<Vec<bool>> = vec![vec![true; t]; n];
    for &(v, image) in &constraints.pinned {
        if v >= n || image >= t {
            return Err(MorphismError::InvalidPin { vertex: v, image });
        }
        for (x, allowed) in domains[v].iter_mut().enumerate() {
            *allowed &= x == image;
        }
    }
    if n == 0 {
        // the empty map: check it against the constraints directly
        let class = classify_assignment(source, target, &[]);
        if constraints.accepts(&class) {
            let _ = visit(&[]);
        }
        return Ok(());
    }
    let mut order: Vec<usize> = source.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(source.degree(v)), v));
    let needs_surjection = constraints.require_surjective || constraints.require_fibered;
    if (needs_surjection && n < t) || (constraints.require_injective && n > t) {
        return Ok(());
    }
    let mut state = SearchState {
        source,
        target,
        constraints,
        order,
        assignment: vec![usize::MAX; n],
        hits: vec![0; t],
        nodes: 0,
        budget,
    };
    match state.descend(0, domains, &mut visit) {
        Err(e) => Err(e),
        Ok(_) => Ok(()),
    }
}

struct SearchState<'a> {
    source: &'a Graph,
    target: &'a Graph,
    constraints: &'a MorphismConstraints,
    order: Vec<usize>,
    assignment: Vec<usize>,
    hits: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl SearchState<'_> {
    fn descend<F>(
        &mut self,
        depth: usize,
        domains: Vec<Vec<bool>>,
        visit: &mut F,
    ) -> Result<ControlFlow<()>, MorphismError>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(MorphismError::SearchBudgetExceeded { budget: self.budget });
        }
        if depth == self.order.len() {
            let class = classify_assignment(self.source, self.target, &self.assignment);
            if self.constraints.accepts(&class) {
                return Ok(visit(&self.assignment));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let needs_surjection = self.constraints.require_surjective || self.constraints.require_fibered;
        if needs_surjection {
            let uncovered = self.hits.iter().filter(|&&h| h == 0).count();
            if uncovered > self.order.len() - depth {
                return Ok(ControlFlow::Continue(()));
            }
        }
        let v = self.order[depth];
        for x in 0..self.target.vertex_count() {
            if !domains[v][x] {
                continue;
            }
            let Some(next) = self.propagate(v, x, &domains, depth) else {
                continue;
            };
            self.assignment[v] = x;
            self.hits[x] += 1;
            let flow = self.descend(depth + 1, next, visit)?;
            self.hits[x] -= 1;
            self.assignment[v] = usize::MAX;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Narrows the domains of unassigned vertices after `v ↦ x`; `None` on a wipe-out.
    fn propagate(&self, v: usize, x: usize, domains: &[Vec<bool>], depth: usize) -> Option<Vec<Vec<bool>>> {
        let mut next = domains.to_vec();
        let allow_collapse = self.constraints.level == MorphismLevel::WHom && !self.constraints.require_injective;
        for &u in self.source.neighbors(v) {
            if self.assignment[u] != usize::MAX {
                continue;
            }
            for (y, allowed) in next[u].iter_mut().enumerate() {
                if *allowed && !(self.target.has_edge(x, y) || (allow_collapse && y == x)) {
                    *allowed = false;
                }
            }
        }
        if self.constraints.require_injective {
            for &u in &self.order[depth + 1..] {
                next[u][x] = false;
            }
        }
        next[v] = (0..self.target.vertex_count()).map(|y| y == x).collect();
        let wiped = self.order[depth + 1..].iter().any(|&u| !next[u].iter().any(|&a| a));
        (!wiped).then_some(next)
    }
}

/// Distinct edge images (loops dropped) of a raw assignment.
pub fn edge_image(source: &Graph, assignment: &[usize]) -> HashSet<(usize, usize)> {
    source
        .edges()
        .iter()
        .filter_map(|&(a, b)| {
            let (x, y) = (assignment[a], assignment[b]);
            (x != y).then_some((x.min(y), x.max(y)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_to_edge() -> GraphMap {
        // v2 - v1 - v3 onto A - B
        let p3 = Graph::build(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v3")]).unwrap();
        let k2 = Graph::build(&["A", "B"], &[("A", "B")]).unwrap();
        GraphMap::new(p3, k2, vec![0, 1, 1]).unwrap()
    }

    #[test]
    fn identity_is_everything() {
        let c = GraphMap::identity(&Graph::cycle(5)).classify();
        assert!(c.is_hom && c.is_w_hom && c.is_injective && c.is_surjective && c.is_fibered && c.is_w_fibered);
    }

    #[test]
    fn edge_collapse_is_w_fibered_but_not_hom() {
        let m = GraphMap::constant(&Graph::path(2), &Graph::point(), 0);
        let c = m.classify();
        assert!(!c.is_hom && c.is_w_hom && c.is_w_fibered && c.is_surjective);
        assert_eq!(m.fibers(), [vec![0, 1]]);
        assert_eq!(m.collapsed_edges(), [0]);
    }

    #[test]
    fn path_onto_edge() {
        let m = p3_to_edge();
        let c = m.classify();
        assert!(c.is_hom && c.is_surjective && c.is_fibered && !c.is_injective);
        assert_eq!(m.fibers(), [vec![0], vec![1, 2]]);
        assert!(!m.source().has_edge(1, 2));
        assert_eq!(m.edge_preimage(0), [0, 1]);
    }

    #[test]
    fn search_examples() {
        let budget = DEFAULT_SEARCH_BUDGET;
        let found = find_morphism(&Graph::cycle(4), &Graph::path(2), &MorphismConstraints::hom(), budget).unwrap();
        assert!(found.unwrap().classify().is_hom);
        assert_eq!(
            find_morphism(&Graph::complete(3), &Graph::path(2), &MorphismConstraints::hom(), budget).unwrap(),
            None
        );
        let to_point = find_morphism(&Graph::complete(4), &Graph::point(), &MorphismConstraints::w_hom(), budget)
            .unwrap()
            .unwrap();
        assert_eq!(to_point.assignment(), [0, 0, 0, 0]);
    }

    #[test]
    fn budget_is_distinct_from_absence() {
        let err = find_morphism(&Graph::complete(5), &Graph::complete(4), &MorphismConstraints::hom(), 10);
        assert_eq!(err, Err(MorphismError::SearchBudgetExceeded { budget: 10 }));
    }

    #[test]
    fn pins_are_honoured_and_validated() {
        let c = MorphismConstraints::hom().pin(0, 1);
        let m = find_morphism(&Graph::path(3), &Graph::path(2), &c, 1000).unwrap().unwrap();
        assert_eq!(m.assignment(), [1, 0, 1]);
        let bad = MorphismConstraints::hom().pin(0, 7);
        assert_eq!(
            find_morphism(&Graph::path(3), &Graph::path(2), &bad, 1000),
            Err(MorphismError::InvalidPin { vertex: 0, image: 7 })
        );
    }

    #[test]
    fn composition() {
        let f = p3_to_edge();
        let id = GraphMap::identity(f.target());
        assert_eq!(f.then(&id).unwrap(), f);
        assert_eq!(
            GraphMap::identity(f.source()).then(&f).unwrap(),
            f
        );
        assert_eq!(id.then(&f), Err(MorphismError::CompositionMismatch));
    }

    #[test]
    fn isomorphism_search() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(isomorphism(&a, &b, 1000).unwrap().is_some());
        assert!(isomorphism(&a, &Graph::star(3), 1000).unwrap().is_none());
    }
}
