//! Randomized invariants over small connected graphs.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use crate::canon::{are_isomorphic, canonical_form};
use crate::conway::decompose;
use crate::induced::{induce_fstar, Element};
use crate::io::{parse_graph_document, serialize_graph_document, GraphDocument, Role};
use crate::morphism::{find_morphism, GraphMap, MorphismConstraints, MorphismLevel};
use crate::poset::{is_continuous, FinitePoset, PartialOrder, PosetTopology};
use crate::topology::{CollectionMap, GraphTopologySpace};
use crate::{Graph, DEFAULT_SEARCH_BUDGET, DEFAULT_SUBGRAPH_CAP};

/// A spanning tree from `parents` plus whichever extra pairs `extra` selects.
fn build(n: usize, parents: &[usize], extra: &[bool]) -> Graph {
    let mut pairs = BTreeSet::new();
    for v in 1..n {
        pairs.insert((parents[v - 1] % v, v));
    }
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if extra[k] {
                pairs.insert((a, b));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &pairs.into_iter().collect::<Vec<_>>()).unwrap()
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<usize>(), n - 1),
            proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2),
        )
            .prop_map(move |(p, e)| build(n, &p, &e))
    })
}

fn mapping(max_n: usize) -> impl Strategy<Value = (Graph, Graph, Vec<usize>)> {
    (connected(max_n), connected(max_n)).prop_flat_map(|(s, t)| {
        let m = t.vertex_count();
        proptest::collection::vec(0..m, s.vertex_count()).prop_map(move |a| (s.clone(), t.clone(), a))
    })
}

fn space(g: &Graph) -> Arc<GraphTopologySpace> {
    Arc::new(GraphTopologySpace::new(g, DEFAULT_SUBGRAPH_CAP).unwrap())
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let pairs: Vec<_> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::from_edges(g.vertex_count(), &pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_vertex_order(g in connected(6), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn connected_subgraphs_are_connected_and_distinct(g in connected(5)) {
        let subs = g.connected_subgraphs(DEFAULT_SUBGRAPH_CAP).unwrap();
        let unique: BTreeSet<_> = subs.iter().collect();
        prop_assert_eq!(unique.len(), subs.len());
        prop_assert!(subs.iter().all(|s| s.is_connected(&g)));
        prop_assert!(subs.contains(&g.full_subgraph()));
        prop_assert!(g.vertices().all(|v| subs.iter().any(|s| s.vertex_count() == 1 && s.contains_vertex(v))));
    }

    #[test]
    fn graph_is_recovered_from_its_space(g in connected(5)) {
        prop_assert_eq!(space(&g).recover_graph().unwrap(), g);
    }

    #[test]
    fn basis_recovers_the_order(g in connected(4)) {
        let s = space(&g);
        let poset = FinitePoset::from_order(&*s);
        let top = PosetTopology::new(&poset);
        prop_assert_eq!(top.recover_order(), poset.matrix());
    }

    #[test]
    fn lifts_of_w_homs_are_monotone((s, t, a) in mapping(4)) {
        let f = GraphMap::new(s.clone(), t.clone(), a).unwrap();
        prop_assume!(f.classify().is_w_hom);
        let (ss, ts) = (space(&s), space(&t));
        let lifted = CollectionMap::lift(&f, ss.clone(), ts.clone()).unwrap();
        let la = lifted.assignment();
        for x in 0..ss.size() {
            for y in 0..ss.size() {
                if ss.le(x, y) {
                    prop_assert!(ts.le(la[x], la[y]));
                }
            }
        }
        prop_assert!(is_continuous(&*ss, &*ts, la).unwrap().holds());
    }

    #[test]
    fn induced_map_inverts_injective_homs((s, t, a) in mapping(4)) {
        let f = GraphMap::new(s.clone(), t.clone(), a).unwrap();
        let class = f.classify();
        prop_assume!(class.is_hom && class.is_injective);
        let lifted = CollectionMap::lift(&f, space(&s), space(&t)).unwrap();
        let star = induce_fstar(&lifted).unwrap();
        for v in s.vertices() {
            prop_assert_eq!(star.image(Element::Vertex(f.image(v))), Element::Vertex(v));
        }
        prop_assert_eq!(star.image(Element::Star), Element::Star);
    }

    #[test]
    fn decomposition_factors_the_map((s, t, a) in mapping(5), weak in any::<bool>()) {
        let level = if weak { MorphismLevel::WHom } else { MorphismLevel::Hom };
        let q = GraphMap::new(s.clone(), t, a.clone()).unwrap();
        prop_assume!(q.classify().is_at_level(level));
        let triplet = decompose(&q, level).unwrap();
        let composed: Vec<usize> = s.vertices().map(|v| triplet.i.image(triplet.p.image(v))).collect();
        prop_assert_eq!(composed, a);
        let pc = triplet.p.classify();
        prop_assert!(pc.is_surjective && pc.is_fibered_at(level));
        let ic = triplet.i.classify();
        prop_assert!(ic.is_hom && ic.is_injective);
    }

    #[test]
    fn search_witnesses_satisfy_constraints(
        s in connected(5),
        t in connected(5),
        weak in any::<bool>(),
        flags in 0u8..8,
    ) {
        let mut c = MorphismConstraints::new(if weak { MorphismLevel::WHom } else { MorphismLevel::Hom });
        c.require_injective = flags & 1 != 0;
        c.require_surjective = flags & 2 != 0;
        c.require_fibered = flags & 4 != 0;
        if let Some(m) = find_morphism(&s, &t, &c, DEFAULT_SEARCH_BUDGET).unwrap() {
            prop_assert!(c.accepts(&m.classify()));
        }
    }

    #[test]
    fn documents_round_trip(g in connected(6), role in 0usize..3) {
        let role = [Role::System, Role::Organization, Role::Task][role];
        let doc = GraphDocument::from_graph(&g, role);
        let parsed = parse_graph_document(&serialize_graph_document(&doc)).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_graph().unwrap(), g);
    }
}
