mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::collections::{HashMap, HashSet};
use traag::graph::{enumerate_mixed_graphs, parse_graph, random_mixed_graph, serialize_graph, ConeKind, MixedGraph};

fn arb_graph() -> impl Strategy<Value = MixedGraph> {
    (1usize..=7, any::<u64>()).prop_map(|(n, seed)| random_mixed_graph(n, &mut StdRng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn parse_inverts_serialize(g in arb_graph()) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn underlying_is_idempotent(g in arb_graph()) {
        let u = g.underlying();
        prop_assert_eq!(u.underlying(), u.clone());
        prop_assert_eq!(u.directed_edge_count(), 0);
        prop_assert_eq!(u.edge_count(), g.edge_count());
    }

    #[test]
    fn induced_composes(g in arb_graph(), s in any::<u8>(), t in any::<u8>()) {
        let pick = |mask: u8| -> Vec<String> {
            g.vertices().iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| v.clone()).collect()
        };
        let (s, t) = (pick(s), pick(t));
        let both: Vec<String> = s.iter().filter(|v| t.contains(v)).cloned().collect();
        prop_assume!(!both.is_empty());
        let direct = g.induced(&both).unwrap();
        let twice = g.induced(&s).unwrap().induced(&both).unwrap();
        prop_assert_eq!(direct, twice);
    }

    #[test]
    fn cone_adds_a_universal_tip(g in arb_graph(), kinds in proptest::collection::vec(any::<bool>(), 7)) {
        let map: HashMap<String, ConeKind> = g.vertices().iter().zip(&kinds)
            .map(|(v, &k)| (v.clone(), if k { ConeKind::IntoTip } else { ConeKind::Undirected }))
            .collect();
        let c = g.cone("tip", &map).unwrap();
        prop_assert_eq!(c.edge_count(), g.edge_count() + g.len());
        prop_assert!(c.is_universal("tip").unwrap());
        prop_assert_eq!(c.induced(g.vertices()).unwrap(), g);
    }

    #[test]
    fn components_partition_vertices(g in arb_graph()) {
        let comps = g.components();
        let mut all: Vec<String> = comps.iter().flatten().cloned().collect();
        all.sort();
        let mut vs = g.vertices().to_vec();
        vs.sort();
        prop_assert_eq!(all, vs);
        for c in &comps {
            prop_assert!(g.induced(c).unwrap().is_connected());
        }
    }
}

#[test]
fn four_vertex_enumeration_is_complete_and_distinct() {
    let all: HashSet<String> = enumerate_mixed_graphs(4).unwrap().map(|g| serialize_graph(&g)).collect();
    assert_eq!(all.len(), 4096);
    assert_eq!(enumerate_mixed_graphs(5).unwrap().len(), 1 << 20);
}

#[test]
fn union_of_a_graph_with_itself_renames() {
    let g = parse_graph("vertices a b\nedge a > b").unwrap();
    let u = g.disjoint_union(&g);
    assert_eq!(serialize_graph(&u), "vertices a b a_2 b_2\nedge a > b\nedge a_2 > b_2");
    let g = parse_graph("vertices a a_2").unwrap();
    let u = g.disjoint_union(&g);
    assert_eq!(u.vertices(), &["a", "a_2", "a_2_2", "a_2_2_2"]);
}
