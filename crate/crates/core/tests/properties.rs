use proptest::prelude::*;

use skewproj::classify::certificate;
use skewproj::graph::pair_count;
use skewproj::{
    canonical_form, clique_number, doubled_algebra, epsilon_of_graph, faces_bruteforce, facet_families_isomorphic,
    facets, graph_of_epsilon, is_isomorphic, maximal_cliques, type_vector, Graph, Permutation, VertexSet,
};

fn graph_on(n: usize, code: u128) -> Graph {
    let mask = if pair_count(n) == 128 {
        u128::MAX
    } else {
        (1u128 << pair_count(n)) - 1
    };
    Graph::from_code(n, code & mask).unwrap()
}

fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u128>()).prop_map(|(n, code)| graph_on(n, code))
}

fn with_perm(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Permutation)> {
    graphs(lo, hi).prop_flat_map(|g| {
        let images: Vec<usize> = (0..g.n()).collect();
        (Just(g), Just(images).prop_shuffle().prop_map(|p| Permutation::from_images(p).unwrap()))
    })
}

fn with_set(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    (graphs(lo, hi), any::<u16>()).prop_map(|(g, bits)| {
        let set = VertexSet::from_bits(bits).intersection(g.vertices());
        (g, set)
    })
}

/// Layer swap on the switching graph of an `n`-vertex graph.
fn layer_swap(n: usize) -> Permutation {
    Permutation::from_images((0..2 * n).map(|v| (v + n) % (2 * n)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mutation_is_an_involution((g, v) in graphs(1, 16).prop_flat_map(|g| (Just(g), 0..g.n()))) {
        prop_assert_eq!(g.mutate(v).unwrap().mutate(v).unwrap(), g);
    }

    #[test]
    fn switching_a_set_equals_switching_its_complement((g, s) in with_set(0, 16)) {
        prop_assert_eq!(g.switch(s), g.switch(s.complement(g.n())));
    }

    #[test]
    fn switching_is_mutation_in_any_order(
        (g, s, order) in with_set(1, 12).prop_flat_map(|(g, s)| {
            let members: Vec<usize> = s.iter().collect();
            (Just(g), Just(s), Just(members).prop_shuffle())
        })
    ) {
        let mut current = g;
        for v in order {
            current = current.mutate(v).unwrap();
        }
        prop_assert_eq!(current, g.switch(s));
    }

    #[test]
    fn switching_composes_by_symmetric_difference((g, s) in with_set(0, 16), t in any::<u16>()) {
        let t = VertexSet::from_bits(t).intersection(g.vertices());
        let sym = s.union(t).difference(s.intersection(t));
        prop_assert_eq!(g.switch(s).switch(t), g.switch(sym));
    }

    #[test]
    fn switching_graph_is_invariant_under_switching((g, s) in with_set(1, 8)) {
        let sw = g.switching_graph().unwrap();
        let switched = g.switch(s).switching_graph().unwrap();
        let sigma = is_isomorphic(&sw, &switched);
        prop_assert!(sigma.is_some());
        prop_assert_eq!(sw.permute(&sigma.unwrap()), switched);
    }

    #[test]
    fn switching_graph_is_regular_with_layer_swap_automorphism(g in graphs(1, 8)) {
        let sw = g.switching_graph().unwrap();
        prop_assert_eq!(sw.permute(&layer_swap(g.n())), sw);
        for v in 0..sw.n() {
            prop_assert_eq!(sw.degree(v), g.n());
        }
    }

    #[test]
    fn canonical_form_ignores_labels((g, sigma) in with_perm(0, 16)) {
        let h = g.permute(&sigma);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let witness = is_isomorphic(&g, &h).unwrap();
        prop_assert_eq!(g.permute(&witness), h);
    }

    #[test]
    fn canonical_form_separates_edge_counts(a in graphs(6, 10), code in any::<u128>()) {
        let b = graph_on(a.n(), code);
        if a.edge_count() != b.edge_count() {
            prop_assert_ne!(canonical_form(&a), canonical_form(&b));
            prop_assert!(is_isomorphic(&a, &b).is_none());
        }
    }

    #[test]
    fn certificate_ignores_labels_and_switching(((g, sigma), bits) in (with_perm(1, 10), any::<u16>())) {
        let s = VertexSet::from_bits(bits).intersection(g.vertices());
        prop_assert_eq!(certificate(&g.switch(s).permute(&sigma)).unwrap(), certificate(&g).unwrap());
    }

    #[test]
    fn clique_number_is_largest_maximal_clique(g in graphs(0, 16)) {
        let largest = maximal_cliques(&g).iter().map(|c| c.len()).max().unwrap_or(0);
        prop_assert_eq!(clique_number(&g), largest);
        for c in maximal_cliques(&g) {
            prop_assert!(g.is_clique(c));
            prop_assert!((0..g.n()).filter(|&v| !c.contains(v)).all(|v| !g.is_clique(c.union(VertexSet::from_bits(1 << v)))));
        }
    }

    #[test]
    fn epsilon_round_trip(g in graphs(0, 16)) {
        prop_assert_eq!(graph_of_epsilon(&epsilon_of_graph(&g)), g);
    }

    #[test]
    fn doubling_commutes_with_relabeling((g, sigma) in with_perm(1, 8)) {
        let n = g.n();
        let both_layers = Permutation::from_images(
            (0..2 * n).map(|v| sigma.image(v % n) + (v / n) * n).collect(),
        ).unwrap();
        let eps = epsilon_of_graph(&g);
        prop_assert_eq!(
            doubled_algebra(&eps).unwrap().permute(&both_layers),
            doubled_algebra(&eps.permute(&sigma)).unwrap()
        );
    }

    #[test]
    fn faces_are_closed_under_subsets(g in graphs(0, 9)) {
        let faces = faces_bruteforce(&g);
        for &f in &faces {
            for v in f.iter() {
                let mut smaller = f;
                smaller.remove(v);
                prop_assert!(faces.contains(&smaller));
            }
        }
    }

    #[test]
    fn facets_split_into_two_unlinked_cliques(g in graphs(1, 12)) {
        for &f in facets(&g).facets() {
            let start = f.iter().next().unwrap();
            let first = g.neighbors(start).intersection(f).union(VertexSet::from_bits(1 << start));
            let second = f.difference(first);
            prop_assert!(g.is_clique(first) && g.is_clique(second));
            prop_assert!(first.iter().all(|u| g.neighbors(u).intersection(second).is_empty()));
        }
    }

    #[test]
    fn facet_families_follow_relabeling_and_switching(((g, sigma), bits) in (with_perm(2, 9), any::<u16>())) {
        let s = VertexSet::from_bits(bits).intersection(g.vertices());
        let h = g.switch(s).permute(&sigma);
        prop_assert_eq!(facets(&g.permute(&sigma)), facets(&g).permute(&sigma));
        prop_assert!(facet_families_isomorphic(&facets(&g), &facets(&h)).is_some());
        prop_assert_eq!(type_vector(&g).unwrap(), type_vector(&h).unwrap());
    }
}
