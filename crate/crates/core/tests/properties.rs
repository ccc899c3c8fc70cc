use halfarc::coverings::{derived_graph, t_reduce, t_reduction_isomorphism};
use halfarc::io::{decode_graph6, encode_graph6, read_edge_list};
use halfarc::verify::{brute_force_automorphism_count, covering_round_trip};
use halfarc::{
    are_isomorphic, automorphism_group, spanning_tree, FiniteAbelianGroup, Graph, PermGroup,
    Permutation, VoltageAssignment,
};
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.order() >= 2 && g.is_connected())
}

fn relabel(x: &Graph, sigma: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = x.edges().map(|(u, v)| (sigma[u], sigma[v])).collect();
    Graph::from_edge_list(x.order(), &edges).unwrap()
}

fn arb_graph_and_relabelling(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arb_graph(40)) {
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_ignores_line_order(
        (g, order) in arb_graph(12).prop_flat_map(|g| {
            let m = g.size();
            (Just(g), Just((0..m).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut text = format!("{} {}\n", g.order(), g.size());
        for &i in &order {
            let (u, v) = edges[i];
            text += &if i % 2 == 0 { format!("{u} {v}\n") } else { format!("{v} {u}\n") };
        }
        prop_assert_eq!(read_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn lexicographic_product_degrees(x in arb_graph(6), y in arb_graph(4)) {
        let p = Graph::lexicographic_product(&x, &y).unwrap();
        let k = y.order();
        prop_assert_eq!(p.order(), x.order() * k);
        for a in 0..x.order() {
            for b in 0..k {
                prop_assert_eq!(p.degree(a * k + b), x.degree(a) * k + y.degree(b));
            }
        }
    }

    #[test]
    fn automorphism_order_matches_brute_force(g in arb_graph(7)) {
        let fast = automorphism_group(&g).order();
        prop_assert_eq!(fast, BigUint::from(brute_force_automorphism_count(&g)));
    }

    #[test]
    fn generators_are_automorphisms_and_orbit_stabilizer_holds(g in arb_graph(10)) {
        let aut = automorphism_group(&g);
        for s in aut.generators() {
            prop_assert!(g.maps_edges_into(&g, s.images()));
        }
        let stab = aut.point_stabilizer(0).unwrap();
        prop_assert_eq!(aut.order(), stab.order() * BigUint::from(aut.orbit(0).len()));
    }

    #[test]
    fn isomorphism_is_relabelling_invariant((g, sigma) in arb_graph_and_relabelling(10)) {
        let h = relabel(&g, &sigma);
        let phi = are_isomorphic(&g, &h);
        prop_assert!(phi.is_some());
        prop_assert!(g.maps_edges_into(&h, phi.unwrap().images()));
        prop_assert!(are_isomorphic(&h, &g).is_some());
        prop_assert_eq!(automorphism_group(&g).order(), automorphism_group(&h).order());
    }

    #[test]
    fn isomorphism_is_symmetric(a in arb_graph(7), b in arb_graph(7)) {
        prop_assert_eq!(are_isomorphic(&a, &b).is_some(), are_isomorphic(&b, &a).is_some());
    }

    #[test]
    fn lex_blow_up_contains_the_wreath_product(g in arb_graph(5)) {
        let blown = Graph::lexicographic_product(&g, &Graph::empty(2)).unwrap();
        let lower = automorphism_group(&g).order() * BigUint::from(2u32).pow(g.order() as u32);
        prop_assert!((automorphism_group(&blown).order() % lower).is_zero());
    }

    #[test]
    fn random_groups_satisfy_orbit_stabilizer(
        n in 2usize..8,
        seeds in proptest::collection::vec(any::<u64>(), 1..3),
    ) {
        let gens: Vec<Permutation> = seeds
            .iter()
            .map(|&s| {
                let mut img: Vec<usize> = (0..n).collect();
                rand::seq::SliceRandom::shuffle(&mut img[..], &mut ChaCha8Rng::seed_from_u64(s));
                Permutation::from_images(img).unwrap()
            })
            .collect();
        let g = PermGroup::new(n, gens).unwrap();
        for v in 0..n {
            let stab = g.point_stabilizer(v).unwrap();
            prop_assert_eq!(g.order(), stab.order() * BigUint::from(g.orbit(v).len()));
        }
    }

    #[test]
    fn covering_round_trip_on_random_bases(base in arb_connected(7), k in 2usize..6, seed in any::<u64>()) {
        let tree = spanning_tree(&base).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = FiniteAbelianGroup::cyclic(k).unwrap();
        let xi = VoltageAssignment::random_t_reduced(base, group, &tree, &mut rng);
        prop_assert_eq!(covering_round_trip(&xi), Ok(()));
    }

    #[test]
    fn t_reduction_preserves_the_cover(base in arb_connected(7), seed in any::<u64>()) {
        let tree = spanning_tree(&base).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let xi = VoltageAssignment::random(base, group, &mut rng);
        let red = t_reduce(&xi, &tree).unwrap();
        prop_assert!(red.is_t_reduced(&tree));
        let phi = t_reduction_isomorphism(&xi, &tree).unwrap();
        prop_assert!(derived_graph(&xi).maps_edges_into(&derived_graph(&red), phi.images()));
    }
}
