use halfarc::families::{
    ca_graph, ca_graph_with, lex_cycle, praeger_xu, tight_hat_predicate, rose_window_6_5_4, wreath,
    x_rmn,
};
use halfarc::group::action_on_arcs;
use halfarc::symmetry::{
    alternating_structure, find_hat_subgroup, orientation, stabilizer_order_check, HatSearch,
};
use halfarc::verify::{brute_force_automorphism_count, tight_hat_grid};
use halfarc::{
    are_isomorphic, automorphism_group, refine, transitivity_profile, Graph, OrderedPartition,
};
use num_bigint::BigUint;

fn order(x: &Graph) -> u64 {
    automorphism_group(x).order_u64().unwrap()
}

#[test]
fn x_rmn_is_invariant_under_negating_r() {
    for &(r, m, n) in tight_hat_grid().iter().filter(|t| t.2 <= 13) {
        let a = x_rmn(r, m, n).unwrap();
        let b = x_rmn(n as i64 - r, m, n).unwrap();
        let phi = are_isomorphic(&a, &b).expect("isomorphic");
        assert!(a.maps_edges_into(&b, phi.images()), "({r};{m},{n})");
    }
}

#[test]
fn wreath_graphs_are_lexicographic_cycles() {
    for n in 3..=8 {
        let w = wreath(n).unwrap();
        let l = lex_cycle(n).unwrap();
        let phi = are_isomorphic(&w, &l).expect("isomorphic");
        assert!(w.maps_edges_into(&l, phi.images()));
    }
}

#[test]
fn ca_graphs_do_not_depend_on_the_order_four_element() {
    for p in [5u64, 13] {
        let ws: Vec<u64> = (2..p).filter(|&w| (w * w) % p == p - 1).collect();
        assert_eq!(ws.len(), 2);
        for variant in 0..2 {
            let a = ca_graph_with(p as usize, variant, ws[0]).unwrap();
            let b = ca_graph_with(p as usize, variant, ws[1]).unwrap();
            assert!(are_isomorphic(&a, &b).is_some(), "p={p} variant {variant}");
        }
    }
}

#[test]
fn named_automorphism_orders() {
    assert_eq!(order(&rose_window_6_5_4()), 48);
    assert_eq!(order(&wreath(6).unwrap()), 768);
    let px = praeger_xu(5).unwrap();
    assert_eq!(order(&px), 320);
    assert_eq!(brute_force_automorphism_count(&px), 320);
    let p = transitivity_profile(&px, &automorphism_group(&px)).unwrap();
    assert!(p.arc_transitive);
}

#[test]
fn ca_graphs_are_not_half_arc_transitive_at_p_five() {
    for variant in 0..2 {
        let x = ca_graph(5, variant).unwrap();
        let p = transitivity_profile(&x, &automorphism_group(&x)).unwrap();
        assert!(!p.half_arc_transitive);
    }
}

#[test]
fn refinement_after_individualizing_a_vertex() {
    let x = x_rmn(2, 3, 7).unwrap();
    let p = OrderedPartition::from_cells(21, vec![vec![0], (1..21).collect()]).unwrap();
    let r = refine(&x, &p);
    let sizes: Vec<usize> = r.cells().iter().map(Vec::len).collect();
    assert_eq!(r.cells()[0], vec![0]);
    assert_eq!(sizes, vec![1, 8, 4, 8]);
    assert_eq!(r.cells()[2], vec![8, 13, 17, 18]);
    for a in r.cells() {
        for b in r.cells() {
            let counts: Vec<usize> = a
                .iter()
                .map(|&v| x.neighbors(v).iter().filter(|w| b.contains(w)).count())
                .collect();
            assert!(counts.windows(2).all(|w| w[0] == w[1]));
        }
    }
}

#[test]
fn x_2_3_7_and_x_4_3_7_are_isomorphic() {
    let a = x_rmn(2, 3, 7).unwrap();
    let b = x_rmn(4, 3, 7).unwrap();
    let phi = are_isomorphic(&a, &b).expect("r and r^2 = r^-1 give the same graph");
    assert!(a.maps_edges_into(&b, phi.images()));
}

#[test]
fn smallest_hat_graph() {
    let x = x_rmn(2, 3, 9).unwrap();
    let aut = automorphism_group(&x);
    assert_eq!(aut.order_u64(), Some(54));
    let p = transitivity_profile(&x, &aut).unwrap();
    assert!(p.half_arc_transitive);
    let o = orientation(&x, &aut).unwrap();
    let s = alternating_structure(&x, &o).unwrap();
    assert_eq!((s.radius, s.cycles.len(), s.tightly_attached), (9, 3, true));
}

#[test]
fn x_2_12_13_arc_orbits_and_stabilizer() {
    let x = x_rmn(2, 12, 13).unwrap();
    let aut = automorphism_group(&x);
    let arcs = action_on_arcs(&aut, &x).unwrap();
    let orbits = arcs.all_orbits();
    assert_eq!(orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![312, 312]);
    let p = transitivity_profile(&x, &aut).unwrap();
    assert!(p.vertex_transitive && p.edge_transitive && !p.arc_transitive && p.half_arc_transitive);
    let check = stabilizer_order_check(&x, &aut).unwrap();
    assert!(check.hypotheses_met);
    assert_eq!(check.stabilizer_order, BigUint::from(2u32));
}

#[test]
fn x_2_4_17_stabilizer_has_order_two() {
    let x = x_rmn(2, 4, 17).unwrap();
    let check = stabilizer_order_check(&x, &automorphism_group(&x)).unwrap();
    assert_eq!(check.stabilizer_order, BigUint::from(2u32));
}

#[test]
fn x_5_4_13_is_arc_transitive() {
    let x = x_rmn(5, 4, 13).unwrap();
    let p = transitivity_profile(&x, &automorphism_group(&x)).unwrap();
    assert!(p.arc_transitive && !p.half_arc_transitive);
    assert!(tight_hat_predicate(5, 4, 13).unwrap().is_some());
}

#[test]
fn order_twelve_hat_subgroups() {
    match find_hat_subgroup(&wreath(6).unwrap(), 1_000_000).unwrap() {
        HatSearch::Found(h) => assert_eq!(h.order_u64(), Some(24)),
        other => panic!("{other:?}"),
    }
    match find_hat_subgroup(&rose_window_6_5_4(), 1_000_000).unwrap() {
        HatSearch::Found(h) => assert_eq!(h.order_u64(), Some(24)),
        other => panic!("{other:?}"),
    }
}

fn cubic_fixtures() -> Vec<Graph> {
    let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let k33 = Graph::from_edge_list(
        6,
        &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
    )
    .unwrap();
    let cube = Graph::from_edge_list(
        8,
        &[(0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
    )
    .unwrap();
    let petersen = Graph::from_edge_list(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap();
    let prism = Graph::from_edge_list(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    vec![k4, k33, cube, petersen, prism]
}

#[test]
fn vertex_and_edge_transitive_cubic_graphs_are_arc_transitive() {
    let mut seen = 0;
    for x in cubic_fixtures() {
        assert!(x.is_regular(3) && x.is_connected());
        let p = transitivity_profile(&x, &automorphism_group(&x)).unwrap();
        if p.vertex_transitive && p.edge_transitive {
            seen += 1;
            assert!(p.arc_transitive);
        }
    }
    // the prism is vertex- but not edge-transitive
    assert_eq!(seen, 4);
}
