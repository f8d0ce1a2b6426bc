use glocal::equivalence::{
    decide_lc1, decide_lu_small, extract_lc_sequence, lift_certificate, verify_certificate, Obstruction,
};
use glocal::genlc::{apply_rlc, is_r_incident};
use glocal::io::{from_graph6, parse_graph, to_edge_list_json, to_graph6};
use glocal::localsets::{enumerate_mls, vertex_types};
use glocal::random::{random_lc_moves, sample_valid_instance};
use glocal::standard::{is_standard_form, replay, to_standard_form};
use glocal::{Caps, Graph, Level, LocalCliffordOp, Move, Verdict, VertexType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_of)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lc_and_pivot_are_involutions(g in graph(9), u in 0usize..9) {
        let u = u % g.n();
        prop_assert_eq!(g.local_complement(u).unwrap().local_complement(u).unwrap(), g.clone());
        for (a, b) in g.edges().collect::<Vec<_>>() {
            let p = g.pivot(a, b).unwrap();
            prop_assert_eq!(&p, &g.pivot(b, a).unwrap());
            prop_assert_eq!(p.pivot(a, b).unwrap(), g.clone());
        }
    }

    #[test]
    fn graph6_and_json_round_trip(g in graph(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&to_edge_list_json(&g)).unwrap(), g);
    }

    #[test]
    fn types_are_lc_invariant_on_bot(g in graph(7), u in 0usize..7) {
        // ⊥ is an LC invariant: it is defined by the MLS structure
        let caps = Caps::default();
        let u = u % g.n();
        let t1 = vertex_types(&g, &caps).unwrap();
        let t2 = vertex_types(&g.local_complement(u).unwrap(), &caps).unwrap();
        prop_assert_eq!(t1.vertices_of(VertexType::Bot), t2.vertices_of(VertexType::Bot));
    }

    #[test]
    fn standard_form_replays(g in graph(9)) {
        let caps = Caps::default();
        let sf = to_standard_form(&g, &caps).unwrap();
        prop_assert!(is_standard_form(&sf.graph, &vertex_types(&sf.graph, &caps).unwrap()));
        prop_assert_eq!(replay(&g, &sf.moves, &caps).unwrap(), sf.graph);
    }

    #[test]
    fn rlc_is_an_involution(seed in any::<u64>(), r in 1u32..=3) {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, s) = sample_valid_instance(&mut rng, 2..=9, r, 100_000).unwrap();
        let h = apply_rlc(&g, &s, r, &caps).unwrap();
        prop_assert!(is_r_incident(&h, &s, r, &caps).unwrap().ok);
        prop_assert_eq!(apply_rlc(&h, &s, r, &caps).unwrap(), g);
    }

    #[test]
    fn extraction_round_trips(g in graph(8), seed in any::<u64>(), len in 0usize..6) {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq = random_lc_moves(&mut rng, g.n(), len);
        let c = LocalCliffordOp::from_moves(&g, &seq).unwrap();
        let ex = extract_lc_sequence(&g, &c).unwrap();
        prop_assert_eq!(replay(&g, &ex.moves, &caps).unwrap(), replay(&g, &seq, &caps).unwrap());
        prop_assert!(ex.moves.len() <= 3 * g.n() / 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn lu_verdict_is_stable_under_relabelling(
        (g, h, perm) in (2usize..=6).prop_flat_map(|n| (graph_of(n), graph_of(n), permutation(n)))
    ) {
        let caps = Caps::default();
        let a = decide_lu_small(&g, &h, &caps).unwrap();
        let b = decide_lu_small(&g.permute(&perm).unwrap(), &h.permute(&perm).unwrap(), &caps).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn negative_certificates_recheck((g, h) in (2usize..=6).prop_flat_map(|n| (graph_of(n), graph_of(n)))) {
        let caps = Caps::default();
        let cert = decide_lu_small(&g, &h, &caps).unwrap();
        match cert.obstruction {
            None => {
                prop_assert_eq!(cert.verdict, Verdict::Equivalent);
                prop_assert!(verify_certificate(&g, cert.moves.as_ref().unwrap(), &h, &caps).unwrap());
            }
            Some(Obstruction::MlsMismatch { set, dimension_1, dimension_2 }) => {
                let dim = |x: &Graph| enumerate_mls(x, &caps).unwrap().into_iter()
                    .find(|r| r.set.to_vec() == set).map(|r| r.dimension);
                prop_assert_eq!(dim(&g), dimension_1);
                prop_assert_eq!(dim(&h), dimension_2);
                prop_assert_ne!(dimension_1, dimension_2);
            }
            Some(Obstruction::TypeMismatch { vertex, type_1, type_2 }) => {
                let t1 = to_standard_form(&g, &caps).unwrap().types.get(vertex);
                let t2 = to_standard_form(&h, &caps).unwrap().types.get(vertex);
                prop_assert_eq!((t1, t2), (type_1, type_2));
                prop_assert_ne!(t1, t2);
            }
            Some(Obstruction::BotMismatch { bot_1, bot_2 }) => {
                prop_assert_ne!(bot_1, bot_2);
            }
            Some(other) => {
                // beyond the invariants above, the search itself is the evidence; LC must agree
                prop_assert_eq!(decide_lc1(&g, &h, &caps).unwrap().verdict, Verdict::NotEquivalent, "{:?}", other);
            }
        }
    }

    #[test]
    fn certificates_lift(g in graph(7), seed in any::<u64>()) {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = replay(&g, &random_lc_moves(&mut rng, g.n(), 3), &caps).unwrap();
        let cert = decide_lu_small(&g, &h, &caps).unwrap();
        prop_assert_eq!(cert.level, Level::R(1));
        let lifted = lift_certificate(&cert).unwrap();
        prop_assert_eq!(lifted.level, Level::R(2));
        prop_assert!(verify_certificate(&g, lifted.moves.as_ref().unwrap(), &h, &caps).unwrap());
    }
}

fn graph_of(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let mut g = Graph::empty(n);
        let mut it = bits.into_iter();
        for j in 1..n {
            for i in 0..j {
                if it.next().unwrap() {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    })
}

#[test]
fn rlc_moves_survive_lifting() {
    let caps = Caps::default();
    let f = glocal::fixtures::by_name("fig3-lhs").unwrap();
    let target = glocal::fixtures::by_name("fig3-rhs").unwrap().graph;
    let s = glocal::VertexMultiset::from_pairs(6, [(0, 2), (1, 1), (2, 1)]).unwrap();
    assert!(verify_certificate(&f.graph, &[Move::rlc(2, &s)], &target, &caps).unwrap());
    let doubled = s.scaled(2).unwrap();
    assert!(verify_certificate(&f.graph, &[Move::rlc(3, &doubled)], &target, &caps).unwrap());
}
