use braidforge_core::braiding::braid_from_grid;
use braidforge_core::diagram::{braid_closure_to_pd, grid_to_pd, parse_pd};
use braidforge_core::markov::{
    bounded_equivalence_search, conjugate, destabilize, random_markov_sequence, replay, stabilize,
    MoveCaps, SearchCaps,
};
use braidforge_core::{invariant_record, BraidWord, GridDiagram, Invariants, OracleConfig, PdCode};
use proptest::prelude::*;

fn record(pd: &PdCode) -> Invariants {
    invariant_record(pd, &OracleConfig::auto()).unwrap()
}

fn word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| {
        let g = (1..n as i32, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
        prop::collection::vec(g, 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn grid(max_n: usize) -> impl Strategy<Value = GridDiagram> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let perm = Just((1..=n).collect::<Vec<usize>>()).prop_shuffle();
            (perm.clone(), perm)
        })
        .prop_filter_map("X and O collide", |(x, o)| GridDiagram::new(x, o).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn braiding_preserves_invariants(g in grid(6)) {
        let (w, trace) = braid_from_grid(&g);
        prop_assert_eq!(trace.letters(), w.letters().to_vec());
        let a = record(&grid_to_pd(&g));
        let b = record(&braid_closure_to_pd(&w));
        prop_assert!(a.same_link_invariants(&b), "{} -> {}: {:?}", g, w, a.mismatches(&b));
    }

    #[test]
    fn random_sequences_preserve_invariants(w in word(5, 8), seed in any::<u64>(), len in 0usize..8) {
        let (v, moves) = random_markov_sequence(&w, len, &MoveCaps::default(), seed);
        prop_assert_eq!(moves.len(), len);
        prop_assert_eq!(&replay(&w, &moves).unwrap(), &v);
        let a = record(&braid_closure_to_pd(&w));
        let b = record(&braid_closure_to_pd(&v));
        prop_assert!(a.same_link_invariants(&b));
    }

    #[test]
    fn destabilize_inverts_stabilize(w in word(5, 10), positive in any::<bool>()) {
        let s = stabilize(&w, if positive { 1 } else { -1 }).unwrap();
        prop_assert_eq!(destabilize(&s), Some(w.free_reduce()));
    }

    #[test]
    fn conjugation_round_trip(w in word(5, 10), i in 1usize..5, positive in any::<bool>()) {
        prop_assume!(i < w.strands());
        let e = if positive { 1 } else { -1 };
        let back = conjugate(&conjugate(&w, i, e).unwrap(), i, -e).unwrap();
        prop_assert_eq!(back.free_reduce(), w.free_reduce());
    }

    #[test]
    fn pd_json_round_trip(w in word(4, 10)) {
        let pd = braid_closure_to_pd(&w);
        let back = parse_pd(&serde_json::to_string(&pd).unwrap()).unwrap();
        prop_assert_eq!(back, pd);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_paths_replay(w in word(3, 4), seed in any::<u64>()) {
        let small = MoveCaps { max_strands: 3, max_length: 5 };
        let target = random_markov_sequence(&w, 1, &small, seed).0.free_reduce();
        let caps = SearchCaps { depth: 2, strands: 4, length: 7, max_states: 20_000 };
        if let Some(path) = bounded_equivalence_search(&w, &target, &caps).path {
            prop_assert_eq!(replay(&w, &path).unwrap(), target);
        }
    }
}
