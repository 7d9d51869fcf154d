mod common;

use hare_core::compress::Compressor;
use hare_core::fasthare::ScoreState;
use hare_core::model::SkGraph;
use proptest::prelude::*;
use proptest::sample::Index;

#[derive(Clone, Debug)]
enum Op {
    Flip(Index),
    /// Merge a node with one of its neighbours (or any node if isolated).
    Merge(Index, Index),
    Classify,
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => any::<Index>().prop_map(Op::Flip),
        4 => (any::<Index>(), any::<Index>()).prop_map(|(a, b)| Op::Merge(a, b)),
        1 => Just(Op::Classify),
    ]
}

fn graph() -> impl Strategy<Value = SkGraph> {
    (2usize..=50, prop_oneof![Just(0.1), Just(0.3), Just(0.8)]).prop_flat_map(|(nodes, density)| {
        common::pair_weights(nodes, 8, density).prop_map(move |w| common::graph_from(nodes, &w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn maintained_values_match_recomputation(
        g in graph(),
        alpha in 1usize..=3,
        ops in proptest::collection::vec(op(), 1..=200),
    ) {
        let mut state = ScoreState::initialize(&g, alpha).unwrap();
        let mut comp = Compressor::from_graph(g).unwrap();
        state.verify_against(comp.graph()).unwrap();
        for op in ops {
            let live: Vec<usize> = comp.graph().nodes().collect();
            match op {
                Op::Flip(i) => {
                    let u = live[i.index(live.len())];
                    comp.flip(u, &mut state).unwrap();
                }
                Op::Merge(i, j) => {
                    if live.len() < 2 {
                        continue;
                    }
                    let u = live[i.index(live.len())];
                    let nbrs: Vec<usize> = comp.graph().neighbors(u).map(|(v, _)| v).collect();
                    let v = if nbrs.is_empty() {
                        let others: Vec<usize> = live.iter().copied().filter(|&v| v != u).collect();
                        others[j.index(others.len())]
                    } else {
                        nbrs[j.index(nbrs.len())]
                    };
                    comp.merge(u, v, &mut state).unwrap();
                }
                Op::Classify => {
                    state.classify(comp.graph(), true);
                }
            }
            comp.graph().validate().unwrap();
            if let Err(e) = state.verify_against(comp.graph()) {
                return Err(TestCaseError::fail(e));
            }
        }
    }

    #[test]
    fn double_flip_restores_state(g in graph(), i in any::<Index>()) {
        let mut state = ScoreState::initialize(&g, 2).unwrap();
        let mut comp = Compressor::from_graph(g).unwrap();
        let u = i.index(comp.graph().capacity());
        let before: Vec<_> = state.candidates().map(|(a, b)| (a, b, state.common(a, b))).collect();
        comp.flip(u, &mut state).unwrap();
        comp.flip(u, &mut state).unwrap();
        let after: Vec<_> = state.candidates().map(|(a, b)| (a, b, state.common(a, b))).collect();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn merging_twins_updates_their_neighbour() {
    let mut g = SkGraph::with_nodes(4);
    g.add_edge(0, 2, 2).unwrap();
    g.add_edge(1, 2, 3).unwrap();
    let mut state = ScoreState::initialize(&g, 2).unwrap();
    let mut comp = Compressor::from_graph(g).unwrap();
    comp.merge(0, 1, &mut state).unwrap();
    assert_eq!(state.norm(2), 5);
    state.verify_against(comp.graph()).unwrap();

    let mut g = SkGraph::with_nodes(4);
    g.add_edge(0, 2, 2).unwrap();
    g.add_edge(1, 2, -2).unwrap();
    let mut state = ScoreState::initialize(&g, 2).unwrap();
    let mut comp = Compressor::from_graph(g).unwrap();
    comp.merge(0, 1, &mut state).unwrap();
    assert_eq!(state.norm(2), 0);
    state.verify_against(comp.graph()).unwrap();
}

#[test]
fn hub_gains_at_most_alpha_candidates() {
    let mut g = SkGraph::with_nodes(12);
    for v in 2..11 {
        g.add_edge(0, v, 5).unwrap();
    }
    g.add_edge(0, 1, 1).unwrap();
    let mut state = ScoreState::initialize(&g, 1).unwrap();
    let mut comp = Compressor::from_graph(g).unwrap();
    let z = comp.merge(0, 1, &mut state).unwrap();
    let at_z = state.candidates().filter(|&(a, b)| a == z || b == z).count();
    assert!(at_z <= 1);
    state.verify_against(comp.graph()).unwrap();
}
