use proptest::prelude::*;

use wordrep::board::{
    domino_placements, enumerate_triangulations, flip_domino_pattern, triangulate, Axis, Board, Triangulation,
};
use wordrep::catalog::minimal_graphs;
use wordrep::graph::{are_isomorphic, chromatic_number, contains_induced, induced, is_k_colourable, Colouring, Graph};
use wordrep::semitrans::{is_semi_transitive, orientation_from_colouring};
use wordrep::word::{graph_of_word, Word};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A graph together with the 3-colouring it was built around.
fn tripartite_strategy() -> impl Strategy<Value = (Graph, Colouring)> {
    (1usize..=12)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(1u8..=3, n),
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(colours, bits)| {
            let n = colours.len();
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|&((u, v), keep)| keep && colours[u] != colours[v])
                .map(|(e, _)| e)
                .collect();
            (Graph::from_edges(n, edges).unwrap(), Colouring { colours })
        })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

fn small_board() -> impl Strategy<Value = Board> {
    (1usize..=3, 1usize..=4, any::<bool>(), any::<prop::sample::Index>()).prop_map(|(r, c, domino, pick)| {
        let spots = domino_placements(r, c, Axis::H);
        if domino && !spots.is_empty() {
            Board::new(r, c, vec![spots[pick.index(spots.len())]]).unwrap()
        } else {
            Board::plain(r, c).unwrap()
        }
    })
}

fn any_triangulation(b: &Board, pick: prop::sample::Index) -> Triangulation {
    let all: Vec<Triangulation> = enumerate_triangulations(b).unwrap().collect();
    all[pick.index(all.len())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn colourings_found_are_proper(g in graph_strategy(10), k in 1usize..=4) {
        if let Some(c) = is_k_colourable(&g, k) {
            prop_assert!(c.is_proper_for(&g));
            prop_assert!(c.max_colour() as usize <= k);
        }
    }

    #[test]
    fn planted_colourings_orient_semi_transitively((g, c) in tripartite_strategy()) {
        prop_assert!(c.is_proper_for(&g));
        let o = orientation_from_colouring(&g, &c).unwrap();
        prop_assert!(is_semi_transitive(&o).unwrap());
    }

    #[test]
    fn induced_matches_are_isomorphic_copies(
        host in graph_strategy(12),
        keep in proptest::collection::vec(any::<bool>(), 12),
        pattern in graph_strategy(5),
    ) {
        let chosen: Vec<usize> = (0..host.n()).filter(|&v| keep[v]).collect();
        if !chosen.is_empty() {
            let sub = induced(&host, &chosen).unwrap();
            let m = contains_induced(&host, &sub).unwrap();
            prop_assert!(m.is_some());
            let image = induced(&host, &m.unwrap()).unwrap();
            prop_assert!(are_isomorphic(&image, &sub));
        }
        if let Some(m) = contains_induced(&host, &pattern).unwrap() {
            prop_assert!(are_isomorphic(&induced(&host, &m).unwrap(), &pattern));
        }
    }

    #[test]
    fn isomorphism_survives_relabelling(g in graph_strategy(9), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert!(are_isomorphic(&h, &g));
        prop_assert_eq!(g.invariant_hash(), h.invariant_hash());
    }

    #[test]
    fn permutation_words_represent_complete_graphs(n in 1usize..=9, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut letters: Vec<usize> = (0..n).collect();
        letters.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let g = graph_of_word(&Word::new(letters, n).unwrap()).unwrap();
        prop_assert_eq!(g.edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn triangulations_are_three_or_four_chromatic(b in small_board(), pick in any::<prop::sample::Index>()) {
        let t = any_triangulation(&b, pick);
        let e = triangulate(&b, &t).unwrap();
        let cells = b.rows() * b.cols();
        let d = b.dominoes().len();
        // grid edges, one diagonal per unit cell, three chords less one middle edge per domino
        let grid = b.rows() * (b.cols() + 1) + (b.rows() + 1) * b.cols();
        prop_assert_eq!(e.graph.edge_count(), grid + (cells - 2 * d) + 2 * d);
        prop_assert!((3..=4).contains(&chromatic_number(&e.graph)));
    }

    #[test]
    fn flipping_the_domino_keeps_three_colourability(b in small_board(), pick in any::<prop::sample::Index>()) {
        if b.dominoes().len() == 1 {
            let t = any_triangulation(&b, pick);
            let f = flip_domino_pattern(&t, 0).unwrap();
            let a = is_k_colourable(&triangulate(&b, &t).unwrap().graph, 3).is_some();
            let z = is_k_colourable(&triangulate(&b, &f).unwrap().graph, 3).is_some();
            prop_assert_eq!(a, z);
            prop_assert_eq!(flip_domino_pattern(&f, 0).unwrap(), t);
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence_on_fixtures() {
    let patterns = minimal_graphs().unwrap();
    let graphs: Vec<Graph> = patterns
        .iter()
        .flat_map(|p| {
            let g = p.embedded.graph.clone();
            let rev: Vec<usize> = (0..g.n()).rev().collect();
            [relabel(&g, &rev), g]
        })
        .collect();
    for a in &graphs {
        assert!(are_isomorphic(a, a));
        for b in &graphs {
            assert_eq!(are_isomorphic(a, b), are_isomorphic(b, a));
            for c in &graphs {
                if are_isomorphic(a, b) && are_isomorphic(b, c) {
                    assert!(are_isomorphic(a, c));
                }
            }
        }
    }
}
