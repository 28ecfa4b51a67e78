use wordrep::board::{triangulate, Board, Symmetry, Triangulation};
use wordrep::catalog::{minimal_graphs, ClosurePolicy};
use wordrep::graph::Graph;
use wordrep::semitrans::SearchBudget;
use wordrep::verify::{
    sweep, verify_catalog, verify_rotation_guard, with_jobs, Classifier, DominoMode, Outcome, ViolationKind,
};

fn classifier(policy: ClosurePolicy) -> Classifier {
    Classifier::new(policy, SearchBudget::default()).unwrap()
}

#[test]
fn zero_domino_sweep_counts_and_equivalence() {
    let run = sweep(3, 3, &[DominoMode::None], &classifier(ClosurePolicy::Extended)).unwrap();
    let r = &run.report;
    let want = [
        ((1, 1), 2),
        ((1, 2), 4),
        ((1, 3), 8),
        ((2, 2), 16),
        ((2, 3), 64),
        ((3, 3), 512),
    ];
    for ((rows, cols), n) in want {
        assert_eq!(r.triangulations_on(rows, cols), n);
        assert_eq!(r.triangulations_on(cols, rows), n);
    }
    assert_eq!(r.boards, 9);
    assert_eq!(r.budget_exceeded, 0);
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert_eq!(r.outcome(), Outcome::Pass);
}

#[test]
fn single_domino_sweep() {
    let run = with_jobs(4, || {
        sweep(
            3,
            3,
            &[DominoMode::SingleHorizontal],
            &classifier(ClosurePolicy::Extended),
        )
    })
    .unwrap()
    .unwrap();
    let r = &run.report;
    assert_eq!(r.triangulations_on(3, 3), 1536);
    assert_eq!(r.triangulations_on(2, 2), 16);
    assert_eq!(r.triangulations_on(1, 1), 0);
    assert_eq!(r.budget_exceeded, 0);
    assert_eq!(r.flip_pairs, r.triangulations);
    let counts = r.violation_counts();
    for kind in [
        ViolationKind::Equivalence,
        ViolationKind::Flip,
        ViolationKind::Certificate,
    ] {
        assert_eq!(counts.get(&kind), None, "{kind:?}");
    }
    // corner-hubbed odd wheels with no catalogued pattern around them
    assert_eq!(counts.get(&ViolationKind::Lemma), Some(&28));
    assert_eq!(r.triangulations_on(2, 3) + r.triangulations_on(3, 2), 128 + 96);
    let lemma_boards: Vec<(usize, usize)> = r
        .violations
        .iter()
        .map(|v| {
            let b = Board::parse(&v.board, false).unwrap();
            (b.rows(), b.cols())
        })
        .collect();
    assert_eq!(lemma_boards.iter().filter(|&&d| d == (2, 3)).count(), 12);
    assert_eq!(lemma_boards.iter().filter(|&&d| d == (3, 3)).count(), 16);
}

#[test]
fn literal_policy_reports_lemma_gaps_without_failing() {
    let run = sweep(
        2,
        3,
        &[DominoMode::SingleHorizontal],
        &classifier(ClosurePolicy::Literal),
    )
    .unwrap();
    assert_eq!(run.report.literal_lemma_discrepancies, 12);
    assert!(run.report.violations.is_empty());
    assert_eq!(run.report.outcome(), Outcome::Pass);
}

#[test]
fn reports_are_identical_across_worker_counts() {
    let go = |jobs| {
        with_jobs(jobs, || {
            let run = sweep(
                2,
                3,
                &[DominoMode::None, DominoMode::SingleHorizontal],
                &classifier(ClosurePolicy::Extended),
            )
            .unwrap();
            let lines: Vec<String> = run
                .runs
                .iter()
                .flat_map(|b| b.classifications.iter().map(|c| serde_json::to_string(c).unwrap()))
                .collect();
            (lines, serde_json::to_string(&run.report).unwrap())
        })
        .unwrap()
    };
    assert_eq!(go(1), go(4));
}

#[test]
fn vertical_domino_agrees_with_its_rotation() {
    let cl = classifier(ClosurePolicy::Extended);
    for spec in [
        "cells 3x3; domino V 0 0",
        "cells 3x3; domino V 0 1",
        "cells 2x2; domino V 0 1",
    ] {
        let b = Board::parse(spec, false).unwrap();
        let r = verify_rotation_guard(&b, Symmetry::Rot90, &cl).unwrap();
        let counts = r.violation_counts();
        assert_eq!(counts.get(&ViolationKind::Rotation), None, "{spec}");
        assert_eq!(counts.get(&ViolationKind::Equivalence), None, "{spec}");
        assert_eq!(r.budget_exceeded, 0);
    }
}

#[test]
fn catalog_claims_hold() {
    let r = verify_catalog(&SearchBudget::default()).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert_eq!(r.budget_exceeded, 0);
    // 12 x (colourability, representability) + 12 wheels + the A1 deletion + 3 odd wheels
    assert_eq!(r.checks, 24 + 10 + 1 + 3);
}

/// Plain backtracking isomorphism test, kept apart from the library matcher.
fn iso(a: &Graph, b: &Graph) -> bool {
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used[j] || a.degree(i) != b.degree(j) {
                continue;
            }
            if (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k])) {
                map.push(j);
                used[j] = true;
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.n() == b.n() && a.edge_count() == b.edge_count() && go(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn three_colourable_brute(g: &Graph) -> bool {
    let n = g.n();
    (0..3usize.pow(n as u32)).any(|mut code| {
        let mut col = vec![0; n];
        for c in col.iter_mut() {
            *c = code % 3;
            code /= 3;
        }
        g.edges().iter().all(|&(u, v)| col[u] != col[v])
    })
}

#[test]
fn lemma_gaps_on_two_by_three_boards_by_brute_force() {
    let patterns = minimal_graphs().unwrap();
    let mut gaps = 0;
    for spec in [
        "cells 2x3; domino H 0 0",
        "cells 2x3; domino H 0 1",
        "cells 2x3; domino H 1 0",
        "cells 2x3; domino H 1 1",
    ] {
        let b = Board::parse(spec, false).unwrap();
        for code in 0u32..32 {
            let choices: String = (0..5)
                .map(|i| {
                    let bit = code >> (4 - i) & 1;
                    match (i, bit) {
                        (4, 0) => 'F',
                        (4, _) => 'R',
                        (_, 0) => '/',
                        _ => '\\',
                    }
                })
                .collect();
            let t = Triangulation::parse_for(&b, &choices).unwrap();
            let g = triangulate(&b, &t).unwrap().graph;
            if three_colourable_brute(&g) {
                continue;
            }
            let hit = patterns.iter().any(|p| {
                let k = p.embedded.graph.n();
                subsets(g.n(), k).iter().any(|s| {
                    let sub = Graph::from_edges(
                        k,
                        g.edges()
                            .into_iter()
                            .filter(|(u, v)| s.contains(u) && s.contains(v))
                            .map(|(u, v)| {
                                let at = |x| s.iter().position(|&y| y == x).unwrap();
                                (at(u), at(v))
                            }),
                    )
                    .unwrap();
                    iso(&sub, &p.embedded.graph)
                })
            });
            if !hit {
                gaps += 1;
            }
        }
    }
    assert_eq!(gaps, 12);
}
