//! Semi-transitive orientations: checking, certificate construction from a
//! 3-colouring, and the exhaustive search used to decide
//! word-representability.
//!
//! An orientation is semi-transitive when it is acyclic and has no shortcut,
//! i.e. no directed path `v1 -> .. -> vk` (`k >= 4`) whose closing arc
//! `v1 -> vk` exists while some arc `vi -> vj` (`i < j`) is missing. A graph
//! is word-representable exactly when it admits such an orientation.
//!
//! All checks here use one reformulation: for an arc `u -> v` let `P(u, v)`
//! be the vertices on directed `u ~> v` paths (forward reachability from `u`
//! intersected with backward reachability from `v`). There is no shortcut
//! closed by `u -> v` iff every pair `x ~> y` inside `P(u, v)` is an arc.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, VertexSet};
use crate::graph::{is_k_colourable, Colouring, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrientationError {
    #[error("orientation is partial; {0} edges undecided")]
    Partial(usize),
    #[error("orientation has a directed cycle")]
    Cyclic,
    #[error("{u}-{v} is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("colouring is not a proper 3-colouring of the graph")]
    BadColouring,
    #[error("graph has {edges} edges and {vertices} vertices, over the search budget")]
    OverBudget { vertices: usize, edges: usize },
    #[error("orientation search gave up after {0} nodes")]
    BudgetExceeded(u64),
    #[error("certificate failed its semi-transitivity self-check")]
    CertificateRejected,
}

/// Direction of an edge `{u, v}` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `u -> v`
    Forward,
    /// `v -> u`
    Backward,
}

/// A possibly partial orientation of a graph's edges.
///
/// `dirs` is aligned with [`Graph::edges`], so directions exist only for
/// edges of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: Graph,
    edges: Vec<(usize, usize)>,
    dirs: Vec<Option<Direction>>,
}

impl Orientation {
    pub fn unoriented(graph: &Graph) -> Self {
        let edges = graph.edges();
        Orientation {
            graph: graph.clone(),
            dirs: vec![None; edges.len()],
            edges,
        }
    }

    /// Total orientation from a list of arcs `(tail, head)`.
    pub fn from_arcs<I>(graph: &Graph, arcs: I) -> Result<Self, OrientationError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut o = Orientation::unoriented(graph);
        for (a, b) in arcs {
            o.set_arc(a, b)?;
        }
        Ok(o)
    }

    fn from_out_sets(graph: &Graph, out: &[VertexSet]) -> Self {
        let edges = graph.edges();
        let dirs = edges
            .iter()
            .map(|&(u, v)| {
                if out[u] & bits::bit(v) != 0 {
                    Some(Direction::Forward)
                } else if out[v] & bits::bit(u) != 0 {
                    Some(Direction::Backward)
                } else {
                    None
                }
            })
            .collect();
        Orientation {
            graph: graph.clone(),
            edges,
            dirs,
        }
    }

    /// Orients the edge `{tail, head}` as `tail -> head`.
    pub fn set_arc(&mut self, tail: usize, head: usize) -> Result<(), OrientationError> {
        let key = (tail.min(head), tail.max(head));
        let idx = self
            .edges
            .binary_search(&key)
            .map_err(|_| OrientationError::NotAnEdge { u: tail, v: head })?;
        self.dirs[idx] = Some(if tail < head {
            Direction::Forward
        } else {
            Direction::Backward
        });
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn direction(&self, u: usize, v: usize) -> Option<Direction> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().and_then(|i| self.dirs[i])
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        match self.direction(tail, head) {
            Some(Direction::Forward) => tail < head,
            Some(Direction::Backward) => tail > head,
            None => false,
        }
    }

    pub fn undecided(&self) -> usize {
        self.dirs.iter().filter(|d| d.is_none()).count()
    }

    pub fn is_total(&self) -> bool {
        self.undecided() == 0
    }

    /// Oriented arcs as `(tail, head)`, in edge order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .zip(&self.dirs)
            .filter_map(|(&(u, v), d)| match d {
                Some(Direction::Forward) => Some((u, v)),
                Some(Direction::Backward) => Some((v, u)),
                None => None,
            })
            .collect()
    }

    pub fn reversed(&self) -> Orientation {
        let dirs = self
            .dirs
            .iter()
            .map(|d| {
                d.map(|d| match d {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                })
            })
            .collect();
        Orientation {
            graph: self.graph.clone(),
            edges: self.edges.clone(),
            dirs,
        }
    }

    /// Out-neighbourhoods of the oriented part.
    fn out_sets(&self) -> Vec<VertexSet> {
        let mut out = vec![0; self.graph.n()];
        for (a, b) in self.arcs() {
            out[a] |= bits::bit(b);
        }
        out
    }

    fn require_total(&self) -> Result<(), OrientationError> {
        match self.undecided() {
            0 => Ok(()),
            k => Err(OrientationError::Partial(k)),
        }
    }
}

/// Orientation JSON: `{"edges": [[u, v, "uv"|"vu"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    pub edges: Vec<(usize, usize, String)>,
}

impl From<&Orientation> for OrientationJson {
    fn from(o: &Orientation) -> Self {
        OrientationJson {
            edges: o
                .edges
                .iter()
                .zip(&o.dirs)
                .filter_map(|(&(u, v), d)| {
                    d.map(|d| {
                        let tag = match d {
                            Direction::Forward => "uv",
                            Direction::Backward => "vu",
                        };
                        (u, v, tag.to_string())
                    })
                })
                .collect(),
        }
    }
}

impl OrientationJson {
    pub fn into_orientation(self, graph: &Graph) -> Result<Orientation, OrientationError> {
        let mut o = Orientation::unoriented(graph);
        for (u, v, tag) in self.edges {
            match tag.as_str() {
                "uv" => o.set_arc(u, v)?,
                "vu" => o.set_arc(v, u)?,
                _ => return Err(OrientationError::NotAnEdge { u, v }),
            }
        }
        Ok(o)
    }
}

/// A shortcut: a directed path whose first vertex has an arc to its last
/// vertex, while the arc between `path[missing.0]` and `path[missing.1]` is
/// absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortcutWitness {
    pub path: Vec<usize>,
    pub missing: (usize, usize),
}

impl ShortcutWitness {
    /// Checks the witness against `o` without trusting how it was found.
    pub fn verify(&self, o: &Orientation) -> bool {
        let k = self.path.len();
        let (i, j) = self.missing;
        k >= 4
            && i < j
            && j < k
            && self.path.windows(2).all(|w| o.has_arc(w[0], w[1]))
            && o.has_arc(self.path[0], self.path[k - 1])
            && !o.has_arc(self.path[i], self.path[j])
    }
}

/// Transitive closure of `out` (strict reachability), or `None` on a cycle.
fn reachability(out: &[VertexSet]) -> Option<Vec<VertexSet>> {
    let n = out.len();
    let mut reach = out.to_vec();
    for k in 0..n {
        let kb = bits::bit(k);
        let rk = reach[k];
        for r in reach.iter_mut() {
            if *r & kb != 0 {
                *r |= rk;
            }
        }
    }
    if (0..n).any(|v| reach[v] & bits::bit(v) != 0) {
        None
    } else {
        Some(reach)
    }
}

fn co_reachability(reach: &[VertexSet]) -> Vec<VertexSet> {
    let n = reach.len();
    let mut co = vec![0; n];
    for (x, &r) in reach.iter().enumerate() {
        for y in bits::iter(r) {
            co[y] |= bits::bit(x);
        }
    }
    co
}

pub fn is_acyclic(o: &Orientation) -> Result<bool, OrientationError> {
    o.require_total()?;
    Ok(reachability(&o.out_sets()).is_some())
}

/// First shortcut found, scanning closing arcs in edge order.
pub fn find_shortcut(o: &Orientation) -> Result<Option<ShortcutWitness>, OrientationError> {
    o.require_total()?;
    let out = o.out_sets();
    let reach = reachability(&out).ok_or(OrientationError::Cyclic)?;
    let co = co_reachability(&reach);
    for (u, v) in o.arcs() {
        let span = (reach[u] | bits::bit(u)) & (co[v] | bits::bit(v));
        for x in bits::iter(span) {
            if let Some(y) = bits::iter(reach[x] & span & !out[x]).next() {
                return Ok(Some(build_witness(&out, u, x, y, v)));
            }
        }
    }
    Ok(None)
}

/// Stitches `u ~> x ~> y ~> v` from shortest paths; in a DAG the pieces
/// cannot share vertices.
fn build_witness(out: &[VertexSet], u: usize, x: usize, y: usize, v: usize) -> ShortcutWitness {
    let mut path = vec![u];
    for (a, b) in [(u, x), (x, y), (y, v)] {
        let seg = shortest_path(out, a, b);
        path.extend_from_slice(&seg[1..]);
    }
    let i = path.iter().position(|&p| p == x).expect("x on path");
    let j = path.iter().position(|&p| p == y).expect("y on path");
    ShortcutWitness { path, missing: (i, j) }
}

fn shortest_path(out: &[VertexSet], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return vec![from];
    }
    let n = out.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = bits::bit(from);
    let mut frontier = vec![from];
    while !frontier.is_empty() && seen & bits::bit(to) == 0 {
        let mut next = Vec::new();
        for a in frontier {
            for b in bits::iter(out[a] & !seen) {
                seen |= bits::bit(b);
                prev[b] = a;
                next.push(b);
            }
        }
        frontier = next;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

pub fn is_semi_transitive(o: &Orientation) -> Result<bool, OrientationError> {
    if !is_acyclic(o)? {
        return Ok(false);
    }
    Ok(find_shortcut(o)?.is_none())
}

/// Orients every edge from the lower colour class to the higher one.
/// Directed paths then have at most three vertices, so no shortcut exists.
pub fn orientation_from_colouring(g: &Graph, c: &Colouring) -> Result<Orientation, OrientationError> {
    if !c.is_proper_for(g) || c.max_colour() > 3 {
        return Err(OrientationError::BadColouring);
    }
    let arcs = g
        .edges()
        .into_iter()
        .map(|(u, v)| if c.colours[u] < c.colours[v] { (u, v) } else { (v, u) });
    Orientation::from_arcs(g, arcs)
}

/// Limits for [`exists_semi_transitive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_nodes: u64,
}

pub const DEFAULT_MAX_EDGES: usize = 48;

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 20,
            max_edges: DEFAULT_MAX_EDGES,
            max_nodes: 5_000_000,
        }
    }
}

impl SearchBudget {
    pub fn with_max_edges(max_edges: usize) -> Self {
        SearchBudget {
            max_edges,
            ..SearchBudget::default()
        }
    }
}

/// Search for a semi-transitive orientation.
///
/// Backtracks over edges, most constrained first (higher minimum endpoint
/// degree, then lexicographic). After every decision the partial orientation
/// is closed under two rules until nothing changes:
///
/// * an undecided edge `{x, y}` with `x ~> y` already must become `x -> y`;
/// * inside `P(u, v)` of every arc, a pair `x ~> y` without an arc must be an
///   undecided edge (forced `x -> y`); a non-edge is a permanent shortcut.
///
/// A directed cycle at any point is a conflict. The very first edge is fixed
/// to one direction since reversing a semi-transitive orientation keeps it
/// semi-transitive.
pub fn exists_semi_transitive(g: &Graph, budget: &SearchBudget) -> Result<Option<Orientation>, OrientationError> {
    let m = g.edge_count();
    if g.n() > budget.max_vertices || m > budget.max_edges {
        return Err(OrientationError::OverBudget {
            vertices: g.n(),
            edges: m,
        });
    }
    let mut order = g.edges();
    order.sort_by_key(|&(u, v)| (std::cmp::Reverse(g.degree(u).min(g.degree(v))), u, v));
    let mut search = OrientationSearch {
        g,
        order,
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let out = vec![0; g.n()];
    let found = search.run(out, true)?;
    Ok(found.map(|out| Orientation::from_out_sets(g, &out)))
}

struct OrientationSearch<'a> {
    g: &'a Graph,
    order: Vec<(usize, usize)>,
    nodes: u64,
    max_nodes: u64,
}

impl OrientationSearch<'_> {
    fn run(&mut self, mut out: Vec<VertexSet>, first: bool) -> Result<Option<Vec<VertexSet>>, OrientationError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OrientationError::BudgetExceeded(self.nodes));
        }
        if !propagate(self.g, &mut out) {
            return Ok(None);
        }
        let next = self
            .order
            .iter()
            .copied()
            .find(|&(u, v)| out[u] & bits::bit(v) == 0 && out[v] & bits::bit(u) == 0);
        let Some((u, v)) = next else {
            return Ok(Some(out));
        };
        let tries: &[(usize, usize)] = if first { &[(u, v)][..] } else { &[(u, v), (v, u)][..] };
        for &(a, b) in tries {
            let mut child = out.clone();
            child[a] |= bits::bit(b);
            if let Some(done) = self.run(child, false)? {
                return Ok(Some(done));
            }
        }
        Ok(None)
    }
}

/// Applies the forcing rules to a fixpoint. Returns `false` on a conflict.
fn propagate(g: &Graph, out: &mut [VertexSet]) -> bool {
    let n = g.n();
    loop {
        let Some(reach) = reachability(out) else {
            return false;
        };
        let mut changed = false;
        // orient undecided edges along existing reachability
        for x in 0..n {
            let undecided_nb = g.neighbours(x) & !out[x] & !in_set(out, x);
            let forced = undecided_nb & reach[x];
            if forced != 0 {
                out[x] |= forced;
                changed = true;
            }
        }
        if changed {
            continue;
        }
        let co = co_reachability(&reach);
        for u in 0..n {
            for v in bits::iter(out[u]) {
                let span = (reach[u] | bits::bit(u)) & (co[v] | bits::bit(v));
                if span.count_ones() < 4 {
                    continue;
                }
                for x in bits::iter(span) {
                    let lacking = reach[x] & span & !out[x];
                    if lacking & !g.neighbours(x) != 0 {
                        return false;
                    }
                    if lacking != 0 {
                        out[x] |= lacking;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn in_set(out: &[VertexSet], x: usize) -> VertexSet {
    let mut s = 0;
    for (y, &o) in out.iter().enumerate() {
        if o & bits::bit(x) != 0 {
            s |= bits::bit(y);
        }
    }
    s
}

/// How a positive word-representability verdict was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Proper 3-colouring; the orientation is derived level by level.
    Colouring(Colouring, Orientation),
    /// Orientation found by exhaustive search.
    Search(Orientation),
}

impl Certificate {
    pub fn orientation(&self) -> &Orientation {
        match self {
            Certificate::Colouring(_, o) | Certificate::Search(o) => o,
        }
    }
}

/// Word-representability with its evidence: `Some(certificate)` when a
/// semi-transitive orientation exists, `None` after exhaustive search.
///
/// 3-colourable graphs take the colouring fast path; the derived
/// orientation is still re-checked.
pub fn decide_with_certificate(g: &Graph, budget: &SearchBudget) -> Result<Option<Certificate>, OrientationError> {
    if let Some(c) = is_k_colourable(g, 3) {
        let o = orientation_from_colouring(g, &c)?;
        if !is_semi_transitive(&o)? {
            return Err(OrientationError::CertificateRejected);
        }
        return Ok(Some(Certificate::Colouring(c, o)));
    }
    match exists_semi_transitive(g, budget)? {
        Some(o) => {
            if !is_semi_transitive(&o)? {
                return Err(OrientationError::CertificateRejected);
            }
            Ok(Some(Certificate::Search(o)))
        }
        None => Ok(None),
    }
}

pub fn decide_word_representable(g: &Graph, budget: &SearchBudget) -> Result<bool, OrientationError> {
    Ok(decide_with_certificate(g, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, wheel};

    fn transitive_tournament(n: usize) -> Orientation {
        let g = Graph::complete(n).unwrap();
        Orientation::from_arcs(&g, g.edges()).unwrap()
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(&transitive_tournament(4)).unwrap());
        let k3 = Graph::complete(3).unwrap();
        let tri = Orientation::from_arcs(&k3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!is_acyclic(&tri).unwrap());
        assert_eq!(find_shortcut(&tri), Err(OrientationError::Cyclic));
        let partial = Orientation::unoriented(&k3);
        assert_eq!(is_acyclic(&partial), Err(OrientationError::Partial(3)));
    }

    #[test]
    fn minimal_shortcut() {
        // a->b->c->d with a->d, no a-c or b-d edge
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let o = Orientation::from_arcs(&g, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let w = find_shortcut(&o).unwrap().unwrap();
        assert!(w.verify(&o));
        assert_eq!(w.path, vec![0, 1, 2, 3]);
        assert_eq!(w.missing, (0, 2));
        assert!(!is_semi_transitive(&o).unwrap());
    }

    #[test]
    fn shortcut_witness_invalidated_by_arc_removal() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let o = Orientation::from_arcs(&g, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let w = find_shortcut(&o).unwrap().unwrap();
        for pair in w.path.windows(2) {
            let kept: Vec<_> = g
                .edges()
                .into_iter()
                .filter(|&(a, b)| (a, b) != (pair[0].min(pair[1]), pair[0].max(pair[1])))
                .collect();
            let h = Graph::from_edges(4, kept).unwrap();
            let arcs = o.arcs().into_iter().filter(|&(a, b)| (a, b) != (pair[0], pair[1]));
            let o2 = Orientation::from_arcs(&h, arcs).unwrap();
            assert!(!w.verify(&o2));
        }
    }

    #[test]
    fn tournaments_have_no_shortcut() {
        for n in 1..=6 {
            assert!(find_shortcut(&transitive_tournament(n)).unwrap().is_none());
        }
    }

    /// Shortcut existence by enumerating every simple directed path.
    fn brute_force_has_shortcut(o: &Orientation) -> bool {
        fn walk(o: &Orientation, path: &mut Vec<usize>) -> bool {
            let n = o.graph().n();
            let k = path.len();
            if k >= 4 && o.has_arc(path[0], path[k - 1]) {
                for i in 0..k {
                    for j in i + 1..k {
                        if !o.has_arc(path[i], path[j]) {
                            return true;
                        }
                    }
                }
            }
            let last = path[k - 1];
            for next in 0..n {
                if !path.contains(&next) && o.has_arc(last, next) {
                    path.push(next);
                    if walk(o, path) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        (0..o.graph().n()).any(|s| walk(o, &mut vec![s]))
    }

    #[test]
    fn c4_acyclic_orientations() {
        // 16 orientations: 2 directed cycles, 8 semi-cycles (a path of three
        // arcs plus the closing arc, missing both chords), 6 semi-transitive.
        let g = cycle(4).unwrap();
        let edges = g.edges();
        let (mut acyclic, mut with_shortcut) = (0, 0);
        for mask in 0u32..16 {
            let arcs = edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if mask >> i & 1 == 0 { (u, v) } else { (v, u) });
            let o = Orientation::from_arcs(&g, arcs).unwrap();
            if is_acyclic(&o).unwrap() {
                acyclic += 1;
                let found = find_shortcut(&o).unwrap();
                assert_eq!(found.is_some(), brute_force_has_shortcut(&o));
                if let Some(w) = found {
                    assert!(w.verify(&o));
                    with_shortcut += 1;
                }
            }
        }
        assert_eq!((acyclic, with_shortcut), (14, 8));
    }

    proptest::proptest! {
        #[test]
        fn shortcut_finder_matches_path_enumeration(
            n in 4usize..8,
            edge_bits in proptest::collection::vec(proptest::bool::ANY, 28),
            perm_seed in proptest::collection::vec(0u32..1000, 8),
        ) {
            // random graph, oriented along a random vertex order (always acyclic)
            let mut rank: Vec<usize> = (0..n).collect();
            rank.sort_by_key(|&v| (perm_seed[v], v));
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edge_bits[i] { edges.push((u, v)); }
                    i += 1;
                }
            }
            let g = Graph::from_edges(n, edges.clone()).unwrap();
            let pos = |v: usize| rank.iter().position(|&r| r == v).unwrap();
            let arcs = edges.iter().map(|&(u, v)| if pos(u) < pos(v) { (u, v) } else { (v, u) });
            let o = Orientation::from_arcs(&g, arcs).unwrap();
            proptest::prop_assert!(is_acyclic(&o).unwrap());
            let found = find_shortcut(&o).unwrap();
            proptest::prop_assert_eq!(found.is_some(), brute_force_has_shortcut(&o));
            if let Some(w) = found {
                proptest::prop_assert!(w.verify(&o));
            }
        }
    }

    #[test]
    fn colouring_orientation() {
        let k3 = Graph::complete(3).unwrap();
        let c = Colouring { colours: vec![1, 2, 3] };
        let o = orientation_from_colouring(&k3, &c).unwrap();
        assert_eq!(o.arcs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(is_semi_transitive(&o).unwrap());
        let c4 = cycle(4).unwrap();
        let o = orientation_from_colouring(
            &c4,
            &Colouring {
                colours: vec![1, 2, 1, 2],
            },
        )
        .unwrap();
        assert!(is_semi_transitive(&o).unwrap());
        let bad = Colouring { colours: vec![1, 1, 2] };
        assert_eq!(
            orientation_from_colouring(&k3, &bad),
            Err(OrientationError::BadColouring)
        );
        let k4 = Graph::complete(4).unwrap();
        let four = Colouring {
            colours: vec![1, 2, 3, 4],
        };
        assert_eq!(
            orientation_from_colouring(&k4, &four),
            Err(OrientationError::BadColouring)
        );
    }

    #[test]
    fn search_examples() {
        let b = SearchBudget::default();
        let k4 = Graph::complete(4).unwrap();
        let o = exists_semi_transitive(&k4, &b).unwrap().unwrap();
        assert!(is_semi_transitive(&o).unwrap());
        assert!(is_semi_transitive(&o.reversed()).unwrap());
        assert!(exists_semi_transitive(&wheel(5).unwrap(), &b).unwrap().is_none());
        assert!(!decide_word_representable(&wheel(5).unwrap(), &b).unwrap());
        assert!(decide_word_representable(&cycle(4).unwrap(), &b).unwrap());
        // W4 is 3-colourable; W6 = even wheel is representable too
        assert!(exists_semi_transitive(&wheel(6).unwrap(), &b).unwrap().is_some());
    }

    #[test]
    fn search_budgets() {
        let tiny = SearchBudget {
            max_nodes: 1,
            ..SearchBudget::default()
        };
        assert!(matches!(
            exists_semi_transitive(&wheel(7).unwrap(), &tiny),
            Err(OrientationError::BudgetExceeded(_))
        ));
        let narrow = SearchBudget::with_max_edges(5);
        assert!(matches!(
            exists_semi_transitive(&wheel(5).unwrap(), &narrow),
            Err(OrientationError::OverBudget { vertices: 6, edges: 10 })
        ));
    }

    #[test]
    fn orientation_json() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let o = Orientation::from_arcs(&g, [(0, 1), (2, 1)]).unwrap();
        let j = OrientationJson::from(&o);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"edges":[[0,1,"uv"],[1,2,"vu"]]}"#
        );
        assert_eq!(j.into_orientation(&g).unwrap(), o);
    }
}
