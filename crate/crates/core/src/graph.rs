//! Small simple graphs with bit-set adjacency, plus the colouring and
//! induced-subgraph kernels everything else is built on.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, VertexSet};

/// Largest vertex count a [`Graph`] can hold; one adjacency row fits a `u32`.
pub const MAX_VERTICES: usize = 24;

/// Largest pattern accepted by [`contains_induced`].
pub const MAX_PATTERN_VERTICES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("cycles and wheels need at least 3 rim vertices, got {0}")]
    RimTooShort(usize),
    #[error("pattern has {0} vertices, at most {MAX_PATTERN_VERTICES} are supported")]
    PatternTooLarge(usize),
}

/// A labelled simple undirected graph on `0..n`.
///
/// Immutable once built. Adjacency rows are kept symmetric by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u] |= bits::bit(v);
            g.adj[v] |= bits::bit(u);
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub(crate) fn from_edge_set<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= bits::bit(v);
            g.adj[v] |= bits::bit(u);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = bits::full(n);
        for v in 0..n {
            g.adj[v] = all & !bits::bit(v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bits::bit(v) != 0
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits::iter(self.adj[u] & !bits::full(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn all_vertices(&self) -> VertexSet {
        bits::full(self.n)
    }

    /// An isomorphism-invariant fingerprint from a few rounds of colour
    /// refinement. Equal graphs up to isomorphism always hash equal.
    pub fn invariant_hash(&self) -> u64 {
        let mut colours: Vec<u64> = (0..self.n).map(|v| self.degree(v) as u64).collect();
        for _ in 0..3 {
            let next: Vec<u64> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<u64> = bits::iter(self.adj[v]).map(|w| colours[w]).collect();
                    nb.sort_unstable();
                    let mut h = DefaultHasher::new();
                    colours[v].hash(&mut h);
                    nb.hash(&mut h);
                    h.finish()
                })
                .collect();
            colours = next;
        }
        colours.sort_unstable();
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        self.edge_count().hash(&mut h);
        colours.hash(&mut h);
        h.finish()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Graph JSON interchange: `{"n": 4, "edges": [[0,1], ...]}`, 0-based,
/// `u < v`, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        Graph::from_edges(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// A vertex colouring with colours `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub colours: Vec<u8>,
}

impl Colouring {
    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.colours.len() == g.n()
            && self.colours.iter().all(|&c| c >= 1)
            && g.edges().iter().all(|&(u, v)| self.colours[u] != self.colours[v])
    }

    pub fn max_colour(&self) -> u8 {
        self.colours.iter().copied().max().unwrap_or(0)
    }
}

/// Finds a proper colouring with at most `k` colours, or `None`.
///
/// Vertices are coloured in index order, lowest colour first, and a vertex
/// may open at most one new colour beyond those already in use, which pins
/// vertex 0 to colour 1. The witness is therefore deterministic.
pub fn is_k_colourable(g: &Graph, k: usize) -> Option<Colouring> {
    let n = g.n();
    if n == 0 {
        return Some(Colouring { colours: Vec::new() });
    }
    if k == 0 {
        return None;
    }
    let k = k.min(n);
    // class[c] = vertices already given colour c+1
    let mut class = vec![0 as VertexSet; k];
    let mut colours = vec![0u8; n];
    if colour_from(g, 0, 0, k, &mut class, &mut colours) {
        Some(Colouring { colours })
    } else {
        None
    }
}

fn colour_from(g: &Graph, v: usize, used: usize, k: usize, class: &mut [VertexSet], colours: &mut [u8]) -> bool {
    if v == g.n() {
        return true;
    }
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if class[c] & g.neighbours(v) != 0 {
            continue;
        }
        class[c] |= bits::bit(v);
        colours[v] = (c + 1) as u8;
        if colour_from(g, v + 1, used.max(c + 1), k, class, colours) {
            return true;
        }
        class[c] &= !bits::bit(v);
    }
    colours[v] = 0;
    false
}

pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| is_k_colourable(g, k).is_some()).unwrap_or(g.n())
}

/// The subgraph induced by `keep`, relabelled `0..keep.len()` in the order
/// the vertices are listed.
pub fn induced(g: &Graph, keep: &[usize]) -> Result<Graph, GraphError> {
    for &v in keep {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let mut edges = Vec::new();
    for (i, &u) in keep.iter().enumerate() {
        for (j, &v) in keep.iter().enumerate().skip(i + 1) {
            if u == v {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            if g.has_edge(u, v) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(keep.len(), edges)
}

pub fn cycle(m: usize) -> Result<Graph, GraphError> {
    if m < 3 {
        return Err(GraphError::RimTooShort(m));
    }
    Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// Cycle on `0..m` plus hub `m` joined to every rim vertex.
pub fn wheel(m: usize) -> Result<Graph, GraphError> {
    if m < 3 {
        return Err(GraphError::RimTooShort(m));
    }
    Graph::from_edges(m + 1, (0..m).map(|i| (i, (i + 1) % m)).chain((0..m).map(|i| (i, m))))
}

/// Searches for an injective map `m` from pattern vertices into `host` such
/// that adjacency and non-adjacency are both preserved. The returned vector
/// is indexed by pattern vertex.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    if pattern.n() > MAX_PATTERN_VERTICES {
        return Err(GraphError::PatternTooLarge(pattern.n()));
    }
    Ok(InducedMatcher::new(host, pattern, false).find())
}

/// Isomorphism test. Accepts any graph size the [`Graph`] type allows.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    isomorphism(a, b).is_some()
}

/// A bijection `a -> b` preserving edges, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    InducedMatcher::new(b, a, true).find()
}

/// Backtracking induced-subgraph matcher over bit-sets.
struct InducedMatcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    compat: Vec<VertexSet>,
}

impl<'a> InducedMatcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, exact_degrees: bool) -> Self {
        let compat = (0..pattern.n())
            .map(|p| {
                let mut pd = neighbour_degrees(pattern, p);
                pd.sort_unstable_by(|x, y| y.cmp(x));
                let mut set = 0;
                for h in 0..host.n() {
                    let ok_deg = if exact_degrees {
                        host.degree(h) == pattern.degree(p)
                    } else {
                        host.degree(h) >= pattern.degree(p)
                    };
                    if !ok_deg {
                        continue;
                    }
                    let mut hd = neighbour_degrees(host, h);
                    hd.sort_unstable_by(|x, y| y.cmp(x));
                    if pd.iter().zip(&hd).all(|(a, b)| b >= a) {
                        set |= bits::bit(h);
                    }
                }
                set
            })
            .collect();
        InducedMatcher {
            host,
            pattern,
            order: match_order(pattern),
            compat,
        }
    }

    fn find(&self) -> Option<Vec<usize>> {
        if self.pattern.n() > self.host.n() {
            return None;
        }
        let mut map = vec![usize::MAX; self.pattern.n()];
        if self.extend(0, 0, &mut map) {
            Some(map)
        } else {
            None
        }
    }

    fn extend(&self, depth: usize, used: VertexSet, map: &mut [usize]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = self.compat[p] & !used & self.host.all_vertices();
        for &q in &self.order[..depth] {
            let hq = self.host.neighbours(map[q]);
            if self.pattern.has_edge(p, q) {
                cand &= hq;
            } else {
                cand &= !hq;
            }
            if cand == 0 {
                return false;
            }
        }
        for h in bits::iter(cand) {
            map[p] = h;
            if self.extend(depth + 1, used | bits::bit(h), map) {
                return true;
            }
        }
        map[p] = usize::MAX;
        false
    }
}

fn neighbour_degrees(g: &Graph, v: usize) -> Vec<usize> {
    bits::iter(g.neighbours(v)).map(|w| g.degree(w)).collect()
}

/// Greedy connectivity-first order: next vertex has the most already-placed
/// neighbours, ties by higher degree, then lower index.
fn match_order(g: &Graph) -> Vec<usize> {
    let mut placed: VertexSet = 0;
    let mut order = Vec::with_capacity(g.n());
    while order.len() < g.n() {
        let next = (0..g.n())
            .filter(|&v| placed & bits::bit(v) == 0)
            .max_by(|&a, &b| {
                let ka = (g.neighbours(a) & placed).count_ones();
                let kb = (g.neighbours(b) & placed).count_ones();
                ka.cmp(&kb).then(g.degree(a).cmp(&g.degree(b))).then(b.cmp(&a))
            })
            .expect("unplaced vertex remains");
        placed |= bits::bit(next);
        order.push(next);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        cycle(4).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert_eq!(Graph::empty(25), Err(GraphError::TooManyVertices(25)));
    }

    #[test]
    fn triangle_three_colours() {
        let k3 = Graph::complete(3).unwrap();
        let c = is_k_colourable(&k3, 3).unwrap();
        assert_eq!(c.colours, vec![1, 2, 3]);
        assert!(c.is_proper_for(&k3));
        assert!(is_k_colourable(&k3, 2).is_none());
    }

    #[test]
    fn wheel_five_needs_four() {
        let w5 = wheel(5).unwrap();
        assert!(is_k_colourable(&w5, 3).is_none());
        assert!(is_k_colourable(&w5, 4).unwrap().is_proper_for(&w5));
        assert_eq!(chromatic_number(&w5), 4);
        assert_eq!(chromatic_number(&c4()), 2);
    }

    #[test]
    fn cycle_and_wheel_shapes() {
        assert_eq!(c4().edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let w5 = wheel(5).unwrap();
        assert_eq!((w5.n(), w5.edge_count()), (6, 10));
        assert_eq!(w5.degree(5), 5);
        assert_eq!(wheel(3).unwrap(), Graph::complete(4).unwrap());
        assert_eq!(cycle(2), Err(GraphError::RimTooShort(2)));
        assert_eq!(wheel(1), Err(GraphError::RimTooShort(1)));
    }

    #[test]
    fn induced_relabels() {
        let g = c4();
        assert_eq!(induced(&g, &[0, 1, 2, 3]).unwrap(), g);
        let e = induced(&g, &[0, 1]).unwrap();
        assert_eq!(e.edges(), vec![(0, 1)]);
        assert_eq!(induced(&g, &[0, 2]).unwrap().edge_count(), 0);
        assert!(induced(&g, &[0, 7]).is_err());
    }

    #[test]
    fn induced_matcher_respects_non_edges() {
        // K3 is a (non-induced) subgraph of K4 minus nothing, but a path P3
        // is not an induced subgraph of K4: its non-edge would land on an edge.
        let k4 = Graph::complete(4).unwrap();
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(contains_induced(&k4, &p3).unwrap().is_none());
        assert!(contains_induced(&c4(), &Graph::complete(3).unwrap()).unwrap().is_none());
        let m = contains_induced(&c4(), &p3).unwrap().unwrap();
        assert_eq!(induced(&c4(), &m).unwrap(), p3);
    }

    #[test]
    fn pattern_size_guard() {
        let big = cycle(13).unwrap();
        assert_eq!(contains_induced(&big, &big), Err(GraphError::PatternTooLarge(13)));
    }

    #[test]
    fn isomorphism_basics() {
        let relabelled = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(are_isomorphic(&c4(), &relabelled));
        assert!(!are_isomorphic(&wheel(5).unwrap(), &cycle(6).unwrap()));
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!are_isomorphic(&p4, &star));
        assert_eq!(c4().invariant_hash(), relabelled.invariant_hash());
    }

    #[test]
    fn json_round_trip() {
        let g = wheel(4).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"n":5,"edges":[[0,1],[0,3],[0,4],[1,2],[1,4],[2,3],[2,4],[3,4]]}"#
        );
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }
}
