//! The twelve minimal non-3-colourable triangulation graphs (T1, T2,
//! A1..A8, B1, B2) and their closure under grid symmetries.

use std::sync::OnceLock;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bits;
use crate::board::{transform, EmbeddedGraph, Symmetry};
use crate::graph::{are_isomorphic, contains_induced, induced, is_k_colourable, GraphError};

const FIXTURES: &str = include_str!("../fixtures/catalog.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog fixture is not valid JSON: {0}")]
    Json(String),
    #[error("pattern {name}: edge-list checksum mismatch")]
    Checksum { name: String },
    #[error("pattern {name}: expected {want} vertices, found {got}")]
    VertexCount { name: String, want: usize, got: usize },
    #[error("pattern {name} is 3-colourable")]
    Colourable { name: String },
    #[error("expected 12 patterns, found {0}")]
    Count(usize),
    #[error("pattern {name}: {source}")]
    Graph { name: String, source: GraphError },
}

/// One catalogued pattern with its drawn layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    pub name: String,
    pub embedded: EmbeddedGraph,
    pub has_domino: bool,
    pub provenance: String,
}

#[derive(Deserialize)]
struct FixtureEntry {
    name: String,
    provenance: String,
    has_domino: bool,
    coords: Vec<[usize; 2]>,
    edges: Vec<[usize; 2]>,
    sha256: String,
}

/// Checksum input: `"n|u-v;u-v;..."` over the sorted edge list.
pub fn edge_checksum(n: usize, edges: &[(usize, usize)]) -> String {
    let body: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let digest = Sha256::digest(format!("{n}|{}", body.join(";")).as_bytes());
    hex::encode(digest)
}

/// Parses and validates a catalog document.
pub fn load_catalog(json: &str) -> Result<Vec<PatternGraph>, CatalogError> {
    let entries: Vec<FixtureEntry> = serde_json::from_str(json).map_err(|e| CatalogError::Json(e.to_string()))?;
    if entries.len() != 12 {
        return Err(CatalogError::Count(entries.len()));
    }
    entries.into_iter().map(validate_entry).collect()
}

fn validate_entry(e: FixtureEntry) -> Result<PatternGraph, CatalogError> {
    let name = e.name;
    let mut edges: Vec<(usize, usize)> = e.edges.iter().map(|&[u, v]| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    if edge_checksum(e.coords.len(), &edges) != e.sha256 {
        return Err(CatalogError::Checksum { name });
    }
    let want = if name.starts_with('A') { 11 } else { 9 };
    if e.coords.len() != want {
        return Err(CatalogError::VertexCount {
            name,
            want,
            got: e.coords.len(),
        });
    }
    let coords: Vec<(usize, usize)> = e.coords.iter().map(|&[r, c]| (r, c)).collect();
    let coord_edges: Vec<_> = edges.iter().map(|&(u, v)| (coords[u], coords[v])).collect();
    let embedded =
        EmbeddedGraph::from_coordinate_edges(&coords, &coord_edges).map_err(|source| CatalogError::Graph {
            name: name.clone(),
            source,
        })?;
    if is_k_colourable(&embedded.graph, 3).is_some() {
        return Err(CatalogError::Colourable { name });
    }
    Ok(PatternGraph {
        name,
        embedded,
        has_domino: e.has_domino,
        provenance: e.provenance,
    })
}

/// The twelve catalogued patterns, validated once per process.
pub fn minimal_graphs() -> Result<&'static [PatternGraph], CatalogError> {
    static CATALOG: OnceLock<Result<Vec<PatternGraph>, CatalogError>> = OnceLock::new();
    CATALOG
        .get_or_init(|| load_catalog(FIXTURES))
        .as_ref()
        .map(Vec::as_slice)
        .map_err(Clone::clone)
}

pub fn pattern(name: &str) -> Option<&'static PatternGraph> {
    minimal_graphs().ok()?.iter().find(|p| p.name == name)
}

/// Which symmetries generate the forbidden set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosurePolicy {
    /// Quarter turns of the domino-free patterns, half turns of the others.
    Literal,
    /// Adds mirror images: the full square group for domino-free patterns,
    /// both axis mirrors for the domino patterns (dominoes stay horizontal).
    Extended,
}

impl ClosurePolicy {
    pub fn group(self, has_domino: bool) -> &'static [Symmetry] {
        use Symmetry::*;
        match (self, has_domino) {
            (ClosurePolicy::Literal, false) => &[Identity, Rot90, Rot180, Rot270],
            (ClosurePolicy::Literal, true) => &[Identity, Rot180],
            (ClosurePolicy::Extended, false) => &Symmetry::ALL,
            (ClosurePolicy::Extended, true) => &[Identity, Rot180, MirrorH, MirrorV],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosurePolicy::Literal => "literal",
            ClosurePolicy::Extended => "extended",
        }
    }
}

impl std::str::FromStr for ClosurePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(ClosurePolicy::Literal),
            "extended" => Ok(ClosurePolicy::Extended),
            other => Err(format!("unknown policy {other:?} (literal|extended)")),
        }
    }
}

/// A drawn image of a catalogued pattern under one symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternImage {
    /// `A3` for the drawing itself, `A3/Rot180` etc. for images.
    pub name: String,
    pub source: String,
    pub symmetry: Symmetry,
    pub embedded: EmbeddedGraph,
}

/// The forbidden set: all distinct drawn images under the policy's group,
/// and the isomorphism classes they fall into.
#[derive(Debug, Clone)]
pub struct ForbiddenSet {
    pub policy: ClosurePolicy,
    pub images: Vec<PatternImage>,
    /// One representative image per isomorphism class, in first-seen order.
    pub members: Vec<PatternImage>,
}

pub fn forbidden_set(policy: ClosurePolicy) -> Result<ForbiddenSet, CatalogError> {
    let mut images: Vec<PatternImage> = Vec::new();
    for p in minimal_graphs()? {
        for &s in policy.group(p.has_domino) {
            let embedded = transform(&p.embedded, s);
            if images.iter().any(|i| i.embedded == embedded) {
                continue;
            }
            let name = if s == Symmetry::Identity {
                p.name.clone()
            } else {
                format!("{}/{s:?}", p.name)
            };
            images.push(PatternImage {
                name,
                source: p.name.clone(),
                symmetry: s,
                embedded,
            });
        }
    }
    let mut members: Vec<PatternImage> = Vec::new();
    for img in &images {
        if !members
            .iter()
            .any(|m| are_isomorphic(&m.embedded.graph, &img.embedded.graph))
        {
            members.push(img.clone());
        }
    }
    Ok(ForbiddenSet {
        policy,
        images,
        members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchRoute {
    /// translated copy of a drawn image, aligned with the host grid
    Embedded,
    /// abstract induced-subgraph search
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenHit {
    pub pattern: String,
    /// host vertex per pattern vertex
    pub mapping: Vec<usize>,
    pub route: MatchRoute,
}

/// Slides every image over the host grid and accepts the first exact
/// induced copy, confirmed by the general matcher on the same vertices.
pub fn find_forbidden_embedded(host: &EmbeddedGraph, set: &ForbiddenSet) -> Result<Option<ForbiddenHit>, GraphError> {
    let (hr, hc) = host.extent();
    for img in &set.images {
        let (ir, ic) = img.embedded.extent();
        if ir > hr || ic > hc {
            continue;
        }
        for dr in 0..=hr - ir {
            for dc in 0..=hc - ic {
                if let Some(mapping) = translated_match(host, &img.embedded, dr, dc) {
                    let sub = induced(&host.graph, &mapping)?;
                    if contains_induced(&sub, &img.embedded.graph)?.is_some() {
                        return Ok(Some(ForbiddenHit {
                            pattern: img.name.clone(),
                            mapping,
                            route: MatchRoute::Embedded,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn translated_match(host: &EmbeddedGraph, pat: &EmbeddedGraph, dr: usize, dc: usize) -> Option<Vec<usize>> {
    let mapping: Vec<usize> = pat
        .coords
        .iter()
        .map(|&(r, c)| host.vertex_at((r + dr, c + dc)))
        .collect::<Option<_>>()?;
    let image: u32 = mapping.iter().fold(0, |acc, &h| acc | bits::bit(h));
    for (p, &h) in mapping.iter().enumerate() {
        let want: u32 = bits::iter(pat.graph.neighbours(p)).fold(0, |acc, q| acc | bits::bit(mapping[q]));
        if host.graph.neighbours(h) & image != want {
            return None;
        }
    }
    Some(mapping)
}

/// Abstract induced containment of any isomorphism class of the set.
pub fn find_forbidden_general(host: &EmbeddedGraph, set: &ForbiddenSet) -> Result<Option<ForbiddenHit>, GraphError> {
    for m in &set.members {
        if let Some(mapping) = contains_induced(&host.graph, &m.embedded.graph)? {
            return Ok(Some(ForbiddenHit {
                pattern: m.name.clone(),
                mapping,
                route: MatchRoute::General,
            }));
        }
    }
    Ok(None)
}

/// Grid-aligned matcher first, general matcher as fallback.
pub fn find_forbidden(host: &EmbeddedGraph, set: &ForbiddenSet) -> Result<Option<ForbiddenHit>, GraphError> {
    if let Some(hit) = find_forbidden_embedded(host, set)? {
        return Ok(Some(hit));
    }
    find_forbidden_general(host, set)
}
