//! Rectangular polyominoes with domino tiles and their triangulations.
//!
//! Vertices are the cell corners, numbered row-major from the top-left with
//! rows growing downward. A horizontal domino at `(r, c)` covers cells
//! `(r, c)` and `(r, c + 1)`; a vertical one covers `(r, c)` and `(r + 1, c)`.
//! The grid edge between the two covered cells is dropped, so each domino
//! bounds a chordless 6-cycle.
//!
//! A triangulation picks one diagonal per uncovered cell and one of two
//! chord patterns per domino. Writing the horizontal hexagon's corners as
//! `TL TM TR` over `BL BM BR`:
//!
//! * `Fall` adds `TL-BM`, `TL-BR`, `TM-BR` (every chord slopes down-right);
//! * `Rise` adds `BL-TM`, `BL-TR`, `BM-TR` (every chord slopes up-right).
//!
//! Vertical dominoes use the quarter-turned images, again named by slope.
//! The mid-to-mid chord is never used: it would cut the domino back into
//! two unit cells.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Most choices (cells plus dominoes) [`enumerate_triangulations`] accepts.
pub const MAX_ENUMERATION_CHOICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("board needs at least one cell in each direction, got {rows}x{cols}")]
    Empty { rows: usize, cols: usize },
    #[error("domino {0} does not fit on the board")]
    OutOfBounds(usize),
    #[error("dominoes {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("{0} dominoes given; only one is allowed outside exploratory mode")]
    TooManyDominoes(usize),
    #[error("triangulation shape {got:?} does not match board shape {want:?}")]
    ShapeMismatch { got: (usize, usize), want: (usize, usize) },
    #[error("domino index {index} out of range ({count} dominoes)")]
    DominoIndex { index: usize, count: usize },
    #[error("{0} binary choices exceed the enumeration budget of {MAX_ENUMERATION_CHOICES}")]
    BudgetExceeded(usize),
    #[error("cannot parse board: {0}")]
    Parse(String),
    #[error("cannot parse triangulation: {0}")]
    Literal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    H,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Domino {
    pub row: usize,
    pub col: usize,
    pub axis: Axis,
}

impl Domino {
    pub fn new(row: usize, col: usize, axis: Axis) -> Self {
        Domino { row, col, axis }
    }

    pub fn cells(&self) -> [(usize, usize); 2] {
        match self.axis {
            Axis::H => [(self.row, self.col), (self.row, self.col + 1)],
            Axis::V => [(self.row, self.col), (self.row + 1, self.col)],
        }
    }
}

/// A `rows x cols` cell grid with domino placements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Board {
    rows: usize,
    cols: usize,
    dominoes: Vec<Domino>,
    exploratory: bool,
}

impl Board {
    /// Theorem-mode board: at most one domino.
    pub fn new(rows: usize, cols: usize, dominoes: Vec<Domino>) -> Result<Self, BoardError> {
        if dominoes.len() > 1 {
            return Err(BoardError::TooManyDominoes(dominoes.len()));
        }
        Board::build(rows, cols, dominoes, false)
    }

    /// Board allowing any number of non-overlapping dominoes. Results on such
    /// boards are exploratory only.
    pub fn exploratory(rows: usize, cols: usize, dominoes: Vec<Domino>) -> Result<Self, BoardError> {
        Board::build(rows, cols, dominoes, true)
    }

    pub fn plain(rows: usize, cols: usize) -> Result<Self, BoardError> {
        Board::new(rows, cols, Vec::new())
    }

    fn build(rows: usize, cols: usize, dominoes: Vec<Domino>, exploratory: bool) -> Result<Self, BoardError> {
        if rows == 0 || cols == 0 {
            return Err(BoardError::Empty { rows, cols });
        }
        for (i, d) in dominoes.iter().enumerate() {
            if d.cells().iter().any(|&(r, c)| r >= rows || c >= cols) {
                return Err(BoardError::OutOfBounds(i));
            }
            for (j, e) in dominoes.iter().enumerate().take(i) {
                if d.cells().iter().any(|c| e.cells().contains(c)) {
                    return Err(BoardError::Overlap(j, i));
                }
            }
        }
        Ok(Board {
            rows,
            cols,
            dominoes,
            exploratory,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    pub fn is_exploratory(&self) -> bool {
        self.exploratory
    }

    /// Cells not covered by a domino, row-major.
    pub fn unit_cells(&self) -> Vec<(usize, usize)> {
        let covered: Vec<(usize, usize)> = self.dominoes.iter().flat_map(|d| d.cells()).collect();
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|cell| !covered.contains(cell))
            .collect()
    }

    /// Number of binary choices in a triangulation.
    pub fn choice_count(&self) -> usize {
        self.unit_cells().len() + self.dominoes.len()
    }

    pub fn vertex_count(&self) -> usize {
        (self.rows + 1) * (self.cols + 1)
    }

    pub fn vertex(&self, row: usize, col: usize) -> usize {
        row * (self.cols + 1) + col
    }

    /// Parses `cells RxC; domino H r c; ...`. More than one domino needs
    /// `exploratory`.
    pub fn parse(spec: &str, exploratory: bool) -> Result<Self, BoardError> {
        let mut dims = None;
        let mut dominoes = Vec::new();
        for stmt in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let words: Vec<&str> = stmt.split_whitespace().collect();
            match words.as_slice() {
                ["cells", size] => {
                    let (r, c) = parse_dims(size).ok_or_else(|| BoardError::Parse(format!("bad size {size:?}")))?;
                    if dims.replace((r, c)).is_some() {
                        return Err(BoardError::Parse("cells given twice".into()));
                    }
                }
                ["domino", axis, r, c] => {
                    let axis = match *axis {
                        "H" | "h" => Axis::H,
                        "V" | "v" => Axis::V,
                        other => return Err(BoardError::Parse(format!("bad axis {other:?}"))),
                    };
                    let num = |t: &str| {
                        t.parse::<usize>()
                            .map_err(|_| BoardError::Parse(format!("bad index {t:?}")))
                    };
                    dominoes.push(Domino::new(num(r)?, num(c)?, axis));
                }
                _ => return Err(BoardError::Parse(format!("unknown statement {stmt:?}"))),
            }
        }
        let (rows, cols) = dims.ok_or_else(|| BoardError::Parse("missing `cells RxC`".into()))?;
        if exploratory {
            Board::exploratory(rows, cols, dominoes)
        } else {
            Board::new(rows, cols, dominoes)
        }
    }
}

/// `RxC` into `(R, C)`.
pub fn parse_dims(s: &str) -> Option<(usize, usize)> {
    let (r, c) = s.split_once(['x', 'X'])?;
    Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cells {}x{}", self.rows, self.cols)?;
        for d in &self.dominoes {
            let axis = match d.axis {
                Axis::H => "H",
                Axis::V => "V",
            };
            write!(f, "; domino {axis} {} {}", d.row, d.col)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Diagonal {
    /// bottom-left to top-right
    Slash,
    /// top-left to bottom-right
    Backslash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominoPattern {
    Fall,
    Rise,
}

impl DominoPattern {
    pub fn other(self) -> Self {
        match self {
            DominoPattern::Fall => DominoPattern::Rise,
            DominoPattern::Rise => DominoPattern::Fall,
        }
    }
}

/// Choice vector: cell diagonals (row-major over unit cells) followed by
/// domino patterns (declaration order). Choice 0 is the most significant
/// bit of `code`, so numeric order is lexicographic order; bit value 0 is
/// `Slash` / `Fall`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    units: u8,
    dominoes: u8,
    code: u32,
}

impl Triangulation {
    pub fn from_choices(diagonals: &[Diagonal], patterns: &[DominoPattern]) -> Self {
        let len = diagonals.len() + patterns.len();
        assert!(len <= 32, "at most 32 choices");
        let mut code = 0u32;
        let bits = diagonals
            .iter()
            .map(|d| *d == Diagonal::Backslash)
            .chain(patterns.iter().map(|p| *p == DominoPattern::Rise));
        for (i, b) in bits.enumerate() {
            if b {
                code |= 1 << (len - 1 - i);
            }
        }
        Triangulation {
            units: diagonals.len() as u8,
            dominoes: patterns.len() as u8,
            code,
        }
    }

    fn from_code(units: usize, dominoes: usize, code: u32) -> Self {
        Triangulation {
            units: units as u8,
            dominoes: dominoes as u8,
            code,
        }
    }

    fn len(&self) -> usize {
        self.units as usize + self.dominoes as usize
    }

    fn choice(&self, i: usize) -> bool {
        self.code >> (self.len() - 1 - i) & 1 == 1
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.units as usize, self.dominoes as usize)
    }

    pub fn diagonal(&self, cell: usize) -> Diagonal {
        assert!(cell < self.units as usize);
        if self.choice(cell) {
            Diagonal::Backslash
        } else {
            Diagonal::Slash
        }
    }

    pub fn pattern(&self, domino: usize) -> DominoPattern {
        assert!(domino < self.dominoes as usize);
        if self.choice(self.units as usize + domino) {
            DominoPattern::Rise
        } else {
            DominoPattern::Fall
        }
    }

    pub fn diagonals(&self) -> Vec<Diagonal> {
        (0..self.units as usize).map(|i| self.diagonal(i)).collect()
    }

    pub fn patterns(&self) -> Vec<DominoPattern> {
        (0..self.dominoes as usize).map(|i| self.pattern(i)).collect()
    }

    /// `/` or `\` per unit cell, then `F` or `R` per domino.
    pub fn literal(&self) -> String {
        let mut s = String::with_capacity(self.len());
        for d in self.diagonals() {
            s.push(match d {
                Diagonal::Slash => '/',
                Diagonal::Backslash => '\\',
            });
        }
        for p in self.patterns() {
            s.push(match p {
                DominoPattern::Fall => 'F',
                DominoPattern::Rise => 'R',
            });
        }
        s
    }

    /// Parses a literal against the board it is meant for.
    pub fn parse_for(board: &Board, literal: &str) -> Result<Self, BoardError> {
        let t = Triangulation::from_str(literal)?;
        check_shape(board, &t)?;
        Ok(t)
    }
}

impl FromStr for Triangulation {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut diagonals = Vec::new();
        let mut patterns = Vec::new();
        for ch in s.chars() {
            match ch {
                '/' | '\\' if !patterns.is_empty() => {
                    return Err(BoardError::Literal(
                        "cell diagonals must precede domino patterns".into(),
                    ))
                }
                '/' => diagonals.push(Diagonal::Slash),
                '\\' => diagonals.push(Diagonal::Backslash),
                'F' => patterns.push(DominoPattern::Fall),
                'R' => patterns.push(DominoPattern::Rise),
                other => return Err(BoardError::Literal(format!("unexpected {other:?}"))),
            }
        }
        if diagonals.len() + patterns.len() > 32 {
            return Err(BoardError::Literal("more than 32 choices".into()));
        }
        Ok(Triangulation::from_choices(&diagonals, &patterns))
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

fn check_shape(board: &Board, t: &Triangulation) -> Result<(), BoardError> {
    let want = (board.unit_cells().len(), board.dominoes().len());
    if t.shape() != want {
        return Err(BoardError::ShapeMismatch { got: t.shape(), want });
    }
    Ok(())
}

/// A graph with an integer `(row, col)` position per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddedGraph {
    pub graph: Graph,
    pub coords: Vec<(usize, usize)>,
}

/// Grid point `(row, col)`.
pub type Point = (usize, usize);

impl EmbeddedGraph {
    /// Builds from coordinates and an edge list given by coordinates;
    /// vertices are renumbered row-major.
    pub fn from_coordinate_edges(coords: &[(usize, usize)], edges: &[(Point, Point)]) -> Result<Self, GraphError> {
        let mut sorted = coords.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let index = |p: &(usize, usize)| sorted.binary_search(p).ok();
        let mut list = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            match (index(a), index(b)) {
                (Some(u), Some(v)) => list.push((u, v)),
                _ => {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: usize::MAX,
                        n: sorted.len(),
                    })
                }
            }
        }
        Ok(EmbeddedGraph {
            graph: Graph::from_edge_set(sorted.len(), list)?,
            coords: sorted,
        })
    }

    pub fn vertex_at(&self, pos: (usize, usize)) -> Option<usize> {
        self.coords.binary_search(&pos).ok()
    }

    /// Bounding box as `(rows, cols)` of vertex positions.
    pub fn extent(&self) -> (usize, usize) {
        let r = self.coords.iter().map(|p| p.0).max().map_or(0, |m| m + 1);
        let c = self.coords.iter().map(|p| p.1).max().map_or(0, |m| m + 1);
        (r, c)
    }

    /// Graphviz text with pinned positions (`neato -n` friendly). Node labels
    /// are 1-based.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n  node [shape=circle, width=0.3, fixedsize=true];\n");
        for (v, &(r, c)) in self.coords.iter().enumerate() {
            s.push_str(&format!(
                "  v{v} [label=\"{}\", pos=\"{},{}!\"];\n",
                v + 1,
                c,
                -(r as i64)
            ));
        }
        for (u, v) in self.graph.edges() {
            s.push_str(&format!("  v{u} -- v{v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The untriangulated board: unit grid edges minus each domino's interior
/// edge.
pub fn base_graph(b: &Board) -> Result<EmbeddedGraph, BoardError> {
    let (coords, edges) = base_edges(b);
    Ok(EmbeddedGraph::from_coordinate_edges(&coords, &edges)?)
}

type Pos = (usize, usize);

fn base_edges(b: &Board) -> (Vec<Pos>, Vec<(Pos, Pos)>) {
    let coords: Vec<Pos> = (0..=b.rows).flat_map(|r| (0..=b.cols).map(move |c| (r, c))).collect();
    let removed: Vec<(Pos, Pos)> = b
        .dominoes
        .iter()
        .map(|d| match d.axis {
            Axis::H => ((d.row, d.col + 1), (d.row + 1, d.col + 1)),
            Axis::V => ((d.row + 1, d.col), (d.row + 1, d.col + 1)),
        })
        .collect();
    let mut edges = Vec::new();
    for r in 0..=b.rows {
        for c in 0..=b.cols {
            if c < b.cols {
                edges.push(((r, c), (r, c + 1)));
            }
            if r < b.rows {
                edges.push(((r, c), (r + 1, c)));
            }
        }
    }
    edges.retain(|e| !removed.contains(e));
    (coords, edges)
}

fn domino_chords(d: &Domino, p: DominoPattern) -> [(Pos, Pos); 3] {
    let (r, c) = (d.row, d.col);
    match (d.axis, p) {
        // TL=(r,c) TM=(r,c+1) TR=(r,c+2) / BL=(r+1,c) BM=(r+1,c+1) BR=(r+1,c+2)
        (Axis::H, DominoPattern::Fall) => [
            ((r, c), (r + 1, c + 1)),
            ((r, c), (r + 1, c + 2)),
            ((r, c + 1), (r + 1, c + 2)),
        ],
        (Axis::H, DominoPattern::Rise) => [
            ((r + 1, c), (r, c + 1)),
            ((r + 1, c), (r, c + 2)),
            ((r + 1, c + 1), (r, c + 2)),
        ],
        // L0=(r,c) L1=(r+1,c) L2=(r+2,c) / R0=(r,c+1) R1=(r+1,c+1) R2=(r+2,c+1)
        (Axis::V, DominoPattern::Fall) => [
            ((r, c), (r + 1, c + 1)),
            ((r, c), (r + 2, c + 1)),
            ((r + 1, c), (r + 2, c + 1)),
        ],
        (Axis::V, DominoPattern::Rise) => [
            ((r + 2, c), (r + 1, c + 1)),
            ((r + 2, c), (r, c + 1)),
            ((r + 1, c), (r, c + 1)),
        ],
    }
}

/// Base graph plus one diagonal per unit cell and three chords per domino.
pub fn triangulate(b: &Board, t: &Triangulation) -> Result<EmbeddedGraph, BoardError> {
    check_shape(b, t)?;
    let (coords, mut edges) = base_edges(b);
    for (i, &(r, c)) in b.unit_cells().iter().enumerate() {
        edges.push(match t.diagonal(i) {
            Diagonal::Slash => ((r + 1, c), (r, c + 1)),
            Diagonal::Backslash => ((r, c), (r + 1, c + 1)),
        });
    }
    for (j, d) in b.dominoes.iter().enumerate() {
        edges.extend(domino_chords(d, t.pattern(j)));
    }
    Ok(EmbeddedGraph::from_coordinate_edges(&coords, &edges)?)
}

/// All `2^(cells + dominoes)` triangulations in lexicographic order.
pub fn enumerate_triangulations(b: &Board) -> Result<impl Iterator<Item = Triangulation>, BoardError> {
    let units = b.unit_cells().len();
    let dominoes = b.dominoes.len();
    let len = units + dominoes;
    if len > MAX_ENUMERATION_CHOICES {
        return Err(BoardError::BudgetExceeded(len));
    }
    Ok((0..1u32 << len).map(move |code| Triangulation::from_code(units, dominoes, code)))
}

/// Every in-bounds single-domino position with the given axis, row-major.
pub fn domino_placements(rows: usize, cols: usize, axis: Axis) -> Vec<Domino> {
    let (dr, dc) = match axis {
        Axis::H => (0, 1),
        Axis::V => (1, 0),
    };
    let mut out = Vec::new();
    for r in 0..rows.saturating_sub(dr) {
        for c in 0..cols.saturating_sub(dc) {
            out.push(Domino::new(r, c, axis));
        }
    }
    out
}

/// Switches one domino between its two patterns.
pub fn flip_domino_pattern(t: &Triangulation, which: usize) -> Result<Triangulation, BoardError> {
    if which >= t.dominoes as usize {
        return Err(BoardError::DominoIndex {
            index: which,
            count: t.dominoes as usize,
        });
    }
    let bit = t.len() - 1 - (t.units as usize + which);
    Ok(Triangulation {
        code: t.code ^ (1 << bit),
        ..*t
    })
}

/// The dihedral group of the square acting on grid positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    Identity,
    /// quarter turn clockwise as drawn (rows grow downward)
    Rot90,
    Rot180,
    Rot270,
    /// left-right mirror
    MirrorH,
    /// top-bottom mirror
    MirrorV,
    /// swap rows and columns
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::MirrorH,
        Symmetry::MirrorV,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    /// Linear part acting on `(row, col)`.
    fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Symmetry::Identity => [[1, 0], [0, 1]],
            Symmetry::Rot90 => [[0, 1], [-1, 0]],
            Symmetry::Rot180 => [[-1, 0], [0, -1]],
            Symmetry::Rot270 => [[0, -1], [1, 0]],
            Symmetry::MirrorH => [[1, 0], [0, -1]],
            Symmetry::MirrorV => [[-1, 0], [0, 1]],
            Symmetry::Transpose => [[0, 1], [1, 0]],
            Symmetry::AntiTranspose => [[0, -1], [-1, 0]],
        }
    }

    fn from_matrix(m: [[i64; 2]; 2]) -> Symmetry {
        *Symmetry::ALL
            .iter()
            .find(|s| s.matrix() == m)
            .expect("closed under composition")
    }

    /// `self` after `first`.
    pub fn compose(self, first: Symmetry) -> Symmetry {
        let a = self.matrix();
        let b = first.matrix();
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Symmetry::from_matrix(m)
    }

    pub fn inverse(self) -> Symmetry {
        *Symmetry::ALL
            .iter()
            .find(|s| s.compose(self) == Symmetry::Identity)
            .expect("group element has an inverse")
    }

    /// Whether the map exchanges the two diagonal directions (and hence the
    /// two domino patterns).
    pub fn swaps_diagonals(self) -> bool {
        matches!(
            self,
            Symmetry::Rot90 | Symmetry::Rot270 | Symmetry::MirrorH | Symmetry::MirrorV
        )
    }

    /// Whether horizontal dominoes stay horizontal.
    pub fn keeps_axes(self) -> bool {
        self.matrix()[0][1] == 0
    }

    fn apply(self, (r, c): (i64, i64)) -> (i64, i64) {
        let m = self.matrix();
        (m[0][0] * r + m[0][1] * c, m[1][0] * r + m[1][1] * c)
    }
}

/// Maps positions by `s`, shifts them back to non-negative, renumbers
/// vertices row-major.
pub fn transform(e: &EmbeddedGraph, s: Symmetry) -> EmbeddedGraph {
    let mapped: Vec<(i64, i64)> = e.coords.iter().map(|&(r, c)| s.apply((r as i64, c as i64))).collect();
    let min_r = mapped.iter().map(|p| p.0).min().unwrap_or(0);
    let min_c = mapped.iter().map(|p| p.1).min().unwrap_or(0);
    let coords: Vec<Pos> = mapped
        .iter()
        .map(|&(r, c)| ((r - min_r) as usize, (c - min_c) as usize))
        .collect();
    let edges: Vec<(Pos, Pos)> = e
        .graph
        .edges()
        .into_iter()
        .map(|(u, v)| (coords[u], coords[v]))
        .collect();
    EmbeddedGraph::from_coordinate_edges(&coords, &edges).expect("image of a valid embedded graph")
}

/// Image of a board and one of its triangulations under `s`. Domino
/// declaration order is kept.
pub fn transform_board(b: &Board, t: &Triangulation, s: Symmetry) -> Result<(Board, Triangulation), BoardError> {
    check_shape(b, t)?;
    let (vr, vc) = (b.rows as i64, b.cols as i64);
    let corners = [(0, 0), (0, vc), (vr, 0), (vr, vc)].map(|p| s.apply(p));
    let min_r = corners.iter().map(|p| p.0).min().unwrap();
    let min_c = corners.iter().map(|p| p.1).min().unwrap();
    let max_r = corners.iter().map(|p| p.0).max().unwrap();
    let max_c = corners.iter().map(|p| p.1).max().unwrap();
    let cell_image = |(r, c): Pos| -> Pos {
        let pts = [(r, c), (r + 1, c + 1)].map(|(a, b)| s.apply((a as i64, b as i64)));
        (
            (pts[0].0.min(pts[1].0) - min_r) as usize,
            (pts[0].1.min(pts[1].1) - min_c) as usize,
        )
    };
    let dominoes: Vec<Domino> = b
        .dominoes
        .iter()
        .map(|d| {
            let [a, z] = d.cells().map(cell_image);
            let (lo, hi) = (a.min(z), a.max(z));
            let axis = if lo.0 == hi.0 { Axis::H } else { Axis::V };
            Domino::new(lo.0, lo.1, axis)
        })
        .collect();
    let image = Board::build(
        (max_r - min_r) as usize,
        (max_c - min_c) as usize,
        dominoes,
        b.exploratory,
    )?;
    let swap = |d: Diagonal| match (d, s.swaps_diagonals()) {
        (d, false) => d,
        (Diagonal::Slash, true) => Diagonal::Backslash,
        (Diagonal::Backslash, true) => Diagonal::Slash,
    };
    let new_units = image.unit_cells();
    let mut diagonals = vec![Diagonal::Slash; new_units.len()];
    for (i, &cell) in b.unit_cells().iter().enumerate() {
        let j = new_units
            .iter()
            .position(|&x| x == cell_image(cell))
            .expect("unit cells map to unit cells");
        diagonals[j] = swap(t.diagonal(i));
    }
    let patterns: Vec<DominoPattern> = t
        .patterns()
        .into_iter()
        .map(|p| if s.swaps_diagonals() { p.other() } else { p })
        .collect();
    Ok((image, Triangulation::from_choices(&diagonals, &patterns)))
}
