//! Exhaustive desk-scale checks: every triangulation of every small board
//! is classified as 3-colourable or not, word-representable or not, and
//! searched for a forbidden induced subgraph; the three verdicts must agree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::board::{
    domino_placements, enumerate_triangulations, flip_domino_pattern, transform_board, triangulate, Axis, Board,
    BoardError, EmbeddedGraph, Symmetry, Triangulation,
};
use crate::catalog::{self, find_forbidden, CatalogError, ClosurePolicy, ForbiddenSet, MatchRoute};
use crate::graph::{are_isomorphic, contains_induced, induced, is_k_colourable, wheel, Graph, GraphError};
use crate::semitrans::{
    decide_with_certificate, exists_semi_transitive, is_semi_transitive, orientation_from_colouring, Certificate,
    OrientationError, OrientationJson, SearchBudget,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Orientation(#[from] OrientationError),
    #[error("board has {0} dominoes; theorem checks take at most one")]
    NotTheoremMode(usize),
    #[error("flip check needs exactly one domino, board has {0}")]
    NeedsOneDomino(usize),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

/// Word-representability outcome; `Budget` means the search gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateRecord {
    Colouring { colours: Vec<u8> },
    Orientation(OrientationJson),
}

/// Verdicts for one triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub board: String,
    pub triangulation: String,
    pub three_colourable: bool,
    pub word_representable: Verdict,
    pub forbidden_hit: Option<String>,
    pub hit_route: Option<MatchRoute>,
    pub certificate: Option<CertificateRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// 3-colourability and word-representability disagree
    Equivalence,
    /// non-3-colourability and forbidden-subgraph containment disagree
    Lemma,
    /// flipping the domino pattern changed 3-colourability
    Flip,
    /// a positive verdict came without a valid certificate
    Certificate,
    /// verdicts differ between a board and its rotated image
    Rotation,
    /// a catalogued claim about a pattern failed
    Catalog,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub board: String,
    pub subject: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

/// Aggregate of a verification run. `elapsed` is kept out of the JSON so
/// reports stay byte-identical across runs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub boards: usize,
    pub triangulations: usize,
    pub three_colourable: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub budget_exceeded: usize,
    /// non-3-colourable hosts whose forbidden hit came from the grid-aligned matcher
    pub embedded_hits: usize,
    /// non-3-colourable hosts that only the general matcher resolved
    pub general_only_hits: usize,
    /// Lemma disagreements under the literal policy (reported, not failed)
    pub literal_lemma_discrepancies: usize,
    pub flip_pairs: usize,
    pub exploratory: bool,
    pub per_board: Vec<BoardCount>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoardCount {
    pub board: String,
    pub rows: usize,
    pub cols: usize,
    pub triangulations: usize,
}

impl SweepReport {
    pub fn violation_counts(&self) -> BTreeMap<ViolationKind, usize> {
        let mut out = BTreeMap::new();
        for v in &self.violations {
            *out.entry(v.kind).or_insert(0) += 1;
        }
        out
    }

    /// Triangulations examined on boards of exactly this size.
    pub fn triangulations_on(&self, rows: usize, cols: usize) -> usize {
        self.per_board
            .iter()
            .filter(|b| (b.rows, b.cols) == (rows, cols))
            .map(|b| b.triangulations)
            .sum()
    }

    pub fn outcome(&self) -> Outcome {
        if !self.violations.is_empty() {
            Outcome::Fail
        } else if self.budget_exceeded > 0 {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }

    pub fn merge(&mut self, other: SweepReport) {
        self.boards += other.boards;
        self.triangulations += other.triangulations;
        self.three_colourable += other.three_colourable;
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.budget_exceeded += other.budget_exceeded;
        self.embedded_hits += other.embedded_hits;
        self.general_only_hits += other.general_only_hits;
        self.literal_lemma_discrepancies += other.literal_lemma_discrepancies;
        self.flip_pairs += other.flip_pairs;
        self.exploratory |= other.exploratory;
        self.per_board.extend(other.per_board);
        self.elapsed += other.elapsed;
    }
}

/// Representability verdicts of non-3-colourable graphs, shared across
/// workers and keyed by isomorphism class.
#[derive(Default)]
pub struct VerdictCache {
    buckets: Mutex<HashMap<u64, Vec<(Graph, bool)>>>,
}

impl VerdictCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, g: &Graph, key: u64) -> Option<bool> {
        let buckets = self.buckets.lock().expect("cache lock");
        buckets
            .get(&key)?
            .iter()
            .find(|(h, _)| are_isomorphic(g, h))
            .map(|&(_, v)| v)
    }

    fn insert(&self, g: &Graph, key: u64, verdict: bool) {
        let mut buckets = self.buckets.lock().expect("cache lock");
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|(h, _)| are_isomorphic(g, h)) {
            bucket.push((g.clone(), verdict));
        }
    }

    /// Number of isomorphism classes stored.
    pub fn len(&self) -> usize {
        self.buckets.lock().expect("cache lock").values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shared context for classification runs.
pub struct Classifier {
    pub set: ForbiddenSet,
    pub budget: SearchBudget,
    pub cache: VerdictCache,
}

impl Classifier {
    pub fn new(policy: ClosurePolicy, budget: SearchBudget) -> Result<Self, VerifyError> {
        Ok(Classifier {
            set: catalog::forbidden_set(policy)?,
            budget,
            cache: VerdictCache::new(),
        })
    }

    /// All three verdicts for one embedded graph.
    pub fn classify(&self, board: &str, literal: &str, e: &EmbeddedGraph) -> Result<Classification, VerifyError> {
        let g = &e.graph;
        let colouring = is_k_colourable(g, 3);
        let three_colourable = colouring.is_some();
        let (word_representable, certificate) = match colouring {
            Some(c) => {
                let o = orientation_from_colouring(g, &c)?;
                if is_semi_transitive(&o)? {
                    (Verdict::Yes, Some(CertificateRecord::Colouring { colours: c.colours }))
                } else {
                    (Verdict::Yes, None)
                }
            }
            None => self.search_verdict(g)?,
        };
        let hit = find_forbidden(e, &self.set)?;
        Ok(Classification {
            board: board.to_string(),
            triangulation: literal.to_string(),
            three_colourable,
            word_representable,
            forbidden_hit: hit.as_ref().map(|h| h.pattern.clone()),
            hit_route: hit.map(|h| h.route),
            certificate,
        })
    }

    fn search_verdict(&self, g: &Graph) -> Result<(Verdict, Option<CertificateRecord>), VerifyError> {
        let key = g.invariant_hash();
        if self.cache.get(g, key) == Some(false) {
            return Ok((Verdict::No, None));
        }
        match exists_semi_transitive(g, &self.budget) {
            Ok(Some(o)) => {
                self.cache.insert(g, key, true);
                let cert = is_semi_transitive(&o)?.then(|| CertificateRecord::Orientation(OrientationJson::from(&o)));
                Ok((Verdict::Yes, cert))
            }
            Ok(None) => {
                self.cache.insert(g, key, false);
                Ok((Verdict::No, None))
            }
            Err(OrientationError::BudgetExceeded(_) | OrientationError::OverBudget { .. }) => {
                Ok((Verdict::Budget, None))
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// Classification with the default budget and no shared cache.
pub fn classify(e: &EmbeddedGraph, set: &ForbiddenSet) -> Result<Classification, VerifyError> {
    let c = Classifier {
        set: set.clone(),
        budget: SearchBudget::default(),
        cache: VerdictCache::new(),
    };
    c.classify("", "", e)
}

/// Classifications of one board plus their aggregate.
#[derive(Debug, Clone)]
pub struct BoardRun {
    pub board: Board,
    pub classifications: Vec<Classification>,
    pub report: SweepReport,
}

fn classify_board(b: &Board, classifier: &Classifier) -> Result<Vec<Classification>, VerifyError> {
    let label = b.to_string();
    let all: Vec<Triangulation> = enumerate_triangulations(b)?.collect();
    all.par_iter()
        .map(|t| {
            let e = triangulate(b, t)?;
            classifier.classify(&label, &t.literal(), &e)
        })
        .collect()
}

fn tally(b: &Board, classes: &[Classification], policy: ClosurePolicy) -> SweepReport {
    let label = b.to_string();
    let mut r = SweepReport {
        boards: 1,
        triangulations: classes.len(),
        exploratory: b.is_exploratory(),
        per_board: vec![BoardCount {
            board: label.clone(),
            rows: b.rows(),
            cols: b.cols(),
            triangulations: classes.len(),
        }],
        ..SweepReport::default()
    };
    for c in classes {
        let violation = |kind, detail: String| Violation {
            kind,
            board: label.clone(),
            subject: c.triangulation.clone(),
            detail,
        };
        r.checks += 2;
        if c.three_colourable {
            r.three_colourable += 1;
        }
        match c.word_representable {
            Verdict::Budget => r.budget_exceeded += 1,
            wr => {
                if c.three_colourable != (wr == Verdict::Yes) {
                    r.violations.push(violation(
                        ViolationKind::Equivalence,
                        format!("3-colourable={} word-representable={wr:?}", c.three_colourable),
                    ));
                }
                if wr == Verdict::Yes && c.certificate.is_none() {
                    r.violations
                        .push(violation(ViolationKind::Certificate, "missing certificate".into()));
                }
            }
        }
        if c.three_colourable == c.forbidden_hit.is_some() {
            let detail = format!("3-colourable={} hit={:?}", c.three_colourable, c.forbidden_hit);
            match policy {
                ClosurePolicy::Extended => r.violations.push(violation(ViolationKind::Lemma, detail)),
                ClosurePolicy::Literal => r.literal_lemma_discrepancies += 1,
            }
        }
        if !c.three_colourable {
            match c.hit_route {
                Some(MatchRoute::Embedded) => r.embedded_hits += 1,
                Some(MatchRoute::General) => r.general_only_hits += 1,
                None => {}
            }
        }
    }
    r
}

/// 3-colourability must survive flipping the single domino's pattern.
/// `classes` is in enumeration order, so the flip partner is found by index.
fn flip_check(b: &Board, classes: &[Classification]) -> Result<SweepReport, VerifyError> {
    let mut r = SweepReport::default();
    let all: Vec<Triangulation> = enumerate_triangulations(b)?.collect();
    let index: HashMap<String, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.triangulation.clone(), i))
        .collect();
    for (i, t) in all.iter().enumerate() {
        let flipped = flip_domino_pattern(t, 0)?;
        let j = index[&flipped.literal()];
        r.flip_pairs += 1;
        r.checks += 1;
        if classes[i].three_colourable != classes[j].three_colourable {
            r.violations.push(Violation {
                kind: ViolationKind::Flip,
                board: b.to_string(),
                subject: format!("{} vs {}", t.literal(), flipped.literal()),
                detail: format!(
                    "3-colourable {} vs {}",
                    classes[i].three_colourable, classes[j].three_colourable
                ),
            });
        }
    }
    Ok(r)
}

/// Checks the equivalence and the forbidden-subgraph characterisation on
/// every triangulation of a theorem-mode board (at most one domino). Single
/// domino boards also get the flip check.
pub fn verify_theorem(b: &Board, classifier: &Classifier) -> Result<BoardRun, VerifyError> {
    if b.dominoes().len() > 1 {
        return Err(VerifyError::NotTheoremMode(b.dominoes().len()));
    }
    run_board(b, classifier)
}

/// Same checks on a board with any number of dominoes. The report is
/// flagged exploratory and carries no theorem claim.
pub fn explore_board(b: &Board, classifier: &Classifier) -> Result<BoardRun, VerifyError> {
    let mut run = run_board(b, classifier)?;
    run.report.exploratory = true;
    Ok(run)
}

fn run_board(b: &Board, classifier: &Classifier) -> Result<BoardRun, VerifyError> {
    let start = Instant::now();
    let classifications = classify_board(b, classifier)?;
    let mut report = tally(b, &classifications, classifier.set.policy);
    if b.dominoes().len() == 1 {
        report.merge(flip_check(b, &classifications)?);
    }
    report.elapsed = start.elapsed();
    Ok(BoardRun {
        board: b.clone(),
        classifications,
        report,
    })
}

/// 3-colourability is invariant under flipping the domino's pattern.
pub fn verify_domino_flip(b: &Board) -> Result<SweepReport, VerifyError> {
    if b.dominoes().len() != 1 {
        return Err(VerifyError::NeedsOneDomino(b.dominoes().len()));
    }
    let start = Instant::now();
    let mut r = SweepReport {
        boards: 1,
        ..SweepReport::default()
    };
    for t in enumerate_triangulations(b)? {
        let flipped = flip_domino_pattern(&t, 0)?;
        let a = is_k_colourable(&triangulate(b, &t)?.graph, 3).is_some();
        let z = is_k_colourable(&triangulate(b, &flipped)?.graph, 3).is_some();
        r.triangulations += 1;
        r.flip_pairs += 1;
        r.checks += 1;
        if a != z {
            r.violations.push(Violation {
                kind: ViolationKind::Flip,
                board: b.to_string(),
                subject: format!("{} vs {}", t.literal(), flipped.literal()),
                detail: format!("3-colourable {a} vs {z}"),
            });
        }
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Wheel each catalogued pattern must contain as an induced subgraph.
pub fn expected_wheel(name: &str) -> Option<usize> {
    match name {
        "A1" => Some(9),
        "A2" | "A3" | "A6" | "A7" => Some(7),
        "A4" | "A5" | "A8" | "B1" | "B2" => Some(5),
        _ => None,
    }
}

/// Every catalogued claim: the twelve patterns are not 3-colourable and not
/// word-representable, contain their odd wheels (A1 minus its middle-row
/// left vertex is exactly W9), and W5, W7, W9 are not word-representable.
pub fn verify_catalog(budget: &SearchBudget) -> Result<SweepReport, VerifyError> {
    let start = Instant::now();
    let mut r = SweepReport::default();
    let mut check = |ok: bool, subject: &str, claim: &str| {
        r.checks += 1;
        if !ok {
            r.violations.push(Violation {
                kind: ViolationKind::Catalog,
                board: String::new(),
                subject: subject.to_string(),
                detail: claim.to_string(),
            });
        }
    };
    let mut budget_exceeded = 0;
    let mut decide = |g: &Graph| -> Result<Option<bool>, VerifyError> {
        match decide_with_certificate(g, budget) {
            Ok(c) => Ok(Some(c.is_some())),
            Err(OrientationError::BudgetExceeded(_) | OrientationError::OverBudget { .. }) => {
                budget_exceeded += 1;
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    };
    let patterns = catalog::minimal_graphs()?;
    for p in patterns {
        let g = &p.embedded.graph;
        check(is_k_colourable(g, 3).is_none(), &p.name, "not 3-colourable");
        let wr = decide(g)?;
        check(wr != Some(true), &p.name, "not word-representable");
        if let Some(m) = expected_wheel(&p.name) {
            let w = wheel(m)?;
            check(
                contains_induced(g, &w)?.is_some(),
                &p.name,
                &format!("contains induced W{m}"),
            );
        }
        if p.name == "A1" {
            let gone = p.embedded.vertex_at((1, 0));
            let keep: Vec<usize> = (0..g.n()).filter(|&v| Some(v) != gone).collect();
            let rest = induced(g, &keep)?;
            check(
                are_isomorphic(&rest, &wheel(9)?),
                "A1",
                "deleting the left middle-row vertex leaves W9",
            );
        }
    }
    for m in [5, 7, 9] {
        let w = wheel(m)?;
        let wr = decide(&w)?;
        check(wr != Some(true), &format!("W{m}"), "not word-representable");
    }
    r.triangulations = patterns.len() + 3;
    r.budget_exceeded = budget_exceeded;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Which domino layouts a sweep covers on each board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DominoMode {
    /// plain board
    None,
    /// every single horizontal domino placement
    SingleHorizontal,
}

impl DominoMode {
    pub fn from_count(k: usize) -> Option<Self> {
        match k {
            0 => Some(DominoMode::None),
            1 => Some(DominoMode::SingleHorizontal),
            _ => None,
        }
    }
}

/// Boards a sweep visits, in order: sizes `1x1 ..= max` row-major, plain
/// board first, then horizontal placements row-major.
pub fn sweep_boards(max_rows: usize, max_cols: usize, modes: &[DominoMode]) -> Result<Vec<Board>, VerifyError> {
    let mut out = Vec::new();
    for r in 1..=max_rows {
        for c in 1..=max_cols {
            if modes.contains(&DominoMode::None) {
                out.push(Board::plain(r, c)?);
            }
            if modes.contains(&DominoMode::SingleHorizontal) {
                for d in domino_placements(r, c, Axis::H) {
                    out.push(Board::new(r, c, vec![d])?);
                }
            }
        }
    }
    Ok(out)
}

pub struct SweepRun {
    pub runs: Vec<BoardRun>,
    pub report: SweepReport,
}

/// [`verify_theorem`] over every board up to `max_rows x max_cols` cells.
/// Vertical dominoes are covered by rotation (see
/// [`verify_rotation_guard`]).
pub fn sweep(
    max_rows: usize,
    max_cols: usize,
    modes: &[DominoMode],
    classifier: &Classifier,
) -> Result<SweepRun, VerifyError> {
    let start = Instant::now();
    let mut report = SweepReport::default();
    let mut runs = Vec::new();
    for b in sweep_boards(max_rows, max_cols, modes)? {
        let run = verify_theorem(&b, classifier)?;
        report.merge(run.report.clone());
        runs.push(run);
    }
    report.elapsed = start.elapsed();
    Ok(SweepRun { runs, report })
}

/// Runs `f` on a pool with `jobs` workers (0 = rayon's default).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, VerifyError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Classifies every triangulation of `b` directly and through its image
/// under `s`; the verdict pairs must match, and both runs must pass.
pub fn verify_rotation_guard(b: &Board, s: Symmetry, classifier: &Classifier) -> Result<SweepReport, VerifyError> {
    let start = Instant::now();
    let direct = verify_theorem(b, classifier)?;
    let first = enumerate_triangulations(b)?.next().expect("at least one triangulation");
    let (image_board, _) = transform_board(b, &first, s)?;
    let image = verify_theorem(&image_board, classifier)?;
    let by_literal: HashMap<&str, &Classification> = image
        .classifications
        .iter()
        .map(|c| (c.triangulation.as_str(), c))
        .collect();
    let mut r = direct.report.clone();
    r.merge(image.report.clone());
    for (t, c) in enumerate_triangulations(b)?.zip(&direct.classifications) {
        let (_, st) = transform_board(b, &t, s)?;
        let lit = st.literal();
        let other = by_literal[lit.as_str()];
        r.checks += 1;
        let same = c.three_colourable == other.three_colourable
            && c.word_representable == other.word_representable
            && c.forbidden_hit.is_some() == other.forbidden_hit.is_some();
        if !same {
            r.violations.push(Violation {
                kind: ViolationKind::Rotation,
                board: b.to_string(),
                subject: format!("{} -> {} on {}", t.literal(), lit, image_board),
                detail: format!("{c:?} vs {other:?}"),
            });
        }
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Pulls a [`Certificate`] into its report form.
pub fn certificate_record(c: &Certificate) -> CertificateRecord {
    match c {
        Certificate::Colouring(col, _) => CertificateRecord::Colouring {
            colours: col.colours.clone(),
        },
        Certificate::Search(o) => CertificateRecord::Orientation(OrientationJson::from(o)),
    }
}
