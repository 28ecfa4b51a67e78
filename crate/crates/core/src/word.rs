//! Words over a vertex alphabet, the alternation relation, and a bounded
//! brute-force search for uniform representing words.

use std::fmt;

use thiserror::Error;

use crate::bits;
use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} outside alphabet of size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },
    #[error("letter {0} does not occur in the word")]
    MissingLetter(usize),
    #[error("alternation needs two distinct letters, got {0} twice")]
    SameLetter(usize),
    #[error("word alphabet has {word} letters but the graph has {graph} vertices")]
    AlphabetMismatch { word: usize, graph: usize },
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("uniform word search over {n} letters x {k} copies is outside the budget")]
    OutsideBudget { n: usize, k: usize },
    #[error("uniform word search gave up after {0} nodes")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A finite sequence of letters drawn from `0..alphabet`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
    alphabet: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, alphabet: usize) -> Result<Self, WordError> {
        if let Some(&letter) = letters.iter().find(|&&l| l >= alphabet) {
            return Err(WordError::LetterOutOfRange { letter, alphabet });
        }
        Ok(Word { letters, alphabet })
    }

    /// Parses the 1-based CLI syntax: either single digits run together
    /// (`"14213243"`) or comma-separated labels (`"1,4,2,1"`). The alphabet
    /// is the largest label seen; letters come back 0-based.
    pub fn parse_one_based(s: &str) -> Result<Self, WordError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(WordError::Parse("empty word".into()));
        }
        let labels: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| WordError::Parse(format!("bad label {t:?}")))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| WordError::Parse(format!("bad letter {c:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        if labels.contains(&0) {
            return Err(WordError::Parse("labels are 1-based".into()));
        }
        let alphabet = labels.iter().copied().max().unwrap_or(0);
        Word::new(labels.into_iter().map(|l| l - 1).collect(), alphabet)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn occurrences(&self, x: usize) -> usize {
        self.letters.iter().filter(|&&l| l == x).count()
    }

    /// `ww`.
    pub fn doubled(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&self.letters);
        Word {
            letters,
            alphabet: self.alphabet,
        }
    }

    /// 1-based rendering in the same syntax [`Word::parse_one_based`] reads.
    pub fn to_one_based(&self) -> String {
        if self.alphabet <= 9 {
            self.letters.iter().map(|l| (l + 1).to_string()).collect()
        } else {
            self.letters
                .iter()
                .map(|l| (l + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Whether `x` and `y` alternate: deleting every other letter leaves
    /// `xyxy..` or `yxyx..`.
    pub fn alternates(&self, x: usize, y: usize) -> Result<bool, WordError> {
        if x == y {
            return Err(WordError::SameLetter(x));
        }
        for l in [x, y] {
            if l >= self.alphabet {
                return Err(WordError::LetterOutOfRange {
                    letter: l,
                    alphabet: self.alphabet,
                });
            }
            if self.occurrences(l) == 0 {
                return Err(WordError::MissingLetter(l));
            }
        }
        let mut last = None;
        for &l in self.letters.iter().filter(|&&l| l == x || l == y) {
            if last == Some(l) {
                return Ok(false);
            }
            last = Some(l);
        }
        Ok(true)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}/{})", self.letters, self.alphabet)
    }
}

/// The graph whose edges are exactly the alternating pairs of `w`.
pub fn graph_of_word(w: &Word) -> Result<Graph, WordError> {
    let n = w.alphabet();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let mut seen = 0;
    for &l in w.letters() {
        seen |= bits::bit(l);
    }
    if let Some(missing) = (0..n).find(|&v| seen & bits::bit(v) == 0) {
        return Err(WordError::MissingLetter(missing));
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if w.alternates(x, y)? {
                edges.push((x, y));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Exact equality of the alternation graph of `w` with `g` (labels matter).
pub fn represents(w: &Word, g: &Graph) -> Result<bool, WordError> {
    if w.alphabet() != g.n() {
        return Err(WordError::AlphabetMismatch {
            word: w.alphabet(),
            graph: g.n(),
        });
    }
    Ok(graph_of_word(w)? == *g)
}

/// Limits for [`search_uniform_word`].
#[derive(Debug, Clone, Copy)]
pub struct WordBudget {
    pub max_letters: usize,
    pub max_copies: usize,
    pub max_nodes: u64,
}

impl Default for WordBudget {
    fn default() -> Self {
        WordBudget {
            max_letters: 6,
            max_copies: 3,
            max_nodes: 200_000_000,
        }
    }
}

/// Exhaustive search for a `k`-uniform word representing `g`.
///
/// `Ok(None)` means the whole space was exhausted; running out of nodes is
/// reported as [`WordError::BudgetExceeded`] instead. The first letter is
/// pinned to vertex 0: a cyclic shift of a uniform representant represents
/// the same graph, so this loses no solutions.
pub fn search_uniform_word(g: &Graph, k: usize, budget: &WordBudget) -> Result<Option<Word>, WordError> {
    let n = g.n();
    if k == 0 || n > budget.max_letters || k > budget.max_copies {
        return Err(WordError::OutsideBudget { n, k });
    }
    if n == 0 {
        return Ok(Some(Word::new(Vec::new(), 0)?));
    }
    let mut s = UniformSearch {
        g,
        k,
        counts: vec![0; n],
        last_pos: vec![-1; n],
        broken: vec![0; n],
        word: Vec::with_capacity(n * k),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let found = s.place(Some(0))?;
    Ok(if found { Some(Word::new(s.word, n)?) } else { None })
}

struct UniformSearch<'a> {
    g: &'a Graph,
    k: usize,
    counts: Vec<usize>,
    last_pos: Vec<i64>,
    // broken[x] bit y: the x/y subsequence already has a repeat
    broken: Vec<u32>,
    word: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl UniformSearch<'_> {
    fn place(&mut self, forced: Option<usize>) -> Result<bool, WordError> {
        let n = self.g.n();
        if self.word.len() == n * self.k {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(WordError::BudgetExceeded(self.nodes));
        }
        let choices: Vec<usize> = match forced {
            Some(x) => vec![x],
            None => (0..n).collect(),
        };
        for x in choices {
            if self.counts[x] == self.k || !self.can_place(x) {
                continue;
            }
            let saved_broken = self.broken.clone();
            let saved_last = self.last_pos[x];
            for y in 0..n {
                if y != x && !self.g.has_edge(x, y) && self.last_pos[x] > self.last_pos[y] {
                    self.broken[x] |= bits::bit(y);
                    self.broken[y] |= bits::bit(x);
                }
            }
            self.last_pos[x] = self.word.len() as i64;
            self.counts[x] += 1;
            self.word.push(x);
            if self.completion_ok(x) && self.place(None)? {
                return Ok(true);
            }
            self.word.pop();
            self.counts[x] -= 1;
            self.last_pos[x] = saved_last;
            self.broken = saved_broken;
        }
        Ok(false)
    }

    /// Edges must alternate: the previous letter among `{x, y}` may not be `x`.
    fn can_place(&self, x: usize) -> bool {
        bits::iter(self.g.neighbours(x)).all(|y| self.last_pos[y] >= self.last_pos[x])
    }

    /// Once `x` has all its copies, every non-neighbour it still alternates
    /// with needs at least two more copies to break the pattern.
    fn completion_ok(&self, x: usize) -> bool {
        if self.counts[x] < self.k {
            return true;
        }
        let n = self.g.n();
        (0..n).all(|y| {
            y == x || self.g.has_edge(x, y) || self.broken[x] & bits::bit(y) != 0 || self.k - self.counts[y] >= 2
        })
    }
}
