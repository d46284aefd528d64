//! Exact arithmetic in the group defined by a graph: reduced words, trace
//! normal forms, the word problem, and cyclic reduction.
//!
//! The canonical form of a word is the lexicographically least representative
//! of the commutation class of its fully reduced form, extracted greedily:
//! repeatedly emit the least letter among those movable to the front. Letters
//! compare by vertex declaration index first, positive sign before negative.

use std::fmt;
use std::sync::Arc;

use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId};

/// One signed generator occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub vertex: VertexId,
    /// `false` for the generator, `true` for its inverse. Ordering places the
    /// positive letter first.
    pub inverse: bool,
}

impl Letter {
    pub fn pos(vertex: VertexId) -> Letter {
        Letter {
            vertex,
            inverse: false,
        }
    }

    pub fn neg(vertex: VertexId) -> Letter {
        Letter {
            vertex,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Letter {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }
}

/// A word in the generators of the ambient graph's group. Not necessarily in
/// normal form; `normal_form` returns the canonical representative.
#[derive(Debug, Clone)]
pub struct Word {
    graph: Arc<Graph>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(graph: Arc<Graph>, letters: Vec<Letter>) -> Result<Word> {
        for l in &letters {
            if l.vertex.idx() >= graph.n() {
                return Err(RaagError::UnknownVertex(format!("#{}", l.vertex.0)));
            }
        }
        Ok(Word { graph, letters })
    }

    pub fn empty(graph: Arc<Graph>) -> Word {
        Word {
            graph,
            letters: Vec::new(),
        }
    }

    pub fn generator(graph: Arc<Graph>, v: VertexId) -> Word {
        Word {
            graph,
            letters: vec![Letter::pos(v)],
        }
    }

    /// Parse whitespace-separated letters, `a` or `a^-1`.
    pub fn parse(graph: &Arc<Graph>, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (tok, false),
            };
            let vertex = graph.vertex(name)?;
            letters.push(Letter { vertex, inverse });
        }
        Ok(Word {
            graph: graph.clone(),
            letters,
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            graph: self.graph.clone(),
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same_graph(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            graph: self.graph.clone(),
            letters,
        })
    }

    pub fn conjugate_of(&self, core: &Word) -> Result<Word> {
        self.concat(core)?.concat(&self.inverse())
    }

    pub fn pow(&self, e: i32) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word {
            graph: self.graph.clone(),
            letters,
        }
    }

    fn check_same_graph(&self, other: &Word) -> Result<()> {
        if Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph {
            Ok(())
        } else {
            Err(RaagError::GraphMismatch)
        }
    }

    /// Canonical form: fully reduced, lexicographically least in its
    /// commutation class. Two words are equal in the group iff their normal
    /// forms are identical letter sequences.
    pub fn normal_form(&self) -> Word {
        let reduced = pile(&self.graph, &self.letters);
        let canon = lex_least(&self.graph, reduced);
        Word {
            graph: self.graph.clone(),
            letters: canon,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.normal_form().is_empty()
    }

    /// Exponent sum per vertex, in declaration order.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.graph.n()];
        for l in &self.letters {
            v[l.vertex.idx()] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Split off a maximal conjugator: returns `(core, conjugator)` with
    /// `self = conjugator * core * conjugator^-1` and the core admitting no
    /// further cyclic cancellation.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let mut core = self.normal_form().letters;
        let mut conj: Vec<Letter> = Vec::new();
        'strip: loop {
            let front = movable_to_front(&self.graph, &core);
            let back = movable_to_back(&self.graph, &core);
            for &i in &front {
                for &j in &back {
                    if i != j
                        && core[i].vertex == core[j].vertex
                        && core[i].inverse != core[j].inverse
                    {
                        conj.push(core[i]);
                        let (lo, hi) = (i.min(j), i.max(j));
                        core.remove(hi);
                        core.remove(lo);
                        continue 'strip;
                    }
                }
            }
            break;
        }
        let core = lex_least(&self.graph, core);
        (
            Word {
                graph: self.graph.clone(),
                letters: core,
            },
            Word {
                graph: self.graph.clone(),
                letters: conj,
            },
        )
    }
}

impl PartialEq for Word {
    /// Literal letter-sequence equality. Use [`words_equal`] for equality in
    /// the group.
    fn eq(&self, other: &Self) -> bool {
        *self.graph == *other.graph && self.letters == other.letters
    }
}

impl Eq for Word {}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.graph.name(l.vertex))?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// True iff the words represent the same group element.
pub fn words_equal(w1: &Word, w2: &Word) -> Result<bool> {
    w1.check_same_graph(w2)?;
    Ok(w1.normal_form().letters == w2.normal_form().letters)
}

/// Left-to-right piling: push each letter, cancelling against the nearest
/// same-vertex letter reachable through commuting letters. The output is
/// fully reduced.
fn pile(g: &Graph, letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    'next: for &l in letters {
        for k in (0..out.len()).rev() {
            let prev = out[k];
            if prev.vertex == l.vertex {
                if prev.inverse != l.inverse {
                    out.remove(k);
                    continue 'next;
                }
                break;
            }
            if !g.adjacent(prev.vertex, l.vertex) {
                break;
            }
        }
        out.push(l);
    }
    out
}

/// Greedy front extraction of the least available letter. Preserves the
/// group element and reducedness; yields the lexicographic minimum of the
/// commutation class.
fn lex_least(g: &Graph, mut letters: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    while !letters.is_empty() {
        let mut best: Option<usize> = None;
        'scan: for i in 0..letters.len() {
            for j in 0..i {
                if !g.adjacent(letters[j].vertex, letters[i].vertex) {
                    continue 'scan;
                }
            }
            match best {
                None => best = Some(i),
                Some(b) => {
                    if letters[i] < letters[b] {
                        best = Some(i);
                    }
                }
            }
        }
        let b = best.expect("the first letter is always available");
        out.push(letters.remove(b));
    }
    out
}

/// Indices of letters movable to the front (all earlier letters commute).
fn movable_to_front(g: &Graph, letters: &[Letter]) -> Vec<usize> {
    let mut out = Vec::new();
    'scan: for i in 0..letters.len() {
        for j in 0..i {
            if !g.adjacent(letters[j].vertex, letters[i].vertex) {
                continue 'scan;
            }
        }
        out.push(i);
    }
    out
}

/// Indices of letters movable to the back (all later letters commute).
fn movable_to_back(g: &Graph, letters: &[Letter]) -> Vec<usize> {
    let mut out = Vec::new();
    'scan: for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if !g.adjacent(letters[j].vertex, letters[i].vertex) {
                continue 'scan;
            }
        }
        out.push(i);
    }
    out
}
