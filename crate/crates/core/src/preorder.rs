//! The domination preorder on vertices, its equivalence classes with the
//! abelian/free split, the class order, and downward closures.

use serde::{Deserialize, Serialize};

use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Whether an equivalence class spans a clique, an anticlique, or one vertex.
/// A singleton counts as both abelian and free; consumers that need the
/// two-way split should treat it as either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Abelian,
    Free,
    Singleton,
}

impl ClassKind {
    /// Abelian in the inclusive sense (clique or singleton).
    pub fn is_abelian(self) -> bool {
        matches!(self, ClassKind::Abelian | ClassKind::Singleton)
    }

    /// Free in the inclusive sense (anticlique or singleton).
    pub fn is_free(self) -> bool {
        matches!(self, ClassKind::Free | ClassKind::Singleton)
    }
}

/// One equivalence class of the domination preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub members: VertexSet,
    pub kind: ClassKind,
    pub size: usize,
}

/// All equivalence classes of a graph, the strict partial order induced on
/// them by domination, and a vertex enumeration refining that order.
#[derive(Debug, Clone)]
pub struct ClassOrder {
    pub classes: Vec<EquivClass>,
    /// `below[i][j]` iff class `i` is strictly below class `j`.
    pub below: Vec<Vec<bool>>,
    /// Total order on vertices: members of one class are consecutive, and
    /// every member of a lower class precedes every member of a higher class.
    pub enumeration: Vec<VertexId>,
    class_of: Vec<usize>,
}

impl ClassOrder {
    pub fn class_index_of(&self, v: VertexId) -> usize {
        self.class_of[v.idx()]
    }

    pub fn class_of(&self, v: VertexId) -> &EquivClass {
        &self.classes[self.class_of[v.idx()]]
    }

    /// Class sizes in enumeration order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut i = 0;
        while i < self.enumeration.len() {
            let c = self.class_of[self.enumeration[i].idx()];
            let size = self.classes[c].size;
            sizes.push(size);
            i += size;
        }
        sizes
    }
}

/// `u <= v` iff lk(u) is contained in st(v). Reflexive by construction.
pub fn dominates(g: &Graph, u: VertexId, v: VertexId) -> bool {
    g.link(u).is_subset(&g.star(v))
}

pub fn dominates_by_name(g: &Graph, u: &str, v: &str) -> Result<bool> {
    Ok(dominates(g, g.vertex(u)?, g.vertex(v)?))
}

/// `u ~ v` iff each dominates the other.
pub fn equivalent(g: &Graph, u: VertexId, v: VertexId) -> bool {
    dominates(g, u, v) && dominates(g, v, u)
}

/// Compute the equivalence classes, their kinds, the strict order between
/// classes, and the enumeration. Topological ties are broken by the least
/// declaration index among class members, so the result is deterministic.
pub fn equivalence_classes(g: &Graph) -> ClassOrder {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<EquivClass> = Vec::new();
    for v in g.vertices() {
        if class_of[v.idx()] != usize::MAX {
            continue;
        }
        let mut members = VertexSet::singleton(v);
        for u in g.vertices() {
            if u != v && equivalent(g, u, v) {
                members.insert(u);
            }
        }
        let idx = classes.len();
        for u in members.iter() {
            class_of[u.idx()] = idx;
        }
        let size = members.len();
        let kind = if size == 1 {
            ClassKind::Singleton
        } else {
            let pairs_adjacent = {
                let mut all = true;
                let mut none = true;
                let mv: Vec<VertexId> = members.iter().collect();
                for i in 0..mv.len() {
                    for j in i + 1..mv.len() {
                        if g.adjacent(mv[i], mv[j]) {
                            none = false;
                        } else {
                            all = false;
                        }
                    }
                }
                (all, none)
            };
            match pairs_adjacent {
                (true, _) => ClassKind::Abelian,
                (_, true) => ClassKind::Free,
                // ruled out: a class containing an adjacent pair is a clique
                _ => unreachable!("equivalence class is neither clique nor anticlique"),
            }
        };
        classes.push(EquivClass {
            members,
            kind,
            size,
        });
    }

    let k = classes.len();
    let mut below = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let u = classes[i].members.min().unwrap();
            let v = classes[j].members.min().unwrap();
            below[i][j] = dominates(g, u, v);
        }
    }

    // Kahn topological sort, lower classes first, ties by least member.
    let mut placed = vec![false; k];
    let mut enumeration = Vec::with_capacity(n);
    for _ in 0..k {
        let mut best: Option<usize> = None;
        for c in 0..k {
            if placed[c] {
                continue;
            }
            let ready = (0..k).all(|d| placed[d] || d == c || !below[d][c]);
            if !ready {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => classes[c].members.min() < classes[b].members.min(),
            };
            if better {
                best = Some(c);
            }
        }
        let c = best.expect("class order has a cycle");
        placed[c] = true;
        enumeration.extend(classes[c].members.iter());
    }

    ClassOrder {
        classes,
        below,
        enumeration,
        class_of,
    }
}

/// The downward closure of `s`: all vertices dominated by some member of `s`.
pub fn gamma_leq(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::EMPTY;
    for u in g.vertices() {
        if s.iter().any(|v| dominates(g, u, v)) {
            out.insert(u);
        }
    }
    out
}

/// Checks that `s` equals its own downward closure.
pub fn is_downward_closed(g: &Graph, s: &VertexSet) -> bool {
    gamma_leq(g, s) == *s
}

pub fn ensure_downward_closed(g: &Graph, s: &VertexSet) -> Result<()> {
    if is_downward_closed(g, s) {
        Ok(())
    } else {
        Err(RaagError::NotDownwardClosed)
    }
}
