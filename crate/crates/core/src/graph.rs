//! Finite simplicial graphs with named vertices, their local structure
//! (link, star, connected components), the text file format, and brute-force
//! symmetry enumeration.
//!
//! A graph is immutable once built. All canonical orders derive from vertex
//! declaration order, never from lexicographic order on names, so reports are
//! stable under renaming.

use std::collections::HashMap;
use std::fmt;

use crate::error::{RaagError, Result};

/// Index of a vertex in its graph's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A subset of the vertices of a graph, stored as a bitmask over declaration
/// indices. Iteration is always in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    bits: u64,
}

/// Graphs are capped at 64 vertices so a `VertexSet` fits in one word.
pub const MAX_VERTICES: usize = 64;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { bits: 0 };

    pub fn singleton(v: VertexId) -> VertexSet {
        VertexSet { bits: 1u64 << v.0 }
    }

    pub fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet { bits: u64::MAX }
        } else {
            VertexSet {
                bits: (1u64 << n) - 1,
            }
        }
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.bits >> v.0 & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.bits |= 1u64 << v.0;
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) {
        self.bits &= !(1u64 << v.0);
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits | other.bits,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits & other.bits,
        }
    }

    #[inline]
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits & !other.bits,
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Least member in declaration order, if any.
    pub fn min(&self) -> Option<VertexId> {
        if self.bits == 0 {
            None
        } else {
            Some(VertexId(self.bits.trailing_zeros()))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(VertexId(i))
            }
        })
    }
}

/// A finite simplicial graph: named vertices in a fixed declaration order and
/// an edge set without loops or multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<VertexSet>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Build a graph from vertex names (declaration order) and edges given as
    /// name pairs. Rejects duplicate names, loops, and unknown endpoints.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        if vertices.len() > MAX_VERTICES {
            return Err(RaagError::LimitExceeded(format!(
                "graphs with more than {MAX_VERTICES} vertices are unsupported"
            )));
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            let name = name.as_ref();
            validate_name(name)?;
            if index
                .insert(name.to_string(), VertexId(i as u32))
                .is_some()
            {
                return Err(RaagError::Parse {
                    line: 0,
                    msg: format!("duplicate vertex name `{name}`"),
                });
            }
            names.push(name.to_string());
        }
        let mut adj = vec![VertexSet::EMPTY; names.len()];
        let mut edge_list = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let &u = index
                .get(a)
                .ok_or_else(|| RaagError::UnknownVertex(a.to_string()))?;
            let &v = index
                .get(b)
                .ok_or_else(|| RaagError::UnknownVertex(b.to_string()))?;
            if u == v {
                return Err(RaagError::Parse {
                    line: 0,
                    msg: format!("loop edge at `{a}`"),
                });
            }
            if !adj[u.idx()].contains(v) {
                adj[u.idx()].insert(v);
                adj[v.idx()].insert(u);
                let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                edge_list.push((lo, hi));
            }
        }
        edge_list.sort();
        Ok(Graph {
            names,
            index,
            adj,
            edges: edge_list,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.idx()]
    }

    pub fn names_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.name(v).to_string()).collect()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| RaagError::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    #[inline]
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.idx()].contains(v)
    }

    /// Neighbors of `v`.
    #[inline]
    pub fn link(&self, v: VertexId) -> VertexSet {
        self.adj[v.idx()]
    }

    /// Link of `v` together with `v` itself.
    #[inline]
    pub fn star(&self, v: VertexId) -> VertexSet {
        let mut s = self.adj[v.idx()];
        s.insert(v);
        s
    }

    pub fn link_by_name(&self, name: &str) -> Result<VertexSet> {
        Ok(self.link(self.vertex(name)?))
    }

    pub fn star_by_name(&self, name: &str) -> Result<VertexSet> {
        Ok(self.star(self.vertex(name)?))
    }

    /// Connected components of the subgraph induced on `V \ removed`,
    /// ordered by least member.
    pub fn components_minus(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let alive = self.vertex_set().difference(removed);
        let mut seen = VertexSet::EMPTY;
        let mut comps = Vec::new();
        for v in alive.iter() {
            if seen.contains(v) {
                continue;
            }
            // breadth-first flood inside `alive`
            let mut comp = VertexSet::singleton(v);
            let mut frontier = vec![v];
            while let Some(u) = frontier.pop() {
                for w in self.link(u).intersection(&alive).iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        frontier.push(w);
                    }
                }
            }
            seen = seen.union(&comp);
            comps.push(comp);
        }
        comps.sort_by_key(|c| c.min());
        comps
    }

    /// Vertices outside `z` adjacent to some vertex of `z`.
    pub fn external_boundary(&self, z: &VertexSet) -> VertexSet {
        let mut b = VertexSet::EMPTY;
        for v in z.iter() {
            b = b.union(&self.link(v));
        }
        b.difference(z)
    }

    /// The induced subgraph on `set`. Vertex declaration order is inherited.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let names: Vec<String> = set.iter().map(|v| self.name(v).to_string()).collect();
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if set.contains(u) && set.contains(v) {
                edges.push((self.name(u).to_string(), self.name(v).to_string()));
            }
        }
        Graph::new(&names, &edges.iter().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>())
            .expect("induced subgraph of a valid graph is valid")
    }

    /// All adjacency-preserving vertex permutations, found by backtracking
    /// with degree pruning. `perm[i]` is the image index of vertex `i`.
    pub fn symmetries(&self, cap: usize) -> Result<Vec<Vec<VertexId>>> {
        let n = self.n();
        if n > cap {
            return Err(RaagError::LimitExceeded(format!(
                "symmetry enumeration capped at {cap} vertices (graph has {n})"
            )));
        }
        let degrees: Vec<usize> = (0..n).map(|i| self.adj[i].len()).collect();
        let mut out = Vec::new();
        let mut image = vec![VertexId(0); n];
        let mut used = vec![false; n];
        self.search_symmetries(0, &degrees, &mut image, &mut used, &mut out);
        Ok(out)
    }

    fn search_symmetries(
        &self,
        pos: usize,
        degrees: &[usize],
        image: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let n = self.n();
        if pos == n {
            out.push(image.clone());
            return;
        }
        let u = VertexId(pos as u32);
        'cand: for c in 0..n {
            if used[c] || degrees[c] != degrees[pos] {
                continue;
            }
            let cv = VertexId(c as u32);
            for p in 0..pos {
                let pv = VertexId(p as u32);
                if self.adjacent(u, pv) != self.adjacent(cv, image[p]) {
                    continue 'cand;
                }
            }
            image[pos] = cv;
            used[c] = true;
            self.search_symmetries(pos + 1, degrees, image, used, out);
            used[c] = false;
        }
    }

    /// Check that `perm` (image per declaration index) is an adjacency-
    /// preserving permutation of the vertex set.
    pub fn is_symmetry(&self, perm: &[VertexId]) -> bool {
        let n = self.n();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for p in perm {
            if p.idx() >= n || seen[p.idx()] {
                return false;
            }
            seen[p.idx()] = true;
        }
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(VertexId(u as u32), VertexId(v as u32))
                    != self.adjacent(perm[u], perm[v])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Parse the graph file format: a `vertices` line, then an `edges` line.
    /// `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut vertices: Option<(usize, Vec<String>)> = None;
        let mut edges: Option<(usize, Vec<(String, String)>)> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().unwrap();
            match keyword {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(RaagError::Parse {
                            line: lineno + 1,
                            msg: "repeated `vertices` line".into(),
                        });
                    }
                    vertices = Some((lineno + 1, tokens.map(str::to_string).collect()));
                }
                "edges" => {
                    if edges.is_some() {
                        return Err(RaagError::Parse {
                            line: lineno + 1,
                            msg: "repeated `edges` line".into(),
                        });
                    }
                    let mut list = Vec::new();
                    for tok in tokens {
                        let (a, b) = tok.split_once('-').ok_or_else(|| RaagError::Parse {
                            line: lineno + 1,
                            msg: format!("malformed edge `{tok}` (expected `a-b`)"),
                        })?;
                        list.push((a.to_string(), b.to_string()));
                    }
                    edges = Some((lineno + 1, list));
                }
                other => {
                    return Err(RaagError::Parse {
                        line: lineno + 1,
                        msg: format!("unexpected keyword `{other}`"),
                    });
                }
            }
        }
        let (vline, vnames) = vertices.ok_or_else(|| RaagError::Parse {
            line: 0,
            msg: "missing `vertices` line".into(),
        })?;
        let (eline, epairs) = edges.ok_or_else(|| RaagError::Parse {
            line: 0,
            msg: "missing `edges` line".into(),
        })?;
        Graph::new(&vnames, &epairs).map_err(|e| match e {
            RaagError::Parse { msg, .. } => RaagError::Parse { line: vline, msg },
            RaagError::UnknownVertex(v) => RaagError::Parse {
                line: eline,
                msg: format!("edge references undeclared vertex `{v}`"),
            },
            other => other,
        })
    }

    /// Serialize back to the file format: vertices in declaration order,
    /// edges sorted by (min index, max index).
    pub fn to_text(&self) -> String {
        let mut s = String::from("vertices");
        for name in &self.names {
            s.push(' ');
            s.push_str(name);
        }
        s.push_str("\nedges");
        for &(u, v) in &self.edges {
            s.push(' ');
            s.push_str(self.name(u));
            s.push('-');
            s.push_str(self.name(v));
        }
        s.push('\n');
        s
    }
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty()
        || name.contains('-')
        || name.contains('#')
        || name.contains(char::is_whitespace)
        || name.contains('^')
    {
        return Err(RaagError::Parse {
            line: 0,
            msg: format!("invalid vertex name `{name}`"),
        });
    }
    Ok(())
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{d3, k3, p3, p4, star};

    #[test]
    fn parse_p3() {
        let g = Graph::parse("vertices a b c\nedges a-b b-c").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().len(), 2);
        assert!(g.adjacent(g.vertex("a").unwrap(), g.vertex("b").unwrap()));
        assert!(!g.adjacent(g.vertex("a").unwrap(), g.vertex("c").unwrap()));
    }

    #[test]
    fn parse_discrete() {
        let g = Graph::parse("vertices x y z\nedges").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn parse_rejects_loop() {
        let err = Graph::parse("vertices u\nedges u-u").unwrap_err();
        assert!(matches!(err, RaagError::Parse { .. }));
    }

    #[test]
    fn parse_rejects_duplicate_vertex() {
        assert!(Graph::parse("vertices a a\nedges").is_err());
    }

    #[test]
    fn parse_rejects_undeclared_endpoint() {
        assert!(Graph::parse("vertices a b\nedges a-c").is_err());
    }

    #[test]
    fn parse_ignores_comments_and_blank_lines() {
        let g = Graph::parse("# a path\n\nvertices a b c # names\nedges a-b b-c\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn round_trip_is_identity() {
        for text in [
            "vertices a b c\nedges a-b b-c",
            "vertices x y z\nedges",
            "vertices p q r s\nedges p-q p-r p-s q-r",
        ] {
            let g = Graph::parse(text).unwrap();
            let again = Graph::parse(&g.to_text()).unwrap();
            assert_eq!(g, again);
            assert_eq!(g.to_text(), again.to_text());
        }
    }

    #[test]
    fn link_and_star() {
        let g = p3();
        let b = g.vertex("b").unwrap();
        assert_eq!(g.names_of(&g.link(b)), ["a", "c"]);
        assert_eq!(g.names_of(&g.star(b)), ["a", "b", "c"]);

        let d = d3();
        let x = d.vertex("x").unwrap();
        assert!(d.link(x).is_empty());
        assert_eq!(d.names_of(&d.star(x)), ["x"]);

        let k = k3();
        for v in k.vertices() {
            assert_eq!(k.link(v).len(), 2);
            assert_eq!(k.star(v).len(), 3);
        }
    }

    #[test]
    fn star_is_link_plus_vertex() {
        for g in [p3(), d3(), k3(), p4(), star()] {
            for v in g.vertices() {
                assert!(!g.link(v).contains(v));
                assert_eq!(g.star(v), g.link(v).union(&VertexSet::singleton(v)));
            }
        }
    }

    #[test]
    fn components_minus_p4_star_b() {
        let g = p4();
        let b = g.vertex("b").unwrap();
        let comps = g.components_minus(&g.star(b));
        assert_eq!(comps.len(), 1);
        assert_eq!(g.names_of(&comps[0]), ["d"]);
    }

    #[test]
    fn components_minus_discrete_and_complete() {
        let d = d3();
        assert_eq!(d.components_minus(&VertexSet::EMPTY).len(), 3);
        let k = k3();
        let v = VertexId(0);
        assert!(k.components_minus(&k.star(v)).is_empty());
    }

    #[test]
    fn components_partition_the_complement() {
        for g in [p3(), d3(), k3(), p4(), star()] {
            for v in g.vertices() {
                let removed = g.star(v);
                let comps = g.components_minus(&removed);
                let mut union = VertexSet::EMPTY;
                for c in &comps {
                    assert!(union.intersection(c).is_empty(), "cells overlap");
                    union = union.union(c);
                }
                assert_eq!(union, g.vertex_set().difference(&removed));
            }
        }
    }

    #[test]
    fn external_boundary_examples() {
        let s = star();
        let x = VertexSet::singleton(s.vertex("x").unwrap());
        assert_eq!(s.names_of(&s.external_boundary(&x)), ["c"]);

        let d = d3();
        let x = VertexSet::singleton(d.vertex("x").unwrap());
        assert!(d.external_boundary(&x).is_empty());

        let g = p4();
        let cd = VertexSet::from_iter([g.vertex("c").unwrap(), g.vertex("d").unwrap()]);
        assert_eq!(g.names_of(&g.external_boundary(&cd)), ["b"]);
    }

    #[test]
    fn external_boundary_properties() {
        for g in [p3(), d3(), k3(), p4(), star()] {
            for v in g.vertices() {
                let z = g.link(v);
                let b = g.external_boundary(&z);
                assert!(b.intersection(&z).is_empty());
                for u in b.iter() {
                    assert!(!g.link(u).intersection(&z).is_empty());
                }
            }
        }
    }

    #[test]
    fn symmetries_d3_p3_p4() {
        assert_eq!(d3().symmetries(10).unwrap().len(), 6);

        let g = p3();
        let syms = g.symmetries(10).unwrap();
        assert_eq!(syms.len(), 2);
        // identity and the a<->c swap
        assert!(syms.contains(&vec![VertexId(0), VertexId(1), VertexId(2)]));
        assert!(syms.contains(&vec![VertexId(2), VertexId(1), VertexId(0)]));

        let p = p4();
        let syms = p.symmetries(10).unwrap();
        assert_eq!(syms.len(), 2);
        assert!(syms.contains(&vec![VertexId(3), VertexId(2), VertexId(1), VertexId(0)]));
    }

    #[test]
    fn symmetries_form_a_group() {
        for g in [p3(), d3(), k3(), p4(), star()] {
            let syms = g.symmetries(10).unwrap();
            let id: Vec<VertexId> = g.vertices().collect();
            assert!(syms.contains(&id));
            for s in &syms {
                let inv = {
                    let mut inv = vec![VertexId(0); s.len()];
                    for (i, &img) in s.iter().enumerate() {
                        inv[img.idx()] = VertexId(i as u32);
                    }
                    inv
                };
                assert!(syms.contains(&inv));
                for t in &syms {
                    let comp: Vec<VertexId> = (0..s.len()).map(|i| t[s[i].idx()]).collect();
                    assert!(syms.contains(&comp));
                }
            }
        }
    }

    #[test]
    fn symmetry_cap_enforced() {
        let names: Vec<String> = (0..11).map(|i| format!("v{i}")).collect();
        let g = Graph::new(&names, &[]).unwrap();
        assert!(matches!(
            g.symmetries(10),
            Err(RaagError::LimitExceeded(_))
        ));
    }

    #[test]
    fn induced_subgraph_keeps_order_and_edges() {
        let g = p4();
        let set = VertexSet::from_iter([
            g.vertex("a").unwrap(),
            g.vertex("b").unwrap(),
            g.vertex("d").unwrap(),
        ]);
        let h = g.induced(&set);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().len(), 1);
        assert!(h.adjacent(h.vertex("a").unwrap(), h.vertex("b").unwrap()));
    }
}
