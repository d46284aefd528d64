//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are produced by extending the canonical graphs on
//! `n-1` vertices with one new vertex joined to every possible subset, then
//! deduplicating by a brute-force canonical form (lexicographically least
//! upper-triangle adjacency bitstring over all vertex permutations).

use std::collections::HashSet;

use crate::error::{RaagError, Result};
use crate::graph::Graph;

/// Hard cap on the census size; 8 vertices would already need 12346 graphs
/// and a faster canonical form.
pub const CORPUS_CAP: usize = 7;

/// Upper-triangle adjacency bits of a labeled graph on `n` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Code {
    n: usize,
    bits: u32,
}

fn bit_index(n: usize, i: usize, j: usize) -> usize {
    // position of pair (i, j), i < j, in row-major upper-triangle order
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn encode(adj: &[[bool; CORPUS_CAP]; CORPUS_CAP], n: usize, perm: &[usize]) -> Code {
    let mut bits = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            if adj[perm[i]][perm[j]] {
                bits |= 1 << bit_index(n, i, j);
            }
        }
    }
    Code { n, bits }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn canonical(code: Code, perms: &[Vec<usize>]) -> Code {
    let n = code.n;
    let mut adj = [[false; CORPUS_CAP]; CORPUS_CAP];
    for i in 0..n {
        for j in i + 1..n {
            if code.bits >> bit_index(n, i, j) & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    perms
        .iter()
        .map(|p| encode(&adj, n, p))
        .min()
        .expect("at least the identity permutation")
}

fn code_to_graph(code: Code) -> Graph {
    let names: Vec<String> = (1..=code.n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..code.n {
        for j in i + 1..code.n {
            if code.bits >> bit_index(code.n, i, j) & 1 == 1 {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(&names, &edges).expect("generated codes are simplicial")
}

/// All graphs on exactly `n` vertices, up to isomorphism, in a deterministic
/// order. `n = 0` yields the empty graph.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > CORPUS_CAP {
        return Err(RaagError::LimitExceeded(format!(
            "corpus generation capped at {CORPUS_CAP} vertices"
        )));
    }
    if n == 0 {
        return Ok(vec![Graph::new::<&str>(&[], &[]).unwrap()]);
    }
    let mut level: Vec<Code> = vec![Code { n: 1, bits: 0 }];
    for m in 2..=n {
        let perms = permutations(m);
        let mut seen: HashSet<Code> = HashSet::new();
        for base in &level {
            // attach vertex m-1 to every subset of the existing vertices
            for nb in 0u32..(1 << (m - 1)) {
                let mut bits = 0u32;
                for i in 0..m - 1 {
                    for j in i + 1..m - 1 {
                        if base.bits >> bit_index(m - 1, i, j) & 1 == 1 {
                            bits |= 1 << bit_index(m, i, j);
                        }
                    }
                    if nb >> i & 1 == 1 {
                        bits |= 1 << bit_index(m, i, m - 1);
                    }
                }
                seen.insert(canonical(Code { n: m, bits }, &perms));
            }
        }
        level = seen.into_iter().collect();
        level.sort();
    }
    Ok(level.into_iter().map(code_to_graph).collect())
}

/// All graphs on `1..=max_n` vertices up to isomorphism.
pub fn all_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(graphs_on(n)?);
    }
    Ok(out)
}
