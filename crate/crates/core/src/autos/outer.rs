//! Out-level decision procedures: bounded inner-detection for general
//! automorphisms, and an exact innerness test for automorphisms that
//! conjugate a support by a single word.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::words::{words_equal, Letter, Word};

use super::Automorphism;

/// Outcome of comparing two automorphisms in the outer automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutEquality {
    /// `f = ad_g ∘ h` for the witness conjugator `g`.
    Equal(Word),
    /// The actions on the abelianization differ, so the outer classes differ.
    NotEqualCertified,
    /// No certificate either way within the search bound.
    Unknown,
}

/// Compare `f` and `h` in Out. Searches conjugators `g` with `|g| <= bound`
/// breadth-first over trace normal forms; certifies inequality only through
/// the abelianization. Anything else is an honest `Unknown`.
pub fn equal_in_out(f: &Automorphism, h: &Automorphism, bound: usize) -> Result<OutEquality> {
    if *f.graph().as_ref() != *h.graph().as_ref() {
        return Err(RaagError::GraphMismatch);
    }
    let graph = f.graph().clone();

    let conjugates = |g_word: &Word| -> Result<bool> {
        for v in graph.vertices() {
            let rhs = g_word.conjugate_of(h.image_of(v))?;
            if !words_equal(f.image_of(v), &rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    if conjugates(&Word::empty(graph.clone()))? {
        return Ok(OutEquality::Equal(Word::empty(graph)));
    }

    let abelianized = |a: &Automorphism| -> Vec<Vec<i64>> {
        a.images().iter().map(|w| w.exponent_vector()).collect()
    };
    if abelianized(f) != abelianized(h) {
        return Ok(OutEquality::NotEqualCertified);
    }

    let letters: Vec<Letter> = graph
        .vertices()
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect();
    let mut level: Vec<Word> = vec![Word::empty(graph.clone())];
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    for len in 1..=bound {
        let mut next = Vec::new();
        for w in &level {
            for &l in &letters {
                let mut ls = w.letters().to_vec();
                ls.push(l);
                let cand = Word::new(graph.clone(), ls)?.normal_form();
                if cand.len() == len && seen.insert(cand.letters().to_vec()) {
                    if conjugates(&cand)? {
                        return Ok(OutEquality::Equal(cand));
                    }
                    next.push(cand);
                }
            }
        }
        level = next;
    }
    Ok(OutEquality::Unknown)
}

/// Letters of the normal form all lie in `allowed` iff the element belongs to
/// the standard subgroup on `allowed`.
fn letters_within(w: &Word, allowed: &VertexSet) -> bool {
    w.letters().iter().all(|l| allowed.contains(l.vertex))
}

/// Decide membership of `w` in the product of the two standard subgroups on
/// `k1` and `k2`. Greedily peels front-movable `k1`-letters; the remainder
/// must lie in the subgroup on `k2`. Returns the peeled prefix on success.
fn split_in_standard_product(w: &Word, k1: &VertexSet, k2: &VertexSet) -> Option<Word> {
    let graph = w.graph().clone();
    let mut rest: Vec<Letter> = w.normal_form().letters().to_vec();
    let mut prefix: Vec<Letter> = Vec::new();
    loop {
        if rest.iter().all(|l| k2.contains(l.vertex)) {
            return Some(Word::new(graph, prefix).expect("letters come from the graph"));
        }
        let mut pick = None;
        'scan: for i in 0..rest.len() {
            if !k1.contains(rest[i].vertex) {
                continue;
            }
            for j in 0..i {
                if !graph.adjacent(rest[j].vertex, rest[i].vertex) {
                    continue 'scan;
                }
            }
            pick = Some(i);
            break;
        }
        match pick {
            Some(i) => prefix.push(rest.remove(i)),
            None => return None,
        }
    }
}

/// The centralizer of the standard subgroup on `set` is the standard subgroup
/// on the intersection of the stars of its members.
fn centralizer_support(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut out = g.vertex_set();
    for v in set.iter() {
        out = out.intersection(&g.star(v));
    }
    out
}

/// Conjugating word and moved set of a support-conjugation automorphism.
pub(crate) struct SupportConjugation {
    pub moved: VertexSet,
    pub conjugator: Word,
}

/// Detect whether `f` fixes every generator outside some set Z and conjugates
/// each member of Z by one common word. The common word is assembled by
/// intersecting the solution cosets `w_v · C(v)` across the moved generators.
pub(crate) fn support_conjugation_data(f: &Automorphism) -> Result<SupportConjugation> {
    let graph = f.graph().clone();
    let mut moved = VertexSet::EMPTY;
    let mut reps: Vec<(VertexId, Word)> = Vec::new();
    for v in graph.vertices() {
        let img = f.image_of(v);
        if img.letters() == [Letter::pos(v)] {
            continue;
        }
        let (core, conj) = img.cyclically_reduce();
        if core.letters() != [Letter::pos(v)] {
            return Err(RaagError::UnsupportedShape);
        }
        moved.insert(v);
        reps.push((v, conj));
    }
    if reps.is_empty() {
        return Ok(SupportConjugation {
            moved,
            conjugator: Word::empty(graph),
        });
    }
    let (v0, w0) = reps[0].clone();
    let mut rep = w0;
    let mut coset_support = graph.star(v0);
    for (v, wv) in reps.iter().skip(1) {
        let delta = rep.inverse().concat(wv)?;
        let prefix = split_in_standard_product(&delta, &coset_support, &graph.star(*v))
            .ok_or(RaagError::UnsupportedShape)?;
        rep = rep.concat(&prefix)?.normal_form();
        coset_support = coset_support.intersection(&graph.star(*v));
    }
    // the assembled word must reproduce every image
    for v in moved.iter() {
        let expect = rep.conjugate_of(&Word::generator(graph.clone(), v))?;
        if !words_equal(&expect, f.image_of(v))? {
            return Err(RaagError::UnsupportedShape);
        }
    }
    Ok(SupportConjugation {
        moved,
        conjugator: rep,
    })
}

/// Exact innerness test for support conjugations: `f` conjugating the set Z
/// by the word w is inner iff w factors as g·c with g centralizing the
/// subgroup on the fixed vertices and c centralizing the subgroup on Z.
pub fn support_conjugation_inner_test(f: &Automorphism) -> Result<bool> {
    let graph = f.graph().clone();
    let data = support_conjugation_data(f)?;
    if data.moved.is_empty() {
        return Ok(true);
    }
    let fixed = graph.vertex_set().difference(&data.moved);
    let k1 = centralizer_support(&graph, &fixed);
    let k2 = centralizer_support(&graph, &data.moved);
    Ok(split_in_standard_product(&data.conjugator, &k1, &k2).is_some())
}
