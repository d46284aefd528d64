//! Text syntax for generators: `R[a<-b]`, `L[a<-b]`, `C[v;Z=z1,z2]`,
//! `inv[v]`, `K[u;v,w]`, `sym[a->b,b->a]`, `ad[w1 w2^-1]`.

use std::sync::Arc;

use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::words::Word;

use super::GeneratorKind;

pub(super) fn display_generator(k: &GeneratorKind, g: &Graph) -> String {
    match k {
        GeneratorKind::Inversion { vertex } => format!("inv[{}]", g.name(*vertex)),
        GeneratorKind::Symmetry { images } => {
            let moved: Vec<String> = g
                .vertices()
                .filter(|&v| images[v.idx()] != v)
                .map(|v| format!("{}->{}", g.name(v), g.name(images[v.idx()])))
                .collect();
            format!("sym[{}]", moved.join(","))
        }
        GeneratorKind::TransvectionLeft { acted, multiplier } => {
            format!("L[{}<-{}]", g.name(*acted), g.name(*multiplier))
        }
        GeneratorKind::TransvectionRight { acted, multiplier } => {
            format!("R[{}<-{}]", g.name(*acted), g.name(*multiplier))
        }
        GeneratorKind::PartialConjugation {
            multiplier,
            support,
        } => format!(
            "C[{};Z={}]",
            g.name(*multiplier),
            g.names_of(support).join(",")
        ),
        GeneratorKind::CommutatorTransvection { acted, left, right } => format!(
            "K[{};{},{}]",
            g.name(*acted),
            g.name(*left),
            g.name(*right)
        ),
        GeneratorKind::Inner { word } => format!("ad[{word}]"),
    }
}

fn bracket_body<'t>(text: &'t str, head: &str) -> Option<&'t str> {
    text.strip_prefix(head)?
        .strip_prefix('[')?
        .strip_suffix(']')
}

pub(super) fn parse_generator(g: &Arc<Graph>, text: &str) -> Result<GeneratorKind> {
    let text = text.trim();
    let bad = |msg: &str| RaagError::InvalidGenerator(format!("{msg}: `{text}`"));

    if let Some(body) = bracket_body(text, "R").or_else(|| bracket_body(text, "L")) {
        let (acted, multiplier) = body
            .split_once("<-")
            .ok_or_else(|| bad("expected `acted<-multiplier`"))?;
        let acted = g.vertex(acted.trim())?;
        let multiplier = g.vertex(multiplier.trim())?;
        return Ok(if text.starts_with('R') {
            GeneratorKind::TransvectionRight { acted, multiplier }
        } else {
            GeneratorKind::TransvectionLeft { acted, multiplier }
        });
    }
    if let Some(body) = bracket_body(text, "C") {
        let (mult, support) = body
            .split_once(';')
            .ok_or_else(|| bad("expected `C[v;Z=...]`"))?;
        let support = support
            .trim()
            .strip_prefix("Z=")
            .ok_or_else(|| bad("expected `Z=` in partial conjugation"))?;
        let multiplier = g.vertex(mult.trim())?;
        let mut set = VertexSet::EMPTY;
        for name in support.split(',').filter(|s| !s.trim().is_empty()) {
            set.insert(g.vertex(name.trim())?);
        }
        return Ok(GeneratorKind::PartialConjugation {
            multiplier,
            support: set,
        });
    }
    if let Some(body) = bracket_body(text, "inv") {
        return Ok(GeneratorKind::Inversion {
            vertex: g.vertex(body.trim())?,
        });
    }
    if let Some(body) = bracket_body(text, "K") {
        let (acted, pair) = body
            .split_once(';')
            .ok_or_else(|| bad("expected `K[u;v,w]`"))?;
        let (l, r) = pair
            .split_once(',')
            .ok_or_else(|| bad("expected `K[u;v,w]`"))?;
        return Ok(GeneratorKind::CommutatorTransvection {
            acted: g.vertex(acted.trim())?,
            left: g.vertex(l.trim())?,
            right: g.vertex(r.trim())?,
        });
    }
    if let Some(body) = bracket_body(text, "sym") {
        let mut images: Vec<VertexId> = g.vertices().collect();
        for rule in body.split(',').filter(|s| !s.trim().is_empty()) {
            let (from, to) = rule
                .split_once("->")
                .ok_or_else(|| bad("expected `from->to` in symmetry"))?;
            images[g.vertex(from.trim())?.idx()] = g.vertex(to.trim())?;
        }
        return Ok(GeneratorKind::Symmetry { images });
    }
    if let Some(body) = bracket_body(text, "ad") {
        return Ok(GeneratorKind::Inner {
            word: Word::parse(g, body)?,
        });
    }
    Err(bad("unrecognized generator"))
}
