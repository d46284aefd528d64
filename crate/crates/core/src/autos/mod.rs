//! Automorphisms given by generator images: the standard generating set,
//! validated construction, action on words, composition and inversion, and
//! the Out-level decision procedures built on top.

mod maps;
mod outer;
mod syntax;

pub use maps::{
    factor_map, out0_generators, restriction_map, rho_to_class, ClassEpimorphism, MappedGenerator,
};
pub use outer::{equal_in_out, support_conjugation_inner_test, OutEquality};

use std::sync::Arc;

use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::preorder::dominates;
use crate::words::{words_equal, Letter, Word};

/// The Laurence–Servatius generators, plus Day's commutator transvections and
/// explicit inner automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Send one generator to its inverse.
    Inversion { vertex: VertexId },
    /// Permute generators by a graph symmetry; `images[i]` is the image of
    /// vertex `i`.
    Symmetry { images: Vec<VertexId> },
    /// `acted ↦ multiplier · acted`, requires `acted <= multiplier`.
    TransvectionLeft {
        acted: VertexId,
        multiplier: VertexId,
    },
    /// `acted ↦ acted · multiplier`, requires `acted <= multiplier`.
    TransvectionRight {
        acted: VertexId,
        multiplier: VertexId,
    },
    /// Conjugate every generator in `support` by `multiplier`; the support
    /// must be a union of connected components of the graph minus the
    /// multiplier's star.
    PartialConjugation {
        multiplier: VertexId,
        support: VertexSet,
    },
    /// `acted ↦ acted · [left, right]`, requires `acted <= left`,
    /// `acted <= right`, all distinct, and `[left, right] != 1`.
    CommutatorTransvection {
        acted: VertexId,
        left: VertexId,
        right: VertexId,
    },
    /// Conjugation by a fixed word.
    Inner { word: Word },
}

impl GeneratorKind {
    /// Validate this generator's side conditions on `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let check_vertex = |v: VertexId| -> Result<()> {
            if v.idx() < g.n() {
                Ok(())
            } else {
                Err(RaagError::UnknownVertex(format!("#{}", v.0)))
            }
        };
        match self {
            GeneratorKind::Inversion { vertex } => check_vertex(*vertex),
            GeneratorKind::Symmetry { images } => {
                if g.is_symmetry(images) {
                    Ok(())
                } else {
                    Err(RaagError::InvalidGenerator(
                        "permutation is not a graph symmetry".into(),
                    ))
                }
            }
            GeneratorKind::TransvectionLeft { acted, multiplier }
            | GeneratorKind::TransvectionRight { acted, multiplier } => {
                check_vertex(*acted)?;
                check_vertex(*multiplier)?;
                if acted == multiplier {
                    return Err(RaagError::InvalidGenerator(
                        "transvection needs distinct vertices".into(),
                    ));
                }
                if !dominates(g, *acted, *multiplier) {
                    return Err(RaagError::InvalidGenerator(format!(
                        "transvection requires {} <= {}",
                        g.name(*acted),
                        g.name(*multiplier)
                    )));
                }
                Ok(())
            }
            GeneratorKind::PartialConjugation {
                multiplier,
                support,
            } => {
                check_vertex(*multiplier)?;
                if !support.is_subset(&g.vertex_set()) {
                    return Err(RaagError::InvalidGenerator(
                        "support contains unknown vertices".into(),
                    ));
                }
                if !support.intersection(&g.star(*multiplier)).is_empty() {
                    return Err(RaagError::InvalidGenerator(
                        "support meets the multiplier's star".into(),
                    ));
                }
                for comp in g.components_minus(&g.star(*multiplier)) {
                    let inter = comp.intersection(support);
                    if !inter.is_empty() && inter != comp {
                        return Err(RaagError::InvalidGenerator(
                            "support is not a union of connected components".into(),
                        ));
                    }
                }
                Ok(())
            }
            GeneratorKind::CommutatorTransvection { acted, left, right } => {
                check_vertex(*acted)?;
                check_vertex(*left)?;
                check_vertex(*right)?;
                if acted == left || acted == right || left == right {
                    return Err(RaagError::InvalidGenerator(
                        "commutator transvection needs three distinct vertices".into(),
                    ));
                }
                if g.adjacent(*left, *right) {
                    return Err(RaagError::InvalidGenerator(
                        "commutator transvection requires a non-trivial commutator".into(),
                    ));
                }
                if !dominates(g, *acted, *left) || !dominates(g, *acted, *right) {
                    return Err(RaagError::InvalidGenerator(
                        "commutator transvection requires the acted vertex below both others"
                            .into(),
                    ));
                }
                Ok(())
            }
            GeneratorKind::Inner { word } => {
                if *word.graph().as_ref() == *g {
                    Ok(())
                } else {
                    Err(RaagError::GraphMismatch)
                }
            }
        }
    }

    /// Display in the CLI generator syntax.
    pub fn display(&self, g: &Graph) -> String {
        syntax::display_generator(self, g)
    }

    /// Parse the CLI generator syntax (`R[a<-b]`, `L[a<-b]`, `C[v;Z=z1,z2]`,
    /// `inv[v]`, `K[u;v,w]`, `sym[a->b,...]`, `ad[w]`).
    pub fn parse(g: &Arc<Graph>, text: &str) -> Result<GeneratorKind> {
        syntax::parse_generator(g, text)
    }
}

/// An automorphism recorded by its images on generators. Images always
/// preserve the defining relations (checked at construction). Automorphisms
/// built from generators carry provenance, making inversion exact.
#[derive(Debug, Clone)]
pub struct Automorphism {
    graph: Arc<Graph>,
    images: Vec<Word>,
    provenance: Option<Vec<(GeneratorKind, i32)>>,
}

impl Automorphism {
    pub fn identity(graph: Arc<Graph>) -> Automorphism {
        let images = graph
            .vertices()
            .map(|v| Word::generator(graph.clone(), v))
            .collect();
        Automorphism {
            graph,
            images,
            provenance: Some(Vec::new()),
        }
    }

    /// Build from explicit images. The images must define an endomorphism
    /// (adjacent generators get commuting images); no provenance is attached,
    /// so the result cannot be inverted.
    pub fn from_images(graph: Arc<Graph>, images: Vec<Word>) -> Result<Automorphism> {
        if images.len() != graph.n() {
            return Err(RaagError::DimensionMismatch);
        }
        let images: Vec<Word> = images.iter().map(|w| w.normal_form()).collect();
        let auto = Automorphism {
            graph,
            images,
            provenance: None,
        };
        auto.check_relations()?;
        Ok(auto)
    }

    fn check_relations(&self) -> Result<()> {
        for &(u, v) in self.graph.edges() {
            let uv = self.images[u.idx()].concat(&self.images[v.idx()])?;
            let vu = self.images[v.idx()].concat(&self.images[u.idx()])?;
            if !words_equal(&uv, &vu)? {
                return Err(RaagError::RelationsViolated(format!(
                    "images of adjacent {} and {} do not commute",
                    self.graph.name(u),
                    self.graph.name(v)
                )));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn image_of(&self, v: VertexId) -> &Word {
        &self.images[v.idx()]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn provenance(&self) -> Option<&[(GeneratorKind, i32)]> {
        self.provenance.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.graph.vertices().all(|v| {
            let w = &self.images[v.idx()];
            w.letters() == [Letter::pos(v)]
        })
    }

    /// Apply to a word: substitute images letter by letter, then normalize.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if *w.graph().as_ref() != *self.graph {
            return Err(RaagError::GraphMismatch);
        }
        let mut letters = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.vertex.idx()];
            if l.inverse {
                letters.extend(img.inverse().letters().iter().copied());
            } else {
                letters.extend(img.letters().iter().copied());
            }
        }
        Ok(Word::new(self.graph.clone(), letters)?.normal_form())
    }

    /// `compose(f, h)` acts as `w ↦ f(h(w))`.
    pub fn compose(f: &Automorphism, h: &Automorphism) -> Result<Automorphism> {
        if *f.graph != *h.graph {
            return Err(RaagError::GraphMismatch);
        }
        let images = h
            .images
            .iter()
            .map(|w| f.apply(w))
            .collect::<Result<Vec<_>>>()?;
        let provenance = match (&f.provenance, &h.provenance) {
            (Some(a), Some(b)) => {
                let mut p = a.clone();
                p.extend(b.iter().cloned());
                Some(p)
            }
            _ => None,
        };
        Ok(Automorphism {
            graph: f.graph.clone(),
            images,
            provenance,
        })
    }

    /// Invert by reversing the provenance sequence with generator inverses.
    pub fn invert(&self) -> Result<Automorphism> {
        let prov = self.provenance.as_ref().ok_or(RaagError::NoProvenance)?;
        let mut acc = Automorphism::identity(self.graph.clone());
        for (kind, e) in prov.iter().rev() {
            let step = make_generator_power(&self.graph, kind, -e)?;
            acc = Automorphism::compose(&acc, &step)?;
        }
        Ok(acc)
    }
}

/// Build the automorphism of a single generator.
pub fn make_generator(graph: &Arc<Graph>, kind: &GeneratorKind) -> Result<Automorphism> {
    make_generator_power(graph, kind, 1)
}

/// Build `kind^e`. Inverses exist in closed form for every generator, so any
/// integer exponent is available without search.
pub fn make_generator_power(
    graph: &Arc<Graph>,
    kind: &GeneratorKind,
    e: i32,
) -> Result<Automorphism> {
    kind.validate(graph)?;
    if e == 0 {
        return Ok(Automorphism::identity(graph.clone()));
    }
    let gen_word = |v: VertexId| Word::generator(graph.clone(), v);
    let mut images: Vec<Word> = graph.vertices().map(gen_word).collect();
    match kind {
        GeneratorKind::Inversion { vertex } => {
            // self-inverse; exponent parity decides
            if e % 2 != 0 {
                images[vertex.idx()] = gen_word(*vertex).inverse();
            }
        }
        GeneratorKind::Symmetry { images: perm } => {
            let mut p: Vec<VertexId> = graph.vertices().collect();
            let step: Vec<VertexId> = if e > 0 {
                perm.clone()
            } else {
                let mut inv = vec![VertexId(0); perm.len()];
                for (i, &img) in perm.iter().enumerate() {
                    inv[img.idx()] = VertexId(i as u32);
                }
                inv
            };
            for _ in 0..e.unsigned_abs() {
                p = p.iter().map(|&v| step[v.idx()]).collect();
            }
            for v in graph.vertices() {
                images[v.idx()] = gen_word(p[v.idx()]);
            }
        }
        GeneratorKind::TransvectionLeft { acted, multiplier } => {
            let m = Word::new(
                graph.clone(),
                vec![
                    Letter {
                        vertex: *multiplier,
                        inverse: e < 0,
                    };
                    e.unsigned_abs() as usize
                ],
            )?;
            images[acted.idx()] = m.concat(&gen_word(*acted))?.normal_form();
        }
        GeneratorKind::TransvectionRight { acted, multiplier } => {
            let m = Word::new(
                graph.clone(),
                vec![
                    Letter {
                        vertex: *multiplier,
                        inverse: e < 0,
                    };
                    e.unsigned_abs() as usize
                ],
            )?;
            images[acted.idx()] = gen_word(*acted).concat(&m)?.normal_form();
        }
        GeneratorKind::PartialConjugation {
            multiplier,
            support,
        } => {
            let m = Word::new(
                graph.clone(),
                vec![
                    Letter {
                        vertex: *multiplier,
                        inverse: e < 0,
                    };
                    e.unsigned_abs() as usize
                ],
            )?;
            for z in support.iter() {
                images[z.idx()] = m.conjugate_of(&gen_word(z))?.normal_form();
            }
        }
        GeneratorKind::CommutatorTransvection { acted, left, right } => {
            let comm = gen_word(*left)
                .concat(&gen_word(*right))?
                .concat(&gen_word(*left).inverse())?
                .concat(&gen_word(*right).inverse())?;
            let c = comm.pow(e);
            images[acted.idx()] = gen_word(*acted).concat(&c)?.normal_form();
        }
        GeneratorKind::Inner { word } => {
            let c = word.pow(e);
            for v in graph.vertices() {
                images[v.idx()] = c.conjugate_of(&gen_word(v))?.normal_form();
            }
        }
    }
    let auto = Automorphism {
        graph: graph.clone(),
        images,
        provenance: Some(vec![(kind.clone(), e)]),
    };
    auto.check_relations()?;
    Ok(auto)
}
