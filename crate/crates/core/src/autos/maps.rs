//! Factor and restriction maps on generators, and the induced epimorphism
//! onto the outer automorphism group of a single equivalence class.

use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::preorder::{ensure_downward_closed, gamma_leq, EquivClass};
use crate::words::{Letter, Word};

use super::GeneratorKind;

/// Image of a generator under a factor or restriction map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MappedGenerator {
    Identity,
    Generator(GeneratorKind),
}

impl MappedGenerator {
    pub fn as_generator(&self) -> Option<&GeneratorKind> {
        match self {
            MappedGenerator::Identity => None,
            MappedGenerator::Generator(k) => Some(k),
        }
    }
}

/// Translate a vertex of `g` into the induced subgraph on `sub` (which keeps
/// declaration order).
fn reindex(sub: &VertexSet, v: VertexId) -> VertexId {
    let rank = sub.iter().position(|u| u == v).expect("vertex not in sub");
    VertexId(rank as u32)
}

fn reindex_set(sub: &VertexSet, set: &VertexSet) -> VertexSet {
    VertexSet::from_iter(set.intersection(sub).iter().map(|v| reindex(sub, v)))
}

fn reindex_word(sub: &VertexSet, sub_graph: &std::sync::Arc<Graph>, w: &Word) -> Word {
    let letters: Vec<Letter> = w
        .letters()
        .iter()
        .filter(|l| sub.contains(l.vertex))
        .map(|l| Letter {
            vertex: reindex(sub, l.vertex),
            inverse: l.inverse,
        })
        .collect();
    Word::new(sub_graph.clone(), letters).expect("reindexed letters are valid")
}

/// The factor map onto the subgroup generated by `sub`, defined by killing
/// every generator outside `sub`. Requires `sub` to be downward closed.
pub fn factor_map(g: &Graph, sub: &VertexSet, k: &GeneratorKind) -> Result<MappedGenerator> {
    ensure_downward_closed(g, sub)?;
    k.validate(g)?;
    let sub_graph = std::sync::Arc::new(g.induced(sub));
    Ok(match k {
        GeneratorKind::Inversion { vertex } => {
            if sub.contains(*vertex) {
                MappedGenerator::Generator(GeneratorKind::Inversion {
                    vertex: reindex(sub, *vertex),
                })
            } else {
                MappedGenerator::Identity
            }
        }
        GeneratorKind::TransvectionLeft { acted, multiplier } => {
            if sub.contains(*acted) && sub.contains(*multiplier) {
                MappedGenerator::Generator(GeneratorKind::TransvectionLeft {
                    acted: reindex(sub, *acted),
                    multiplier: reindex(sub, *multiplier),
                })
            } else {
                MappedGenerator::Identity
            }
        }
        GeneratorKind::TransvectionRight { acted, multiplier } => {
            if sub.contains(*acted) && sub.contains(*multiplier) {
                MappedGenerator::Generator(GeneratorKind::TransvectionRight {
                    acted: reindex(sub, *acted),
                    multiplier: reindex(sub, *multiplier),
                })
            } else {
                MappedGenerator::Identity
            }
        }
        GeneratorKind::PartialConjugation {
            multiplier,
            support,
        } => {
            if !sub.contains(*multiplier) || support.intersection(sub).is_empty() {
                MappedGenerator::Identity
            } else {
                MappedGenerator::Generator(GeneratorKind::PartialConjugation {
                    multiplier: reindex(sub, *multiplier),
                    support: reindex_set(sub, support),
                })
            }
        }
        GeneratorKind::CommutatorTransvection { acted, left, right } => {
            if sub.contains(*acted) && sub.contains(*left) && sub.contains(*right) {
                MappedGenerator::Generator(GeneratorKind::CommutatorTransvection {
                    acted: reindex(sub, *acted),
                    left: reindex(sub, *left),
                    right: reindex(sub, *right),
                })
            } else {
                MappedGenerator::Identity
            }
        }
        GeneratorKind::Symmetry { images } => {
            let preserves = sub.iter().all(|v| sub.contains(images[v.idx()]));
            if !preserves {
                return Err(RaagError::InvalidGenerator(
                    "symmetry does not preserve the subgraph".into(),
                ));
            }
            let mut new_images: Vec<VertexId> = sub_graph.vertices().collect();
            for v in sub.iter() {
                new_images[reindex(sub, v).idx()] = reindex(sub, images[v.idx()]);
            }
            MappedGenerator::Generator(GeneratorKind::Symmetry { images: new_images })
        }
        GeneratorKind::Inner { word } => {
            let mapped = reindex_word(sub, &sub_graph, word);
            if mapped.is_trivial() {
                MappedGenerator::Identity
            } else {
                MappedGenerator::Generator(GeneratorKind::Inner { word: mapped })
            }
        }
    })
}

/// The restriction map onto the subgroup generated by `sub`. Defined only
/// when the generator preserves the conjugacy class of that subgroup; errors
/// otherwise.
pub fn restriction_map(g: &Graph, sub: &VertexSet, k: &GeneratorKind) -> Result<MappedGenerator> {
    k.validate(g)?;
    let sub_graph = std::sync::Arc::new(g.induced(sub));
    Ok(match k {
        GeneratorKind::Inversion { vertex } => {
            if sub.contains(*vertex) {
                MappedGenerator::Generator(GeneratorKind::Inversion {
                    vertex: reindex(sub, *vertex),
                })
            } else {
                MappedGenerator::Identity
            }
        }
        GeneratorKind::TransvectionLeft { acted, multiplier }
        | GeneratorKind::TransvectionRight { acted, multiplier } => {
            if !sub.contains(*acted) {
                MappedGenerator::Identity
            } else if !sub.contains(*multiplier) {
                // moves a subgroup generator out of the subgroup
                return Err(RaagError::RestrictionUndefined);
            } else {
                let (acted, multiplier) = (reindex(sub, *acted), reindex(sub, *multiplier));
                MappedGenerator::Generator(match k {
                    GeneratorKind::TransvectionLeft { .. } => {
                        GeneratorKind::TransvectionLeft { acted, multiplier }
                    }
                    _ => GeneratorKind::TransvectionRight { acted, multiplier },
                })
            }
        }
        GeneratorKind::PartialConjugation {
            multiplier,
            support,
        } => {
            if sub.contains(*multiplier) {
                let new_support = reindex_set(sub, support);
                if new_support.is_empty() {
                    MappedGenerator::Identity
                } else {
                    MappedGenerator::Generator(GeneratorKind::PartialConjugation {
                        multiplier: reindex(sub, *multiplier),
                        support: new_support,
                    })
                }
            } else if support.intersection(sub).is_empty() {
                MappedGenerator::Identity
            } else if sub.is_subset(&support.union(&g.star(*multiplier))) {
                // acts as a global conjugation on the subgroup
                MappedGenerator::Identity
            } else {
                return Err(RaagError::RestrictionUndefined);
            }
        }
        GeneratorKind::CommutatorTransvection { acted, left, right } => {
            if !sub.contains(*acted) {
                MappedGenerator::Identity
            } else if sub.contains(*left) && sub.contains(*right) {
                MappedGenerator::Generator(GeneratorKind::CommutatorTransvection {
                    acted: reindex(sub, *acted),
                    left: reindex(sub, *left),
                    right: reindex(sub, *right),
                })
            } else {
                return Err(RaagError::RestrictionUndefined);
            }
        }
        GeneratorKind::Symmetry { images } => {
            let preserves = sub.iter().all(|v| sub.contains(images[v.idx()]));
            if !preserves {
                return Err(RaagError::RestrictionUndefined);
            }
            let mut new_images: Vec<VertexId> = sub_graph.vertices().collect();
            for v in sub.iter() {
                new_images[reindex(sub, v).idx()] = reindex(sub, images[v.idx()]);
            }
            MappedGenerator::Generator(GeneratorKind::Symmetry { images: new_images })
        }
        // an inner automorphism restricts to an inner automorphism of the
        // subgroup, hence to the identity of its outer automorphism group
        GeneratorKind::Inner { .. } => MappedGenerator::Identity,
    })
}

/// The transvection and partial-conjugation generators: both orientations of
/// every valid transvection, and one partial conjugation per connected
/// component of the complement of each star.
pub fn out0_generators(g: &Graph) -> Vec<GeneratorKind> {
    let mut out = Vec::new();
    for acted in g.vertices() {
        for multiplier in g.vertices() {
            if acted != multiplier && crate::preorder::dominates(g, acted, multiplier) {
                out.push(GeneratorKind::TransvectionRight { acted, multiplier });
                out.push(GeneratorKind::TransvectionLeft { acted, multiplier });
            }
        }
    }
    for multiplier in g.vertices() {
        for comp in g.components_minus(&g.star(multiplier)) {
            out.push(GeneratorKind::PartialConjugation {
                multiplier,
                support: comp,
            });
        }
    }
    out
}

/// The epimorphism onto the outer automorphism group of one equivalence
/// class, as the factor map onto the class's downward closure followed by
/// the restriction map onto the class.
#[derive(Debug, Clone)]
pub struct ClassEpimorphism {
    /// Induced graph on the class (complete or discrete).
    pub class_graph: Graph,
    /// Every generator of the ambient graph with its image on `class_graph`.
    pub pairs: Vec<(GeneratorKind, MappedGenerator)>,
}

impl ClassEpimorphism {
    /// Surjectivity witness: every transvection and every single-component
    /// partial conjugation of the class graph appears among the images.
    pub fn hits_all_class_generators(&self) -> bool {
        let targets = out0_generators(&self.class_graph);
        targets.iter().all(|t| {
            self.pairs
                .iter()
                .any(|(_, img)| img.as_generator() == Some(t))
        })
    }
}

/// Map every generator of `g` through the factor map onto the downward
/// closure of `cls` and then the restriction map onto `cls`. Requires the
/// class to have at least two members.
pub fn rho_to_class(g: &Graph, cls: &EquivClass) -> Result<ClassEpimorphism> {
    if cls.size < 2 {
        return Err(RaagError::SingletonClass);
    }
    let closure = gamma_leq(g, &cls.members);
    let closure_graph = g.induced(&closure);
    let cls_in_closure = reindex_set(&closure, &cls.members);
    let class_graph = closure_graph.induced(&cls_in_closure);

    let mut pairs = Vec::new();
    for k in out0_generators(g) {
        let stage1 = factor_map(g, &closure, &k)?;
        let image = match &stage1 {
            MappedGenerator::Identity => MappedGenerator::Identity,
            MappedGenerator::Generator(k1) => {
                restriction_map(&closure_graph, &cls_in_closure, k1).map_err(|e| {
                    if e == RaagError::RestrictionUndefined {
                        RaagError::Other(
                            "factor image fails to preserve the class subgroup".into(),
                        )
                    } else {
                        e
                    }
                })?
            }
        };
        pairs.push((k, image));
    }
    Ok(ClassEpimorphism { class_graph, pairs })
}
