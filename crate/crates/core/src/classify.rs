//! Condition (*), the trichotomy, the short-exact-sequence data for no-SIL
//! graphs, the product decomposition, depth data, and the vastness verdicts.

use serde::{Deserialize, Serialize};

use crate::autos::GeneratorKind;
use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::preorder::{dominates, equivalence_classes, equivalent, ClassKind, ClassOrder, EquivClass};
use crate::rep::{largeness_witness, LargenessWitness};
use crate::sil::{all_sils, find_special_sil, Sil, SpecialSil};

/// Witness for condition (*): a SIL, a non-abelian class, or an abelian
/// class of size two, searched in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarWitness {
    Sil(Sil),
    NonAbelianClass(EquivClass),
    AbelianPair(EquivClass),
}

/// Target of the class epimorphism in branch (1a).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum Br1aTarget {
    OutPlusFree { rank: usize },
    Sl2Z,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Br1a {
    pub target: Br1aTarget,
    pub class: EquivClass,
}

/// Block sizes and nilpotency bound for the short exact sequence onto the
/// product of special linear groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesData {
    pub blocks: Vec<usize>,
    pub depth_bound: usize,
}

/// The four vastness verdicts; all equal condition (*).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vastness {
    pub sq_universal: bool,
    pub involves_all_finite: bool,
    pub many_quasimorphisms_virtually: bool,
    pub not_boundedly_generated: bool,
}

/// The full classification of one graph.
#[derive(Debug, Clone)]
pub struct Classification {
    pub classes: ClassOrder,
    pub sils: Vec<Sil>,
    pub special_sil: Option<SpecialSil>,
    pub star_condition: Option<StarWitness>,
    pub has_sil: bool,
    pub br1a: Option<Br1a>,
    pub br1b: Option<SpecialSil>,
    /// Theorem branch (2): no SIL and all classes abelian of sizes != 2.
    pub br2: Option<SesData>,
    /// Short exact sequence data, present for every no-SIL graph.
    pub ses: Option<SesData>,
    pub vastness: Vastness,
    pub largeness: Option<LargenessWitness>,
    pub free_subgroup: bool,
}

/// Condition (*): a SIL, a non-abelian equivalence class, or an abelian
/// equivalence class of size 2. The first witness in that priority is
/// returned.
pub fn condition_star(g: &Graph) -> Option<StarWitness> {
    if let Some(s) = all_sils(g).into_iter().next() {
        return Some(StarWitness::Sil(s));
    }
    let co = equivalence_classes(g);
    if let Some(c) = co
        .classes
        .iter()
        .find(|c| c.kind == ClassKind::Free && c.size >= 2)
    {
        return Some(StarWitness::NonAbelianClass(c.clone()));
    }
    if let Some(c) = co
        .classes
        .iter()
        .find(|c| c.kind == ClassKind::Abelian && c.size == 2)
    {
        return Some(StarWitness::AbelianPair(c.clone()));
    }
    None
}

/// Longest descending domination chains and the graded generator sets they
/// bound.
#[derive(Debug, Clone)]
pub struct DepthData {
    /// Depth per vertex (declaration order): the number of classes in the
    /// longest strictly descending chain starting at the vertex.
    pub depth: Vec<usize>,
    /// Maximum depth over all vertices.
    pub max_depth: usize,
    /// `sets[i]` is S_{i+1}: partial conjugations whose multiplier has depth
    /// > i, and cross-class transvections whose depth gap exceeds i.
    pub sets: Vec<Vec<GeneratorKind>>,
}

/// Compute vertex depths by longest-path search on the class order, and the
/// descending chain of generator sets.
pub fn depth_data(g: &Graph) -> DepthData {
    let co = equivalence_classes(g);
    let k = co.classes.len();
    let mut class_depth = vec![0usize; k];
    fn dfs(i: usize, below: &Vec<Vec<bool>>, memo: &mut Vec<usize>) -> usize {
        if memo[i] != 0 {
            return memo[i];
        }
        let mut best = 1;
        for j in 0..below.len() {
            if j != i && below[j][i] {
                best = best.max(1 + dfs(j, below, memo));
            }
        }
        memo[i] = best;
        best
    }
    for i in 0..k {
        dfs(i, &co.below, &mut class_depth);
    }
    let depth: Vec<usize> = g
        .vertices()
        .map(|v| class_depth[co.class_index_of(v)])
        .collect();
    let max_depth = depth.iter().copied().max().unwrap_or(0);

    let mut sets = Vec::new();
    for i in 1..=max_depth {
        let mut set = Vec::new();
        for m in g.vertices() {
            if depth[m.idx()] < i {
                continue;
            }
            for comp in g.components_minus(&g.star(m)) {
                set.push(GeneratorKind::PartialConjugation {
                    multiplier: m,
                    support: comp,
                });
            }
        }
        for acted in g.vertices() {
            for mult in g.vertices() {
                if acted == mult || equivalent(g, acted, mult) {
                    continue;
                }
                if !dominates(g, acted, mult) {
                    continue;
                }
                if depth[mult.idx()] - depth[acted.idx()] >= i {
                    set.push(GeneratorKind::TransvectionRight {
                        acted,
                        multiplier: mult,
                    });
                }
            }
        }
        sets.push(set);
    }
    DepthData {
        depth,
        max_depth,
        sets,
    }
}

/// The product decomposition of a no-SIL graph: peel off non-abelian free
/// classes of size two, each of which must see every other vertex.
#[derive(Debug, Clone)]
pub struct NoSilDecomposition {
    pub k: usize,
    pub pairs: Vec<(String, String)>,
    pub lambda: Graph,
}

pub fn decompose_no_sil(g: &Graph) -> Result<NoSilDecomposition> {
    if !all_sils(g).is_empty() {
        return Err(RaagError::HasSil);
    }
    let mut current = g.clone();
    let mut pairs = Vec::new();
    loop {
        let co = equivalence_classes(&current);
        let free_pair = co
            .classes
            .iter()
            .find(|c| c.kind == ClassKind::Free && c.size >= 2)
            .cloned();
        let Some(cls) = free_pair else { break };
        if cls.size != 2 {
            return Err(RaagError::Other(
                "no-SIL graph with a free class of size > 2".into(),
            ));
        }
        let members: Vec<VertexId> = cls.members.iter().collect();
        let (x, y) = (members[0], members[1]);
        let rest = current
            .vertex_set()
            .difference(&VertexSet::from_iter([x, y]));
        if current.link(x) != rest || current.link(y) != rest {
            return Err(RaagError::Other(
                "free pair does not see the whole remaining graph".into(),
            ));
        }
        pairs.push((
            current.name(x).to_string(),
            current.name(y).to_string(),
        ));
        current = current.induced(&rest);
    }
    Ok(NoSilDecomposition {
        k: pairs.len(),
        pairs,
        lambda: current,
    })
}

/// The generating set of the kernel of the map onto the product of special
/// linear groups: non-inner partial conjugations and the strictly
/// cross-class right transvections.
pub fn p_generating_set(g: &Graph) -> Result<Vec<GeneratorKind>> {
    if !all_sils(g).is_empty() {
        return Err(RaagError::HasSil);
    }
    let mut out = Vec::new();
    for m in g.vertices() {
        let comps = g.components_minus(&g.star(m));
        if comps.len() < 2 {
            // a single component means the conjugation is inner
            continue;
        }
        for comp in comps {
            out.push(GeneratorKind::PartialConjugation {
                multiplier: m,
                support: comp,
            });
        }
    }
    for acted in g.vertices() {
        for mult in g.vertices() {
            if acted != mult
                && dominates(g, acted, mult)
                && !equivalent(g, acted, mult)
            {
                out.push(GeneratorKind::TransvectionRight {
                    acted,
                    multiplier: mult,
                });
            }
        }
    }
    Ok(out)
}

/// Justified vastness verdicts.
#[derive(Debug, Clone)]
pub struct VastnessReport {
    pub vastness: Vastness,
    pub justification: String,
}

pub fn vastness_report(g: &Graph) -> VastnessReport {
    let witness = condition_star(g);
    let holds = witness.is_some();
    let justification = match &witness {
        Some(StarWitness::Sil(s)) => format!(
            "condition (*) holds through the SIL ({}, {} | {})",
            g.name(s.x),
            g.name(s.y),
            g.name(s.z)
        ),
        Some(StarWitness::NonAbelianClass(c)) => format!(
            "condition (*) holds through the non-abelian class {{{}}}",
            g.names_of(&c.members).join(", ")
        ),
        Some(StarWitness::AbelianPair(c)) => format!(
            "condition (*) holds through the abelian class {{{}}} of size 2",
            g.names_of(&c.members).join(", ")
        ),
        None => "condition (*) fails: no SIL, every class abelian of size != 2".into(),
    };
    VastnessReport {
        vastness: Vastness {
            sq_universal: holds,
            involves_all_finite: holds,
            many_quasimorphisms_virtually: holds,
            not_boundedly_generated: holds,
        },
        justification,
    }
}

/// Run the whole pipeline on one graph.
pub fn trichotomy(g: &Graph) -> Result<Classification> {
    let classes = equivalence_classes(g);
    let sils = all_sils(g);
    let has_sil = !sils.is_empty();
    let star_condition = condition_star(g);
    let all_abelian = classes.classes.iter().all(|c| c.kind.is_abelian());

    // branch (1a): the largest qualifying class, free classes preferred by
    // size, abelian pairs counting as rank 2
    let mut candidates: Vec<(usize, &EquivClass)> = Vec::new();
    for c in &classes.classes {
        if c.kind == ClassKind::Free && c.size >= 2 {
            candidates.push((c.size, c));
        } else if c.kind == ClassKind::Abelian && c.size == 2 {
            candidates.push((2, c));
        }
    }
    let br1a = candidates.iter().max_by_key(|(n, _)| *n).map(|(n, c)| Br1a {
        target: if c.kind == ClassKind::Free {
            Br1aTarget::OutPlusFree { rank: *n }
        } else {
            Br1aTarget::Sl2Z
        },
        class: (*c).clone(),
    });

    let special_sil = if all_abelian && has_sil {
        find_special_sil(g)?
    } else {
        None
    };
    let br1b = special_sil.clone();

    let depth = depth_data(g);
    let ses = if has_sil {
        None
    } else {
        Some(SesData {
            blocks: classes.block_sizes(),
            depth_bound: depth.max_depth,
        })
    };
    let br2 = if !has_sil
        && all_abelian
        && classes.classes.iter().all(|c| c.size != 2)
    {
        ses.clone()
    } else {
        None
    };

    let vastness = vastness_report(g).vastness;
    let largeness = largeness_witness(g)?;
    let free_subgroup = has_sil || classes.classes.iter().any(|c| c.size >= 2);

    Ok(Classification {
        classes,
        sils,
        special_sil,
        star_condition,
        has_sil,
        br1a,
        br1b,
        br2,
        ses,
        vastness,
        largeness,
        free_subgroup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::all_graphs_up_to;
    use crate::testutil::*;

    #[test]
    fn condition_star_examples() {
        match condition_star(&k2()) {
            Some(StarWitness::AbelianPair(c)) => assert_eq!(c.size, 2),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(condition_star(&p4()).is_none());
        match condition_star(&p3()) {
            Some(StarWitness::NonAbelianClass(c)) => assert_eq!(c.size, 2),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(matches!(condition_star(&d3()), Some(StarWitness::Sil(_))));
    }

    #[test]
    fn trichotomy_dn_maps_onto_out_fn() {
        let c = trichotomy(&d3()).unwrap();
        match c.br1a {
            Some(Br1a {
                target: Br1aTarget::OutPlusFree { rank },
                ..
            }) => assert_eq!(rank, 3),
            other => panic!("unexpected branch {other:?}"),
        }
        assert!(c.ses.is_none());
        assert!(c.vastness.sq_universal);
    }

    #[test]
    fn trichotomy_kn_is_ses_branch() {
        let c = trichotomy(&k3()).unwrap();
        assert!(c.br1a.is_none());
        assert!(c.br1b.is_none());
        let ses = c.ses.expect("no SIL means ses data");
        assert_eq!(ses.blocks, vec![3]);
        assert_eq!(ses.depth_bound, 1);
        assert!(c.br2.is_some());
        assert!(!c.vastness.sq_universal);
        // the abelian class of size 3 still yields free subgroups
        assert!(c.free_subgroup);
    }

    #[test]
    fn trichotomy_case1_graph_is_br1b() {
        let c = trichotomy(&case1_graph()).unwrap();
        assert!(c.br1b.is_some());
        assert!(c.special_sil.is_some());
        assert!(c.largeness.is_some());
        assert!(c.ses.is_none());
    }

    #[test]
    fn p3_has_both_br1a_and_ses() {
        // an exposed overlap: the non-abelian pair gives (1a), and having no
        // SIL gives the short exact sequence, with a block of size 2
        let c = trichotomy(&p3()).unwrap();
        assert!(c.br1a.is_some());
        assert!(c.ses.is_some());
        assert!(c.br2.is_none());
        assert_eq!(c.ses.unwrap().blocks, vec![2, 1]);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_no_sil(&p4()).unwrap();
        assert_eq!(d.k, 0);
        assert_eq!(d.lambda.n(), 4);

        let d = decompose_no_sil(&d2()).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.lambda.n(), 0);

        // x, y joined to both ends of an edge
        let g = Graph::parse("vertices x y u v\nedges u-v x-u x-v y-u y-v").unwrap();
        let d = decompose_no_sil(&g).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.lambda.n(), 2);
        assert_eq!(d.lambda.edges().len(), 1);

        assert!(matches!(decompose_no_sil(&d3()), Err(RaagError::HasSil)));
    }

    #[test]
    fn decompose_is_consistent_on_no_sil_corpus() {
        for g in all_graphs_up_to(6).unwrap() {
            if !all_sils(&g).is_empty() {
                continue;
            }
            let d = decompose_no_sil(&g).expect("no-SIL graphs decompose");
            let co = equivalence_classes(&d.lambda);
            assert!(co
                .classes
                .iter()
                .all(|c| c.kind != ClassKind::Free || c.size == 1));
            assert_eq!(d.k * 2 + d.lambda.n(), g.n());
        }
    }

    #[test]
    fn depth_examples() {
        let d = depth_data(&k3());
        assert_eq!(d.max_depth, 1);
        assert!(d.depth.iter().all(|&x| x == 1));

        let g = p4();
        let d = depth_data(&g);
        let by_name = |n: &str| d.depth[g.vertex(n).unwrap().idx()];
        assert_eq!(by_name("a"), 1);
        assert_eq!(by_name("b"), 2);
        assert_eq!(by_name("c"), 2);
        assert_eq!(by_name("d"), 1);
        assert_eq!(d.max_depth, 2);
        assert_eq!(d.sets.len(), 2);
        assert!(d.sets[0].len() >= d.sets[1].len());

        let g = p3();
        let d = depth_data(&g);
        assert_eq!(d.depth, vec![1, 2, 1]);
    }

    #[test]
    fn p_generating_set_examples() {
        // P4: every partial conjugation is full-support hence inner; the
        // kernel is generated by the four cross-class transvections
        let g = p4();
        let p = p_generating_set(&g).unwrap();
        let display: Vec<String> = p.iter().map(|k| k.display(&g)).collect();
        assert_eq!(
            display,
            vec!["R[a<-b]", "R[a<-c]", "R[d<-b]", "R[d<-c]"]
        );

        assert!(p_generating_set(&k3()).unwrap().is_empty());
        assert!(p_generating_set(&d2()).unwrap().is_empty());
        assert!(p_generating_set(&d3()).is_err());
    }

    #[test]
    fn vastness_matches_condition_star_on_corpus() {
        for g in all_graphs_up_to(5).unwrap() {
            let r = vastness_report(&g);
            let star = condition_star(&g).is_some();
            assert_eq!(r.vastness.sq_universal, star);
            assert_eq!(r.vastness.involves_all_finite, star);
            assert_eq!(r.vastness.many_quasimorphisms_virtually, star);
            assert_eq!(r.vastness.not_boundedly_generated, star);
        }
    }

    #[test]
    fn theorem_two_coverage_on_corpus() {
        for g in all_graphs_up_to(5).unwrap() {
            let c = trichotomy(&g).unwrap();
            let star = c.star_condition.is_some();
            assert_eq!(c.br1a.is_some() || c.br1b.is_some(), star);
            assert_eq!(c.br2.is_some(), !star);
            assert_eq!(c.ses.is_some(), !c.has_sil);
            let day_free = c.has_sil || c.classes.classes.iter().any(|x| x.size >= 2);
            assert_eq!(c.free_subgroup, day_free);
        }
    }
}
