//! Exact integer representations: the standard action on the abelianization
//! with its block structure, Torelli membership, the Torelli generating set,
//! and the double-cover homology representation.

mod homology;
mod largeness;
mod matrix;

pub use homology::{
    homology_matrix_closed_form, homology_matrix_oracle, homology_matrix_oracle_with_limit,
    ping_pong_free_check, projective_normalize, FreeCertificate, HomologyGenerator,
    HomologyRepInput, OracleDims, DEFAULT_ORACLE_LIMIT,
};
pub use largeness::{largeness_witness, LargenessWitness};
pub use matrix::IntMatrix;

use crate::autos::{Automorphism, GeneratorKind};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::preorder::{dominates, equivalence_classes, ClassOrder};

/// Mask of allowed nonzero entries for the image of the transvection and
/// partial-conjugation subgroup under the standard representation: with rows
/// and columns in enumeration order, entry (u, v) may be nonzero only when
/// v is dominated by u.
#[derive(Debug, Clone)]
pub struct BlockStructure {
    pub enumeration: Vec<VertexId>,
    pub sizes: Vec<usize>,
    allowed: Vec<Vec<bool>>,
}

impl BlockStructure {
    pub fn new(g: &Graph, order: &ClassOrder) -> BlockStructure {
        let e = &order.enumeration;
        let n = e.len();
        let mut allowed = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                allowed[i][j] = dominates(g, e[j], e[i]);
            }
        }
        BlockStructure {
            enumeration: e.clone(),
            sizes: order.block_sizes(),
            allowed,
        }
    }

    pub fn allows(&self, row: usize, col: usize) -> bool {
        self.allowed[row][col]
    }
}

/// The matrix of the action on the abelianization, with rows and columns in
/// the class-order enumeration: entry (u, v) is the exponent sum of u in the
/// image of v, so composition multiplies matrices in the same order.
pub fn standard_matrix(g: &Graph, f: &Automorphism) -> IntMatrix {
    standard_matrix_in(&equivalence_classes(g), f)
}

/// As `standard_matrix`, with a precomputed class order.
pub fn standard_matrix_in(order: &ClassOrder, f: &Automorphism) -> IntMatrix {
    let e = &order.enumeration;
    let n = e.len();
    let mut m = IntMatrix::zero(n);
    for (j, &vj) in e.iter().enumerate() {
        let exps = f.image_of(vj).exponent_vector();
        for (i, &vi) in e.iter().enumerate() {
            m.set(i, j, exps[vi.idx()]);
        }
    }
    m
}

/// True iff the matrix respects the block mask and has determinant +1.
pub fn check_block_structure(g: &Graph, m: &IntMatrix) -> Result<bool> {
    if m.dim() != g.n() {
        return Err(crate::error::RaagError::DimensionMismatch);
    }
    let order = equivalence_classes(g);
    let mask = BlockStructure::new(g, &order);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if m.get(i, j) != 0 && !mask.allows(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(m.det()? == 1)
}

/// Torelli membership: trivial action on the abelianization.
pub fn is_torelli(g: &Graph, f: &Automorphism) -> bool {
    standard_matrix(g, f).is_identity()
}

/// The Torelli generating set: every partial conjugation (one per connected
/// component of the complement of each star) and every valid commutator
/// transvection, in declaration order.
pub fn day_generating_set(g: &Graph) -> Vec<GeneratorKind> {
    let mut out = Vec::new();
    for multiplier in g.vertices() {
        for comp in g.components_minus(&g.star(multiplier)) {
            out.push(GeneratorKind::PartialConjugation {
                multiplier,
                support: comp,
            });
        }
    }
    for acted in g.vertices() {
        for left in g.vertices() {
            for right in g.vertices() {
                if left >= right {
                    continue;
                }
                if acted == left || acted == right {
                    continue;
                }
                if g.adjacent(left, right) {
                    continue;
                }
                if dominates(g, acted, left) && dominates(g, acted, right) {
                    out.push(GeneratorKind::CommutatorTransvection { acted, left, right });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{make_generator, out0_generators};
    use crate::corpus::all_graphs_up_to;
    use crate::graph::VertexSet;
    use crate::sil::all_sils;
    use crate::testutil::*;
    use std::sync::Arc;

    fn v(g: &Graph, n: &str) -> VertexId {
        g.vertex(n).unwrap()
    }

    #[test]
    fn identity_matrix() {
        let g = Arc::new(p3());
        let id = Automorphism::identity(g.clone());
        assert!(standard_matrix(&g, &id).is_identity());
    }

    #[test]
    fn transvection_matrix_in_enumeration_order() {
        let g = Arc::new(p3());
        // enumeration is (a, c, b); R[a<-b] adds one at (row b, column a)
        let r = make_generator(
            &g,
            &GeneratorKind::TransvectionRight {
                acted: v(&g, "a"),
                multiplier: v(&g, "b"),
            },
        )
        .unwrap();
        let m = standard_matrix(&g, &r);
        let mut expect = IntMatrix::identity(3);
        expect.set(2, 0, 1);
        assert_eq!(m, expect);
    }

    #[test]
    fn partial_conjugations_are_torelli() {
        let d = Arc::new(d3());
        let c = make_generator(
            &d,
            &GeneratorKind::PartialConjugation {
                multiplier: v(&d, "x"),
                support: VertexSet::singleton(v(&d, "z")),
            },
        )
        .unwrap();
        assert!(is_torelli(&d, &c));
        assert!(standard_matrix(&d, &c).is_identity());
    }

    #[test]
    fn commutator_transvections_are_torelli() {
        let d = Arc::new(d3());
        let k = make_generator(
            &d,
            &GeneratorKind::CommutatorTransvection {
                acted: v(&d, "x"),
                left: v(&d, "y"),
                right: v(&d, "z"),
            },
        )
        .unwrap();
        assert!(is_torelli(&d, &k));
    }

    #[test]
    fn transvections_are_not_torelli() {
        let g = Arc::new(p3());
        let r = make_generator(
            &g,
            &GeneratorKind::TransvectionRight {
                acted: v(&g, "a"),
                multiplier: v(&g, "c"),
            },
        )
        .unwrap();
        assert!(!is_torelli(&g, &r));
    }

    #[test]
    fn sigma_is_multiplicative_on_random_products() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for g in [Arc::new(p4()), Arc::new(star()), Arc::new(case1_graph())] {
            let order = equivalence_classes(&g);
            let gens: Vec<Automorphism> = out0_generators(&g)
                .iter()
                .map(|k| make_generator(&g, k).unwrap())
                .collect();
            for _ in 0..400 {
                let f = &gens[rng.gen_range(0..gens.len())];
                let h = &gens[rng.gen_range(0..gens.len())];
                let fh = Automorphism::compose(f, h).unwrap();
                let lhs = standard_matrix_in(&order, &fh);
                let rhs = standard_matrix_in(&order, f)
                    .mul(&standard_matrix_in(&order, h))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn block_structure_accepts_out0_and_rejects_inversions() {
        for g in [Arc::new(p4()), Arc::new(p3()), Arc::new(star())] {
            for k in out0_generators(&g) {
                let f = make_generator(&g, &k).unwrap();
                assert!(
                    check_block_structure(&g, &standard_matrix(&g, &f)).unwrap(),
                    "generator {} breaks the mask on {}",
                    k.display(&g),
                    g.to_text()
                );
            }
            let inv = make_generator(
                &g,
                &GeneratorKind::Inversion {
                    vertex: VertexId(0),
                },
            )
            .unwrap();
            assert!(!check_block_structure(&g, &standard_matrix(&g, &inv)).unwrap());
        }
    }

    #[test]
    fn mask_violation_detected() {
        let g = p3();
        // entry at (row a-position 0, column b-position 2) requires b <= a: false
        let mut m = IntMatrix::identity(3);
        m.set(0, 2, 5);
        assert!(!check_block_structure(&g, &m).unwrap());
    }

    #[test]
    fn day_set_p4() {
        let g = p4();
        let day = day_generating_set(&g);
        let pcs: Vec<String> = day
            .iter()
            .filter(|k| matches!(k, GeneratorKind::PartialConjugation { .. }))
            .map(|k| k.display(&g))
            .collect();
        assert_eq!(
            pcs,
            vec!["C[a;Z=c,d]", "C[b;Z=d]", "C[c;Z=a]", "C[d;Z=a,b]"]
        );
        assert!(!day
            .iter()
            .any(|k| matches!(k, GeneratorKind::CommutatorTransvection { .. })));
    }

    #[test]
    fn day_set_kn_empty_d3_has_commutators() {
        assert!(day_generating_set(&k3()).is_empty());

        let d = d3();
        let day = day_generating_set(&d);
        let pcs = day
            .iter()
            .filter(|k| matches!(k, GeneratorKind::PartialConjugation { .. }))
            .count();
        assert_eq!(pcs, 6);
        let ks: Vec<String> = day
            .iter()
            .filter(|k| matches!(k, GeneratorKind::CommutatorTransvection { .. }))
            .map(|k| k.display(&d))
            .collect();
        assert_eq!(ks, vec!["K[x;y,z]", "K[y;x,z]", "K[z;x,y]"]);
    }

    #[test]
    fn no_sil_graphs_have_no_commutator_transvections() {
        for g in all_graphs_up_to(5).unwrap() {
            if !all_sils(&g).is_empty() {
                continue;
            }
            assert!(
                !day_generating_set(&g)
                    .iter()
                    .any(|k| matches!(k, GeneratorKind::CommutatorTransvection { .. })),
                "no-SIL graph {} has a commutator transvection",
                g.to_text()
            );
        }
    }

    #[test]
    fn day_generators_validate_and_are_torelli() {
        for g in [Arc::new(p4()), Arc::new(d3()), Arc::new(case1_graph())] {
            for k in day_generating_set(&g) {
                let f = make_generator(&g, &k).unwrap();
                assert!(is_torelli(&g, &f));
            }
        }
    }
}
