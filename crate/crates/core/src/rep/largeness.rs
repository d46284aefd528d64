//! Largeness certificates for the outer automorphism group, following the
//! witness hierarchy: an equivalence class of size two, a non-abelian class
//! of size three, or (all classes abelian + SIL) the special-SIL route via
//! either the homology representation or an amalgam/HNN splitting.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::preorder::{equivalence_classes, ClassKind};
use crate::sil::{all_sils, find_special_sil, sil_generator_menu};

use super::homology::{
    homology_matrix_closed_form, ping_pong_free_check, FreeCertificate, HomologyGenerator,
    HomologyRepInput,
};
use super::matrix::IntMatrix;

/// Everything needed to audit one largeness claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LargenessWitness {
    /// An equivalence class of size two maps onto SL2(Z) (abelian) or the
    /// plus part of Out(F2) (free); both are large.
    ClassSize2 {
        class: Vec<String>,
        abelian: bool,
        target: String,
    },
    /// A free class of size three maps onto the plus part of Out(F3), which
    /// is large.
    NonAbelianClassSize3 { class: Vec<String> },
    /// Special SIL with the separation-driven partial conjugations present:
    /// the three conjugation families have the listed matrices under the
    /// homology representation, and the two products certify a free pair.
    SilHomology {
        sil: [String; 3],
        class_sizes: (usize, usize, usize),
        conjugate_x_by_y: IntMatrix,
        conjugate_y_by_z: IntMatrix,
        conjugate_z_by_x: IntMatrix,
        free_pair_certificate: FreeCertificate,
    },
    /// Special SIL without those conjugations and with x, y incomparable:
    /// the lifted automorphism group splits as an amalgam of two parabolic
    /// factors over their common quotient, and reducing the abelian parts
    /// mod 3 gives a virtually free, non-virtually-cyclic quotient.
    SilAmalgam {
        sil: [String; 3],
        a: usize,
        b: usize,
        factors: [String; 2],
        edge_group: String,
        finite_quotient: String,
    },
    /// Special SIL without those conjugations and with y below x (forcing
    /// b = 1): the lifted group is an HNN extension, with the same mod-3
    /// largeness conclusion.
    SilHnn {
        sil: [String; 3],
        a: usize,
        vertex_group: String,
        edge_group: String,
        finite_quotient: String,
    },
    /// Informational only: a free class of size n >= 4 gives a surjection
    /// onto the plus part of Out(F_n), whose largeness is an open question.
    /// Never counts as a largeness certificate.
    MapsOntoOutFn { n: usize },
}

impl LargenessWitness {
    /// Whether this witness actually certifies largeness.
    pub fn certifies_large(&self) -> bool {
        !matches!(self, LargenessWitness::MapsOntoOutFn { .. })
    }
}

/// Search for a largeness witness. The SIL route is preferred when it
/// applies (it carries the computational content), then a class of size two,
/// then a non-abelian class of size three. A free class of size four or more
/// yields only the informational surjection.
pub fn largeness_witness(g: &Graph) -> Result<Option<LargenessWitness>> {
    let co = equivalence_classes(g);
    let all_abelian = co.classes.iter().all(|c| c.kind.is_abelian());
    if all_abelian && !all_sils(g).is_empty() {
        let sp = find_special_sil(g)?.expect("all-abelian graph with a SIL has a special SIL");
        let menu = sil_generator_menu(g, &sp)?;
        let sil_names = [
            g.name(sp.sil.x).to_string(),
            g.name(sp.sil.y).to_string(),
            g.name(sp.sil.z).to_string(),
        ];
        let (a, b, c) = (menu.a, menu.b, menu.c);
        if menu.has_extra_conjugations() {
            let mk = |generator| {
                homology_matrix_closed_form(&HomologyRepInput { a, b, c, generator })
            };
            let cxy = mk(HomologyGenerator::ConjugateXByY { j: 1 })?;
            let cyz = mk(HomologyGenerator::ConjugateYByZ { k: 1 })?;
            let czx = mk(HomologyGenerator::ConjugateZByX { i: 1 })?;
            let p1 = cxy.mul(&cyz)?;
            let p2 = cyz.mul(&czx)?;
            let cert = ping_pong_free_check(&p1, &p2, 4)?;
            return Ok(Some(LargenessWitness::SilHomology {
                sil: sil_names,
                class_sizes: (a, b, c),
                conjugate_x_by_y: cxy,
                conjugate_y_by_z: cyz,
                conjugate_z_by_x: czx,
                free_pair_certificate: cert,
            }));
        }
        if menu.y_to_x_transvections.is_empty() {
            return Ok(Some(LargenessWitness::SilAmalgam {
                sil: sil_names,
                a,
                b,
                factors: [
                    format!("(SL_{a}(Z) x SL_{b}(Z)) ⋉ Z^{a}"),
                    format!("(SL_{a}(Z) x SL_{b}(Z)) ⋉ Z^{b}"),
                ],
                edge_group: format!("SL_{a}(Z) x SL_{b}(Z)"),
                finite_quotient: format!(
                    "[(SL_{a}(Z_3) x SL_{b}(Z_3)) ⋉ Z_3^{a}] * over the edge group * \
                     [(SL_{a}(Z_3) x SL_{b}(Z_3)) ⋉ Z_3^{b}]: virtually free, \
                     not virtually cyclic"
                ),
            }));
        }
        // y below x forces the y class to be a single vertex
        debug_assert_eq!(b, 1);
        return Ok(Some(LargenessWitness::SilHnn {
            sil: sil_names,
            a,
            vertex_group: format!("SL_{a}(Z) ⋉ (Z^{a} x Z^{a})"),
            edge_group: format!("SL_{a}(Z) ⋉ Z^{a}"),
            finite_quotient: format!(
                "HNN extension of SL_{a}(Z_3) ⋉ (Z_3^{a} x Z_3^{a}) over \
                 SL_{a}(Z_3) ⋉ Z_3^{a}: virtually free, not virtually cyclic"
            ),
        }));
    }

    if let Some(cls) = co.classes.iter().find(|c| c.size == 2) {
        let abelian = cls.kind == ClassKind::Abelian;
        return Ok(Some(LargenessWitness::ClassSize2 {
            class: g.names_of(&cls.members),
            abelian,
            target: if abelian {
                "SL_2(Z)".into()
            } else {
                "Out^+(F_2)".into()
            },
        }));
    }
    if let Some(cls) = co
        .classes
        .iter()
        .find(|c| c.kind == ClassKind::Free && c.size == 3)
    {
        return Ok(Some(LargenessWitness::NonAbelianClassSize3 {
            class: g.names_of(&cls.members),
        }));
    }
    if let Some(cls) = co
        .classes
        .iter()
        .filter(|c| c.kind == ClassKind::Free && c.size >= 4)
        .max_by_key(|c| c.size)
    {
        return Ok(Some(LargenessWitness::MapsOntoOutFn { n: cls.size }));
    }
    Ok(None)
}
