//! The JSON report schema. Field names are stable; the report round-trips
//! through serde.

use serde::{Deserialize, Serialize};

use crate::classify::{Br1aTarget, Classification, SesData, StarWitness, Vastness};
use crate::graph::Graph;
use crate::preorder::ClassKind;
use crate::rep::LargenessWitness;
use crate::sil::SpecialSil;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub members: Vec<String>,
    pub kind: ClassKind,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SilReport {
    pub x: String,
    pub y: String,
    pub z: String,
    pub component: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSilReport {
    pub sil: SilReport,
    pub classes: Vec<ClassReport>,
    pub class_union: Vec<String>,
    pub downward_closure: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StarWitnessReport {
    Sil(SilReport),
    NonAbelianClass(ClassReport),
    AbelianPair(ClassReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarConditionReport {
    pub holds: bool,
    pub witness: Option<StarWitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Br1aReport {
    pub target: Br1aTarget,
    pub class: ClassReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchesReport {
    pub br1a: Option<Br1aReport>,
    pub br1b: Option<SpecialSilReport>,
    pub br2: Option<SesReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesReport {
    pub blocks: Vec<usize>,
    pub kernel: String,
    pub depth_bound: usize,
}

/// The full per-graph report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphReport,
    pub classes: Vec<ClassReport>,
    pub sils: Vec<SilReport>,
    pub special_sil: Option<SpecialSilReport>,
    pub star_condition: StarConditionReport,
    pub branches: BranchesReport,
    pub ses: Option<SesReport>,
    pub vastness: Vastness,
    pub largeness: Option<LargenessWitness>,
    pub free_subgroup: bool,
}

fn class_report(g: &Graph, c: &crate::preorder::EquivClass) -> ClassReport {
    ClassReport {
        members: g.names_of(&c.members),
        kind: c.kind,
        size: c.size,
    }
}

fn sil_report(g: &Graph, s: &crate::sil::Sil) -> SilReport {
    SilReport {
        x: g.name(s.x).to_string(),
        y: g.name(s.y).to_string(),
        z: g.name(s.z).to_string(),
        component: g.names_of(&s.component_z),
    }
}

fn special_report(g: &Graph, sp: &SpecialSil) -> SpecialSilReport {
    SpecialSilReport {
        sil: sil_report(g, &sp.sil),
        classes: sp.classes.iter().map(|c| class_report(g, c)).collect(),
        class_union: g.names_of(&sp.gamma_s),
        downward_closure: g.names_of(&sp.gamma_leq_s),
    }
}

fn ses_report(s: &SesData) -> SesReport {
    SesReport {
        blocks: s.blocks.clone(),
        kernel: "finitely generated nilpotent".to_string(),
        depth_bound: s.depth_bound,
    }
}

impl Report {
    pub fn build(g: &Graph, c: &Classification) -> Report {
        Report {
            graph: GraphReport {
                vertices: g.vertices().map(|v| g.name(v).to_string()).collect(),
                edges: g
                    .edges()
                    .iter()
                    .map(|&(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
                    .collect(),
            },
            classes: c.classes.classes.iter().map(|x| class_report(g, x)).collect(),
            sils: c.sils.iter().map(|s| sil_report(g, s)).collect(),
            special_sil: c.special_sil.as_ref().map(|sp| special_report(g, sp)),
            star_condition: StarConditionReport {
                holds: c.star_condition.is_some(),
                witness: c.star_condition.as_ref().map(|w| match w {
                    StarWitness::Sil(s) => StarWitnessReport::Sil(sil_report(g, s)),
                    StarWitness::NonAbelianClass(cl) => {
                        StarWitnessReport::NonAbelianClass(class_report(g, cl))
                    }
                    StarWitness::AbelianPair(cl) => {
                        StarWitnessReport::AbelianPair(class_report(g, cl))
                    }
                }),
            },
            branches: BranchesReport {
                br1a: c.br1a.as_ref().map(|b| Br1aReport {
                    target: b.target.clone(),
                    class: class_report(g, &b.class),
                }),
                br1b: c.br1b.as_ref().map(|sp| special_report(g, sp)),
                br2: c.br2.as_ref().map(ses_report),
            },
            ses: c.ses.as_ref().map(ses_report),
            vastness: c.vastness,
            largeness: c.largeness.clone(),
            free_subgroup: c.free_subgroup,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering of the same data.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!(
            "graph: {} vertices, {} edges",
            self.graph.vertices.len(),
            self.graph.edges.len()
        ));
        line(format!("  vertices: {}", self.graph.vertices.join(" ")));
        if !self.graph.edges.is_empty() {
            let edges: Vec<String> = self
                .graph
                .edges
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect();
            line(format!("  edges: {}", edges.join(" ")));
        }
        line("classes:".to_string());
        for c in &self.classes {
            line(format!(
                "  {{{}}} {:?} (size {})",
                c.members.join(", "),
                c.kind,
                c.size
            ));
        }
        if self.sils.is_empty() {
            line("sils: none".to_string());
        } else {
            line(format!("sils: {}", self.sils.len()));
            for s in &self.sils {
                line(format!(
                    "  ({}, {} | {})  component {{{}}}",
                    s.x,
                    s.y,
                    s.z,
                    s.component.join(", ")
                ));
            }
        }
        if let Some(sp) = &self.special_sil {
            line(format!(
                "special sil: ({}, {} | {})",
                sp.sil.x, sp.sil.y, sp.sil.z
            ));
        }
        line(format!(
            "condition (*): {}",
            if self.star_condition.holds {
                "holds"
            } else {
                "fails"
            }
        ));
        match (&self.branches.br1a, &self.branches.br1b) {
            (Some(b), _) => {
                let target = match &b.target {
                    Br1aTarget::OutPlusFree { rank } => format!("Out^+(F_{rank})"),
                    Br1aTarget::Sl2Z => "SL_2(Z)".to_string(),
                };
                line(format!(
                    "branch (1a): maps onto {} through class {{{}}}",
                    target,
                    b.class.members.join(", ")
                ));
            }
            (None, Some(_)) => line("branch (1b): large via a special SIL".to_string()),
            _ => {}
        }
        if let Some(ses) = &self.ses {
            line(format!(
                "ses: kernel {} (depth bound {}), blocks {:?}",
                ses.kernel, ses.depth_bound, ses.blocks
            ));
        }
        line(format!(
            "vastness: sq_universal={} involves_all_finite={} many_quasimorphisms_virtually={} not_boundedly_generated={}",
            self.vastness.sq_universal,
            self.vastness.involves_all_finite,
            self.vastness.many_quasimorphisms_virtually,
            self.vastness.not_boundedly_generated
        ));
        match &self.largeness {
            Some(w) if w.certifies_large() => line(format!("largeness: large ({})", witness_tag(w))),
            Some(w) => line(format!("largeness: unknown ({})", witness_tag(w))),
            None if self.star_condition.holds => line("largeness: unknown".to_string()),
            None => line("largeness: unknown (no witness; condition (*) fails)".to_string()),
        }
        line(format!("free subgroup: {}", self.free_subgroup));
        out
    }
}

fn witness_tag(w: &LargenessWitness) -> &'static str {
    match w {
        LargenessWitness::ClassSize2 { .. } => "class of size 2",
        LargenessWitness::NonAbelianClassSize3 { .. } => "non-abelian class of size 3",
        LargenessWitness::SilHomology { .. } => "special SIL, homology representation",
        LargenessWitness::SilAmalgam { .. } => "special SIL, amalgam splitting",
        LargenessWitness::SilHnn { .. } => "special SIL, HNN splitting",
        LargenessWitness::MapsOntoOutFn { .. } => "surjection onto Out^+(F_n), n >= 4",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::trichotomy;
    use crate::testutil::*;

    #[test]
    fn json_round_trip() {
        for g in [p3(), p4(), d3(), k2(), case1_graph(), hnn_graph()] {
            let c = trichotomy(&g).unwrap();
            let report = Report::build(&g, &c);
            let json = report.to_json();
            let back: Report = serde_json::from_str(&json).unwrap();
            assert_eq!(report, back);
        }
    }

    #[test]
    fn schema_field_names() {
        let g = k2();
        let c = trichotomy(&g).unwrap();
        let report = Report::build(&g, &c);
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in [
            "graph",
            "classes",
            "sils",
            "special_sil",
            "star_condition",
            "branches",
            "ses",
            "vastness",
            "largeness",
            "free_subgroup",
        ] {
            assert!(value.get(key).is_some(), "missing key {key}");
        }
        assert!(value["star_condition"].get("holds").is_some());
        for key in [
            "sq_universal",
            "involves_all_finite",
            "many_quasimorphisms_virtually",
            "not_boundedly_generated",
        ] {
            assert!(value["vastness"].get(key).is_some(), "missing key {key}");
        }
        assert_eq!(value["ses"]["blocks"], serde_json::json!([2]));
        assert!(value["ses"].get("depth_bound").is_some());
    }

    #[test]
    fn text_rendering_mentions_the_verdicts() {
        let g = d3();
        let c = trichotomy(&g).unwrap();
        let text = Report::build(&g, &c).to_text();
        assert!(text.contains("condition (*): holds"));
        assert!(text.contains("branch (1a)"));
        assert!(text.contains("largeness: large"));
    }
}
