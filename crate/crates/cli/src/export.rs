//! Deterministic DOT and JSON renderings of exchange graphs and wall
//! diagrams.

use std::fmt::Write as _;

use serde::Serialize;
use tiltstab_core::hearts::{Heart, Workbench};
use tiltstab_core::homotopy::ObjId;
use tiltstab_core::linalg::q;
use tiltstab_core::stability::{ExchangeGraph, NodeStatus, TiltDirection, WallDiagram};

use crate::classify::HeartLabel;
use crate::document::format_rational;

#[derive(Serialize)]
pub struct PathTerm {
    pub coeff: String,
    /// Arrow names, first traversed first; empty for a vertex idempotent.
    pub path: Vec<String>,
    pub vertex: String,
}

#[derive(Serialize)]
pub struct DiffEntry {
    pub degree: i32,
    pub row: usize,
    pub col: usize,
    pub terms: Vec<PathTerm>,
}

#[derive(Serialize)]
pub struct ComplexJson {
    pub lo: i32,
    /// Vertex names of the indecomposable projective summands, per degree.
    pub terms: Vec<Vec<String>>,
    pub differential: Vec<DiffEntry>,
}

#[derive(Serialize)]
pub struct ObjectJson {
    pub id: ObjId,
    /// Class in the basis of simple modules.
    pub class: Vec<i64>,
    pub complex: ComplexJson,
}

#[derive(Serialize)]
pub struct NodeJson {
    pub id: usize,
    pub depth: usize,
    pub label: HeartLabel,
    pub name: String,
    pub status: String,
    pub simples: Vec<ObjectJson>,
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub simple: usize,
    pub direction: &'static str,
    pub gluing: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct GraphJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
pub struct HalfLineJson {
    pub direction: (i64, i64),
    pub normal: Vec<i64>,
    pub witnesses: Vec<ObjectJson>,
}

#[derive(Serialize)]
pub struct RegionJson {
    pub from: usize,
    pub to: usize,
    pub sample: (i64, i64),
    pub simples: Vec<ObjectJson>,
}

#[derive(Serialize)]
pub struct WallsJson {
    pub heart: Vec<ObjectJson>,
    pub half_lines: Vec<HalfLineJson>,
    pub regions: Vec<RegionJson>,
}

pub fn object_json(wb: &Workbench, id: ObjId) -> ObjectJson {
    let alg = wb.alg();
    let x = wb.cat().object(id);
    let names = alg.vertices();
    let mut terms = Vec::new();
    let mut differential = Vec::new();
    let lo = x.range().map_or(0, |r| r.0);
    if let Some((lo, hi)) = x.range() {
        for n in lo..=hi {
            terms.push(x.term(n).iter().map(|&v| names[v].clone()).collect());
            if n == hi {
                continue;
            }
            let d = x.diff(alg, n);
            for row in 0..d.rows() {
                for col in 0..d.cols() {
                    let terms: Vec<PathTerm> = d
                        .get(row, col)
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != q(0))
                        .map(|(k, c)| {
                            let p = &alg.basis()[k];
                            PathTerm {
                                coeff: format_rational(c),
                                path: p.arrows.iter().map(|&a| alg.arrows()[a].name.clone()).collect(),
                                vertex: names[p.source].clone(),
                            }
                        })
                        .collect();
                    if !terms.is_empty() {
                        differential.push(DiffEntry { degree: n, row, col, terms });
                    }
                }
            }
        }
    }
    ObjectJson { id, class: wb.cat().k_class(id).0, complex: ComplexJson { lo, terms, differential } }
}

fn simples_json(wb: &Workbench, h: &Heart) -> Vec<ObjectJson> {
    h.simples().iter().map(|&s| object_json(wb, s)).collect()
}

fn status_text(s: &NodeStatus) -> String {
    match s {
        NodeStatus::Finite(n) => format!("finite({n})"),
        NodeStatus::Failed(e) => format!("failed: {e}"),
        NodeStatus::Unchecked => "unchecked".into(),
    }
}

fn direction_text(d: TiltDirection) -> &'static str {
    match d {
        TiltDirection::Left => "left",
        TiltDirection::Right => "right",
    }
}

/// Graphviz rendering; nodes are filled white, grey or black for perverse,
/// constructible and semisimple hearts.
pub fn graph_to_dot(g: &ExchangeGraph, labels: &[HeartLabel]) -> String {
    let mut out = String::from("digraph exchange {\n  node [style=filled, fontcolor=black];\n");
    for (i, _) in g.nodes.iter().enumerate() {
        let label = labels.get(i).copied().unwrap_or_else(HeartLabel::unknown);
        let font = if label.tag.color() == "black" { ", fontcolor=white" } else { "" };
        writeln!(out, "  n{i} [label=\"{}\", fillcolor={}{font}];", label.name(), label.tag.color()).unwrap();
    }
    for e in &g.edges {
        let tag = match e.direction {
            TiltDirection::Left => 'L',
            TiltDirection::Right => 'R',
        };
        writeln!(out, "  n{} -> n{} [label=\"{tag}{}\"];", e.from, e.to, e.simple).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_json(wb: &Workbench, g: &ExchangeGraph, labels: &[HeartLabel]) -> String {
    let nodes = g
        .nodes
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let label = labels.get(i).copied().unwrap_or_else(HeartLabel::unknown);
            NodeJson {
                id: i,
                depth: g.depth[i],
                label,
                name: label.name(),
                status: status_text(&g.status[i]),
                simples: simples_json(wb, h),
            }
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .map(|e| EdgeJson {
            from: e.from,
            to: e.to,
            simple: e.simple,
            direction: direction_text(e.direction),
            gluing: e.gluing.matrix(),
        })
        .collect();
    serde_json::to_string_pretty(&GraphJson { nodes, edges }).expect("graph serializes")
}

pub fn walls_to_json(wb: &Workbench, d: &WallDiagram) -> String {
    let doc = WallsJson {
        heart: simples_json(wb, &d.heart),
        half_lines: d
            .half_lines
            .iter()
            .map(|l| HalfLineJson {
                direction: l.direction,
                normal: l.normal.clone(),
                witnesses: l.witnesses.iter().map(|&w| object_json(wb, w)).collect(),
            })
            .collect(),
        regions: d
            .regions
            .iter()
            .map(|r| RegionJson { from: r.from, to: r.to, sample: r.sample, simples: simples_json(wb, &r.heart) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("wall diagram serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_p1_heart, HeartTag, P1Objects};
    use tiltstab_core::quiver::vc_zero_algebra;

    #[test]
    fn empty_graph_renders() {
        let g = ExchangeGraph::default();
        assert_eq!(graph_to_dot(&g, &[]), "digraph exchange {\n  node [style=filled, fontcolor=black];\n}\n");
        let wb = Workbench::new(vc_zero_algebra()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&graph_to_json(&wb, &g, &[])).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn depth_two_graph_uses_three_colours_and_is_stable() {
        let render = || {
            let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
            let h = wb.standard_heart().unwrap();
            let refs = P1Objects::new(&mut wb).unwrap();
            let g = wb.explore(&h, 2, false);
            let labels: Vec<HeartLabel> =
                g.nodes.iter().map(|n| classify_p1_heart(&mut wb, &refs, n, 4).unwrap()).collect();
            assert!(labels.iter().all(|l| l.tag != HeartTag::Unknown));
            (graph_to_dot(&g, &labels), graph_to_json(&wb, &g, &labels))
        };
        let (dot, json) = render();
        for c in ["fillcolor=white", "fillcolor=grey", "fillcolor=black"] {
            assert!(dot.contains(c), "{c} missing");
        }
        assert_eq!(render(), (dot, json));
    }

    #[test]
    fn wall_json_has_one_region_per_torsion_theory() {
        let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
        let h = wb.standard_heart().unwrap();
        let d = wb.wall_diagram(&h).unwrap();
        let n = wb.torsion_theories(&h).unwrap().len();
        let v: serde_json::Value = serde_json::from_str(&walls_to_json(&wb, &d)).unwrap();
        assert_eq!(v["regions"].as_array().unwrap().len(), n);
    }
}
