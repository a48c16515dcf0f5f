//! Diagram rendering: ASCII rows, DOT graphs, and the canonical JSON object.
//!
//! The ASCII form mirrors the usual printed convention: a row of node glyphs
//! (`o` white, `*` black), a row of labels, a row of `x` marks under the
//! crossed nodes, and textual annotations for curved arrows and any edge that
//! does not join consecutive nodes. JSON is a canonical object
//! `{type, rank, black, arrows, cross}` with sorted arrays; `parse` of a
//! rendered object returns the identical diagram.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinGraph, SimpleType};
use crate::error::{Error, Result};
use crate::parabolic::CrossedDiagram;
use crate::satake::SatakeDiagram;

/// Canonical JSON shape of a cross-marked diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDto {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub black: Vec<usize>,
    pub arrows: Vec<[usize; 2]>,
    pub cross: Vec<usize>,
}

impl DiagramDto {
    pub fn of(cd: &CrossedDiagram) -> Self {
        let sat = cd.satake();
        let graph = sat.graph();
        let ty = if graph.components().len() == 1 {
            graph.components()[0].ty.letter().to_string()
        } else {
            graph.type_string()
        };
        DiagramDto {
            ty,
            rank: graph.rank(),
            black: sat.black().iter().copied().collect(),
            arrows: sat.arrows().iter().map(|&(a, b)| [a, b]).collect(),
            cross: cd.crosses().iter().copied().collect(),
        }
    }

    pub fn build(&self) -> Result<CrossedDiagram> {
        let parts = parse_type_string(&self.ty, self.rank)?;
        let graph = DynkinGraph::from_components(&parts)?;
        if graph.rank() != self.rank {
            return Err(Error::MalformedGraph(format!(
                "type {} has rank {}, object says {}",
                self.ty,
                graph.rank(),
                self.rank
            )));
        }
        let sat = SatakeDiagram::new(
            graph,
            self.black.iter().copied().collect(),
            self.arrows.iter().map(|p| (p[0], p[1])).collect(),
        )?;
        CrossedDiagram::new(Arc::new(sat), self.cross.iter().copied().collect())
    }
}

/// `"A"` with an explicit rank, or `"A3+B2"` style compounds.
pub fn parse_type_string(ty: &str, rank: usize) -> Result<Vec<(SimpleType, usize)>> {
    let bad = || Error::MalformedGraph(format!("bad type string `{ty}`"));
    if ty.len() == 1 {
        let t = SimpleType::from_letter(ty.chars().next().unwrap()).ok_or_else(bad)?;
        return Ok(vec![(t, rank)]);
    }
    let mut parts = Vec::new();
    for piece in ty.split('+') {
        let mut chars = piece.chars();
        let t = chars
            .next()
            .and_then(SimpleType::from_letter)
            .ok_or_else(bad)?;
        let r: usize = chars.as_str().parse().map_err(|_| bad())?;
        parts.push((t, r));
    }
    if parts.is_empty() {
        return Err(bad());
    }
    Ok(parts)
}

pub fn to_json(cd: &CrossedDiagram) -> serde_json::Value {
    serde_json::to_value(DiagramDto::of(cd)).expect("diagram serializes")
}

pub fn from_json(value: &serde_json::Value) -> Result<CrossedDiagram> {
    let dto: DiagramDto = serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
        position: 0,
        expected: format!("diagram object ({e})"),
    })?;
    dto.build()
}

/// Node labels: explicit ambient labels if provided, primed second-copy
/// labels for complex doubles, plain indices otherwise.
fn node_labels(cd: &CrossedDiagram, ambient: Option<&[usize]>) -> Vec<String> {
    let rank = cd.satake().rank();
    if let Some(labels) = ambient {
        return labels.iter().map(|n| n.to_string()).collect();
    }
    if let Some(partner) = complex_pairing(cd.satake()) {
        let mut out = vec![String::new(); rank];
        for i in 1..=rank {
            out[i - 1] = match partner[i - 1] {
                Some(first) => format!("{first}'"),
                None => i.to_string(),
            };
        }
        return out;
    }
    (1..=rank).map(|i| i.to_string()).collect()
}

/// For a diagram made of arrow-paired white component copies, maps each
/// second-copy node to its first-copy partner.
fn complex_pairing(sat: &SatakeDiagram) -> Option<Vec<Option<usize>>> {
    if !sat.black().is_empty() || sat.arrows().len() * 2 != sat.rank() {
        return None;
    }
    let comps = sat.graph().components();
    let comp_of = |n: usize| comps.iter().position(|c| c.nodes.contains(&n)).unwrap();
    let mut partner = vec![None; sat.rank()];
    for &(a, b) in sat.arrows() {
        if comp_of(a) == comp_of(b) {
            return None;
        }
        let (first, second) = if a < b { (a, b) } else { (b, a) };
        partner[second - 1] = Some(first);
    }
    Some(partner)
}

/// ASCII rows for a diagram; `ambient` supplies original node labels for
/// restricted diagrams.
pub fn to_ascii(cd: &CrossedDiagram, ambient: Option<&[usize]>) -> String {
    let sat = cd.satake();
    let graph = sat.graph();
    let rank = graph.rank();
    let labels = node_labels(cd, ambient);

    let mut glyphs = String::new();
    let mut label_row = String::new();
    let mut cross_row = String::new();
    let mut extra_edges = Vec::new();
    for i in 1..=rank {
        let width = labels[i - 1].len().max(1);
        let glyph = if sat.is_black(i) { '*' } else { 'o' };
        glyphs.push(glyph);
        for _ in 1..width {
            glyphs.push(' ');
        }
        label_row.push_str(&labels[i - 1]);
        cross_row.push(if cd.crosses().contains(&i) { 'x' } else { ' ' });
        for _ in 1..width {
            cross_row.push(' ');
        }
        if i < rank {
            let conn = match graph.edge_between(i, i + 1) {
                None => "  ",
                Some(e) => match (e.multiplicity, e.short) {
                    (1, _) => "--",
                    (2, Some(s)) if s == i + 1 => "=>",
                    (2, _) => "<=",
                    (3, Some(s)) if s == i + 1 => "#>",
                    (3, _) => "<#",
                    _ => "--",
                },
            };
            glyphs.push_str(conn);
            label_row.push_str(&" ".repeat(2 + width - labels[i - 1].len()));
            cross_row.push_str("  ");
        }
    }
    for e in graph.edges() {
        if e.b != e.a + 1 {
            extra_edges.push(format!("({},{})", labels[e.a - 1], labels[e.b - 1]));
        }
    }

    let mut out = String::new();
    out.push_str(glyphs.trim_end());
    out.push('\n');
    out.push_str(label_row.trim_end());
    out.push('\n');
    let crosses = cross_row.trim_end();
    if !crosses.is_empty() {
        out.push_str(crosses);
        out.push('\n');
    }
    if !extra_edges.is_empty() {
        out.push_str(&format!("edges: {}\n", extra_edges.join(" ")));
    }
    if !sat.arrows().is_empty() {
        let arcs: Vec<String> = sat
            .arrows()
            .iter()
            .map(|&(a, b)| format!("({}~{})", labels[a - 1], labels[b - 1]))
            .collect();
        out.push_str(&format!("arrows: {}\n", arcs.join(" ")));
    }
    out
}

/// DOT source for a diagram. Black nodes are filled, crosses appear as
/// peripheral `x` labels, curved arrows as dashed bidirectional arcs, and
/// multiple edges carry their multiplicity with the direction toward the
/// short root.
pub fn to_dot(cd: &CrossedDiagram, ambient: Option<&[usize]>) -> String {
    let sat = cd.satake();
    let labels = node_labels(cd, ambient);
    let mut out = String::from("graph diagram {\n  rankdir=LR;\n  node [shape=circle];\n");
    for i in 1..=sat.rank() {
        let mut attrs = vec![format!("label=\"{}\"", labels[i - 1])];
        if sat.is_black(i) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=black".into());
            attrs.push("fontcolor=white".into());
        }
        if cd.crosses().contains(&i) {
            attrs.push("xlabel=\"x\"".into());
        }
        out.push_str(&format!("  n{} [{}];\n", i, attrs.join(", ")));
    }
    for e in sat.graph().edges() {
        if e.multiplicity == 1 {
            out.push_str(&format!("  n{} -- n{};\n", e.a, e.b));
        } else {
            let toward = e.short.unwrap();
            let (tail, head) = if toward == e.b {
                (e.a, e.b)
            } else {
                (e.b, e.a)
            };
            out.push_str(&format!(
                "  n{} -- n{} [label=\"{}\", dir=forward];\n",
                tail, head, e.multiplicity
            ));
        }
    }
    for &(a, b) in sat.arrows() {
        out.push_str(&format!(
            "  n{} -- n{} [style=dashed, dir=both, constraint=false];\n",
            a, b
        ));
    }
    out.push_str("}\n");
    out
}
