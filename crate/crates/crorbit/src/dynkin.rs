//! Dynkin graphs of finite type and their Cartan matrices.
//!
//! A graph is a disjoint union of simple components of type A, B, C, D,
//! E6-E8, F4 or G2, with nodes numbered `1..=rank` so that each component
//! occupies a consecutive index range in Bourbaki order. Multiple edges carry
//! the endpoint of the shorter root.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank for a single connected component.
pub const MAX_COMPONENT_RANK: usize = 8;

/// Simple type letters of the finite Dynkin diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'A' => Some(SimpleType::A),
            'B' => Some(SimpleType::B),
            'C' => Some(SimpleType::C),
            'D' => Some(SimpleType::D),
            'E' => Some(SimpleType::E),
            'F' => Some(SimpleType::F),
            'G' => Some(SimpleType::G),
            _ => None,
        }
    }

    /// Ranks at which the type exists as a connected diagram.
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 4,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        }
    }

    /// Number of roots of the component, by the classical count.
    pub fn root_count(self, rank: usize) -> usize {
        match self {
            SimpleType::A => rank * (rank + 1),
            SimpleType::B | SimpleType::C => 2 * rank * rank,
            SimpleType::D => 2 * rank * (rank - 1),
            SimpleType::E => match rank {
                6 => 72,
                7 => 126,
                8 => 240,
                _ => unreachable!("rank checked at construction"),
            },
            SimpleType::F => 48,
            SimpleType::G => 12,
        }
    }

    /// Bourbaki edge template at positions `1..=rank`:
    /// `(a, b, multiplicity, short position)`.
    fn template(self, rank: usize) -> Vec<(usize, usize, u8, Option<usize>)> {
        let chain = |n: usize| (1..n).map(|i| (i, i + 1, 1, None)).collect::<Vec<_>>();
        match self {
            SimpleType::A => chain(rank),
            SimpleType::B => {
                let mut e = chain(rank - 1);
                e.push((rank - 1, rank, 2, Some(rank)));
                e
            }
            SimpleType::C => {
                let mut e = chain(rank - 1);
                e.push((rank - 1, rank, 2, Some(rank - 1)));
                e
            }
            SimpleType::D => {
                let mut e = chain(rank - 1);
                e.push((rank - 2, rank, 1, None));
                e
            }
            SimpleType::E => {
                let mut e = vec![(1, 3, 1, None), (2, 4, 1, None)];
                for i in 3..rank {
                    e.push((i, i + 1, 1, None));
                }
                e
            }
            SimpleType::F => vec![(1, 2, 1, None), (2, 3, 2, Some(3)), (3, 4, 1, None)],
            SimpleType::G => vec![(1, 2, 3, Some(1))],
        }
    }

    fn candidates(rank: usize) -> Vec<SimpleType> {
        use SimpleType::*;
        [A, B, C, D, E, F, G]
            .into_iter()
            .filter(|t| t.admits_rank(rank))
            .collect()
    }
}

/// Undirected edge between two nodes, with the short endpoint recorded for
/// multiplicities 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub multiplicity: u8,
    pub short: Option<usize>,
}

impl Edge {
    pub fn simple(a: usize, b: usize) -> Self {
        Edge {
            a,
            b,
            multiplicity: 1,
            short: None,
        }
    }

    pub fn multiple(a: usize, b: usize, multiplicity: u8, short: usize) -> Self {
        Edge {
            a,
            b,
            multiplicity,
            short: Some(short),
        }
    }

    fn normalized(mut self) -> Self {
        if self.a > self.b {
            std::mem::swap(&mut self.a, &mut self.b);
        }
        self
    }

    pub fn joins(&self, x: usize, y: usize) -> bool {
        (self.a == x && self.b == y) || (self.a == y && self.b == x)
    }
}

/// One connected component together with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub ty: SimpleType,
    pub rank: usize,
    /// Node ids of the component; position `k` holds the node at Bourbaki
    /// position `k + 1`.
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn node_set(&self) -> BTreeSet<usize> {
        self.nodes.iter().copied().collect()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ty.letter(), self.rank)
    }
}

/// A validated union of simple Dynkin diagrams in canonical numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    rank: usize,
    edges: Vec<Edge>,
    components: Vec<Component>,
    cartan: Vec<Vec<i32>>,
}

impl DynkinGraph {
    /// Builds the canonical graph whose components are the given simple types,
    /// numbered consecutively in Bourbaki order.
    pub fn from_components(parts: &[(SimpleType, usize)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::MalformedGraph("no components".into()));
        }
        let mut edges = Vec::new();
        let mut components = Vec::new();
        let mut offset = 0usize;
        for &(ty, rank) in parts {
            if !ty.admits_rank(rank) {
                return Err(Error::MalformedGraph(format!(
                    "type {} does not exist at rank {rank}",
                    ty.letter()
                )));
            }
            if rank > MAX_COMPONENT_RANK {
                return Err(Error::UnsupportedRank(rank));
            }
            for (a, b, m, short) in ty.template(rank) {
                edges.push(Edge {
                    a: a + offset,
                    b: b + offset,
                    multiplicity: m,
                    short: short.map(|s| s + offset),
                });
            }
            components.push(Component {
                ty,
                rank,
                nodes: (offset + 1..=offset + rank).collect(),
            });
            offset += rank;
        }
        edges.sort_by_key(|e| (e.a, e.b));
        let cartan = cartan_matrix(offset, &edges);
        Ok(DynkinGraph {
            rank: offset,
            edges,
            components,
            cartan,
        })
    }

    /// Validates raw edge data. The numbering must already be canonical:
    /// components occupy consecutive ranges in Bourbaki order.
    pub fn from_edges(rank: usize, edges: Vec<Edge>) -> Result<Self> {
        let (graph, relabel) = Self::normalize(rank, edges)?;
        if relabel.iter().enumerate().any(|(i, &n)| n != i + 1) {
            return Err(Error::MalformedGraph(
                "nodes are not in canonical Bourbaki order".into(),
            ));
        }
        Ok(graph)
    }

    /// Classifies an arbitrary-numbered forest and returns the canonical graph
    /// together with the original label of each canonical node: canonical node
    /// `i + 1` corresponds to input node `labels[i]`.
    pub fn normalize(rank: usize, edges: Vec<Edge>) -> Result<(Self, Vec<usize>)> {
        if rank == 0 {
            return Err(Error::MalformedGraph("empty graph".into()));
        }
        let edges: Vec<Edge> = edges.into_iter().map(Edge::normalized).collect();
        for e in &edges {
            for n in [e.a, e.b] {
                if n == 0 || n > rank {
                    return Err(Error::MalformedGraph(format!(
                        "edge endpoint {n} out of range"
                    )));
                }
            }
            if e.a == e.b {
                return Err(Error::MalformedGraph(format!("loop at node {}", e.a)));
            }
            match (e.multiplicity, e.short) {
                (1, None) => {}
                (2 | 3, Some(s)) if s == e.a || s == e.b => {}
                (2 | 3, _) => {
                    return Err(Error::MalformedGraph(format!(
                        "edge ({},{}) of multiplicity {} lacks a valid short endpoint",
                        e.a, e.b, e.multiplicity
                    )));
                }
                (m, _) => {
                    return Err(Error::MalformedGraph(format!("edge multiplicity {m}")));
                }
            }
        }
        for i in 1..edges.len() {
            if edges[i - 1].joins(edges[i].a, edges[i].b) {
                let e = &edges[i];
                return Err(Error::MalformedGraph(format!(
                    "duplicate edge ({},{})",
                    e.a, e.b
                )));
            }
        }

        // Split into connected components, ordered by smallest node.
        let mut seen = vec![false; rank + 1];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 1..=rank {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut nodes = Vec::new();
            seen[start] = true;
            while let Some(n) = stack.pop() {
                nodes.push(n);
                for e in &edges {
                    let other = if e.a == n {
                        e.b
                    } else if e.b == n {
                        e.a
                    } else {
                        continue;
                    };
                    if !seen[other] {
                        seen[other] = true;
                        stack.push(other);
                    }
                }
            }
            nodes.sort_unstable();
            comps.push(nodes);
        }

        let mut parts = Vec::new();
        let mut labels = Vec::new();
        for nodes in &comps {
            if nodes.len() > MAX_COMPONENT_RANK {
                return Err(Error::UnsupportedRank(nodes.len()));
            }
            let local: Vec<Edge> = edges
                .iter()
                .filter(|e| nodes.contains(&e.a))
                .copied()
                .collect();
            let (ty, ordering) = classify_component(nodes, &local)?;
            parts.push((ty, nodes.len()));
            labels.extend(ordering);
        }
        let graph = Self::from_components(&parts)?;
        Ok((graph, labels))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Cartan matrix entry `<alpha_j, alpha_i^vee>` (1-based nodes).
    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.cartan[i - 1][j - 1]
    }

    pub fn component_of(&self, node: usize) -> &Component {
        self.components
            .iter()
            .find(|c| c.nodes.contains(&node))
            .expect("node within rank")
    }

    /// Nodes adjacent to `node`.
    pub fn neighbors(&self, node: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.a == node {
                    Some(e.b)
                } else if e.b == node {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn edge_between(&self, x: usize, y: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.joins(x, y))
    }

    /// Total number of roots, component by component.
    pub fn root_count(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.ty.root_count(c.rank))
            .sum()
    }

    /// Compact text form such as `A3` or `A1+A1`.
    pub fn type_string(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(Component::label).collect();
        parts.join("+")
    }
}

fn cartan_matrix(rank: usize, edges: &[Edge]) -> Vec<Vec<i32>> {
    let mut m = vec![vec![0i32; rank]; rank];
    for i in 0..rank {
        m[i][i] = 2;
    }
    for e in edges {
        let (a, b) = (e.a - 1, e.b - 1);
        match e.short {
            None => {
                m[a][b] = -1;
                m[b][a] = -1;
            }
            Some(s) => {
                let (short, long) = if s == e.a { (a, b) } else { (b, a) };
                // The coroot of the short root pairs to -multiplicity
                // against the long root.
                m[short][long] = -(e.multiplicity as i32);
                m[long][short] = -1;
            }
        }
    }
    m
}

/// Matches one connected component against the Bourbaki templates. Returns
/// the type and the node at each Bourbaki position, choosing the
/// lexicographically smallest ordering among valid embeddings.
fn classify_component(nodes: &[usize], edges: &[Edge]) -> Result<(SimpleType, Vec<usize>)> {
    let rank = nodes.len();
    if edges.len() != rank - 1 {
        return Err(Error::MalformedGraph(format!(
            "component {{{}}} has {} edges, a tree needs {}",
            crate::error::fmt_node_set(&nodes.iter().copied().collect()),
            edges.len(),
            rank - 1
        )));
    }
    for ty in SimpleType::candidates(rank) {
        let template = ty.template(rank);
        let mut best: Option<Vec<usize>> = None;
        let mut assignment = vec![0usize; rank];
        search_embedding(nodes, edges, &template, &mut assignment, 0, &mut best);
        if let Some(ordering) = best {
            return Ok((ty, ordering));
        }
    }
    Err(Error::MalformedGraph(format!(
        "component {{{}}} matches no simple type",
        crate::error::fmt_node_set(&nodes.iter().copied().collect())
    )))
}

fn search_embedding(
    nodes: &[usize],
    edges: &[Edge],
    template: &[(usize, usize, u8, Option<usize>)],
    assignment: &mut Vec<usize>,
    pos: usize,
    best: &mut Option<Vec<usize>>,
) {
    let rank = nodes.len();
    if pos == rank {
        if template.iter().all(|&(a, b, m, short)| {
            edges.iter().any(|e| {
                e.joins(assignment[a - 1], assignment[b - 1])
                    && e.multiplicity == m
                    && e.short == short.map(|s| assignment[s - 1])
            })
        }) {
            match best {
                Some(b) if *b <= *assignment => {}
                _ => *best = Some(assignment.clone()),
            }
        }
        return;
    }
    for &n in nodes {
        if assignment[..pos].contains(&n) {
            continue;
        }
        // Prune: every template edge with both endpoints placed must exist.
        assignment[pos] = n;
        let ok = template.iter().all(|&(a, b, _, _)| {
            if a <= pos + 1 && b <= pos + 1 {
                edges
                    .iter()
                    .any(|e| e.joins(assignment[a - 1], assignment[b - 1]))
            } else {
                true
            }
        });
        // Degree must not exceed what the template allows for placed nodes.
        if ok {
            search_embedding(nodes, edges, template, assignment, pos + 1, best);
        }
    }
    assignment[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_all_simple_types() {
        for (ty, rank) in [
            (SimpleType::A, 1),
            (SimpleType::A, 5),
            (SimpleType::B, 2),
            (SimpleType::C, 3),
            (SimpleType::D, 4),
            (SimpleType::E, 6),
            (SimpleType::E, 7),
            (SimpleType::E, 8),
            (SimpleType::F, 4),
            (SimpleType::G, 2),
        ] {
            let g = DynkinGraph::from_components(&[(ty, rank)]).unwrap();
            assert_eq!(g.rank(), rank);
            assert_eq!(g.components().len(), 1);
            assert_eq!(g.components()[0].ty, ty);
        }
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(DynkinGraph::from_components(&[(SimpleType::D, 3)]).is_err());
        assert!(DynkinGraph::from_components(&[(SimpleType::E, 5)]).is_err());
        assert!(DynkinGraph::from_components(&[(SimpleType::G, 3)]).is_err());
        assert_eq!(
            DynkinGraph::from_components(&[(SimpleType::A, 9)]),
            Err(Error::UnsupportedRank(9))
        );
    }

    #[test]
    fn cartan_entries_match_conventions() {
        let a3 = DynkinGraph::from_components(&[(SimpleType::A, 3)]).unwrap();
        assert_eq!(a3.cartan(1, 2), -1);
        assert_eq!(a3.cartan(1, 3), 0);

        // B2: alpha_2 short, so row 2 carries the -2.
        let b2 = DynkinGraph::from_components(&[(SimpleType::B, 2)]).unwrap();
        assert_eq!(b2.cartan(2, 1), -2);
        assert_eq!(b2.cartan(1, 2), -1);

        // C2: alpha_1 short.
        let c2 = DynkinGraph::from_components(&[(SimpleType::C, 2)]).unwrap();
        assert_eq!(c2.cartan(1, 2), -2);
        assert_eq!(c2.cartan(2, 1), -1);

        // G2: alpha_1 short.
        let g2 = DynkinGraph::from_components(&[(SimpleType::G, 2)]).unwrap();
        assert_eq!(g2.cartan(1, 2), -3);
        assert_eq!(g2.cartan(2, 1), -1);

        // F4: alpha_3 short.
        let f4 = DynkinGraph::from_components(&[(SimpleType::F, 4)]).unwrap();
        assert_eq!(f4.cartan(3, 2), -2);
        assert_eq!(f4.cartan(2, 3), -1);
    }

    #[test]
    fn classifies_relabelled_components() {
        // Path 2-1-3 is A3 with center at Bourbaki position 2.
        let (g, labels) =
            DynkinGraph::normalize(3, vec![Edge::simple(1, 2), Edge::simple(1, 3)]).unwrap();
        assert_eq!(g.type_string(), "A3");
        assert_eq!(labels, vec![2, 1, 3]);

        // Double edge with short end first is C2 in Bourbaki order,
        // classified as B2 with the long root first.
        let (g, labels) = DynkinGraph::normalize(2, vec![Edge::multiple(1, 2, 2, 1)]).unwrap();
        assert_eq!(g.type_string(), "B2");
        assert_eq!(labels, vec![2, 1]);
    }

    #[test]
    fn from_edges_requires_canonical_order() {
        let err = DynkinGraph::from_edges(3, vec![Edge::simple(1, 2), Edge::simple(1, 3)]);
        assert!(matches!(err, Err(Error::MalformedGraph(_))));
        let ok = DynkinGraph::from_edges(3, vec![Edge::simple(1, 2), Edge::simple(2, 3)]);
        assert!(ok.is_ok());
    }

    #[test]
    fn rejects_cycles_and_junk() {
        let err = DynkinGraph::normalize(
            3,
            vec![Edge::simple(1, 2), Edge::simple(2, 3), Edge::simple(1, 3)],
        );
        assert!(matches!(err, Err(Error::MalformedGraph(_))));

        // Star with four legs matches no simple type.
        let err = DynkinGraph::normalize(
            5,
            vec![
                Edge::simple(1, 2),
                Edge::simple(1, 3),
                Edge::simple(1, 4),
                Edge::simple(1, 5),
            ],
        );
        assert!(matches!(err, Err(Error::MalformedGraph(_))));
    }

    #[test]
    fn disconnected_graphs_keep_component_order() {
        let g = DynkinGraph::from_components(&[(SimpleType::A, 2), (SimpleType::B, 2)]).unwrap();
        assert_eq!(g.rank(), 4);
        assert_eq!(g.type_string(), "A2+B2");
        assert_eq!(g.components()[1].nodes, vec![3, 4]);
        assert_eq!(g.cartan(4, 3), -2);
    }
}
