//! Satake diagrams and the conjugation they induce on the root lattice.
//!
//! A diagram is a Dynkin graph with a black node set and an involutive
//! arrow matching on white nodes. Validation derives the node involution
//! `epsilon` (arrows on white nodes, the action of `-w0(black)` on black
//! nodes) and the lattice involution `sigma = w0(black) . epsilon`, then
//! checks every structural invariant of the conjugation. Both are stored
//! with the diagram; everything is immutable afterwards.

use std::collections::BTreeSet;

use crate::dynkin::DynkinGraph;
use crate::error::{fmt_node_set, Error, Result};
use crate::roots::{LatticeMap, RootIdx, RootSet, RootSystem};

/// Behaviour of a root under the conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    /// `sigma(alpha) = alpha`
    Real,
    /// `sigma(alpha) = -alpha`
    Imaginary,
    /// neither
    Complex,
}

/// The involution induced on the root lattice by a real form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugation {
    map: LatticeMap,
    perm: Vec<RootIdx>,
    epsilon: Vec<usize>,
    imaginary: RootSet,
}

impl Conjugation {
    /// Image of a root index under sigma.
    pub fn sigma(&self, idx: RootIdx) -> RootIdx {
        self.perm[idx as usize]
    }

    /// Image of a coefficient vector under sigma.
    pub fn sigma_coeffs(&self, coeffs: &[i32]) -> Vec<i32> {
        self.map.apply(coeffs)
    }

    /// Elementwise image of a root set.
    pub fn sigma_set(&self, set: &RootSet) -> RootSet {
        set.iter().map(|&i| self.sigma(i)).collect()
    }

    /// The node involution drawn as arrows (1-based).
    pub fn epsilon(&self, node: usize) -> usize {
        self.epsilon[node - 1]
    }

    pub fn epsilon_map(&self) -> &[usize] {
        &self.epsilon
    }

    /// The imaginary roots, i.e. those with `sigma(alpha) = -alpha`.
    pub fn imaginary(&self) -> &RootSet {
        &self.imaginary
    }

    pub fn classify(&self, rs: &RootSystem, idx: RootIdx) -> RootClass {
        let s = self.sigma(idx);
        if s == idx {
            RootClass::Real
        } else if s == rs.negate(idx) {
            RootClass::Imaginary
        } else {
            RootClass::Complex
        }
    }
}

/// A validated Satake diagram: Dynkin graph, black nodes, arrows, and the
/// conjugation derived from them.
#[derive(Debug, Clone)]
pub struct SatakeDiagram {
    rootsys: RootSystem,
    black: BTreeSet<usize>,
    arrows: Vec<(usize, usize)>,
    conj: Conjugation,
}

impl PartialEq for SatakeDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.rootsys.graph() == other.rootsys.graph()
            && self.black == other.black
            && self.arrows == other.arrows
    }
}
impl Eq for SatakeDiagram {}

impl SatakeDiagram {
    pub fn new(
        graph: DynkinGraph,
        black: BTreeSet<usize>,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let rank = graph.rank();
        for &n in &black {
            if n == 0 || n > rank {
                return Err(Error::NodeOutOfRange(n, rank));
            }
        }
        let mut arrows: Vec<(usize, usize)> = arrows
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        arrows.sort_unstable();
        arrows.dedup();
        let mut touched = BTreeSet::new();
        for &(a, b) in &arrows {
            if a == b {
                return Err(Error::InvalidArrows(format!("arrow from {a} to itself")));
            }
            for n in [a, b] {
                if n == 0 || n > rank {
                    return Err(Error::NodeOutOfRange(n, rank));
                }
                if black.contains(&n) {
                    return Err(Error::InvalidArrows(format!(
                        "arrow endpoint {n} is a black node"
                    )));
                }
                if !touched.insert(n) {
                    return Err(Error::InvalidArrows(format!("node {n} lies on two arrows")));
                }
            }
        }

        let rootsys = RootSystem::new(graph);
        let conj = build_conjugation(&rootsys, &black, &arrows)?;
        Ok(SatakeDiagram {
            rootsys,
            black,
            arrows,
            conj,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rootsys
    }

    pub fn graph(&self) -> &DynkinGraph {
        self.rootsys.graph()
    }

    pub fn rank(&self) -> usize {
        self.rootsys.rank()
    }

    pub fn black(&self) -> &BTreeSet<usize> {
        &self.black
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn conjugation(&self) -> &Conjugation {
        &self.conj
    }

    pub fn is_black(&self, node: usize) -> bool {
        self.black.contains(&node)
    }

    /// White nodes, in order.
    pub fn white(&self) -> BTreeSet<usize> {
        (1..=self.rank())
            .filter(|n| !self.black.contains(n))
            .collect()
    }

    /// Graph components merged across arrows. Each class is the node set of
    /// one simple ideal of the real form.
    pub fn sigma_components(&self) -> Vec<BTreeSet<usize>> {
        let comps = self.graph().components();
        let mut class: Vec<usize> = (0..comps.len()).collect();
        fn find(class: &mut Vec<usize>, i: usize) -> usize {
            if class[i] != i {
                let r = find(class, class[i]);
                class[i] = r;
            }
            class[i]
        }
        let comp_of = |node: usize| comps.iter().position(|c| c.nodes.contains(&node)).unwrap();
        for &(a, b) in &self.arrows {
            let (ca, cb) = (comp_of(a), comp_of(b));
            let (ra, rb) = (find(&mut class, ca), find(&mut class, cb));
            if ra != rb {
                class[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: Vec<BTreeSet<usize>> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..comps.len() {
            let r = find(&mut class, i);
            match reps.iter().position(|&x| x == r) {
                Some(k) => groups[k].extend(comps[i].nodes.iter().copied()),
                None => {
                    reps.push(r);
                    groups.push(comps[i].nodes.iter().copied().collect());
                }
            }
        }
        groups
    }

    /// Restriction to a node subset. Arrows with an erased endpoint are
    /// dropped; the result is renumbered canonically and revalidated. Returns
    /// the diagram and the original label of each new node.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Result<(SatakeDiagram, Vec<usize>)> {
        let old: Vec<usize> = keep.iter().copied().collect();
        let pos = |n: usize| old.iter().position(|&x| x == n).map(|p| p + 1);
        let mut edges = Vec::new();
        for e in self.graph().edges() {
            if let (Some(a), Some(b)) = (pos(e.a), pos(e.b)) {
                edges.push(crate::dynkin::Edge {
                    a,
                    b,
                    multiplicity: e.multiplicity,
                    short: e.short.map(|s| pos(s).unwrap()),
                });
            }
        }
        let (graph, relabel) = DynkinGraph::normalize(old.len(), edges)?;
        // labels[i] = original node id of canonical node i+1
        let labels: Vec<usize> = relabel.iter().map(|&p| old[p - 1]).collect();
        let newpos = |orig: usize| labels.iter().position(|&x| x == orig).map(|p| p + 1);
        let black: BTreeSet<usize> = self.black.iter().filter_map(|&n| newpos(n)).collect();
        let arrows: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .filter_map(|&(a, b)| Some((newpos(a)?, newpos(b)?)))
            .collect();
        let diagram = SatakeDiagram::new(graph, black, arrows)?;
        Ok((diagram, labels))
    }

    /// Disjoint union of two diagrams, the second one's nodes shifted.
    pub fn direct_sum(&self, other: &SatakeDiagram) -> Result<SatakeDiagram> {
        let mut parts: Vec<_> = self
            .graph()
            .components()
            .iter()
            .map(|c| (c.ty, c.rank))
            .collect();
        parts.extend(other.graph().components().iter().map(|c| (c.ty, c.rank)));
        let graph = DynkinGraph::from_components(&parts)?;
        let shift = self.rank();
        let mut black = self.black.clone();
        black.extend(other.black.iter().map(|&n| n + shift));
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|&(a, b)| (a + shift, b + shift)));
        SatakeDiagram::new(graph, black, arrows)
    }
}

/// Derives the node involution: arrows on white nodes, identity on unmatched
/// white nodes, the permutation induced by `-w0(black)` on black nodes.
fn node_involution(
    rs: &RootSystem,
    w0: &LatticeMap,
    black: &BTreeSet<usize>,
    arrows: &[(usize, usize)],
) -> Result<Vec<usize>> {
    let rank = rs.rank();
    let mut eps: Vec<usize> = (1..=rank).collect();
    for &(a, b) in arrows {
        eps[a - 1] = b;
        eps[b - 1] = a;
    }
    for &i in black {
        let image = w0.apply(rs.root(rs.simple(i)).coeffs());
        let neg: Vec<i32> = image.iter().map(|&c| -c).collect();
        let target = neg
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .collect::<Vec<_>>();
        match target.as_slice() {
            [(j, 1)] if black.contains(&(j + 1)) => eps[i - 1] = j + 1,
            _ => {
                return Err(Error::NotASatakeDiagram(format!(
                    "-w0(black) does not permute the black simple roots (node {i})"
                )))
            }
        }
    }
    Ok(eps)
}

fn check_automorphism(graph: &DynkinGraph, eps: &[usize]) -> Result<()> {
    let rank = graph.rank();
    for i in 1..=rank {
        if eps[eps[i - 1] - 1] != i {
            return Err(Error::InvalidArrows(format!(
                "node map is not involutive at node {i}"
            )));
        }
    }
    for e in graph.edges() {
        let (ia, ib) = (eps[e.a - 1], eps[e.b - 1]);
        match graph.edge_between(ia, ib) {
            Some(f)
                if f.multiplicity == e.multiplicity && f.short == e.short.map(|s| eps[s - 1]) => {}
            _ => {
                return Err(Error::InvalidArrows(format!(
                    "node map does not preserve the edge ({},{})",
                    e.a, e.b
                )))
            }
        }
    }
    // Bijectivity on the edge set follows; also check the edge count is
    // preserved through images of non-edges.
    for x in 1..=rank {
        for y in x + 1..=rank {
            if graph.edge_between(x, y).is_none()
                && graph.edge_between(eps[x - 1], eps[y - 1]).is_some()
            {
                return Err(Error::InvalidArrows(format!(
                    "node map creates an edge at ({},{})",
                    x, y
                )));
            }
        }
    }
    Ok(())
}

/// Builds and validates the conjugation of a diagram.
fn build_conjugation(
    rs: &RootSystem,
    black: &BTreeSet<usize>,
    arrows: &[(usize, usize)],
) -> Result<Conjugation> {
    let rank = rs.rank();
    let w0 = rs.longest_involution(black);
    let eps = node_involution(rs, &w0, black, arrows)?;
    check_automorphism(rs.graph(), &eps)?;

    let eps_map = LatticeMap {
        images: (1..=rank)
            .map(|i| {
                let mut v = vec![0i32; rank];
                v[eps[i - 1] - 1] = 1;
                v
            })
            .collect(),
    };
    let sigma = w0.compose(&eps_map);

    if !sigma.is_involution() {
        return Err(Error::NotASatakeDiagram(
            "sigma is not an involution".into(),
        ));
    }
    let perm = sigma.root_permutation(rs).ok_or_else(|| {
        Error::NotASatakeDiagram("sigma does not preserve the root system".into())
    })?;

    let imaginary: RootSet = (0..rs.len() as RootIdx)
        .filter(|&i| perm[i as usize] == rs.negate(i))
        .collect();
    let black_supported: RootSet = (0..rs.len() as RootIdx)
        .filter(|&i| rs.support(i).is_subset(black))
        .collect();
    if imaginary != black_supported {
        return Err(Error::NotASatakeDiagram(format!(
            "imaginary roots differ from the black-supported ones (black {{{}}})",
            fmt_node_set(black)
        )));
    }
    for idx in 0..rs.len() as RootIdx {
        if rs.is_positive(idx) && !imaginary.contains(&idx) && !rs.is_positive(perm[idx as usize]) {
            return Err(Error::NotASatakeDiagram(format!(
                "sigma sends the non-imaginary positive root {} to a negative root",
                rs.root(idx)
            )));
        }
    }
    for i in 1..=rank {
        if black.contains(&i) {
            continue;
        }
        let mut diff = sigma.images[i - 1].clone();
        diff[eps[i - 1] - 1] -= 1;
        for (j, &c) in diff.iter().enumerate() {
            if c != 0 && !black.contains(&(j + 1)) {
                return Err(Error::NotASatakeDiagram(format!(
                    "sigma(a{i}) - eps(a{i}) is supported outside the black nodes"
                )));
            }
            if c < 0 {
                return Err(Error::NotASatakeDiagram(format!(
                    "sigma(a{i}) - eps(a{i}) has a negative coefficient"
                )));
            }
        }
    }

    Ok(Conjugation {
        map: sigma,
        perm,
        epsilon: eps,
        imaginary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::SimpleType;

    fn a3() -> DynkinGraph {
        DynkinGraph::from_components(&[(SimpleType::A, 3)]).unwrap()
    }

    /// su(1,3): one black node in the middle, ends joined by an arrow.
    fn su13() -> SatakeDiagram {
        SatakeDiagram::new(a3(), BTreeSet::from([2]), vec![(1, 3)]).unwrap()
    }

    /// su(2,2): no black nodes, ends joined by an arrow.
    fn su22() -> SatakeDiagram {
        SatakeDiagram::new(a3(), BTreeSet::new(), vec![(1, 3)]).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        let d = su13();
        assert_eq!(d.conjugation().epsilon_map(), &[3, 2, 1]);

        let d = su22();
        assert_eq!(d.conjugation().epsilon_map(), &[3, 2, 1]);

        // Split form: identity.
        let d = SatakeDiagram::new(a3(), BTreeSet::new(), vec![]).unwrap();
        assert_eq!(d.conjugation().epsilon_map(), &[1, 2, 3]);
    }

    #[test]
    fn sigma_of_su13() {
        let d = su13();
        let rs = d.root_system();
        let c = d.conjugation();
        assert_eq!(c.sigma_coeffs(&[0, 1, 0]), vec![0, -1, 0]);
        assert_eq!(c.sigma_coeffs(&[1, 0, 0]), vec![0, 1, 1]);
        assert_eq!(c.sigma_coeffs(&[0, 0, 1]), vec![1, 1, 0]);
        assert_eq!(c.classify(rs, rs.simple(2)), RootClass::Imaginary);
        assert_eq!(c.classify(rs, rs.simple(1)), RootClass::Complex);
    }

    #[test]
    fn sigma_of_su22_is_epsilon() {
        let d = su22();
        let c = d.conjugation();
        assert_eq!(c.sigma_coeffs(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(c.sigma_coeffs(&[0, 1, 0]), vec![0, 1, 0]);
        assert!(c.imaginary().is_empty());
    }

    #[test]
    fn split_form_is_all_real() {
        let d = SatakeDiagram::new(a3(), BTreeSet::new(), vec![]).unwrap();
        let rs = d.root_system();
        for idx in 0..rs.len() as RootIdx {
            assert_eq!(d.conjugation().classify(rs, idx), RootClass::Real);
        }
    }

    #[test]
    fn compact_form_is_all_imaginary() {
        let d = SatakeDiagram::new(a3(), BTreeSet::from([1, 2, 3]), vec![]).unwrap();
        let rs = d.root_system();
        for idx in 0..rs.len() as RootIdx {
            assert_eq!(d.conjugation().classify(rs, idx), RootClass::Imaginary);
        }
    }

    #[test]
    fn invalid_arrows_are_rejected() {
        assert!(matches!(
            SatakeDiagram::new(a3(), BTreeSet::from([2]), vec![(2, 3)]),
            Err(Error::InvalidArrows(_))
        ));
        assert!(matches!(
            SatakeDiagram::new(a3(), BTreeSet::new(), vec![(1, 2)]),
            Err(Error::InvalidArrows(_))
        ));
        // Black pair {1,2} in A3 forces a flip that breaks the edge (2,3).
        assert!(SatakeDiagram::new(a3(), BTreeSet::from([1, 2]), vec![]).is_err());
    }

    #[test]
    fn sigma_component_merging() {
        let two_a1 =
            DynkinGraph::from_components(&[(SimpleType::A, 1), (SimpleType::A, 1)]).unwrap();
        let joined = SatakeDiagram::new(two_a1.clone(), BTreeSet::new(), vec![(1, 2)]).unwrap();
        assert_eq!(joined.sigma_components(), vec![BTreeSet::from([1, 2])]);

        let split = SatakeDiagram::new(two_a1, BTreeSet::new(), vec![]).unwrap();
        assert_eq!(
            split.sigma_components(),
            vec![BTreeSet::from([1]), BTreeSet::from([2])]
        );

        let connected = su13();
        assert_eq!(
            connected.sigma_components(),
            vec![BTreeSet::from([1, 2, 3])]
        );
    }

    #[test]
    fn restriction_relabels_and_revalidates() {
        let d = su22();
        let (fiber, labels) = d.restrict(&BTreeSet::from([1, 3])).unwrap();
        assert_eq!(labels, vec![1, 3]);
        assert_eq!(fiber.graph().type_string(), "A1+A1");
        assert_eq!(fiber.arrows(), &[(1, 2)]);
        assert_eq!(fiber.sigma_components().len(), 1);
    }

    #[test]
    fn classification_is_constant_on_sigma_orbits() {
        let d = su13();
        let rs = d.root_system();
        let c = d.conjugation();
        for idx in 0..rs.len() as RootIdx {
            let s = c.sigma(idx);
            match c.classify(rs, idx) {
                RootClass::Complex => assert_eq!(c.classify(rs, s), RootClass::Complex),
                other => assert_eq!(c.classify(rs, s), other),
            }
        }
    }
}
