//! Reduced root systems generated from a Dynkin graph.
//!
//! Roots are integer coefficient vectors over the simple basis; the positive
//! system is fixed once at generation as the roots with nonnegative
//! coordinates. All operations are pure and the system is immutable.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::dynkin::DynkinGraph;
use crate::error::Result;

/// Index of a root inside its [`RootSystem`].
pub type RootIdx = u16;

/// Sets of roots are kept as ordered index sets for deterministic output.
pub type RootSet = BTreeSet<RootIdx>;

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Nodes with a nonzero coefficient (1-based).
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c < 0 { "-" } else { "+" })?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A complete reduced root system with a fixed positive system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    graph: DynkinGraph,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, RootIdx>,
    negation: Vec<RootIdx>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}
impl Eq for RootSystem {}

impl RootSystem {
    /// Generates the root system by closing the simple roots under all simple
    /// reflections.
    pub fn new(graph: DynkinGraph) -> Self {
        let rank = graph.rank();
        let mut found: BTreeSet<Vec<i32>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..rank {
            let mut v = vec![0i32; rank];
            v[i] = 1;
            found.insert(v.clone());
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for i in 1..=rank {
                let w = reflect_coeffs(&graph, &v, i);
                if found.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let roots: Vec<Root> = found.into_iter().map(Root).collect();
        assert_eq!(
            roots.len(),
            graph.root_count(),
            "generated root count disagrees with the classical count for {}",
            graph.type_string()
        );
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i as RootIdx))
            .collect::<HashMap<_, _>>();
        let negation = roots
            .iter()
            .map(|r| {
                let neg: Vec<i32> = r.0.iter().map(|&c| -c).collect();
                index[&neg]
            })
            .collect();
        RootSystem {
            graph,
            roots,
            index,
            negation,
        }
    }

    pub fn graph(&self) -> &DynkinGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, idx: RootIdx) -> &Root {
        &self.roots[idx as usize]
    }

    pub fn index_of(&self, coeffs: &[i32]) -> Option<RootIdx> {
        self.index.get(coeffs).copied()
    }

    /// Index of the simple root `alpha_i` (1-based node).
    pub fn simple(&self, node: usize) -> RootIdx {
        let mut v = vec![0i32; self.rank()];
        v[node - 1] = 1;
        self.index[&v]
    }

    pub fn is_positive(&self, idx: RootIdx) -> bool {
        self.roots[idx as usize].is_positive()
    }

    pub fn negate(&self, idx: RootIdx) -> RootIdx {
        self.negation[idx as usize]
    }

    /// All root indices.
    pub fn all(&self) -> RootSet {
        (0..self.roots.len() as RootIdx).collect()
    }

    /// The fixed positive system.
    pub fn positive(&self) -> RootSet {
        (0..self.roots.len() as RootIdx)
            .filter(|&i| self.is_positive(i))
            .collect()
    }

    /// Support of a root as a node set.
    pub fn support(&self, idx: RootIdx) -> BTreeSet<usize> {
        self.roots[idx as usize].support()
    }

    /// Cartan pairing `<beta, alpha_i^vee>`.
    pub fn pairing(&self, coeffs: &[i32], node: usize) -> i32 {
        coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * self.graph.cartan(node, j + 1))
            .sum()
    }

    /// Simple reflection `s_i(beta)`.
    pub fn reflect(&self, idx: RootIdx, node: usize) -> RootIdx {
        let w = reflect_coeffs(&self.graph, &self.roots[idx as usize].0, node);
        self.index[&w]
    }

    /// Sum of two roots, if it is again a root.
    pub fn sum(&self, a: RootIdx, b: RootIdx) -> Option<RootIdx> {
        let ra = &self.roots[a as usize].0;
        let rb = &self.roots[b as usize].0;
        let s: Vec<i32> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
        self.index.get(&s).copied()
    }

    /// Smallest superset of `set` closed under addition of roots.
    pub fn closure(&self, set: &RootSet) -> RootSet {
        let mut out = set.clone();
        let mut fresh: Vec<RootIdx> = out.iter().copied().collect();
        while !fresh.is_empty() {
            let mut next = Vec::new();
            let current: Vec<RootIdx> = out.iter().copied().collect();
            for &a in &fresh {
                for &b in &current {
                    if let Some(s) = self.sum(a, b) {
                        if out.insert(s) {
                            next.push(s);
                        }
                    }
                }
            }
            fresh = next;
        }
        out
    }

    /// Action of the longest element of the Weyl subgroup generated by the
    /// reflections at `black`. The returned map is an involution of the root
    /// lattice sending every black-supported positive root to a negative one.
    pub fn longest_involution(&self, black: &BTreeSet<usize>) -> LatticeMap {
        let rank = self.rank();
        let mut map = LatticeMap::identity(rank);
        // Greedy ascent in length: while some black simple root is still sent
        // to a positive root, append that reflection. Each step increases the
        // inversion count by one, so this terminates at the longest element.
        let bound = self.roots.len();
        for _ in 0..=bound {
            let next = black
                .iter()
                .copied()
                .find(|&i| map.images[i - 1].iter().all(|&c| c >= 0));
            match next {
                None => return map,
                Some(i) => {
                    map = map.compose_with_reflection(self, i);
                }
            }
        }
        unreachable!("longest element ascent exceeded the root count bound");
    }

    /// Checks the invariants of [`Root`]: membership and sign coherence.
    pub fn check_root(&self, coeffs: &[i32]) -> Result<RootIdx> {
        self.index_of(coeffs).ok_or_else(|| {
            crate::error::Error::OutOfRange(format!(
                "{} is not a root of {}",
                Root(coeffs.to_vec()),
                self.graph.type_string()
            ))
        })
    }
}

fn reflect_coeffs(graph: &DynkinGraph, coeffs: &[i32], node: usize) -> Vec<i32> {
    let pairing: i32 = coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| c * graph.cartan(node, j + 1))
        .sum();
    let mut out = coeffs.to_vec();
    out[node - 1] -= pairing;
    out
}

/// A linear map of the root lattice, stored by the images of the simple
/// roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    /// `images[i]` is the image of `alpha_{i+1}` in simple-root coordinates.
    pub images: Vec<Vec<i32>>,
}

impl LatticeMap {
    pub fn identity(rank: usize) -> Self {
        let images = (0..rank)
            .map(|i| {
                let mut v = vec![0i32; rank];
                v[i] = 1;
                v
            })
            .collect();
        LatticeMap { images }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, coeffs: &[i32]) -> Vec<i32> {
        let rank = self.rank();
        let mut out = vec![0i32; rank];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for j in 0..rank {
                    out[j] += c * self.images[i][j];
                }
            }
        }
        out
    }

    /// Post-composition with the simple reflection at `node`:
    /// the result maps `x` to `self(s_node(x))`.
    fn compose_with_reflection(&self, rs: &RootSystem, node: usize) -> LatticeMap {
        // s_node(alpha_j) = alpha_j - cartan(node, j) alpha_node, so the new
        // image of alpha_j is images[j] - cartan(node, j) * images[node-1].
        let rank = self.rank();
        let pivot = self.images[node - 1].clone();
        let mut images = self.images.clone();
        for j in 0..rank {
            let c = rs.graph().cartan(node, j + 1);
            if c != 0 {
                for k in 0..rank {
                    images[j][k] -= c * pivot[k];
                }
            }
        }
        LatticeMap { images }
    }

    pub fn compose(&self, inner: &LatticeMap) -> LatticeMap {
        let images = inner.images.iter().map(|v| self.apply(v)).collect();
        LatticeMap { images }
    }

    pub fn is_identity(&self) -> bool {
        *self == LatticeMap::identity(self.rank())
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Permutation induced on the roots of `rs`, if the map preserves them.
    pub fn root_permutation(&self, rs: &RootSystem) -> Option<Vec<RootIdx>> {
        rs.roots()
            .iter()
            .map(|r| rs.index_of(&self.apply(&r.0)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::SimpleType;

    fn system(ty: SimpleType, rank: usize) -> RootSystem {
        RootSystem::new(DynkinGraph::from_components(&[(ty, rank)]).unwrap())
    }

    #[test]
    fn rank_one_system() {
        let rs = system(SimpleType::A, 1);
        assert_eq!(rs.len(), 2);
        let a1 = rs.simple(1);
        assert_eq!(rs.negate(a1), rs.index_of(&[-1]).unwrap());
    }

    #[test]
    fn counts_match_classical_table() {
        let expect = [
            (SimpleType::A, 3, 12),
            (SimpleType::B, 2, 8),
            (SimpleType::C, 3, 18),
            (SimpleType::D, 4, 24),
            (SimpleType::G, 2, 12),
            (SimpleType::F, 4, 48),
            (SimpleType::E, 6, 72),
            (SimpleType::E, 7, 126),
            (SimpleType::E, 8, 240),
        ];
        for (ty, rank, n) in expect {
            let rs = system(ty, rank);
            assert_eq!(rs.len(), n, "{}{}", ty.letter(), rank);
            assert_eq!(rs.positive().len(), n / 2);
        }
    }

    #[test]
    fn b2_contains_the_long_string_root() {
        // With alpha_2 short, s_2(alpha_1) = alpha_1 + 2 alpha_2.
        let rs = system(SimpleType::B, 2);
        assert!(rs.index_of(&[1, 2]).is_some());
        assert!(rs.index_of(&[2, 1]).is_none());
        assert_eq!(rs.reflect(rs.simple(1), 2), rs.index_of(&[1, 2]).unwrap());
    }

    #[test]
    fn c2_points_the_other_way() {
        let rs = system(SimpleType::C, 2);
        assert!(rs.index_of(&[2, 1]).is_some());
        assert!(rs.index_of(&[1, 2]).is_none());
    }

    #[test]
    fn support_reads_coordinates() {
        let rs = system(SimpleType::A, 3);
        let r = rs.index_of(&[1, 1, 0]).unwrap();
        assert_eq!(rs.support(r), BTreeSet::from([1, 2]));
        let n3 = rs.index_of(&[0, 0, -1]).unwrap();
        assert_eq!(rs.support(n3), BTreeSet::from([3]));
        // Highest root of A3.
        assert_eq!(
            rs.index_of(&[1, 1, 1]).map(|i| rs.support(i)),
            Some(BTreeSet::from([1, 2, 3]))
        );
    }

    #[test]
    fn reflection_is_an_involution_everywhere() {
        for (ty, rank) in [(SimpleType::A, 3), (SimpleType::B, 3), (SimpleType::G, 2)] {
            let rs = system(ty, rank);
            for idx in 0..rs.len() as RootIdx {
                for node in 1..=rank {
                    let r = rs.reflect(idx, node);
                    assert_eq!(rs.reflect(r, node), idx);
                }
            }
        }
    }

    #[test]
    fn simple_reflection_examples() {
        let rs = system(SimpleType::A, 3);
        let a1 = rs.simple(1);
        assert_eq!(rs.reflect(a1, 1), rs.index_of(&[-1, 0, 0]).unwrap());
        assert_eq!(rs.reflect(a1, 2), rs.index_of(&[1, 1, 0]).unwrap());
    }

    #[test]
    fn longest_involution_examples() {
        let a3 = system(SimpleType::A, 3);
        assert!(a3.longest_involution(&BTreeSet::new()).is_identity());

        // black = {2} acts as s_2.
        let w = a3.longest_involution(&BTreeSet::from([2]));
        assert_eq!(w.apply(&[1, 0, 0]), vec![1, 1, 0]);
        assert_eq!(w.apply(&[0, 0, 1]), vec![0, 1, 1]);
        assert_eq!(w.apply(&[0, 1, 0]), vec![0, -1, 0]);

        // black = {2,3} in A4 sends alpha_1 to alpha_1+alpha_2+alpha_3.
        let a4 = system(SimpleType::A, 4);
        let w = a4.longest_involution(&BTreeSet::from([2, 3]));
        assert_eq!(w.apply(&[1, 0, 0, 0]), vec![1, 1, 1, 0]);
        assert!(w.is_involution());
    }

    #[test]
    fn longest_involution_inverts_black_positives_and_fixes_far_roots() {
        let d4 = system(SimpleType::D, 4);
        let black = BTreeSet::from([3, 4]);
        let w = d4.longest_involution(&black);
        assert!(w.is_involution());
        let perm = w.root_permutation(&d4).expect("preserves roots");
        for idx in 0..d4.len() as RootIdx {
            let supported = d4.support(idx).is_subset(&black);
            if supported && d4.is_positive(idx) {
                assert!(!d4.is_positive(perm[idx as usize]));
            }
        }
        // A root whose support neither meets black nor touches it stays put.
        let a5 = system(SimpleType::A, 5);
        let w = a5.longest_involution(&BTreeSet::from([1]));
        for coeffs in [[0, 0, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1]] {
            assert_eq!(w.apply(&coeffs), coeffs.to_vec());
        }
    }

    #[test]
    fn closure_examples() {
        let a2 = system(SimpleType::A, 2);
        let s: RootSet = [a2.simple(1), a2.simple(2)].into_iter().collect();
        let closed = a2.closure(&s);
        let expect: RootSet = [a2.simple(1), a2.simple(2), a2.index_of(&[1, 1]).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(closed, expect);
        assert_eq!(a2.closure(&RootSet::new()), RootSet::new());
    }
}
