//! Equivariant fibrations between parabolics of one real form, their fiber
//! root data and diagrams, and the two canonical reductions.
//!
//! For `psi` inside the cross set `phi` the identity of the algebra maps the
//! instance `(S, phi)` onto the base `(S, psi)`. The fiber lives on the
//! reductive part of the base isotropy; its diagram is a subdiagram computed
//! here and revalidated rather than trusted.

use std::collections::BTreeSet;

use crate::error::{fmt_node_set, Error, Result};
use crate::parabolic::{self, CrossedDiagram};
use crate::roots::RootSet;

/// A diagram cut out of a larger one, remembering where its nodes came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCrossed {
    pub cd: CrossedDiagram,
    /// `original_nodes[i]` is the ambient label of node `i + 1`.
    pub original_nodes: Vec<usize>,
}

impl SubCrossed {
    /// Ambient labels of the crosses.
    pub fn original_crosses(&self) -> BTreeSet<usize> {
        self.cd
            .crosses()
            .iter()
            .map(|&c| self.original_nodes[c - 1])
            .collect()
    }

    fn relabel_through(&self, inner: SubCrossed) -> SubCrossed {
        let original_nodes = inner
            .original_nodes
            .iter()
            .map(|&n| self.original_nodes[n - 1])
            .collect();
        SubCrossed {
            cd: inner.cd,
            original_nodes,
        }
    }
}

/// Root data and diagrams of one equivariant fibration.
#[derive(Debug, Clone)]
pub struct FibrationReport {
    pub psi: BTreeSet<usize>,
    /// Roots of the complexified base isotropy, `Q_psi ∩ sigma(Q_psi)`.
    pub isotropy: RootSet,
    /// Roots of the fiber subalgebra, `Q_phi ∩ sigma(Q_psi)`.
    pub fiber_total: RootSet,
    /// Roots of the reductive part: `isotropy ∩ (-isotropy)`.
    pub reductive: RootSet,
    /// Roots of the fiber parabolic: `fiber_total ∩ reductive`.
    pub fiber_parabolic: RootSet,
    /// Simple roots lying in the reductive part (ambient labels).
    pub fiber_nodes: BTreeSet<usize>,
    /// The fiber diagram with the surviving crosses, if any node remains.
    pub fiber: Option<SubCrossed>,
    /// Sigma-connected components of the fiber containing a cross.
    pub effective_fiber: Option<SubCrossed>,
    /// Whether the quotient map is a CR fibration.
    pub is_cr_fibration: bool,
    /// CR dimension of the fiber.
    pub fiber_n: usize,
    /// CR codimension of the fiber.
    pub fiber_k: usize,
}

/// Computes the fibration of `cd` over the base marked by `psi`.
pub fn fiber_over(cd: &CrossedDiagram, psi: &BTreeSet<usize>) -> Result<FibrationReport> {
    if !psi.is_subset(cd.crosses()) {
        return Err(Error::PsiNotSubset(fmt_node_set(
            &psi.difference(cd.crosses()).copied().collect(),
        )));
    }
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let q_phi = parabolic::parabolic_roots(rs, cd.crosses()).q;
    let q_psi = parabolic::parabolic_roots(rs, psi).q;
    let sigma_q_psi = conj.sigma_set(&q_psi);

    let isotropy: RootSet = q_psi.intersection(&sigma_q_psi).copied().collect();
    let fiber_total: RootSet = q_phi.intersection(&sigma_q_psi).copied().collect();
    let reductive: RootSet = isotropy
        .iter()
        .copied()
        .filter(|&i| isotropy.contains(&rs.negate(i)))
        .collect();
    let fiber_parabolic: RootSet = fiber_total.intersection(&reductive).copied().collect();
    let fiber_nodes: BTreeSet<usize> = (1..=rs.rank())
        .filter(|&node| reductive.contains(&rs.simple(node)))
        .collect();

    // The quotient map is onto on holomorphic tangents iff every root of the
    // base parabolic already lies in q_phi or in the base isotropy.
    let is_cr_fibration = q_psi
        .iter()
        .all(|i| q_phi.contains(i) || isotropy.contains(i));

    let sigma_fiber_parabolic = conj.sigma_set(&fiber_parabolic);
    let fiber_n = fiber_parabolic.difference(&sigma_fiber_parabolic).count();
    let fiber_union = fiber_parabolic.union(&sigma_fiber_parabolic).count();
    let fiber_k = reductive.len() - fiber_union;

    let fiber = if fiber_nodes.is_empty() {
        None
    } else {
        let (sat, labels) = cd.satake().restrict(&fiber_nodes)?;
        let crosses: BTreeSet<usize> = cd
            .crosses()
            .iter()
            .filter(|c| fiber_nodes.contains(c))
            .map(|&c| labels.iter().position(|&l| l == c).unwrap() + 1)
            .collect();
        Some(SubCrossed {
            cd: CrossedDiagram::new(sat, crosses)?,
            original_nodes: labels,
        })
    };

    let effective_fiber = match &fiber {
        None => None,
        Some(sub) => effective_quotient(sub)?,
    };

    Ok(FibrationReport {
        psi: psi.clone(),
        isotropy,
        fiber_total,
        reductive,
        fiber_parabolic,
        fiber_nodes,
        fiber,
        effective_fiber,
        is_cr_fibration,
        fiber_n,
        fiber_k,
    })
}

/// Keeps exactly the sigma-connected components carrying a cross.
fn effective_quotient(sub: &SubCrossed) -> Result<Option<SubCrossed>> {
    let crosses = sub.cd.crosses();
    if crosses.is_empty() {
        return Ok(None);
    }
    let keep: BTreeSet<usize> = sub
        .cd
        .satake()
        .sigma_components()
        .into_iter()
        .filter(|nodes| !nodes.is_disjoint(crosses))
        .flatten()
        .collect();
    if keep.len() == sub.cd.satake().rank() {
        return Ok(Some(sub.clone()));
    }
    let (sat, labels) = sub.cd.satake().restrict(&keep)?;
    let new_crosses: BTreeSet<usize> = crosses
        .iter()
        .map(|&c| labels.iter().position(|&l| l == c).unwrap() + 1)
        .collect();
    let inner = SubCrossed {
        cd: CrossedDiagram::new(sat, new_crosses)?,
        original_nodes: labels,
    };
    Ok(Some(sub.relabel_through(inner)))
}

/// Node selection rule for the fiber subdiagram, stated directly on the
/// diagram: imaginary nodes outside `psi`, and non-imaginary nodes whose
/// conjugate support stays clear of `psi`.
pub fn fiber_node_rule(cd: &CrossedDiagram, psi: &BTreeSet<usize>) -> BTreeSet<usize> {
    let rs = cd.root_system();
    let sat = cd.satake();
    let conj = sat.conjugation();
    (1..=rs.rank())
        .filter(|&node| {
            if sat.is_black(node) {
                !psi.contains(&node)
            } else {
                let image = conj.sigma_coeffs(rs.root(rs.simple(node)).coeffs());
                let mut touched = crate::roots::Root(image).support();
                touched.insert(node);
                touched.is_disjoint(psi)
            }
        })
        .collect()
}

/// Result of the fundamental reduction: totally real base, fundamental fiber.
#[derive(Debug, Clone)]
pub struct FundamentalReduction {
    /// Crosses kept on the base: the non-imaginary crosses whose arrow
    /// partner is also crossed.
    pub psi: BTreeSet<usize>,
    pub base: CrossedDiagram,
    pub report: FibrationReport,
}

pub fn fundamental_reduction(cd: &CrossedDiagram) -> Result<FundamentalReduction> {
    let sat = cd.satake();
    let conj = sat.conjugation();
    let psi: BTreeSet<usize> = cd
        .crosses()
        .iter()
        .copied()
        .filter(|&a| !sat.is_black(a) && cd.crosses().contains(&conj.epsilon(a)))
        .collect();
    let base = cd.with_crosses(psi.clone())?;
    let report = fiber_over(cd, &psi)?;
    Ok(FundamentalReduction { psi, base, report })
}

/// Result of the weakly nondegenerate reduction of a fundamental instance.
#[derive(Debug, Clone)]
pub struct WeakReduction {
    /// Crosses removed to reach the largest intermediate parabolic.
    pub removed: BTreeSet<usize>,
    pub base: CrossedDiagram,
    pub report: FibrationReport,
    /// Set when the single-removal candidate failed verification and the
    /// exhaustive subset search decided the reduction instead.
    pub used_exhaustive_fallback: bool,
}

pub fn weak_reduction(cd: &CrossedDiagram) -> Result<WeakReduction> {
    if !parabolic::is_fundamental(cd) {
        return Err(Error::NotFundamental);
    }
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let q = parabolic::parabolic_roots(rs, cd.crosses()).q;
    let sigma_q = conj.sigma_set(&q);
    let envelope: RootSet = q.union(&sigma_q).copied().collect();

    let removable = parabolic::removable_crosses(cd);
    let candidate: BTreeSet<usize> = cd.crosses().difference(&removable).copied().collect();
    let contained =
        |marks: &BTreeSet<usize>| parabolic::parabolic_roots(rs, marks).q.is_subset(&envelope);

    let (removed, used_exhaustive_fallback) = if contained(&candidate) {
        (removable, false)
    } else {
        // The largest intermediate subalgebra is unique; search all markings
        // and surface any ambiguity instead of guessing.
        let marks: Vec<usize> = cd.crosses().iter().copied().collect();
        let mut satisfiers: Vec<BTreeSet<usize>> = Vec::new();
        for bits in 0..(1u32 << marks.len()) {
            let subset: BTreeSet<usize> = marks
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            if contained(&subset) {
                satisfiers.push(subset);
            }
        }
        let minimal: Vec<&BTreeSet<usize>> = satisfiers
            .iter()
            .filter(|s| !satisfiers.iter().any(|t| t != *s && t.is_subset(s)))
            .collect();
        match minimal.as_slice() {
            [] => unreachable!("the full cross set always satisfies containment"),
            [only] => {
                let removed: BTreeSet<usize> = cd.crosses().difference(only).copied().collect();
                (removed, true)
            }
            [a, b, ..] => return Err(Error::AmbiguousLargest(fmt_node_set(a), fmt_node_set(b))),
        }
    };

    let psi: BTreeSet<usize> = cd.crosses().difference(&removed).copied().collect();
    let base = cd.with_crosses(psi.clone())?;
    let report = fiber_over(cd, &psi)?;
    Ok(WeakReduction {
        removed,
        base,
        report,
        used_exhaustive_fallback,
    })
}

/// The composite of the two canonical reductions: fundamental reduction of
/// the instance, then the weakly nondegenerate reduction of its effective
/// fiber. Node sets of the inner reduction are reported in ambient labels.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub total: CrossedDiagram,
    pub fundamental_psi: BTreeSet<usize>,
    /// Totally real base of the fundamental reduction.
    pub fundamental_base: CrossedDiagram,
    /// Effective fundamental fiber, if nontrivial.
    pub fundamental_fiber: Option<SubCrossed>,
    /// Ambient labels of the crosses removed by the weak reduction.
    pub weak_removed: BTreeSet<usize>,
    /// Weakly nondegenerate base of the fiber.
    pub weak_base: Option<SubCrossed>,
    /// Totally complex fiber of the weak reduction (effective quotient).
    pub weak_fiber: Option<SubCrossed>,
    /// CR type (n, k) of the weak-reduction fiber root data.
    pub weak_fiber_type: (usize, usize),
}

pub fn reduction_diagram(cd: &CrossedDiagram) -> Result<ReductionReport> {
    let fundamental = fundamental_reduction(cd)?;
    let fiber = fundamental.report.effective_fiber.clone();
    let (weak_removed, weak_base, weak_fiber, weak_fiber_type) = match &fiber {
        None => (BTreeSet::new(), None, None, (0, 0)),
        Some(sub) => {
            let weak = weak_reduction(&sub.cd)?;
            let removed = weak
                .removed
                .iter()
                .map(|&n| sub.original_nodes[n - 1])
                .collect();
            let base = SubCrossed {
                cd: weak.base.clone(),
                original_nodes: sub.original_nodes.clone(),
            };
            let fiber_of_fiber = weak
                .report
                .effective_fiber
                .clone()
                .map(|inner| sub.relabel_through(inner));
            (
                removed,
                Some(base),
                fiber_of_fiber,
                (weak.report.fiber_n, weak.report.fiber_k),
            )
        }
    };
    Ok(ReductionReport {
        total: cd.clone(),
        fundamental_psi: fundamental.psi,
        fundamental_base: fundamental.base,
        fundamental_fiber: fiber,
        weak_removed,
        weak_base,
        weak_fiber,
        weak_fiber_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, Family, Params};
    use crate::dynkin::SimpleType;
    use crate::parabolic::analyze;

    fn crossed(family: Family, params: Params, phi: &[usize]) -> CrossedDiagram {
        let d = lookup(family, &params).unwrap();
        CrossedDiagram::new(d, phi.iter().copied().collect()).unwrap()
    }

    fn su13_12() -> CrossedDiagram {
        crossed(Family::Su, Params::Pq(1, 3), &[1, 2])
    }

    #[test]
    fn su13_fiber_over_first_cross() {
        let report = fiber_over(&su13_12(), &BTreeSet::from([1])).unwrap();
        assert_eq!(report.fiber_nodes, BTreeSet::from([2]));
        assert!(report.fiber_node_check(&su13_12()));
        let eff = report.effective_fiber.expect("one black crossed node");
        assert_eq!(eff.original_nodes, vec![2]);
        assert_eq!(eff.cd.satake().black(), &BTreeSet::from([1]));
        assert_eq!(eff.cd.crosses(), &BTreeSet::from([1]));
        assert_eq!(eff.original_crosses(), BTreeSet::from([2]));
    }

    #[test]
    fn su13_fiber_over_second_cross_is_trivial() {
        let cd = su13_12();
        let report = fiber_over(&cd, &BTreeSet::from([2])).unwrap();
        assert!(report.fiber_nodes.is_empty());
        assert!(report.fiber.is_none() && report.effective_fiber.is_none());
        assert!(!report.is_cr_fibration);
    }

    #[test]
    fn fiber_over_the_full_cross_set_keeps_no_cross() {
        let cd = su13_12();
        let report = fiber_over(&cd, cd.crosses()).unwrap();
        assert_eq!(report.fiber_nodes, fiber_node_rule(&cd, cd.crosses()));
        assert!(report.effective_fiber.is_none());
    }

    #[test]
    fn psi_must_be_contained_in_the_crosses() {
        let cd = su13_12();
        assert!(matches!(
            fiber_over(&cd, &BTreeSet::from([3])),
            Err(Error::PsiNotSubset(_))
        ));
    }

    #[test]
    fn totally_real_base_always_fibers() {
        // su(2,2) with psi = {2} is totally real.
        let cd = crossed(Family::Su, Params::Pq(2, 2), &[2, 3]);
        let report = fiber_over(&cd, &BTreeSet::from([2])).unwrap();
        assert!(report.is_cr_fibration);
    }

    #[test]
    fn su22_fundamental_reduction_matches_the_worked_example() {
        let cd = crossed(Family::Su, Params::Pq(2, 2), &[2, 3]);
        let red = fundamental_reduction(&cd).unwrap();
        assert_eq!(red.psi, BTreeSet::from([2]));
        assert_eq!(analyze(&red.base).n, 0);
        let eff = red.report.effective_fiber.expect("sl(2,C) fiber");
        assert_eq!(eff.original_nodes, vec![1, 3]);
        assert_eq!(eff.cd.satake().graph().type_string(), "A1+A1");
        assert_eq!(eff.cd.satake().arrows(), &[(1, 2)]);
        // The cross sits on the partner of the erased cross, node 3.
        assert_eq!(eff.original_crosses(), BTreeSet::from([3]));
        assert!(crate::parabolic::is_fundamental(&eff.cd));
    }

    #[test]
    fn fundamental_instances_reduce_trivially() {
        let cd = su13_12();
        let red = fundamental_reduction(&cd).unwrap();
        assert!(red.psi.is_empty());
        let eff = red.report.effective_fiber.expect("whole diagram");
        assert_eq!(eff.cd, cd);
        assert_eq!(eff.original_nodes, vec![1, 2, 3]);
    }

    #[test]
    fn split_a1_reduces_to_the_borel_base() {
        let cd = crossed(Family::SlR, Params::N(2), &[1]);
        let red = fundamental_reduction(&cd).unwrap();
        assert_eq!(red.psi, BTreeSet::from([1]));
        assert_eq!(analyze(&red.base).n, 0);
        assert!(red.report.effective_fiber.is_none());
    }

    #[test]
    fn weak_reduction_cases() {
        // Already weakly nondegenerate: identity reduction.
        let cd = su13_12();
        let red = weak_reduction(&cd).unwrap();
        assert!(red.removed.is_empty());
        assert_eq!(red.base, cd);
        assert!(!red.used_exhaustive_fallback);

        // Compact su(2) with a cross: everything is removed.
        let cd = crossed(Family::Compact, Params::Typed(SimpleType::A, 1), &[1]);
        let red = weak_reduction(&cd).unwrap();
        assert_eq!(red.removed, BTreeSet::from([1]));
        assert!(red.base.crosses().is_empty());
        assert_eq!(red.report.fiber_k, 0);
        let eff = red.report.effective_fiber.expect("the whole compact form");
        assert_eq!(eff.cd, cd);

        // Non-fundamental inputs are refused.
        let cd = crossed(Family::Su, Params::Pq(2, 2), &[2, 3]);
        assert!(matches!(weak_reduction(&cd), Err(Error::NotFundamental)));

        // A single cross whose arrow partner is uncrossed reduces trivially.
        let cd = crossed(Family::Su, Params::Pq(1, 4), &[1]);
        let red = weak_reduction(&cd).unwrap();
        assert!(red.removed.is_empty());
        assert_eq!(red.base, cd);
    }

    #[test]
    fn reduction_diagram_of_su22() {
        let cd = crossed(Family::Su, Params::Pq(2, 2), &[2, 3]);
        let report = reduction_diagram(&cd).unwrap();
        assert_eq!(report.fundamental_psi, BTreeSet::from([2]));
        // q + sigma(q) is already closed here, so the closure of the envelope
        // equals the root set of the totally real base marking.
        let rs = cd.root_system();
        let conj = cd.satake().conjugation();
        let q = crate::parabolic::parabolic_roots(rs, cd.crosses()).q;
        let envelope: RootSet = q.union(&conj.sigma_set(&q)).copied().collect();
        let closed = rs.closure(&envelope);
        let base_q = crate::parabolic::parabolic_roots(rs, &report.fundamental_psi).q;
        assert_eq!(closed, base_q);
        // The fiber is sl(2,C) with one cross: a totally complex instance,
        // so the weak reduction strips the cross and the whole fiber is the
        // totally complex part.
        assert_eq!(report.weak_removed, BTreeSet::from([3]));
        let wb = report.weak_base.expect("fiber base");
        assert!(wb.cd.crosses().is_empty());
        let wf = report.weak_fiber.expect("complex fiber");
        assert_eq!(wf.original_crosses(), BTreeSet::from([3]));
        assert_eq!(report.weak_fiber_type, (1, 0));
    }

    #[test]
    fn reduction_diagram_of_a_fundamental_weakly_nondegenerate_instance() {
        let cd = su13_12();
        let report = reduction_diagram(&cd).unwrap();
        assert!(report.fundamental_psi.is_empty());
        assert_eq!(report.weak_removed, BTreeSet::new());
        let wb = report.weak_base.expect("base is the instance itself");
        assert_eq!(wb.cd, cd);
        let wf = report.weak_fiber;
        assert!(wf.is_none(), "identity weak reduction has a trivial fiber");
    }

    impl FibrationReport {
        /// Test helper: the reductive simple nodes must satisfy the direct
        /// diagram rule.
        fn fiber_node_check(&self, cd: &CrossedDiagram) -> bool {
            self.fiber_nodes == fiber_node_rule(cd, &self.psi)
        }
    }
}
