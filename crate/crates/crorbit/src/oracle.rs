//! Brute-force oracles and the exhaustive consistency sweep.
//!
//! The oracles deliberately avoid the criteria they validate: fundamentality
//! is decided by root closure alone, weak nondegeneracy by full subset
//! enumeration. The sweep runs every catalog form up to a rank bound (plus
//! direct sums of smaller forms, to exercise disconnected diagrams) against
//! every cross set and records disagreements as data.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog;
use crate::error::{fmt_node_set, Error, Result};
use crate::fibration::{self, fiber_over, fundamental_reduction, weak_reduction};
use crate::parabolic::{self, analyze, parabolic_roots, CrossedDiagram};
use crate::roots::RootSet;
use crate::satake::SatakeDiagram;

/// Fundamentality by closure: the envelope `Q ∪ sigma(Q)` must generate the
/// whole root set under addition.
pub fn oracle_fundamental(cd: &CrossedDiagram) -> bool {
    let rs = cd.root_system();
    let q = parabolic_roots(rs, cd.crosses()).q;
    let envelope: RootSet = q
        .union(&cd.satake().conjugation().sigma_set(&q))
        .copied()
        .collect();
    rs.closure(&envelope).len() == rs.len()
}

/// Weak nondegeneracy by enumeration of all proper submarkings. Returns
/// whether no intermediate parabolic exists and, if one does, the unique
/// minimal marking (the largest subalgebra). Two incomparable minimal
/// markings are an error worth surfacing loudly.
pub fn oracle_weak_largest(cd: &CrossedDiagram) -> Result<(bool, Option<BTreeSet<usize>>)> {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let q = parabolic_roots(rs, cd.crosses()).q;
    let envelope: RootSet = q.union(&conj.sigma_set(&q)).copied().collect();
    let marks: Vec<usize> = cd.crosses().iter().copied().collect();

    let mut satisfiers: Vec<BTreeSet<usize>> = Vec::new();
    for bits in 0..(1u32 << marks.len()) {
        if bits == (1u32 << marks.len()) - 1 {
            continue; // proper subsets only
        }
        let subset: BTreeSet<usize> = marks
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &m)| m)
            .collect();
        if parabolic_roots(rs, &subset).q.is_subset(&envelope) {
            satisfiers.push(subset);
        }
    }
    if satisfiers.is_empty() {
        return Ok((true, None));
    }
    let minimal: Vec<&BTreeSet<usize>> = satisfiers
        .iter()
        .filter(|s| !satisfiers.iter().any(|t| t != *s && t.is_subset(s)))
        .collect();
    match minimal.as_slice() {
        [only] => Ok((false, Some((*only).clone()))),
        [a, b, ..] => Err(Error::AmbiguousLargest(fmt_node_set(a), fmt_node_set(b))),
        [] => unreachable!("nonempty satisfier family has a minimal element"),
    }
}

/// One recorded disagreement.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub form: String,
    pub cross: String,
    pub property: String,
    pub expected: String,
    pub got: String,
}

/// Aggregate result of a consistency sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rank_bound: usize,
    /// Number of diagrams swept (catalog entries plus direct sums).
    pub forms: usize,
    /// Number of (form, cross set) pairs.
    pub pairs: usize,
    /// Number of individual property checks.
    pub instances_checked: usize,
    /// Times the weak reduction had to fall back to exhaustive search.
    pub exhaustive_fallbacks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct Sweep {
    report: SweepReport,
}

impl Sweep {
    fn check(
        &mut self,
        form: &str,
        cross: &BTreeSet<usize>,
        property: &str,
        expected: impl ToString,
        got: impl ToString,
    ) {
        self.report.instances_checked += 1;
        let (expected, got) = (expected.to_string(), got.to_string());
        if expected != got {
            self.report.mismatches.push(Mismatch {
                form: form.to_string(),
                cross: format!("{{{}}}", fmt_node_set(cross)),
                property: property.to_string(),
                expected,
                got,
            });
        }
    }
}

/// Direct sums larger than this are skipped: the disconnected battery is a
/// fixed-size complement to the catalog, not something that should dominate
/// high-rank sweeps.
const MAX_SUM_RANK: usize = 4;

/// Runs every consistency check on every catalog form of rank at most
/// `rank_bound`, for every cross set, plus pairwise direct sums of distinct
/// smaller forms to cover disconnected diagrams.
pub fn sweep_consistency(rank_bound: usize) -> Result<SweepReport> {
    let mut sweep = Sweep {
        report: SweepReport {
            rank_bound,
            forms: 0,
            pairs: 0,
            instances_checked: 0,
            exhaustive_fallbacks: 0,
            mismatches: Vec::new(),
        },
    };
    if rank_bound == 0 {
        return Ok(sweep.report);
    }

    let entries = catalog::entries(rank_bound)?;
    let mut diagrams: Vec<(String, Arc<SatakeDiagram>)> = entries
        .into_iter()
        .map(|e| (e.name, Arc::new(e.diagram)))
        .collect();

    // Direct sums over distinct underlying diagrams, to exercise the
    // component-wise conjunction law on semisimple non-simple forms.
    let mut unique: Vec<(String, Arc<SatakeDiagram>)> = Vec::new();
    for (name, d) in &diagrams {
        if !unique.iter().any(|(_, u)| **u == **d) {
            unique.push((name.clone(), Arc::clone(d)));
        }
    }
    let sum_bound = rank_bound.min(MAX_SUM_RANK);
    let mut sums = Vec::new();
    for i in 0..unique.len() {
        for j in i..unique.len() {
            let (na, da) = &unique[i];
            let (nb, db) = &unique[j];
            if da.rank() + db.rank() <= sum_bound {
                let sum = da.direct_sum(db)?;
                sums.push((format!("{na}+{nb}"), Arc::new(sum)));
            }
        }
    }
    diagrams.extend(sums);

    for (name, diagram) in &diagrams {
        sweep.report.forms += 1;
        let rank = diagram.rank();
        for bits in 0..(1u64 << rank) {
            let crosses: BTreeSet<usize> =
                (1..=rank).filter(|i| bits >> (i - 1) & 1 == 1).collect();
            let cd = CrossedDiagram::new(Arc::clone(diagram), crosses)?;
            sweep.report.pairs += 1;
            check_instance(&mut sweep, name, &cd)?;
        }
    }
    Ok(sweep.report)
}

fn check_instance(sweep: &mut Sweep, form: &str, cd: &CrossedDiagram) -> Result<()> {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let cross = cd.crosses().clone();
    let a = analyze(cd);

    // Criterion/oracle agreement.
    sweep.check(
        form,
        &cross,
        "fundamental",
        oracle_fundamental(cd),
        a.fundamental,
    );
    match oracle_weak_largest(cd) {
        Ok((nondeg, _)) => sweep.check(form, &cross, "weak", nondeg, a.weakly_nondegenerate),
        Err(e) => sweep.check(form, &cross, "weak-largest-unique", "unique", e),
    }

    // Dimension identity.
    let pd = parabolic_roots(rs, cd.crosses());
    let sigma_q = conj.sigma_set(&pd.q);
    let inter = pd.q.intersection(&sigma_q).count();
    sweep.check(
        form,
        &cross,
        "dimension-identity",
        rs.len() - inter,
        2 * a.n + a.k,
    );
    sweep.check(
        form,
        &cross,
        "skew-balance",
        pd.q.difference(&sigma_q).count(),
        sigma_q.difference(&pd.q).count(),
    );

    // Implication chain.
    sweep.check(
        form,
        &cross,
        "strict-implies-weak",
        true,
        !a.strictly_nondegenerate || a.weakly_nondegenerate,
    );
    sweep.check(
        form,
        &cross,
        "weak-implies-ideal",
        true,
        !a.weakly_nondegenerate || a.ideal_nondegenerate,
    );

    // Component-wise conjunction over the sigma-connected components.
    let components = cd.satake().sigma_components();
    if components.len() > 1 {
        let mut conj_flags = [true; 7];
        for nodes in &components {
            let (sat, labels) = cd.satake().restrict(nodes)?;
            let crosses: BTreeSet<usize> = cd
                .crosses()
                .iter()
                .filter(|c| nodes.contains(c))
                .map(|&c| labels.iter().position(|&l| l == c).unwrap() + 1)
                .collect();
            let part = analyze(&CrossedDiagram::new(sat, crosses)?);
            for (slot, value) in conj_flags.iter_mut().zip([
                part.effective,
                part.totally_real,
                part.totally_complex,
                part.fundamental,
                part.weakly_nondegenerate,
                part.strictly_nondegenerate,
                part.ideal_nondegenerate,
            ]) {
                *slot &= value;
            }
        }
        let whole = [
            a.effective,
            a.totally_real,
            a.totally_complex,
            a.fundamental,
            a.weakly_nondegenerate,
            a.strictly_nondegenerate,
            a.ideal_nondegenerate,
        ];
        for (name_flag, (c, w)) in [
            "effective",
            "totally-real",
            "totally-complex",
            "fundamental",
            "weak",
            "strict",
            "ideal",
        ]
        .iter()
        .zip(conj_flags.iter().zip(whole.iter()))
        {
            sweep.check(
                form,
                &cross,
                &format!("component-conjunction-{name_flag}"),
                c,
                w,
            );
        }
    }

    // Fundamental reduction postconditions.
    let fund = fundamental_reduction(cd)?;
    sweep.check(
        form,
        &cross,
        "fund-reduction-base-totally-real",
        0,
        analyze(&fund.base).n,
    );
    if let Some(eff) = &fund.report.effective_fiber {
        sweep.check(
            form,
            &cross,
            "fund-reduction-fiber-fundamental",
            true,
            parabolic::is_fundamental(&eff.cd),
        );
    }
    let q = pd.q.clone();
    let envelope: RootSet = q.union(&sigma_q).copied().collect();
    let base_q = parabolic_roots(rs, &fund.psi).q;
    sweep.check(
        form,
        &cross,
        "fund-reduction-closure",
        true,
        rs.closure(&envelope) == base_q,
    );
    sweep.check(
        form,
        &cross,
        "fund-reduction-nodes",
        fmt_node_set(&(1..=rs.rank()).filter(|n| !fund.psi.contains(n)).collect()),
        fmt_node_set(&fund.report.fiber_nodes),
    );

    // Weak reduction postconditions on fundamental instances.
    if a.fundamental {
        let weak = weak_reduction(cd)?;
        if weak.used_exhaustive_fallback {
            sweep.report.exhaustive_fallbacks += 1;
        }
        sweep.check(
            form,
            &cross,
            "weak-reduction-base",
            true,
            parabolic::is_weakly_nondegenerate(&weak.base),
        );
        sweep.check(
            form,
            &cross,
            "weak-reduction-fiber-codim",
            0,
            weak.report.fiber_k,
        );
    }

    // Every fibration of the instance: revalidation and structure.
    let marks: Vec<usize> = cd.crosses().iter().copied().collect();
    for bits in 0..(1u32 << marks.len()) {
        let psi: BTreeSet<usize> = marks
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &m)| m)
            .collect();
        let tag = format!("{{{}}}", fmt_node_set(&psi));
        let report = match fiber_over(cd, &psi) {
            Ok(r) => r,
            Err(e) => {
                sweep.check(form, &cross, &format!("fiber-valid psi={tag}"), "valid", e);
                continue;
            }
        };
        sweep.check(
            form,
            &cross,
            &format!("fiber-nodes psi={tag}"),
            fmt_node_set(&fibration::fiber_node_rule(cd, &psi)),
            fmt_node_set(&report.fiber_nodes),
        );
        let sigma_stable = report
            .reductive
            .iter()
            .all(|&i| report.reductive.contains(&conj.sigma(i)));
        sweep.check(
            form,
            &cross,
            &format!("fiber-sigma-stable psi={tag}"),
            true,
            sigma_stable,
        );
        // Equivalent description of the reductive part through the base
        // parabolic's own reductive/nilpotent split.
        let base_reductive = parabolic_roots(rs, &psi).reductive;
        let alt: RootSet = base_reductive
            .iter()
            .copied()
            .filter(|&i| base_reductive.contains(&conj.sigma(i)))
            .collect();
        sweep.check(
            form,
            &cross,
            &format!("fiber-reductive-identity psi={tag}"),
            alt == report.reductive,
            true,
        );
        // The surviving simple roots must be a basis: the abstract root
        // system of the restricted diagram has the same size as the
        // reductive root set.
        let fiber_system_size = report
            .fiber
            .as_ref()
            .map(|sub| sub.cd.root_system().len())
            .unwrap_or(0);
        sweep.check(
            form,
            &cross,
            &format!("fiber-basis psi={tag}"),
            report.reductive.len(),
            fiber_system_size,
        );
        let base = cd.with_crosses(psi.clone())?;
        if analyze(&base).totally_real {
            sweep.check(
                form,
                &cross,
                &format!("cr-fibration-over-real psi={tag}"),
                true,
                report.is_cr_fibration,
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, Family, Params};

    fn crossed(family: Family, params: Params, phi: &[usize]) -> CrossedDiagram {
        let d = lookup(family, &params).unwrap();
        CrossedDiagram::new(d, phi.iter().copied().collect()).unwrap()
    }

    #[test]
    fn closure_oracle_on_the_worked_examples() {
        assert!(oracle_fundamental(&crossed(
            Family::Su,
            Params::Pq(1, 3),
            &[1, 2]
        )));
        assert!(!oracle_fundamental(&crossed(
            Family::Su,
            Params::Pq(2, 2),
            &[2, 3]
        )));
        assert!(oracle_fundamental(&crossed(
            Family::Su,
            Params::Pq(1, 3),
            &[]
        )));
    }

    #[test]
    fn weak_oracle_on_the_worked_examples() {
        let (nondeg, largest) =
            oracle_weak_largest(&crossed(Family::Su, Params::Pq(2, 2), &[2, 3])).unwrap();
        assert!(!nondeg);
        assert_eq!(largest, Some(BTreeSet::from([2])));

        let (nondeg, largest) =
            oracle_weak_largest(&crossed(Family::Su, Params::Pq(1, 3), &[1, 2])).unwrap();
        assert!(nondeg);
        assert!(largest.is_none());

        let (nondeg, _) = oracle_weak_largest(&crossed(Family::Su, Params::Pq(1, 3), &[])).unwrap();
        assert!(nondeg);
    }

    #[test]
    fn sweep_rank_zero_is_empty() {
        let report = sweep_consistency(0).unwrap();
        assert_eq!(report.instances_checked, 0);
        assert_eq!(report.forms, 0);
    }

    #[test]
    fn sweep_rank_one_is_clean() {
        let report = sweep_consistency(1).unwrap();
        assert!(report.ok(), "mismatches: {:?}", report.mismatches);
        assert!(report.forms >= 4);
        assert!(report.pairs >= 8);
    }

    #[test]
    fn sweep_rank_two_is_clean() {
        let report = sweep_consistency(2).unwrap();
        assert!(report.ok(), "mismatches: {:?}", report.mismatches);
        assert_eq!(report.exhaustive_fallbacks, 0);
    }

    /// Deep sweep, several minutes in debug builds. Run on demand with
    /// `cargo test -p crorbit sweep_rank_five -- --ignored`.
    #[test]
    #[ignore]
    fn sweep_rank_five_is_clean() {
        let report = sweep_consistency(5).unwrap();
        assert!(report.ok(), "mismatches: {:?}", report.mismatches);
    }
}
