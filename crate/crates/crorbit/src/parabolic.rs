//! Parabolic root data of a cross-marked diagram and the CR invariants of
//! the associated minimal orbit: type (n,k), effectiveness, total
//! reality/complexity, fundamentality and the three nondegeneracy notions.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{RootSet, RootSystem};
use crate::satake::SatakeDiagram;

/// A Satake diagram with a cross set selecting the parabolic.
#[derive(Debug, Clone)]
pub struct CrossedDiagram {
    satake: Arc<SatakeDiagram>,
    crosses: BTreeSet<usize>,
}

impl PartialEq for CrossedDiagram {
    fn eq(&self, other: &Self) -> bool {
        *self.satake == *other.satake && self.crosses == other.crosses
    }
}
impl Eq for CrossedDiagram {}

impl CrossedDiagram {
    pub fn new(satake: impl Into<Arc<SatakeDiagram>>, crosses: BTreeSet<usize>) -> Result<Self> {
        let satake = satake.into();
        for &n in &crosses {
            if n == 0 || n > satake.rank() {
                return Err(Error::NodeOutOfRange(n, satake.rank()));
            }
        }
        Ok(CrossedDiagram { satake, crosses })
    }

    pub fn satake(&self) -> &SatakeDiagram {
        &self.satake
    }

    pub fn satake_arc(&self) -> Arc<SatakeDiagram> {
        Arc::clone(&self.satake)
    }

    pub fn crosses(&self) -> &BTreeSet<usize> {
        &self.crosses
    }

    pub fn root_system(&self) -> &RootSystem {
        self.satake.root_system()
    }

    /// Same diagram, different cross set.
    pub fn with_crosses(&self, crosses: BTreeSet<usize>) -> Result<Self> {
        CrossedDiagram::new(Arc::clone(&self.satake), crosses)
    }
}

/// Root sets of the parabolic subalgebra selected by a cross set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicRootData {
    /// All roots of the parabolic: the positive system plus the retained
    /// negatives.
    pub q: RootSet,
    /// Negative roots whose support avoids the crosses.
    pub retained_negatives: RootSet,
    /// Reductive part `q ∩ (-q)`.
    pub reductive: RootSet,
    /// Nilpotent part `q \ reductive`.
    pub nilpotent: RootSet,
}

/// Roots of the parabolic `q` attached to the cross set `phi`.
pub fn parabolic_roots(rs: &RootSystem, phi: &BTreeSet<usize>) -> ParabolicRootData {
    let mut q = rs.positive();
    let retained_negatives: RootSet = (0..rs.len() as u16)
        .filter(|&i| !rs.is_positive(i) && rs.support(i).is_disjoint(phi))
        .collect();
    q.extend(retained_negatives.iter().copied());
    let reductive: RootSet = q
        .iter()
        .copied()
        .filter(|&i| q.contains(&rs.negate(i)))
        .collect();
    let nilpotent: RootSet = q.difference(&reductive).copied().collect();
    debug_assert_eq!(rs.closure(&q), q, "parabolic root set must be closed");
    ParabolicRootData {
        q,
        retained_negatives,
        reductive,
        nilpotent,
    }
}

/// CR invariants of one cross-marked diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitAnalysis {
    /// CR dimension.
    pub n: usize,
    /// CR codimension.
    pub k: usize,
    /// Real dimension of the acting algebra.
    pub dim_g: usize,
    /// Real dimension of the isotropy.
    pub dim_isotropy: usize,
    pub effective: bool,
    pub totally_real: bool,
    pub totally_complex: bool,
    pub fundamental: bool,
    pub weakly_nondegenerate: bool,
    pub strictly_nondegenerate: bool,
    pub ideal_nondegenerate: bool,
}

impl OrbitAnalysis {
    /// Real dimension of the orbit, `2n + k`.
    pub fn dim_orbit(&self) -> usize {
        2 * self.n + self.k
    }
}

/// CR type and dimensions from the parabolic root data and the conjugation.
pub fn cr_type(cd: &CrossedDiagram) -> (usize, usize, usize, usize) {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let pd = parabolic_roots(rs, cd.crosses());
    let sigma_q = conj.sigma_set(&pd.q);
    let inter = pd.q.intersection(&sigma_q).count();
    let n = pd.q.len() - inter;
    let union = 2 * pd.q.len() - inter;
    let k = rs.len() - union;
    let dim_g = rs.rank() + rs.len();
    let dim_isotropy = rs.rank() + inter;
    (n, k, dim_g, dim_isotropy)
}

/// True when no simple ideal of the complexified algebra lies inside
/// `q ∩ sigma(q)`: no Dynkin component may have all of its roots there.
pub fn is_effective(cd: &CrossedDiagram) -> bool {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let pd = parabolic_roots(rs, cd.crosses());
    let sigma_q = conj.sigma_set(&pd.q);
    let inter: RootSet = pd.q.intersection(&sigma_q).copied().collect();
    !cd.satake().graph().components().iter().any(|component| {
        let nodes = component.node_set();
        (0..rs.len() as u16)
            .filter(|&i| rs.support(i).is_subset(&nodes))
            .all(|i| inter.contains(&i))
    })
}

/// Diagram criterion for fundamentality: no non-imaginary cross may have its
/// arrow partner crossed (a self-paired white cross counts).
pub fn is_fundamental(cd: &CrossedDiagram) -> bool {
    let sat = cd.satake();
    let conj = sat.conjugation();
    cd.crosses()
        .iter()
        .filter(|&&a| !sat.is_black(a))
        .all(|&a| !cd.crosses().contains(&conj.epsilon(a)))
}

/// Crosses whose removal keeps the parabolic inside `q + sigma(q)`; the
/// witnesses of weak degeneracy.
pub fn removable_crosses(cd: &CrossedDiagram) -> BTreeSet<usize> {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let pd = parabolic_roots(rs, cd.crosses());
    let sigma_q = conj.sigma_set(&pd.q);
    let envelope: RootSet = pd.q.union(&sigma_q).copied().collect();
    cd.crosses()
        .iter()
        .copied()
        .filter(|&a| {
            let mut smaller = cd.crosses().clone();
            smaller.remove(&a);
            parabolic_roots(rs, &smaller).q.is_subset(&envelope)
        })
        .collect()
}

/// True when no single cross can be removed without leaving `q + sigma(q)`.
pub fn is_weakly_nondegenerate(cd: &CrossedDiagram) -> bool {
    removable_crosses(cd).is_empty()
}

/// True when every root of `(Q ∪ sigmaQ) \ (Q ∩ sigmaQ)` admits a witness
/// `beta` in `Q ∪ sigmaQ` with `alpha + beta` a root outside `Q ∪ sigmaQ`.
pub fn is_strictly_nondegenerate(cd: &CrossedDiagram) -> bool {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let pd = parabolic_roots(rs, cd.crosses());
    let sigma_q = conj.sigma_set(&pd.q);
    let envelope: RootSet = pd.q.union(&sigma_q).copied().collect();
    let core: RootSet = pd.q.intersection(&sigma_q).copied().collect();
    envelope.iter().all(|&alpha| {
        core.contains(&alpha)
            || envelope.iter().any(|&beta| {
                rs.sum(alpha, beta)
                    .map(|s| !envelope.contains(&s))
                    .unwrap_or(false)
            })
    })
}

/// True when no simple ideal of the real form is simultaneously totally
/// complex and properly crossed. The simple-ideal units are the
/// sigma-connected components.
pub fn is_ideal_nondegenerate(cd: &CrossedDiagram) -> bool {
    let rs = cd.root_system();
    let conj = cd.satake().conjugation();
    let pd = parabolic_roots(rs, cd.crosses());
    let sigma_q = conj.sigma_set(&pd.q);
    let envelope: RootSet = pd.q.union(&sigma_q).copied().collect();
    !cd.satake().sigma_components().iter().any(|nodes| {
        let crossed = !cd.crosses().is_disjoint(nodes);
        let totally_complex = (0..rs.len() as u16)
            .filter(|&i| rs.support(i).is_subset(nodes))
            .all(|i| envelope.contains(&i));
        crossed && totally_complex
    })
}

/// Computes every invariant of one instance.
pub fn analyze(cd: &CrossedDiagram) -> OrbitAnalysis {
    let (n, k, dim_g, dim_isotropy) = cr_type(cd);
    OrbitAnalysis {
        n,
        k,
        dim_g,
        dim_isotropy,
        effective: is_effective(cd),
        totally_real: n == 0,
        totally_complex: k == 0,
        fundamental: is_fundamental(cd),
        weakly_nondegenerate: is_weakly_nondegenerate(cd),
        strictly_nondegenerate: is_strictly_nondegenerate(cd),
        ideal_nondegenerate: is_ideal_nondegenerate(cd),
    }
}
