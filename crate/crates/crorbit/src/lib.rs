//! Root-system combinatorics of minimal orbits in complex flag manifolds.
//!
//! A real form of a complex semisimple Lie algebra is encoded by its Satake
//! diagram; marking a set of nodes with crosses selects a parabolic
//! subalgebra and hence the unique closed orbit of the real group in the
//! corresponding flag manifold. Everything this crate computes about that
//! orbit, including:
//!
//! - CR dimension and codimension, together with effectiveness, total
//!   reality/complexity, fundamentality, and weak/strict/ideal
//!   nondegeneracy ([`parabolic`]);
//! - equivariant fibrations between markings, their fiber diagrams and
//!   effective quotients, and the fundamental and weakly nondegenerate
//!   reductions ([`fibration`]);
//! - brute-force oracles and an exhaustive consistency sweep over the
//!   catalog of real forms ([`oracle`]);
//!
//! is derived from integer root-lattice data alone: no structure constants
//! are ever materialized. Diagrams can be parsed from a small spec language
//! ([`parse`]) and rendered as ASCII, DOT or canonical JSON ([`render`]).
//!
//! ```
//! use crorbit::fibration::fundamental_reduction;
//! use crorbit::{analyze, parse_spec};
//!
//! let cd = parse_spec("su(2,2) cross {2,3}")?;
//! let a = analyze(&cd);
//! assert!(!a.fundamental && a.ideal_nondegenerate);
//!
//! let red = fundamental_reduction(&cd)?;
//! assert_eq!(red.psi, std::collections::BTreeSet::from([2]));
//! # Ok::<(), crorbit::Error>(())
//! ```

pub mod catalog;
pub mod dynkin;
pub mod error;
pub mod fibration;
pub mod oracle;
pub mod parabolic;
pub mod parse;
pub mod render;
pub mod roots;
pub mod satake;

pub use error::{Error, Result};
pub use parabolic::{analyze, CrossedDiagram, OrbitAnalysis};
pub use parse::parse_spec;
pub use satake::SatakeDiagram;
