//! Quantum-logic workbench.
//!
//! Represents propositions about finite-dimensional quantum systems as
//! projectors / closed linear subspaces and evaluates propositional
//! formulas over them under three rival semantics:
//!
//! * a three-valued valuation (Kleene-strong or Bochvar-internal
//!   connectives),
//! * the Birkhoff–von Neumann bivaluation, in truth-functional and
//!   lattice modes,
//! * a partial bivaluation with truth-value gaps and undefined formulas.
//!
//! The [`scenarios`] module builds executable double-slit, Schrödinger-cat
//! and Wigner's-friend experiments on top of the kernel.
//!
//! ```
//! use qlogic::formula::Formula;
//! use qlogic::scenarios::{build_double_slit, DoubleSlitConfig};
//! use qlogic::semantics::{partial, PartialTruth};
//!
//! let scenario = build_double_slit(&DoubleSlitConfig {
//!     n_points: 512,
//!     ..Default::default()
//! })?;
//! let atom = Formula::atom("P1");
//! let xor = Formula::parse("P1 ^ P2").unwrap();
//! let state = scenario.state_vector();
//!
//! // On an equal superposition the atoms have no truth value, yet the
//! // exclusive disjunction is true.
//! assert_eq!(partial(&atom, &scenario.binding, state)?, PartialTruth::Gap);
//! assert_eq!(partial(&xor, &scenario.binding, state)?, PartialTruth::True);
//! # Ok::<(), qlogic::Error>(())
//! ```

pub mod error;
pub mod formula;
pub mod hilbert;
pub mod lattice;
pub mod scenarios;
pub mod semantics;
pub mod tol;

pub(crate) mod span;

// The projector API takes and returns nalgebra matrices; re-export the
// crate so downstream code can name them without a separate dependency.
pub use nalgebra;

pub use error::{Error, Result};
pub use formula::{Formula, ParseError};
pub use hilbert::{
    free_evolve, is_boolean_block, CompositeState, PositionGrid, Projector, Space, StateVector,
};
pub use lattice::{
    distributivity_report, relation, DistributivityReport, Membership, Relation, Subspace,
};
pub use scenarios::{
    attach_which_way_detector, build_double_slit, collapse, intensity_curve, interference_curve,
    parse_scenario_file, schrodinger_cat, wigner_friend_report, DoubleSlitConfig, Scenario,
    WignerReport,
};
pub use semantics::{
    bvn, comparability, duality_report, evidence_pair, partial, three_valued,
    verification_probability, Binding, BvnMode, ComparabilityMode, PartialTruth, SemanticsConfig,
    ThreeValuedVariant, TruthValue3,
};
