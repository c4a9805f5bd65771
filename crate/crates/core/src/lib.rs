//! Exact-arithmetic toolkit for *interactions*: symmetric directed graphs on
//! the square of a finite state set, read as the local update rules of a
//! lattice system where two adjacent sites exchange their contents.
//!
//! The library covers:
//!
//! - building and serializing interactions ([`Interaction`], [`StateSet`]);
//! - their conserved quantities over exact rationals ([`compute_consv`],
//!   [`ConservedBasis`]);
//! - structural surgery: [`completion`], [`merge`], [`wedge`] sums and
//!   [`box_product`]s;
//! - comparison up to relabeling and up to conserved-structure
//!   ([`canonical_form`], [`equivalent`], [`isomorphic`],
//!   [`weakly_equivalent`]);
//! - exhaustive classification for small state sets ([`classify`]);
//! - finite configuration spaces on site graphs and a bounded check of the
//!   irreducibility property ([`analyze_config_space`], [`check_iq_bounded`]);
//! - a zoo of named example interactions ([`zoo`]).
//!
//! All linear algebra is exact (arbitrary-precision rationals); every
//! operation is deterministic.

mod algebra;
mod classify;
mod configspace;
mod consv;
mod error;
mod interaction;
mod linalg;
mod rational;
mod relations;
pub mod zoo;

pub use algebra::{box_product, completion, merge, wedge, WedgeSpec};
pub use classify::{classes_at_dim, classify, identify, ClassCatalog, ClassRecord};
pub use configspace::{
    analyze_config_space, check_iq_bounded, derived_checks, parse_family, shuffle, Configuration,
    ConfigSpaceAnalysis, DerivedChecks, FamilyGraph, IqGraphRow, IqReport, IqVerdict, SiteGraph,
    Verdict, DEFAULT_BUDGET, DEFAULT_FAMILY,
};
pub use consv::{compute_consv, config_sum, is_conserved, pair_sum, ConservedBasis};
pub use error::Error;
pub use interaction::{ComponentPartition, Interaction, StateSet, Vertex};
pub use num::BigInt;
pub use rational::{rat, ratio, Rational};
pub use relations::{
    canonical_form, equivalent, is_exchangeable, is_separable, isomorphic, weakly_equivalent,
    CanonicalForm, CANONICAL_FORM_MAX_STATES, WEAK_EQUIV_MAX_STATES,
};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
