use thiserror::Error;

use crate::interaction::Vertex;

/// Errors produced by the library.
///
/// Variants split into three groups: domain errors (bad inputs), resource
/// guards (inputs that are structurally fine but too large for the
/// exhaustive algorithms), and serialization problems. [`Error::is_guard`]
/// distinguishes the guards so callers can map them to a dedicated exit
/// status.
#[derive(Debug, Error)]
pub enum Error {
    #[error("state set must be nonempty")]
    EmptyStateSet,
    #[error("duplicate state label {0:?}")]
    DuplicateStateLabel(String),
    #[error("edge (({0},{1}),({2},{3})) references a state index out of range for {4} states")]
    EdgeOutOfRange(usize, usize, usize, usize, usize),
    #[error("vertex ({0},{1}) references a state index out of range for {2} states")]
    VertexOutOfRange(usize, usize, usize),
    #[error("merge has no effect on the conserved structure: ({},{}) and ({},{}) carry equal conserved sums", (.0).0, (.0).1, (.1).0, (.1).1)]
    MergeNoEffect(Vertex, Vertex),
    #[error("state sets of sizes {0} and {1} cannot be combined this way")]
    SizeMismatch(usize, usize),
    #[error("{op} supports at most {limit} states, got {size}")]
    TooManyStates {
        op: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("classification supports 1 <= kappa <= {limit}, got {kappa}")]
    KappaOutOfRange { kappa: usize, limit: usize },
    #[error("configuration space needs {needed} configurations, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("site graph is not connected")]
    DisconnectedSiteGraph,
    #[error("site graph edge ({0},{1}) references a site out of range for {2} sites")]
    SiteOutOfRange(usize, usize, usize),
    #[error("site graph must have at least one site")]
    EmptySiteGraph,
    #[error("{0} is not a permutation of the sites")]
    NotAPermutation(String),
    #[error("configuration value {value} at site {site} is out of range for {states} states")]
    ConfigValueOutOfRange {
        site: usize,
        value: usize,
        states: usize,
    },
    #[error("configuration has {got} sites, expected {expected}")]
    ConfigLengthMismatch { got: usize, expected: usize },
    #[error("unknown zoo interaction {0:?}")]
    UnknownZooName(String),
    #[error("bad parameters for zoo interaction {name}: {reason}")]
    BadZooParams { name: String, reason: String },
    #[error("cannot parse graph family {input:?}: {reason}")]
    BadFamilySpec { input: String, reason: String },
    #[error("invalid interaction data: {0}")]
    InvalidJson(String),
}

impl Error {
    /// True for resource-guard errors: the input was well-formed but too
    /// large for an exhaustive algorithm.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::TooManyStates { .. }
                | Error::KappaOutOfRange { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}
