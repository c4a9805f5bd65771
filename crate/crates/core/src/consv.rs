//! Conserved quantities of an interaction.
//!
//! A map `xi` from states to rationals is conserved when every edge
//! `((a,b),(c,d))` satisfies `xi(a) + xi(b) = xi(c) + xi(d)`. Constants are
//! always conserved and carry no information, so the space is normalized by
//! `xi(0) = 0`; its dimension is the interaction's conserved-quantity count.

use num::{BigInt, Zero};

use crate::interaction::{Interaction, StateSet, Vertex};
use crate::linalg;
use crate::rational::Rational;

/// Canonical basis of the normalized conserved-quantity space.
///
/// Invariants: every vector has length `size()`, starts with 0 (the
/// `xi(0) = 0` normalization), and the vectors form a reduced row echelon
/// matrix over the remaining coordinates: leading entries are 1, appear in
/// strictly increasing columns, and are alone in their column. These pin the
/// basis uniquely, so equal spaces give equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservedBasis {
    states: StateSet,
    vectors: Vec<Vec<Rational>>,
}

impl ConservedBasis {
    pub(crate) fn new(states: StateSet, vectors: Vec<Vec<Rational>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == states.len() && v[0].is_zero()));
        ConservedBasis { states, vectors }
    }

    /// Dimension of the normalized conserved-quantity space.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Number of states.
    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    /// Basis vectors, one rational per state, in row echelon order.
    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// The basis scaled row-wise to primitive integer vectors. Useful as an
    /// exact fingerprint where hashing rationals per configuration would be
    /// wasteful.
    pub fn integer_vectors(&self) -> Vec<Vec<BigInt>> {
        linalg::integer_rows(&self.vectors)
    }

    /// Sum of a basis row over both coordinates of a vertex, for every row:
    /// the conserved value tuple of `v`.
    pub fn vertex_values(&self, v: Vertex) -> Vec<Rational> {
        self.vectors.iter().map(|xi| pair_sum(xi, v)).collect()
    }
}

/// Value of `xi` summed over an ordered state pair.
pub fn pair_sum(xi: &[Rational], v: Vertex) -> Rational {
    &xi[v.0] + &xi[v.1]
}

/// Value of `xi` summed over a whole configuration (one state per site).
pub fn config_sum(xi: &[Rational], values: &[usize]) -> Rational {
    values.iter().map(|&s| xi[s].clone()).sum()
}

/// Whether `xi` (one rational per state) is conserved by every edge of the
/// interaction. Panics when the length does not match the state count.
pub fn is_conserved(inter: &Interaction, xi: &[Rational]) -> bool {
    assert_eq!(xi.len(), inter.size(), "conserved-quantity length must match state count");
    inter.edges().all(|&(u, v)| pair_sum(xi, u) == pair_sum(xi, v))
}

/// Compute the canonical basis of the normalized conserved-quantity space by
/// exact rational elimination over the edge constraints.
pub fn compute_consv(inter: &Interaction) -> ConservedBasis {
    let n = inter.size();
    // Integer constraint rows, deduplicated up to sign before the exact
    // elimination; symmetric closures produce each constraint many times.
    let mut rows: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
    for &((a, b), (c, d)) in inter.edges() {
        let mut row = vec![0i64; n];
        row[a] += 1;
        row[b] += 1;
        row[c] -= 1;
        row[d] -= 1;
        if let Some(first) = row.iter().find(|&&x| x != 0) {
            if *first < 0 {
                for x in &mut row {
                    *x = -*x;
                }
            }
            rows.insert(row);
        }
    }
    let mut constraints: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rational::from(BigInt::from(x))).collect())
        .collect();
    let mut normalization = vec![Rational::zero(); n];
    normalization[0] = Rational::from(BigInt::from(1));
    constraints.push(normalization);
    let basis = linalg::nullspace(&constraints, n);
    ConservedBasis::new(inter.states().clone(), basis)
}
