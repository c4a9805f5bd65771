//! Surgery on interactions: saturating the edge set without changing the
//! conserved structure (completion), forcing two vertices together (merge),
//! and the two combinators that build larger systems from smaller ones
//! (wedge sum and box product).

use std::collections::HashMap;

use num::BigInt;

use crate::consv::{compute_consv, pair_sum};
use crate::error::Error;
use crate::interaction::{Interaction, StateSet, Vertex};
use crate::Result;

/// The largest interaction with the same conserved quantities: connect every
/// two vertices whose conserved value tuples agree. The components of the
/// result are exactly the level sets of the conserved quantities, and
/// completing again changes nothing.
pub fn completion(inter: &Interaction) -> Interaction {
    let basis = compute_consv(inter);
    let n = inter.size();
    let scaled = basis.integer_vectors();
    let mut fibers: HashMap<Vec<BigInt>, Vec<Vertex>> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let key: Vec<BigInt> = scaled.iter().map(|xi| &xi[a] + &xi[b]).collect();
            fibers.entry(key).or_default().push((a, b));
        }
    }
    let mut edges = Vec::new();
    for cell in fibers.values() {
        for &u in cell {
            for &v in cell {
                edges.push((u, v));
            }
        }
    }
    Interaction::new(inter.states().clone(), edges).expect("completion edges are in range")
}

/// Add the edge `(s, t)` (and its reverse) to the interaction. Errors unless
/// the two vertices currently carry different conserved value tuples; when
/// they do, the conserved dimension drops by exactly one.
pub fn merge(inter: &Interaction, s: Vertex, t: Vertex) -> Result<Interaction> {
    let n = inter.size();
    for v in [s, t] {
        if v.0 >= n || v.1 >= n {
            return Err(Error::VertexOutOfRange(v.0, v.1, n));
        }
    }
    let basis = compute_consv(inter);
    let separated = basis
        .vectors()
        .iter()
        .any(|xi| pair_sum(xi, s) != pair_sum(xi, t));
    if !separated {
        return Err(Error::MergeNoEffect(s, t));
    }
    Interaction::new(
        inter.states().clone(),
        inter.edges().copied().chain([(s, t)]),
    )
}

/// How to glue two interactions at one state each.
#[derive(Debug, Clone)]
pub struct WedgeSpec {
    pub left: Interaction,
    pub right: Interaction,
    /// State of `left` to glue.
    pub base_left: usize,
    /// State of `right` to glue.
    pub base_right: usize,
}

/// Wedge sum: the disjoint union of the two state sets with the two base
/// states identified, keeping all edges of both sides and adding every swap
/// between a left state and a right state. The conserved dimension of the
/// result is the sum of the two inputs' dimensions.
///
/// Indexing: left states keep their indices (the glued state sits at
/// `base_left`); right states other than `base_right` follow in their
/// original order starting at `left.size()`.
pub fn wedge(spec: &WedgeSpec) -> Result<Interaction> {
    let n1 = spec.left.size();
    let n2 = spec.right.size();
    if spec.base_left >= n1 {
        return Err(Error::VertexOutOfRange(spec.base_left, 0, n1));
    }
    if spec.base_right >= n2 {
        return Err(Error::VertexOutOfRange(spec.base_right, 0, n2));
    }
    let right_index = |j: usize| -> usize {
        if j == spec.base_right {
            spec.base_left
        } else if j < spec.base_right {
            n1 + j
        } else {
            n1 + j - 1
        }
    };
    let mut labels: Vec<String> = spec.left.states().labels().to_vec();
    for (j, l) in spec.right.states().labels().iter().enumerate() {
        if j != spec.base_right {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = spec.left.edges().copied().collect();
    for &((a, b), (c, d)) in spec.right.edges() {
        edges.push((
            (right_index(a), right_index(b)),
            (right_index(c), right_index(d)),
        ));
    }
    let right_block: Vec<usize> = std::iter::once(spec.base_left)
        .chain(n1..n1 + n2 - 1)
        .collect();
    for s in 0..n1 {
        for &t in &right_block {
            if s != t {
                edges.push(((s, t), (t, s)));
            }
        }
    }
    Interaction::new(StateSet::new(labels)?, edges)
}

/// Box product: states are pairs `(i, j)` of one state from each factor,
/// flattened row-major as `i * right.size() + j`. A move changes one factor
/// coordinate on both sites by an edge of that factor and keeps the other
/// factor coordinate fixed. When at least one factor is exchangeable, the
/// conserved dimension of the product is the sum of the factors'.
pub fn box_product(left: &Interaction, right: &Interaction) -> Result<Interaction> {
    let n1 = left.size();
    let n2 = right.size();
    let flat = |i: usize, j: usize| i * n2 + j;
    let mut labels = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            labels.push(format!(
                "({},{})",
                left.states().label(i),
                right.states().label(j)
            ));
        }
    }
    let mut edges = Vec::new();
    for &((a, b), (c, d)) in left.edges() {
        for x in 0..n2 {
            for y in 0..n2 {
                edges.push(((flat(a, x), flat(b, y)), (flat(c, x), flat(d, y))));
            }
        }
    }
    for &((x, y), (z, w)) in right.edges() {
        for a in 0..n1 {
            for b in 0..n1 {
                edges.push(((flat(a, x), flat(b, y)), (flat(a, z), flat(b, w))));
            }
        }
    }
    Interaction::new(StateSet::new(labels)?, edges)
}
