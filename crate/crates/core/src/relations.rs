//! Comparing interactions: equality of conserved structure up to relabeling
//! (canonical forms and equivalence), graph isomorphism, weak equivalence
//! across different state-set sizes, and the two pointwise properties that
//! the irreducibility check needs (separable, exchangeable).

use std::collections::HashMap;

use itertools::Itertools;
use num::Zero;

use crate::consv::{compute_consv, is_conserved, ConservedBasis};
use crate::error::Error;
use crate::interaction::{Interaction, Vertex};
use crate::linalg;
use crate::rational::Rational;
use crate::Result;

/// Exhaustive relabeling search bound for [`canonical_form`] and
/// [`isomorphic`].
pub const CANONICAL_FORM_MAX_STATES: usize = 7;

/// Exhaustive map search bound for [`weakly_equivalent`].
pub const WEAK_EQUIV_MAX_STATES: usize = 5;

/// Relabeling-invariant fingerprint of an interaction's conserved structure:
/// the lexicographically least normalized echelon basis matrix over all
/// permutations of the states. Two interactions of equal size have equal
/// canonical forms exactly when some relabeling carries the conserved
/// structure of one onto the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    size: usize,
    dim: usize,
    matrix: Vec<Vec<Rational>>,
}

impl CanonicalForm {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The minimizing matrix: `dim` rows of length `size` in reduced row
    /// echelon form.
    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// Report block: dimension line, then one row per basis vector with
    /// space-separated rationals.
    pub fn render(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for row in &self.matrix {
            out.push_str(&row.iter().map(Rational::to_string).join(" "));
            out.push('\n');
        }
        out
    }
}

fn guard(op: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooManyStates { op, size, limit });
    }
    Ok(())
}

/// Apply a state permutation to a normalized basis: permute coordinates,
/// re-normalize so the image of coordinate 0 is 0, and reduce to echelon
/// form. The result depends only on the spanned space.
pub(crate) fn permuted_basis_matrix(
    vectors: &[Vec<Rational>],
    perm: &[usize],
) -> Vec<Vec<Rational>> {
    let n = perm.len();
    let mut mat: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            let mut w = vec![Rational::zero(); n];
            for (i, x) in v.iter().enumerate() {
                w[perm[i]] = x.clone();
            }
            if !w[0].is_zero() {
                let c = w[0].clone();
                for x in w.iter_mut() {
                    *x = &*x - &c;
                }
            }
            w
        })
        .collect();
    linalg::rref(&mut mat);
    mat
}

pub(crate) fn canonical_form_of_basis(size: usize, vectors: &[Vec<Rational>]) -> CanonicalForm {
    let mut best: Option<Vec<Vec<Rational>>> = None;
    for perm in (0..size).permutations(size) {
        let cand = permuted_basis_matrix(vectors, &perm);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    let matrix = best.unwrap_or_default();
    CanonicalForm {
        size,
        dim: matrix.len(),
        matrix,
    }
}

/// Canonical form of an interaction's conserved structure. Exhausts all
/// state permutations, so it is guarded at [`CANONICAL_FORM_MAX_STATES`].
pub fn canonical_form(inter: &Interaction) -> Result<CanonicalForm> {
    guard("canonical form", inter.size(), CANONICAL_FORM_MAX_STATES)?;
    let basis = compute_consv(inter);
    Ok(canonical_form_of_basis(inter.size(), basis.vectors()))
}

/// Whether some relabeling of states carries the conserved structure of one
/// interaction onto the other's. Interactions over different numbers of
/// states are never equivalent; compare those with [`weakly_equivalent`].
pub fn equivalent(a: &Interaction, b: &Interaction) -> Result<bool> {
    if a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Search for a relabeling of states mapping the edge set of `a` onto the
/// edge set of `b` (self-loops disregarded on both sides). Returns the first
/// such permutation in lexicographic order, as `perm[state of a] = state of
/// b`. Such a relabeling automatically matches the conserved structures.
pub fn isomorphic(a: &Interaction, b: &Interaction) -> Result<Option<Vec<usize>>> {
    guard("isomorphism search", a.size().max(b.size()), CANONICAL_FORM_MAX_STATES)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let n = a.size();
    let strip = |i: &Interaction| -> std::collections::BTreeSet<(Vertex, Vertex)> {
        i.edges().filter(|(u, v)| u != v).copied().collect()
    };
    let ea = strip(a);
    let eb = strip(b);
    if ea.len() != eb.len() {
        return Ok(None);
    }
    for perm in (0..n).permutations(n) {
        let mapped = ea
            .iter()
            .map(|&((p, q), (r, s))| ((perm[p], perm[q]), (perm[r], perm[s])));
        if mapped.clone().all(|e| eb.contains(&e)) {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

/// All maps (not only bijections) from `0..from` to `0..to`, lexicographic.
fn all_maps(from: usize, to: usize) -> impl Iterator<Item = Vec<usize>> {
    std::iter::repeat_n(0..to, from).multi_cartesian_product()
}

/// Matrix of the pullback along `map`: column `j` holds the coordinates of
/// `basis_src[j] ∘ map` in `basis_dst`, when every pullback is conserved and
/// lands in the span. `map` sends the states of `dst` into the states of
/// `src`.
fn pullback_matrix(
    dst: &Interaction,
    basis_dst: &ConservedBasis,
    pivots_dst: &[usize],
    basis_src: &ConservedBasis,
    map: &[usize],
) -> Option<Vec<Vec<Rational>>> {
    let d = basis_dst.dim();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for xi in basis_src.vectors() {
        let mut pulled: Vec<Rational> = map.iter().map(|&s| xi[s].clone()).collect();
        if !pulled[0].is_zero() {
            let c = pulled[0].clone();
            for x in pulled.iter_mut() {
                *x = &*x - &c;
            }
        }
        if !is_conserved(dst, &pulled) {
            return None;
        }
        cols.push(linalg::coordinates_in_rref(
            basis_dst.vectors(),
            pivots_dst,
            &pulled,
        )?);
    }
    // transpose the collected coordinate columns into a d x d matrix
    let mut m = vec![vec![Rational::zero(); d]; d];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m[i][j] = x.clone();
        }
    }
    Some(m)
}

/// Weak equivalence: two maps `fwd: states(a) -> states(b)` and
/// `bwd: states(b) -> states(a)` (arbitrary maps, not bijections) whose
/// pullbacks are mutually inverse isomorphisms of the conserved spaces.
/// Returns the lexicographically first such pair. Exhaustive over all maps,
/// guarded at [`WEAK_EQUIV_MAX_STATES`] states on each side.
pub fn weakly_equivalent(
    a: &Interaction,
    b: &Interaction,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    guard("weak equivalence search", a.size(), WEAK_EQUIV_MAX_STATES)?;
    guard("weak equivalence search", b.size(), WEAK_EQUIV_MAX_STATES)?;
    let basis_a = compute_consv(a);
    let basis_b = compute_consv(b);
    if basis_a.dim() != basis_b.dim() {
        return Ok(None);
    }
    let pivots_a = linalg::rref_pivots(basis_a.vectors());
    let pivots_b = linalg::rref_pivots(basis_b.vectors());
    // Index the backward maps by their pullback matrix, keeping the first
    // map per matrix; then scan forward maps for an inverse partner.
    let mut by_matrix: HashMap<Vec<Vec<Rational>>, Vec<usize>> = HashMap::new();
    for bwd in all_maps(b.size(), a.size()) {
        if let Some(m) = pullback_matrix(b, &basis_b, &pivots_b, &basis_a, &bwd) {
            by_matrix.entry(m).or_insert(bwd);
        }
    }
    for fwd in all_maps(a.size(), b.size()) {
        let Some(m) = pullback_matrix(a, &basis_a, &pivots_a, &basis_b, &fwd) else {
            continue;
        };
        let Some(inv) = linalg::invert(&m) else {
            continue;
        };
        if let Some(bwd) = by_matrix.get(&inv) {
            return Ok(Some((fwd, bwd.clone())));
        }
    }
    Ok(None)
}

/// An interaction is separable when its conserved quantities tell all states
/// apart: no two states share the same column of values.
pub fn is_separable(inter: &Interaction) -> bool {
    separability_witness(inter).is_none()
}

/// The least pair of distinct states carrying identical conserved values, if
/// any.
pub fn separability_witness(inter: &Interaction) -> Option<(usize, usize)> {
    let basis = compute_consv(inter);
    let n = inter.size();
    let col = |s: usize| -> Vec<&Rational> { basis.vectors().iter().map(|v| &v[s]).collect() };
    for s in 0..n {
        for t in s + 1..n {
            if col(s) == col(t) {
                return Some((s, t));
            }
        }
    }
    None
}

/// An interaction is exchangeable when every ordered pair can reach its own
/// swap: `(s, t)` and `(t, s)` always lie in the same component.
pub fn is_exchangeable(inter: &Interaction) -> bool {
    exchangeability_witness(inter).is_none()
}

/// The least vertex whose swap lies in a different component, if any.
pub fn exchangeability_witness(inter: &Interaction) -> Option<Vertex> {
    let parts = inter.components();
    let n = inter.size();
    for s in 0..n {
        for t in s + 1..n {
            if parts.cell_index((s, t)) != parts.cell_index((t, s)) {
                return Some((s, t));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::StateSet;
    use crate::rational::rat;

    fn inter(n: usize, edges: &[(Vertex, Vertex)]) -> Interaction {
        Interaction::new(StateSet::indexed(n).unwrap(), edges.iter().copied()).unwrap()
    }

    fn exclusion() -> Interaction {
        inter(2, &[((1, 0), (0, 1))])
    }

    fn k_exclusion(k: usize) -> Interaction {
        let mut edges = Vec::new();
        for j in 1..=k {
            for l in 0..k {
                edges.push(((j, l), (j - 1, l + 1)));
            }
        }
        inter(k + 1, &edges)
    }

    fn multi_species(n: usize) -> Interaction {
        let mut edges = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    edges.push(((j, k), (k, j)));
                }
            }
        }
        inter(n, &edges)
    }

    #[test]
    fn canonical_form_of_exclusion() {
        let cf = canonical_form(&exclusion()).unwrap();
        assert_eq!(cf.size(), 2);
        assert_eq!(cf.dim(), 1);
        assert_eq!(cf.matrix(), &[vec![rat(0), rat(1)]]);
        assert_eq!(cf.render(), "dim 1\n0 1\n");
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let phi = k_exclusion(2);
        let cf = canonical_form(&phi).unwrap();
        for perm in (0..3).permutations(3) {
            let relabeled = phi.relabeled(&perm).unwrap();
            assert_eq!(canonical_form(&relabeled).unwrap(), cf);
        }
    }

    #[test]
    fn canonical_form_guard() {
        let big = Interaction::empty(8).unwrap();
        let err = canonical_form(&big).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn equivalent_interactions_with_shuffled_labels() {
        let phi = k_exclusion(2);
        let sigma = [2, 0, 1];
        let relabeled = phi.relabeled(&sigma).unwrap();
        assert!(equivalent(&phi, &relabeled).unwrap());
        assert!(!equivalent(&phi, &multi_species(3)).unwrap());
        assert!(!equivalent(&phi, &exclusion()).unwrap());
    }

    #[test]
    fn isomorphic_finds_the_identity_when_it_works() {
        let a = inter(3, &[((1, 0), (0, 1)), ((2, 1), (1, 2)), ((2, 0), (1, 1)), ((1, 1), (0, 2))]);
        let sigma = isomorphic(&a, &k_exclusion(2)).unwrap().unwrap();
        assert_eq!(sigma, vec![0, 1, 2]);
    }

    #[test]
    fn isomorphic_versus_equivalent() {
        // completion of exclusion is equivalent but carries extra structure:
        // same conserved form, same loop-free edges here, so also isomorphic
        let phi = exclusion();
        let hat = crate::algebra::completion(&phi);
        assert!(equivalent(&phi, &hat).unwrap());
        assert!(isomorphic(&phi, &hat).unwrap().is_some());
        // two-species versus a relabeling: isomorphism exists
        let ms = multi_species(3);
        let relabeled = ms.relabeled(&[1, 2, 0]).unwrap();
        assert!(isomorphic(&ms, &relabeled).unwrap().is_some());
        // equivalent but not isomorphic: exclusion with and without an extra
        // edge inside a fiber cannot happen on 2 states; use sizes instead
        assert!(isomorphic(&ms, &exclusion()).unwrap().is_none());
    }

    #[test]
    fn weakly_equivalent_complete_graph_and_singleton() {
        let complete2 = inter(
            2,
            &[
                ((0, 0), (0, 1)),
                ((0, 1), (1, 0)),
                ((1, 0), (1, 1)),
                ((1, 1), (0, 0)),
            ],
        );
        let singleton = Interaction::new(StateSet::new(["*"]).unwrap(), []).unwrap();
        let (fwd, bwd) = weakly_equivalent(&complete2, &singleton).unwrap().unwrap();
        assert_eq!(fwd, vec![0, 0]);
        assert_eq!(bwd, vec![0]);
    }

    #[test]
    fn weakly_equivalent_respects_dimension() {
        assert!(weakly_equivalent(&exclusion(), &multi_species(3))
            .unwrap()
            .is_none());
        // The value sets {0,1} and {0,1,2} are incompatible under pullback:
        // no map from three states to two carries the sum rule across.
        assert!(weakly_equivalent(&exclusion(), &k_exclusion(2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn glued_species_pair_is_weakly_equivalent_to_smaller_multi_species() {
        let glued = crate::algebra::merge(&multi_species(4), (2, 2), (3, 3)).unwrap();
        let ms2 = multi_species(3);
        let (fwd, bwd) = weakly_equivalent(&glued, &ms2).unwrap().unwrap();
        // Collapse the glued pair of species one way, include the survivors
        // back the other way.
        assert_eq!(fwd, vec![0, 1, 2, 2]);
        assert_eq!(bwd, vec![0, 1, 2]);
    }

    #[test]
    fn weak_equivalence_guard() {
        let big = Interaction::empty(6).unwrap();
        assert!(weakly_equivalent(&big, &exclusion()).unwrap_err().is_guard());
    }

    #[test]
    fn separability() {
        assert!(is_separable(&exclusion()));
        assert!(is_separable(&k_exclusion(3)));
        let flip = inter(2, &[((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (0, 0))]);
        assert!(!is_separable(&flip));
        assert_eq!(separability_witness(&flip), Some((0, 1)));
        // dim 0 on one state: vacuously separable
        let one = Interaction::new(StateSet::new(["x"]).unwrap(), []).unwrap();
        assert!(is_separable(&one));
    }

    #[test]
    fn exchangeability() {
        assert!(is_exchangeable(&multi_species(4)));
        assert!(is_exchangeable(&k_exclusion(2)));
        let frozen = Interaction::empty(2).unwrap();
        assert!(!is_exchangeable(&frozen));
        assert_eq!(exchangeability_witness(&frozen), Some((0, 1)));
    }
}
