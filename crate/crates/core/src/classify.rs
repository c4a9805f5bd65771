//! Exhaustive classification of interactions on a small state set up to
//! equivalence of conserved structure.
//!
//! Every class contains a completion, and every completion arises from the
//! all-swaps interaction by repeatedly adding one edge between two vertices
//! of different components and completing again; each such step cuts the
//! conserved space by one independent linear condition. The search therefore
//! walks conserved subspaces directly: a node is a basis, its children are
//! the cuts by pair-difference functionals of two component cells, and nodes
//! are deduplicated by canonical form.

use std::collections::{HashMap, VecDeque};

use num::BigInt;

use crate::consv::compute_consv;
use crate::error::Error;
use crate::interaction::{Interaction, StateSet, Vertex};
use crate::linalg;
use crate::rational::Rational;
use crate::relations::{canonical_form_of_basis, is_separable, CanonicalForm};
use crate::zoo;
use crate::Result;

/// Largest supported kappa (state count minus one) for classification.
pub const CLASSIFY_MAX_KAPPA: usize = 4;

/// One equivalence class of interactions on a fixed state set.
#[derive(Debug, Clone)]
pub struct ClassRecord {
    /// Fingerprint shared by every member of the class.
    pub canonical: CanonicalForm,
    /// A member of the class, materialized as a completion (it equals its
    /// own completion).
    pub representative: Interaction,
    /// Conserved dimension of the class.
    pub dim: usize,
    /// Whether the class's conserved quantities separate the states.
    pub separable: bool,
    /// Name of a zoo interaction in this class, when one exists.
    pub name: Option<String>,
}

/// Classification result: every class on `kappa + 1` states, sorted by
/// dimension descending, then canonical form ascending.
#[derive(Debug, Clone)]
pub struct ClassCatalog {
    pub kappa: usize,
    pub separable_only: bool,
    pub classes: Vec<ClassRecord>,
}

impl ClassCatalog {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes of one dimension, in catalog order.
    pub fn at_dim(&self, dim: usize) -> Vec<&ClassRecord> {
        self.classes.iter().filter(|c| c.dim == dim).collect()
    }

    /// Number of classes per dimension, indexed by dimension.
    pub fn dim_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.kappa + 1];
        for c in &self.classes {
            counts[c.dim] += 1;
        }
        counts
    }
}

/// Level sets of the conserved values over all vertices, cells ordered by
/// least vertex, each cell sorted.
fn fiber_cells(size: usize, basis: &[Vec<Rational>]) -> Vec<Vec<Vertex>> {
    let scaled = linalg::integer_rows(basis);
    let mut order: Vec<Vec<Vertex>> = Vec::new();
    let mut by_key: HashMap<Vec<BigInt>, usize> = HashMap::new();
    for a in 0..size {
        for b in 0..size {
            let key: Vec<BigInt> = scaled.iter().map(|xi| &xi[a] + &xi[b]).collect();
            match by_key.entry(key) {
                std::collections::hash_map::Entry::Occupied(e) => order[*e.get()].push((a, b)),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(order.len());
                    order.push(vec![(a, b)]);
                }
            }
        }
    }
    order
}

/// Completion interaction whose components are the given cells.
fn materialize(size: usize, cells: &[Vec<Vertex>]) -> Interaction {
    let mut edges = Vec::new();
    for cell in cells {
        for &u in cell {
            for &v in cell {
                edges.push((u, v));
            }
        }
    }
    Interaction::new(StateSet::indexed(size).expect("indexed state set"), edges)
        .expect("cells are in range")
}

fn vertex_values(basis: &[Vec<Rational>], v: Vertex) -> Vec<Rational> {
    basis.iter().map(|xi| &xi[v.0] + &xi[v.1]).collect()
}

/// Classify all interactions on `kappa + 1` states up to equivalence.
/// Exhaustive and exact; guarded at [`CLASSIFY_MAX_KAPPA`].
pub fn classify(kappa: usize, separable_only: bool) -> Result<ClassCatalog> {
    if !(1..=CLASSIFY_MAX_KAPPA).contains(&kappa) {
        return Err(Error::KappaOutOfRange {
            kappa,
            limit: CLASSIFY_MAX_KAPPA,
        });
    }
    let size = kappa + 1;
    let root = compute_consv(&zoo::multi_species(kappa)?);
    debug_assert_eq!(root.dim(), kappa);

    let mut seen: HashMap<CanonicalForm, Vec<Vec<Rational>>> = HashMap::new();
    let mut queue: VecDeque<Vec<Vec<Rational>>> = VecDeque::new();
    let root_vectors = root.vectors().to_vec();
    seen.insert(
        canonical_form_of_basis(size, &root_vectors),
        root_vectors.clone(),
    );
    queue.push_back(root_vectors);

    while let Some(basis) = queue.pop_front() {
        if basis.is_empty() {
            continue;
        }
        let cells = fiber_cells(size, &basis);
        // Pair-difference functionals of two distinct cells, expressed in
        // basis coordinates; proportional functionals cut the same subspace.
        let mut directions: Vec<Vec<Rational>> = Vec::new();
        let mut seen_dirs: std::collections::HashSet<Vec<Rational>> = std::collections::HashSet::new();
        for i in 0..cells.len() {
            let vi = vertex_values(&basis, cells[i][0]);
            for cell_j in &cells[i + 1..] {
                let vj = vertex_values(&basis, cell_j[0]);
                let lam: Vec<Rational> = vi.iter().zip(&vj).map(|(x, y)| x - y).collect();
                let dir = linalg::direction(&lam)
                    .expect("distinct fibers differ in some conserved value");
                if seen_dirs.insert(dir.clone()) {
                    directions.push(dir);
                }
            }
        }
        for lam in directions {
            let child = linalg::cut_with_functional(&basis, &lam);
            assert_eq!(child.len(), basis.len() - 1, "one merge cuts one dimension");
            let cf = canonical_form_of_basis(size, &child);
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(cf) {
                slot.insert(child.clone());
                queue.push_back(child);
            }
        }
    }

    let names = zoo::class_names(kappa)?;
    let mut classes: Vec<ClassRecord> = seen
        .into_iter()
        .map(|(canonical, basis)| {
            let representative = materialize(size, &fiber_cells(size, &basis));
            let dim = basis.len();
            let separable = is_separable(&representative);
            let name = names.get(&canonical).cloned();
            ClassRecord {
                canonical,
                representative,
                dim,
                separable,
                name,
            }
        })
        .filter(|c| !separable_only || c.separable)
        .collect();
    classes.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.canonical.cmp(&b.canonical)));
    Ok(ClassCatalog {
        kappa,
        separable_only,
        classes,
    })
}

/// The classes of one dimension on `kappa + 1` states.
pub fn classes_at_dim(kappa: usize, dim: usize) -> Result<Vec<ClassRecord>> {
    let catalog = classify(kappa, false)?;
    Ok(catalog.at_dim(dim).into_iter().cloned().collect())
}

/// Find the catalog class of an interaction. Errors when the state count is
/// outside the classification guard.
pub fn identify(inter: &Interaction) -> Result<ClassRecord> {
    let kappa = inter.size().saturating_sub(1);
    if !(1..=CLASSIFY_MAX_KAPPA).contains(&kappa) {
        return Err(Error::KappaOutOfRange {
            kappa,
            limit: CLASSIFY_MAX_KAPPA,
        });
    }
    let cf = crate::relations::canonical_form(inter)?;
    let catalog = classify(kappa, false)?;
    catalog
        .classes
        .into_iter()
        .find(|c| c.canonical == cf)
        .ok_or_else(|| Error::InvalidJson("canonical form missing from its own catalog".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::canonical_form;

    #[test]
    fn tiny_catalogs_have_expected_counts() {
        let k1 = classify(1, false).unwrap();
        assert_eq!(k1.len(), 2);
        assert_eq!(classify(1, true).unwrap().len(), 1);
        let k2 = classify(2, false).unwrap();
        assert_eq!(k2.len(), 4);
        assert_eq!(classify(2, true).unwrap().len(), 2);
    }

    #[test]
    fn catalog_is_sorted_and_consistent() {
        let cat = classify(2, false).unwrap();
        let dims: Vec<usize> = cat.classes.iter().map(|c| c.dim).collect();
        let mut sorted = dims.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(dims, sorted);
        for c in &cat.classes {
            assert_eq!(c.canonical.dim(), c.dim);
            assert_eq!(canonical_form(&c.representative).unwrap(), c.canonical);
            let again = crate::algebra::completion(&c.representative);
            assert_eq!(again, c.representative);
        }
    }

    #[test]
    fn guard_rejects_out_of_range_kappa() {
        assert!(classify(0, false).unwrap_err().is_guard());
        assert!(classify(5, false).unwrap_err().is_guard());
    }

    #[test]
    fn identify_finds_named_classes() {
        let two_ex = zoo::k_exclusion(2).unwrap();
        let rec = identify(&two_ex).unwrap();
        assert_eq!(rec.name.as_deref(), Some("2-exclusion"));
        assert_eq!(rec.dim, 1);
        assert!(rec.separable);
    }

    #[test]
    fn classes_at_dim_filters() {
        let ones = classes_at_dim(2, 1).unwrap();
        assert_eq!(ones.len(), 2);
        assert!(ones.iter().any(|c| c.separable));
        assert!(ones.iter().any(|c| !c.separable));
    }
}
