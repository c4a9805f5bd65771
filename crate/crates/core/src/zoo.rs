//! A zoo of named interactions: the standard particle systems, the
//! combinator-built families, and a few hand-picked specimens used by the
//! test suites. Every entry records its expected conserved dimension and
//! separability so audits can check the builders against the theory.

use std::collections::HashMap;

use crate::algebra::{box_product, wedge, WedgeSpec};
use crate::error::Error;
use crate::interaction::{Interaction, StateSet, Vertex};
use crate::relations::{canonical_form, CanonicalForm};
use crate::Result;

fn indexed(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Interaction> {
    Interaction::new(StateSet::indexed(n)?, edges.iter().copied())
}

/// Simple exclusion: one particle per site, hopping to an empty neighbor.
pub fn exclusion() -> Result<Interaction> {
    indexed(2, &[((1, 0), (0, 1))])
}

/// Interaction with a single state and no moves.
pub(crate) fn singleton() -> Result<Interaction> {
    Interaction::new(StateSet::new(["*"])?, [])
}

fn k_exclusion_raw(kappa: usize) -> Result<Interaction> {
    let mut edges = Vec::new();
    for j in 1..=kappa {
        for k in 0..kappa {
            edges.push(((j, k), (j - 1, k + 1)));
        }
    }
    indexed(kappa + 1, &edges)
}

/// kappa-exclusion: up to `kappa` particles per site, one particle hops at a
/// time. Requires `kappa >= 1`.
pub fn k_exclusion(kappa: usize) -> Result<Interaction> {
    if kappa < 1 {
        return Err(Error::BadZooParams {
            name: "k-exclusion".into(),
            reason: "kappa must be at least 1".into(),
        });
    }
    k_exclusion_raw(kappa)
}

/// Multi-species exclusion: `kappa` distinguishable species plus holes, any
/// two different site contents may swap. Requires `kappa >= 1`.
pub fn multi_species(kappa: usize) -> Result<Interaction> {
    if kappa < 1 {
        return Err(Error::BadZooParams {
            name: "multi-species".into(),
            reason: "kappa must be at least 1".into(),
        });
    }
    let n = kappa + 1;
    let mut edges = Vec::new();
    for j in 0..n {
        for k in 0..n {
            if j != k {
                edges.push(((j, k), (k, j)));
            }
        }
    }
    indexed(n, &edges)
}

/// Single spin flips on states `-1, 1`: one site flips per move, the other
/// is a spectator. Nothing is conserved.
pub fn glauber() -> Result<Interaction> {
    let states = StateSet::new(["-1", "1"])?;
    Interaction::new(
        states,
        [
            ((0, 0), (1, 0)),
            ((1, 0), (1, 1)),
            ((1, 1), (0, 1)),
            ((0, 1), (0, 0)),
        ],
    )
}

/// Lattice gas with energy: particles carrying `0..kappa-1` energy units,
/// built as the wedge of exclusion (at its occupied state) and
/// `(kappa-1)`-exclusion (at its empty state). State `0` is the vacancy and
/// state `j >= 1` is a particle with `j - 1` energy units. Requires
/// `kappa >= 1`.
pub fn lge(kappa: usize) -> Result<Interaction> {
    if kappa < 1 {
        return Err(Error::BadZooParams {
            name: "lge".into(),
            reason: "kappa must be at least 1".into(),
        });
    }
    let built = wedge(&WedgeSpec {
        left: exclusion()?,
        right: if kappa == 1 {
            singleton()?
        } else {
            k_exclusion_raw(kappa - 1)?
        },
        base_left: 1,
        base_right: 0,
    })?;
    // keep numeric labels: the wedge's right block already lands on 2..kappa
    Interaction::new(StateSet::indexed(kappa + 1)?, built.edges().copied())
}

/// Explicit edge list for the lattice gas with energy: energy transfer
/// between two occupied sites, and position swaps whenever one side is a
/// vacancy or a zero-energy particle.
pub fn lge_explicit(kappa: usize) -> Result<Interaction> {
    let n = kappa + 1;
    let mut edges = Vec::new();
    for j in 2..n {
        for k in 1..kappa {
            edges.push(((j, k), (j - 1, k + 1)));
        }
    }
    for j in 0..=1usize.min(kappa) {
        for k in 0..n {
            if j != k {
                edges.push(((j, k), (k, j)));
            }
        }
    }
    indexed(n, &edges)
}

/// `n` independent lanes of `kappa`-exclusion: the box power of
/// [`k_exclusion`]. States are tuples of lane occupancies, flattened
/// row-major. Requires `kappa >= 1`, `lanes >= 1`, and at most 4096 product
/// states.
pub fn n_lane(kappa: usize, lanes: usize) -> Result<Interaction> {
    if kappa < 1 || lanes < 1 {
        return Err(Error::BadZooParams {
            name: "n-lane".into(),
            reason: "kappa and lane count must be at least 1".into(),
        });
    }
    let size = (kappa + 1).checked_pow(lanes as u32).filter(|&s| s <= 4096);
    if size.is_none() {
        return Err(Error::BadZooParams {
            name: "n-lane".into(),
            reason: "product state set exceeds 4096 states".into(),
        });
    }
    let mut prod = k_exclusion(kappa)?;
    for _ in 1..lanes {
        prod = box_product(&prod, &k_exclusion(kappa)?)?;
    }
    Ok(prod)
}

/// Charged particles `-1, 0, +1` where opposite charges annihilate into two
/// neutrals and back, plus charge-neutral swaps.
pub fn two_species_annihilation() -> Result<Interaction> {
    let states = StateSet::new(["-1", "0", "+1"])?;
    Interaction::new(
        states,
        [
            ((0, 1), (1, 0)),
            ((2, 1), (1, 2)),
            ((2, 0), (1, 1)),
            ((1, 1), (0, 2)),
        ],
    )
}

/// A sparse 4-state interaction with the same single conserved quantity as
/// 3-exclusion (the state value itself) that passes both pointwise checks,
/// yet is not irreducible: the value-4 level set splits, so `(2,2)` can
/// never reach `(1,3)` on two sites. Smallest such edge list (8 undirected
/// edges; ties broken lexicographically) that is not graph-isomorphic to
/// 3-exclusion.
pub fn fig14() -> Result<Interaction> {
    indexed(
        4,
        &[
            ((0, 1), (1, 0)),
            ((0, 2), (1, 1)),
            ((0, 2), (2, 0)),
            ((0, 3), (1, 2)),
            ((0, 3), (2, 1)),
            ((0, 3), (3, 0)),
            ((1, 3), (3, 1)),
            ((2, 3), (3, 2)),
        ],
    )
}

/// Lattice gas with energy on 4 states plus one extra move `(1,1) <-> (0,3)`
/// (two zero-energy particles fuse into one fully excited particle and a
/// vacancy). Exactly one conserved quantity survives, proportional to
/// `(0, 2, 3, 4)`.
pub fn new_interaction() -> Result<Interaction> {
    crate::algebra::merge(&lge(3)?, (1, 1), (0, 3))
}

/// Hopping particles carrying a flippable spin: the wedge of exclusion (at
/// its occupied state) and single spin flips (at its first spin state).
pub fn mips() -> Result<Interaction> {
    wedge(&WedgeSpec {
        left: exclusion()?,
        right: glauber()?,
        base_left: 1,
        base_right: 0,
    })
}

/// Metadata for one zoo entry.
#[derive(Debug, Clone, Copy)]
pub struct ZooEntry {
    pub name: &'static str,
    /// Human-readable parameter list, empty when the entry takes none.
    pub params: &'static str,
    pub description: &'static str,
}

/// All zoo entries in listing order.
pub fn entries() -> &'static [ZooEntry] {
    &[
        ZooEntry {
            name: "exclusion",
            params: "",
            description: "one particle per site, hopping to an empty neighbor",
        },
        ZooEntry {
            name: "k-exclusion",
            params: "kappa",
            description: "up to kappa particles per site, one hops at a time",
        },
        ZooEntry {
            name: "multi-species",
            params: "kappa",
            description: "kappa species plus holes, distinct contents swap",
        },
        ZooEntry {
            name: "glauber",
            params: "",
            description: "single spin flips, nothing conserved",
        },
        ZooEntry {
            name: "lge",
            params: "kappa",
            description: "lattice gas of particles carrying energy units",
        },
        ZooEntry {
            name: "n-lane",
            params: "kappa lanes",
            description: "independent lanes of kappa-exclusion on product states",
        },
        ZooEntry {
            name: "two-species-annihilation",
            params: "",
            description: "charges -1,0,+1 with annihilation into neutrals",
        },
        ZooEntry {
            name: "fig14",
            params: "",
            description: "4 states, one conserved quantity, yet a level set splits already on two sites",
        },
        ZooEntry {
            name: "new-interaction",
            params: "",
            description: "energy-carrying lattice gas with a fusion move, one conserved quantity",
        },
        ZooEntry {
            name: "mips",
            params: "",
            description: "hopping particles carrying a flippable spin",
        },
    ]
}

fn want_params(name: &str, params: &[usize], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::BadZooParams {
            name: name.into(),
            reason: format!("expected {n} parameter(s), got {}", params.len()),
        });
    }
    Ok(())
}

/// Build a zoo interaction by name.
pub fn build(name: &str, params: &[usize]) -> Result<Interaction> {
    match name {
        "exclusion" => {
            want_params(name, params, 0)?;
            exclusion()
        }
        "k-exclusion" => {
            want_params(name, params, 1)?;
            k_exclusion(params[0])
        }
        "multi-species" => {
            want_params(name, params, 1)?;
            multi_species(params[0])
        }
        "glauber" => {
            want_params(name, params, 0)?;
            glauber()
        }
        "lge" => {
            want_params(name, params, 1)?;
            lge(params[0])
        }
        "n-lane" => {
            want_params(name, params, 2)?;
            n_lane(params[0], params[1])
        }
        "two-species-annihilation" => {
            want_params(name, params, 0)?;
            two_species_annihilation()
        }
        "fig14" => {
            want_params(name, params, 0)?;
            fig14()
        }
        "new-interaction" => {
            want_params(name, params, 0)?;
            new_interaction()
        }
        "mips" => {
            want_params(name, params, 0)?;
            mips()
        }
        _ => Err(Error::UnknownZooName(name.into())),
    }
}

/// Expected conserved dimension and separability of a zoo interaction, used
/// by audits.
pub fn expected(name: &str, params: &[usize]) -> Result<(usize, bool)> {
    Ok(match (name, params) {
        ("exclusion", []) => (1, true),
        ("k-exclusion", [_]) => (1, true),
        ("multi-species", [k]) => (*k, true),
        ("glauber", []) => (0, false),
        ("lge", [1]) => (1, true),
        ("lge", [_]) => (2, true),
        ("n-lane", [_, n]) => (*n, true),
        ("two-species-annihilation", []) => (1, true),
        ("fig14", []) => (1, true),
        ("new-interaction", []) => (1, true),
        ("mips", []) => (1, false),
        _ => {
            return Err(Error::BadZooParams {
                name: name.into(),
                reason: "no expectation recorded for these parameters".into(),
            })
        }
    })
}

/// Small zoo instances with at most `max_size` states, for sweeps. Each
/// comes with a display name.
pub fn sample_instances(max_size: usize) -> Result<Vec<(String, Interaction)>> {
    let mut out: Vec<(String, Interaction)> = Vec::new();
    out.push(("exclusion".into(), exclusion()?));
    for k in 2..=4usize {
        out.push((format!("{k}-exclusion"), k_exclusion(k)?));
    }
    for k in 2..=3usize {
        out.push((format!("multi-species-{k}"), multi_species(k)?));
    }
    out.push(("glauber".into(), glauber()?));
    for k in 2..=3usize {
        out.push((format!("lge-{k}"), lge(k)?));
    }
    out.push(("2-lane-1-exclusion".into(), n_lane(1, 2)?));
    out.push(("two-species-annihilation".into(), two_species_annihilation()?));
    out.push(("fig14".into(), fig14()?));
    out.push(("new-interaction".into(), new_interaction()?));
    out.push(("mips".into(), mips()?));
    Ok(out.into_iter().filter(|(_, i)| i.size() <= max_size).collect())
}

/// Class names for the classification catalog on `kappa + 1` states: the
/// canonical forms of the zoo members of that size, first listed name wins.
pub(crate) fn class_names(kappa: usize) -> Result<HashMap<CanonicalForm, String>> {
    let mut candidates: Vec<(String, Interaction)> = Vec::new();
    match kappa {
        1 => {
            candidates.push(("exclusion".into(), exclusion()?));
            candidates.push(("multi-species-1".into(), multi_species(1)?));
            candidates.push(("glauber".into(), glauber()?));
        }
        2 => {
            candidates.push(("2-exclusion".into(), k_exclusion(2)?));
            candidates.push(("multi-species-2".into(), multi_species(2)?));
            candidates.push(("lge-2".into(), lge(2)?));
            candidates.push(("two-species-annihilation".into(), two_species_annihilation()?));
            candidates.push(("mips".into(), mips()?));
        }
        3 => {
            candidates.push(("3-exclusion".into(), k_exclusion(3)?));
            candidates.push(("multi-species-3".into(), multi_species(3)?));
            candidates.push(("lge-3".into(), lge(3)?));
            candidates.push(("2-lane-1-exclusion".into(), n_lane(1, 2)?));
            candidates.push(("new-interaction".into(), new_interaction()?));
            candidates.push(("fig14".into(), fig14()?));
        }
        4 => {
            candidates.push(("4-exclusion".into(), k_exclusion(4)?));
            candidates.push(("multi-species-4".into(), multi_species(4)?));
            candidates.push(("lge-4".into(), lge(4)?));
        }
        _ => {}
    }
    let mut names = HashMap::new();
    for (name, inter) in candidates {
        let cf = canonical_form(&inter)?;
        names.entry(cf).or_insert(name);
    }
    Ok(names)
}
