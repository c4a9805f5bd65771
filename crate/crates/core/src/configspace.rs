//! Finite configuration spaces: one state per site of a finite connected
//! graph, moves given by applying the interaction across one site edge.
//!
//! The conserved quantities force components of the configuration space to
//! refine the level sets of the conserved sums. The interaction has the
//! irreducibility property when the two partitions agree on every finite
//! connected graph; [`check_iq_bounded`] tests a finite family, so a FAIL is
//! a genuine disproof while a PASS certifies only the family tested.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::consv::compute_consv;
use crate::error::Error;
use crate::interaction::{Interaction, Vertex};
use crate::rational::Rational;
use crate::relations::{exchangeability_witness, separability_witness};
use crate::Result;

/// Default cap on the number of configurations a single analysis may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default graph family for the bounded irreducibility check.
pub const DEFAULT_FAMILY: &str = "paths:2..5,cycles:3..4";

/// Finite site graph: vertices `0..sites`, symmetric edge set (closed under
/// reversal at construction). Connectivity is precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteGraph {
    sites: usize,
    edges: BTreeSet<(usize, usize)>,
    connected: bool,
    label: String,
}

impl SiteGraph {
    pub fn new<I>(sites: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_label(sites, edges, None)
    }

    fn with_label<I>(sites: usize, edges: I, label: Option<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if sites == 0 {
            return Err(Error::EmptySiteGraph);
        }
        let mut set = BTreeSet::new();
        for (x, y) in edges {
            if x >= sites || y >= sites {
                return Err(Error::SiteOutOfRange(x, y, sites));
            }
            set.insert((x, y));
            set.insert((y, x));
        }
        let connected = {
            let mut seen = vec![false; sites];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut count = 1;
            while let Some(x) = queue.pop_front() {
                for &(a, b) in set.range((x, 0)..(x + 1, 0)) {
                    debug_assert_eq!(a, x);
                    if !seen[b] {
                        seen[b] = true;
                        count += 1;
                        queue.push_back(b);
                    }
                }
            }
            count == sites
        };
        let label =
            label.unwrap_or_else(|| format!("graph({} sites, {} edges)", sites, set.len() / 2));
        Ok(SiteGraph {
            sites,
            edges: set,
            connected,
            label,
        })
    }

    /// Path on `n >= 1` sites (a single site when `n == 1`).
    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::EmptySiteGraph);
        }
        Self::with_label(n, (1..n).map(|i| (i - 1, i)), Some(format!("path({n})")))
    }

    /// Cycle on `n >= 3` sites.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadFamilySpec {
                input: format!("cycle({n})"),
                reason: "cycles need at least 3 sites".into(),
            });
        }
        Self::with_label(
            n,
            (0..n).map(|i| (i, (i + 1) % n)),
            Some(format!("cycle({n})")),
        )
    }

    /// Star on `n >= 2` sites: site 0 is the center.
    pub fn star(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadFamilySpec {
                input: format!("star({n})"),
                reason: "stars need at least 2 sites".into(),
            });
        }
        Self::with_label(n, (1..n).map(|i| (0, i)), Some(format!("star({n})")))
    }

    /// Complete graph on `n >= 1` sites.
    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::EmptySiteGraph);
        }
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::with_label(n, edges, Some(format!("complete({n})")))
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Directed edges, both directions.
    pub fn edges(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.edges.iter()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// One state per site.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration {
    values: Vec<usize>,
}

impl Configuration {
    pub fn new(values: Vec<usize>) -> Self {
        Configuration { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Relocate site contents along a permutation: the new value at site `z` is
/// the old value at site `sigma[z]`.
pub fn shuffle(eta: &Configuration, sigma: &[usize]) -> Result<Configuration> {
    let n = eta.len();
    let mut seen = vec![false; n];
    if sigma.len() != n
        || sigma
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::NotAPermutation(format!("{sigma:?}")));
    }
    Ok(Configuration::new(
        sigma.iter().map(|&z| eta.values[z]).collect(),
    ))
}

/// Outcome of comparing configuration-space components against conserved
/// level sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Components equal level sets on this graph.
    Match,
    /// Two configurations with equal conserved sums in different components;
    /// the lexicographically least such pair.
    Mismatch {
        witness: (Configuration, Configuration),
    },
}

/// Exhaustive analysis of one interaction on one connected site graph.
#[derive(Debug, Clone)]
pub struct ConfigSpaceAnalysis {
    interaction: Interaction,
    site_graph: SiteGraph,
    total: u64,
    component_partition: Vec<Vec<u64>>,
    fiber_partition: Vec<Vec<u64>>,
    fiber_values: Vec<Vec<Rational>>,
    verdict: Verdict,
}

impl ConfigSpaceAnalysis {
    pub fn interaction(&self) -> &Interaction {
        &self.interaction
    }

    pub fn site_graph(&self) -> &SiteGraph {
        &self.site_graph
    }

    /// Number of configurations (states to the number of sites).
    pub fn total_configs(&self) -> u64 {
        self.total
    }

    /// Components of the configuration space as cells of configuration
    /// indices, ordered by least member.
    pub fn component_partition(&self) -> &[Vec<u64>] {
        &self.component_partition
    }

    /// Level sets of the conserved sums, same encoding and order.
    pub fn fiber_partition(&self) -> &[Vec<u64>] {
        &self.fiber_partition
    }

    /// Conserved sum tuple of each fiber, parallel to `fiber_partition`.
    pub fn fiber_values(&self) -> &[Vec<Rational>] {
        &self.fiber_values
    }

    pub fn component_count(&self) -> usize {
        self.component_partition.len()
    }

    pub fn fiber_count(&self) -> usize {
        self.fiber_partition.len()
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    /// Decode a configuration index (big-endian, site 0 most significant).
    pub fn config(&self, mut idx: u64) -> Configuration {
        let s = self.interaction.size() as u64;
        let n = self.site_graph.sites();
        let mut values = vec![0usize; n];
        for x in (0..n).rev() {
            values[x] = (idx % s) as usize;
            idx /= s;
        }
        Configuration::new(values)
    }
}

/// Compute components and conserved level sets of the configuration space of
/// `inter` on the connected graph `g`. Errors when `g` is disconnected or
/// the space exceeds `budget` configurations.
pub fn analyze_config_space(
    inter: &Interaction,
    g: &SiteGraph,
    budget: u64,
) -> Result<ConfigSpaceAnalysis> {
    if !g.is_connected() {
        return Err(Error::DisconnectedSiteGraph);
    }
    let s = inter.size();
    let n = g.sites();
    let needed = (0..n).try_fold(1u128, |acc, _| {
        acc.checked_mul(s as u128).filter(|&t| t <= budget as u128)
    });
    let Some(total) = needed else {
        let approx = (0..n).fold(1u128, |acc, _| acc.saturating_mul(s as u128));
        return Err(Error::BudgetExceeded {
            needed: approx,
            budget,
        });
    };
    let total = total as usize;

    // site-position weights, big-endian so index order = lexicographic order
    let mut weight = vec![1i128; n];
    for x in (0..n.saturating_sub(1)).rev() {
        weight[x] = weight[x + 1] * s as i128;
    }
    // move table: for the ordered contents (a, b) of a directed site edge,
    // the list of replacement pairs
    let mut moves: Vec<Vec<Vertex>> = vec![Vec::new(); s * s];
    for &(u, v) in inter.edges() {
        if u != v {
            moves[u.0 * s + u.1].push(v);
        }
    }
    let site_edges: Vec<(usize, usize)> = g.edges().copied().collect();

    let decode = |mut idx: usize, out: &mut Vec<usize>| {
        out.clear();
        out.resize(n, 0);
        for x in (0..n).rev() {
            out[x] = idx % s;
            idx /= s;
        }
    };

    // components by breadth-first search from ascending start indices
    let mut comp_of = vec![u32::MAX; total];
    let mut components: Vec<Vec<u64>> = Vec::new();
    let mut digits = Vec::with_capacity(n);
    for start in 0..total {
        if comp_of[start] != u32::MAX {
            continue;
        }
        let id = components.len() as u32;
        let mut cell = Vec::new();
        let mut queue = VecDeque::from([start]);
        comp_of[start] = id;
        while let Some(idx) = queue.pop_front() {
            cell.push(idx as u64);
            decode(idx, &mut digits);
            for &(x, y) in &site_edges {
                let (a, b) = (digits[x], digits[y]);
                if x == y {
                    for &(c, d) in &moves[a * s + b] {
                        if c == d {
                            let nb = (idx as i128 + (c as i128 - a as i128) * weight[x]) as usize;
                            if comp_of[nb] == u32::MAX {
                                comp_of[nb] = id;
                                queue.push_back(nb);
                            }
                        }
                    }
                } else {
                    for &(c, d) in &moves[a * s + b] {
                        let nb = (idx as i128
                            + (c as i128 - a as i128) * weight[x]
                            + (d as i128 - b as i128) * weight[y])
                            as usize;
                        if comp_of[nb] == u32::MAX {
                            comp_of[nb] = id;
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }
        cell.sort_unstable();
        components.push(cell);
    }

    // conserved level sets, first-seen order = order by least member
    let basis = compute_consv(inter);
    let scaled = basis.integer_vectors();
    let per_state: Vec<Vec<i128>> = scaled
        .iter()
        .map(|xi| {
            xi.iter()
                .map(|x| i128::try_from(x).expect("conserved values fit in i128"))
                .collect()
        })
        .collect();
    let mut fiber_of = vec![u32::MAX; total];
    let mut fibers: Vec<Vec<u64>> = Vec::new();
    let mut fiber_values: Vec<Vec<Rational>> = Vec::new();
    let mut by_key: HashMap<Vec<i128>, u32> = HashMap::new();
    for (idx, slot) in fiber_of.iter_mut().enumerate() {
        decode(idx, &mut digits);
        let key: Vec<i128> = per_state
            .iter()
            .map(|xi| digits.iter().map(|&v| xi[v]).sum())
            .collect();
        let id = *by_key.entry(key).or_insert_with(|| {
            fibers.push(Vec::new());
            fiber_values.push(
                basis
                    .vectors()
                    .iter()
                    .map(|xi| digits.iter().map(|&v| xi[v].clone()).sum())
                    .collect(),
            );
            (fibers.len() - 1) as u32
        });
        *slot = id;
        fibers[id as usize].push(idx as u64);
    }

    // components refine fibers; find the least counterexample to equality
    debug_assert!(components
        .iter()
        .all(|cell| cell.iter().all(|&i| fiber_of[i as usize] == fiber_of[cell[0] as usize])));
    let mut witness: Option<(u64, u64)> = None;
    'outer: for cell in &fibers {
        let c0 = comp_of[cell[0] as usize];
        for &i in &cell[1..] {
            if comp_of[i as usize] != c0 {
                witness = Some((cell[0], i));
                break 'outer;
            }
        }
    }

    let analysis = ConfigSpaceAnalysis {
        interaction: inter.clone(),
        site_graph: g.clone(),
        total: total as u64,
        component_partition: components,
        fiber_partition: fibers,
        fiber_values,
        verdict: Verdict::Match,
    };
    let verdict = match witness {
        None => Verdict::Match,
        Some((a, b)) => Verdict::Mismatch {
            witness: (analysis.config(a), analysis.config(b)),
        },
    };
    Ok(ConfigSpaceAnalysis { verdict, ..analysis })
}

/// One member of the supported graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum FamilyGraph {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
}

impl FamilyGraph {
    pub fn build(&self) -> Result<SiteGraph> {
        match *self {
            FamilyGraph::Path(n) => SiteGraph::path(n),
            FamilyGraph::Cycle(n) => SiteGraph::cycle(n),
            FamilyGraph::Star(n) => SiteGraph::star(n),
            FamilyGraph::Complete(n) => SiteGraph::complete(n),
        }
    }
}

impl std::fmt::Display for FamilyGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            FamilyGraph::Path(n) => write!(f, "path({n})"),
            FamilyGraph::Cycle(n) => write!(f, "cycle({n})"),
            FamilyGraph::Star(n) => write!(f, "star({n})"),
            FamilyGraph::Complete(n) => write!(f, "complete({n})"),
        }
    }
}

/// Parse a family description like `paths:2..5,cycles:3..4,complete:3`.
/// Kinds: `paths`, `cycles`, `stars`, `complete` (singular forms accepted);
/// each takes a site count or an inclusive range `a..b`.
pub fn parse_family(input: &str) -> Result<Vec<FamilyGraph>> {
    let bad = |reason: &str| Error::BadFamilySpec {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let mut out = Vec::new();
    for part in input.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(bad("empty segment"));
        }
        let (kind, range) = part
            .split_once(':')
            .ok_or_else(|| bad("segment must look like kind:n or kind:a..b"))?;
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => {
                let lo: usize = a.trim().parse().map_err(|_| bad("bad range start"))?;
                let hi: usize = b.trim().parse().map_err(|_| bad("bad range end"))?;
                (lo, hi)
            }
            None => {
                let n: usize = range.trim().parse().map_err(|_| bad("bad site count"))?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(bad("range start exceeds end"));
        }
        let make: fn(usize) -> FamilyGraph = match kind.trim() {
            "path" | "paths" => FamilyGraph::Path,
            "cycle" | "cycles" => FamilyGraph::Cycle,
            "star" | "stars" => FamilyGraph::Star,
            "complete" => FamilyGraph::Complete,
            _ => return Err(bad("unknown graph kind")),
        };
        for n in lo..=hi {
            let fg = make(n);
            fg.build()
                .map_err(|e| bad(&format!("invalid member {fg}: {e}")))?;
            out.push(fg);
        }
    }
    if out.is_empty() {
        return Err(bad("no graphs"));
    }
    Ok(out)
}

/// The two cheap necessary conditions for the irreducibility property:
/// conserved quantities must separate states, and every pair must reach its
/// own swap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedChecks {
    pub separable: bool,
    pub exchangeable: bool,
    /// Two states the conserved quantities cannot tell apart, when any.
    pub separability_witness: Option<(usize, usize)>,
    /// A pair that cannot reach its swap, when any.
    pub exchangeability_witness: Option<Vertex>,
}

impl DerivedChecks {
    pub fn all_pass(&self) -> bool {
        self.separable && self.exchangeable
    }
}

/// Run the two necessary conditions.
pub fn derived_checks(inter: &Interaction) -> DerivedChecks {
    let sep = separability_witness(inter);
    let exch = exchangeability_witness(inter);
    DerivedChecks {
        separable: sep.is_none(),
        exchangeable: exch.is_none(),
        separability_witness: sep,
        exchangeability_witness: exch,
    }
}

/// Per-graph outcome within a bounded irreducibility check.
#[derive(Debug, Clone)]
pub struct IqGraphRow {
    pub graph: FamilyGraph,
    pub configs: u64,
    pub components: usize,
    pub fibers: usize,
    pub matched: bool,
}

/// Overall verdict of a bounded irreducibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IqVerdict {
    /// Every tested graph matched. Certifies the tested family only.
    Pass,
    /// Genuine disproof: on `graph`, the two configurations have equal
    /// conserved sums but cannot reach each other.
    Fail {
        graph: FamilyGraph,
        witness: (Configuration, Configuration),
    },
}

/// Result of [`check_iq_bounded`].
#[derive(Debug, Clone)]
pub struct IqReport {
    pub derived: DerivedChecks,
    pub rows: Vec<IqGraphRow>,
    pub verdict: IqVerdict,
}

impl IqReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, IqVerdict::Pass)
    }
}

/// Bounded check of the irreducibility property over a graph family.
///
/// The two necessary conditions run first: a failure there yields a genuine
/// witness on the single-site path (not separable) or the two-site path (not
/// exchangeable) without any family run. Otherwise the family graphs are
/// analyzed in order, stopping at the first mismatch. A PASS certifies the
/// tested family only; a FAIL is a genuine disproof of the property itself.
pub fn check_iq_bounded(
    inter: &Interaction,
    family: &[FamilyGraph],
    budget: u64,
) -> Result<IqReport> {
    let derived = derived_checks(inter);
    if let Some((sep_s, sep_t)) = derived.separability_witness {
        return Ok(IqReport {
            derived,
            rows: Vec::new(),
            verdict: IqVerdict::Fail {
                graph: FamilyGraph::Path(1),
                witness: (
                    Configuration::new(vec![sep_s]),
                    Configuration::new(vec![sep_t]),
                ),
            },
        });
    }
    if let Some((s, t)) = derived.exchangeability_witness {
        return Ok(IqReport {
            derived,
            rows: Vec::new(),
            verdict: IqVerdict::Fail {
                graph: FamilyGraph::Path(2),
                witness: (Configuration::new(vec![s, t]), Configuration::new(vec![t, s])),
            },
        });
    }
    let mut rows = Vec::new();
    for &fg in family {
        let g = fg.build()?;
        let analysis = analyze_config_space(inter, &g, budget)?;
        let matched = matches!(analysis.verdict(), Verdict::Match);
        rows.push(IqGraphRow {
            graph: fg,
            configs: analysis.total_configs(),
            components: analysis.component_count(),
            fibers: analysis.fiber_count(),
            matched,
        });
        if let Verdict::Mismatch { witness } = analysis.verdict() {
            return Ok(IqReport {
                derived,
                rows,
                verdict: IqVerdict::Fail {
                    graph: fg,
                    witness: witness.clone(),
                },
            });
        }
    }
    Ok(IqReport {
        derived,
        rows,
        verdict: IqVerdict::Pass,
    })
}
