//! Interactions: symmetric directed graphs on the square of a finite state
//! set. A vertex is an ordered pair of states (the contents of two adjacent
//! sites); an edge is one allowed exchange between two such pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Ordered pair of state indices: one vertex of the associated graph.
pub type Vertex = (usize, usize);

/// Finite set of distinct state labels. The position of a label is its
/// canonical index; all other types work with indices and labels stay
/// presentation-only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    labels: Vec<String>,
}

impl StateSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyStateSet);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateStateLabel(l.clone()));
            }
        }
        Ok(StateSet { labels })
    }

    /// The state set `{0, 1, ..., n-1}` with numeric labels.
    pub fn indexed(n: usize) -> Result<Self> {
        StateSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// An interaction: a state set together with a symmetric set of directed
/// edges on ordered state pairs. Construction always closes the edge set
/// under reversal, so `edges()` enumerates both directions of every move.
/// Self-loops may be present (some derived constructions produce them); they
/// are ignored by connectivity and omitted from serialized output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interaction {
    states: StateSet,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Interaction {
    /// Build an interaction from any edge list; the symmetric closure is
    /// taken automatically. Edges must reference states in range.
    pub fn new<I>(states: StateSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = states.len();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let (a, b) = u;
            let (c, d) = v;
            if a >= n || b >= n || c >= n || d >= n {
                return Err(Error::EdgeOutOfRange(a, b, c, d, n));
            }
            set.insert((u, v));
            set.insert((v, u));
        }
        Ok(Interaction { states, edges: set })
    }

    /// Interaction with no edges on `{0, ..., n-1}`.
    pub fn empty(n: usize) -> Result<Self> {
        Interaction::new(StateSet::indexed(n)?, [])
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    /// Number of states (often written kappa + 1).
    pub fn size(&self) -> usize {
        self.states.len()
    }

    /// All directed edges, both directions of every move, self-loops
    /// included, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = &(Vertex, Vertex)> {
        self.edges.iter()
    }

    /// Number of directed edges, self-loops excluded.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u != v).count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u, v))
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        let n = self.size();
        if v.0 >= n || v.1 >= n {
            return Err(Error::VertexOutOfRange(v.0, v.1, n));
        }
        Ok(())
    }

    /// Component partition of the associated graph: all ordered state pairs
    /// are vertices, self-loops do not affect connectivity.
    pub fn components(&self) -> ComponentPartition {
        let n = self.size();
        let nv = n * n;
        let idx = |v: Vertex| v.0 * n + v.1;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &(u, v) in &self.edges {
            if u != v {
                adj[idx(u)].push(idx(v));
            }
        }
        let mut cell_of = vec![usize::MAX; nv];
        let mut cells = Vec::new();
        for start in 0..nv {
            if cell_of[start] != usize::MAX {
                continue;
            }
            let id = cells.len();
            let mut cell = Vec::new();
            let mut queue = std::collections::VecDeque::from([start]);
            cell_of[start] = id;
            while let Some(x) = queue.pop_front() {
                cell.push((x / n, x % n));
                for &y in &adj[x] {
                    if cell_of[y] == usize::MAX {
                        cell_of[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            cell.sort_unstable();
            cells.push(cell);
        }
        ComponentPartition { size: n, cells, cell_of }
    }

    /// Whether two vertices lie in the same component of the associated
    /// graph. Errors when either vertex is out of range.
    pub fn same_component(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let p = self.components();
        Ok(p.cell_index(u) == p.cell_index(v))
    }

    /// The same interaction with state `i` renamed to `perm[i]` (labels
    /// follow their states). `perm` must be a permutation of `0..size`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::NotAPermutation(format!("{perm:?}")));
        }
        let mut labels = vec![String::new(); n];
        for (i, l) in self.states.labels().iter().enumerate() {
            labels[perm[i]] = l.clone();
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&((a, b), (c, d))| ((perm[a], perm[b]), (perm[c], perm[d])))
            .collect();
        Interaction::new(StateSet::new(labels)?, edges)
    }

    /// Parse from the interchange JSON format. Edge lists are symmetrized on
    /// input, so one direction per move suffices.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: InteractionJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidJson(e.to_string()))?;
        raw.try_into()
    }

    /// Serialize to the interchange JSON format: the full symmetric closure
    /// in lexicographic order, self-loops omitted.
    pub fn to_json_string(&self) -> String {
        let raw = InteractionJson::from(self);
        serde_json::to_string_pretty(&raw).expect("interaction serializes")
    }
}

/// Serde-level shape of the interchange format:
/// `{"states": [...], "edges": [[[a,b],[c,d]], ...]}`.
#[derive(Serialize, Deserialize)]
struct InteractionJson {
    states: Vec<String>,
    edges: Vec<[[usize; 2]; 2]>,
}

impl From<&Interaction> for InteractionJson {
    fn from(inter: &Interaction) -> Self {
        InteractionJson {
            states: inter.states.labels().to_vec(),
            edges: inter
                .edges
                .iter()
                .filter(|(u, v)| u != v)
                .map(|&((a, b), (c, d))| [[a, b], [c, d]])
                .collect(),
        }
    }
}

impl TryFrom<InteractionJson> for Interaction {
    type Error = Error;

    fn try_from(raw: InteractionJson) -> Result<Self> {
        let states = StateSet::new(raw.states)?;
        let edges = raw
            .edges
            .into_iter()
            .map(|[[a, b], [c, d]]| ((a, b), (c, d)));
        Interaction::new(states, edges)
    }
}

/// Partition of all ordered state pairs into connected components. Cells are
/// sorted internally and ordered by their lexicographically least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    size: usize,
    cells: Vec<Vec<Vertex>>,
    cell_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<Vertex>] {
        &self.cells
    }

    /// Index of the cell containing `v`.
    pub fn cell_index(&self, v: Vertex) -> usize {
        self.cell_of[v.0 * self.size + v.1]
    }

    /// Number of states underlying the partition.
    pub fn state_count(&self) -> usize {
        self.size
    }
}
