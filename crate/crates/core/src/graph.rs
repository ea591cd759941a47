//! Mixed graphs: a simplicial graph whose edges are either undirected
//! (commutation) or directed from an origin to a terminus (Klein relation).
//!
//! Vertices are kept in declaration order. That order is the canonical total
//! order every other module uses for tie-breaking, shortlex comparison and
//! witness selection.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count accepted by [`enumerate_mixed_graphs`].
pub const MAX_ENUMERATION_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("more than one edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error("a mixed graph needs at least one vertex")]
    Empty,
    #[error("no cone edge kind given for vertex `{0}`")]
    MissingKind(String),
    #[error("enumeration size {0} outside 1..={max}", max = MAX_ENUMERATION_SIZE)]
    SizeLimit(usize),
}

/// Relation stored between two vertices, seen from the first one.
///
/// `Out` means the row vertex is the origin, `In` means it is the terminus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    Undirected,
    Out,
    In,
}

impl Link {
    pub fn reversed(self) -> Link {
        match self {
            Link::Undirected => Link::Undirected,
            Link::Out => Link::In,
            Link::In => Link::Out,
        }
    }
}

/// Edge kind with named endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Undirected,
    Directed { origin: String, terminus: String },
}

/// An edge record. `endpoints` are listed in canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub endpoints: (String, String),
    pub kind: EdgeKind,
}

/// How a vertex attaches to the tip of a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    /// `[v, w]`
    Undirected,
    /// `[v, w⟩`: origin `v`, terminus the tip `w`.
    IntoTip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // adjacency matrix, row-relative links; `adj[i][j] == adj[j][i].reversed()`
    adj: Vec<Vec<Option<Link>>>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl MixedGraph {
    /// Edgeless graph on the given vertices, in the given order.
    pub fn new<S: AsRef<str>>(vertices: &[S]) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if !is_valid_name(v) {
                return Err(GraphError::InvalidName(v.to_string()));
            }
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
            names.push(v.to_string());
        }
        let n = names.len();
        Ok(MixedGraph { names, index, adj: vec![vec![None; n]; n] })
    }

    /// Adds an edge between `a` and `b`; `link` is read from `a`'s side, so
    /// `Link::Out` makes `a` the origin.
    pub fn add_edge(&mut self, a: &str, b: &str, link: Link) -> Result<(), GraphError> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        self.add_edge_idx(i, j, link)
    }

    pub fn add_undirected(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        self.add_edge(a, b, Link::Undirected)
    }

    /// Adds `[origin, terminus⟩`.
    pub fn add_directed(&mut self, origin: &str, terminus: &str) -> Result<(), GraphError> {
        self.add_edge(origin, terminus, Link::Out)
    }

    pub(crate) fn add_edge_idx(&mut self, i: usize, j: usize, link: Link) -> Result<(), GraphError> {
        if i == j {
            return Err(GraphError::Loop(self.names[i].clone()));
        }
        if self.adj[i][j].is_some() {
            let (lo, hi) = (i.min(j), i.max(j));
            return Err(GraphError::DuplicateEdge(self.names[lo].clone(), self.names[hi].clone()));
        }
        self.adj[i][j] = Some(link);
        self.adj[j][i] = Some(link.reversed());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name).ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Link between two vertex indices, read from `i`'s side.
    pub fn link_idx(&self, i: usize, j: usize) -> Option<Link> {
        self.adj[i][j]
    }

    pub fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i][j].is_some()
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent_idx(i, j),
            _ => false,
        }
    }

    /// Edge kind between two named vertices, if any.
    pub fn edge_kind(&self, a: &str, b: &str) -> Option<EdgeKind> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        self.adj[i][j].map(|l| self.kind_of(i, j, l))
    }

    fn kind_of(&self, i: usize, j: usize, link: Link) -> EdgeKind {
        match link {
            Link::Undirected => EdgeKind::Undirected,
            Link::Out => EdgeKind::Directed {
                origin: self.names[i].clone(),
                terminus: self.names[j].clone(),
            },
            Link::In => EdgeKind::Directed {
                origin: self.names[j].clone(),
                terminus: self.names[i].clone(),
            },
        }
    }

    /// Index pairs `(i, j)` with `i < j` and the link read from `i`.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (usize, usize, Link)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| ((i + 1)..n).filter_map(move |j| self.adj[i][j].map(|l| (i, j, l))))
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_pairs()
            .map(|(i, j, l)| Edge {
                endpoints: (self.names[i].clone(), self.names[j].clone()),
                kind: self.kind_of(i, j, l),
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_pairs().count()
    }

    pub fn directed_edge_count(&self) -> usize {
        self.edge_pairs().filter(|&(_, _, l)| l != Link::Undirected).count()
    }

    pub fn neighbors_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().enumerate().filter_map(|(j, l)| l.map(|_| j))
    }

    pub fn degree_idx(&self, i: usize) -> usize {
        self.neighbors_idx(i).count()
    }

    /// Vertices adjacent to `v` through any edge kind.
    pub fn link(&self, v: &str) -> Result<BTreeSet<String>, GraphError> {
        let i = self.require(v)?;
        Ok(self.neighbors_idx(i).map(|j| self.names[j].clone()).collect())
    }

    pub fn is_universal_idx(&self, i: usize) -> bool {
        self.degree_idx(i) + 1 == self.len()
    }

    pub fn is_universal(&self, v: &str) -> Result<bool, GraphError> {
        Ok(self.is_universal_idx(self.require(v)?))
    }

    /// The underlying simplicial graph: every edge made undirected.
    pub fn underlying(&self) -> MixedGraph {
        let mut g = self.clone();
        for row in &mut g.adj {
            for cell in row.iter_mut().flatten() {
                *cell = Link::Undirected;
            }
        }
        g
    }

    /// Induced subgraph on the named vertices, kept in this graph's order.
    pub fn induced<S: AsRef<str>>(&self, subset: &[S]) -> Result<MixedGraph, GraphError> {
        let mut keep = vec![false; self.len()];
        for s in subset {
            keep[self.require(s.as_ref())?] = true;
        }
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        self.induced_idx(&idx)
    }

    /// Induced subgraph on sorted vertex indices.
    pub fn induced_idx(&self, idx: &[usize]) -> Result<MixedGraph, GraphError> {
        let names: Vec<&str> = idx.iter().map(|&i| self.names[i].as_str()).collect();
        let mut g = MixedGraph::new(&names)?;
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                g.adj[a][b] = self.adj[i][j];
            }
        }
        Ok(g)
    }

    /// Connected components of the underlying graph, each in canonical order,
    /// listed by smallest member.
    pub fn components(&self) -> Vec<Vec<String>> {
        self.components_idx()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.names[i].clone()).collect())
            .collect()
    }

    pub fn components_idx(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors_idx(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_idx().len() == 1
    }

    /// Disjoint union; the second graph's colliding names get a `_2` suffix
    /// (repeated until the name is fresh).
    pub fn disjoint_union(&self, other: &MixedGraph) -> MixedGraph {
        let mut names = self.names.clone();
        let mut taken: std::collections::HashSet<String> = names.iter().cloned().collect();
        taken.extend(other.names.iter().cloned());
        for name in &other.names {
            let mut fresh = name.clone();
            if self.contains(name) {
                fresh.push_str("_2");
                while taken.contains(&fresh) {
                    fresh.push_str("_2");
                }
                taken.insert(fresh.clone());
            }
            names.push(fresh);
        }
        let mut g = MixedGraph::new(&names).expect("union of valid graphs has distinct valid names");
        let off = self.len();
        for (i, j, l) in self.edge_pairs() {
            g.adj[i][j] = Some(l);
            g.adj[j][i] = Some(l.reversed());
        }
        for (i, j, l) in other.edge_pairs() {
            g.adj[off + i][off + j] = Some(l);
            g.adj[off + j][off + i] = Some(l.reversed());
        }
        g
    }

    /// Γ-cone with a fresh tip joined to every vertex by `[v, tip]` or `[v, tip⟩`.
    pub fn cone(&self, tip: &str, kinds: &HashMap<String, ConeKind>) -> Result<MixedGraph, GraphError> {
        if self.contains(tip) {
            return Err(GraphError::DuplicateVertex(tip.to_string()));
        }
        let mut names = self.names.clone();
        names.push(tip.to_string());
        let mut g = MixedGraph::new(&names)?;
        for (i, j, l) in self.edge_pairs() {
            g.adj[i][j] = Some(l);
            g.adj[j][i] = Some(l.reversed());
        }
        let t = self.len();
        for (i, v) in self.names.iter().enumerate() {
            let link = match kinds.get(v) {
                Some(ConeKind::Undirected) => Link::Undirected,
                Some(ConeKind::IntoTip) => Link::Out,
                None => return Err(GraphError::MissingKind(v.clone())),
            };
            g.add_edge_idx(i, t, link)?;
        }
        Ok(g)
    }

    /// Equal as labeled graphs, ignoring the declaration order of vertices.
    pub fn same_labeled(&self, other: &MixedGraph) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self.names.iter().map(|n| other.index_of(n)).collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.adj[i][j] == other.adj[map[i]][map[j]]))
    }

    /// Same graph with vertices redeclared in `order` (a permutation of the names).
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<MixedGraph, GraphError> {
        let mut g = MixedGraph::new(order)?;
        if g.len() != self.len() {
            return Err(GraphError::UnknownVertex(
                self.names.iter().find(|n| !g.contains(n)).cloned().unwrap_or_default(),
            ));
        }
        let map: Vec<usize> = g.names.iter().map(|n| self.require(n)).collect::<Result<_, _>>()?;
        for a in 0..g.len() {
            for b in 0..g.len() {
                g.adj[a][b] = self.adj[map[a]][map[b]];
            }
        }
        Ok(g)
    }

    /// Graph with `from` renamed to `to`, keeping its position.
    pub(crate) fn renamed(&self, from: usize, to: &str) -> Result<MixedGraph, GraphError> {
        let mut names = self.names.clone();
        names[from] = to.to_string();
        let mut g = MixedGraph::new(&names)?;
        g.adj = self.adj.clone();
        Ok(g)
    }

    pub(crate) fn set_link_idx(&mut self, i: usize, j: usize, link: Option<Link>) {
        self.adj[i][j] = link;
        self.adj[j][i] = link.map(Link::reversed);
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_graph(self))
    }
}

impl std::str::FromStr for MixedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

/// Parses the line-based `.tg` format:
///
/// ```text
/// # comment
/// vertices a b c
/// edge a - b
/// edge b > c
/// ```
pub fn parse_graph(text: &str) -> Result<MixedGraph, GraphError> {
    let perr = |line: usize, reason: String| GraphError::Parse { line, reason };
    let mut graph: Option<MixedGraph> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "vertices" => {
                if graph.is_some() {
                    return Err(perr(line, "second `vertices` line".into()));
                }
                let names = &tokens[1..];
                if names.is_empty() {
                    return Err(perr(line, "`vertices` needs at least one name".into()));
                }
                graph = Some(MixedGraph::new(names).map_err(|e| perr(line, e.to_string()))?);
            }
            "edge" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| perr(line, "`edge` before `vertices`".into()))?;
                if tokens.len() != 4 {
                    return Err(perr(line, "expected `edge u - v` or `edge u > v`".into()));
                }
                let link = match tokens[2] {
                    "-" => Link::Undirected,
                    ">" => Link::Out,
                    op => return Err(perr(line, format!("unknown edge operator `{op}`"))),
                };
                g.add_edge(tokens[1], tokens[3], link)
                    .map_err(|e| perr(line, e.to_string()))?;
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    graph.ok_or_else(|| perr(text.lines().count().max(1), "missing `vertices` line".into()))
}

/// Canonical text form: vertices in declaration order, edges sorted by the
/// canonical order of their endpoints, no trailing newline.
pub fn serialize_graph(g: &MixedGraph) -> String {
    let mut out = String::from("vertices");
    for v in g.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    for (i, j, l) in g.edge_pairs() {
        let line = match l {
            Link::Undirected => format!("\nedge {} - {}", g.name(i), g.name(j)),
            Link::Out => format!("\nedge {} > {}", g.name(i), g.name(j)),
            Link::In => format!("\nedge {} > {}", g.name(j), g.name(i)),
        };
        out.push_str(&line);
    }
    out
}

/// Iterator over all labeled mixed graphs on `v1..vn`.
///
/// Each unordered pair, taken in lexicographic order, cycles through
/// absent / undirected / `vi > vj` / `vj > vi`; the first pair is the most
/// significant digit.
#[derive(Debug, Clone)]
pub struct MixedGraphEnumerator {
    names: Vec<String>,
    pairs: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl Iterator for MixedGraphEnumerator {
    type Item = MixedGraph;

    fn next(&mut self) -> Option<MixedGraph> {
        if self.next >= self.total {
            return None;
        }
        let mut code = self.next;
        self.next += 1;
        let mut g = MixedGraph::new(&self.names).expect("generated names are valid");
        for &(i, j) in self.pairs.iter().rev() {
            let link = match code % 4 {
                0 => None,
                1 => Some(Link::Undirected),
                2 => Some(Link::Out),
                _ => Some(Link::In),
            };
            code /= 4;
            g.set_link_idx(i, j, link);
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for MixedGraphEnumerator {}

pub fn enumerate_mixed_graphs(n: usize) -> Result<MixedGraphEnumerator, GraphError> {
    if !(1..=MAX_ENUMERATION_SIZE).contains(&n) {
        return Err(GraphError::SizeLimit(n));
    }
    let names = default_names(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let total = 4u64.pow(pairs.len() as u32);
    Ok(MixedGraphEnumerator { names, pairs, next: 0, total })
}

/// `v1, v2, …, vn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Uniform random mixed graph on `v1..vn`: each pair independently absent,
/// undirected or directed either way.
pub fn random_mixed_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MixedGraph {
    let mut g = MixedGraph::new(&default_names(n.max(1))).expect("generated names are valid");
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            let link = match rng.gen_range(0..4) {
                0 => None,
                1 => Some(Link::Undirected),
                2 => Some(Link::Out),
                _ => Some(Link::In),
            };
            g.set_link_idx(i, j, link);
        }
    }
    g
}
