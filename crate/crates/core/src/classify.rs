//! Decision procedures on the defining graph: induced P4/C4 search,
//! transitive forests, chordality and the cone class ℛ.
//!
//! Everything except [`is_in_class_r`] looks only at the underlying simplicial
//! graph.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ConeKind, GraphError, Link, MixedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("transitive-forest algorithms disagree: forbidden-subgraph search says {search}, universal-vertex peeling says {peeling}")]
    InternalDisagreement { search: bool, peeling: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenShape {
    P4,
    C4,
}

/// Induced P4 `a—b—c—d` or induced square `a—b—c—d—a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbiddenSubgraph {
    pub shape: ForbiddenShape,
    pub vertices: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitiveForestVerdict {
    pub holds: bool,
    pub witness: Option<ForbiddenSubgraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordalWitness {
    /// Perfect elimination ordering of the underlying graph.
    EliminationOrdering(Vec<String>),
    /// Induced cycle of length at least four, in cyclic order.
    ChordlessCycle(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalVerdict {
    pub holds: bool,
    pub witness: ChordalWitness,
}

/// Derivation of a graph in ℛ from single vertices by disjoint unions and
/// cones whose tip edges are undirected or point into the tip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeDecomposition {
    Leaf(String),
    Union(Vec<ConeDecomposition>),
    Cone {
        child: Box<ConeDecomposition>,
        tip: String,
        kinds: BTreeMap<String, ConeKind>,
    },
}

impl ConeDecomposition {
    /// Rebuilds the graph with the union and cone constructors.
    pub fn replay(&self) -> Result<MixedGraph, GraphError> {
        match self {
            ConeDecomposition::Leaf(v) => MixedGraph::new(&[v.as_str()]),
            ConeDecomposition::Union(children) => {
                let mut parts = children.iter().map(ConeDecomposition::replay);
                let first = parts.next().ok_or(GraphError::Empty)??;
                parts.try_fold(first, |acc, part| Ok(acc.disjoint_union(&part?)))
            }
            ConeDecomposition::Cone { child, tip, kinds } => {
                let base = child.replay()?;
                let kinds: HashMap<String, ConeKind> = kinds.iter().map(|(k, v)| (k.clone(), *v)).collect();
                base.cone(tip, &kinds)
            }
        }
    }

    /// True when replaying gives exactly `g` as a labeled graph.
    pub fn reproduces(&self, g: &MixedGraph) -> bool {
        self.replay().map(|h| h.same_labeled(g)).unwrap_or(false)
    }

    pub fn depth(&self) -> usize {
        match self {
            ConeDecomposition::Leaf(_) => 0,
            ConeDecomposition::Union(c) => 1 + c.iter().map(ConeDecomposition::depth).max().unwrap_or(0),
            ConeDecomposition::Cone { child, .. } => 1 + child.depth(),
        }
    }
}

fn names<const N: usize>(g: &MixedGraph, idx: [usize; N]) -> [String; N] {
    idx.map(|i| g.name(i).to_string())
}

fn p4_idx(g: &MixedGraph) -> Option<[usize; 4]> {
    let n = g.len();
    let adj = |i, j| g.adjacent_idx(i, j);
    for a in 0..n {
        for b in g.neighbors_idx(a) {
            for c in g.neighbors_idx(b) {
                if c == a || adj(a, c) {
                    continue;
                }
                for d in g.neighbors_idx(c) {
                    if d != b && !adj(a, d) && !adj(b, d) && d != a {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn c4_idx(g: &MixedGraph) -> Option<[usize; 4]> {
    let n = g.len();
    let adj = |i, j| g.adjacent_idx(i, j);
    for a in 0..n {
        for b in g.neighbors_idx(a) {
            for c in g.neighbors_idx(b) {
                if c == a || adj(a, c) {
                    continue;
                }
                for d in g.neighbors_idx(c) {
                    if d != b && d != a && adj(d, a) && !adj(b, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Lexicographically least `(a, b, c, d)` inducing the path `a—b—c—d` in the
/// underlying graph.
pub fn find_induced_p4(g: &MixedGraph) -> Option<[String; 4]> {
    p4_idx(g).map(|t| names(g, t))
}

/// Lexicographically least `(a, b, c, d)` inducing the square `a—b—c—d—a`.
pub fn find_induced_c4(g: &MixedGraph) -> Option<[String; 4]> {
    c4_idx(g).map(|t| names(g, t))
}

/// Forbidden-subgraph route: no induced P4 and no induced C4.
pub fn transitive_forest_by_search(g: &MixedGraph) -> TransitiveForestVerdict {
    let witness = find_induced_p4(g)
        .map(|v| ForbiddenSubgraph { shape: ForbiddenShape::P4, vertices: v })
        .or_else(|| find_induced_c4(g).map(|v| ForbiddenSubgraph { shape: ForbiddenShape::C4, vertices: v }));
    TransitiveForestVerdict { holds: witness.is_none(), witness }
}

/// Universal-vertex route: every connected component has a vertex adjacent
/// to all others in it, and removing it leaves a transitive forest again.
pub fn transitive_forest_by_peeling(g: &MixedGraph) -> bool {
    let all: Vec<usize> = (0..g.len()).collect();
    peel(g, &all)
}

fn peel(g: &MixedGraph, subset: &[usize]) -> bool {
    for comp in components_within(g, subset) {
        if comp.len() == 1 {
            continue;
        }
        let universal = comp
            .iter()
            .copied()
            .find(|&u| comp.iter().all(|&v| v == u || g.adjacent_idx(u, v)));
        let Some(u) = universal else { return false };
        let rest: Vec<usize> = comp.into_iter().filter(|&v| v != u).collect();
        if !peel(g, &rest) {
            return false;
        }
    }
    true
}

/// Decides whether the underlying graph is a transitive forest using both
/// routes and insists they agree.
pub fn is_transitive_forest(g: &MixedGraph) -> Result<TransitiveForestVerdict, ClassifyError> {
    let by_search = transitive_forest_by_search(g);
    let by_peeling = transitive_forest_by_peeling(g);
    if by_search.holds != by_peeling {
        return Err(ClassifyError::InternalDisagreement { search: by_search.holds, peeling: by_peeling });
    }
    Ok(by_search)
}

/// Components of the underlying graph induced on `subset` (sorted indices).
fn components_within(g: &MixedGraph, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.len()];
    for &v in subset {
        inside[v] = true;
    }
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for &start in subset {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors_idx(v) {
                if inside[u] && !seen[u] {
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

/// Lexicographic breadth-first search order; ties go to the smallest index.
pub fn lex_bfs_order(g: &MixedGraph) -> Vec<usize> {
    let n = g.len();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .fold(None::<usize>, |best, v| match best {
                Some(b) if labels[b] >= labels[v] => Some(b),
                _ => Some(v),
            })
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors_idx(v) {
            if !visited[u] {
                labels[u].push(n - step);
            }
        }
    }
    order
}

/// Checks that every vertex's later neighbors in `order` form a clique.
pub fn is_perfect_elimination_ordering(g: &MixedGraph, order: &[usize]) -> bool {
    if order.len() != g.len() {
        return false;
    }
    let mut position = vec![usize::MAX; g.len()];
    for (p, &v) in order.iter().enumerate() {
        if v >= g.len() || position[v] != usize::MAX {
            return false;
        }
        position[v] = p;
    }
    order.iter().enumerate().all(|(p, &v)| {
        let later: Vec<usize> = g.neighbors_idx(v).filter(|&u| position[u] > p).collect();
        later
            .iter()
            .enumerate()
            .all(|(k, &a)| later[k + 1..].iter().all(|&b| g.adjacent_idx(a, b)))
    })
}

/// Finds an induced cycle of length ≥ 4 through some vertex `v` and two
/// non-adjacent neighbors `u`, `w` of it, closing the cycle by a shortest
/// `u`–`w` path that avoids the rest of `v`'s closed neighborhood.
pub(crate) fn chordless_cycle_idx(g: &MixedGraph) -> Option<Vec<usize>> {
    let n = g.len();
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors_idx(v).collect();
        for (k, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[k + 1..] {
                if g.adjacent_idx(u, w) {
                    continue;
                }
                let blocked = |x: usize| x == v || (x != u && x != w && g.adjacent_idx(v, x));
                let mut prev = vec![usize::MAX; n];
                prev[u] = u;
                let mut queue = VecDeque::from([u]);
                while let Some(x) = queue.pop_front() {
                    if x == w {
                        break;
                    }
                    for y in g.neighbors_idx(x) {
                        if prev[y] == usize::MAX && !blocked(y) {
                            prev[y] = x;
                            queue.push_back(y);
                        }
                    }
                }
                if prev[w] != usize::MAX {
                    let mut path = vec![w];
                    let mut x = w;
                    while x != u {
                        x = prev[x];
                        path.push(x);
                    }
                    path.reverse();
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

/// Chordality of the underlying graph via lex-BFS. A failed elimination
/// ordering is backed by an explicit chordless cycle.
pub fn is_chordal(g: &MixedGraph) -> ChordalVerdict {
    let mut order = lex_bfs_order(g);
    order.reverse();
    if is_perfect_elimination_ordering(g, &order) {
        return ChordalVerdict {
            holds: true,
            witness: ChordalWitness::EliminationOrdering(order.iter().map(|&i| g.name(i).to_string()).collect()),
        };
    }
    let cycle = chordless_cycle_idx(g).expect("a graph without a perfect elimination ordering has a chordless cycle");
    ChordalVerdict {
        holds: false,
        witness: ChordalWitness::ChordlessCycle(cycle.iter().map(|&i| g.name(i).to_string()).collect()),
    }
}

/// Returns a derivation of `g` in ℛ, or `None` when there is none.
///
/// Disconnected graphs split into their components. A connected graph needs
/// a tip: a universal vertex all of whose edges are undirected or end at it.
/// Every candidate tip is tried, and results are memoized per vertex subset.
pub fn is_in_class_r(g: &MixedGraph) -> Option<ConeDecomposition> {
    let all: Vec<usize> = (0..g.len()).collect();
    let mut memo = HashMap::new();
    recognize(g, &all, &mut memo)
}

/// Vertex `w` can serve as tip over `subset` (which contains it).
fn is_tip_candidate(g: &MixedGraph, subset: &[usize], w: usize) -> bool {
    subset
        .iter()
        .all(|&v| v == w || matches!(g.link_idx(v, w), Some(Link::Undirected) | Some(Link::Out)))
}

fn recognize(
    g: &MixedGraph,
    subset: &[usize],
    memo: &mut HashMap<Vec<usize>, Option<ConeDecomposition>>,
) -> Option<ConeDecomposition> {
    if let [v] = subset {
        return Some(ConeDecomposition::Leaf(g.name(*v).to_string()));
    }
    if let Some(hit) = memo.get(subset) {
        return hit.clone();
    }
    let comps = components_within(g, subset);
    let result = if comps.len() > 1 {
        comps
            .iter()
            .map(|c| recognize(g, c, memo))
            .collect::<Option<Vec<_>>>()
            .map(ConeDecomposition::Union)
    } else {
        subset.iter().copied().filter(|&w| is_tip_candidate(g, subset, w)).find_map(|w| {
            let rest: Vec<usize> = subset.iter().copied().filter(|&v| v != w).collect();
            recognize(g, &rest, memo).map(|child| ConeDecomposition::Cone {
                child: Box::new(child),
                tip: g.name(w).to_string(),
                kinds: rest
                    .iter()
                    .map(|&v| {
                        let kind = match g.link_idx(v, w) {
                            Some(Link::Out) => ConeKind::IntoTip,
                            _ => ConeKind::Undirected,
                        };
                        (g.name(v).to_string(), kind)
                    })
                    .collect(),
            })
        })
    };
    memo.insert(subset.to_vec(), result.clone());
    result
}

/// Checks a forbidden-subgraph witness against the definition.
pub fn verify_forbidden(g: &MixedGraph, w: &ForbiddenSubgraph) -> bool {
    let idx: Option<Vec<usize>> = w.vertices.iter().map(|v| g.index_of(v)).collect();
    let Some(idx) = idx else { return false };
    let mut distinct = idx.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 4 {
        return false;
    }
    let e = |a: usize, b: usize| g.adjacent_idx(idx[a], idx[b]);
    let path = e(0, 1) && e(1, 2) && e(2, 3) && !e(0, 2) && !e(1, 3);
    match w.shape {
        ForbiddenShape::P4 => path && !e(0, 3),
        ForbiddenShape::C4 => path && e(0, 3),
    }
}

/// Checks a chordality witness against the definition.
pub fn verify_chordal_witness(g: &MixedGraph, w: &ChordalWitness) -> bool {
    match w {
        ChordalWitness::EliminationOrdering(order) => {
            let idx: Option<Vec<usize>> = order.iter().map(|v| g.index_of(v)).collect();
            idx.is_some_and(|idx| is_perfect_elimination_ordering(g, &idx))
        }
        ChordalWitness::ChordlessCycle(cycle) => {
            let idx: Option<Vec<usize>> = cycle.iter().map(|v| g.index_of(v)).collect();
            idx.is_some_and(|idx| is_induced_cycle(g, &idx))
        }
    }
}

/// `cycle` lists ≥ 4 distinct vertices whose only edges are the consecutive ones.
pub fn is_induced_cycle(g: &MixedGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    (0..k).all(|a| {
        (a + 1..k).all(|b| {
            let consecutive = b == a + 1 || (a == 0 && b == k - 1);
            g.adjacent_idx(cycle[a], cycle[b]) == consecutive
        })
    })
}
