//! Theorem-level verdicts for a defining graph.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    find_induced_c4, is_chordal, is_in_class_r, is_transitive_forest, ChordalWitness, ConeDecomposition,
    ForbiddenSubgraph,
};
use crate::graph::{parse_graph, GraphError, MixedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decidability {
    Decidable,
    Undecidable,
    Open,
}

impl fmt::Display for Decidability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decidability::Decidable => "decidable",
            Decidability::Undecidable => "undecidable",
            Decidability::Open => "open",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub directed_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitiveForestField {
    pub value: bool,
    pub witness: Option<ForbiddenSubgraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalField {
    pub value: bool,
    pub witness: ChordalWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRField {
    pub value: bool,
    pub decomposition: Option<ConeDecomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub graph_summary: GraphSummary,
    pub transitive_forest: TransitiveForestField,
    pub chordal: ChordalField,
    pub in_class_r: ClassRField,
    pub lerf: bool,
    pub coherent: bool,
    pub subgroup_membership: Decidability,
    pub submonoid_membership: Decidability,
    pub rational_membership: Decidability,
    pub citations: BTreeMap<String, String>,
}

fn cite(citations: &mut BTreeMap<String, String>, field: &str, anchor: &str) {
    citations.insert(field.to_string(), anchor.to_string());
}

/// Classifies `g` and derives the separability, coherence and membership verdicts.
pub fn analyze(g: &MixedGraph) -> PropertyReport {
    let tf = is_transitive_forest(g).expect("transitive-forest routes agree");
    let chordal = is_chordal(g);
    let decomposition = is_in_class_r(g);
    let has_c4 = find_induced_c4(g).is_some();
    let in_r = decomposition.is_some();

    let mut citations = BTreeMap::new();
    let lerf = tf.holds;
    cite(
        &mut citations,
        "lerf",
        if lerf {
            "subgroup separable iff the underlying graph has no induced P4 and no induced C4"
        } else {
            "an induced P4 or C4 embeds A(P4) or A(C4) via v -> v^2, which is not subgroup separable"
        },
    );
    let coherent = chordal.holds;
    cite(&mut citations, "coherent", "coherent iff the underlying graph is chordal");

    let subgroup_membership = if chordal.holds {
        cite(
            &mut citations,
            "subgroup_membership",
            "chordal defining graph: amalgam of virtually abelian groups over complete subgraphs, decidable by foldings",
        );
        Decidability::Decidable
    } else if has_c4 {
        cite(
            &mut citations,
            "subgroup_membership",
            "induced C4 gives A(C4) = F2 x F2, which has a subgroup with undecidable membership",
        );
        Decidability::Undecidable
    } else {
        cite(
            &mut citations,
            "subgroup_membership",
            "non-chordal without an induced C4: no known decision procedure",
        );
        Decidability::Open
    };

    let rational_membership = if !tf.holds {
        cite(
            &mut citations,
            "rational_membership",
            "not elementary: contains A(P4) or A(C4), whose rational subset membership is undecidable",
        );
        Decidability::Undecidable
    } else if in_r {
        cite(
            &mut citations,
            "rational_membership",
            "class R: index-2 subgroup splits as T(G - tip) x Z at each cone tip",
        );
        Decidability::Decidable
    } else {
        cite(
            &mut citations,
            "rational_membership",
            "elementary but outside class R: status unknown",
        );
        Decidability::Open
    };

    let submonoid_membership = if !tf.holds {
        cite(
            &mut citations,
            "submonoid_membership",
            "not elementary: contains A(P4) or A(C4), whose submonoid membership is undecidable",
        );
        Decidability::Undecidable
    } else if rational_membership == Decidability::Decidable {
        cite(
            &mut citations,
            "submonoid_membership",
            "decidable rational subset membership implies decidable submonoid membership",
        );
        Decidability::Decidable
    } else {
        cite(
            &mut citations,
            "submonoid_membership",
            "elementary but outside class R: status unknown",
        );
        Decidability::Open
    };

    cite(&mut citations, "transitive_forest", "no induced P4 and no induced C4 in the underlying graph");
    cite(&mut citations, "chordal", "chordality of the underlying graph");
    cite(
        &mut citations,
        "in_class_r",
        "generated from single vertices by disjoint unions and cones with edges undirected or into the tip",
    );

    assert!(!in_r || lerf, "class R graph that is not a transitive forest");
    assert!(!lerf || coherent, "transitive forest that is not chordal");

    PropertyReport {
        graph_summary: GraphSummary {
            vertices: g.len(),
            edges: g.edge_count(),
            directed_edges: g.directed_edge_count(),
        },
        transitive_forest: TransitiveForestField { value: tf.holds, witness: tf.witness },
        chordal: ChordalField { value: chordal.holds, witness: chordal.witness },
        in_class_r: ClassRField { value: in_r, decomposition },
        lerf,
        coherent,
        subgroup_membership,
        submonoid_membership,
        rational_membership,
        citations,
    }
}

/// Named input for [`batch_analyze`].
#[derive(Debug, Clone)]
pub struct BatchInput {
    pub name: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub decidable: usize,
    pub undecidable: usize,
    pub open: usize,
}

impl VerdictCounts {
    fn add(&mut self, d: Decidability) {
        match d {
            Decidability::Decidable => self.decidable += 1,
            Decidability::Undecidable => self.undecidable += 1,
            Decidability::Open => self.open += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub errors: usize,
    pub lerf: usize,
    pub coherent: usize,
    pub in_class_r: usize,
    pub subgroup_membership: VerdictCounts,
    pub submonoid_membership: VerdictCounts,
    pub rational_membership: VerdictCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
    pub summary: BatchSummary,
}

fn summarize(entries: &[BatchEntry]) -> BatchSummary {
    let mut s = BatchSummary { total: entries.len(), ..Default::default() };
    for e in entries {
        let Some(r) = &e.report else {
            s.errors += 1;
            continue;
        };
        s.lerf += r.lerf as usize;
        s.coherent += r.coherent as usize;
        s.in_class_r += r.in_class_r.value as usize;
        s.subgroup_membership.add(r.subgroup_membership);
        s.submonoid_membership.add(r.submonoid_membership);
        s.rational_membership.add(r.rational_membership);
    }
    s
}

/// Analyzes graph sources in parallel; parse errors are recorded per entry.
/// Entries keep input order.
pub fn batch_analyze(inputs: &[BatchInput]) -> BatchReport {
    let entries: Vec<BatchEntry> = inputs
        .par_iter()
        .map(|input| match parse_graph(&input.source) {
            Ok(g) => BatchEntry { name: input.name.clone(), report: Some(analyze(&g)), error: None },
            Err(e) => BatchEntry { name: input.name.clone(), report: None, error: Some(e.to_string()) },
        })
        .collect();
    let summary = summarize(&entries);
    BatchReport { entries, summary }
}

/// Same as [`batch_analyze`] for graphs already in memory.
pub fn batch_analyze_graphs(graphs: &[(String, MixedGraph)]) -> BatchReport {
    let entries: Vec<BatchEntry> = graphs
        .par_iter()
        .map(|(name, g)| BatchEntry { name: name.clone(), report: Some(analyze(g)), error: None })
        .collect();
    let summary = summarize(&entries);
    BatchReport { entries, summary }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness_text(r: &PropertyReport) -> (String, String) {
    let tf = match &r.transitive_forest.witness {
        Some(w) => format!("{:?} {}", w.shape, w.vertices.join("-")).to_lowercase(),
        None => String::new(),
    };
    let ch = match &r.chordal.witness {
        ChordalWitness::EliminationOrdering(o) => format!("elimination order {}", o.join(" ")),
        ChordalWitness::ChordlessCycle(c) => format!("chordless cycle {}", c.join("-")),
    };
    (tf, ch)
}

/// Aligned two-column table.
pub fn render_text(r: &PropertyReport) -> String {
    let (tf_w, ch_w) = witness_text(r);
    let rows: Vec<(String, String)> = vec![
        (
            "graph".into(),
            format!(
                "{} vertices, {} edges ({} directed)",
                r.graph_summary.vertices, r.graph_summary.edges, r.graph_summary.directed_edges
            ),
        ),
        ("transitive_forest".into(), format!("{} {}", yes_no(r.transitive_forest.value), tf_w).trim_end().to_string()),
        ("chordal".into(), format!("{} ({})", yes_no(r.chordal.value), ch_w)),
        ("in_class_r".into(), yes_no(r.in_class_r.value).to_string()),
        ("lerf".into(), yes_no(r.lerf).to_string()),
        ("coherent".into(), yes_no(r.coherent).to_string()),
        ("subgroup_membership".into(), r.subgroup_membership.to_string()),
        ("submonoid_membership".into(), r.submonoid_membership.to_string()),
        ("rational_membership".into(), r.rational_membership.to_string()),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

pub fn render_batch_text(b: &BatchReport) -> String {
    let name_w = b.entries.iter().map(|e| e.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!(
        "{:<name_w$}  {:<5}  {:<8}  {:<3}  {:<11}  {:<11}  {:<11}\n",
        "name", "lerf", "coherent", "R", "subgroup", "submonoid", "rational"
    );
    for e in &b.entries {
        match &e.report {
            Some(r) => out.push_str(&format!(
                "{:<name_w$}  {:<5}  {:<8}  {:<3}  {:<11}  {:<11}  {:<11}\n",
                e.name,
                yes_no(r.lerf),
                yes_no(r.coherent),
                yes_no(r.in_class_r.value),
                r.subgroup_membership.to_string(),
                r.submonoid_membership.to_string(),
                r.rational_membership.to_string()
            )),
            None => out.push_str(&format!(
                "{:<name_w$}  error: {}\n",
                e.name,
                e.error.as_deref().unwrap_or("unknown")
            )),
        }
    }
    let s = &b.summary;
    out.push_str(&format!(
        "total {} (errors {}), lerf {}, coherent {}, in R {}\n",
        s.total, s.errors, s.lerf, s.coherent, s.in_class_r
    ));
    for (label, c) in [
        ("subgroup", &s.subgroup_membership),
        ("submonoid", &s.submonoid_membership),
        ("rational", &s.rational_membership),
    ] {
        out.push_str(&format!(
            "{label}: decidable {}, undecidable {}, open {}\n",
            c.decidable, c.undecidable, c.open
        ));
    }
    out
}

/// Reads a graph file and analyzes it.
pub fn analyze_source(text: &str) -> Result<PropertyReport, GraphError> {
    Ok(analyze(&parse_graph(text)?))
}
