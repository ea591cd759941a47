//! The index-2 subgroup `⟨x², lk(x)⟩` at a universal vertex `x`.
//!
//! Conjugation by `x` sends each other generator `v` to
//!
//! * `v` when `[x, v]` is undirected,
//! * `v⁻¹` when `x` is the terminus (`vxv = x`),
//! * `v x⁻²` when `x` is the origin (`xvx = v`),
//!
//! so the subgroup is normal with quotient of order 2. Rewriting with the
//! transversal `{1, x}` presents it as a T-RAAG over a graph `Δ` in which `x`
//! is replaced by `y = x²`: edges leaving `x` keep their direction, edges
//! entering `x` become undirected, and edges away from `x` are untouched.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeKind, GraphError, Link, MixedGraph};
use crate::word::{
    check_generators, concat, free_reduce, is_identity, normal_form, relator, Syllable, Word, WordError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("vertex `{0}` is not universal")]
    NotUniversal(String),
    #[error("word is not in the index-2 subgroup at `{0}`")]
    NotInSubgroup(String),
    #[error("edge between apex `{apex}` and `{vertex}` points into the apex")]
    ApexShape { apex: String, vertex: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// What `x v x⁻¹` is, for a neighbor `v` of the apex `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugationCase {
    /// `x v x⁻¹ = v`
    Fixed,
    /// `x v x⁻¹ = v⁻¹`
    Inverted,
    /// `x v x⁻¹ = v x⁻²`
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraphResult {
    pub apex: String,
    /// Name of the vertex standing for `x²` in `delta`.
    pub square_generator: String,
    pub delta: MixedGraph,
    /// Each Δ-vertex as a word over the original generators.
    pub generator_map: BTreeMap<String, Word>,
    pub conjugation_table: BTreeMap<String, ConjugationCase>,
}

impl SubgroupGraphResult {
    /// `x v x⁻¹` as predicted by the conjugation table, over the original generators.
    pub fn predicted_conjugate(&self, v: &str) -> Option<Word> {
        let case = self.conjugation_table.get(v)?;
        Some(match case {
            ConjugationCase::Fixed => Word::letter(v),
            ConjugationCase::Inverted => Word::from_syllables(vec![Syllable::new(v, -1)]),
            ConjugationCase::Shifted => {
                Word::from_syllables(vec![Syllable::new(v, 1), Syllable::new(self.apex.clone(), -2)])
            }
        })
    }

    /// Replaces each Δ-generator of `w` by its image over the original generators.
    pub fn substitute(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Word::identity();
        for s in w.syllables() {
            let image = self
                .generator_map
                .get(&s.generator)
                .ok_or_else(|| WordError::UnknownGenerator(s.generator.clone()))?;
            let piece = if s.exponent < 0 { crate::word::invert(image) } else { image.clone() };
            for _ in 0..s.exponent.unsigned_abs() {
                out = concat(&out, &piece);
            }
        }
        Ok(out)
    }
}

fn require_universal(g: &MixedGraph, x: &str) -> Result<usize, SubgroupError> {
    let i = g.index_of(x).ok_or_else(|| GraphError::UnknownVertex(x.to_string()))?;
    if !g.is_universal_idx(i) {
        return Err(SubgroupError::NotUniversal(x.to_string()));
    }
    Ok(i)
}

/// Builds `Δ`, the generator map and the conjugation table at the universal vertex `x`.
pub fn apex_subgroup_graph(g: &MixedGraph, x: &str) -> Result<SubgroupGraphResult, SubgroupError> {
    let xi = require_universal(g, x)?;
    let mut y = format!("{x}_sq");
    while g.contains(&y) {
        y.push_str("_2");
    }
    let mut delta = g.renamed(xi, &y)?;
    let mut generator_map = BTreeMap::new();
    let mut conjugation_table = BTreeMap::new();
    generator_map.insert(y.clone(), Word::from_syllables(vec![Syllable::new(x, 2)]));
    for v in 0..g.len() {
        if v == xi {
            continue;
        }
        let name = g.name(v).to_string();
        generator_map.insert(name.clone(), Word::letter(&name));
        let link = g.link_idx(xi, v).expect("apex is universal");
        let (case, new_link) = match link {
            Link::Undirected => (ConjugationCase::Fixed, Link::Undirected),
            Link::In => (ConjugationCase::Inverted, Link::Undirected),
            Link::Out => (ConjugationCase::Shifted, Link::Out),
        };
        delta.set_link_idx(xi, v, Some(new_link));
        conjugation_table.insert(name, case);
    }
    Ok(SubgroupGraphResult {
        apex: x.to_string(),
        square_generator: y,
        delta,
        generator_map,
        conjugation_table,
    })
}

/// `w` lies in `⟨x², lk(x)⟩` iff its total `x`-exponent is even.
pub fn in_index2_subgroup(g: &MixedGraph, x: &str, w: &Word) -> Result<bool, SubgroupError> {
    require_universal(g, x)?;
    check_generators(g, w)?;
    Ok(w.exponent_sum(x).rem_euclid(2) == 0)
}

/// Rewrites `w` over the Δ-generators with the transversal `{1, x}`.
///
/// Returns `None` when `w` is outside the subgroup. The result is freely
/// reduced; with `normalize` it is put in Δ's normal form as well.
pub fn rewrite_into_subgroup(
    g: &MixedGraph,
    x: &str,
    w: &Word,
    normalize: bool,
) -> Result<Option<Word>, SubgroupError> {
    if !in_index2_subgroup(g, x, w)? {
        return Ok(None);
    }
    let sub = apex_subgroup_graph(g, x)?;
    let y = sub.square_generator.as_str();
    let mut emitted: Vec<Syllable> = Vec::new();
    // false: coset 1, true: coset x
    let mut in_x_coset = false;
    for (letter, sign) in w.letters() {
        if letter == x {
            match (in_x_coset, sign > 0) {
                // 1·x·x⁻¹, x·x⁻¹·1
                (false, true) | (true, false) => {}
                // 1·x⁻¹·x⁻¹
                (false, false) => emitted.push(Syllable::new(y, -1)),
                // x·x·1
                (true, true) => emitted.push(Syllable::new(y, 1)),
            }
            in_x_coset = !in_x_coset;
        } else if !in_x_coset {
            emitted.push(Syllable::new(letter, sign));
        } else {
            // x v^±1 x⁻¹
            match (sub.conjugation_table[letter], sign > 0) {
                (ConjugationCase::Fixed, _) => emitted.push(Syllable::new(letter, sign)),
                (ConjugationCase::Inverted, _) => emitted.push(Syllable::new(letter, -sign)),
                (ConjugationCase::Shifted, true) => {
                    emitted.push(Syllable::new(letter, 1));
                    emitted.push(Syllable::new(y, -1));
                }
                (ConjugationCase::Shifted, false) => {
                    emitted.push(Syllable::new(y, 1));
                    emitted.push(Syllable::new(letter, -1));
                }
            }
        }
    }
    debug_assert!(!in_x_coset);
    let out = free_reduce(&Word::from_syllables(emitted));
    if normalize {
        Ok(Some(normal_form(&sub.delta, &out)?))
    } else {
        Ok(Some(out))
    }
}

/// Like [`rewrite_into_subgroup`] but words outside the subgroup are an error.
pub fn rewrite_into_subgroup_strict(g: &MixedGraph, x: &str, w: &Word, normalize: bool) -> Result<Word, SubgroupError> {
    rewrite_into_subgroup(g, x, w, normalize)?.ok_or_else(|| SubgroupError::NotInSubgroup(x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorCheck {
    pub endpoints: (String, String),
    pub kind: EdgeKind,
    /// Relator over the Δ-generators.
    pub relator: Word,
    /// Its image over the original generators.
    pub image: Word,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationCheck {
    pub vertex: String,
    pub case: ConjugationCase,
    pub predicted: Word,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupVerification {
    pub relators: Vec<RelatorCheck>,
    pub conjugations: Vec<ConjugationCheck>,
}

impl SubgroupVerification {
    pub fn all_pass(&self) -> bool {
        self.relators.iter().all(|r| r.passes) && self.conjugations.iter().all(|c| c.passes)
    }
}

/// Checks in the original group that every relator of `Δ` maps to the
/// identity, and that `x v x⁻¹` matches the conjugation table.
pub fn verify_subgroup_presentation(g: &MixedGraph, x: &str) -> Result<SubgroupVerification, SubgroupError> {
    let sub = apex_subgroup_graph(g, x)?;
    let mut relators = Vec::new();
    for edge in sub.delta.edges() {
        let (a, b) = &edge.endpoints;
        let rel = relator(&sub.delta, a, b)?;
        let image = sub.substitute(&rel)?;
        let passes = is_identity(g, &image)?;
        relators.push(RelatorCheck { endpoints: edge.endpoints.clone(), kind: edge.kind, relator: rel, image, passes });
    }
    let mut conjugations = Vec::new();
    let xw = Word::letter(x);
    for (v, &case) in &sub.conjugation_table {
        let predicted = sub.predicted_conjugate(v).expect("table entry exists");
        let actual = crate::word::conjugate(&Word::letter(v), &xw);
        let passes = crate::word::equals(g, &actual, &predicted)?;
        conjugations.push(ConjugationCheck { vertex: v.clone(), case, predicted, passes });
    }
    Ok(SubgroupVerification { relators, conjugations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectAction {
    pub apex: String,
    /// `v ↦ ±1` with `v · apex · v⁻¹ = apex^sign`.
    pub signs: BTreeMap<String, i8>,
    /// All signs are `+1`: the group is `T(Γ∖{apex}) × ℤ`.
    pub direct_product: bool,
}

/// Action of the other generators on `⟨apex⟩ ≅ ℤ`. Requires the apex to be
/// universal with every edge undirected or leaving the apex.
pub fn semidirect_action(g: &MixedGraph, apex: &str) -> Result<SemidirectAction, SubgroupError> {
    let ai = require_universal(g, apex)?;
    let mut signs = BTreeMap::new();
    for v in 0..g.len() {
        if v == ai {
            continue;
        }
        let sign = match g.link_idx(ai, v).expect("apex is universal") {
            Link::Undirected => 1,
            Link::Out => -1,
            Link::In => {
                return Err(SubgroupError::ApexShape { apex: apex.to_string(), vertex: g.name(v).to_string() })
            }
        };
        signs.insert(g.name(v).to_string(), sign);
    }
    let direct_product = signs.values().all(|&s| s == 1);
    Ok(SemidirectAction { apex: apex.to_string(), signs, direct_product })
}
