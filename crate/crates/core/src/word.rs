//! Words over the generators of a T-RAAG and the word problem.
//!
//! An undirected edge `{p, q}` lets syllables of `p` and `q` commute. A
//! directed edge `[p, q⟩` gives `pqp = q`, equivalently `q⁻¹pq = p⁻¹`:
//! conjugating by the terminus inverts the origin. On syllables,
//!
//! ```text
//! pᵃ qᵇ = qᵇ p^(a·(−1)ᵇ)        qᵇ pᵃ = p^(a·(−1)ᵇ) qᵇ
//! ```
//!
//! so a swap keeps the terminus exponent and flips the sign of the origin
//! exponent exactly when the terminus exponent is odd. Swaps keep letter
//! length, which is what makes the normal form computable by shuffling.
//!
//! Normal forms are computed in two passes. First, any two syllables of the
//! same generator separated only by syllables adjacent to it are shuffled
//! together and merged, until no such pair is left. Then the remaining
//! syllables are laid out as the lexicographically least arrangement
//! reachable by swaps, under the canonical vertex order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_valid_name, Link, MixedGraph};

/// Default bound on the number of words the swap-class oracle may visit.
pub const DEFAULT_ORACLE_CAP: usize = 200_000;
/// Longest word (in letters) the swap-class oracle accepts.
pub const MAX_ORACLE_WORD_LEN: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("bad word token `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no edge between `{0}` and `{1}`")]
    UnknownEdge(String, String),
    #[error("oracle limit exceeded: {0}")]
    SizeLimit(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: String,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: impl Into<String>, exponent: i64) -> Self {
        Syllable { generator: generator.into(), exponent }
    }
}

/// A word as a list of syllables. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word as given; zero exponents are dropped, nothing is merged.
    pub fn from_syllables(syllables: Vec<Syllable>) -> Self {
        Word { syllables: syllables.into_iter().filter(|s| s.exponent != 0).collect() }
    }

    pub fn letter(generator: &str) -> Self {
        Word::from_syllables(vec![Syllable::new(generator, 1)])
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// Sum of the exponents of `generator`.
    pub fn exponent_sum(&self, generator: &str) -> i64 {
        self.syllables.iter().filter(|s| s.generator == generator).map(|s| s.exponent).sum()
    }

    /// Letters as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.syllables.iter().flat_map(|s| {
            std::iter::repeat((s.generator.as_str(), s.exponent.signum())).take(s.exponent.unsigned_abs() as usize)
        })
    }

    /// Rotates the letter sequence left by `k` letters.
    pub fn rotate_letters(&self, k: usize) -> Word {
        let letters: Vec<(&str, i64)> = self.letters().collect();
        if letters.is_empty() {
            return Word::identity();
        }
        let k = k % letters.len();
        let syl = letters[k..]
            .iter()
            .chain(&letters[..k])
            .map(|&(g, e)| Syllable::new(g, e))
            .collect();
        free_reduce(&Word::from_syllables(syl))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_word(self))
    }
}

impl std::str::FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parses `a b^-1 a^2`. Empty input and `1` denote the identity.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let mut syllables = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let bad = |reason: &str| WordError::Parse { token: token.to_string(), reason: reason.to_string() };
        let (name, exponent) = match token.split_once('^') {
            None => (token, 1),
            Some((name, exp)) => {
                let k: i64 = exp.parse().map_err(|_| bad("exponent is not an integer"))?;
                if k.unsigned_abs() > i32::MAX as u64 {
                    return Err(bad("exponent out of range"));
                }
                (name, k)
            }
        };
        if !is_valid_name(name) {
            return Err(bad("invalid generator name"));
        }
        if exponent == 0 {
            return Err(bad("zero exponent"));
        }
        syllables.push(Syllable::new(name, exponent));
    }
    Ok(Word { syllables })
}

/// Parses a word and checks every generator is a vertex of `g`.
pub fn parse_word_in(g: &MixedGraph, text: &str) -> Result<Word, WordError> {
    let w = parse_word(text)?;
    check_generators(g, &w)?;
    Ok(w)
}

pub fn check_generators(g: &MixedGraph, w: &Word) -> Result<(), WordError> {
    match w.syllables.iter().find(|s| !g.contains(&s.generator)) {
        Some(s) => Err(WordError::UnknownGenerator(s.generator.clone())),
        None => Ok(()),
    }
}

pub fn serialize_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.syllables
        .iter()
        .map(|s| match s.exponent {
            1 => s.generator.clone(),
            k => format!("{}^{}", s.generator, k),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Merges adjacent syllables of the same generator and drops zero syllables.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Syllable> = Vec::with_capacity(w.syllables.len());
    for s in &w.syllables {
        match out.last_mut() {
            Some(last) if last.generator == s.generator => {
                last.exponent += s.exponent;
                if last.exponent == 0 {
                    out.pop();
                }
            }
            _ if s.exponent != 0 => out.push(s.clone()),
            _ => {}
        }
    }
    Word { syllables: out }
}

pub fn invert(w: &Word) -> Word {
    free_reduce(&Word {
        syllables: w.syllables.iter().rev().map(|s| Syllable::new(s.generator.clone(), -s.exponent)).collect(),
    })
}

pub fn concat(a: &Word, b: &Word) -> Word {
    let mut syllables = a.syllables.clone();
    syllables.extend(b.syllables.iter().cloned());
    free_reduce(&Word { syllables })
}

/// `u w u⁻¹`, freely reduced.
pub fn conjugate(w: &Word, u: &Word) -> Word {
    concat(&concat(u, w), &invert(u))
}

/// Defining relator of the edge between `a` and `b`: `[p,q] = pqp⁻¹q⁻¹` with
/// `p` first in canonical order, or `[p,q⟩ = pqpq⁻¹` for origin `p`.
pub fn relator(g: &MixedGraph, a: &str, b: &str) -> Result<Word, WordError> {
    let i = g.index_of(a).ok_or_else(|| WordError::UnknownGenerator(a.to_string()))?;
    let j = g.index_of(b).ok_or_else(|| WordError::UnknownGenerator(b.to_string()))?;
    let (p, q, pq) = match g.link_idx(i, j) {
        None => return Err(WordError::UnknownEdge(a.to_string(), b.to_string())),
        Some(Link::Undirected) if i < j => (a, b, -1),
        Some(Link::Undirected) => (b, a, -1),
        Some(Link::Out) => (a, b, 1),
        Some(Link::In) => (b, a, 1),
    };
    Ok(Word::from_syllables(vec![
        Syllable::new(p, 1),
        Syllable::new(q, 1),
        Syllable::new(p, pq),
        Syllable::new(q, -1),
    ]))
}

/// Syllable over vertex indices.
pub(crate) type Syl = (usize, i64);

pub(crate) fn to_indexed(g: &MixedGraph, w: &Word) -> Result<Vec<Syl>, WordError> {
    w.syllables
        .iter()
        .map(|s| {
            g.index_of(&s.generator)
                .map(|i| (i, s.exponent))
                .ok_or_else(|| WordError::UnknownGenerator(s.generator.clone()))
        })
        .collect()
}

pub(crate) fn from_indexed(g: &MixedGraph, syl: &[Syl]) -> Word {
    Word { syllables: syl.iter().map(|&(i, e)| Syllable::new(g.name(i), e)).collect() }
}

/// Rewrites `left · right` as `right' · left'` when the two generators are
/// joined by an edge.
pub(crate) fn swap_pair(g: &MixedGraph, left: Syl, right: Syl) -> Option<(Syl, Syl)> {
    let (p, a) = left;
    let (q, b) = right;
    let odd = |k: i64| k.rem_euclid(2) == 1;
    match g.link_idx(p, q)? {
        Link::Undirected => Some((right, left)),
        // p is the origin, q the terminus
        Link::Out => Some(((q, b), (p, if odd(b) { -a } else { a }))),
        Link::In => Some(((q, if odd(a) { -b } else { b }), (p, a))),
    }
}

pub(crate) fn free_reduce_idx(syl: &mut Vec<Syl>) {
    let mut out: Vec<Syl> = Vec::with_capacity(syl.len());
    for &(gen, e) in syl.iter() {
        match out.last_mut() {
            Some(last) if last.0 == gen => {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ if e != 0 => out.push((gen, e)),
            _ => {}
        }
    }
    *syl = out;
}

/// Swaps syllables `i` and `i + 1`; returns the freely reduced result, or
/// `None` when the generators are equal or not adjacent, or `i` is out of range.
pub fn swap_adjacent(g: &MixedGraph, w: &Word, i: usize) -> Result<Option<Word>, WordError> {
    let mut syl = to_indexed(g, w)?;
    if i + 1 >= syl.len() || syl[i].0 == syl[i + 1].0 {
        return Ok(None);
    }
    let Some((r, l)) = swap_pair(g, syl[i], syl[i + 1]) else { return Ok(None) };
    syl[i] = r;
    syl[i + 1] = l;
    free_reduce_idx(&mut syl);
    Ok(Some(from_indexed(g, &syl)))
}

/// Moves the syllable at `from` left to position `to` by successive swaps.
/// Every syllable in between must be adjacent to it.
fn shuffle_left(g: &MixedGraph, syl: &mut [Syl], from: usize, to: usize) {
    for k in (to..from).rev() {
        let (r, l) = swap_pair(g, syl[k], syl[k + 1]).expect("shuffled syllable is adjacent to everything it passes");
        syl[k] = r;
        syl[k + 1] = l;
    }
}

/// First pair `(i, j)`, `i < j`, of syllables with one generator such that
/// every syllable strictly between is adjacent to it.
fn mergeable_pair(g: &MixedGraph, syl: &[Syl]) -> Option<(usize, usize)> {
    for j in 1..syl.len() {
        let x = syl[j].0;
        for i in (0..j).rev() {
            if syl[i].0 == x {
                return Some((i, j));
            }
            if !g.adjacent_idx(syl[i].0, x) {
                break;
            }
        }
    }
    None
}

/// Shuffles same-generator syllables together and merges them until no
/// mergeable pair remains.
pub(crate) fn reduce_idx(g: &MixedGraph, syl: &mut Vec<Syl>) {
    free_reduce_idx(syl);
    while let Some((i, j)) = mergeable_pair(g, syl) {
        shuffle_left(g, syl, j, i + 1);
        let moved = syl.remove(i + 1);
        syl[i].1 += moved.1;
        free_reduce_idx(syl);
    }
}

/// Least arrangement of a reduced word: repeatedly bring to the front the
/// smallest generator whose syllable can be shuffled past everything before it.
pub(crate) fn lex_least_idx(g: &MixedGraph, mut rest: Vec<Syl>) -> Vec<Syl> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let p = (0..rest.len())
            .filter(|&p| (0..p).all(|k| g.adjacent_idx(rest[k].0, rest[p].0)))
            .min_by_key(|&p| rest[p].0)
            .expect("the first syllable is always available");
        shuffle_left(g, &mut rest, p, 0);
        out.push(rest.remove(0));
    }
    out
}

pub(crate) fn normal_form_idx(g: &MixedGraph, mut syl: Vec<Syl>) -> Vec<Syl> {
    reduce_idx(g, &mut syl);
    lex_least_idx(g, syl)
}

/// Shortlex normal form over the canonical vertex order.
pub fn normal_form(g: &MixedGraph, w: &Word) -> Result<Word, WordError> {
    let syl = to_indexed(g, w)?;
    Ok(from_indexed(g, &normal_form_idx(g, syl)))
}

pub fn equals(g: &MixedGraph, a: &Word, b: &Word) -> Result<bool, WordError> {
    Ok(normal_form(g, a)? == normal_form(g, b)?)
}

pub fn is_identity(g: &MixedGraph, w: &Word) -> Result<bool, WordError> {
    Ok(normal_form(g, w)?.is_empty())
}

/// `v ↦ v²` on every syllable.
pub fn square_map(w: &Word) -> Word {
    Word { syllables: w.syllables.iter().map(|s| Syllable::new(s.generator.clone(), 2 * s.exponent)).collect() }
}

/// Shortlex comparison of letter sequences. Letters are ordered by vertex,
/// and `x < x⁻¹` for the same vertex.
pub fn shortlex_cmp(g: &MixedGraph, a: &Word, b: &Word) -> Result<Ordering, WordError> {
    let key = |w: &Word| -> Result<Vec<(usize, bool)>, WordError> {
        w.letters()
            .map(|(gen, e)| {
                g.index_of(gen)
                    .map(|i| (i, e < 0))
                    .ok_or_else(|| WordError::UnknownGenerator(gen.to_string()))
            })
            .collect()
    };
    let (ka, kb) = (key(a)?, key(b)?);
    Ok(ka.len().cmp(&kb.len()).then_with(|| ka.cmp(&kb)))
}

/// Every freely reduced word reachable from `w` in at most `radius` swaps,
/// with free reduction after each swap. Brute force; meant as a test oracle.
pub fn bfs_equivalence_class(
    g: &MixedGraph,
    w: &Word,
    radius: usize,
    cap: usize,
) -> Result<BTreeSet<Word>, WordError> {
    if w.letter_len() > MAX_ORACLE_WORD_LEN {
        return Err(WordError::SizeLimit(format!(
            "word has {} letters, oracle accepts at most {MAX_ORACLE_WORD_LEN}",
            w.letter_len()
        )));
    }
    let mut start = to_indexed(g, w)?;
    free_reduce_idx(&mut start);
    let mut seen: HashSet<Vec<Syl>> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    for _ in 0..radius {
        let mut next = Vec::new();
        for word in &frontier {
            for i in 0..word.len().saturating_sub(1) {
                if word[i].0 == word[i + 1].0 {
                    continue;
                }
                let Some((r, l)) = swap_pair(g, word[i], word[i + 1]) else { continue };
                let mut moved = word.clone();
                moved[i] = r;
                moved[i + 1] = l;
                free_reduce_idx(&mut moved);
                if seen.insert(moved.clone()) {
                    if seen.len() > cap {
                        return Err(WordError::SizeLimit(format!("more than {cap} words reached")));
                    }
                    next.push(moved);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen.iter().map(|s| from_indexed(g, s)).collect())
}
