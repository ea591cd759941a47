//! Test-only oracles and generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use traag::graph::{ConeKind, MixedGraph};
use traag::word::{relator, swap_adjacent, Syllable, Word};

/// Every vertex subset of size ≥ 4 whose induced underlying graph is a cycle.
pub fn brute_force_has_induced_cycle(g: &MixedGraph) -> bool {
    let n = g.len();
    (0u32..(1 << n)).any(|mask| {
        let vs: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if vs.len() < 4 {
            return false;
        }
        let deg2 = vs
            .iter()
            .all(|&v| vs.iter().filter(|&&u| u != v && g.adjacent_idx(u, v)).count() == 2);
        deg2 && connected_within(g, &vs)
    })
}

fn connected_within(g: &MixedGraph, vs: &[usize]) -> bool {
    let mut seen = vec![vs[0]];
    let mut stack = vec![vs[0]];
    while let Some(v) = stack.pop() {
        for &u in vs {
            if g.adjacent_idx(u, v) && !seen.contains(&u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen.len() == vs.len()
}

/// Induced P4 or C4 by checking all 4-subsets directly.
pub fn brute_force_has_p4_or_c4(g: &MixedGraph) -> bool {
    let n = g.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let vs = [a, b, c, d];
                    let mut degs = [0; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.adjacent_idx(vs[i], vs[j]) {
                                degs[i] += 1;
                                degs[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    let mut sorted = degs;
                    sorted.sort_unstable();
                    let p4 = edges == 3 && sorted == [1, 1, 2, 2];
                    let c4 = edges == 4 && sorted == [2, 2, 2, 2];
                    if p4 || c4 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Membership in ℛ straight from the grammar: a single vertex, or a split
/// of the vertex set into two non-empty sides with no edges across, or a
/// tip joined to all others by undirected or into-tip edges.
pub fn brute_force_in_class_r(g: &MixedGraph, vs: &[usize]) -> bool {
    if vs.len() == 1 {
        return true;
    }
    let k = vs.len();
    for mask in 1u32..(1 << (k - 1)) {
        let (left, right): (Vec<usize>, Vec<usize>) = {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (i, &v) in vs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    l.push(v)
                } else {
                    r.push(v)
                }
            }
            (l, r)
        };
        let crossing = left.iter().any(|&a| right.iter().any(|&b| g.adjacent_idx(a, b)));
        if !crossing && brute_force_in_class_r(g, &left) && brute_force_in_class_r(g, &right) {
            return true;
        }
    }
    for &w in vs {
        let ok = vs.iter().all(|&v| {
            v == w || matches!(g.link_idx(v, w), Some(traag::Link::Undirected) | Some(traag::Link::Out))
        });
        if ok {
            let rest: Vec<usize> = vs.iter().copied().filter(|&v| v != w).collect();
            if brute_force_in_class_r(g, &rest) {
                return true;
            }
        }
    }
    false
}

pub fn random_word<R: Rng + ?Sized>(g: &MixedGraph, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(0..=max_len);
    let syl = (0..len)
        .map(|_| {
            let v = g.name(rng.gen_range(0..g.len())).to_string();
            Syllable::new(v, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    Word::from_syllables(syl)
}

fn splice(w: &Word, at: usize, piece: &Word) -> Word {
    let letters: Vec<(String, i64)> = w.letters().map(|(g, e)| (g.to_string(), e)).collect();
    let at = at.min(letters.len());
    let mut syl: Vec<Syllable> = letters[..at].iter().map(|(g, e)| Syllable::new(g.clone(), *e)).collect();
    syl.extend(piece.letters().map(|(g, e)| Syllable::new(g, e)));
    syl.extend(letters[at..].iter().map(|(g, e)| Syllable::new(g.clone(), *e)));
    Word::from_syllables(syl)
}

/// One defining relation applied to `w`: a relator (or its inverse or a
/// cyclic shift) inserted at a random letter position, or a single swap.
pub fn apply_random_relation<R: Rng + ?Sized>(g: &MixedGraph, w: &Word, rng: &mut R) -> Word {
    let edges = g.edges();
    if rng.gen_bool(0.5) && w.syllable_len() >= 2 {
        let i = rng.gen_range(0..w.syllable_len() - 1);
        if let Ok(Some(swapped)) = swap_adjacent(g, w, i) {
            return swapped;
        }
    }
    let piece = if edges.is_empty() {
        let v = g.name(rng.gen_range(0..g.len())).to_string();
        Word::from_syllables(vec![Syllable::new(v.clone(), 1), Syllable::new(v, -1)])
    } else {
        let e = edges.choose(rng).unwrap();
        let r = relator(g, &e.endpoints.0, &e.endpoints.1).unwrap();
        let r = if rng.gen_bool(0.5) { traag::word::invert(&r) } else { r };
        r.rotate_letters(rng.gen_range(0..4))
    };
    let at = rng.gen_range(0..=w.letter_len() as usize);
    splice(w, at, &piece)
}

/// Random member of ℛ with exactly `n` vertices, built by unions and cones,
/// with vertex declaration order shuffled afterwards.
pub fn random_class_r_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MixedGraph {
    let mut counter = 0;
    let g = build_r(n, rng, &mut counter);
    let mut order: Vec<String> = g.vertices().to_vec();
    order.shuffle(rng);
    g.reordered(&order).unwrap()
}

fn build_r<R: Rng + ?Sized>(n: usize, rng: &mut R, counter: &mut usize) -> MixedGraph {
    if n == 1 {
        *counter += 1;
        return MixedGraph::new(&[format!("u{counter}")]).unwrap();
    }
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..n);
        let a = build_r(k, rng, counter);
        let b = build_r(n - k, rng, counter);
        a.disjoint_union(&b)
    } else {
        let base = build_r(n - 1, rng, counter);
        *counter += 1;
        let tip = format!("u{counter}");
        let kinds: HashMap<String, ConeKind> = base
            .vertices()
            .iter()
            .map(|v| (v.clone(), if rng.gen_bool(0.5) { ConeKind::IntoTip } else { ConeKind::Undirected }))
            .collect();
        base.cone(&tip, &kinds).unwrap()
    }
}

/// Star with apex `x` and leaves `l1..lk`; `kinds[i]` is 0 undirected,
/// 1 leaf into apex, 2 apex into leaf.
pub fn star(kinds: &[u8]) -> MixedGraph {
    let mut names = vec!["x".to_string()];
    names.extend((1..=kinds.len()).map(|i| format!("l{i}")));
    let mut g = MixedGraph::new(&names).unwrap();
    for (i, &k) in kinds.iter().enumerate() {
        let leaf = format!("l{}", i + 1);
        match k {
            0 => g.add_undirected("x", &leaf).unwrap(),
            1 => g.add_directed(&leaf, "x").unwrap(),
            _ => g.add_directed("x", &leaf).unwrap(),
        }
    }
    g
}

/// All apex edge-kind assignments for a star with `k` leaves.
pub fn all_star_kinds(k: usize) -> Vec<Vec<u8>> {
    (0..3usize.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let d = (code % 3) as u8;
                    code /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

/// Star with random extra mixed edges among the leaves.
pub fn decorated_star<R: Rng + ?Sized>(rng: &mut R) -> MixedGraph {
    let k = rng.gen_range(1..=5);
    let kinds: Vec<u8> = (0..k).map(|_| rng.gen_range(0..3)).collect();
    let mut g = star(&kinds);
    for i in 1..=k {
        for j in i + 1..=k {
            let (a, b) = (format!("l{i}"), format!("l{j}"));
            match rng.gen_range(0..4) {
                0 => {}
                1 => g.add_undirected(&a, &b).unwrap(),
                2 => g.add_directed(&a, &b).unwrap(),
                _ => g.add_directed(&b, &a).unwrap(),
            }
        }
    }
    g
}

/// Random word with even total exponent of `x`.
pub fn random_even_word<R: Rng + ?Sized>(g: &MixedGraph, x: &str, max_len: usize, rng: &mut R) -> Word {
    loop {
        let w = random_word(g, max_len, rng);
        if w.exponent_sum(x) % 2 == 0 {
            return w;
        }
    }
}
