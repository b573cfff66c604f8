//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use lightsub::patterns::ThreadEntry;
use lightsub::{Graph, Pattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Consecutive 2-vertices met walking away from `v` through `w`.
fn arm(g: &Graph, v: usize, w: usize) -> usize {
    let (mut prev, mut cur, mut len) = (v, w, 0);
    while g.degree(cur) == 2 && len <= g.order() {
        len += 1;
        let next = *g.neighbors(cur).iter().find(|&&x| x != prev).unwrap_or(&prev);
        prev = cur;
        cur = next;
        if cur == w {
            break;
        }
    }
    len
}

fn entry_ok(g: &Graph, c: usize, w: usize, e: &ThreadEntry) -> bool {
    arm(g, c, w) >= e.min_len && e.neighbor.is_none_or(|s| s.matches(g.degree(w)))
}

/// Whether `seq` realizes `p`, checked from first principles.
pub fn realizes(g: &Graph, p: &Pattern, seq: &[usize]) -> bool {
    let deg = |v: usize| g.degree(v);
    match p {
        Pattern::Path(s) => {
            s.iter().zip(seq).all(|(sp, &v)| sp.matches(deg(v)))
                && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
        }
        Pattern::Cycle(s) => {
            s.iter().zip(seq).all(|(sp, &v)| sp.matches(deg(v)))
                && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
                && g.has_edge(seq[0], seq[seq.len() - 1])
        }
        Pattern::Star { center, leaves } => {
            center.matches(deg(seq[0]))
                && leaves.iter().zip(&seq[1..]).all(|(sp, &w)| g.has_edge(seq[0], w) && sp.matches(deg(w)))
        }
        Pattern::Threads { center, entries } => {
            center.matches(deg(seq[0]))
                && entries.iter().zip(&seq[1..]).all(|(e, &w)| g.has_edge(seq[0], w) && entry_ok(g, seq[0], w, e))
        }
    }
}

fn len_of(p: &Pattern) -> usize {
    match p {
        Pattern::Path(s) | Pattern::Cycle(s) => s.len(),
        Pattern::Star { leaves, .. } => leaves.len() + 1,
        Pattern::Threads { entries, .. } => entries.len() + 1,
    }
}

/// Every injective tuple realizing `p`, in lexicographic order.
pub fn all_realizations(g: &Graph, p: &Pattern) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, p: &Pattern, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            if realizes(g, p, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..g.order() {
            if !cur.contains(&v) {
                cur.push(v);
                rec(g, p, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, p, len_of(p), &mut Vec::new(), &mut out);
    out
}

/// Lexicographically first realization.
pub fn brute_find(g: &Graph, p: &Pattern) -> Option<Vec<usize>> {
    all_realizations(g, p).into_iter().next()
}

/// Symmetry class of a realization.
pub fn occurrence_key(p: &Pattern, seq: &[usize]) -> Vec<usize> {
    match p {
        Pattern::Path(_) => {
            let rev: Vec<usize> = seq.iter().rev().copied().collect();
            seq.to_vec().min(rev)
        }
        Pattern::Cycle(_) => {
            let n = seq.len();
            let mut best: Option<Vec<usize>> = None;
            for r in 0..n {
                let rot: Vec<usize> = (0..n).map(|i| seq[(r + i) % n]).collect();
                let rev: Vec<usize> = rot.iter().rev().copied().collect();
                for cand in [rot, rev] {
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            best.unwrap()
        }
        Pattern::Star { .. } | Pattern::Threads { .. } => {
            let mut leaves = seq[1..].to_vec();
            leaves.sort_unstable();
            std::iter::once(seq[0]).chain(leaves).collect()
        }
    }
}

/// One representative per occurrence, first realization of each in
/// lexicographic order.
pub fn brute_find_all(g: &Graph, p: &Pattern) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    all_realizations(g, p)
        .into_iter()
        .filter(|seq| seen.insert(occurrence_key(p, seq)))
        .collect()
}

/// Random graph with independent edges.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
    Graph::new(a + b, &edges).unwrap()
}
