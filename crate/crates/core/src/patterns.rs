//! Degree-constrained paths, stars, cycles and thread profiles.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Graph, Result};

/// Constraint on a single vertex degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegSpec {
    Exact(usize),
    AtMost(usize),
    AtLeast(usize),
    Any,
}

impl DegSpec {
    pub fn matches(self, degree: usize) -> bool {
        match self {
            DegSpec::Exact(k) => degree == k,
            DegSpec::AtMost(k) => degree <= k,
            DegSpec::AtLeast(k) => degree >= k,
            DegSpec::Any => true,
        }
    }

    /// The bound carried by the spec, if any.
    pub fn bound(self) -> Option<usize> {
        match self {
            DegSpec::Exact(k) | DegSpec::AtMost(k) | DegSpec::AtLeast(k) => Some(k),
            DegSpec::Any => None,
        }
    }
}

impl fmt::Display for DegSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegSpec::Exact(k) => write!(f, "{k}"),
            DegSpec::AtMost(k) => write!(f, "{k}-"),
            DegSpec::AtLeast(k) => write!(f, "{k}+"),
            DegSpec::Any => f.write_str("*"),
        }
    }
}

/// One arm requirement of a thread profile: the arm leaving the center must
/// pass through at least `min_len` consecutive 2-vertices, and when
/// `neighbor` is set the first vertex on the arm must satisfy it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThreadEntry {
    pub min_len: usize,
    pub neighbor: Option<DegSpec>,
}

impl fmt::Display for ThreadEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.min_len)?;
        if let Some(spec) = self.neighbor {
            write!(f, ":{spec}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Path(Vec<DegSpec>),
    Star { center: DegSpec, leaves: Vec<DegSpec> },
    Cycle(Vec<DegSpec>),
    Threads { center: DegSpec, entries: Vec<ThreadEntry> },
}

impl Pattern {
    /// Checks the structural rules a pattern must obey to be meaningful.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let specs: Vec<DegSpec> = match self {
            Pattern::Path(s) | Pattern::Cycle(s) => s.clone(),
            Pattern::Star { center, leaves } => {
                std::iter::once(*center).chain(leaves.iter().copied()).collect()
            }
            Pattern::Threads { center, entries } => std::iter::once(*center)
                .chain(entries.iter().filter_map(|e| e.neighbor))
                .collect(),
        };
        if specs.iter().any(|s| s.bound() == Some(0)) {
            return Err("degree bounds must be at least 1".into());
        }
        match self {
            Pattern::Path(s) if s.len() < 2 => Err("a path needs at least 2 vertices".into()),
            Pattern::Cycle(s) if s.len() < 3 => Err("a cycle needs at least 3 vertices".into()),
            Pattern::Star { leaves, .. } if leaves.is_empty() => Err("a star needs at least one leaf".into()),
            Pattern::Star { center: DegSpec::Exact(k), leaves } if *k != leaves.len() => Err(format!(
                "star center of degree {k} must list exactly {k} leaves, found {}",
                leaves.len()
            )),
            Pattern::Threads { entries, .. } if entries.is_empty() => {
                Err("a thread profile needs at least one entry".into())
            }
            Pattern::Threads { center: DegSpec::Exact(k), entries } if entries.len() > *k => Err(format!(
                "thread profile lists {} entries for a center of degree {k}",
                entries.len()
            )),
            _ => Ok(()),
        }
    }

    /// Number of vertices listed in a witness.
    pub fn witness_len(&self) -> usize {
        match self {
            Pattern::Path(s) | Pattern::Cycle(s) => s.len(),
            Pattern::Star { leaves, .. } => leaves.len() + 1,
            Pattern::Threads { entries, .. } => entries.len() + 1,
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Path(s) => write!(f, "path({})", join(s)),
            Pattern::Cycle(s) => write!(f, "cycle({})", join(s)),
            Pattern::Star { center, leaves } => write!(f, "star({center};{})", join(leaves)),
            Pattern::Threads { center, entries } => write!(f, "threads({center};[{}])", join(entries)),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        crate::theorems::parse_pattern(s)
    }
}

/// A realization of a pattern.
///
/// Paths and cycles list their vertices in pattern order. Stars and thread
/// profiles list the center first, then the vertex assigned to each leaf or
/// entry in pattern order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pattern: String,
    pub vertices: Vec<usize>,
}

impl Witness {
    /// Re-checks the witness against `p` in `g`.
    pub fn is_valid(&self, g: &Graph, p: &Pattern) -> bool {
        let vs = &self.vertices;
        if vs.len() != p.witness_len() || vs.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let distinct = vs.iter().collect::<HashSet<_>>().len() == vs.len();
        if !distinct {
            return false;
        }
        match p {
            Pattern::Path(s) | Pattern::Cycle(s) => {
                let closed = matches!(p, Pattern::Cycle(_));
                s.iter().zip(vs).all(|(spec, &v)| spec.matches(g.degree(v)))
                    && vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
                    && (!closed || g.has_edge(vs[0], vs[vs.len() - 1]))
            }
            Pattern::Star { center, leaves } => {
                let c = vs[0];
                center.matches(g.degree(c))
                    && leaves
                        .iter()
                        .zip(&vs[1..])
                        .all(|(spec, &w)| g.has_edge(c, w) && spec.matches(g.degree(w)))
            }
            Pattern::Threads { center, entries } => {
                let c = vs[0];
                center.matches(g.degree(c))
                    && entries
                        .iter()
                        .zip(&vs[1..])
                        .all(|(e, &w)| g.has_edge(c, w) && entry_accepts(g, c, w, e))
            }
        }
    }
}

fn entry_accepts(g: &Graph, center: usize, w: usize, e: &ThreadEntry) -> bool {
    g.arm_length(center, w) >= e.min_len && e.neighbor.is_none_or(|s| s.matches(g.degree(w)))
}

/// Lexicographically smallest witness of `p` in `g`, if any.
pub fn find_pattern(g: &Graph, p: &Pattern) -> Option<Witness> {
    let name = p.to_string();
    let vertices = match p {
        Pattern::Path(specs) | Pattern::Cycle(specs) => {
            let closed = matches!(p, Pattern::Cycle(_));
            let mut found = None;
            walk_sequences(g, specs, closed, &mut |seq| {
                found = Some(seq.to_vec());
                false
            });
            found
        }
        Pattern::Star { .. } | Pattern::Threads { .. } => {
            let (center, _) = centered_parts(p);
            (0..g.order())
                .filter(|&c| center.matches(g.degree(c)))
                .find_map(|c| {
                    let cands = candidates(g, p, c);
                    smallest_assignment(&cands, None).map(|a| {
                        std::iter::once(c).chain(a).collect()
                    })
                })
        }
    };
    vertices.map(|vertices| Witness { pattern: name, vertices })
}

/// Up to `limit` witnesses, one per occurrence up to the pattern's symmetry.
///
/// Each occurrence is represented by its lexicographically smallest
/// realization, and occurrences are listed in increasing order of that
/// representative.
pub fn find_all(g: &Graph, p: &Pattern, limit: usize) -> Vec<Witness> {
    let name = p.to_string();
    let mut out: Vec<Vec<usize>> = Vec::new();
    if limit == 0 {
        return Vec::new();
    }
    match p {
        Pattern::Path(specs) | Pattern::Cycle(specs) => {
            let closed = matches!(p, Pattern::Cycle(_));
            let mut seen = HashSet::new();
            // realizations arrive in lexicographic order, so the first one of
            // each occurrence is its representative
            walk_sequences(g, specs, closed, &mut |seq| {
                let key = if closed { cycle_key(seq) } else { path_key(seq) };
                if seen.insert(key) {
                    out.push(seq.to_vec());
                }
                out.len() < limit
            });
        }
        Pattern::Star { .. } | Pattern::Threads { .. } => {
            let (center, k) = centered_parts(p);
            for c in (0..g.order()).filter(|&c| center.matches(g.degree(c))) {
                let cands = candidates(g, p, c);
                let mut here = Vec::new();
                for subset in combinations(g.neighbors(c), k) {
                    if let Some(a) = smallest_assignment(&cands, Some(&subset)) {
                        here.push(std::iter::once(c).chain(a).collect::<Vec<_>>());
                    }
                }
                here.sort();
                out.extend(here);
                if out.len() >= limit {
                    break;
                }
            }
            out.truncate(limit);
        }
    }
    out.into_iter()
        .map(|vertices| Witness { pattern: name.clone(), vertices })
        .collect()
}

/// Minimum degree sum over simple paths on `k` vertices.
pub fn omega_k(g: &Graph, k: usize) -> Option<usize> {
    if k == 0 || k > g.order() {
        return None;
    }
    let min_deg = g.min_degree()?;
    let mut best: Option<usize> = None;
    let mut on_path = vec![false; g.order()];
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| g.degree(v));
    for &start in &order {
        on_path[start] = true;
        omega_dfs(g, start, k - 1, g.degree(start), min_deg, &mut on_path, &mut best);
        on_path[start] = false;
    }
    best
}

fn omega_dfs(
    g: &Graph,
    at: usize,
    remaining: usize,
    sum: usize,
    min_deg: usize,
    on_path: &mut [bool],
    best: &mut Option<usize>,
) {
    if best.is_some_and(|b| sum + remaining * min_deg >= b) {
        return;
    }
    if remaining == 0 {
        *best = Some(sum);
        return;
    }
    for &w in g.neighbors(at) {
        if !on_path[w] {
            on_path[w] = true;
            omega_dfs(g, w, remaining - 1, sum + g.degree(w), min_deg, on_path, best);
            on_path[w] = false;
        }
    }
}

/// Visits every realization of `specs` as a simple path (or cycle) in
/// lexicographic order until `visit` returns false.
fn walk_sequences(g: &Graph, specs: &[DegSpec], closed: bool, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let mut seq = Vec::with_capacity(specs.len());
    let mut used = vec![false; g.order()];
    for v in 0..g.order() {
        if specs[0].matches(g.degree(v)) {
            seq.push(v);
            used[v] = true;
            let go_on = extend(g, specs, closed, &mut seq, &mut used, visit);
            used[v] = false;
            seq.pop();
            if !go_on {
                return;
            }
        }
    }
}

fn extend(
    g: &Graph,
    specs: &[DegSpec],
    closed: bool,
    seq: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if seq.len() == specs.len() {
        if closed && !g.has_edge(seq[0], seq[seq.len() - 1]) {
            return true;
        }
        return visit(seq);
    }
    let spec = specs[seq.len()];
    let last = seq[seq.len() - 1];
    for &w in g.neighbors(last) {
        if used[w] || !spec.matches(g.degree(w)) {
            continue;
        }
        seq.push(w);
        used[w] = true;
        let go_on = extend(g, specs, closed, seq, used, visit);
        used[w] = false;
        seq.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn path_key(seq: &[usize]) -> Vec<usize> {
    let rev: Vec<usize> = seq.iter().rev().copied().collect();
    rev.min(seq.to_vec())
}

fn cycle_key(seq: &[usize]) -> Vec<usize> {
    let k = seq.len();
    let mut best = seq.to_vec();
    for shift in 0..k {
        let fwd: Vec<usize> = (0..k).map(|i| seq[(shift + i) % k]).collect();
        let bwd: Vec<usize> = (0..k).map(|i| seq[(shift + k - i) % k]).collect();
        best = best.min(fwd).min(bwd);
    }
    best
}

fn centered_parts(p: &Pattern) -> (DegSpec, usize) {
    match p {
        Pattern::Star { center, leaves } => (*center, leaves.len()),
        Pattern::Threads { center, entries } => (*center, entries.len()),
        _ => unreachable!("only stars and thread profiles have a center"),
    }
}

/// For each leaf or entry position, the neighbors of `c` that may fill it.
fn candidates(g: &Graph, p: &Pattern, c: usize) -> Vec<Vec<usize>> {
    let nbrs = g.neighbors(c);
    match p {
        Pattern::Star { leaves, .. } => leaves
            .iter()
            .map(|s| nbrs.iter().copied().filter(|&w| s.matches(g.degree(w))).collect())
            .collect(),
        Pattern::Threads { entries, .. } => entries
            .iter()
            .map(|e| nbrs.iter().copied().filter(|&w| entry_accepts(g, c, w, e)).collect())
            .collect(),
        _ => unreachable!("only stars and thread profiles have a center"),
    }
}

/// Lexicographically smallest injective assignment of positions to
/// candidates, optionally restricted to use exactly the vertices of `within`.
fn smallest_assignment(cands: &[Vec<usize>], within: Option<&[usize]>) -> Option<Vec<usize>> {
    let cands: Vec<Vec<usize>> = match within {
        Some(set) => cands
            .iter()
            .map(|c| c.iter().copied().filter(|w| set.binary_search(w).is_ok()).collect())
            .collect(),
        None => cands.to_vec(),
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(cands.len());
    for i in 0..cands.len() {
        let pick = cands[i].iter().copied().find(|w| {
            !chosen.contains(w) && {
                let mut taken = chosen.clone();
                taken.push(*w);
                completable(&cands[i + 1..], &taken)
            }
        })?;
        chosen.push(pick);
    }
    Some(chosen)
}

/// Whether every position in `cands` can get a distinct vertex outside `taken`.
fn completable(cands: &[Vec<usize>], taken: &[usize]) -> bool {
    // Kuhn's augmenting paths on a tiny bipartite graph.
    let mut owner: Vec<(usize, usize)> = Vec::new();
    fn augment(
        pos: usize,
        cands: &[Vec<usize>],
        taken: &[usize],
        owner: &mut Vec<(usize, usize)>,
        visited: &mut Vec<usize>,
    ) -> bool {
        for &w in &cands[pos] {
            if taken.contains(&w) || visited.contains(&w) {
                continue;
            }
            visited.push(w);
            match owner.iter().position(|&(v, _)| v == w) {
                None => {
                    owner.push((w, pos));
                    return true;
                }
                Some(idx) => {
                    let other = owner[idx].1;
                    if augment(other, cands, taken, owner, visited) {
                        let idx = owner.iter().position(|&(v, p)| v == w && p == other).expect("still owned");
                        owner[idx].1 = pos;
                        return true;
                    }
                }
            }
        }
        false
    }
    (0..cands.len()).all(|pos| augment(pos, cands, taken, &mut owner, &mut Vec::new()))
}

/// All `k`-element subsets of a sorted list, in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
