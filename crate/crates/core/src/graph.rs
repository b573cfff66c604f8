//! Simple undirected graphs with exact degree statistics.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::{Error, Result};

/// Exact fraction used for densities, charges and thresholds.
pub type Rational = num_rational::Ratio<i64>;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// A maximal run of degree-2 vertices.
///
/// `ends` is `None` for a closed thread, i.e. a whole component that is a
/// cycle of 2-vertices. Otherwise `internal[0]` is adjacent to `ends.0` and
/// the last internal vertex is adjacent to `ends.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub ends: Option<(usize, usize)>,
    pub internal: Vec<usize>,
}

impl Thread {
    pub fn len(&self) -> usize {
        self.internal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }
}

impl Graph {
    /// Builds a graph from an edge list, dropping duplicate edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge {u}-{v} uses a vertex id outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    /// `2m / n` in lowest terms.
    pub fn average_degree(&self) -> Result<Rational> {
        if self.order() == 0 {
            return Err(Error::input("average degree of the empty graph"));
        }
        Ok(Rational::new(2 * self.size() as i64, self.order() as i64))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            adj[i] = self.adj[v]
                .iter()
                .filter(|&&w| index[w] != usize::MAX)
                .map(|&w| index[w])
                .collect();
            adj[i].sort_unstable();
        }
        Graph { adj }
    }

    /// Number of edges with both ends in `vertices`.
    pub fn induced_size(&self, vertices: &[usize]) -> usize {
        let mut member = vec![false; self.order()];
        for &v in vertices {
            member[v] = true;
        }
        vertices
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| member[w]).count())
            .sum::<usize>()
            / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Replaces edge `u v` by a path through `t` new vertices.
    ///
    /// New vertices take ids `n, n+1, ...` in order from `u` towards `v`.
    pub fn subdivide(&self, u: usize, v: usize, t: usize) -> Result<Graph> {
        self.subdivide_many(&[((u, v), t)])
    }

    /// Applies several subdivisions in sequence; equivalent to chaining
    /// [`Graph::subdivide`] over `plan` but done in one pass.
    pub fn subdivide_many(&self, plan: &[((usize, usize), usize)]) -> Result<Graph> {
        let mut adj = self.adj.clone();
        for &((u, v), t) in plan {
            if u >= adj.len() || adj[u].binary_search(&v).is_err() {
                return Err(Error::input(format!("edge {u}-{v} is not present")));
            }
            if t == 0 {
                continue;
            }
            let first = adj.len();
            let last = first + t - 1;
            let pos = adj[u].binary_search(&v).unwrap();
            adj[u].remove(pos);
            let pos = adj[v].binary_search(&u).unwrap();
            adj[v].remove(pos);
            for i in 0..t {
                let id = first + i;
                let prev = if i == 0 { u } else { id - 1 };
                let next = if i + 1 == t { v } else { id + 1 };
                let mut list = vec![prev, next];
                list.sort_unstable();
                adj.push(list);
            }
            insert_sorted(&mut adj[u], first);
            insert_sorted(&mut adj[v], last);
        }
        Ok(Graph { adj })
    }

    /// Maximal threads, ordered by their smallest internal vertex.
    ///
    /// Requires minimum degree at least 2.
    pub fn maximal_threads(&self) -> Result<Vec<Thread>> {
        if let Some((v, d)) = self.adj.iter().enumerate().map(|(v, l)| (v, l.len())).find(|&(_, d)| d <= 1) {
            return Err(Error::input(format!(
                "thread decomposition needs minimum degree 2, vertex {v} has degree {d}"
            )));
        }
        let n = self.order();
        let mut seen = vec![false; n];
        let mut threads = Vec::new();
        for start in 0..n {
            if seen[start] || self.degree(start) != 2 {
                continue;
            }
            let [a, b] = [self.adj[start][0], self.adj[start][1]];
            let (left, left_end) = self.walk_two_vertices(start, a);
            if left_end.is_none() {
                // walked all the way round: closed thread
                let mut internal = vec![start];
                let mut prev = start;
                let mut cur = a.min(b);
                while cur != start {
                    internal.push(cur);
                    let next = if self.adj[cur][0] == prev {
                        self.adj[cur][1]
                    } else {
                        self.adj[cur][0]
                    };
                    prev = cur;
                    cur = next;
                }
                for &x in &internal {
                    seen[x] = true;
                }
                threads.push(Thread {
                    ends: None,
                    internal,
                });
                continue;
            }
            let (right, right_end) = self.walk_two_vertices(start, b);
            let end_a = left_end.expect("open thread has an endpoint");
            let end_b = right_end.expect("open thread has an endpoint");
            let mut internal: Vec<usize> = left.iter().rev().copied().collect();
            internal.push(start);
            internal.extend(right.iter().copied());
            let mut ends = (end_a, end_b);
            if end_a > end_b || (end_a == end_b && internal[0] > *internal.last().unwrap()) {
                internal.reverse();
                ends = (end_b, end_a);
            }
            for &x in &internal {
                seen[x] = true;
            }
            threads.push(Thread {
                ends: Some(ends),
                internal,
            });
        }
        Ok(threads)
    }

    /// Follows 2-vertices from `from` through `next`. Returns the 2-vertices
    /// visited (excluding `from`) and the first vertex of degree other than 2,
    /// or `None` if the walk came back to `from`.
    fn walk_two_vertices(&self, from: usize, next: usize) -> (Vec<usize>, Option<usize>) {
        let mut visited = Vec::new();
        let mut prev = from;
        let mut cur = next;
        loop {
            if cur == from {
                visited.push(from);
                return (visited, None);
            }
            if self.degree(cur) != 2 {
                return (visited, Some(cur));
            }
            visited.push(cur);
            let nxt = if self.adj[cur][0] == prev {
                self.adj[cur][1]
            } else {
                self.adj[cur][0]
            };
            prev = cur;
            cur = nxt;
        }
    }

    /// Number of consecutive 2-vertices met when leaving `v` along edge `v w`.
    pub fn arm_length(&self, v: usize, w: usize) -> usize {
        let mut len = 0;
        let mut prev = v;
        let mut cur = w;
        while self.degree(cur) == 2 {
            len += 1;
            let nxt = if self.adj[cur][0] == prev {
                self.adj[cur][1]
            } else {
                self.adj[cur][0]
            };
            prev = cur;
            cur = nxt;
            if cur == w {
                break;
            }
        }
        len
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
    /// Text after `#` is ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::input("edge list is empty"))?;
        let [n, m] = parse_pair(header, line_no)?;
        let mut edges = Vec::with_capacity(m);
        for (line_no, line) in lines {
            edges.push(parse_pair(line, line_no)?);
        }
        if edges.len() != m {
            return Err(Error::input(format!(
                "header declares {m} edges but {} were listed",
                edges.len()
            )));
        }
        let pairs: Vec<(usize, usize)> = edges.into_iter().map(|[u, v]| (u, v)).collect();
        Graph::new(n, &pairs)
    }

    /// Canonical edge-list text; `parse_edge_list` inverts it exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn degree_sum(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Total of `deg(v) - c` over all vertices.
    pub fn charge_total(&self, c: Rational) -> Rational {
        self.adj
            .iter()
            .fold(Rational::zero(), |acc, l| acc + Rational::from_integer(l.len() as i64) - c)
    }
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    let pos = list.binary_search(&x).unwrap_or_else(|p| p);
    list.insert(pos, x);
}

fn parse_pair(line: &str, line_no: usize) -> Result<[usize; 2]> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::input(format!("line {line_no}: expected two integers")))?
            .parse::<usize>()
            .map_err(|e| Error::input(format!("line {line_no}: {e}")))
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(Error::input(format!("line {line_no}: trailing tokens")));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    #[test]
    fn triangle_and_k4() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3.degrees(), vec![2, 2, 2]);
        let k4 = complete(4);
        assert_eq!(k4.degrees(), vec![3, 3, 3, 3]);
        assert_eq!(k4.size(), 6);
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        assert!(matches!(Graph::new(3, &[(0, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::new(3, &[(0, 3)]), Err(Error::Input(_))));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn average_degrees() {
        assert_eq!(complete(4).average_degree().unwrap(), Rational::from_integer(3));
        assert_eq!(cycle(7).average_degree().unwrap(), Rational::from_integer(2));
        assert!(Graph::empty(0).average_degree().is_err());
    }

    #[test]
    fn girths() {
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(petersen().girth(), Some(5));
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
    }

    #[test]
    fn closed_thread_on_cycle() {
        let threads = cycle(5).maximal_threads().unwrap();
        assert_eq!(threads.len(), 1);
        assert!(threads[0].is_closed());
        assert_eq!(threads[0].internal, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn subdivided_k4_threads() {
        let k4 = complete(4);
        let plan: Vec<_> = k4.edges().map(|e| (e, 1)).collect();
        let g = k4.subdivide_many(&plan).unwrap();
        let threads = g.maximal_threads().unwrap();
        assert_eq!(threads.len(), 6);
        assert!(threads.iter().all(|t| t.len() == 1 && !t.is_closed()));
        assert_eq!(threads[0].internal, vec![4]);
        assert_eq!(threads[0].ends, Some((0, 1)));
    }

    #[test]
    fn threads_reject_leaves() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.maximal_threads().is_err());
    }

    #[test]
    fn loop_thread_through_one_vertex() {
        // vertex 0 of degree 3 with a 3-cycle of 2-vertices hanging off it
        let g = Graph::new(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 0)],
        )
        .unwrap();
        let threads = g.maximal_threads().unwrap();
        // vertex 0 has degree 4 here, two loop threads
        assert_eq!(threads.len(), 2);
        assert_eq!(threads[0].ends, Some((0, 0)));
        assert_eq!(threads[0].internal, vec![1, 2, 3]);
        assert_eq!(threads[1].internal, vec![4, 5]);
        assert_eq!(g.arm_length(0, 1), 3);
        assert_eq!(g.arm_length(0, 3), 3);
        assert_eq!(g.arm_length(0, 4), 2);
    }

    #[test]
    fn subdivision_identity_and_triangle() {
        let k3 = cycle(3);
        assert_eq!(k3.subdivide(0, 1, 0).unwrap(), k3);
        let g = k3.subdivide(0, 1, 1).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.degrees(), vec![2, 2, 2, 2]);
        assert_eq!(g.girth(), Some(4));
        assert!(k3.subdivide(0, 5, 1).is_err());
    }

    #[test]
    fn four_regular_three_insertions() {
        let k5 = complete(5);
        let plan: Vec<_> = k5.edges().map(|e| (e, 3)).collect();
        let g = k5.subdivide_many(&plan).unwrap();
        assert_eq!(g.average_degree().unwrap(), Rational::new(16, 7));
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "4 3\n0 1\n0 3\n2 3\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g.to_edge_list(), text);
        let with_comments = "# header\n4 3 # n m\n0 1\n\n3 2\n0 3\n";
        assert_eq!(Graph::parse_edge_list(with_comments).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
    }
}
