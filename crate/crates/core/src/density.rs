//! Maximum average degree.
//!
//! `mad_exact` runs an exact-rational binary search on the edge density
//! `|E(H)| / |V(H)|`. Each probe `p/q` is decided by one max-flow on the
//! edge/vertex closure network with integer capacities `q` (source to edge)
//! and `p` (vertex to sink): some `H` beats the probe iff the cut is below
//! `q·m`. Two distinct densities of subgraphs on at most `n` vertices differ
//! by at least `1/(n(n-1))`, so the search stops once the bracket is
//! narrower than that and the best density found so far is the maximum.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::flow::{FlowNetwork, INF};
use crate::{Error, Graph, Rational, Result};

/// Largest vertex count accepted by [`mad_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 20;

type Wide = Ratio<i128>;

/// Exact maximum average degree together with a subgraph attaining it.
///
/// Among all densest vertex sets the witness is one of minimum size, and the
/// lexicographically smallest sorted vertex list among those.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityResult {
    pub mad: Rational,
    pub witness: Vec<usize>,
}

pub fn mad_exact(g: &Graph) -> Result<DensityResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::input("maximum average degree of the empty graph"));
    }
    if g.size() == 0 {
        return Ok(DensityResult {
            mad: Rational::zero(),
            witness: vec![0],
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut lo = Wide::new(edges.len() as i128, n as i128);
    let mut hi = Wide::new(g.max_degree().unwrap_or(0) as i128, 2);
    let separation = Wide::new(1, (n * (n - 1)).max(1) as i128);
    while hi - lo >= separation {
        let mid = (lo + hi) / 2;
        match denser_than(g, &edges, mid) {
            Some(set) => lo = Wide::new(g.induced_size(&set) as i128, set.len() as i128),
            None => hi = mid,
        }
    }
    debug_assert!(denser_than(g, &edges, lo).is_none());
    let witness = smallest_densest_set(g, &edges, lo);
    let mad = lo * 2;
    Ok(DensityResult {
        mad: Rational::new(
            mad.numer().to_i64().expect("density fits in i64"),
            mad.denom().to_i64().expect("density fits in i64"),
        ),
        witness,
    })
}

/// Builds the closure network for density `lambda` and returns the minimal
/// maximiser of `|E(S)| - lambda|S|` (optionally forced to contain a vertex)
/// together with the scaled optimum value.
fn closure_cut(
    g: &Graph,
    edges: &[(usize, usize)],
    lambda: Wide,
    forced: Option<usize>,
) -> (i128, Vec<usize>) {
    let n = g.order();
    let m = edges.len();
    let (p, q) = (*lambda.numer(), *lambda.denom());
    let source = m + n;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, &(u, v)) in edges.iter().enumerate() {
        net.add_edge(source, i, q);
        net.add_edge(i, m + u, INF);
        net.add_edge(i, m + v, INF);
    }
    for v in 0..n {
        net.add_edge(m + v, sink, p);
    }
    if let Some(v) = forced {
        net.add_edge(source, m + v, INF);
    }
    let cut = net.max_flow(source, sink);
    let side = net.source_side(source);
    let set: Vec<usize> = (0..n).filter(|&v| side[m + v]).collect();
    // the forced vertex is always on the source side, so its edge is never cut
    (q * m as i128 - cut, set)
}

fn denser_than(g: &Graph, edges: &[(usize, usize)], lambda: Wide) -> Option<Vec<usize>> {
    let (value, set) = closure_cut(g, edges, lambda, None);
    (value > 0 && !set.is_empty()).then_some(set)
}

fn smallest_densest_set(g: &Graph, edges: &[(usize, usize)], density: Wide) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for v in 0..g.order() {
        let (value, set) = closure_cut(g, edges, density, Some(v));
        if value != 0 {
            continue;
        }
        best = Some(match best {
            Some(b) if (b.len(), &b) <= (set.len(), &set) => b,
            _ => set,
        });
    }
    best.expect("a densest set exists")
}

/// Exhaustive maximum average degree, for validation only.
pub fn mad_bruteforce(g: &Graph) -> Result<DensityResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::input("maximum average degree of the empty graph"));
    }
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::Scale(format!(
            "brute-force density is limited to {BRUTEFORCE_LIMIT} vertices, got {n}"
        )));
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full = 1usize << n;
    let mut inside = vec![0u16; full];
    let mut best_mask = 1usize;
    let mut best = (0i64, 1i64);
    for set in 1..full {
        let low = set.trailing_zeros() as usize;
        let rest = set & (set - 1);
        inside[set] = inside[rest] + (masks[low] & rest as u32).count_ones() as u16;
        let (e, k) = (inside[set] as i64, set.count_ones() as i64);
        // compare e/k with best.0/best.1
        let lhs = e * best.1;
        let rhs = best.0 * k;
        let better = lhs > rhs
            || (lhs == rhs && (k < best.1 || (k == best.1 && lex_less(set, best_mask))));
        if better {
            best = (e, k);
            best_mask = set;
        }
    }
    Ok(DensityResult {
        mad: Rational::new(2 * best.0, best.1),
        witness: (0..n).filter(|&v| best_mask >> v & 1 == 1).collect(),
    })
}

/// Lexicographic order of the sorted member lists of two equal-size sets.
fn lex_less(a: usize, b: usize) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    // the smallest differing element belongs to the lexicographically smaller list
    let low = diff.trailing_zeros();
    a >> low & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn k2n(k: usize) -> Graph {
        let mut edges = Vec::new();
        for leaf in 2..k + 2 {
            edges.push((0, leaf));
            edges.push((1, leaf));
        }
        Graph::new(k + 2, &edges).unwrap()
    }

    #[test]
    fn k4_is_three() {
        let r = mad_exact(&complete(4)).unwrap();
        assert_eq!(r.mad, Rational::from_integer(3));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
    }

    #[test]
    fn k2_10() {
        let r = mad_exact(&k2n(10)).unwrap();
        assert_eq!(r.mad, Rational::new(10, 3));
        assert_eq!(r.witness, (0..12).collect::<Vec<_>>());
        assert_eq!(mad_bruteforce(&k2n(10)).unwrap(), r);
    }

    #[test]
    fn single_edge_and_k4_minus_edge() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(mad_bruteforce(&k2).unwrap().mad, Rational::from_integer(1));
        let k4e = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let brute = mad_bruteforce(&k4e).unwrap();
        assert_eq!(brute.mad, Rational::new(5, 2));
        assert_eq!(brute.witness, vec![0, 1, 2, 3]);
        assert_eq!(mad_exact(&k4e).unwrap(), brute);
    }

    #[test]
    fn edgeless_and_empty() {
        let r = mad_exact(&Graph::empty(3)).unwrap();
        assert_eq!(r.mad, Rational::zero());
        assert_eq!(r.witness, vec![0]);
        assert!(mad_exact(&Graph::empty(0)).is_err());
        assert!(matches!(mad_bruteforce(&Graph::empty(21)), Err(Error::Scale(_))));
    }

    #[test]
    fn two_components_prefers_smaller_then_lexicographic() {
        // K4 on 0..4, K4 on 4..8, and a triangle 8..11
        let mut edges = Vec::new();
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    edges.push((base + u, base + v));
                }
            }
        }
        edges.extend([(8, 9), (9, 10), (8, 10)]);
        let g = Graph::new(11, &edges).unwrap();
        let r = mad_exact(&g).unwrap();
        assert_eq!(r.mad, Rational::from_integer(3));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        assert_eq!(mad_bruteforce(&g).unwrap(), r);
    }

    #[test]
    fn dense_core_with_pendant_path() {
        // K5 with a long tail: the witness drops the tail
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges.extend([(4, 5), (5, 6), (6, 7)]);
        let g = Graph::new(8, &edges).unwrap();
        let r = mad_exact(&g).unwrap();
        assert_eq!(r.mad, Rational::from_integer(4));
        assert_eq!(r.witness, vec![0, 1, 2, 3, 4]);
    }
}
