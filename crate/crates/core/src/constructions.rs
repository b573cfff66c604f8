//! Base graphs, small factor finders, sharpness constructions and the
//! optimality audit.

use std::fmt::{self, Write as _};


use crate::patterns::find_pattern;
use crate::theorems::{check_hypotheses, TheoremSpec};
use crate::{Error, Graph, Instance, PlaneGraph, Rational, Result};

/// Largest vertex count accepted by [`find_factor`].
pub const FACTOR_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseGraph {
    /// Complete graph `K_n`.
    Complete(usize),
    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// Cartesian product `C_k × C_l`; vertex `(i, j)` has id `i·l + j`.
    CycleProduct(usize, usize),
    Icosahedron,
    Dodecahedron,
    Cube,
    /// Outer cycle `0..5`, spokes `i, i+5`, inner pentagram.
    Petersen,
    /// Vertex `i` is joined to `i ± o (mod n)` for each offset `o`.
    Circulant(usize, Vec<usize>),
}

pub fn base_graph(base: &BaseGraph) -> Result<Graph> {
    match base {
        BaseGraph::Complete(n) => {
            if *n < 3 {
                return Err(Error::input("complete base graphs need n >= 3"));
            }
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    edges.push((u, v));
                }
            }
            Graph::new(*n, &edges)
        }
        BaseGraph::CompleteBipartite(a, b) => {
            if *a == 0 || *b == 0 {
                return Err(Error::input("complete bipartite parts must be nonempty"));
            }
            let edges: Vec<_> = (0..*a).flat_map(|u| (*a..a + b).map(move |v| (u, v))).collect();
            Graph::new(a + b, &edges)
        }
        BaseGraph::CycleProduct(k, l) => {
            if *k < 3 || *l < 3 {
                return Err(Error::input("cycle product factors need length >= 3"));
            }
            let id = |i: usize, j: usize| (i % k) * l + j % l;
            let mut edges = Vec::new();
            for i in 0..*k {
                for j in 0..*l {
                    edges.push((id(i, j), id(i + 1, j)));
                    edges.push((id(i, j), id(i, j + 1)));
                }
            }
            Graph::new(k * l, &edges)
        }
        BaseGraph::Icosahedron => PlaneGraph::icosahedron().to_graph(),
        BaseGraph::Dodecahedron => PlaneGraph::dodecahedron().to_graph(),
        BaseGraph::Cube => PlaneGraph::cube().to_graph(),
        BaseGraph::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            Graph::new(10, &edges)
        }
        BaseGraph::Circulant(n, offsets) => {
            if *n < 3 {
                return Err(Error::input("circulant graphs need n >= 3"));
            }
            let mut seen = Vec::new();
            for &o in offsets {
                let r = o % n;
                if r == 0 || seen.contains(&r) {
                    return Err(Error::input("circulant offsets must be nonzero and distinct mod n"));
                }
                seen.push(r);
            }
            let edges: Vec<_> = (0..*n)
                .flat_map(|i| seen.iter().map(move |&o| (i, (i + o) % n)))
                .collect();
            Graph::new(*n, &edges)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    PerfectMatching,
    TwoFactor,
    Proper3EdgeColoring,
}

/// A partition of all edges into classes. For a perfect matching or a
/// 2-factor the first class is the factor and the second holds the rest; a
/// 3-edge-coloring has one class per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    pub classes: Vec<Vec<(usize, usize)>>,
}

impl EdgePartition {
    pub fn class_of(&self, e: (usize, usize)) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&e))
    }
}

/// First factor of the requested kind in lexicographic backtracking order.
pub fn find_factor(g: &Graph, kind: FactorKind) -> Result<Option<EdgePartition>> {
    if g.order() > FACTOR_LIMIT {
        return Err(Error::Scale(format!(
            "factor search is limited to {FACTOR_LIMIT} vertices, got {}",
            g.order()
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let split = |chosen: &[bool]| {
        let (inside, outside): (Vec<_>, Vec<_>) = edges.iter().zip(chosen).partition(|(_, &c)| c);
        EdgePartition {
            classes: vec![
                inside.into_iter().map(|(e, _)| *e).collect(),
                outside.into_iter().map(|(e, _)| *e).collect(),
            ],
        }
    };
    Ok(match kind {
        FactorKind::PerfectMatching => {
            let mut mate = vec![usize::MAX; g.order()];
            match_from(g, &mut mate).then(|| {
                let chosen: Vec<bool> = edges.iter().map(|&(u, v)| mate[u] == v).collect();
                split(&chosen)
            })
        }
        FactorKind::TwoFactor => {
            let mut chosen = vec![false; edges.len()];
            let mut deg = vec![0usize; g.order()];
            let mut left: Vec<usize> = g.degrees();
            two_factor_from(&edges, 0, &mut chosen, &mut deg, &mut left).then(|| split(&chosen))
        }
        FactorKind::Proper3EdgeColoring => {
            if g.degrees().iter().any(|&d| d != 3) {
                return Err(Error::input("3-edge-coloring needs a 3-regular graph"));
            }
            let mut color = vec![usize::MAX; edges.len()];
            let incident: Vec<Vec<usize>> = (0..g.order())
                .map(|v| (0..edges.len()).filter(|&i| edges[i].0 == v || edges[i].1 == v).collect())
                .collect();
            color_from(&edges, &incident, 0, &mut color).then(|| EdgePartition {
                classes: (0..3)
                    .map(|c| (0..edges.len()).filter(|&i| color[i] == c).map(|i| edges[i]).collect())
                    .collect(),
            })
        }
    })
}

fn match_from(g: &Graph, mate: &mut [usize]) -> bool {
    let Some(u) = (0..g.order()).find(|&u| mate[u] == usize::MAX) else {
        return true;
    };
    for &v in g.neighbors(u) {
        if mate[v] == usize::MAX {
            mate[u] = v;
            mate[v] = u;
            if match_from(g, mate) {
                return true;
            }
            mate[u] = usize::MAX;
            mate[v] = usize::MAX;
        }
    }
    false
}

/// `left[v]` counts the undecided edges at `v`.
fn two_factor_from(
    edges: &[(usize, usize)],
    i: usize,
    chosen: &mut [bool],
    deg: &mut [usize],
    left: &mut [usize],
) -> bool {
    if i == edges.len() {
        return deg.iter().all(|&d| d == 2);
    }
    let (u, v) = edges[i];
    left[u] -= 1;
    left[v] -= 1;
    if deg[u] < 2 && deg[v] < 2 {
        chosen[i] = true;
        deg[u] += 1;
        deg[v] += 1;
        if two_factor_from(edges, i + 1, chosen, deg, left) {
            return true;
        }
        chosen[i] = false;
        deg[u] -= 1;
        deg[v] -= 1;
    }
    if deg[u] + left[u] >= 2 && deg[v] + left[v] >= 2 && two_factor_from(edges, i + 1, chosen, deg, left) {
        return true;
    }
    left[u] += 1;
    left[v] += 1;
    false
}

fn color_from(edges: &[(usize, usize)], incident: &[Vec<usize>], i: usize, color: &mut [usize]) -> bool {
    if i == edges.len() {
        return true;
    }
    let (u, v) = edges[i];
    for c in 0..3 {
        let clash = incident[u].iter().chain(&incident[v]).any(|&j| color[j] == c);
        if !clash {
            color[i] = c;
            if color_from(edges, incident, i + 1, color) {
                return true;
            }
            color[i] = usize::MAX;
        }
    }
    false
}

/// How many vertices a recipe inserts on each edge of its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InsertionPlan {
    Uniform(usize),
    /// First perfect matching gets `on`, the remaining edges `off`.
    Matching { on: usize, off: usize },
    /// First 2-factor gets `on`, the remaining edges `off`.
    TwoFactor { on: usize, off: usize },
    /// Counts per color class of the first proper 3-edge-coloring.
    Coloring([usize; 3]),
    /// On `C_k × C_l`: `long_even` on edges `(i, j)(i+1, j)` with `i` even,
    /// `long_odd` on those with `i` odd, `short` on edges `(i, j)(i, j+1)`.
    ProductDirections { long_even: usize, long_odd: usize, short: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub name: &'static str,
    pub base: BaseGraph,
    pub plan: InsertionPlan,
    pub expected_avg: Rational,
    /// Conclusion the construction is built to exhibit.
    pub target: &'static str,
    /// Theorems whose unavoidable sets the construction is checked against.
    pub theorems: &'static [&'static str],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sharpness {
    pub graph: Graph,
    pub expected_avg: Rational,
    pub target: &'static str,
}

fn two_plus(n: i64, d: i64) -> Rational {
    Rational::from_integer(2) + Rational::new(n, d)
}

/// The built-in sharpness constructions.
pub fn recipes() -> Vec<Recipe> {
    use BaseGraph::*;
    use InsertionPlan::*;
    let items45: &'static [&'static str] = &["madthm4", "madthm5"];
    let c43 = || CycleProduct(4, 3);
    vec![
        Recipe {
            name: "path-2232",
            base: Complete(4),
            plan: Coloring([2, 1, 0]),
            expected_avg: two_plus(2, 5),
            target: "(2,2,3,2)-path",
            theorems: &["madthm2"],
        },
        Recipe {
            name: "star-3222",
            base: Complete(4),
            plan: Uniform(1),
            expected_avg: two_plus(2, 5),
            target: "(3;2,2,2)-star",
            theorems: &["madthm2"],
        },
        Recipe {
            name: "path-223",
            base: Complete(4),
            plan: Matching { on: 2, off: 0 },
            expected_avg: two_plus(1, 2),
            target: "(2,2,3)-path",
            theorems: &["madthm3", "madthm4", "madthm5"],
        },
        Recipe {
            name: "star-3225",
            base: Complete(4),
            plan: Matching { on: 0, off: 1 },
            expected_avg: two_plus(1, 2),
            target: "(3;2,2,5-)-star",
            theorems: &["madthm3"],
        },
        Recipe {
            name: "path-232",
            base: Complete(4),
            plan: Matching { on: 0, off: 1 },
            expected_avg: two_plus(1, 2),
            target: "(2,3,2)-path",
            theorems: items45,
        },
        Recipe {
            name: "fig-a",
            base: Complete(4),
            plan: Matching { on: 2, off: 1 },
            expected_avg: two_plus(1, 3),
            target: "fig-a",
            theorems: &["madthm1"],
        },
        Recipe {
            name: "fig-b",
            base: Complete(4),
            plan: Matching { on: 0, off: 2 },
            expected_avg: two_plus(1, 3),
            target: "fig-b",
            theorems: &["madthm1"],
        },
        Recipe {
            name: "fig-c",
            base: c43(),
            plan: Matching { on: 1, off: 2 },
            expected_avg: two_plus(4, 9),
            target: "fig-c",
            theorems: &["madthm2"],
        },
        Recipe {
            name: "fig-d",
            base: c43(),
            plan: TwoFactor { on: 2, off: 1 },
            expected_avg: two_plus(1, 2),
            target: "fig-d",
            theorems: &["madthm3"],
        },
        Recipe {
            name: "fig-e",
            base: c43(),
            plan: Matching { on: 0, off: 2 },
            expected_avg: two_plus(1, 2),
            target: "fig-e",
            theorems: &["madthm3"],
        },
        Recipe {
            name: "fig-f",
            base: c43(),
            plan: Matching { on: 2, off: 1 },
            expected_avg: two_plus(4, 7),
            target: "fig-f",
            theorems: items45,
        },
        Recipe {
            name: "fig-g",
            base: c43(),
            plan: ProductDirections { long_even: 1, long_odd: 0, short: 2 },
            expected_avg: two_plus(4, 7),
            target: "fig-g",
            theorems: items45,
        },
        Recipe {
            name: "fig-h",
            base: Complete(6),
            plan: Matching { on: 1, off: 2 },
            expected_avg: two_plus(6, 11),
            target: "fig-h",
            theorems: &["madthm3"],
        },
        Recipe {
            name: "fig-i",
            base: Complete(6),
            plan: Matching { on: 0, off: 2 },
            expected_avg: two_plus(3, 5),
            target: "fig-i",
            theorems: items45,
        },
        Recipe {
            name: "fig-j",
            base: Complete(6),
            plan: TwoFactor { on: 1, off: 2 },
            expected_avg: two_plus(3, 5),
            target: "fig-j",
            theorems: items45,
        },
        Recipe {
            name: "fig-k",
            base: Circulant(8, vec![1, 2, 3]),
            plan: Matching { on: 1, off: 2 },
            expected_avg: two_plus(8, 13),
            target: "fig-k",
            theorems: items45,
        },
        Recipe {
            name: "fig-l",
            base: Complete(8),
            plan: Uniform(2),
            expected_avg: two_plus(5, 8),
            target: "fig-l",
            theorems: &["madthm5"],
        },
        Recipe {
            name: "G1",
            base: Complete(5),
            plan: Uniform(3),
            expected_avg: Rational::new(16, 7),
            target: "(2,2,2)-path",
            theorems: &["madthm1"],
        },
        Recipe {
            name: "G2",
            base: Complete(9),
            plan: Uniform(3),
            expected_avg: Rational::new(32, 13),
            target: "(2,2,2)-path",
            theorems: &["madthm2", "madthm3", "madthm4", "madthm5"],
        },
        Recipe {
            name: "remark-8reg",
            base: Complete(9),
            plan: Uniform(2),
            expected_avg: two_plus(2, 3),
            target: "fig-l",
            theorems: &[],
        },
        Recipe {
            name: "icosa-sub2",
            base: Icosahedron,
            plan: Uniform(2),
            expected_avg: Rational::new(5, 2),
            target: "(2,2,13-,2)-path",
            theorems: &["mad14_5"],
        },
        Recipe {
            name: "p22inf-k11",
            base: Complete(11),
            plan: Uniform(2),
            expected_avg: Rational::new(30, 11),
            target: "(2,2,*)-path",
            theorems: &["mad10_3"],
        },
    ]
}

pub fn recipe(name: &str) -> Result<Recipe> {
    recipes()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::input(format!("unknown recipe `{name}`")))
}

/// Per-edge insertion counts for a plan on a base graph.
pub fn insertion_counts(g: &Graph, base: &BaseGraph, plan: &InsertionPlan) -> Result<Vec<((usize, usize), usize)>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let by_class = |kind: FactorKind, counts: &[usize]| -> Result<Vec<((usize, usize), usize)>> {
        let part = find_factor(g, kind)?
            .ok_or_else(|| Error::Infeasible(format!("base graph has no {kind:?}")))?;
        Ok(edges
            .iter()
            .map(|&e| (e, counts[part.class_of(e).expect("classes cover all edges")]))
            .collect())
    };
    match plan {
        InsertionPlan::Uniform(t) => Ok(edges.iter().map(|&e| (e, *t)).collect()),
        InsertionPlan::Matching { on, off } => by_class(FactorKind::PerfectMatching, &[*on, *off]),
        InsertionPlan::TwoFactor { on, off } => by_class(FactorKind::TwoFactor, &[*on, *off]),
        InsertionPlan::Coloring(counts) => by_class(FactorKind::Proper3EdgeColoring, counts),
        InsertionPlan::ProductDirections { long_even, long_odd, short } => {
            let BaseGraph::CycleProduct(k, l) = *base else {
                return Err(Error::input("direction plans need a cycle product base"));
            };
            if k % 2 != 0 {
                return Err(Error::input("direction plans need an even first cycle"));
            }
            Ok(edges
                .iter()
                .map(|&(u, v)| {
                    let (iu, iv) = (u / l, v / l);
                    let t = if iu == iv {
                        *short
                    } else {
                        // lower end of the long edge along C_k
                        let low = if (iu + 1) % k == iv { iu } else { iv };
                        if low % 2 == 0 { *long_even } else { *long_odd }
                    };
                    ((u, v), t)
                })
                .collect())
        }
    }
}

pub fn build_recipe(r: &Recipe) -> Result<Sharpness> {
    let base = base_graph(&r.base)?;
    let plan = insertion_counts(&base, &r.base, &r.plan)?;
    Ok(Sharpness {
        graph: base.subdivide_many(&plan)?,
        expected_avg: r.expected_avg,
        target: r.target,
    })
}

pub fn build_sharpness(name: &str) -> Result<Sharpness> {
    build_recipe(&recipe(name)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditStatus {
    Pass,
    Fail(Vec<String>),
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub conclusion: String,
    pub status: AuditStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditVerdict {
    Optimal,
    NotOptimal,
    Incomplete,
}

impl fmt::Display for AuditVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditVerdict::Optimal => "optimal",
            AuditVerdict::NotOptimal => "not optimal",
            AuditVerdict::Incomplete => "incomplete",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub theorem: String,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn verdict(&self) -> AuditVerdict {
        if self.entries.iter().any(|e| matches!(e.status, AuditStatus::Fail(_))) {
            AuditVerdict::NotOptimal
        } else if self.entries.iter().any(|e| e.status == AuditStatus::Missing) {
            AuditVerdict::Incomplete
        } else {
            AuditVerdict::Optimal
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("audit {}\n", self.theorem);
        for e in &self.entries {
            match &e.status {
                AuditStatus::Pass => writeln!(out, "{} pass", e.conclusion),
                AuditStatus::Missing => writeln!(out, "{} missing witness", e.conclusion),
                AuditStatus::Fail(reasons) => writeln!(out, "{} fail: {}", e.conclusion, reasons.join("; ")),
            }
            .unwrap();
        }
        writeln!(out, "verdict {}", self.verdict()).unwrap();
        out
    }
}

/// Checks that each witness meets the hypotheses and contains its own
/// conclusion and no other conclusion of the theorem.
pub fn audit_optimality(spec: &TheoremSpec, witnesses: &[(String, Graph)]) -> AuditReport {
    let entries = spec
        .conclusions
        .iter()
        .map(|(name, _)| {
            let Some((_, g)) = witnesses.iter().find(|(n, _)| n == name) else {
                return AuditEntry { conclusion: name.clone(), status: AuditStatus::Missing };
            };
            AuditEntry { conclusion: name.clone(), status: audit_one(spec, name, g) }
        })
        .collect();
    AuditReport { theorem: spec.name.clone(), entries }
}

fn audit_one(spec: &TheoremSpec, own: &str, g: &Graph) -> AuditStatus {
    let mut reasons = Vec::new();
    match check_hypotheses(&Instance::Graph(g.clone()), spec) {
        Ok(check) if check.holds() => {}
        Ok(check) => reasons.push(format!("hypotheses not met: {}", check.failures.join(", "))),
        Err(e) => reasons.push(e.to_string()),
    }
    for (name, pattern) in &spec.conclusions {
        let found = find_pattern(g, pattern).is_some();
        if name == own && !found {
            reasons.push(format!("does not contain {name}"));
        } else if name != own && found {
            reasons.push(format!("also contains {name}"));
        }
    }
    if reasons.is_empty() {
        AuditStatus::Pass
    } else {
        AuditStatus::Fail(reasons)
    }
}

/// Built-in optimality witnesses for a theorem, keyed by conclusion name.
pub fn builtin_witnesses(theorem: &str) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for r in recipes().iter().filter(|r| r.theorems.contains(&theorem)) {
        if !out.iter().any(|(n, _): &(String, Graph)| n == r.target) {
            out.push((r.target.to_string(), build_recipe(r)?.graph));
        }
    }
    if theorem == "mad10_3" {
        out.push(("(2,9-,2)-path".into(), base_graph(&BaseGraph::CompleteBipartite(2, 9))?));
        out.push(("(3,3,3)-path".into(), base_graph(&BaseGraph::Petersen)?));
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_graphs() {
        let k4 = base_graph(&BaseGraph::Complete(4)).unwrap();
        assert_eq!((k4.order(), k4.size()), (4, 6));
        let c43 = base_graph(&BaseGraph::CycleProduct(4, 3)).unwrap();
        assert_eq!(c43.order(), 12);
        assert!(c43.degrees().iter().all(|&d| d == 4));
        let ico = base_graph(&BaseGraph::Icosahedron).unwrap();
        assert_eq!((ico.order(), ico.size()), (12, 30));
        let pet = base_graph(&BaseGraph::Petersen).unwrap();
        assert_eq!((pet.size(), pet.girth()), (15, Some(5)));
        let circ = base_graph(&BaseGraph::Circulant(8, vec![1, 2, 3])).unwrap();
        assert!(circ.degrees().iter().all(|&d| d == 6));
        assert!(base_graph(&BaseGraph::Circulant(8, vec![1, 9])).is_err());
        assert!(base_graph(&BaseGraph::Circulant(8, vec![8])).is_err());
        assert!(base_graph(&BaseGraph::Complete(2)).is_err());
    }

    #[test]
    fn k4_factors() {
        let k4 = base_graph(&BaseGraph::Complete(4)).unwrap();
        let pm = find_factor(&k4, FactorKind::PerfectMatching).unwrap().unwrap();
        assert_eq!(pm.classes[0], vec![(0, 1), (2, 3)]);
        let col = find_factor(&k4, FactorKind::Proper3EdgeColoring).unwrap().unwrap();
        assert_eq!(col.classes.len(), 3);
        assert!(col.classes.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn petersen_two_factor() {
        let pet = base_graph(&BaseGraph::Petersen).unwrap();
        let f = find_factor(&pet, FactorKind::TwoFactor).unwrap().unwrap();
        let factor = Graph::new(10, &f.classes[0]).unwrap();
        assert!(factor.degrees().iter().all(|&d| d == 2));
        // Petersen is not Hamiltonian, so the factor splits into two 5-cycles
        assert!(!factor.is_connected());
        assert_eq!(factor.girth(), Some(5));
    }

    #[test]
    fn factor_absence_and_scale() {
        let k3 = base_graph(&BaseGraph::Complete(3)).unwrap();
        assert_eq!(find_factor(&k3, FactorKind::PerfectMatching).unwrap(), None);
        let k5 = base_graph(&BaseGraph::Complete(5)).unwrap();
        assert!(find_factor(&k5, FactorKind::Proper3EdgeColoring).is_err());
        let big = Graph::empty(25);
        assert!(matches!(find_factor(&big, FactorKind::TwoFactor), Err(Error::Scale(_))));
        // Petersen has chromatic index 4
        let pet = base_graph(&BaseGraph::Petersen).unwrap();
        assert_eq!(find_factor(&pet, FactorKind::Proper3EdgeColoring).unwrap(), None);
    }

    #[test]
    fn every_recipe_hits_its_average() {
        for r in recipes() {
            let built = build_recipe(&r).unwrap();
            assert_eq!(built.graph.average_degree().unwrap(), r.expected_avg, "{}", r.name);
        }
        assert!(build_sharpness("nope").is_err());
    }
}
