//! Seeded random instance families for property checks.
//!
//! Abstract instances come from a random simple graph with a prescribed
//! degree sequence (pairing model with simplicity rejection), with a random
//! number of 2-vertices inserted on every edge. Plane instances start from a
//! fixed polyhedral embedding, get the same edge insertions, then random
//! chords and inner vertices.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_hypotheses, Instance, TheoremSpec};
use crate::{Error, Graph, PlaneGraph, Result};

/// Random-pairing restarts before a degree sequence is given up.
const PAIRING_RESTARTS: usize = 50;
/// Attempts per requested instance before the profile is declared infeasible.
const ATTEMPTS_PER_INSTANCE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneOp {
    /// Join two non-adjacent corners of a random face.
    Chord,
    /// Put a new vertex in a random face, joined to three or four corners.
    InnerVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseFamily {
    /// Random `degree`-regular simple graphs on `order` vertices.
    Regular { degree: usize, order: usize },
    /// Random simple graphs whose degrees are drawn from `choices` and whose
    /// order lies in `min_order..=max_order`.
    Degrees { choices: Vec<usize>, min_order: usize, max_order: usize },
    /// One of the given embeddings, followed by up to `max_ops` random
    /// operations drawn from `ops`.
    Plane { bases: Vec<PlaneGraph>, ops: Vec<PlaneOp>, max_ops: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusProfile {
    pub base: BaseFamily,
    /// Allowed numbers of 2-vertices inserted on each base edge.
    pub insertions: Vec<usize>,
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CorpusProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            BaseFamily::Regular { degree, order } => write!(f, "regular degree={degree} order={order}")?,
            BaseFamily::Degrees { choices, min_order, max_order } => {
                write!(f, "degrees choices={} order={min_order}..{max_order}", join(choices))?
            }
            BaseFamily::Plane { bases, ops, max_ops } => {
                let sizes: Vec<usize> = bases.iter().map(PlaneGraph::order).collect();
                let ops: Vec<&str> = ops
                    .iter()
                    .map(|op| match op {
                        PlaneOp::Chord => "chord",
                        PlaneOp::InnerVertex => "inner-vertex",
                    })
                    .collect();
                write!(f, "plane base-orders={} ops={} max-ops={max_ops}", join(&sizes), ops.join(","))?
            }
        }
        write!(f, " insertions={}", join(&self.insertions))
    }
}

/// Profile tuned so that a good share of instances meets the hypotheses of
/// the named built-in theorem.
pub fn default_profile(theorem: &str) -> Result<CorpusProfile> {
    let degrees = |choices: &[usize], insertions: &[usize]| CorpusProfile {
        base: BaseFamily::Degrees { choices: choices.to_vec(), min_order: 6, max_order: 12 },
        insertions: insertions.to_vec(),
    };
    Ok(match theorem {
        "madthm1" => degrees(&[3, 4, 5], &[1, 2, 3, 4]),
        "madthm2" => degrees(&[3, 4, 5, 6], &[1, 2, 3]),
        "madthm3" => degrees(&[3, 4, 5, 6], &[0, 1, 2, 3]),
        "madthm4" | "madthm5" => degrees(&[3, 4, 5, 6, 7, 8], &[0, 1, 2, 3]),
        "mad14_5" => degrees(&[3, 4, 5, 6], &[0, 1, 2]),
        "mad3" | "mad3_variant" => degrees(&[3, 4, 5, 6, 7, 8], &[0, 1, 2]),
        "mad10_3" => degrees(&[3, 4, 5, 6, 7, 8, 9], &[0, 0, 1, 2]),
        "delta3_avg4" => degrees(&[3, 3, 3, 4, 5, 6, 7, 8], &[0]),
        "girth7" => CorpusProfile {
            base: BaseFamily::Plane {
                bases: vec![
                    PlaneGraph::cube(),
                    PlaneGraph::icosahedron(),
                    PlaneGraph::dodecahedron(),
                    PlaneGraph::prism(5)?,
                    PlaneGraph::prism(7)?,
                    PlaneGraph::cycle(7)?,
                ],
                ops: vec![PlaneOp::Chord],
                max_ops: 2,
            },
            insertions: vec![0, 1, 2, 3, 4],
        },
        "thmlast" => CorpusProfile {
            base: BaseFamily::Plane {
                bases: vec![
                    PlaneGraph::cube(),
                    PlaneGraph::dodecahedron(),
                    PlaneGraph::prism(6)?,
                    PlaneGraph::prism(8)?,
                ],
                ops: vec![PlaneOp::Chord, PlaneOp::InnerVertex],
                max_ops: 4,
            },
            insertions: vec![0],
        },
        other => return Err(Error::input(format!("no corpus profile for `{other}`"))),
    })
}

/// Generates `count` instances meeting the hypotheses of `constraints`.
/// Instances failing them are discarded and regenerated; the output is a
/// pure function of the arguments.
pub fn gen_corpus(
    profile: &CorpusProfile,
    constraints: &TheoremSpec,
    seed: u64,
    count: usize,
) -> Result<Vec<Instance>> {
    if count == 0 {
        return Err(Error::input("corpus count must be at least 1"));
    }
    if profile.insertions.is_empty() {
        return Err(Error::input("corpus profile lists no insertion counts"));
    }
    match &profile.base {
        BaseFamily::Regular { degree, order } => {
            if degree * order % 2 == 1 || degree >= order {
                return Err(Error::input(format!("no {degree}-regular simple graph on {order} vertices")));
            }
        }
        BaseFamily::Degrees { choices, min_order, max_order } => {
            if choices.is_empty() || min_order > max_order || *max_order < 2 {
                return Err(Error::input("degree family needs choices and a nonempty order range"));
            }
        }
        BaseFamily::Plane { bases, .. } => {
            if bases.is_empty() {
                return Err(Error::input("plane family needs at least one base"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = ATTEMPTS_PER_INSTANCE * count;
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let Some(instance) = sample(profile, &mut rng)? else { continue };
        if check_hypotheses(&instance, constraints)?.holds() {
            out.push(instance);
        }
    }
    if out.len() < count {
        return Err(Error::Infeasible(format!(
            "only {} of {count} instances met the hypotheses of `{}` after {budget} attempts",
            out.len(),
            constraints.name
        )));
    }
    Ok(out)
}

fn sample(profile: &CorpusProfile, rng: &mut ChaCha8Rng) -> Result<Option<Instance>> {
    let degrees = match &profile.base {
        BaseFamily::Regular { degree, order } => vec![*degree; *order],
        BaseFamily::Degrees { choices, min_order, max_order } => {
            let n = rng.gen_range(*min_order..=*max_order);
            let seq: Vec<usize> = (0..n).map(|_| *choices.choose(rng).expect("choices nonempty")).collect();
            if seq.iter().sum::<usize>() % 2 == 1 || seq.iter().any(|&d| d >= n) {
                return Ok(None);
            }
            seq
        }
        BaseFamily::Plane { bases, ops, max_ops } => {
            let mut pg = bases.choose(rng).expect("bases nonempty").clone();
            let edges: Vec<usize> = (0..pg.dart_count()).filter(|&d| d < pg.twin(d)).collect();
            for d in edges {
                let t = *profile.insertions.choose(rng).expect("insertions nonempty");
                pg.subdivide_edge_times(d, t)?;
            }
            if !ops.is_empty() {
                for _ in 0..rng.gen_range(0..=*max_ops) {
                    let op = *ops.choose(rng).expect("ops nonempty");
                    apply_plane_op(&mut pg, op, rng)?;
                }
            }
            return Ok(Some(Instance::Plane(pg)));
        }
    };
    let Some(base) = random_simple_graph(&degrees, rng) else { return Ok(None) };
    let plan: Vec<((usize, usize), usize)> = base
        .edges()
        .map(|e| (e, *profile.insertions.choose(rng).expect("insertions nonempty")))
        .collect();
    Ok(Some(Instance::Graph(base.subdivide_many(&plan)?)))
}

/// Random simple graph with the given degrees: points are paired one random
/// admissible pair at a time, restarting when no admissible pair is found.
fn random_simple_graph(degrees: &[usize], rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = degrees.len();
    'restart: for _ in 0..PAIRING_RESTARTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degrees[v])).collect();
        let mut adj = vec![vec![false; n]; n];
        let mut edges = Vec::with_capacity(points.len() / 2);
        while !points.is_empty() {
            let admissible = |a: usize, b: usize, adj: &[Vec<bool>]| a != b && !adj[a][b];
            let mut chosen = None;
            for _ in 0..32 {
                let (i, j) = (rng.gen_range(0..points.len()), rng.gen_range(0..points.len()));
                if i != j && admissible(points[i], points[j], &adj) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                // fall back to a uniform choice among all admissible pairs
                let pairs: Vec<(usize, usize)> = (0..points.len())
                    .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| admissible(points[i], points[j], &adj))
                    .collect();
                chosen = pairs.choose(rng).copied();
            }
            let Some((i, j)) = chosen else { continue 'restart };
            let (a, b) = (points[i], points[j]);
            adj[a][b] = true;
            adj[b][a] = true;
            edges.push((a.min(b), a.max(b)));
            let (hi, lo) = (i.max(j), i.min(j));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        return Graph::new(n, &edges).ok();
    }
    None
}

fn apply_plane_op(pg: &mut PlaneGraph, op: PlaneOp, rng: &mut ChaCha8Rng) -> Result<()> {
    let report = pg.faces()?;
    let walk = report.faces.choose(rng).expect("an embedding has faces").clone();
    let s = walk.len();
    match op {
        PlaneOp::Chord => {
            if s < 4 {
                return Ok(());
            }
            let i = rng.gen_range(0..s);
            let gap = rng.gen_range(2..=s - 2);
            let (d1, d2) = (walk[i], walk[(i + gap) % s]);
            if pg.vertex(d1) != pg.vertex(d2) {
                pg.add_chord(d1, d2)?;
            }
        }
        PlaneOp::InnerVertex => {
            let k = rng.gen_range(3..=4);
            if s < 2 * k {
                return Ok(());
            }
            let mut picks: Vec<usize> = rand::seq::index::sample(rng, s, k).into_vec();
            picks.sort_unstable();
            let spaced = (0..k).all(|i| (picks[(i + 1) % k] + s - picks[i]) % s >= 2);
            let corners: Vec<usize> = picks.iter().map(|&i| walk[i]).collect();
            let mut verts: Vec<usize> = corners.iter().map(|&d| pg.vertex(d)).collect();
            verts.sort_unstable();
            verts.dedup();
            if spaced && verts.len() == k {
                pg.add_vertex_in_face(&corners)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::builtin;
    use crate::Rational;

    #[test]
    fn regular_cubic_family_meets_mad3() {
        let profile = CorpusProfile {
            base: BaseFamily::Regular { degree: 3, order: 8 },
            insertions: vec![1, 2],
        };
        let spec = builtin("mad3").unwrap();
        let corpus = gen_corpus(&profile, &spec, 7, 5).unwrap();
        assert_eq!(corpus.len(), 5);
        for inst in &corpus {
            let g = inst.graph().unwrap();
            assert_eq!(g.min_degree(), Some(2));
            assert!(g.average_degree().unwrap() < Rational::from_integer(3));
        }
        assert_eq!(gen_corpus(&profile, &spec, 7, 5).unwrap(), corpus);
    }

    #[test]
    fn fixed_insertion_forces_average() {
        let profile = CorpusProfile {
            base: BaseFamily::Regular { degree: 4, order: 9 },
            insertions: vec![3],
        };
        let spec = builtin("mad10_3").unwrap();
        for seed in 0..3 {
            for inst in gen_corpus(&profile, &spec, seed, 3).unwrap() {
                assert_eq!(inst.graph().unwrap().average_degree().unwrap(), Rational::new(16, 7));
            }
        }
    }

    #[test]
    fn bad_profiles() {
        let spec = builtin("mad3").unwrap();
        let p = CorpusProfile { base: BaseFamily::Regular { degree: 3, order: 8 }, insertions: vec![1] };
        assert!(gen_corpus(&p, &spec, 0, 0).is_err());
        let odd = CorpusProfile { base: BaseFamily::Regular { degree: 3, order: 7 }, insertions: vec![1] };
        assert!(gen_corpus(&odd, &spec, 0, 1).is_err());
        // no insertions keeps the minimum degree at 3, which mad3 excludes
        let none = CorpusProfile { base: BaseFamily::Regular { degree: 3, order: 8 }, insertions: vec![0] };
        assert!(matches!(gen_corpus(&none, &spec, 0, 1), Err(Error::Infeasible(_))));
    }

    #[test]
    fn plane_profiles_produce_valid_maps() {
        for name in ["girth7", "thmlast"] {
            let spec = builtin(name).unwrap();
            let corpus = gen_corpus(&default_profile(name).unwrap(), &spec, 11, 10).unwrap();
            assert!(corpus.iter().all(|i| matches!(i, Instance::Plane(_))));
        }
    }
}
