//! Hypothesis checking and verdicts on concrete instances.

use std::fmt;

use super::{MinDegree, TheoremSpec};
use crate::density::mad_exact;
use crate::patterns::find_pattern;
use crate::{Error, Graph, PlaneGraph, Result, Witness};

/// An abstract graph or a plane embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Plane(PlaneGraph),
}

impl Instance {
    /// The underlying simple graph; plane instances with loops or parallel
    /// edges have none.
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Instance::Graph(g) => Ok(g.clone()),
            Instance::Plane(pg) => pg.to_graph(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    /// One line per failed predicate, in spec order.
    pub failures: Vec<String>,
}

impl HypothesisCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Satisfied { conclusion: String, witness: Witness },
    Counterexample,
    HypothesesNotMet(Vec<String>),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Satisfied { conclusion, witness } => {
                let vs: Vec<String> = witness.vertices.iter().map(usize::to_string).collect();
                write!(f, "Satisfied: {conclusion} at [{}]", vs.join(","))
            }
            Verdict::Counterexample => f.write_str("Counterexample"),
            Verdict::HypothesesNotMet(reasons) => write!(f, "HypothesesNotMet: {}", reasons.join("; ")),
        }
    }
}

/// Evaluates every hypothesis of `spec` on `instance`.
///
/// Plane specs require a plane instance. Degree and pattern predicates on a
/// plane instance are evaluated on its underlying simple graph.
pub fn check_hypotheses(instance: &Instance, spec: &TheoremSpec) -> Result<HypothesisCheck> {
    let h = &spec.hypotheses;
    let mut failures = Vec::new();
    if h.plane {
        let Instance::Plane(pg) = instance else {
            return Err(Error::input(format!("theorem `{}` needs a plane instance", spec.name)));
        };
        match pg.stats() {
            Ok(stats) => {
                if h.triangle_free_npm {
                    if !stats.is_npm {
                        failures.push(format!(
                            "not a normal plane map (min degree {}, min face size {})",
                            stats.min_degree, stats.min_face_size
                        ));
                    }
                    if !stats.triangle_free_map {
                        failures.push("map has a triangle".to_string());
                    }
                }
                if let Some(k) = h.face_size_at_least {
                    if stats.min_face_size < k {
                        failures.push(format!("min face size {} < {k}", stats.min_face_size));
                    }
                }
            }
            Err(e) => failures.push(format!("faces unavailable: {e}")),
        }
    }
    let needs_graph = h.min_degree.is_some()
        || h.avg_below.is_some()
        || h.mad_below.is_some()
        || h.girth_at_least.is_some()
        || !h.forbidden.is_empty();
    if !needs_graph {
        return Ok(HypothesisCheck { failures });
    }
    let g = instance.graph()?;
    if g.order() == 0 {
        failures.push("graph has no vertices".to_string());
        return Ok(HypothesisCheck { failures });
    }
    let delta = g.min_degree().unwrap_or(0);
    match h.min_degree {
        Some(MinDegree::Exactly(k)) if delta != k => failures.push(format!("min degree {delta} != {k}")),
        Some(MinDegree::AtLeast(k)) if delta < k => failures.push(format!("min degree {delta} < {k}")),
        _ => {}
    }
    if let Some(bound) = h.avg_below {
        let avg = g.average_degree()?;
        if avg >= bound {
            failures.push(format!("average degree {avg} is not below {bound}"));
        }
    }
    if let Some(bound) = h.mad_below {
        let mad = mad_exact(&g)?.mad;
        if mad >= bound {
            failures.push(format!("mad {mad} is not below {bound}"));
        }
    }
    if let Some(k) = h.girth_at_least {
        if let Some(girth) = g.girth().filter(|&girth| girth < k) {
            failures.push(format!("girth {girth} < {k}"));
        }
    }
    for p in &h.forbidden {
        if let Some(w) = find_pattern(&g, p) {
            failures.push(format!("contains forbidden {p} at {:?}", w.vertices));
        }
    }
    Ok(HypothesisCheck { failures })
}

/// Checks hypotheses, then reports the first conclusion in listed order
/// that occurs in the instance.
pub fn verify_theorem(instance: &Instance, spec: &TheoremSpec) -> Result<Verdict> {
    let check = check_hypotheses(instance, spec)?;
    if !check.holds() {
        return Ok(Verdict::HypothesesNotMet(check.failures));
    }
    let g = instance.graph()?;
    for (name, p) in &spec.conclusions {
        if let Some(witness) = find_pattern(&g, p) {
            return Ok(Verdict::Satisfied { conclusion: name.clone(), witness });
        }
    }
    Ok(Verdict::Counterexample)
}
