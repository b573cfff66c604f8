//! Theorem specs: text format, built-in catalog, instance
//! verification and random corpora.

mod catalog;
mod corpus;
mod dsl;
mod verify;

pub use catalog::{builtin, builtin_names, builtin_text, resolve};
pub use corpus::{default_profile, gen_corpus, BaseFamily, CorpusProfile, PlaneOp};
pub use dsl::{parse_pattern, parse_theorem_spec, render_theorem_spec};
pub use verify::{check_hypotheses, verify_theorem, HypothesisCheck, Instance, Verdict};

use crate::{Pattern, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDegree {
    Exactly(usize),
    AtLeast(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Hypotheses {
    pub plane: bool,
    pub triangle_free_npm: bool,
    pub min_degree: Option<MinDegree>,
    /// Strict upper bound on the average degree.
    pub avg_below: Option<Rational>,
    /// Strict upper bound on the maximum average degree.
    pub mad_below: Option<Rational>,
    pub girth_at_least: Option<usize>,
    pub face_size_at_least: Option<usize>,
    pub forbidden: Vec<Pattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremSpec {
    pub name: String,
    pub hypotheses: Hypotheses,
    /// Unavoidable configurations in their listed order.
    pub conclusions: Vec<(String, Pattern)>,
    /// Name of the discharging rule set replaying the proof, if any.
    pub rules: Option<String>,
}
