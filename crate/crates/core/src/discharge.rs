//! Mechanical execution of discharging rules on concrete instances.
//!
//! Every rule is evaluated against the initial configuration and all
//! transfers are applied at once. Rules only look at degrees, adjacency and
//! faces, never at intermediate charges; the one rule that forwards charge
//! (`FourFaceRelay`) recomputes the amount it forwards from degrees.

use std::fmt::{self, Write as _};

use num_traits::{One, Zero};

use crate::patterns::DegSpec;
use crate::{Error, Instance, Rational, Result};

/// Initial charges: `deg(v) - vertex_constant` for vertices and, for plane
/// instances, `size(f) - face_constant` for faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeSpec {
    pub vertex_constant: Rational,
    pub face_constant: Option<Rational>,
}

/// Condition on the receiving vertex of a [`Rule::VertexToNeighbor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Always,
    AdjacentTo(DegSpec),
    NotAdjacentTo(DegSpec),
    /// A 3-vertex adjacent to a 3-vertex and to a 5-vertex.
    Is3Star,
    /// A 3-vertex adjacent to exactly one 2-vertex.
    Is3Sub1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// Each 2-vertex receives the amount from each end of its maximal thread.
    ThreadEndpoint(Rational),
    VertexToNeighbor {
        sender: DegSpec,
        receiver: DegSpec,
        context: Predicate,
        amount: Rational,
    },
    /// A sender `w` gives `(deg(w) - 4) / deg(w)` to each neighbor.
    VertexProportionalToNeighbors { sender: DegSpec },
    /// A sender `w` gives `(deg(w) - 4) / deg(w)` to each incident face.
    VertexProportionalToFaces { sender: DegSpec },
    /// Each face of matching size gives the amount to each matching corner.
    FaceToVertex { face: DegSpec, vertex: DegSpec, amount: Rational },
    /// Each matching vertex gives the amount to each incident face of
    /// matching size.
    VertexToFace { vertex: DegSpec, face: DegSpec, amount: Rational },
    /// A 5-vertex adjacent to some 3*-vertex gives 1 to each such neighbor;
    /// any other 5-vertex gives 1/5 to every neighbor.
    FiveVertexStar,
    /// On a 4-face, the share a sender corner `w2` gave the face is passed on
    /// to its face neighbors `w1`, `w3` when one of them is a 3-vertex that is
    /// not 3*: split evenly among those of `w1`, `w3` that are 3-vertices.
    FourFaceRelay { sender: DegSpec },
}

/// A named charge setup with its rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub name: &'static str,
    pub charge: ChargeSpec,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DischargeReport {
    pub vertex_initial: Vec<Rational>,
    pub vertex_final: Vec<Rational>,
    pub face_initial: Vec<Rational>,
    pub face_final: Vec<Rational>,
    /// Elements with negative final charge, vertices first, by id.
    pub negatives: Vec<(Element, Rational)>,
    pub total_initial: Rational,
    pub total_final: Rational,
}

impl DischargeReport {
    pub fn render(&self) -> String {
        let mut out = String::from("element kind initial final\n");
        for (v, (a, b)) in self.vertex_initial.iter().zip(&self.vertex_final).enumerate() {
            writeln!(out, "v{v} vertex {a} {b}").unwrap();
        }
        for (i, (a, b)) in self.face_initial.iter().zip(&self.face_final).enumerate() {
            writeln!(out, "f{i} face {a} {b}").unwrap();
        }
        writeln!(out, "negatives {}", self.negatives.len()).unwrap();
        for (e, c) in &self.negatives {
            writeln!(out, "{e} {c}").unwrap();
        }
        writeln!(out, "total initial={} final={}", self.total_initial, self.total_final).unwrap();
        out
    }
}

/// `κ - (2 + 2ρ) - 2κρ`: the charge left on a κ-vertex that starts at
/// `κ - (2 + 2ρ)` and pays ρ to each of at most `2κ` nearby 2-vertices.
pub fn lemma_l_margin(kappa: usize, rho: Rational) -> Rational {
    let k = Rational::from_integer(kappa as i64);
    let two = Rational::from_integer(2);
    k - (two + two * rho) - two * k * rho
}

/// Degrees, neighbors and faces of an instance, as the rules see them.
struct View {
    degree: Vec<usize>,
    /// Neighbors with multiplicity, one entry per dart or edge.
    nbrs: Vec<Vec<usize>>,
    /// Corner vertices along each face boundary.
    faces: Option<Vec<Vec<usize>>>,
}

impl View {
    fn new(instance: &Instance) -> Result<View> {
        match instance {
            Instance::Graph(g) => Ok(View {
                degree: g.degrees(),
                nbrs: (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect(),
                faces: None,
            }),
            Instance::Plane(pg) => {
                let report = pg.faces()?;
                Ok(View {
                    degree: (0..pg.order()).map(|v| pg.degree(v)).collect(),
                    nbrs: (0..pg.order())
                        .map(|v| pg.rotation(v).iter().map(|&d| pg.head(d)).collect())
                        .collect(),
                    faces: Some(
                        report
                            .faces
                            .iter()
                            .map(|walk| walk.iter().map(|&d| pg.vertex(d)).collect())
                            .collect(),
                    ),
                })
            }
        }
    }

    fn faces(&self) -> Result<&[Vec<usize>]> {
        self.faces
            .as_deref()
            .ok_or_else(|| Error::input("face rules need a plane instance"))
    }

    fn holds(&self, p: Predicate, w: usize) -> bool {
        let others = || self.nbrs[w].iter().copied().filter(move |&x| x != w);
        match p {
            Predicate::Always => true,
            Predicate::AdjacentTo(s) => others().any(|x| s.matches(self.degree[x])),
            Predicate::NotAdjacentTo(s) => !others().any(|x| s.matches(self.degree[x])),
            Predicate::Is3Star => {
                self.degree[w] == 3
                    && others().any(|x| self.degree[x] == 3)
                    && others().any(|x| self.degree[x] == 5)
            }
            Predicate::Is3Sub1 => self.degree[w] == 3 && others().filter(|&x| self.degree[x] == 2).count() == 1,
        }
    }

    /// `(d - 4) / d` for a vertex of degree `d`.
    fn proportional(&self, v: usize) -> Rational {
        let d = self.degree[v] as i64;
        Rational::new(d - 4, d)
    }
}

/// Charge ledger indexed by vertices followed by faces.
struct Ledger {
    charge: Vec<Rational>,
    n: usize,
}

impl Ledger {
    fn vertex_to_vertex(&mut self, from: usize, to: usize, amount: Rational) {
        self.charge[from] -= amount;
        self.charge[to] += amount;
    }

    fn vertex_to_face(&mut self, from: usize, face: usize, amount: Rational) {
        self.charge[from] -= amount;
        self.charge[self.n + face] += amount;
    }

    fn face_to_vertex(&mut self, face: usize, to: usize, amount: Rational) {
        self.charge[self.n + face] -= amount;
        self.charge[to] += amount;
    }
}

pub fn run_discharge(instance: &Instance, spec: &ChargeSpec, rules: &[Rule]) -> Result<DischargeReport> {
    let view = View::new(instance)?;
    let n = view.degree.len();
    let vertex_initial: Vec<Rational> = view
        .degree
        .iter()
        .map(|&d| Rational::from_integer(d as i64) - spec.vertex_constant)
        .collect();
    let face_initial: Vec<Rational> = match (spec.face_constant, &view.faces) {
        (Some(c), Some(faces)) => faces
            .iter()
            .map(|f| Rational::from_integer(f.len() as i64) - c)
            .collect(),
        (Some(_), None) => return Err(Error::input("face charges need a plane instance")),
        (None, _) => Vec::new(),
    };
    let face_count = view.faces.as_ref().map_or(0, Vec::len);
    let mut ledger = Ledger {
        charge: vertex_initial
            .iter()
            .copied()
            .chain((0..face_count).map(|i| face_initial.get(i).copied().unwrap_or_else(Rational::zero)))
            .collect(),
        n,
    };
    for rule in rules {
        apply_rule(instance, &view, rule, &mut ledger)?;
    }
    let total_initial: Rational = ledger_sum(vertex_initial.iter().chain(&face_initial));
    let total_final: Rational = ledger_sum(ledger.charge.iter());
    assert_eq!(total_initial, total_final, "discharging must conserve charge");
    let vertex_final = ledger.charge[..n].to_vec();
    let face_final = if spec.face_constant.is_some() {
        ledger.charge[n..].to_vec()
    } else {
        if !ledger.charge[n..].iter().all(Zero::is_zero) {
            return Err(Error::input("face rules need a face charge constant"));
        }
        Vec::new()
    };
    let negatives = vertex_final
        .iter()
        .enumerate()
        .map(|(v, &c)| (Element::Vertex(v), c))
        .chain(face_final.iter().enumerate().map(|(i, &c)| (Element::Face(i), c)))
        .filter(|(_, c)| *c < Rational::zero())
        .collect();
    Ok(DischargeReport {
        vertex_initial,
        vertex_final,
        face_initial,
        face_final,
        negatives,
        total_initial,
        total_final,
    })
}

fn ledger_sum<'a>(items: impl Iterator<Item = &'a Rational>) -> Rational {
    items.fold(Rational::zero(), |acc, &x| acc + x)
}

fn apply_rule(instance: &Instance, view: &View, rule: &Rule, ledger: &mut Ledger) -> Result<()> {
    let n = view.degree.len();
    match rule {
        Rule::ThreadEndpoint(rho) => {
            let g = instance.graph()?;
            for t in g.maximal_threads()? {
                let Some((a, b)) = t.ends else {
                    return Err(Error::input(format!(
                        "closed thread through vertex {} cannot be discharged",
                        t.internal[0]
                    )));
                };
                for &x in &t.internal {
                    ledger.vertex_to_vertex(a, x, *rho);
                    ledger.vertex_to_vertex(b, x, *rho);
                }
            }
        }
        Rule::VertexToNeighbor { sender, receiver, context, amount } => {
            for v in (0..n).filter(|&v| sender.matches(view.degree[v])) {
                for &w in &view.nbrs[v] {
                    if w != v && receiver.matches(view.degree[w]) && view.holds(*context, w) {
                        ledger.vertex_to_vertex(v, w, *amount);
                    }
                }
            }
        }
        Rule::VertexProportionalToNeighbors { sender } => {
            for v in (0..n).filter(|&v| sender.matches(view.degree[v])) {
                let amount = view.proportional(v);
                for &w in &view.nbrs[v] {
                    ledger.vertex_to_vertex(v, w, amount);
                }
            }
        }
        Rule::VertexProportionalToFaces { sender } => {
            for (f, corners) in view.faces()?.iter().enumerate() {
                for &v in corners.iter().filter(|&&v| sender.matches(view.degree[v])) {
                    ledger.vertex_to_face(v, f, view.proportional(v));
                }
            }
        }
        Rule::FaceToVertex { face, vertex, amount } => {
            for (f, corners) in view.faces()?.iter().enumerate() {
                if face.matches(corners.len()) {
                    for &v in corners.iter().filter(|&&v| vertex.matches(view.degree[v])) {
                        ledger.face_to_vertex(f, v, *amount);
                    }
                }
            }
        }
        Rule::VertexToFace { vertex, face, amount } => {
            for (f, corners) in view.faces()?.iter().enumerate() {
                if face.matches(corners.len()) {
                    for &v in corners.iter().filter(|&&v| vertex.matches(view.degree[v])) {
                        ledger.vertex_to_face(v, f, *amount);
                    }
                }
            }
        }
        Rule::FiveVertexStar => {
            for v in (0..n).filter(|&v| view.degree[v] == 5) {
                let stars: Vec<usize> = view.nbrs[v]
                    .iter()
                    .copied()
                    .filter(|&w| w != v && view.holds(Predicate::Is3Star, w))
                    .collect();
                if stars.is_empty() {
                    for &w in &view.nbrs[v] {
                        ledger.vertex_to_vertex(v, w, Rational::new(1, 5));
                    }
                } else {
                    for w in stars {
                        ledger.vertex_to_vertex(v, w, Rational::one());
                    }
                }
            }
        }
        Rule::FourFaceRelay { sender } => {
            for (f, corners) in view.faces()?.iter().enumerate() {
                if corners.len() != 4 {
                    continue;
                }
                for i in 0..4 {
                    let w2 = corners[i];
                    if !sender.matches(view.degree[w2]) {
                        continue;
                    }
                    let (w1, w3) = (corners[(i + 3) % 4], corners[(i + 1) % 4]);
                    let plain_three = |x: usize| view.degree[x] == 3 && !view.holds(Predicate::Is3Star, x);
                    if !plain_three(w1) && !plain_three(w3) {
                        continue;
                    }
                    let takers: Vec<usize> = [w1, w3].into_iter().filter(|&x| view.degree[x] == 3).collect();
                    let share = view.proportional(w2) / Rational::from_integer(takers.len() as i64);
                    for x in takers {
                        ledger.face_to_vertex(f, x, share);
                    }
                }
            }
        }
    }
    Ok(())
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn vertex_only(c: Rational) -> ChargeSpec {
    ChargeSpec { vertex_constant: c, face_constant: None }
}

fn plane_fours() -> ChargeSpec {
    ChargeSpec {
        vertex_constant: Rational::from_integer(4),
        face_constant: Some(Rational::from_integer(4)),
    }
}

/// Charge `deg - (2 + 2ρ)`, threads paid at ρ, and optionally heavy vertices
/// paying `2ρ` to each adjacent 3⁺-vertex.
fn rho_bounded(name: &'static str, rho: Rational, heavy: Option<usize>) -> RuleSet {
    let mut rules = vec![Rule::ThreadEndpoint(rho)];
    if let Some(k) = heavy {
        rules.push(Rule::VertexToNeighbor {
            sender: DegSpec::AtLeast(k),
            receiver: DegSpec::AtLeast(3),
            context: Predicate::Always,
            amount: rho * 2,
        });
    }
    RuleSet {
        name,
        charge: vertex_only(Rational::from_integer(2) + rho * 2),
        rules,
    }
}

/// Names accepted by [`rule_set`].
pub const RULE_SETS: &[&str] = &[
    "madthm1",
    "madthm2",
    "madthm3",
    "madthm4",
    "madthm5",
    "mad14_5",
    "girth7",
    "mad3",
    "mad10_3",
    "delta3_avg4",
    "thmlast",
];

/// Built-in rule sets, one per theorem proof.
pub fn rule_set(name: &str) -> Option<RuleSet> {
    use DegSpec::*;
    let set = match name {
        "madthm1" => rho_bounded("madthm1", r(1, 5), Some(4)),
        "madthm2" => rho_bounded("madthm2", r(1, 4), None),
        "madthm3" => rho_bounded("madthm3", r(2, 7), Some(6)),
        "madthm4" => rho_bounded("madthm4", r(5, 16), Some(7)),
        "madthm5" => rho_bounded("madthm5", r(1, 3), Some(8)),
        "mad14_5" => RuleSet {
            name: "mad14_5",
            charge: vertex_only(r(14, 5)),
            rules: vec![
                Rule::ThreadEndpoint(r(2, 5)),
                Rule::VertexToNeighbor {
                    sender: AtLeast(4),
                    receiver: Exact(3),
                    context: Predicate::Always,
                    amount: r(1, 10),
                },
            ],
        },
        "girth7" => RuleSet {
            name: "girth7",
            charge: plane_fours(),
            rules: vec![
                Rule::FaceToVertex { face: Any, vertex: Exact(2), amount: r(1, 1) },
                Rule::FaceToVertex { face: Any, vertex: Exact(3), amount: r(1, 3) },
                Rule::VertexToFace { vertex: AtLeast(6), face: Any, amount: r(1, 3) },
            ],
        },
        "mad3" => RuleSet {
            name: "mad3",
            charge: vertex_only(r(3, 1)),
            rules: vec![
                Rule::ThreadEndpoint(r(1, 2)),
                Rule::VertexToNeighbor {
                    sender: Exact(4),
                    receiver: Exact(3),
                    context: Predicate::AdjacentTo(Exact(2)),
                    amount: r(1, 4),
                },
                Rule::VertexToNeighbor {
                    sender: Exact(5),
                    receiver: Exact(3),
                    context: Predicate::Always,
                    amount: r(1, 4),
                },
                Rule::VertexToNeighbor {
                    sender: Exact(6),
                    receiver: AtLeast(3),
                    context: Predicate::Always,
                    amount: r(1, 4),
                },
                Rule::VertexToNeighbor {
                    sender: AtLeast(7),
                    receiver: AtLeast(3),
                    context: Predicate::Always,
                    amount: r(1, 2),
                },
            ],
        },
        "mad10_3" => RuleSet {
            name: "mad10_3",
            charge: vertex_only(r(10, 3)),
            rules: vec![
                Rule::ThreadEndpoint(r(2, 3)),
                Rule::VertexToNeighbor {
                    sender: AtLeast(4),
                    receiver: Exact(3),
                    context: Predicate::NotAdjacentTo(Exact(2)),
                    amount: r(1, 6),
                },
                Rule::VertexToNeighbor {
                    sender: AtLeast(7),
                    receiver: Exact(3),
                    context: Predicate::Is3Sub1,
                    amount: r(1, 2),
                },
            ],
        },
        "delta3_avg4" => RuleSet {
            name: "delta3_avg4",
            charge: vertex_only(r(4, 1)),
            rules: vec![Rule::VertexProportionalToNeighbors { sender: AtLeast(4) }],
        },
        "thmlast" => RuleSet {
            name: "thmlast",
            charge: plane_fours(),
            rules: vec![
                Rule::VertexProportionalToFaces { sender: AtLeast(6) },
                Rule::FiveVertexStar,
                Rule::FaceToVertex { face: AtLeast(5), vertex: Exact(3), amount: r(1, 2) },
                Rule::FourFaceRelay { sender: AtLeast(6) },
            ],
        },
        _ => return None,
    };
    Some(set)
}
