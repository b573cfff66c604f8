//! `lightsub`: analysis, detection, construction, discharging, verification,
//! corpus generation and optimality audits from the command line.
//!
//! Exit codes: 0 success, 1 counterexample, negative charge or failed audit,
//! 2 usage or input error.

mod corpus_file;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lightsub::constructions::{audit_optimality, build_sharpness, builtin_witnesses, recipes, AuditVerdict};
use lightsub::density::mad_exact;
use lightsub::discharge::{rule_set, run_discharge};
use lightsub::patterns::{find_all, find_pattern};
use lightsub::theorems::{default_profile, gen_corpus, resolve, verify_theorem};
use lightsub::{Error, Graph, Instance, Pattern, PlaneGraph, Verdict};
use rayon::prelude::*;

use crate::corpus_file::{read_corpus, write_corpus, CorpusFile};

#[derive(Parser)]
#[command(name = "lightsub", version, about = "Light configurations in sparse graphs")]
struct Cli {
    /// Print only the verdict line.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InstanceArgs {
    /// Edge-list file: header `n m`, then one `u v` per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Rotation-system file.
    #[arg(long)]
    plane: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, size, degrees, girth and exact mad of an instance.
    Analyze {
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Search an instance for a pattern.
    Detect {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long)]
        pattern: String,
        /// List up to this many occurrences instead of the first one.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build a sharpness construction.
    Construct {
        #[arg(long)]
        recipe: String,
        /// Write the edge list here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a theorem's discharging rules on an instance.
    Discharge {
        /// Theorem file or built-in name.
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Check a theorem on one instance or on a corpus file.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, conflicts_with_all = ["corpus"])]
        graph: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["corpus", "graph"])]
        plane: Option<PathBuf>,
        /// Corpus file written by `gen`.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Generate a seeded corpus of instances meeting a theorem's hypotheses.
    Gen {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the built-in optimality witnesses of a theorem.
    Audit {
        #[arg(long)]
        theorem: String,
    },
}

/// Report text and exit code of a successful dispatch.
struct Outcome {
    report: String,
    quiet: String,
    code: u8,
}

impl Outcome {
    fn ok(report: String, quiet: String) -> Outcome {
        Outcome { report, quiet, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(out) => {
            print!("{}", if cli.quiet { &out.quiet } else { &out.report });
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load(graph: Option<&Path>, plane: Option<&Path>) -> Result<Instance, Error> {
    match (graph, plane) {
        (Some(path), None) => Ok(Instance::Graph(Graph::parse_edge_list(&read(path)?)?)),
        (None, Some(path)) => Ok(Instance::Plane(PlaneGraph::parse(&read(path)?)?)),
        _ => Err(Error::Input("give exactly one of --graph and --plane".into())),
    }
}

fn load_args(input: &InstanceArgs) -> Result<Instance, Error> {
    load(input.graph.as_deref(), input.plane.as_deref())
}

fn line(s: String) -> String {
    s + "\n"
}

fn dispatch(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Analyze { input } => analyze(&load_args(input)?),
        Command::Detect { input, pattern, limit } => detect(&load_args(input)?, pattern, *limit),
        Command::Construct { recipe, out } => construct(recipe, out.as_deref()),
        Command::Discharge { theorem, input } => discharge(theorem, &load_args(input)?),
        Command::Verify { theorem, graph, plane, corpus } => match corpus {
            Some(path) => verify_corpus(theorem, path),
            None => verify_one(theorem, &load(graph.as_deref(), plane.as_deref())?),
        },
        Command::Gen { theorem, seed, count, out } => generate(theorem, *seed, *count, out.as_deref()),
        Command::Audit { theorem } => audit(theorem),
    }
}

fn analyze(instance: &Instance) -> Result<Outcome, Error> {
    let g = instance.graph()?;
    let show = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    let avg = g.average_degree()?;
    let mad = mad_exact(&g)?.mad;
    let girth = g.girth().map_or_else(|| "inf".to_string(), |v| v.to_string());
    let mut report = format!(
        "n={} m={} avg={avg} girth={girth} δ={} Δ={} mad={mad}\n",
        g.order(),
        g.size(),
        show(g.min_degree()),
        show(g.max_degree()),
    );
    if let Instance::Plane(pg) = instance {
        let faces = pg.faces()?;
        let stats = pg.stats()?;
        let yes = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            report,
            "faces={} min_face={} npm={} triangle_free={}",
            faces.faces.len(),
            stats.min_face_size,
            yes(stats.is_npm),
            yes(stats.triangle_free_map)
        )
        .unwrap();
    }
    let quiet = report.lines().next().unwrap_or_default().to_string() + "\n";
    Ok(Outcome::ok(report, quiet))
}

fn points(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn detect(instance: &Instance, pattern: &str, limit: Option<usize>) -> Result<Outcome, Error> {
    let p: Pattern = pattern.parse()?;
    let g = instance.graph()?;
    let witnesses = match limit {
        Some(limit) => find_all(&g, &p, limit),
        None => find_pattern(&g, &p).into_iter().collect(),
    };
    let mut report = format!("pattern {p}\n");
    for w in &witnesses {
        writeln!(report, "witness {}", points(&w.vertices)).unwrap();
    }
    writeln!(report, "count {}", witnesses.len()).unwrap();
    let quiet = line(if witnesses.is_empty() { "none".into() } else { "found".into() });
    Ok(Outcome::ok(report, quiet))
}

fn construct(name: &str, out: Option<&Path>) -> Result<Outcome, Error> {
    let built = build_sharpness(name).map_err(|e| {
        let names: Vec<&str> = recipes().iter().map(|r| r.name).collect();
        Error::Input(format!("{e}; recipes: {}", names.join(", ")))
    })?;
    let g = &built.graph;
    let summary = format!(
        "recipe {name} n={} m={} avg={} target={}\n",
        g.order(),
        g.size(),
        g.average_degree()?,
        built.target
    );
    match out {
        Some(path) => {
            std::fs::write(path, g.to_edge_list())
                .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(summary.clone(), summary))
        }
        None => Ok(Outcome::ok(g.to_edge_list(), summary)),
    }
}

fn discharge(theorem: &str, instance: &Instance) -> Result<Outcome, Error> {
    let spec = resolve(theorem)?;
    let name = spec
        .rules
        .as_deref()
        .ok_or_else(|| Error::Input(format!("theorem `{}` has no rule set", spec.name)))?;
    let set = rule_set(name).ok_or_else(|| Error::Input(format!("unknown rule set `{name}`")))?;
    let report = run_discharge(instance, &set.charge, &set.rules)?;
    let quiet = line(format!("negatives {}", report.negatives.len()));
    let code = u8::from(!report.negatives.is_empty());
    Ok(Outcome { report: format!("rules {name}\n{}", report.render()), quiet, code })
}

fn verdict_code(v: &Verdict) -> u8 {
    u8::from(matches!(v, Verdict::Counterexample))
}

fn verdict_kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::Satisfied { .. } => "Satisfied",
        Verdict::Counterexample => "Counterexample",
        Verdict::HypothesesNotMet(_) => "HypothesesNotMet",
    }
}

fn verify_one(theorem: &str, instance: &Instance) -> Result<Outcome, Error> {
    let spec = resolve(theorem)?;
    let verdict = verify_theorem(instance, &spec)?;
    Ok(Outcome {
        report: line(verdict.to_string()),
        quiet: line(verdict_kind(&verdict).to_string()),
        code: verdict_code(&verdict),
    })
}

fn verify_corpus(theorem: &str, path: &Path) -> Result<Outcome, Error> {
    let spec = resolve(theorem)?;
    let corpus = read_corpus(&read(path)?)?;
    let verdicts: Vec<Result<Verdict, Error>> =
        corpus.instances.par_iter().map(|inst| verify_theorem(inst, &spec)).collect();
    let mut report = format!("theorem {}\nseed {}\nprofile {}\n", spec.name, corpus.seed, corpus.profile);
    report.push_str("instance verdict\n");
    let (mut sat, mut cex, mut unmet) = (0, 0, 0);
    for (i, v) in verdicts.into_iter().enumerate() {
        let v = v?;
        match v {
            Verdict::Satisfied { .. } => sat += 1,
            Verdict::Counterexample => cex += 1,
            Verdict::HypothesesNotMet(_) => unmet += 1,
        }
        writeln!(report, "{i} {v}").unwrap();
    }
    let summary = format!("summary satisfied={sat} counterexample={cex} hypotheses_not_met={unmet}\n");
    report.push_str(&summary);
    Ok(Outcome { report, quiet: summary, code: u8::from(cex > 0) })
}

fn generate(theorem: &str, seed: u64, count: usize, out: Option<&Path>) -> Result<Outcome, Error> {
    let spec = resolve(theorem)?;
    let profile = default_profile(&spec.name)?;
    let instances = gen_corpus(&profile, &spec, seed, count)?;
    let file = CorpusFile { theorem: spec.name.clone(), seed, profile: profile.to_string(), instances };
    let text = write_corpus(&file);
    let summary = format!("corpus theorem={} seed={seed} count={count}\n", spec.name);
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(summary.clone(), summary))
        }
        None => Ok(Outcome::ok(text, summary)),
    }
}

fn audit(theorem: &str) -> Result<Outcome, Error> {
    let spec = resolve(theorem)?;
    let report = audit_optimality(&spec, &builtin_witnesses(&spec.name)?);
    let verdict = report.verdict();
    Ok(Outcome {
        report: report.render(),
        quiet: line(format!("verdict {verdict}")),
        code: u8::from(verdict == AuditVerdict::NotOptimal),
    })
}
