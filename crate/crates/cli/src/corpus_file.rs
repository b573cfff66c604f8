//! Corpus file format.
//!
//! ```text
//! corpus mad3
//! seed 7
//! profile degrees choices=3,4 order=6..12 insertions=0,1
//! instance 0 graph
//! <edge list>
//! end
//! instance 1 plane
//! <rotation text>
//! end
//! ```

use std::fmt::Write as _;

use lightsub::{Error, Graph, Instance, PlaneGraph};

pub struct CorpusFile {
    pub theorem: String,
    pub seed: u64,
    pub profile: String,
    pub instances: Vec<Instance>,
}

pub fn write_corpus(file: &CorpusFile) -> String {
    let mut out = format!("corpus {}\nseed {}\nprofile {}\n", file.theorem, file.seed, file.profile);
    for (i, inst) in file.instances.iter().enumerate() {
        let (kind, body) = match inst {
            Instance::Graph(g) => ("graph", g.to_edge_list()),
            Instance::Plane(pg) => ("plane", pg.to_text()),
        };
        writeln!(out, "instance {i} {kind}").unwrap();
        out.push_str(&body);
        out.push_str("end\n");
    }
    out
}

pub fn read_corpus(text: &str) -> Result<CorpusFile, Error> {
    let bad = |line: usize, what: &str| Error::Input(format!("corpus line {line}: {what}"));
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = |key: &str| -> Result<String, Error> {
        let (no, l) = lines.next().ok_or_else(|| bad(0, "truncated header"))?;
        l.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(no, &format!("expected `{key} ...`")))
    };
    let theorem = header("corpus")?;
    let seed = header("seed")?.parse().map_err(|_| bad(2, "bad seed"))?;
    let profile = header("profile")?;
    let mut instances = Vec::new();
    while let Some((no, l)) = lines.next() {
        if l.trim().is_empty() {
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        let ["instance", index, kind] = words[..] else {
            return Err(bad(no, "expected `instance <i> <graph|plane>`"));
        };
        if index.parse::<usize>().ok() != Some(instances.len()) {
            return Err(bad(no, "instances must be numbered 0, 1, 2, ... in order"));
        }
        let mut body = String::new();
        loop {
            let (_, l) = lines.next().ok_or_else(|| bad(no, "instance without `end`"))?;
            if l == "end" {
                break;
            }
            body.push_str(l);
            body.push('\n');
        }
        instances.push(match kind {
            "graph" => Instance::Graph(Graph::parse_edge_list(&body)?),
            "plane" => Instance::Plane(PlaneGraph::parse(&body)?),
            _ => return Err(bad(no, "instance kind must be `graph` or `plane`")),
        });
    }
    if instances.is_empty() {
        return Err(Error::Input("corpus has no instances".into()));
    }
    Ok(CorpusFile { theorem, seed, profile, instances })
}
