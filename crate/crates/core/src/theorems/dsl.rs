//! Pattern and theorem spec text formats.
//!
//! Patterns: `path(2,2,13-,2)`, `cycle(2,2,*)`, `star(4;2,2,2,3-)`,
//! `threads(3;[2,2,0:5-])`, where a degree spec is `k`, `k-` (at most),
//! `k+` (at least) or `*`.
//!
//! Theorem specs are line oriented:
//!
//! ```text
//! theorem mad14_5
//! hypothesis min_degree = 2
//! hypothesis avg_degree < 14/5
//! forbid cycle(2,2,*)
//! conclude (2,2,13-,2)-path: path(2,2,13-,2)
//! rules mad14_5
//! ```

use std::fmt::Write as _;

use num_traits::Zero;

use super::{Hypotheses, MinDegree, TheoremSpec};
use crate::discharge::rule_set;
use crate::patterns::{DegSpec, ThreadEntry};
use crate::{Error, Pattern, Rational, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => self.fail(format!("expected `{c}`, found `{x}`")),
            None => self.fail(format!("expected `{c}`, found end of input")),
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.text.len() - start);
        if len == 0 {
            return self.fail("expected a pattern kind");
        }
        self.pos += len;
        Ok(&self.text[start..start + len])
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - start);
        if len == 0 {
            return self.fail("expected a degree");
        }
        let value = self.text[start..start + len]
            .parse()
            .or_else(|_| self.fail("degree out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn spec(&mut self) -> Result<DegSpec> {
        if self.peek() == Some('*') {
            self.pos += 1;
            return Ok(DegSpec::Any);
        }
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.fail("expected a degree spec (`k`, `k-`, `k+` or `*`)");
        }
        let k = self.number()?;
        Ok(match self.text[self.pos..].chars().next() {
            Some('-') => {
                self.pos += 1;
                DegSpec::AtMost(k)
            }
            Some('+') => {
                self.pos += 1;
                DegSpec::AtLeast(k)
            }
            _ => DegSpec::Exact(k),
        })
    }

    fn spec_list(&mut self) -> Result<Vec<DegSpec>> {
        let mut specs = vec![self.spec()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            specs.push(self.spec()?);
        }
        Ok(specs)
    }

    fn entry(&mut self) -> Result<ThreadEntry> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.fail("expected a thread length");
        }
        let min_len = self.number()?;
        let neighbor = if self.peek() == Some(':') {
            self.pos += 1;
            Some(self.spec()?)
        } else {
            None
        };
        Ok(ThreadEntry { min_len, neighbor })
    }
}

/// Parses the pattern syntax; rejects structurally invalid patterns.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let mut c = Cursor { text, pos: 0 };
    let kind_at = {
        c.skip_ws();
        c.pos
    };
    let kind = c.ident()?;
    c.expect('(')?;
    let pattern = match kind {
        "path" => Pattern::Path(c.spec_list()?),
        "cycle" => Pattern::Cycle(c.spec_list()?),
        "star" => {
            let center = c.spec()?;
            c.expect(';')?;
            Pattern::Star { center, leaves: c.spec_list()? }
        }
        "threads" => {
            let center = c.spec()?;
            c.expect(';')?;
            c.expect('[')?;
            let mut entries = vec![c.entry()?];
            while c.peek() == Some(',') {
                c.pos += 1;
                entries.push(c.entry()?);
            }
            c.expect(']')?;
            Pattern::Threads { center, entries }
        }
        other => {
            return Err(Error::Syntax {
                offset: kind_at,
                message: format!("unknown pattern kind `{other}`"),
            })
        }
    };
    c.expect(')')?;
    if c.peek().is_some() {
        return c.fail("unexpected text after the pattern");
    }
    pattern.validate().map_err(|message| Error::Syntax { offset: kind_at, message })?;
    Ok(pattern)
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    (d > 0).then(|| Rational::new(n, d))
}

pub fn parse_theorem_spec(text: &str) -> Result<TheoremSpec> {
    let mut name: Option<String> = None;
    let mut hyp = Hypotheses::default();
    let mut conclusions: Vec<(String, Pattern)> = Vec::new();
    let mut rules: Option<String> = None;
    let mut seen_keys: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Spec { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "theorem" => {
                if name.is_some() {
                    return Err(err("duplicate `theorem` line".into()));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err("theorem name must be a single word".into()));
                }
                name = Some(rest.to_string());
            }
            "hypothesis" => {
                let mut words = rest.splitn(3, char::is_whitespace);
                let key = words.next().unwrap_or("");
                let op = words.next().unwrap_or("");
                let value = words.next().unwrap_or("").trim();
                let key = match key {
                    "plane" | "triangle_free_npm" | "min_degree" | "avg_degree" | "mad" | "girth"
                    | "face_size" => key,
                    other => return Err(err(format!("unknown hypothesis `{other}`"))),
                };
                if seen_keys.contains(&key) {
                    return Err(err(format!("duplicate hypothesis `{key}`")));
                }
                seen_keys.push(key);
                let count = || -> Result<usize> {
                    value
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| err(format!("`{key}` needs a positive integer, got `{value}`")))
                };
                let bound = || -> Result<Rational> {
                    let r = parse_rational(value)
                        .ok_or_else(|| err(format!("`{key}` needs a rational bound, got `{value}`")))?;
                    if r <= Rational::zero() {
                        return Err(err(format!("bound for `{key}` must be positive")));
                    }
                    Ok(r)
                };
                let want = |expected: &str| -> Result<()> {
                    if op == expected {
                        Ok(())
                    } else {
                        Err(err(format!("`{key}` expects `{expected}`, found `{op}`")))
                    }
                };
                match key {
                    "plane" | "triangle_free_npm" => {
                        if !op.is_empty() {
                            return Err(err(format!("`{key}` takes no value")));
                        }
                        if key == "plane" {
                            hyp.plane = true;
                        } else {
                            hyp.triangle_free_npm = true;
                        }
                    }
                    "min_degree" => {
                        hyp.min_degree = Some(match op {
                            "=" => MinDegree::Exactly(count()?),
                            ">=" => MinDegree::AtLeast(count()?),
                            _ => return Err(err(format!("`min_degree` expects `=` or `>=`, found `{op}`"))),
                        })
                    }
                    "avg_degree" => {
                        want("<")?;
                        hyp.avg_below = Some(bound()?);
                    }
                    "mad" => {
                        want("<")?;
                        hyp.mad_below = Some(bound()?);
                    }
                    "girth" => {
                        want(">=")?;
                        hyp.girth_at_least = Some(count()?);
                    }
                    "face_size" => {
                        want(">=")?;
                        hyp.face_size_at_least = Some(count()?);
                    }
                    _ => unreachable!(),
                }
            }
            "forbid" => {
                let p = parse_pattern(rest).map_err(|e| err(e.to_string()))?;
                hyp.forbidden.push(p);
            }
            "conclude" => {
                let (label, pattern) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `conclude <name>: <pattern>`".into()))?;
                let label = label.trim();
                if label.is_empty() {
                    return Err(err("conclusion name is empty".into()));
                }
                if conclusions.iter().any(|(n, _)| n == label) {
                    return Err(err(format!("duplicate conclusion `{label}`")));
                }
                let p = parse_pattern(pattern).map_err(|e| err(e.to_string()))?;
                conclusions.push((label.to_string(), p));
            }
            "rules" => {
                if rules.is_some() {
                    return Err(err("duplicate `rules` line".into()));
                }
                if rule_set(rest).is_none() {
                    return Err(err(format!("unknown rule set `{rest}`")));
                }
                rules = Some(rest.to_string());
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let name = name.ok_or(Error::Spec { line: 1, message: "missing `theorem` line".into() })?;
    if conclusions.is_empty() {
        return Err(Error::Spec { line: last, message: "no conclusions".into() });
    }
    if hyp.triangle_free_npm && !hyp.plane {
        return Err(Error::Spec {
            line: last,
            message: "`triangle_free_npm` needs `hypothesis plane`".into(),
        });
    }
    if hyp.face_size_at_least.is_some() && !hyp.plane {
        return Err(Error::Spec {
            line: last,
            message: "`face_size` needs `hypothesis plane`".into(),
        });
    }
    Ok(TheoremSpec { name, hypotheses: hyp, conclusions, rules })
}

/// Canonical text of a spec; `parse_theorem_spec` inverts it.
pub fn render_theorem_spec(spec: &TheoremSpec) -> String {
    let h = &spec.hypotheses;
    let mut out = format!("theorem {}\n", spec.name);
    if h.plane {
        out.push_str("hypothesis plane\n");
    }
    if h.triangle_free_npm {
        out.push_str("hypothesis triangle_free_npm\n");
    }
    match h.min_degree {
        Some(MinDegree::Exactly(k)) => writeln!(out, "hypothesis min_degree = {k}").unwrap(),
        Some(MinDegree::AtLeast(k)) => writeln!(out, "hypothesis min_degree >= {k}").unwrap(),
        None => {}
    }
    if let Some(r) = h.avg_below {
        writeln!(out, "hypothesis avg_degree < {r}").unwrap();
    }
    if let Some(r) = h.mad_below {
        writeln!(out, "hypothesis mad < {r}").unwrap();
    }
    if let Some(g) = h.girth_at_least {
        writeln!(out, "hypothesis girth >= {g}").unwrap();
    }
    if let Some(f) = h.face_size_at_least {
        writeln!(out, "hypothesis face_size >= {f}").unwrap();
    }
    for p in &h.forbidden {
        writeln!(out, "forbid {p}").unwrap();
    }
    for (name, p) in &spec.conclusions {
        writeln!(out, "conclude {name}: {p}").unwrap();
    }
    if let Some(r) = &spec.rules {
        writeln!(out, "rules {r}").unwrap();
    }
    out
}
