//! Text format for a space together with its self-map.
//!
//! ```text
//! # comment
//! [points]
//! a b c d
//! [metric]            # or: [line] with one coordinate per point
//! 0 1 3 3
//! 1 0 3 3
//! 3 3 0 3
//! 3 3 3 0
//! [map]               # or: [map-affine] with `on <set|interval> : a b`
//! a -> a
//! b -> b
//! c -> b
//! d -> a
//! [sampled]           # optional: the space is a finite sample
//! ```
//!
//! Rationals are written `8`, `2/3` or `0.5`. [`write_instance`] emits the
//! canonical form, which [`parse_instance`] reads back to an identical
//! instance.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::map::{Domain, Piece, SelfMap};
use crate::rational::{parse_rational, Rational};
use crate::space::{validate_metric, LineSpace, PointId, Space, TabulatedSpace, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Points,
    Metric,
    Line,
    Map,
    MapAffine,
    Sampled,
}

impl Section {
    fn from_header(name: &str) -> Option<Self> {
        Some(match name {
            "points" => Section::Points,
            "metric" => Section::Metric,
            "line" => Section::Line,
            "map" => Section::Map,
            "map-affine" => Section::MapAffine,
            "sampled" => Section::Sampled,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Geometry {
    Metric(Vec<Vec<Rational>>),
    Line(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawMap {
    Table(Vec<(String, String)>),
    Affine(Vec<Piece>),
}

/// A parsed file before any metric validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub labels: Vec<String>,
    pub geometry: Geometry,
    pub map: Option<RawMap>,
    pub sampled: bool,
}

/// Splits a line into tokens with their 1-based starting columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn rational_at(token: &str, line: usize, column: usize) -> Result<Rational, ParseError> {
    parse_rational(token).map_err(|e| ParseError {
        line,
        column,
        message: e.to_string(),
    })
}

fn parse_domain(text: &str, line: usize, column: usize) -> Result<Domain, ParseError> {
    let t = text.trim();
    let inner_col = column + (text.len() - text.trim_start().len()) + 1;
    if let Some(body) = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        let mut points = Vec::new();
        for part in body.split(',') {
            if part.trim().is_empty() {
                return err(line, inner_col, "empty entry in point set");
            }
            points.push(rational_at(part, line, inner_col)?);
        }
        return Ok(Domain::Set(points));
    }
    if let Some(body) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 2 {
            return err(line, inner_col, "interval needs exactly two endpoints");
        }
        let lo = rational_at(parts[0], line, inner_col)?;
        let hi = rational_at(parts[1], line, inner_col)?;
        if lo > hi {
            return err(line, inner_col, format!("empty interval [{lo}, {hi}]"));
        }
        return Ok(Domain::Interval { lo, hi });
    }
    err(line, column, format!("expected `{{...}}` or `[lo, hi]`, found `{t}`"))
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut section: Option<Section> = None;
    let mut seen: Vec<Section> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut coords: Vec<Rational> = Vec::new();
    let mut table: Vec<(usize, String, String)> = Vec::new();
    let mut pieces: Vec<Piece> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let trimmed = content.trim();
        let indent = content.len() - content.trim_start().len();
        if trimmed.starts_with('[') && trimmed.ends_with(']') {
            let name = &trimmed[1..trimmed.len() - 1];
            let Some(next) = Section::from_header(name) else {
                return err(lineno, indent + 1, format!("unknown section `[{name}]`"));
            };
            if seen.contains(&next) {
                return err(lineno, indent + 1, format!("section `[{name}]` appears twice"));
            }
            let clash = match next {
                Section::Metric => seen.contains(&Section::Line),
                Section::Line => seen.contains(&Section::Metric),
                Section::Map => seen.contains(&Section::MapAffine),
                Section::MapAffine => seen.contains(&Section::Map),
                _ => false,
            };
            if clash {
                return err(
                    lineno,
                    indent + 1,
                    "`[metric]`/`[line]` and `[map]`/`[map-affine]` are mutually exclusive",
                );
            }
            seen.push(next);
            section = Some(next);
            continue;
        }
        match section {
            None => return err(lineno, indent + 1, "content before the first section header"),
            Some(Section::Points) => {
                labels.extend(tokens(content).into_iter().map(|(_, t)| t.to_string()));
            }
            Some(Section::Metric) => {
                let row = tokens(content)
                    .into_iter()
                    .map(|(col, t)| rational_at(t, lineno, col))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push((lineno, row));
            }
            Some(Section::Line) => {
                for (col, t) in tokens(content) {
                    coords.push(rational_at(t, lineno, col)?);
                }
            }
            Some(Section::Map) => {
                let Some((from, to)) = content.split_once("->") else {
                    return err(lineno, indent + 1, "expected `label -> label`");
                };
                let (from, to) = (from.trim(), to.trim());
                if from.is_empty() || to.is_empty() || to.contains(char::is_whitespace) {
                    return err(lineno, indent + 1, "expected `label -> label`");
                }
                table.push((lineno, from.to_string(), to.to_string()));
            }
            Some(Section::MapAffine) => {
                let Some(rest) = trimmed.strip_prefix("on ") else {
                    return err(lineno, indent + 1, "expected `on <set-or-interval> : a b`");
                };
                let Some((dom, rule)) = rest.rsplit_once(':') else {
                    return err(lineno, indent + 1, "missing `:` before the affine rule");
                };
                let domain = parse_domain(dom, lineno, indent + 4)?;
                let rule_col = indent + 4 + dom.len() + 1;
                let parts = tokens(rule);
                if parts.len() != 2 {
                    return err(lineno, rule_col, "affine rule needs exactly `a b`");
                }
                let slope = rational_at(parts[0].1, lineno, rule_col + parts[0].0)?;
                let offset = rational_at(parts[1].1, lineno, rule_col + parts[1].0)?;
                pieces.push(Piece::new(domain, slope, offset));
            }
            Some(Section::Sampled) => {
                return err(lineno, indent + 1, "`[sampled]` takes no content");
            }
        }
    }

    if !seen.contains(&Section::Points) {
        return err(last_line.max(1), 1, "missing `[points]` section");
    }
    let n = labels.len();
    let geometry = if seen.contains(&Section::Metric) {
        if rows.len() != n {
            return err(
                rows.last().map(|r| r.0).unwrap_or(last_line),
                1,
                format!("`[metric]` has {} rows for {n} points", rows.len()),
            );
        }
        for (lineno, row) in &rows {
            if row.len() != n {
                return err(
                    *lineno,
                    1,
                    format!("metric row has {} entries, expected {n}", row.len()),
                );
            }
        }
        Geometry::Metric(rows.into_iter().map(|r| r.1).collect())
    } else if seen.contains(&Section::Line) {
        if coords.len() != n {
            return err(
                last_line,
                1,
                format!("`[line]` has {} coordinates for {n} points", coords.len()),
            );
        }
        Geometry::Line(coords)
    } else {
        return err(last_line, 1, "missing `[metric]` or `[line]` section");
    };
    let map = if seen.contains(&Section::Map) {
        let known: HashMap<&str, ()> = labels.iter().map(|l| (l.as_str(), ())).collect();
        for (lineno, from, to) in &table {
            for l in [from, to] {
                if !known.contains_key(l.as_str()) {
                    return err(*lineno, 1, format!("unknown point `{l}`"));
                }
            }
        }
        Some(RawMap::Table(
            table.into_iter().map(|(_, from, to)| (from, to)).collect(),
        ))
    } else if seen.contains(&Section::MapAffine) {
        Some(RawMap::Affine(pieces))
    } else {
        None
    };
    Ok(Document {
        labels,
        geometry,
        map,
        sampled: seen.contains(&Section::Sampled),
    })
}

impl Document {
    /// Metric axioms of the described space, as a report.
    pub fn validate(&self) -> Result<ValidationReport> {
        match &self.geometry {
            Geometry::Metric(rows) => validate_metric(&self.labels, rows),
            Geometry::Line(coords) => {
                let line = LineSpace::with_labels(self.labels.clone(), coords.clone())?;
                let space = Space::Line(line);
                validate_metric(space.labels(), &space.matrix())
            }
        }
    }

    pub fn space(&self) -> Result<Space> {
        Ok(match &self.geometry {
            Geometry::Metric(rows) => {
                Space::Tabulated(TabulatedSpace::new(self.labels.clone(), rows.clone())?)
            }
            Geometry::Line(coords) => {
                let line = LineSpace::with_labels(self.labels.clone(), coords.clone())?;
                Space::Line(if self.sampled { line.sampled() } else { line })
            }
        })
    }

    pub fn instance(&self) -> Result<Instance> {
        let space = self.space()?;
        let map = match &self.map {
            None => {
                return Err(Error::Parameter(
                    "the file has no `[map]` or `[map-affine]` section".into(),
                ))
            }
            Some(RawMap::Affine(pieces)) => SelfMap::Piecewise(pieces.clone()),
            Some(RawMap::Table(entries)) => {
                let n = space.len();
                let mut targets: Vec<Option<PointId>> = vec![None; n];
                for (from, to) in entries {
                    let p = space.point(from)?;
                    if targets[p.0].is_some() {
                        return Err(Error::Parameter(format!("`{from}` is mapped twice")));
                    }
                    targets[p.0] = Some(space.point(to)?);
                }
                let targets = targets
                    .into_iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.ok_or_else(|| {
                            Error::Parameter(format!("no image given for `{}`", space.labels()[i]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                SelfMap::Table(targets)
            }
        };
        Instance::new(space, map)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_document(text)?.instance()
}

fn write_domain(out: &mut String, domain: &Domain) {
    match domain {
        Domain::Set(points) => {
            out.push('{');
            for (i, p) in points.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{p}");
            }
            out.push('}');
        }
        Domain::Interval { lo, hi } => {
            let _ = write!(out, "[{lo}, {hi}]");
        }
    }
}

/// Canonical text of an instance.
pub fn write_instance(instance: &Instance) -> String {
    let space = instance.space();
    let mut out = String::new();
    out.push_str("[points]\n");
    out.push_str(&space.labels().join(" "));
    out.push('\n');
    match space {
        Space::Tabulated(t) => {
            out.push_str("[metric]\n");
            for row in t.matrix() {
                let cells: Vec<String> = row.iter().map(|r| r.to_string()).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        Space::Line(l) => {
            out.push_str("[line]\n");
            let cells: Vec<String> = l.coords().iter().map(|r| r.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    match instance.map() {
        SelfMap::Table(targets) => {
            out.push_str("[map]\n");
            for (i, t) in targets.iter().enumerate() {
                let _ = writeln!(out, "{} -> {}", space.labels()[i], space.label(*t));
            }
        }
        SelfMap::Piecewise(pieces) => {
            out.push_str("[map-affine]\n");
            for piece in pieces {
                out.push_str("on ");
                write_domain(&mut out, &piece.domain);
                let _ = writeln!(out, " : {} {}", piece.slope, piece.offset);
            }
        }
    }
    if space.is_sampled() {
        out.push_str("[sampled]\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    const KANNAN_SQUARE: &str = "\
# four points, one short edge
[points]
a b c d
[metric]
0 1 3 3
1 0 3 3
3 3 0 3
3 3 3 0
[map]
a -> a
b -> b
c -> b
d -> a
";

    #[test]
    fn parses_table_instance() {
        let inst = parse_instance(KANNAN_SQUARE).unwrap();
        assert_eq!(inst.len(), 4);
        let c = inst.point("c").unwrap();
        assert_eq!(inst.label(inst.apply(c).unwrap()), "b");
        let a = inst.point("a").unwrap();
        assert_eq!(inst.distance(a, c).unwrap(), int(3));
    }

    #[test]
    fn canonical_text_round_trips() {
        let inst = parse_instance(KANNAN_SQUARE).unwrap();
        let text = write_instance(&inst);
        assert_eq!(text, KANNAN_SQUARE.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn parses_affine_map_and_decimals() {
        let text = "\
[points]
m1 m2 m3 z h o
[line]
-1 -0.6666666666666666666 -1/3 0 0.5 1
[map-affine]
on [0, 1] : 0.5 0
on {-1/3} : 0 0
";
        // -0.666... as a finite decimal is a legal (if odd) coordinate; the
        // map does not cover it, so building the instance fails.
        let doc = parse_document(text).unwrap();
        assert!(matches!(doc.instance(), Err(Error::Uncovered { .. })));

        let text = "\
[points]
m1 m2 m3 z h o
[line]
-1 -2/3 -1/3 0 0.5 1
[map-affine]
on [0, 1] : 0.5 0
on {-1/3} : 0 0
on {-2/3} : 0 -1/3
on {-1} : 0 -2/3
[sampled]
";
        let inst = parse_instance(text).unwrap();
        assert!(inst.is_sampled());
        let o = inst.point("o").unwrap();
        assert_eq!(inst.label(inst.apply(o).unwrap()), "h");
        let again = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(again, inst);
        assert_eq!(
            inst.distance(inst.point("m2").unwrap(), o).unwrap(),
            ratio(5, 3)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "[points]\na b\n[metric]\n0 1\n1 x\n[map]\na -> a\nb -> b\n";
        let e = parse_document(bad).unwrap_err();
        assert_eq!((e.line, e.column), (5, 3));

        let e = parse_document("a b\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_document("[points]\na\n[metric]\n0\n[line]\n0\n").unwrap_err();
        assert!(e.message.contains("mutually exclusive"));

        let e = parse_document("[points]\na\n[line]\n0.(3)\n").unwrap_err();
        assert!(e.message.contains("repeating"));
    }

    #[test]
    fn validation_report_precedes_construction() {
        let text = "[points]\na b\n[metric]\n0 1\n2 0\n[map]\na -> b\nb -> a\n";
        let doc = parse_document(text).unwrap();
        let report = doc.validate().unwrap();
        assert!(!report.is_ok());
        assert!(report.to_string().contains("symmetry"));
        assert!(matches!(doc.instance(), Err(Error::InvalidMetric(_))));
    }
}
