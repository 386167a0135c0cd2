// Copyright 2026 The votelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command results in one schema, rendered as JSON, CSV or plain text.

use serde::Serialize;

use crate::criteria::Violation;
use crate::exact::QuadNum;
use crate::profile::Profile;
use crate::quota::Quota;
use crate::rules::{Rule, ScoreReport, Trace};

use super::format::serialize_profile;

/// Exit codes shared by every command.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    /// A search stopped at its budget before covering the requested range.
    Partial,
    Error,
}

/// A number shown both exactly and to three places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Display text: a three-place decimal, a formula or empty.
    pub text: String,
    /// Exact form `p/s` or `(p+r*sqrt(d))/s`; absent for formulas and text.
    pub exact: Option<String>,
}

impl Cell {
    pub fn number(v: &QuadNum) -> Self {
        Cell { text: v.to_decimal(3), exact: Some(v.to_string()) }
    }

    pub fn quota(q: &Quota) -> Self {
        Cell { text: q.decimal(), exact: Some(q.to_string()) }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell { text: s.into(), exact: None }
    }

    pub fn blank() -> Self {
        Cell::text("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    /// Header of the label column followed by one header per cell.
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScoreEntry {
    pub candidate: String,
    pub exact: String,
    pub decimal: String,
    pub winner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationDoc {
    /// Protected set: the mutual-majority set, or the candidates not vetoed.
    pub b_set: Vec<String>,
    pub support: u64,
    pub voters: u64,
    pub winners: Vec<String>,
    /// Ballot counts per ranking in lexicographic order, for search hits.
    pub counts: Option<Vec<u64>>,
    /// Witness profile in the profile file format.
    pub profile: String,
}

impl ViolationDoc {
    pub fn new(v: &Violation, counts: Option<Vec<u64>>) -> Self {
        let p = &v.profile;
        ViolationDoc {
            b_set: p.names_of(v.b_set),
            support: v.support,
            voters: p.num_voters(),
            winners: p.names_of(v.winners.set()),
            counts,
            profile: serialize_profile(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub status: Status,
    pub exit_code: i32,
    pub rule: Option<String>,
    pub candidates: Vec<String>,
    pub scores: Vec<ScoreEntry>,
    pub winners: Vec<String>,
    pub tables: Vec<Table>,
    pub violation: Option<ViolationDoc>,
    /// Generated profile in the profile file format.
    pub profile: Option<String>,
    pub notes: Vec<String>,
}

impl ResultDocument {
    pub fn new(command: impl Into<String>) -> Self {
        ResultDocument {
            command: command.into(),
            status: Status::Ok,
            exit_code: EXIT_OK,
            rule: None,
            candidates: Vec::new(),
            scores: Vec::new(),
            winners: Vec::new(),
            tables: Vec::new(),
            violation: None,
            profile: None,
            notes: Vec::new(),
        }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut doc = ResultDocument::new(command);
        doc.status = Status::Error;
        doc.exit_code = EXIT_USAGE;
        doc.notes.push(message.into());
        doc
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.exit_code = match status {
            Status::Ok | Status::Partial => EXIT_OK,
            Status::Violation => EXIT_VIOLATION,
            Status::Error => EXIT_USAGE,
        };
    }

    /// Fills candidates, scores and winners from a rule's report.
    pub fn with_report(mut self, rule: &Rule, profile: &Profile, report: &ScoreReport) -> Self {
        self.rule = Some(rule.id());
        self.candidates = profile.candidates().to_vec();
        self.winners = profile.names_of(report.winners.set());
        self.scores = report
            .scores
            .iter()
            .enumerate()
            .map(|(c, s)| ScoreEntry {
                candidate: profile.name(c).to_string(),
                exact: s.to_string(),
                decimal: s.exact().to_decimal(3),
                winner: report.winners.contains(c),
            })
            .collect();
        self
    }

    /// One line per step of the rule's trace.
    pub fn with_trace(mut self, profile: &Profile, report: &ScoreReport) -> Self {
        let name = |c: usize| profile.name(c).to_string();
        match &report.trace {
            Trace::None | Trace::ReversalMargins(_) => {}
            Trace::MajorityWinner(w) => self.notes.push(format!("majority winner: {}", name(*w))),
            Trace::CondorcetWinner(w) => self.notes.push(format!("Condorcet winner: {}", name(*w))),
            Trace::BordaFallback => self.notes.push("no Condorcet winner; Borda scores decide".into()),
            Trace::Finalists(pairs) => {
                for &(a, b) in pairs {
                    self.notes.push(format!("finalists: {} vs {}", name(a), name(b)));
                }
            }
            Trace::Elimination { rounds, ties } => {
                let order: Vec<String> =
                    rounds.iter().map(|r| name(r.lowest.first().expect("nonempty"))).collect();
                self.notes.push(format!("eliminated: {}", order.join(", ")));
                if *ties {
                    self.notes
                        .push("ties at the minimum; winners pooled over every elimination order".into());
                }
            }
            Trace::Blocking(blocks) => {
                for b in blocks {
                    self.notes.push(format!(
                        "{} blocked by {} voters preferring {{{}}}",
                        name(b.candidate),
                        b.coalition_size,
                        profile.names_of(b.preferred).join(", ")
                    ));
                }
            }
        }
        self
    }

    pub fn with_violation(mut self, v: &Violation, counts: Option<Vec<u64>>) -> Self {
        self.violation = Some(ViolationDoc::new(v, counts));
        self.set_status(Status::Violation);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "plain" => Ok(Format::Plain),
            other => Err(format!("unknown format `{other}` (json, csv, plain)")),
        }
    }
}

pub fn render(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
        Format::Csv => render_csv(doc),
        Format::Plain => render_plain(doc),
    }
}

fn csv_line(fields: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Tables as header plus display cells; otherwise scores with exact and
/// decimal columns; otherwise `field,value` pairs.
fn render_csv(doc: &ResultDocument) -> String {
    let mut out = String::new();
    for (i, t) in doc.tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let header: Vec<&str> = t.columns.iter().map(String::as_str).collect();
        out += &csv_line(&header);
        for r in &t.rows {
            let fields: Vec<&str> =
                std::iter::once(r.label.as_str()).chain(r.cells.iter().map(|c| c.text.as_str())).collect();
            out += &csv_line(&fields);
        }
    }
    if !doc.scores.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        out += &csv_line(&["candidate", "exact", "decimal", "winner"]);
        for s in &doc.scores {
            out += &csv_line(&[&s.candidate, &s.exact, &s.decimal, if s.winner { "1" } else { "0" }]);
        }
    }
    if out.is_empty() {
        out += &csv_line(&["field", "value"]);
        out += &csv_line(&["status", status_text(doc.status)]);
        out += &csv_line(&["winners", &doc.winners.join(" ")]);
        if let Some(v) = &doc.violation {
            out += &csv_line(&["b_set", &v.b_set.join(" ")]);
            out += &csv_line(&["support", &v.support.to_string()]);
            out += &csv_line(&["voters", &v.voters.to_string()]);
            out += &csv_line(&["violation_winners", &v.winners.join(" ")]);
        }
        if let Some(p) = &doc.profile {
            out += &csv_line(&["profile", p]);
        }
        for n in &doc.notes {
            out += &csv_line(&["note", n]);
        }
    }
    out
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Violation => "violation",
        Status::Partial => "partial",
        Status::Error => "error",
    }
}

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
pub fn plain_table(t: &Table) -> String {
    let mut grid: Vec<Vec<&str>> = vec![t.columns.iter().map(String::as_str).collect()];
    for r in &t.rows {
        grid.push(std::iter::once(r.label.as_str()).chain(r.cells.iter().map(|c| c.text.as_str())).collect());
    }
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| grid.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in grid {
        let line: Vec<String> =
            r.iter().enumerate().map(|(j, s)| format!("{s:<w$}", w = widths[j])).collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}

fn render_plain(doc: &ResultDocument) -> String {
    let mut out = String::new();
    if let Some(rule) = &doc.rule {
        out += &format!("rule: {rule}\n");
    }
    if !doc.scores.is_empty() {
        let t = Table {
            title: String::new(),
            columns: vec!["candidate".into(), "score".into(), "decimal".into(), "winner".into()],
            rows: doc
                .scores
                .iter()
                .map(|s| Row {
                    label: s.candidate.clone(),
                    cells: vec![
                        Cell::text(&s.exact),
                        Cell::text(&s.decimal),
                        Cell::text(if s.winner { "*" } else { "" }),
                    ],
                })
                .collect(),
        };
        out += &plain_table(&t);
    }
    if !doc.winners.is_empty() {
        out += &format!("winners: {}\n", doc.winners.join(", "));
    }
    for t in &doc.tables {
        if !out.is_empty() {
            out.push('\n');
        }
        if !t.title.is_empty() {
            out += &format!("{}\n", t.title);
        }
        out += &plain_table(t);
    }
    if let Some(v) = &doc.violation {
        out += &format!(
            "violation: {} of {} voters rank {{{}}} on top, winners {{{}}}\n",
            v.support,
            v.voters,
            v.b_set.join(", "),
            v.winners.join(", ")
        );
        out += "witness:\n";
        for line in v.profile.lines() {
            out += &format!("  {line}\n");
        }
    }
    if let Some(p) = &doc.profile {
        out += p;
    }
    for n in &doc.notes {
        out += &format!("note: {n}\n");
    }
    out += &format!("status: {}\n", status_text(doc.status));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultDocument {
        let mut d = ResultDocument::new("tables --which majority");
        d.tables.push(Table {
            title: "t".into(),
            columns: vec!["rule".into(), "k=1".into()],
            rows: vec![Row {
                label: "Plurality, simple".into(),
                cells: vec![Cell::number(&QuadNum::from_ratio(2, 3))],
            }],
        });
        d
    }

    #[test]
    fn json_has_every_field() {
        let v: serde_json::Value = serde_json::from_str(&render(&sample(), Format::Json)).unwrap();
        for key in [
            "command",
            "status",
            "exit_code",
            "rule",
            "candidates",
            "scores",
            "winners",
            "tables",
            "violation",
            "profile",
            "notes",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["tables"][0]["rows"][0]["cells"][0]["exact"], "2/3");
        assert_eq!(v["tables"][0]["rows"][0]["cells"][0]["text"], "0.667");
    }

    #[test]
    fn csv_quotes_fields() {
        let csv = render(&sample(), Format::Csv);
        assert_eq!(csv, "rule,k=1\n\"Plurality, simple\",0.667\n");
    }

    #[test]
    fn status_sets_exit_code() {
        let mut d = ResultDocument::new("check");
        d.set_status(Status::Violation);
        assert_eq!(d.exit_code, EXIT_VIOLATION);
        d.set_status(Status::Partial);
        assert_eq!(d.exit_code, EXIT_OK);
        assert_eq!(ResultDocument::error("x", "bad").exit_code, EXIT_USAGE);
    }

    #[test]
    fn plain_aligns_columns() {
        let text = plain_table(&sample().tables[0]);
        assert_eq!(text, "rule               k=1\nPlurality, simple  0.667\n");
    }
}
