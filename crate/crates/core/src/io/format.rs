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

//! Line-oriented profile files.
//!
//! ```text
//! # comment
//! m 4
//! candidates a b c d
//! 29: a > b > c > d
//! 28: 2 > 1 > 3 > 4
//! ```
//!
//! Candidates are names or 1-based indices. Counts may instead be
//! percentages (`12.5%: …`); they are scaled by the smallest factor that
//! makes every count an integer, so whole percentages keep a total of 100.
//! Names containing whitespace or any of `> : , # % "` are written in double
//! quotes with `\"` and `\\` escapes.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::profile::{default_names, Profile};

/// A ballot line before candidate resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallotLine {
    pub line: usize,
    pub count: Count,
    pub ranking: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Count {
    Voters(u64),
    Percent(Rational),
}

/// Parsed file contents with line numbers kept for error reporting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProfileDocument {
    pub m: Option<(usize, usize)>,
    pub candidates: Option<(usize, Vec<String>)>,
    pub ballots: Vec<BallotLine>,
    pub lines: usize,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn is_bare(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '>' | ':' | ',' | '#' | '%' | '"')
}

/// Drops a trailing `#` comment, ignoring `#` inside quotes.
fn strip_comment(text: &str) -> &str {
    let mut quoted = false;
    let mut escaped = false;
    for (i, c) in text.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if quoted => escaped = true,
            '"' => quoted = !quoted,
            '#' if !quoted => return &text[..i],
            _ => {}
        }
    }
    text
}

/// Splits on `sep` outside quotes.
fn split_outside(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut quoted, mut escaped, mut start) = (false, false, 0);
    for (i, c) in text.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if quoted => escaped = true,
            '"' => quoted = !quoted,
            c if c == sep && !quoted => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// One candidate token: a bare word or a quoted string.
fn token(text: &str, line: usize) -> Result<String> {
    let t = text.trim();
    if let Some(body) = t.strip_prefix('"') {
        let mut out = String::new();
        let mut chars = body.chars();
        while let Some(c) = chars.next() {
            match c {
                '\\' => out.push(chars.next().ok_or_else(|| err(line, "unterminated escape"))?),
                '"' => {
                    if chars.next().is_some() {
                        return Err(err(line, format!("text after quoted name in `{t}`")));
                    }
                    return Ok(out);
                }
                c => out.push(c),
            }
        }
        return Err(err(line, format!("unterminated quote in `{t}`")));
    }
    if t.is_empty() {
        return Err(err(line, "empty candidate name"));
    }
    if !t.chars().all(is_bare) {
        return Err(err(line, format!("unexpected character in candidate `{t}`")));
    }
    Ok(t.to_string())
}

/// Whitespace-separated tokens, quotes allowed.
fn tokens(text: &str, line: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let end = if rest.starts_with('"') {
            let mut escaped = false;
            rest.char_indices()
                .skip(1)
                .find(|&(_, c)| {
                    let close = c == '"' && !escaped;
                    escaped = c == '\\' && !escaped;
                    close
                })
                .map(|(i, _)| i + 1)
                .ok_or_else(|| err(line, "unterminated quote"))?
        } else {
            rest.find(char::is_whitespace).unwrap_or(rest.len())
        };
        out.push(token(&rest[..end], line)?);
        rest = rest[end..].trim_start();
    }
    Ok(out)
}

fn parse_count(text: &str, line: usize) -> Result<Count> {
    let t = text.trim();
    if let Some(pct) = t.strip_suffix('%') {
        let value = parse_decimal(pct.trim()).ok_or_else(|| err(line, format!("bad percentage `{t}`")))?;
        if value <= Rational::from_integer(0) {
            return Err(err(line, format!("count must be positive, got `{t}`")));
        }
        return Ok(Count::Percent(value));
    }
    match t.parse::<i64>() {
        Ok(c) if c > 0 => Ok(Count::Voters(c as u64)),
        Ok(_) => Err(err(line, format!("count must be positive, got `{t}`"))),
        Err(_) => Err(err(line, format!("bad voter count `{t}`"))),
    }
}

/// `12`, `12.5`, `-3.25` as exact rationals.
fn parse_decimal(text: &str) -> Option<Rational> {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() && frac.is_empty() || frac.len() > 12 {
        return None;
    }
    let negative = int.starts_with('-');
    let digits = format!("{}{frac}", int.trim_start_matches('-'));
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let value: i64 = digits.parse().ok()?;
    let r = Rational::new(value, 10i64.pow(frac.len() as u32));
    Some(if negative { -r } else { r })
}

/// Reads the file structure without resolving candidates.
pub fn parse_document(text: &str) -> Result<ProfileDocument> {
    let mut doc = ProfileDocument::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        doc.lines = line;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match head {
            "m" => {
                if doc.m.is_some() {
                    return Err(err(line, "`m` given twice"));
                }
                if !doc.ballots.is_empty() {
                    return Err(err(line, "`m` must come before the ballots"));
                }
                let m: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(line, format!("bad candidate count `{}`", rest.trim())))?;
                if m == 0 {
                    return Err(err(line, "m must be at least 1"));
                }
                doc.m = Some((line, m));
            }
            "candidates" => {
                if doc.candidates.is_some() {
                    return Err(err(line, "`candidates` given twice"));
                }
                if !doc.ballots.is_empty() {
                    return Err(err(line, "`candidates` must come before the ballots"));
                }
                let names = tokens(rest, line)?;
                for (j, name) in names.iter().enumerate() {
                    if names[..j].contains(name) {
                        return Err(err(line, format!("candidate `{name}` listed twice")));
                    }
                }
                doc.candidates = Some((line, names));
            }
            _ => {
                let parts = split_outside(body, ':');
                if parts.len() != 2 {
                    return Err(err(line, format!("expected `<count>: <ranking>`, got `{body}`")));
                }
                let count = parse_count(parts[0], line)?;
                let ranking = split_outside(parts[1], '>')
                    .into_iter()
                    .map(|t| token(t, line))
                    .collect::<Result<Vec<_>>>()?;
                doc.ballots.push(BallotLine { line, count, ranking });
            }
        }
    }
    Ok(doc)
}

impl ProfileDocument {
    /// Resolves names and indices and builds the normalized profile.
    pub fn to_profile(&self) -> Result<Profile> {
        let end = self.lines + 1;
        let Some(first) = self.ballots.first() else {
            return Err(err(end, "profile has no ballots"));
        };
        for b in &self.ballots {
            if let Some((_, t)) = b.ranking.iter().enumerate().find(|(i, t)| b.ranking[..*i].contains(t)) {
                return Err(err(b.line, format!("candidate `{t}` appears twice")));
            }
        }
        let names: Vec<String> = match (&self.candidates, self.m) {
            (Some((line, names)), Some((_, m))) if names.len() != m => {
                return Err(err(*line, format!("{} candidates listed but m = {m}", names.len())));
            }
            (Some((_, names)), _) => names.clone(),
            (None, m) => {
                let numeric =
                    self.ballots.iter().flat_map(|b| &b.ranking).all(|t| t.parse::<usize>().is_ok());
                let m = m.map(|(_, m)| m).unwrap_or(first.ranking.len());
                if numeric {
                    default_names(m)
                } else {
                    let mut seen: Vec<String> = Vec::new();
                    for t in self.ballots.iter().flat_map(|b| &b.ranking) {
                        if !seen.contains(t) {
                            seen.push(t.clone());
                        }
                    }
                    if seen.len() != m {
                        let line = self
                            .ballots
                            .iter()
                            .find(|b| b.ranking.len() != m)
                            .map_or(self.m.map_or(first.line, |(l, _)| l), |b| b.line);
                        return Err(err(
                            line,
                            format!("ballots name {} candidates, expected {m}", seen.len()),
                        ));
                    }
                    seen
                }
            }
        };
        let m = names.len();
        let by_name: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let named = self.candidates.is_some()
            || !self.ballots.iter().flat_map(|b| &b.ranking).all(|t| t.parse::<usize>().is_ok());
        let resolve = |t: &str, line: usize| -> Result<usize> {
            if named {
                if let Some(&i) = by_name.get(t) {
                    return Ok(i);
                }
            }
            match t.parse::<usize>() {
                Ok(i) if (1..=m).contains(&i) => Ok(i - 1),
                Ok(i) => Err(err(line, format!("candidate index {i} outside 1..={m}"))),
                Err(_) => Err(err(line, format!("unknown candidate `{t}`"))),
            }
        };

        let percent = matches!(first.count, Count::Percent(_));
        let mut scale = 1i64;
        for b in &self.ballots {
            match (&b.count, percent) {
                (Count::Percent(p), true) => scale = scale.lcm(p.denom()),
                (Count::Voters(_), false) => {}
                _ => return Err(err(b.line, "cannot mix percentages and voter counts")),
            }
        }
        let mut ballots = Vec::with_capacity(self.ballots.len());
        for b in &self.ballots {
            let count = match &b.count {
                Count::Voters(c) => *c,
                Count::Percent(p) => (p * scale).to_integer() as u64,
            };
            let mut ranking = Vec::with_capacity(m);
            for t in &b.ranking {
                let c = resolve(t, b.line)?;
                if ranking.contains(&c) {
                    return Err(err(b.line, format!("candidate `{}` appears twice", names[c])));
                }
                ranking.push(c);
            }
            if ranking.len() != m {
                let missing: Vec<&str> =
                    (0..m).filter(|c| !ranking.contains(c)).map(|c| names[c].as_str()).collect();
                return Err(err(
                    b.line,
                    format!(
                        "ranking lists {} of {m} candidates; missing {}",
                        ranking.len(),
                        missing.join(", ")
                    ),
                ));
            }
            ballots.push((count, ranking));
        }
        Profile::new(names, ballots).map_err(|e| err(end, e.to_string()))
    }
}

/// Parses a profile file into a normalized profile.
pub fn parse_profile(text: &str) -> Result<Profile> {
    parse_document(text)?.to_profile()
}

fn quote(name: &str) -> String {
    if !name.is_empty() && name.chars().all(is_bare) {
        return name.to_string();
    }
    let mut out = String::from("\"");
    for c in name.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Writes `profile` in the format read by [`parse_profile`].
pub fn serialize_profile(profile: &Profile) -> String {
    let names: Vec<String> = profile.candidates().iter().map(|n| quote(n)).collect();
    let mut out = format!("m {}\ncandidates {}\n", profile.num_candidates(), names.join(" "));
    for b in profile.ballots() {
        let ranking: Vec<&str> = b.ranking.iter().map(|&c| names[c].as_str()).collect();
        out.push_str(&format!("{}: {}\n", b.count, ranking.join(" > ")));
    }
    out
}

/// Imports PrefLib strict-complete-order data: `# NUMBER ALTERNATIVES: m`
/// and `# ALTERNATIVE NAME i: name` headers, then `count: i1,i2,…` lines
/// with 1-based indices. Other metadata lines are ignored.
pub fn parse_preflib_soc(text: &str) -> Result<Profile> {
    let mut m: Option<usize> = None;
    let mut names: HashMap<usize, String> = HashMap::new();
    let mut ballots: Vec<(usize, u64, Vec<usize>)> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(meta) = t.strip_prefix('#') {
            let Some((key, value)) = meta.split_once(':') else { continue };
            let (key, value) = (key.trim(), value.trim());
            if key == "NUMBER ALTERNATIVES" {
                m = Some(value.parse().map_err(|_| err(line, format!("bad alternative count `{value}`")))?);
            } else if let Some(idx) = key.strip_prefix("ALTERNATIVE NAME") {
                let idx: usize =
                    idx.trim().parse().map_err(|_| err(line, format!("bad alternative index in `{t}`")))?;
                names.insert(idx, value.to_string());
            } else if key == "DATA TYPE" && value != "soc" {
                return Err(err(
                    line,
                    format!("only strict complete orders (soc) are supported, got {value}"),
                ));
            }
            continue;
        }
        if t.contains('{') {
            return Err(err(line, "tied alternatives are not supported"));
        }
        let (count, order) =
            t.split_once(':').ok_or_else(|| err(line, format!("expected `count: order`, got `{t}`")))?;
        let count = match count.trim().parse::<i64>() {
            Ok(c) if c > 0 => c as u64,
            _ => return Err(err(line, format!("bad voter count `{}`", count.trim()))),
        };
        let order = order
            .split(',')
            .map(|x| {
                x.trim().parse::<usize>().map_err(|_| err(line, format!("bad alternative `{}`", x.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        ballots.push((line, count, order));
    }
    let Some(first) = ballots.first() else {
        return Err(err(last + 1, "profile has no ballots"));
    };
    let m = m.unwrap_or(first.2.len());
    let candidates: Vec<String> = match names.len() {
        0 => default_names(m),
        _ => (1..=m)
            .map(|i| names.get(&i).cloned().ok_or_else(|| err(1, format!("alternative {i} has no name"))))
            .collect::<Result<_>>()?,
    };
    let mut resolved = Vec::with_capacity(ballots.len());
    for (line, count, order) in ballots {
        if order.len() != m {
            return Err(err(line, format!("incomplete order: {} of {m} alternatives", order.len())));
        }
        let mut ranking = Vec::with_capacity(m);
        for i in order {
            if !(1..=m).contains(&i) {
                return Err(err(line, format!("alternative {i} outside 1..={m}")));
            }
            if ranking.contains(&(i - 1)) {
                return Err(err(line, format!("alternative {i} appears twice")));
            }
            ranking.push(i - 1);
        }
        resolved.push((count, ranking));
    }
    Profile::new(candidates, resolved).map_err(|e| err(last + 1, e.to_string()))
}
