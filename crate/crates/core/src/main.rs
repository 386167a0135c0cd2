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

//! `votelab` command-line interface.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand};

use votelab::criteria::{check_qk_majority, check_ql_veto, second_order_dominance};
use votelab::io::output::{Cell, Row, Table};
use votelab::io::{
    emit_table, parse_preflib_soc, parse_profile, render, serialize_profile, Format, QuotaTable,
    ResultDocument, Status,
};
use votelab::quota::{
    quota_majority, quota_majority_sup, quota_majority_sup_all, quota_veto, quota_veto_sup,
    quota_veto_sup_all, Quota,
};
use votelab::search::{
    condorcet_k_tuple, empirical_quota, exhaustive_criterion_search, worst_case_profile, SearchBudget,
    SearchOutcome,
};
use votelab::{Error, Profile, QuadNum, Rational, Result, Rule};

#[derive(Parser)]
#[command(name = "votelab", version, about = "Voting rules, majority and veto criteria, quota tables")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "plain")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Profile file, or `-` for standard input.
    file: PathBuf,

    /// Read PrefLib strict-complete-order data instead of the profile format.
    #[arg(long)]
    preflib: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Winners of a rule, optionally with per-candidate scores.
    Winners {
        /// Rule id, e.g. `irv`, `borda` or `scoring:3,1,0`.
        #[arg(long)]
        rule: Rule,
        /// Print every candidate's score.
        #[arg(long)]
        scores: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Tournament and positional matrices.
    Matrix {
        #[command(flatten)]
        input: Input,
    },
    /// Minimal quota for the majority criterion (`--k`) or the veto criterion (`--l`).
    #[command(group(ArgGroup::new("size").required(true).args(["k", "l"])))]
    #[command(group(ArgGroup::new("range").args(["m", "sup", "all"])))]
    Quota {
        #[arg(long)]
        rule: Rule,
        /// Size of the mutually supported set.
        #[arg(long)]
        k: Option<usize>,
        /// Number of vetoed candidates.
        #[arg(long)]
        l: Option<usize>,
        /// Only vetoes of at most half the candidates (`m ≥ 2l`).
        #[arg(long, requires = "l")]
        half: bool,
        /// Number of candidates.
        #[arg(long)]
        m: Option<usize>,
        /// Supremum over `m`.
        #[arg(long)]
        sup: bool,
        /// Supremum over `m` and over every `k` (or `l`); the value of `--k`/`--l` is ignored.
        #[arg(long)]
        all: bool,
    },
    /// Regenerate a quota table: majority, majority-small, veto or veto-half.
    Tables {
        #[arg(long, value_parser = QuotaTable::from_str)]
        which: QuotaTable,
    },
    /// Check the majority (`--k`) or veto (`--l`) criterion on a profile.
    #[command(group(ArgGroup::new("size").required(true).args(["k", "l"])))]
    Check {
        #[arg(long)]
        rule: Rule,
        /// Quota as `p/s` or `(p+r*sqrt(d))/s`.
        #[arg(long)]
        q: QuadNum,
        /// Size of the mutually supported set.
        #[arg(long)]
        k: Option<usize>,
        /// Number of vetoed candidates.
        #[arg(long)]
        l: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Search every profile up to a voter budget for a criterion violation.
    Verify {
        #[arg(long)]
        rule: Rule,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Quota to test; omit with `--empirical`.
        #[arg(long, required_unless_present = "empirical")]
        q: Option<QuadNum>,
        /// Largest electorate searched exhaustively (capped by VOTELAB_MAX_VOTERS).
        #[arg(long = "max-voters")]
        max_voters: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Seed for `--samples`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random profiles drawn beyond the exhaustive range.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        /// Profiles evaluated before reporting partial coverage.
        #[arg(long = "max-profiles", default_value_t = SearchBudget::default().max_profiles)]
        max_profiles: u128,
        #[arg(long = "max-candidates", default_value_t = SearchBudget::default().max_candidates)]
        max_candidates: usize,
        /// Report the largest support share among violating profiles instead.
        #[arg(long)]
        empirical: bool,
    },
    /// Cyclic worst-case profile for a mutual majority of share `q`.
    Worstcase {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: Rational,
        #[arg(long)]
        voters: u64,
    },
    /// Condorcet k-tuple profile.
    Ktuple {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        voters: u64,
    },
    /// Second-order positional dominance pairs.
    Dominance {
        #[command(flatten)]
        input: Input,
    },
}

fn read_profile(input: &Input) -> Result<Profile> {
    let text = if input.file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&input.file)
    }
    .map_err(|e| Error::InvalidProfile(format!("{}: {e}", input.file.display())))?;
    if input.preflib {
        parse_preflib_soc(&text)
    } else {
        parse_profile(&text)
    }
}

fn quota_table(label: String, q: &Quota) -> Table {
    Table {
        title: String::new(),
        columns: vec!["Voting rule".into(), "quota".into(), "exact".into(), "tight".into()],
        rows: vec![Row {
            label,
            cells: vec![
                Cell::quota(q),
                Cell::text(q.to_string()),
                Cell::text(if q.tight { "yes" } else { "no" }),
            ],
        }],
    }
}

fn matrix_tables(p: &Profile) -> Vec<Table> {
    let m = p.num_candidates();
    let h = p.tournament_matrix();
    let pm = p.positional_matrix();
    let names = p.candidates();
    let tournament = Table {
        title: "tournament matrix h(row, column)".into(),
        columns: std::iter::once("".to_string()).chain(names.iter().cloned()).collect(),
        rows: (0..m)
            .map(|a| Row {
                label: names[a].clone(),
                cells: (0..m)
                    .map(|b| Cell::text(if a == b { "-".to_string() } else { h.get(a, b).to_string() }))
                    .collect(),
            })
            .collect(),
    };
    let positional = Table {
        title: "positional matrix: voters ranking the row candidate at each position".into(),
        columns: std::iter::once("".to_string()).chain((1..=m).map(|i| i.to_string())).collect(),
        rows: (0..m)
            .map(|a| Row {
                label: names[a].clone(),
                cells: (0..m).map(|pos| Cell::text(pm.get(pos, a).to_string())).collect(),
            })
            .collect(),
    };
    vec![tournament, positional]
}

fn run(command: &Command, echo: String) -> Result<ResultDocument> {
    let mut doc = ResultDocument::new(echo);
    match command {
        Command::Winners { rule, scores, input } => {
            let p = read_profile(input)?;
            let report = rule.report(&p)?;
            doc = doc.with_report(rule, &p, &report).with_trace(&p, &report);
            if !scores {
                doc.scores.clear();
            }
        }
        Command::Matrix { input } => {
            let p = read_profile(input)?;
            doc.candidates = p.candidates().to_vec();
            doc.tables = matrix_tables(&p);
        }
        Command::Quota { rule, k, l, half, m, sup, all } => {
            doc.rule = Some(rule.id());
            let (q, label) = match (k, l) {
                (Some(k), _) => match (m, sup, all) {
                    (Some(m), _, _) => (quota_majority(rule, *k, *m)?, format!("{rule} k={k} m={m}")),
                    (_, _, true) => (quota_majority_sup_all(rule)?, format!("{rule} sup over k and m")),
                    _ => (quota_majority_sup(rule, *k)?, format!("{rule} k={k} sup over m")),
                },
                (None, Some(l)) => match (m, sup, all) {
                    (Some(m), _, _) => {
                        if *half && *m < 2 * l {
                            return Err(Error::OutOfRange(format!(
                                "--half needs m ≥ 2l, got m = {m}, l = {l}"
                            )));
                        }
                        (quota_veto(rule, *l, *m)?, format!("{rule} l={l} m={m}"))
                    }
                    (_, _, true) => (quota_veto_sup_all(rule, *half)?, format!("{rule} sup over l and m")),
                    _ => (quota_veto_sup(rule, *l, *half)?, format!("{rule} l={l} sup over m")),
                },
                (None, None) => unreachable!("clap requires --k or --l"),
            };
            if !q.tight {
                doc.notes.push("sufficient bound; tightness not established".into());
            }
            doc.tables.push(quota_table(label, &q));
        }
        Command::Tables { which } => {
            doc = emit_table(*which)?;
        }
        Command::Check { rule, q, k, l, input } => {
            let p = read_profile(input)?;
            doc.rule = Some(rule.id());
            doc.candidates = p.candidates().to_vec();
            let found = match (k, l) {
                (Some(k), _) => check_qk_majority(rule, &p, q, *k)?,
                (None, Some(l)) => check_ql_veto(rule, &p, q, *l)?,
                (None, None) => unreachable!("clap requires --k or --l"),
            };
            doc.winners = p.names_of(rule.winners(&p)?.set());
            if let Some(v) = found {
                doc = doc.with_violation(&v, None);
            }
        }
        Command::Verify {
            rule,
            m,
            k,
            q,
            max_voters,
            workers,
            seed,
            samples,
            max_profiles,
            max_candidates,
            empirical,
        } => {
            doc.rule = Some(rule.id());
            let budget = SearchBudget {
                max_voters: *max_voters,
                max_candidates: *max_candidates,
                samples: *samples,
                seed: *seed,
                workers: *workers,
                max_profiles: *max_profiles,
            }
            .capped_by_env()?;
            if budget.max_voters < *max_voters {
                doc.notes.push(format!("voter budget capped at {} by the environment", budget.max_voters));
            }
            if *empirical {
                let e = empirical_quota(rule, *m, *k, &budget)?;
                doc.notes.push(format!("{} profiles enumerated", e.profiles));
                match (&e.share, &e.witness) {
                    (Some(share), Some(w)) => {
                        let exact = QuadNum::from(*share);
                        doc.tables.push(Table {
                            title: String::new(),
                            columns: vec!["Voting rule".into(), "empirical quota".into()],
                            rows: vec![Row {
                                label: format!("{rule} m={m} k={k}"),
                                cells: vec![Cell::number(&exact)],
                            }],
                        });
                        doc.violation = Some(votelab::io::output::ViolationDoc::new(w, e.counts.clone()));
                    }
                    _ if e.partial => {
                        doc.notes.push("profile budget reached before any violation".into());
                        doc.set_status(Status::Partial);
                    }
                    _ => doc.notes.push("no violating profile within the voter budget".into()),
                }
            } else {
                let q = q.as_ref().expect("clap requires --q");
                match exhaustive_criterion_search(rule, *m, *k, q, &budget)? {
                    SearchOutcome::Clean { profiles, sampled } => {
                        doc.notes.push(format!(
                            "no violation among {profiles} profiles with n ≤ {}",
                            budget.max_voters
                        ));
                        if sampled > 0 {
                            doc.notes.push(format!("{sampled} random profiles with larger n also pass"));
                        }
                    }
                    SearchOutcome::Violation { violation, counts, sampled, profiles } => {
                        doc.notes.push(format!("{profiles} profiles enumerated"));
                        if sampled {
                            doc.notes.push("witness found by random sampling".into());
                        }
                        doc = doc.with_violation(&violation, Some(counts));
                    }
                    SearchOutcome::Partial { completed_voters, profiles } => {
                        doc.notes.push(format!(
                            "partial coverage: complete for n ≤ {completed_voters} ({profiles} profiles); raise --max-profiles"
                        ));
                        doc.set_status(Status::Partial);
                    }
                }
            }
        }
        Command::Worstcase { m, k, q, voters } => {
            let p = worst_case_profile(*m, *k, *q, *voters)?;
            doc.candidates = p.candidates().to_vec();
            doc.profile = Some(serialize_profile(&p));
        }
        Command::Ktuple { k, voters } => {
            let p = condorcet_k_tuple(*k, *voters)?;
            doc.candidates = p.candidates().to_vec();
            doc.profile = Some(serialize_profile(&p));
        }
        Command::Dominance { input } => {
            let p = read_profile(input)?;
            doc.candidates = p.candidates().to_vec();
            doc.tables.push(Table {
                title: "second-order positional dominance".into(),
                columns: vec!["dominant".into(), "dominated".into()],
                rows: second_order_dominance(&p)
                    .into_iter()
                    .map(|(a, b)| Row { label: p.name(a).to_string(), cells: vec![Cell::text(p.name(b))] })
                    .collect(),
            });
        }
    }
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let doc = run(&cli.command, echo.clone()).unwrap_or_else(|e| ResultDocument::error(echo, e.to_string()));
    let text = render(&doc, cli.format);
    if doc.status == Status::Error && cli.format == Format::Plain {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(doc.exit_code as u8)
}
