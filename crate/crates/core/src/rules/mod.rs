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

//! Voting rules as choice correspondences. Every rule returns the full set
//! of tied winners; none of them breaks ties.

mod condorcet;
mod dodgson;
mod median;
mod positional;
mod runoff;
mod veto;
mod young;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rational_string, QuadNum, Rational};
use crate::profile::{CandidateSet, Profile};

pub use condorcet::{black_report, clr_report, simpson_report};
pub use dodgson::{dodgson_score, dodgson_scores};
pub use median::{convex_median_report, convex_median_score, t12_report, t12_score};
pub use positional::{scoring_report, ScoreVector};
pub use runoff::{irv_report, runoff_report, Round};
pub use veto::{veto_core_report, Blocking};
pub use young::{young_score, young_scores};

/// Nonempty set of winning candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChoiceSet(CandidateSet);

impl ChoiceSet {
    pub(crate) fn new(set: CandidateSet) -> Self {
        assert!(!set.is_empty(), "a choice set is never empty");
        ChoiceSet(set)
    }

    pub fn set(self) -> CandidateSet {
        self.0
    }

    pub fn contains(self, c: usize) -> bool {
        self.0.contains(c)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.0.iter()
    }

    pub fn is_subset(self, other: CandidateSet) -> bool {
        self.0.is_subset(other)
    }
}

/// Per-candidate score of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Score {
    Int(i64),
    Rational(Rational),
    Quad(QuadNum),
}

impl Score {
    pub fn exact(&self) -> QuadNum {
        match self {
            Score::Int(v) => QuadNum::integer(*v),
            Score::Rational(r) => QuadNum::from(*r),
            Score::Quad(q) => q.clone(),
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Int(v) => write!(f, "{v}"),
            Score::Rational(r) => f.write_str(&rational_string(r)),
            Score::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// How the winners relate to the reported scores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreSense {
    HigherWins,
    LowerWins,
    /// Scores are informative only (first-round tallies of runoff rules).
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trace {
    None,
    /// Majority winner short-circuited the scoring.
    MajorityWinner(usize),
    CondorcetWinner(usize),
    BordaFallback,
    Finalists(Vec<(usize, usize)>),
    Elimination {
        rounds: Vec<Round>,
        ties: bool,
    },
    Blocking(Vec<Blocking>),
    /// Doubled losing margins `max(n − 2h(d,c), 0)` per pair.
    ReversalMargins(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreReport {
    pub scores: Vec<Score>,
    pub sense: ScoreSense,
    pub winners: ChoiceSet,
    pub trace: Trace,
}

impl ScoreReport {
    pub(crate) fn from_scores(scores: Vec<Score>, sense: ScoreSense, trace: Trace) -> Self {
        let exact: Vec<QuadNum> = scores.iter().map(Score::exact).collect();
        let best = match sense {
            ScoreSense::HigherWins => exact.iter().max(),
            _ => exact.iter().min(),
        }
        .expect("at least one candidate")
        .clone();
        let winners = exact.iter().enumerate().filter(|(_, s)| **s == best).map(|(c, _)| c).collect();
        ScoreReport { scores, sense, winners: ChoiceSet::new(winners), trace }
    }

    pub(crate) fn from_ints(scores: Vec<i64>, sense: ScoreSense, trace: Trace) -> Self {
        let best = match sense {
            ScoreSense::HigherWins => scores.iter().max(),
            _ => scores.iter().min(),
        }
        .copied()
        .expect("at least one candidate");
        let winners = scores.iter().enumerate().filter(|(_, &s)| s == best).map(|(c, _)| c).collect();
        ScoreReport {
            scores: scores.into_iter().map(Score::Int).collect(),
            sense,
            winners: ChoiceSet::new(winners),
            trace,
        }
    }
}

/// Rule identifiers shared by the CLI, criteria checkers and quota tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Plurality,
    Runoff,
    InstantRunoff,
    Borda,
    Scoring(ScoreVector),
    Antiplurality,
    Simpson,
    Young,
    Dodgson,
    Clr,
    Black,
    ConvexMedian,
    VetoCore,
    T12,
}

impl Rule {
    /// Every rule whose score vector does not depend on `m`.
    pub const NAMED: [Rule; 13] = [
        Rule::Plurality,
        Rule::Runoff,
        Rule::InstantRunoff,
        Rule::Borda,
        Rule::Antiplurality,
        Rule::Simpson,
        Rule::Young,
        Rule::Dodgson,
        Rule::Clr,
        Rule::Black,
        Rule::ConvexMedian,
        Rule::VetoCore,
        Rule::T12,
    ];

    pub fn id(&self) -> String {
        match self {
            Rule::Scoring(sv) => format!("scoring:{sv}"),
            other => other.static_id().to_string(),
        }
    }

    fn static_id(&self) -> &'static str {
        match self {
            Rule::Plurality => "plurality",
            Rule::Runoff => "runoff",
            Rule::InstantRunoff => "irv",
            Rule::Borda => "borda",
            Rule::Scoring(_) => "scoring",
            Rule::Antiplurality => "antiplurality",
            Rule::Simpson => "simpson",
            Rule::Young => "young",
            Rule::Dodgson => "dodgson",
            Rule::Clr => "clr",
            Rule::Black => "black",
            Rule::ConvexMedian => "convexmedian",
            Rule::VetoCore => "vetocore",
            Rule::T12 => "t12rule",
        }
    }

    /// Human-readable name used in tables.
    pub fn display_name(&self) -> &'static str {
        match self {
            Rule::Plurality => "Plurality",
            Rule::Runoff => "Plurality with runoff",
            Rule::InstantRunoff => "Instant-runoff",
            Rule::Borda => "Borda",
            Rule::Scoring(_) => "Scoring rule",
            Rule::Antiplurality => "Inverse plurality",
            Rule::Simpson => "Simpson",
            Rule::Young => "Young",
            Rule::Dodgson => "Dodgson",
            Rule::Clr => "Condorcet least-reversal",
            Rule::Black => "Black",
            Rule::ConvexMedian => "Convex median",
            Rule::VetoCore => "Proportional veto core",
            Rule::T12 => "2-PD tradeoff rule",
        }
    }

    /// Full score report for `profile`.
    pub fn report(&self, profile: &Profile) -> Result<ScoreReport> {
        let m = profile.num_candidates();
        match self {
            Rule::Plurality => scoring_report(profile, &ScoreVector::plurality(m)),
            Rule::Borda => scoring_report(profile, &ScoreVector::borda(m)),
            Rule::Antiplurality => scoring_report(profile, &ScoreVector::antiplurality(m)),
            Rule::Scoring(sv) => scoring_report(profile, sv),
            Rule::Runoff => Ok(runoff_report(profile)),
            Rule::InstantRunoff => Ok(irv_report(profile)),
            Rule::Simpson => Ok(simpson_report(profile)),
            Rule::Clr => Ok(clr_report(profile)),
            Rule::Black => Ok(black_report(profile)),
            Rule::Young => {
                Ok(ScoreReport::from_ints(young_scores(profile), ScoreSense::LowerWins, Trace::None))
            }
            Rule::Dodgson => {
                Ok(ScoreReport::from_ints(dodgson_scores(profile)?, ScoreSense::LowerWins, Trace::None))
            }
            Rule::ConvexMedian => Ok(convex_median_report(profile)),
            Rule::VetoCore => veto_core_report(profile),
            Rule::T12 => Ok(t12_report(profile)),
        }
    }

    pub fn winners(&self, profile: &Profile) -> Result<ChoiceSet> {
        self.report(profile).map(|r| r.winners)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(list) = s.strip_prefix("scoring:") {
            let weights = list
                .trim_matches(|c| c == '<' || c == '>')
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            return ScoreVector::new(weights).map(Rule::Scoring);
        }
        let rule = match s {
            "plurality" => Rule::Plurality,
            "runoff" => Rule::Runoff,
            "irv" => Rule::InstantRunoff,
            "borda" => Rule::Borda,
            "antiplurality" => Rule::Antiplurality,
            "simpson" => Rule::Simpson,
            "young" => Rule::Young,
            "dodgson" => Rule::Dodgson,
            "clr" => Rule::Clr,
            "black" => Rule::Black,
            "convexmedian" => Rule::ConvexMedian,
            "vetocore" => Rule::VetoCore,
            "t12rule" => Rule::T12,
            other => return Err(Error::UnknownRule(other.to_string())),
        };
        Ok(rule)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::profile::Profile;

    pub fn primaries() -> Profile {
        // Bernie, Donald, Hillary, John, Ted
        let names = ["Bernie", "Donald", "Hillary", "John", "Ted"].map(String::from).to_vec();
        Profile::new(
            names,
            vec![
                (22, vec![2, 3, 0, 4, 1]),
                (21, vec![1, 3, 4, 0, 2]),
                (18, vec![3, 4, 0, 1, 2]),
                (19, vec![4, 0, 3, 1, 2]),
                (20, vec![0, 3, 4, 2, 1]),
            ],
        )
        .unwrap()
    }

    pub fn four_candidates() -> Profile {
        Profile::with_default_names(
            4,
            vec![
                (29, vec![0, 1, 2, 3]),
                (28, vec![1, 0, 2, 3]),
                (22, vec![2, 3, 0, 1]),
                (21, vec![2, 3, 1, 0]),
            ],
        )
        .unwrap()
    }

    pub fn cycle3() -> Profile {
        Profile::with_default_names(3, vec![(1, vec![0, 1, 2]), (1, vec![1, 2, 0]), (1, vec![2, 0, 1])])
            .unwrap()
    }
}
