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

//! Plurality with runoff and instant-runoff voting.

use std::collections::HashMap;

use crate::profile::{CandidateSet, Profile};

use super::{ChoiceSet, Score, ScoreReport, ScoreSense, Trace};

/// Top-of-ballot tallies restricted to the surviving candidates.
fn tallies(profile: &Profile, remaining: CandidateSet) -> Vec<u64> {
    let mut t = vec![0u64; profile.num_candidates()];
    for ballot in profile.ballots() {
        if let Some(c) = ballot.top_within(remaining) {
            t[c] += ballot.count;
        }
    }
    t
}

/// Finalist pairs of every admissible resolution of first-round ties,
/// each duel decided by simple majority; winners are the union.
pub fn runoff_report(profile: &Profile) -> ScoreReport {
    let m = profile.num_candidates();
    let pm = profile.positional_matrix();
    let firsts: Vec<u64> = (0..m).map(|a| pm.get(0, a)).collect();
    let scores = firsts.iter().map(|&v| Score::Int(v as i64)).collect();
    if m == 1 {
        return ScoreReport {
            scores,
            sense: ScoreSense::Informational,
            winners: ChoiceSet::new(CandidateSet::singleton(0)),
            trace: Trace::Finalists(Vec::new()),
        };
    }
    let top = *firsts.iter().max().expect("m ≥ 1");
    let leaders: Vec<usize> = (0..m).filter(|&a| firsts[a] == top).collect();
    let mut pairs = Vec::new();
    if leaders.len() >= 2 {
        for (i, &a) in leaders.iter().enumerate() {
            for &b in &leaders[i + 1..] {
                pairs.push((a, b));
            }
        }
    } else {
        let leader = leaders[0];
        let second = (0..m).filter(|&a| a != leader).map(|a| firsts[a]).max().expect("m ≥ 2");
        for b in (0..m).filter(|&b| b != leader && firsts[b] == second) {
            pairs.push((leader.min(b), leader.max(b)));
        }
    }
    let h = profile.tournament_matrix();
    let mut winners = CandidateSet::EMPTY;
    for &(a, b) in &pairs {
        let (ha, hb) = (h.get(a, b), h.get(b, a));
        if ha >= hb {
            winners.insert(a);
        }
        if hb >= ha {
            winners.insert(b);
        }
    }
    ScoreReport {
        scores,
        sense: ScoreSense::Informational,
        winners: ChoiceSet::new(winners),
        trace: Trace::Finalists(pairs),
    }
}

/// One elimination round along the reported path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub remaining: CandidateSet,
    pub tallies: Vec<u64>,
    /// Candidates tied at the minimum tally in this round.
    pub lowest: CandidateSet,
}

fn irv_winners(
    profile: &Profile,
    remaining: CandidateSet,
    memo: &mut HashMap<CandidateSet, CandidateSet>,
) -> CandidateSet {
    if remaining.len() == 1 {
        return remaining;
    }
    if let Some(&w) = memo.get(&remaining) {
        return w;
    }
    let lowest = lowest_set(&tallies(profile, remaining), remaining);
    let mut winners = CandidateSet::EMPTY;
    for c in lowest.iter() {
        winners = winners.union(irv_winners(profile, remaining.without(c), memo));
    }
    memo.insert(remaining, winners);
    winners
}

fn lowest_set(tallies: &[u64], remaining: CandidateSet) -> CandidateSet {
    let min = remaining.iter().map(|c| tallies[c]).min().expect("nonempty");
    remaining.iter().filter(|&c| tallies[c] == min).collect()
}

/// Instant-runoff: repeatedly drop a candidate with the fewest first
/// preferences among survivors. When several candidates tie for fewest,
/// every choice of which one to drop is followed and the winners of all
/// branches are pooled.
///
/// The trace follows the branch that always drops the lowest-indexed tied
/// candidate; `ties` records whether any branching happened on it.
pub fn irv_report(profile: &Profile) -> ScoreReport {
    let all = profile.all();
    let first = tallies(profile, all);
    let mut memo = HashMap::new();
    let winners = irv_winners(profile, all, &mut memo);

    let mut rounds = Vec::new();
    let mut ties = false;
    let mut remaining = all;
    while remaining.len() > 1 {
        let t = tallies(profile, remaining);
        let lowest = lowest_set(&t, remaining);
        ties |= lowest.len() > 1;
        rounds.push(Round { remaining, tallies: t, lowest });
        remaining = remaining.without(lowest.first().expect("nonempty"));
    }
    ScoreReport {
        scores: first.into_iter().map(|v| Score::Int(v as i64)).collect(),
        sense: ScoreSense::Informational,
        winners: ChoiceSet::new(winners),
        trace: Trace::Elimination { rounds, ties },
    }
}
