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

//! Tournament-matrix rules: Simpson (maximin), Condorcet least-reversal and
//! Black.

use crate::exact::Rational;
use crate::profile::{CandidateSet, Profile};

use super::{ChoiceSet, Score, ScoreReport, ScoreSense, Trace};

/// Maximin: `Si(a) = min_b h(a,b)`, highest wins.
pub fn simpson_report(profile: &Profile) -> ScoreReport {
    let m = profile.num_candidates();
    let h = profile.tournament_matrix();
    let scores = (0..m).map(|a| h.row_min(a).map_or(profile.num_voters() as i64, |v| v as i64)).collect();
    ScoreReport::from_ints(scores, ScoreSense::HigherWins, Trace::None)
}

/// Sum of losing margins `Σ_c max(n/2 − h(d,c), 0)`, lowest wins.
pub fn clr_report(profile: &Profile) -> ScoreReport {
    let m = profile.num_candidates();
    let n = profile.num_voters() as i64;
    let h = profile.tournament_matrix();
    let margins: Vec<Vec<i64>> = (0..m)
        .map(|d| (0..m).map(|c| if c == d { 0 } else { (n - 2 * h.get(d, c) as i64).max(0) }).collect())
        .collect();
    let scores = margins.iter().map(|row| Score::Rational(Rational::new(row.iter().sum(), 2))).collect();
    ScoreReport::from_scores(scores, ScoreSense::LowerWins, Trace::ReversalMargins(margins))
}

/// Strict Condorcet winner if one exists, otherwise the Borda winners.
pub fn black_report(profile: &Profile) -> ScoreReport {
    let m = profile.num_candidates();
    let h = profile.tournament_matrix();
    let borda: Vec<Score> = (0..m).map(|a| Score::Int(h.row_sum(a) as i64)).collect();
    match h.condorcet_winner(profile.all()) {
        Some(w) => ScoreReport {
            scores: borda,
            sense: ScoreSense::HigherWins,
            winners: ChoiceSet::new(CandidateSet::singleton(w)),
            trace: Trace::CondorcetWinner(w),
        },
        None => ScoreReport::from_scores(borda, ScoreSense::HigherWins, Trace::BordaFallback),
    }
}
