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

//! Truncated-Borda depth rules: the convex median and the tradeoff rule
//! scoring `max{t ≥ 1 : (3t+1)/(2(t+1)) · B_t(a)/t ≤ n/2}`.
//!
//! On a unit piece `t ∈ [j, j+1]` the truncated Borda score is linear,
//! `B_t(a) = t·N_j − C_j` with `N_j = Σ_{i≤j+1} n_i(a)` and
//! `C_j = Σ_{i≤j+1} (i−1)·n_i(a)`, so each defining inequality is linear
//! or quadratic in `t` with integer coefficients. Pieces are scanned in
//! increasing `t` until the inequality first fails inside one.
//!
//! A majority winner is elected outright. Its reported score is the root
//! of the first piece, which lies below 1.

use crate::exact::{QuadNum, Rational};
use crate::profile::{CandidateSet, PositionalMatrix, Profile};

use super::{ChoiceSet, Score, ScoreReport, ScoreSense, Trace};

/// `(N_j, C_j)` for the piece starting at `t = j`.
fn piece(column: &[u64], j: usize) -> (i128, i128) {
    let last = j.min(column.len() - 1);
    let mut big_n = 0i128;
    let mut c = 0i128;
    for (i, &count) in column.iter().enumerate().take(last + 1) {
        big_n += count as i128;
        c += i as i128 * count as i128;
    }
    (big_n, c)
}

/// Largest `t` with `B_t(a)/t ≤ n/2`.
pub fn convex_median_score(pm: &PositionalMatrix, a: usize) -> Rational {
    let n = pm.num_voters() as i128;
    let m = pm.num_candidates();
    let column = pm.column(a);
    let mut j = 1usize;
    loop {
        // t·(2N − n) ≤ 2C on this piece.
        let (big_n, c) = piece(&column, j);
        let slope = 2 * big_n - n;
        let exceeds = |t: i128| t * slope > 2 * c;
        if j + 1 >= m || exceeds(j as i128 + 1) {
            // Past the last position the piece is unbounded; B_t/t → n.
            return Rational::new((2 * c) as i64, slope as i64);
        }
        j += 1;
    }
}

/// Largest `t` with `(3t+1)·B_t(a) ≤ n·t·(t+1)`.
pub fn t12_score(pm: &PositionalMatrix, a: usize) -> QuadNum {
    let n = pm.num_voters() as i128;
    let m = pm.num_candidates();
    let column = pm.column(a);
    let mut j = 1usize;
    loop {
        // (3N − n)t² + (N − 3C − n)t − C ≤ 0 on this piece.
        let (big_n, c) = piece(&column, j);
        let (qa, qb, qc) = (3 * big_n - n, big_n - 3 * c - n, -c);
        let value = |t: i128| qa * t * t + qb * t + qc;
        if j + 1 >= m || value(j as i128 + 1) > 0 {
            return QuadNum::upper_branch_root(qa, qb, qc).expect("the quadratic changes sign on this piece");
        }
        j += 1;
    }
}

fn report_with_override(profile: &Profile, scores: Vec<Score>) -> ScoreReport {
    match profile.majority_winner() {
        Some(w) => ScoreReport {
            scores,
            sense: ScoreSense::LowerWins,
            winners: ChoiceSet::new(CandidateSet::singleton(w)),
            trace: Trace::MajorityWinner(w),
        },
        None => ScoreReport::from_scores(scores, ScoreSense::LowerWins, Trace::None),
    }
}

pub fn convex_median_report(profile: &Profile) -> ScoreReport {
    let pm = profile.positional_matrix();
    let scores =
        (0..profile.num_candidates()).map(|a| Score::Rational(convex_median_score(&pm, a))).collect();
    report_with_override(profile, scores)
}

/// Lowest tradeoff score wins. Ties at the floor `t = 1` can pair a
/// candidate with one that positionally dominates it, so dominated members
/// of the tie are dropped. A dominator never scores higher, hence the tie
/// always keeps an undominated member.
pub fn t12_report(profile: &Profile) -> ScoreReport {
    let pm = profile.positional_matrix();
    let scores = (0..profile.num_candidates()).map(|a| Score::Quad(t12_score(&pm, a))).collect();
    let mut report = report_with_override(profile, scores);
    let dominated = crate::criteria::dominated_winners(profile, report.winners);
    report.winners = ChoiceSet::new(report.winners.set().difference(dominated));
    report
}
