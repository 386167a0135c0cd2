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

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rational_string, Rational};
use crate::profile::Profile;

use super::{Score, ScoreReport, ScoreSense, Trace};

/// Monotonic positional weights `s_1 ≥ … ≥ s_m` with `s_1 > s_m`.
///
/// A single-entry vector is accepted for one-candidate elections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoreVector(Vec<Rational>);

impl ScoreVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidScores("no weights".into()));
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidScores("weights must be non-increasing".into()));
        }
        if weights.len() > 1 && weights[0] == weights[weights.len() - 1] {
            return Err(Error::InvalidScores("first weight must exceed the last".into()));
        }
        Ok(ScoreVector(weights))
    }

    pub fn from_ints(weights: &[i64]) -> Result<Self> {
        ScoreVector::new(weights.iter().map(|&w| Rational::from_integer(w)).collect())
    }

    pub fn plurality(m: usize) -> Self {
        ScoreVector((0..m).map(|i| Rational::from_integer((i == 0) as i64)).collect())
    }

    pub fn borda(m: usize) -> Self {
        ScoreVector((0..m).map(|i| Rational::from_integer((m - 1 - i) as i64)).collect())
    }

    pub fn antiplurality(m: usize) -> Self {
        if m == 1 {
            return ScoreVector(vec![Rational::from_integer(1)]);
        }
        ScoreVector((0..m).map(|i| Rational::from_integer((i + 1 < m) as i64)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    /// `0 < s_{m−1} − s_m ≤ … ≤ s_1 − s_2`.
    pub fn is_convex(&self) -> bool {
        let diffs: Vec<Rational> = self.0.windows(2).map(|w| w[0] - w[1]).collect();
        match diffs.last() {
            Some(last) => *last > Rational::from_integer(0) && diffs.windows(2).all(|d| d[0] >= d[1]),
            None => false,
        }
    }

    /// `s_1 − (s_2+…+s_m)/(m−1) ≤ (s_1+…+s_{m−1})/(m−1) − s_m`.
    pub fn satisfies_majority_loser_inequality(&self) -> bool {
        let m = self.0.len();
        if m < 2 {
            return true;
        }
        let denom = Rational::from_integer(m as i64 - 1);
        let tail: Rational = self.0[1..].iter().sum();
        let head: Rational = self.0[..m - 1].iter().sum();
        self.0[0] - tail / denom <= head / denom - self.0[m - 1]
    }
}

impl fmt::Display for ScoreVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn scoring_report(profile: &Profile, weights: &ScoreVector) -> Result<ScoreReport> {
    let m = profile.num_candidates();
    if weights.len() != m {
        return Err(Error::InvalidScores(format!("{} weights for {m} candidates", weights.len())));
    }
    let pm = profile.positional_matrix();
    if weights.0.iter().all(|w| w.is_integer()) {
        let scores = (0..m)
            .map(|a| (0..m).map(|pos| weights.0[pos].to_integer() * pm.get(pos, a) as i64).sum::<i64>())
            .collect();
        return Ok(ScoreReport::from_ints(scores, ScoreSense::HigherWins, Trace::None));
    }
    let scores = (0..m)
        .map(|a| {
            let total: Rational =
                (0..m).map(|pos| weights.0[pos] * Rational::from_integer(pm.get(pos, a) as i64)).sum();
            Score::Rational(total)
        })
        .collect();
    Ok(ScoreReport::from_scores(scores, ScoreSense::HigherWins, Trace::None))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Rule;
    use super::*;
    use crate::profile::CandidateSet;

    fn ints(report: &ScoreReport) -> Vec<i64> {
        report
            .scores
            .iter()
            .map(|s| match s {
                Score::Int(v) => *v,
                other => panic!("unexpected {other:?}"),
            })
            .collect()
    }

    #[test]
    fn primaries_plurality_elects_hillary() {
        let p = primaries();
        let w = Rule::Plurality.winners(&p).unwrap();
        assert_eq!(p.names_of(w.set()), vec!["Hillary"]);
    }

    #[test]
    fn four_candidates_borda_and_antiplurality() {
        let p = four_candidates();
        let borda = Rule::Borda.report(&p).unwrap();
        assert_eq!(ints(&borda), vec![165, 163, 186, 86]);
        assert_eq!(borda.winners.set(), CandidateSet::singleton(2));
        let h = p.tournament_matrix();
        for a in 0..4 {
            assert_eq!(h.row_sum(a) as i64, ints(&borda)[a]);
        }
        let anti = Rule::Antiplurality.report(&p).unwrap();
        assert_eq!(ints(&anti), vec![79, 78, 100, 43]);
        assert_eq!(anti.winners.set(), CandidateSet::singleton(2));
    }

    #[test]
    fn fractional_weights() {
        let p = four_candidates();
        let sv = ScoreVector::new(vec![
            Rational::from_integer(1),
            Rational::new(1, 2),
            Rational::new(1, 3),
            Rational::from_integer(0),
        ])
        .unwrap();
        let r = scoring_report(&p, &sv).unwrap();
        assert_eq!(r.scores[3], Score::Rational(Rational::new(43, 2)));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let p = four_candidates();
        assert!(scoring_report(&p, &ScoreVector::borda(3)).is_err());
    }

    #[test]
    fn score_vector_validation() {
        assert!(ScoreVector::from_ints(&[1, 2, 0]).is_err());
        assert!(ScoreVector::from_ints(&[1, 1, 1]).is_err());
        assert!(ScoreVector::from_ints(&[2, 1, 0]).unwrap().is_convex());
        assert!(!ScoreVector::from_ints(&[1, 1, 0]).unwrap().is_convex());
        assert!(ScoreVector::from_ints(&[3, 1, 0]).unwrap().is_convex());
    }

    #[test]
    fn majority_loser_inequality() {
        assert!(ScoreVector::borda(4).satisfies_majority_loser_inequality());
        assert!(!ScoreVector::plurality(4).satisfies_majority_loser_inequality());
        assert!(ScoreVector::antiplurality(4).satisfies_majority_loser_inequality());
    }
}
