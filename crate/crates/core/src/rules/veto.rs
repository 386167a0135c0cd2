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

//! Proportional veto core.
//!
//! A coalition of `t` voters blocks `a` through a set `B` that all of them
//! rank above `a` when `|A∖B|·n < m·t`. For a fixed `B` the strongest
//! coalition is every voter ranking all of `B` above `a`, and only sets
//! that are intersections of upper contour sets of `a` can be maximal, so
//! the search runs over that intersection closure.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::profile::{CandidateSet, Profile};

use super::{ChoiceSet, Score, ScoreReport, ScoreSense, Trace};

/// Most distinct upper-contour intersections examined per candidate.
pub const VETO_INTERSECTION_LIMIT: usize = 1 << 20;

/// Witness that a candidate is outside the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocking {
    pub candidate: usize,
    pub coalition_size: u64,
    /// Candidates every coalition member ranks above `candidate`.
    pub preferred: CandidateSet,
}

/// Largest blocking margin `m·t − |A∖B|·n` against `a`, with its witness.
fn strongest_block(profile: &Profile, a: usize) -> Result<(i64, Option<Blocking>)> {
    let m = profile.num_candidates() as i64;
    let n = profile.num_voters() as i64;
    let uppers: Vec<(CandidateSet, u64)> = profile.ballots().iter().map(|b| (b.above(a), b.count)).collect();
    let mut closure: HashSet<CandidateSet> = HashSet::new();
    for &(u, _) in &uppers {
        if u.is_empty() {
            continue;
        }
        let fresh: Vec<CandidateSet> = closure
            .iter()
            .map(|x| x.intersection(u))
            .filter(|x| !x.is_empty())
            .chain(std::iter::once(u))
            .collect();
        closure.extend(fresh);
        if closure.len() > VETO_INTERSECTION_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "veto core search for candidate {a} exceeds {VETO_INTERSECTION_LIMIT} sets"
            )));
        }
    }
    let mut sets: Vec<CandidateSet> = closure.into_iter().collect();
    sets.sort_by_key(|s| s.bits());
    let mut best = (0i64, None);
    for set in sets {
        let t: u64 = uppers.iter().filter(|(u, _)| set.is_subset(*u)).map(|(_, c)| c).sum();
        let margin = m * t as i64 - (m - set.len() as i64) * n;
        if margin > best.0 {
            best = (margin, Some(Blocking { candidate: a, coalition_size: t, preferred: set }));
        }
    }
    Ok(best)
}

/// Scores are the largest blocking margins; the core is the set of
/// candidates scoring zero.
pub fn veto_core_report(profile: &Profile) -> Result<ScoreReport> {
    let mut scores = Vec::with_capacity(profile.num_candidates());
    let mut witnesses = Vec::new();
    let mut core = CandidateSet::EMPTY;
    for a in 0..profile.num_candidates() {
        let (margin, witness) = strongest_block(profile, a)?;
        scores.push(Score::Int(margin));
        match witness {
            Some(w) => witnesses.push(w),
            None => core.insert(a),
        }
    }
    Ok(ScoreReport {
        scores,
        sense: ScoreSense::LowerWins,
        winners: ChoiceSet::new(core),
        trace: Trace::Blocking(witnesses),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn four_candidates_core() {
        let p = four_candidates();
        let r = veto_core_report(&p).unwrap();
        assert_eq!(r.winners.set(), CandidateSet::from_iter([0, 1]));
        let Trace::Blocking(blocks) = r.trace else { panic!("no trace") };
        let c = blocks.iter().find(|b| b.candidate == 2).unwrap();
        assert_eq!(c.coalition_size, 57);
        assert_eq!(c.preferred, CandidateSet::from_iter([0, 1]));
    }

    #[test]
    fn cycle_core_is_everyone() {
        let r = veto_core_report(&cycle3()).unwrap();
        assert_eq!(r.winners.len(), 3);
    }

    #[test]
    fn single_voter_keeps_top() {
        let p = Profile::with_default_names(4, vec![(1, vec![2, 0, 3, 1])]).unwrap();
        let r = veto_core_report(&p).unwrap();
        assert_eq!(r.winners.set(), CandidateSet::singleton(2));
    }

    /// Blocking tested over every voter sub-multiset and every candidate set.
    fn brute_blocked(p: &Profile, a: usize) -> bool {
        let m = p.num_candidates() as u64;
        let n = p.num_voters();
        let others: Vec<usize> = (0..p.num_candidates()).filter(|&b| b != a).collect();
        for mask in 1u32..(1 << others.len()) {
            let set: CandidateSet =
                others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &b)| b).collect();
            let t: u64 =
                p.ballots().iter().filter(|b| set.iter().all(|c| b.prefers(c, a))).map(|b| b.count).sum();
            if (m - set.len() as u64) * n < m * t {
                return true;
            }
        }
        false
    }

    #[test]
    fn matches_subset_enumeration() {
        let p = primaries();
        let r = veto_core_report(&p).unwrap();
        for a in 0..p.num_candidates() {
            assert_eq!(!r.winners.contains(a), brute_blocked(&p, a), "{}", p.name(a));
        }
    }
}
