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

//! Naive reference implementations for cross-checking the rules module on
//! tiny profiles. They share no code with the optimized versions beyond
//! the profile type.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::profile::{CandidateSet, Profile};
use crate::search::generate::Compositions;

/// Pairwise wins of `a` computed from scratch over `(count, ranking)` pairs.
fn pairwise(ballots: &[(u64, &[usize])], a: usize, b: usize) -> u64 {
    ballots
        .iter()
        .filter(|(_, r)| r.iter().position(|&x| x == a) < r.iter().position(|&x| x == b))
        .map(|(c, _)| c)
        .sum()
}

/// Fewest removed voters leaving `a` a weak Condorcet winner, by trying
/// every removal multiset in order of size.
pub fn oracle_young_score(profile: &Profile, a: usize, max_checks: u64) -> Result<u64> {
    let m = profile.num_candidates();
    let types: Vec<(u64, &[usize])> =
        profile.ballots().iter().map(|b| (b.count, b.ranking.as_slice())).collect();
    let mut checks = 0u64;
    for size in 0..=profile.num_voters() {
        for removal in Compositions::new(size, types.len()) {
            if removal.iter().zip(&types).any(|(r, (c, _))| r > c) {
                continue;
            }
            checks += 1;
            if checks > max_checks {
                return Err(Error::BudgetExceeded(format!("Young oracle after {max_checks} checks")));
            }
            let rest: Vec<(u64, &[usize])> =
                types.iter().zip(&removal).map(|(&(c, r), &x)| (c - x, r)).collect();
            if (0..m).filter(|&b| b != a).all(|b| pairwise(&rest, a, b) >= pairwise(&rest, b, a)) {
                return Ok(size);
            }
        }
    }
    unreachable!("removing every voter always succeeds")
}

/// Voters as a sorted list of rankings, so that states equal up to voter
/// identity coincide.
type State = Vec<Vec<u8>>;

/// Total number of extra pairwise wins `a` still needs.
fn deficit(state: &State, a: u8, m: usize, need: u64) -> u64 {
    let mut wins = vec![0u64; m];
    for r in state {
        let pa = r.iter().position(|&x| x == a).expect("permutation");
        for &b in &r[pa + 1..] {
            wins[b as usize] += 1;
        }
    }
    (0..m).filter(|&b| b != a as usize).map(|b| need.saturating_sub(wins[b])).sum()
}

/// Fewest adjacent swaps, anywhere in any voter's ranking, making `a` a
/// strict Condorcet winner.
///
/// Best-first search over unrestricted swap sequences. Each swap changes a
/// single pairwise count by one, so the summed deficit never overestimates
/// the remaining distance and the first goal popped is optimal.
pub fn oracle_dodgson_score(profile: &Profile, a: usize, max_nodes: u64) -> Result<u64> {
    let m = profile.num_candidates();
    let need = profile.num_voters() / 2 + 1;
    let a = a as u8;
    let mut start: State = profile
        .ballots()
        .iter()
        .flat_map(|b| {
            let r: Vec<u8> = b.ranking.iter().map(|&x| x as u8).collect();
            std::iter::repeat_n(r, b.count as usize)
        })
        .collect();
    start.sort();
    let h0 = deficit(&start, a, m, need);
    let mut best: HashMap<State, u64> = HashMap::from([(start.clone(), 0)]);
    let mut open = BinaryHeap::from([Reverse((h0, 0u64, start))]);
    let mut nodes = 0u64;
    while let Some(Reverse((f, g, state))) = open.pop() {
        if f == g {
            return Ok(g);
        }
        if best.get(&state).is_some_and(|&b| b < g) {
            continue;
        }
        nodes += 1;
        if nodes > max_nodes {
            return Err(Error::BudgetExceeded(format!("Dodgson oracle after {max_nodes} nodes")));
        }
        for v in 0..state.len() {
            if v > 0 && state[v] == state[v - 1] {
                continue;
            }
            for i in 0..m - 1 {
                let mut next = state.clone();
                next[v].swap(i, i + 1);
                next.sort();
                let g2 = g + 1;
                if best.get(&next).is_some_and(|&b| b <= g2) {
                    continue;
                }
                let h = deficit(&next, a, m, need);
                best.insert(next.clone(), g2);
                open.push(Reverse((g2 + h, g2, next)));
            }
        }
    }
    unreachable!("lifting `a` to every top position always succeeds")
}

/// Instant-runoff winners pooled over every order of single eliminations
/// among minimum-tally candidates. Plain recursion over restricted
/// profiles, without memoization.
pub fn parallel_universe_irv(profile: &Profile, max_calls: u64) -> Result<CandidateSet> {
    let mut calls = 0u64;
    let labels: Vec<usize> = (0..profile.num_candidates()).collect();
    universe(profile, &labels, &mut calls, max_calls)
}

fn universe(profile: &Profile, labels: &[usize], calls: &mut u64, max_calls: u64) -> Result<CandidateSet> {
    *calls += 1;
    if *calls > max_calls {
        return Err(Error::BudgetExceeded(format!("IRV universes after {max_calls} calls")));
    }
    let m = profile.num_candidates();
    if m == 1 {
        return Ok(CandidateSet::singleton(labels[0]));
    }
    let mut firsts = vec![0u64; m];
    for b in profile.ballots() {
        firsts[b.ranking[0]] += b.count;
    }
    let low = *firsts.iter().min().expect("m ≥ 1");
    let mut winners = CandidateSet::EMPTY;
    for c in (0..m).filter(|&c| firsts[c] == low) {
        let keep: CandidateSet = (0..m).filter(|&x| x != c).collect();
        let sub = profile.restrict(keep)?;
        let sub_labels: Vec<usize> = keep.iter().map(|x| labels[x]).collect();
        winners = winners.union(universe(&sub, &sub_labels, calls, max_calls)?);
    }
    Ok(winners)
}
