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

//! Dodgson scores.
//!
//! Only swaps that lift the target candidate can shrink one of its pairwise
//! deficits, so an optimal exchange sequence is a choice of lift height per
//! voter. The minimum total lift is found by a knapsack-style dynamic
//! program over the vector of remaining deficits.

use crate::error::{Error, Result};
use crate::profile::Profile;

/// Largest deficit-state table the dynamic program will allocate.
pub const DODGSON_STATE_LIMIT: usize = 1 << 25;

/// Fewest adjacent exchanges making `a` a strict Condorcet winner.
pub fn dodgson_score(profile: &Profile, a: usize) -> Result<u64> {
    let m = profile.num_candidates();
    let n = profile.num_voters();
    let h = profile.tournament_matrix();
    let need = n / 2 + 1;
    // Candidates `a` still has to overtake, with the number of extra votes needed.
    let short: Vec<(usize, u64)> = (0..m)
        .filter(|&b| b != a)
        .map(|b| (b, need.saturating_sub(h.get(a, b))))
        .filter(|&(_, d)| d > 0)
        .collect();
    if short.is_empty() {
        return Ok(0);
    }
    let mut dim_of = vec![usize::MAX; m];
    let mut stride = Vec::with_capacity(short.len());
    let mut states = 1usize;
    for (i, &(b, d)) in short.iter().enumerate() {
        dim_of[b] = i;
        stride.push(states);
        states = states
            .checked_mul(d as usize + 1)
            .filter(|&s| s <= DODGSON_STATE_LIMIT)
            .ok_or_else(|| Error::BudgetExceeded(format!("Dodgson state space for candidate {a}")))?;
    }
    let radix: Vec<usize> = short.iter().map(|&(_, d)| d as usize + 1).collect();
    let start: usize = short.iter().zip(&stride).map(|(&(_, d), s)| d as usize * s).sum();

    const INF: u64 = u64::MAX;
    let mut cost = vec![INF; states];
    cost[start] = 0;
    let mut digits = vec![0usize; short.len()];
    for ballot in profile.ballots() {
        let pos = ballot.position(a);
        if pos == 0 {
            continue;
        }
        // Dimensions passed when lifting by 1, 2, …, pos.
        let passed: Vec<Option<usize>> =
            (1..=pos).map(|j| Some(dim_of[ballot.ranking[pos - j]]).filter(|&d| d != usize::MAX)).collect();
        for _ in 0..ballot.count {
            for s in 0..states {
                let base = cost[s];
                if base == INF {
                    continue;
                }
                let mut rest = s;
                for (i, r) in radix.iter().enumerate() {
                    digits[i] = rest % r;
                    rest /= r;
                }
                let mut target = s;
                for (j, dim) in passed.iter().enumerate() {
                    if let Some(d) = *dim {
                        if digits[d] > 0 {
                            digits[d] -= 1;
                            target -= stride[d];
                        }
                    }
                    let c = base + j as u64 + 1;
                    if c < cost[target] {
                        cost[target] = c;
                    }
                }
            }
        }
    }
    Ok(cost[0])
}

pub fn dodgson_scores(profile: &Profile) -> Result<Vec<i64>> {
    (0..profile.num_candidates()).map(|a| dodgson_score(profile, a).map(|s| s as i64)).collect()
}
