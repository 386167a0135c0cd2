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

//! Young scores by branch and bound over per-ballot-type removal counts.

use crate::profile::Profile;

struct Search<'a> {
    /// Per removable ballot type: (multiplicity, effect of one removal on each margin).
    types: &'a [(u64, Vec<i64>)],
    best: u64,
}

impl Search<'_> {
    fn run(&mut self, index: usize, margins: &mut [i64], used: u64) {
        let deficit = margins.iter().map(|&d| (-d).max(0) as u64).max().unwrap_or(0);
        if deficit == 0 {
            self.best = self.best.min(used);
            return;
        }
        // Each removal raises any single margin by at most one.
        if used + deficit >= self.best || index == self.types.len() {
            return;
        }
        let (count, effect) = &self.types[index];
        for r in (0..=*count).rev() {
            for (d, e) in margins.iter_mut().zip(effect) {
                *d += e * r as i64;
            }
            self.run(index + 1, margins, used + r);
            for (d, e) in margins.iter_mut().zip(effect) {
                *d -= e * r as i64;
            }
        }
    }
}

/// Fewest voters whose removal leaves `a` a weak Condorcet winner.
pub fn young_score(profile: &Profile, a: usize) -> u64 {
    let m = profile.num_candidates();
    let h = profile.tournament_matrix();
    let others: Vec<usize> = (0..m).filter(|&b| b != a).collect();
    let mut margins: Vec<i64> = others.iter().map(|&b| h.get(a, b) as i64 - h.get(b, a) as i64).collect();
    // Ballots topped by `a` only hurt `a` when removed.
    let mut types: Vec<(u64, Vec<i64>)> = profile
        .ballots()
        .iter()
        .filter(|ballot| ballot.ranking[0] != a)
        .map(|ballot| {
            let effect = others.iter().map(|&b| if ballot.prefers(b, a) { 1 } else { -1 }).collect();
            (ballot.count, effect)
        })
        .collect();
    types.sort_by_key(|(_, e)| std::cmp::Reverse(e.iter().filter(|&&x| x > 0).count()));
    let mut search = Search { types: &types, best: profile.num_voters() };
    search.run(0, &mut margins, 0);
    search.best
}

pub fn young_scores(profile: &Profile) -> Vec<i64> {
    (0..profile.num_candidates()).map(|a| young_score(profile, a) as i64).collect()
}
