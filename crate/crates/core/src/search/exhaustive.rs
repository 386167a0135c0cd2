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

//! Exhaustive criterion search over anonymous profiles.
//!
//! Profiles are count vectors over the `m!` rankings in lexicographic order.
//! All rules are neutral, so the supported set is fixed to `B = {0, …, k−1}`
//! and only profiles whose `B`-support exceeds `q·n` are visited. Levels run
//! by increasing `n`; within a level the support compositions are split
//! across workers and the lexicographically smallest violation is kept.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::criteria::{exceeds_quota, Violation};
use crate::error::{Error, Result};
use crate::exact::{QuadNum, Rational};
use crate::profile::CandidateSet;
use crate::rules::Rule;

use super::generate::{multiset_count, permutations, profile_from_counts, Compositions};

/// Environment variable capping `max_voters` for every search.
pub const MAX_VOTERS_ENV: &str = "VOTELAB_MAX_VOTERS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest electorate enumerated exhaustively.
    pub max_voters: u64,
    pub max_candidates: usize,
    /// Random profiles drawn past the exhaustive range, with
    /// `max_voters < n ≤ 2·max_voters`.
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; 0 lets the pool pick.
    pub workers: usize,
    /// Profiles evaluated before the search reports partial coverage.
    pub max_profiles: u128,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_voters: 12,
            max_candidates: 5,
            samples: 0,
            seed: 0,
            workers: 0,
            max_profiles: 50_000_000,
        }
    }
}

impl SearchBudget {
    /// Applies the `VOTELAB_MAX_VOTERS` cap, if set.
    pub fn capped_by_env(mut self) -> Result<Self> {
        if let Ok(text) = std::env::var(MAX_VOTERS_ENV) {
            let cap: u64 =
                text.trim().parse().map_err(|_| Error::InvalidNumber(format!("{MAX_VOTERS_ENV}={text}")))?;
            self.max_voters = self.max_voters.min(cap);
        }
        Ok(self)
    }

    fn validate(&self, m: usize, k: usize) -> Result<()> {
        if self.max_voters < 1 {
            return Err(Error::OutOfRange("max voters must be at least 1".into()));
        }
        if m > self.max_candidates {
            return Err(Error::OutOfRange(format!(
                "m = {m} exceeds the candidate budget {}",
                self.max_candidates
            )));
        }
        if k < 1 || k >= m {
            return Err(Error::OutOfRange(format!("k = {k} needs 1 ≤ k < m = {m}")));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::OutOfRange(format!("worker pool: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// No violation among `profiles` enumerated and `sampled` random ones.
    Clean { profiles: u128, sampled: u64 },
    Violation {
        violation: Violation,
        /// Ballot counts per ranking, in lexicographic ranking order.
        counts: Vec<u64>,
        /// Found by random sampling rather than enumeration.
        sampled: bool,
        profiles: u128,
    },
    /// Enumeration stopped: every `n ≤ completed_voters` was covered, the
    /// next level would exceed the profile budget.
    Partial { completed_voters: u64, profiles: u128 },
}

impl SearchOutcome {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            SearchOutcome::Violation { violation, .. } => Some(violation),
            _ => None,
        }
    }
}

/// Rankings split by whether their top `k` is `B`.
struct Types {
    m: usize,
    k: usize,
    all: Vec<Vec<usize>>,
    support: Vec<usize>,
    other: Vec<usize>,
}

impl Types {
    fn new(m: usize, k: usize) -> Self {
        let all = permutations(m);
        let b = CandidateSet::full(k);
        let (support, other) =
            (0..all.len()).partition(|&t| all[t][..k].iter().copied().collect::<CandidateSet>() == b);
        Types { m, k, all, support, other }
    }

    fn slice_size(&self, n: u64, s: u64) -> u128 {
        multiset_count(s, self.support.len()) * multiset_count(n - s, self.other.len())
    }

    fn counts(&self, sup: &[u64], oth: &[u64]) -> Vec<u64> {
        let mut counts = vec![0; self.all.len()];
        for (&t, &c) in self.support.iter().zip(sup) {
            counts[t] = c;
        }
        for (&t, &c) in self.other.iter().zip(oth) {
            counts[t] = c;
        }
        counts
    }

    /// The violation at `counts`, if the rule picks anyone outside `B`.
    fn evaluate(&self, rule: &Rule, counts: &[u64], support: u64) -> Result<Option<Violation>> {
        let profile = profile_from_counts(self.m, &self.all, counts)?;
        let b_set = CandidateSet::full(self.k);
        let winners = rule.winners(&profile)?;
        Ok((!winners.is_subset(b_set)).then_some(Violation { b_set, support, winners, profile }))
    }

    /// Lexicographically smallest violation with exactly `s` of `n` voters
    /// ranking `B` on top.
    fn scan_slice(&self, rule: &Rule, n: u64, s: u64) -> Result<Option<(Vec<u64>, Violation)>> {
        let chunks: Vec<Vec<u64>> = Compositions::new(s, self.support.len()).collect();
        let found: Vec<(Vec<u64>, Violation)> = chunks
            .par_iter()
            .map(|sup| -> Result<Option<(Vec<u64>, Violation)>> {
                let mut best: Option<(Vec<u64>, Violation)> = None;
                for oth in Compositions::new(n - s, self.other.len()) {
                    let counts = self.counts(sup, &oth);
                    if best.as_ref().is_some_and(|(c, _)| *c <= counts) {
                        continue;
                    }
                    if let Some(v) = self.evaluate(rule, &counts, s)? {
                        best = Some((counts, v));
                    }
                }
                Ok(best)
            })
            .filter_map(|r| r.transpose())
            .collect::<Result<_>>()?;
        Ok(found.into_iter().min_by(|x, y| x.0.cmp(&y.0)))
    }
}

/// Searches every profile with at most `budget.max_voters` voters for a
/// violation of the `(q, k, m)`-majority criterion, smallest `n` first.
/// At `q = 1` no group can exceed the quota and the search is vacuous.
pub fn exhaustive_criterion_search(
    rule: &Rule,
    m: usize,
    k: usize,
    q: &QuadNum,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    budget.validate(m, k)?;
    if q.signum() <= 0 || *q > QuadNum::integer(1) {
        return Err(Error::OutOfRange(format!("quota {q} must lie in (0, 1]")));
    }
    let types = Types::new(m, k);
    let pool = budget.pool()?;
    let mut profiles = 0u128;
    for n in 1..=budget.max_voters {
        let shares: Vec<u64> = (0..=n).filter(|&s| exceeds_quota(s, n, q)).collect();
        let level: u128 = shares.iter().map(|&s| types.slice_size(n, s)).sum();
        if profiles + level > budget.max_profiles {
            return Ok(SearchOutcome::Partial { completed_voters: n - 1, profiles });
        }
        profiles += level;
        let mut best: Option<(Vec<u64>, Violation)> = None;
        for &s in &shares {
            if let Some(found) = pool.install(|| types.scan_slice(rule, n, s))? {
                if best.as_ref().is_none_or(|b| found.0 < b.0) {
                    best = Some(found);
                }
            }
        }
        if let Some((counts, violation)) = best {
            return Ok(SearchOutcome::Violation { violation, counts, sampled: false, profiles });
        }
    }
    let sampled = budget.samples;
    if sampled > 0 {
        if let Some((counts, violation)) = pool.install(|| sample(rule, &types, q, budget))? {
            return Ok(SearchOutcome::Violation { violation, counts, sampled: true, profiles });
        }
    }
    Ok(SearchOutcome::Clean { profiles, sampled })
}

/// Draws every sample up front from one seeded stream, then evaluates them
/// in parallel and keeps the earliest violation.
fn sample(
    rule: &Rule,
    types: &Types,
    q: &QuadNum,
    budget: &SearchBudget,
) -> Result<Option<(Vec<u64>, Violation)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let lo = budget.max_voters + 1;
    let hi = budget.max_voters * 2;
    let mut draws: Vec<(Vec<u64>, u64)> = Vec::with_capacity(budget.samples as usize);
    for _ in 0..budget.samples {
        let n = rng.gen_range(lo..=hi.max(lo));
        let shares: Vec<u64> = (0..=n).filter(|&s| exceeds_quota(s, n, q)).collect();
        let Some(&s) = shares.get(rng.gen_range(0..shares.len().max(1))) else {
            continue;
        };
        let mut sup = vec![0u64; types.support.len()];
        for _ in 0..s {
            let t = rng.gen_range(0..sup.len());
            sup[t] += 1;
        }
        let mut oth = vec![0u64; types.other.len()];
        for _ in 0..n - s {
            let t = rng.gen_range(0..oth.len());
            oth[t] += 1;
        }
        draws.push((types.counts(&sup, &oth), s));
    }
    let first = draws
        .par_iter()
        .map(|(counts, s)| types.evaluate(rule, counts, *s).map(|v| v.map(|v| (counts.clone(), v))))
        .find_first(|r| !matches!(r, Ok(None)));
    first.transpose().map(Option::flatten)
}

/// Largest `B`-support share among violating profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalQuota {
    /// `s/n` of the witness; `None` when no enumerated profile violates.
    pub share: Option<Rational>,
    pub witness: Option<Violation>,
    pub counts: Option<Vec<u64>>,
    pub profiles: u128,
    /// The profile budget stopped the scan before it finished.
    pub partial: bool,
}

/// Scans the shares `s/n` with `n ≤ max_voters` from the top down and
/// returns the first one realized by a violating profile with exactly `s`
/// of `n` voters ranking `B` on top.
pub fn empirical_quota(rule: &Rule, m: usize, k: usize, budget: &SearchBudget) -> Result<EmpiricalQuota> {
    budget.validate(m, k)?;
    let types = Types::new(m, k);
    let pool = budget.pool()?;
    let mut shares: Vec<Rational> =
        (1..=budget.max_voters as i64).flat_map(|n| (1..=n).map(move |s| Rational::new(s, n))).collect();
    shares.sort_unstable_by(|a, b| b.cmp(a));
    shares.dedup();
    let mut profiles = 0u128;
    for share in shares {
        let d = *share.denom() as u64;
        for n in (d..=budget.max_voters).step_by(d as usize) {
            let s = *share.numer() as u64 * (n / d);
            let size = types.slice_size(n, s);
            if profiles + size > budget.max_profiles {
                return Ok(EmpiricalQuota {
                    share: None,
                    witness: None,
                    counts: None,
                    profiles,
                    partial: true,
                });
            }
            profiles += size;
            if let Some((counts, v)) = pool.install(|| types.scan_slice(rule, n, s))? {
                return Ok(EmpiricalQuota {
                    share: Some(share),
                    witness: Some(v),
                    counts: Some(counts),
                    profiles,
                    partial: false,
                });
            }
        }
    }
    Ok(EmpiricalQuota { share: None, witness: None, counts: None, profiles, partial: false })
}
