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

//! Qualified mutual majority and veto criteria on concrete profiles, and
//! second-order positional dominance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::QuadNum;
use crate::profile::{CandidateSet, Profile};
use crate::rules::{ChoiceSet, Rule};

/// A group of more than `q·n` voters whose protected set does not contain
/// every winner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Candidates the group ranks in its top positions. For a veto check
    /// this is the complement of the vetoed set.
    pub b_set: CandidateSet,
    pub support: u64,
    pub winners: ChoiceSet,
    pub profile: Profile,
}

/// Whether `support` voters out of `n` are more than `q·n`.
pub fn exceeds_quota(support: u64, n: u64, q: &QuadNum) -> bool {
    QuadNum::from(BigRational::new(BigInt::from(support), BigInt::from(n))) > *q
}

fn check_q(q: &QuadNum) -> Result<()> {
    if q.signum() <= 0 || *q >= QuadNum::integer(1) {
        return Err(Error::OutOfRange(format!("quota {q} must lie strictly between 0 and 1")));
    }
    Ok(())
}

fn grouped(sets: impl Iterator<Item = (CandidateSet, u64)>) -> Vec<(CandidateSet, u64)> {
    let mut map: BTreeMap<CandidateSet, u64> = BTreeMap::new();
    for (set, count) in sets {
        *map.entry(set).or_default() += count;
    }
    let mut groups: Vec<(CandidateSet, u64)> = map.into_iter().collect();
    groups.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.bits().cmp(&y.0.bits())));
    groups
}

/// Every `k`-set ranked on top by some voters, with the number of such
/// voters, largest first.
pub fn mutual_majority_groups(profile: &Profile, k: usize) -> Result<Vec<(CandidateSet, u64)>> {
    let m = profile.num_candidates();
    if k < 1 || k >= m {
        return Err(Error::OutOfRange(format!("k = {k} needs 1 ≤ k < m = {m}")));
    }
    Ok(grouped(profile.ballots().iter().map(|b| (b.top(k), b.count))))
}

/// Every `l`-set ranked at the bottom by some voters, largest group first.
pub fn bottom_groups(profile: &Profile, l: usize) -> Result<Vec<(CandidateSet, u64)>> {
    let m = profile.num_candidates();
    if l < 1 || l >= m {
        return Err(Error::OutOfRange(format!("l = {l} needs 1 ≤ l < m = {m}")));
    }
    Ok(grouped(profile.ballots().iter().map(|b| (b.ranking[m - l..].iter().copied().collect(), b.count))))
}

/// First violation of the `(q,k,m)`-majority criterion on `profile`.
pub fn check_qk_majority(rule: &Rule, profile: &Profile, q: &QuadNum, k: usize) -> Result<Option<Violation>> {
    check_q(q)?;
    let groups = mutual_majority_groups(profile, k)?;
    let n = profile.num_voters();
    let heavy: Vec<_> = groups.into_iter().filter(|&(_, s)| exceeds_quota(s, n, q)).collect();
    if heavy.is_empty() {
        return Ok(None);
    }
    let winners = rule.winners(profile)?;
    Ok(heavy.into_iter().find(|&(b, _)| !winners.is_subset(b)).map(|(b_set, support)| Violation {
        b_set,
        support,
        winners,
        profile: profile.clone(),
    }))
}

/// First violation of the veto criterion: more than `q·n` voters put the
/// same `l` candidates last and one of them wins.
pub fn check_ql_veto(rule: &Rule, profile: &Profile, q: &QuadNum, l: usize) -> Result<Option<Violation>> {
    check_q(q)?;
    let groups = bottom_groups(profile, l)?;
    let n = profile.num_voters();
    let heavy: Vec<_> = groups.into_iter().filter(|&(_, s)| exceeds_quota(s, n, q)).collect();
    if heavy.is_empty() {
        return Ok(None);
    }
    let winners = rule.winners(profile)?;
    let all = profile.all();
    Ok(heavy.into_iter().find(|&(vetoed, _)| !winners.set().is_disjoint(vetoed)).map(|(vetoed, support)| {
        Violation { b_set: all.difference(vetoed), support, winners, profile: profile.clone() }
    }))
}

/// Pairs `(a, b)` with `B_t(a) ≥ B_t(b)` for `t = 1, …, m−1` and strict
/// inequality at `t = m−1`: `a` beats `b` under every convex scoring rule.
pub fn second_order_dominance(profile: &Profile) -> Vec<(usize, usize)> {
    let m = profile.num_candidates();
    if m < 2 {
        return Vec::new();
    }
    let pm = profile.positional_matrix();
    let depth: Vec<Vec<u64>> =
        (0..m).map(|a| (1..m).map(|t| pm.truncated_borda_int(a, t)).collect()).collect();
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a != b
                && depth[a].iter().zip(&depth[b]).all(|(x, y)| x >= y)
                && depth[a][m - 2] > depth[b][m - 2]
            {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Winners dominated by some other candidate.
pub fn dominated_winners(profile: &Profile, winners: ChoiceSet) -> CandidateSet {
    second_order_dominance(profile)
        .into_iter()
        .filter(|&(_, b)| winners.contains(b))
        .map(|(_, b)| b)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::fixtures::*;

    fn half() -> QuadNum {
        QuadNum::from_ratio(1, 2)
    }

    #[test]
    fn groups_on_example_profiles() {
        let t1 = primaries();
        let g = mutual_majority_groups(&t1, 3).unwrap();
        let bjt: CandidateSet = ["Bernie", "John", "Ted"].iter().map(|n| t1.index_of(n).unwrap()).collect();
        assert_eq!(g[0], (bjt, 57));
        let g2 = mutual_majority_groups(&four_candidates(), 2).unwrap();
        assert_eq!(g2, vec![(CandidateSet::from_iter([0, 1]), 57), (CandidateSet::from_iter([2, 3]), 43)]);
        assert!(mutual_majority_groups(&t1, 5).is_err());
    }

    #[test]
    fn primaries_majority_checks() {
        let p = primaries();
        let v = check_qk_majority(&Rule::Plurality, &p, &half(), 3).unwrap().unwrap();
        assert_eq!(v.support, 57);
        assert_eq!(p.names_of(v.winners.set()), vec!["Hillary"]);
        assert!(check_qk_majority(&Rule::InstantRunoff, &p, &half(), 3).unwrap().is_none());
    }

    #[test]
    fn primaries_veto_checks() {
        let p = primaries();
        let v = check_ql_veto(&Rule::Plurality, &p, &half(), 1).unwrap().unwrap();
        assert_eq!(v.support, 58);
        assert!(!v.b_set.contains(p.index_of("Hillary").unwrap()));
        assert!(check_ql_veto(&Rule::InstantRunoff, &p, &half(), 2).unwrap().is_none());
        let g = bottom_groups(&p, 2).unwrap();
        let hd: CandidateSet = ["Hillary", "Donald"].iter().map(|n| p.index_of(n).unwrap()).collect();
        assert_eq!(g[0], (hd, 57));
    }

    #[test]
    fn vacuous_pass() {
        let p = cycle3();
        for rule in Rule::NAMED {
            assert!(check_qk_majority(&rule, &p, &QuadNum::from_ratio(2, 3), 1).unwrap().is_none());
        }
    }

    #[test]
    fn quota_validation() {
        let p = four_candidates();
        assert!(check_qk_majority(&Rule::Borda, &p, &QuadNum::integer(1), 2).is_err());
        assert!(check_qk_majority(&Rule::Borda, &p, &QuadNum::integer(0), 2).is_err());
    }

    #[test]
    fn exceeds_is_strict() {
        assert!(!exceeds_quota(1, 2, &half()));
        assert!(exceeds_quota(2, 3, &half()));
        let root = QuadNum::surd(-1, 1, 33, 8);
        assert!(exceeds_quota(3, 5, &root));
        assert!(!exceeds_quota(4, 7, &root));
    }

    #[test]
    fn dominance_examples() {
        let d = second_order_dominance(&four_candidates());
        assert!(d.contains(&(2, 0)) && d.contains(&(2, 1)));
        let u = Profile::with_default_names(3, vec![(5, vec![1, 0, 2])]).unwrap();
        let du = second_order_dominance(&u);
        assert!(du.contains(&(1, 0)) && du.contains(&(1, 2)));
        assert!(second_order_dominance(&cycle3()).is_empty());
    }
}
