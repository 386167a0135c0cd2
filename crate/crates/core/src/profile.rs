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

//! The election data model: anonymous profiles of strict rankings and the
//! matrices derived from them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Largest number of candidates a profile may carry (sets are bitmasks).
pub const MAX_CANDIDATES: usize = 32;

/// A subset of candidate indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CandidateSet(u32);

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_CANDIDATES);
        if m == MAX_CANDIDATES {
            CandidateSet(u32::MAX)
        } else {
            CandidateSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(c: usize) -> Self {
        CandidateSet(1 << c)
    }

    pub fn from_bits(bits: u32) -> Self {
        CandidateSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_CANDIDATES && self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: usize) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1 << c);
    }

    pub fn with(self, c: usize) -> Self {
        CandidateSet(self.0 | (1 << c))
    }

    pub fn without(self, c: usize) -> Self {
        CandidateSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: CandidateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: CandidateSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: CandidateSet) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: CandidateSet) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn difference(self, other: CandidateSet) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl FromIterator<usize> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = CandidateSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

/// A group of identical ballots: `count` voters sharing `ranking`
/// (candidate indices, most preferred first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot {
    pub ranking: Vec<usize>,
    pub count: u64,
}

impl Ballot {
    /// 0-based position of `c` in the ranking.
    pub fn position(&self, c: usize) -> usize {
        self.ranking.iter().position(|&x| x == c).expect("ranking is a permutation")
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        for &c in &self.ranking {
            if c == a {
                return true;
            }
            if c == b {
                return false;
            }
        }
        false
    }

    /// The first `k` candidates of the ranking as a set.
    pub fn top(&self, k: usize) -> CandidateSet {
        self.ranking[..k].iter().copied().collect()
    }

    /// Candidates ranked strictly above `c`.
    pub fn above(&self, c: usize) -> CandidateSet {
        self.ranking.iter().take_while(|&&x| x != c).copied().collect()
    }

    /// Highest-ranked member of `subset`.
    pub fn top_within(&self, subset: CandidateSet) -> Option<usize> {
        self.ranking.iter().copied().find(|&c| subset.contains(c))
    }
}

/// Anonymous preference profile.
///
/// Ballot groups are normalized at construction: identical rankings are
/// merged and groups are sorted by ranking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    candidates: Vec<String>,
    ballots: Vec<Ballot>,
    voters: u64,
}

/// Default labels: `a`, `b`, … for up to 26 candidates, `c1`, `c2`, … beyond.
pub fn default_names(m: usize) -> Vec<String> {
    if m <= 26 {
        (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=m).map(|i| format!("c{i}")).collect()
    }
}

impl Profile {
    pub fn new<I>(candidates: Vec<String>, ballots: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Vec<usize>)>,
    {
        let m = candidates.len();
        if m == 0 {
            return Err(Error::InvalidProfile("no candidates".into()));
        }
        if m > MAX_CANDIDATES {
            return Err(Error::InvalidProfile(format!(
                "{m} candidates exceeds the maximum of {MAX_CANDIDATES}"
            )));
        }
        for (i, name) in candidates.iter().enumerate() {
            if candidates[..i].contains(name) {
                return Err(Error::InvalidProfile(format!("duplicate candidate name `{name}`")));
            }
        }
        let mut merged: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for (count, ranking) in ballots {
            if count == 0 {
                return Err(Error::InvalidProfile("ballot count must be positive".into()));
            }
            if ranking.len() != m {
                return Err(Error::InvalidProfile(format!(
                    "ranking has {} entries, expected {m}",
                    ranking.len()
                )));
            }
            let mut seen = CandidateSet::EMPTY;
            for &c in &ranking {
                if c >= m {
                    return Err(Error::UnknownCandidate(c));
                }
                if seen.contains(c) {
                    return Err(Error::InvalidProfile(format!(
                        "candidate `{}` appears twice in a ranking",
                        candidates[c]
                    )));
                }
                seen.insert(c);
            }
            *merged.entry(ranking).or_insert(0) += count;
        }
        let ballots: Vec<Ballot> =
            merged.into_iter().map(|(ranking, count)| Ballot { ranking, count }).collect();
        let voters = ballots.iter().map(|b| b.count).sum::<u64>();
        if voters == 0 {
            return Err(Error::InvalidProfile("profile has no voters".into()));
        }
        Ok(Profile { candidates, ballots, voters })
    }

    pub fn with_default_names<I>(m: usize, ballots: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Vec<usize>)>,
    {
        Profile::new(default_names(m), ballots)
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_voters(&self) -> u64 {
        self.voters
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn name(&self, c: usize) -> &str {
        &self.candidates[c]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == name)
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn all(&self) -> CandidateSet {
        CandidateSet::full(self.num_candidates())
    }

    pub fn names_of(&self, set: CandidateSet) -> Vec<String> {
        set.iter().map(|c| self.candidates[c].clone()).collect()
    }

    pub fn tournament_matrix(&self) -> TournamentMatrix {
        let m = self.num_candidates();
        let mut h = vec![0u64; m * m];
        for ballot in &self.ballots {
            for (i, &a) in ballot.ranking.iter().enumerate() {
                for &b in &ballot.ranking[i + 1..] {
                    h[a * m + b] += ballot.count;
                }
            }
        }
        TournamentMatrix { voters: self.voters, m, h }
    }

    pub fn positional_matrix(&self) -> PositionalMatrix {
        let m = self.num_candidates();
        let mut counts = vec![0u64; m * m];
        for ballot in &self.ballots {
            for (pos, &c) in ballot.ranking.iter().enumerate() {
                counts[pos * m + c] += ballot.count;
            }
        }
        PositionalMatrix { voters: self.voters, m, counts }
    }

    /// The strict Condorcet winner within `subset`, if any.
    pub fn condorcet_winner(&self, subset: CandidateSet) -> Option<usize> {
        self.tournament_matrix().condorcet_winner(subset)
    }

    pub fn weak_condorcet_winners(&self, subset: CandidateSet) -> CandidateSet {
        self.tournament_matrix().weak_condorcet_winners(subset)
    }

    pub fn majority_winner(&self) -> Option<usize> {
        self.positional_matrix().majority_winner()
    }

    pub fn majority_loser(&self) -> Option<usize> {
        self.positional_matrix().majority_loser()
    }

    /// Projects every ranking onto `subset` (keeping relative order) and
    /// renumbers candidates in increasing index order.
    pub fn restrict(&self, subset: CandidateSet) -> Result<Profile> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !subset.is_subset(self.all()) {
            let bad = subset.difference(self.all()).first().unwrap_or(0);
            return Err(Error::UnknownCandidate(bad));
        }
        let mut new_index = vec![usize::MAX; self.num_candidates()];
        for (i, c) in subset.iter().enumerate() {
            new_index[c] = i;
        }
        let names = subset.iter().map(|c| self.candidates[c].clone()).collect();
        let ballots = self.ballots.iter().map(|b| {
            let ranking = b.ranking.iter().filter(|&&c| subset.contains(c)).map(|&c| new_index[c]).collect();
            (b.count, ranking)
        });
        Profile::new(names, ballots)
    }

    /// Applies the candidate relabeling `perm` (old index → new index).
    pub fn relabel(&self, perm: &[usize]) -> Result<Profile> {
        let m = self.num_candidates();
        if perm.len() != m || perm.iter().copied().collect::<CandidateSet>() != self.all() {
            return Err(Error::InvalidProfile("relabeling is not a permutation".into()));
        }
        let mut names = vec![String::new(); m];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.candidates[old].clone();
        }
        let ballots = self.ballots.iter().map(|b| (b.count, b.ranking.iter().map(|&c| perm[c]).collect()));
        Profile::new(names, ballots)
    }

    /// Truncated Borda score `B_t(a) = Σ_{i ≤ ⌊t⌋+1} (t − i + 1)·n_i(a)`.
    pub fn truncated_borda(&self, a: usize, t: Rational) -> Result<Rational> {
        if a >= self.num_candidates() {
            return Err(Error::UnknownCandidate(a));
        }
        self.positional_matrix().truncated_borda(a, t)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.ballots.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let names: Vec<&str> = b.ranking.iter().map(|&c| self.candidates[c].as_str()).collect();
            write!(f, "{}:{}", b.count, names.join(">"))?;
        }
        Ok(())
    }
}

/// Pairwise counts: `get(a, b)` voters rank `a` above `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentMatrix {
    voters: u64,
    m: usize,
    h: Vec<u64>,
}

impl TournamentMatrix {
    pub fn num_voters(&self) -> u64 {
        self.voters
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.h[a * self.m + b]
    }

    /// `h(a,b) > n/2`, evaluated as `2·h(a,b) > n`.
    pub fn beats(&self, a: usize, b: usize) -> bool {
        2 * self.get(a, b) > self.voters
    }

    pub fn weakly_beats(&self, a: usize, b: usize) -> bool {
        2 * self.get(a, b) >= self.voters
    }

    pub fn condorcet_winner(&self, subset: CandidateSet) -> Option<usize> {
        subset.iter().find(|&b| subset.iter().all(|a| a == b || self.beats(b, a)))
    }

    pub fn weak_condorcet_winners(&self, subset: CandidateSet) -> CandidateSet {
        subset.iter().filter(|&b| subset.iter().all(|a| a == b || self.weakly_beats(b, a))).collect()
    }

    /// Borda score as the row sum `Σ_b h(a,b)`.
    pub fn row_sum(&self, a: usize) -> u64 {
        (0..self.m).filter(|&b| b != a).map(|b| self.get(a, b)).sum()
    }

    pub fn row_min(&self, a: usize) -> Option<u64> {
        (0..self.m).filter(|&b| b != a).map(|b| self.get(a, b)).min()
    }
}

/// Rank counts: `get(pos, a)` voters place `a` at 0-based position `pos`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalMatrix {
    voters: u64,
    m: usize,
    counts: Vec<u64>,
}

impl PositionalMatrix {
    pub fn num_voters(&self) -> u64 {
        self.voters
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn get(&self, pos: usize, a: usize) -> u64 {
        self.counts[pos * self.m + a]
    }

    /// Positional vector `(n_1(a), …, n_m(a))`.
    pub fn column(&self, a: usize) -> Vec<u64> {
        (0..self.m).map(|pos| self.get(pos, a)).collect()
    }

    pub fn majority_winner(&self) -> Option<usize> {
        (0..self.m).find(|&a| 2 * self.get(0, a) > self.voters)
    }

    pub fn majority_loser(&self) -> Option<usize> {
        (0..self.m).find(|&a| 2 * self.get(self.m - 1, a) > self.voters)
    }

    /// Borda score `Σ_i (m − i)·n_i(a)`.
    pub fn borda(&self, a: usize) -> u64 {
        (0..self.m).map(|pos| (self.m - 1 - pos) as u64 * self.get(pos, a)).sum()
    }

    /// `B_t(a)` at integer depth `t`.
    pub fn truncated_borda_int(&self, a: usize, t: usize) -> u64 {
        (0..=t.min(self.m - 1)).map(|pos| (t - pos) as u64 * self.get(pos, a)).sum()
    }

    pub fn truncated_borda(&self, a: usize, t: Rational) -> Result<Rational> {
        if t <= Rational::from_integer(0) {
            return Err(Error::OutOfRange(format!("truncation depth {t} must be positive")));
        }
        let whole = t.to_integer();
        let last = (whole as usize).min(self.m - 1);
        let mut total = Rational::from_integer(0);
        for pos in 0..=last {
            total += (t - pos as i64) * self.get(pos, a) as i64;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_candidates() -> Profile {
        Profile::with_default_names(
            4,
            vec![
                (29, vec![0, 1, 2, 3]),
                (28, vec![1, 0, 2, 3]),
                (22, vec![2, 3, 0, 1]),
                (21, vec![2, 3, 1, 0]),
            ],
        )
        .unwrap()
    }

    fn cycle3() -> Profile {
        Profile::with_default_names(3, vec![(1, vec![0, 1, 2]), (1, vec![1, 2, 0]), (1, vec![2, 0, 1])])
            .unwrap()
    }

    #[test]
    fn four_candidates_matrices() {
        let p = four_candidates();
        let h = p.tournament_matrix();
        assert_eq!((h.get(0, 1), h.get(0, 2), h.get(2, 3), h.get(3, 2)), (51, 57, 100, 0));
        let n = p.positional_matrix();
        assert_eq!((n.get(0, 2), n.get(2, 2), n.get(0, 3), n.get(3, 3)), (43, 57, 0, 57));
    }

    #[test]
    fn single_voter_duel() {
        let p = Profile::with_default_names(2, vec![(1, vec![0, 1])]).unwrap();
        let h = p.tournament_matrix();
        assert_eq!((h.get(0, 1), h.get(1, 0)), (1, 0));
    }

    #[test]
    fn condorcet_concepts() {
        let p = four_candidates();
        assert_eq!(p.condorcet_winner(p.all()), Some(0));
        assert_eq!(p.weak_condorcet_winners(p.all()), CandidateSet::singleton(0));
        let c = cycle3();
        assert_eq!(c.condorcet_winner(c.all()), None);
        assert!(c.weak_condorcet_winners(c.all()).is_empty());
        let tie = Profile::with_default_names(2, vec![(1, vec![0, 1]), (1, vec![1, 0])]).unwrap();
        assert_eq!(tie.weak_condorcet_winners(tie.all()), CandidateSet::full(2));
        assert_eq!(tie.condorcet_winner(tie.all()), None);
    }

    #[test]
    fn majority_winner_and_loser() {
        let p = four_candidates();
        assert_eq!(p.majority_winner(), None);
        let u = Profile::with_default_names(3, vec![(5, vec![2, 0, 1])]).unwrap();
        assert_eq!(u.majority_winner(), Some(2));
        assert_eq!(u.majority_loser(), Some(1));
    }

    #[test]
    fn normalization_merges_duplicates() {
        let p =
            Profile::with_default_names(2, vec![(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![1, 0])]).unwrap();
        assert_eq!(p.ballots().len(), 2);
        assert_eq!(p.ballots()[1].count, 4);
        assert_eq!(p.num_voters(), 6);
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(Profile::with_default_names(2, vec![(0, vec![0, 1])]).is_err());
        assert!(Profile::with_default_names(2, vec![(1, vec![0, 0])]).is_err());
        assert!(Profile::with_default_names(3, vec![(1, vec![0, 1])]).is_err());
        assert!(Profile::with_default_names(2, Vec::new()).is_err());
    }

    #[test]
    fn restriction() {
        let p = four_candidates();
        assert_eq!(p.restrict(p.all()).unwrap(), p);
        let single = p.restrict(CandidateSet::singleton(2)).unwrap();
        assert_eq!(single.num_voters(), 100);
        assert_eq!(single.ballots().len(), 1);
        assert_eq!(p.restrict(CandidateSet::EMPTY), Err(Error::EmptySubset));
    }

    #[test]
    fn truncated_borda_values() {
        let p = four_candidates();
        let r = |x: i64| Rational::from_integer(x);
        assert_eq!(p.truncated_borda(0, r(2)).unwrap(), r(86));
        assert_eq!(p.truncated_borda(0, r(3)).unwrap(), r(165));
        assert_eq!(p.truncated_borda(0, r(1)).unwrap(), r(29));
        assert_eq!(p.truncated_borda(0, Rational::new(3, 2)).unwrap(), Rational::new(3 * 29 + 28, 2));
        assert!(p.truncated_borda(0, r(0)).is_err());
        let n = p.positional_matrix();
        for a in 0..4 {
            assert_eq!(n.truncated_borda_int(a, 3), n.borda(a));
        }
    }
}
