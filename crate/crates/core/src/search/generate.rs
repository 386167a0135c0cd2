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

//! Profile generators: cyclic constructions, exhaustive enumeration and
//! seeded random sampling.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::profile::Profile;

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Count vectors of length `parts` summing to `total`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u64>>,
}

impl Compositions {
    pub fn new(total: u64, parts: usize) -> Self {
        let next = match parts {
            0 if total > 0 => None,
            0 => Some(Vec::new()),
            _ => {
                let mut v = vec![0; parts];
                v[parts - 1] = total;
                Some(v)
            }
        };
        Compositions { next }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let parts = current.len();
        // Successor: move one unit from the tail into the rightmost slot
        // that can grow, then push the remaining tail mass to the end.
        if parts >= 2 {
            if let Some(i) = (0..parts - 1).rev().find(|&i| current[i + 1..].iter().any(|&c| c > 0)) {
                let mut succ = current.clone();
                let tail: u64 = succ[i + 1..].iter().sum();
                succ[i] += 1;
                for c in succ[i + 1..].iter_mut() {
                    *c = 0;
                }
                succ[parts - 1] = tail - 1;
                self.next = Some(succ);
            }
        }
        Some(current)
    }
}

/// Number of multisets of size `total` over `parts` types.
pub fn multiset_count(total: u64, parts: usize) -> u128 {
    if parts == 0 {
        return (total == 0) as u128;
    }
    // C(total + parts − 1, parts − 1)
    let (n, r) = (total as u128 + parts as u128 - 1, parts as u128 - 1);
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Profile over `m` default-named candidates from counts per ballot type.
pub fn profile_from_counts(m: usize, types: &[Vec<usize>], counts: &[u64]) -> Result<Profile> {
    Profile::with_default_names(
        m,
        types.iter().zip(counts).filter(|(_, &c)| c > 0).map(|(t, &c)| (c, t.clone())),
    )
}

/// Every anonymous profile with exactly `n` voters over `m` candidates.
pub fn all_profiles(m: usize, n: u64) -> impl Iterator<Item = Profile> {
    let types = permutations(m);
    Compositions::new(n, types.len())
        .map(move |counts| profile_from_counts(m, &types, &counts).expect("valid composition"))
}

/// Profile of `n` voters each drawing a uniform ranking, with `n` uniform
/// in `1..=max_voters`.
pub fn random_profile<R: Rng>(rng: &mut R, m: usize, max_voters: u64) -> Profile {
    let n = rng.gen_range(1..=max_voters);
    let mut ballots = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut ranking: Vec<usize> = (0..m).collect();
        ranking.shuffle(rng);
        ballots.push((1, ranking));
    }
    Profile::with_default_names(m, ballots).expect("valid random profile")
}

fn names(k: usize, others: usize) -> Vec<String> {
    (1..=k).map(|i| format!("b{i}")).chain((1..=others).map(|i| format!("a{i}"))).collect()
}

/// `b_i > b_{i+1} > … > b_{i−1}` as indices `0..k`.
fn cyclic(k: usize, start: usize) -> impl Iterator<Item = usize> {
    (0..k).map(move |j| (start + j) % k)
}

/// `n/k` voters on each cyclic shift of `b_1 > … > b_k`.
pub fn condorcet_k_tuple(k: usize, n: u64) -> Result<Profile> {
    if k < 2 {
        return Err(Error::OutOfRange("a Condorcet k-tuple needs k ≥ 2".into()));
    }
    if n == 0 || !n.is_multiple_of(k as u64) {
        let next = n.max(1).div_ceil(k as u64) * k as u64;
        return Err(Error::Divisibility(format!(
            "{n} voters cannot be split over {k} cyclic orders; try {next}"
        )));
    }
    let per = n / k as u64;
    Profile::new(names(k, 0), (0..k).map(|i| (per, cyclic(k, i).collect())))
}

/// The cyclic worst case: `qn/k` voters on each cyclic order of
/// `B = {b_1, …, b_k}` followed by `a_1 > … > a_{m−k}`, and `(1−q)n/k`
/// voters on `a_1 > … > a_{m−k}` followed by each cyclic order of `B`.
///
/// Candidates `b_1..b_k` get indices `0..k`, then `a_1..`.
pub fn worst_case_profile(m: usize, k: usize, q: Rational, n: u64) -> Result<Profile> {
    if k < 1 || k >= m {
        return Err(Error::OutOfRange(format!("k = {k} needs 1 ≤ k < m = {m}")));
    }
    if q <= Rational::from_integer(0) || q > Rational::from_integer(1) {
        return Err(Error::OutOfRange(format!("quota {q} must lie in (0, 1]")));
    }
    let (p, s) = (*q.numer() as u64, *q.denom() as u64);
    let kk = k as u64;
    // qn/k = pn/(sk) and (1−q)n/k = (s−p)n/(sk) must be integers.
    let step = |x: u64| (s * kk) / x.gcd(&(s * kk));
    let lcm = if p == s { step(p) } else { step(p).lcm(&step(s - p)) };
    if n == 0 || !n.is_multiple_of(lcm) {
        let next = n.max(1).div_ceil(lcm) * lcm;
        return Err(Error::Divisibility(format!(
            "q = {q}, k = {k} needs n divisible by {lcm}; smallest valid n ≥ {n} is {next}"
        )));
    }
    let major = p * n / (s * kk);
    let minor = (s - p) * n / (s * kk);
    let tail: Vec<usize> = (k..m).collect();
    let mut ballots = Vec::new();
    for i in 0..k {
        let order: Vec<usize> = cyclic(k, i).collect();
        if major > 0 {
            ballots.push((major, order.iter().chain(&tail).copied().collect::<Vec<_>>()));
        }
        if minor > 0 {
            ballots.push((minor, tail.iter().chain(&order).copied().collect::<Vec<_>>()));
        }
    }
    Profile::new(names(k, m - k), ballots)
}
