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

//! Closed-form minimal quotas for the qualified mutual majority and veto
//! criteria.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{QuadNum, Rational};
use crate::rules::{Rule, ScoreVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotaValue {
    Exact(QuadNum),
    /// Sufficient above `hi`, insufficient below `lo`.
    Interval {
        lo: QuadNum,
        hi: QuadNum,
    },
}

/// A minimal quota. `tight` means the criterion holds exactly for
/// `q ≥ value`; otherwise the value is only known to be sufficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quota {
    pub value: QuotaValue,
    pub tight: bool,
}

impl Quota {
    pub fn exact(v: impl Into<QuadNum>) -> Self {
        Quota { value: QuotaValue::Exact(v.into()), tight: true }
    }

    pub fn sufficient(v: impl Into<QuadNum>) -> Self {
        Quota { value: QuotaValue::Exact(v.into()), tight: false }
    }

    pub fn interval(lo: impl Into<QuadNum>, hi: impl Into<QuadNum>) -> Self {
        let (lo, hi) = (lo.into(), hi.into());
        if lo == hi {
            return Quota::exact(lo);
        }
        Quota { value: QuotaValue::Interval { lo, hi }, tight: false }
    }

    fn ratio(num: i64, den: i64) -> Self {
        Quota::exact(QuadNum::from_ratio(num, den))
    }

    /// The value when it is a single number.
    pub fn point(&self) -> Option<&QuadNum> {
        match &self.value {
            QuotaValue::Exact(v) => Some(v),
            QuotaValue::Interval { .. } => None,
        }
    }

    pub fn lower(&self) -> &QuadNum {
        match &self.value {
            QuotaValue::Exact(v) => v,
            QuotaValue::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &QuadNum {
        match &self.value {
            QuotaValue::Exact(v) => v,
            QuotaValue::Interval { hi, .. } => hi,
        }
    }

    /// Rounded to three places; intervals as `[lo, hi]`.
    pub fn decimal(&self) -> String {
        match &self.value {
            QuotaValue::Exact(v) => v.to_decimal(3),
            QuotaValue::Interval { lo, hi } => {
                format!("[{}, {}]", lo.to_decimal(3), hi.to_decimal(3))
            }
        }
    }
}

impl fmt::Display for Quota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            QuotaValue::Exact(v) => write!(f, "{v}"),
            QuotaValue::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

fn clr_bound(k: i64) -> Rational {
    if k % 2 == 0 {
        Rational::new(5 * k - 2, 8 * k)
    } else {
        Rational::new(5 * k * k - 2 * k + 1, 8 * k * k)
    }
}

/// Root in `(1/2, (3k−1)/(4k))` of
/// `4k(m−k−1)q² + (5k²+5k−2mk−m²+m)q + m(m−1−2k) = 0`, for `2k ≥ m > k+1`.
fn convex_median_root(k: i64, m: i64) -> QuadNum {
    let (k, m) = (k as i128, m as i128);
    let a = 4 * k * (m - k - 1);
    let b = 5 * k * k + 5 * k - 2 * m * k - m * m + m;
    let c = m * (m - 1 - 2 * k);
    QuadNum::upper_branch_root(a, b, c).expect("positive discriminant")
}

/// `(s_1 − avg of the bottom k) / (s_1 − avg of the bottom k + avg of the top k − s_{k+1})`.
pub fn scoring_quota(weights: &ScoreVector, k: usize) -> Result<Quota> {
    let s = weights.weights();
    let m = s.len();
    if k < 1 || k >= m {
        return Err(Error::OutOfRange(format!("k = {k} needs 1 ≤ k < m = {m}")));
    }
    let kk = Rational::from_integer(k as i64);
    let bottom: Rational = s[m - k..].iter().sum::<Rational>() / kk;
    let top: Rational = s[..k].iter().sum::<Rational>() / kk;
    let num = s[0] - bottom;
    Ok(Quota::exact(num / (num + top - s[k])))
}

fn check_km(k: usize, m: usize) -> Result<()> {
    if k < 1 || k >= m {
        return Err(Error::OutOfRange(format!("k = {k} needs 1 ≤ k < m = {m}")));
    }
    Ok(())
}

/// Minimal `q` for the `(q,k,m)`-majority criterion.
pub fn quota_majority(rule: &Rule, k: usize, m: usize) -> Result<Quota> {
    check_km(k, m)?;
    let (ki, mi) = (k as i64, m as i64);
    let q = match rule {
        Rule::InstantRunoff => Quota::ratio(1, 2),
        Rule::Plurality => Quota::ratio(ki, ki + 1),
        Rule::Simpson | Rule::Young => {
            if k == 1 {
                Quota::ratio(1, 2)
            } else {
                Quota::ratio(ki - 1, ki)
            }
        }
        Rule::Clr => Quota::exact(clr_bound(ki)),
        Rule::Runoff => {
            if k == 1 || k + 1 == m {
                Quota::ratio(1, 2)
            } else {
                Quota::ratio(ki, ki + 2)
            }
        }
        Rule::Black => {
            if k == 1 {
                Quota::ratio(1, 2)
            } else {
                Quota::ratio(2 * mi - ki - 1, 2 * mi)
            }
        }
        Rule::Borda => Quota::ratio(2 * mi - ki - 1, 2 * mi),
        Rule::ConvexMedian => {
            if m > 2 * k {
                Quota::ratio(3 * ki - 1, 4 * ki)
            } else if m == k + 1 {
                Quota::ratio(1, 2)
            } else {
                Quota::exact(convex_median_root(ki, mi))
            }
        }
        Rule::Dodgson => Quota::interval(clr_bound(ki), Rational::new(ki, ki + 1)),
        Rule::VetoCore => Quota::ratio(mi - ki, mi),
        Rule::Antiplurality => {
            if k + 1 == m {
                Quota::ratio(1, mi)
            } else {
                Quota::ratio(1, 1)
            }
        }
        Rule::Scoring(sv) => {
            if sv.len() != m {
                return Err(Error::InvalidScores(format!("{} weights for m = {m}", sv.len())));
            }
            scoring_quota(sv, k)?
        }
        Rule::T12 => {
            let v = QuadNum::from_ratio(2 * ki, 3 * ki + 1);
            if k == 1 || m > 2 * k {
                Quota::exact(v)
            } else {
                Quota::sufficient(v)
            }
        }
    };
    Ok(q)
}

fn fixed_length(rule: &Rule) -> Result<()> {
    if let Rule::Scoring(sv) = rule {
        return Err(Error::OutOfRange(format!("scoring:{sv} is defined for m = {} only", sv.len())));
    }
    Ok(())
}

/// Supremum over `m > k` of [`quota_majority`].
pub fn quota_majority_sup(rule: &Rule, k: usize) -> Result<Quota> {
    fixed_length(rule)?;
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let q = match rule {
        // Attained at some finite m.
        Rule::InstantRunoff | Rule::Plurality | Rule::Simpson | Rule::Young | Rule::Clr | Rule::Dodgson => {
            quota_majority(rule, k, k + 1)?
        }
        Rule::Runoff => quota_majority(rule, k, k + 2)?,
        Rule::ConvexMedian | Rule::T12 => quota_majority(rule, k, 2 * k + 1)?,
        // Approached as m grows.
        Rule::Black if k == 1 => Quota::ratio(1, 2),
        Rule::Black | Rule::Borda | Rule::VetoCore | Rule::Antiplurality => Quota::ratio(1, 1),
        Rule::Scoring(_) => unreachable!(),
    };
    Ok(q)
}

/// Supremum over all `k ≥ 1` and `m > k`.
pub fn quota_majority_sup_all(rule: &Rule) -> Result<Quota> {
    fixed_length(rule)?;
    Ok(match rule {
        Rule::InstantRunoff => Quota::ratio(1, 2),
        Rule::Clr => Quota::ratio(5, 8),
        Rule::ConvexMedian => Quota::ratio(3, 4),
        Rule::T12 => Quota::ratio(2, 3),
        Rule::Dodgson => Quota::interval(Rational::new(5, 8), Rational::from_integer(1)),
        _ => Quota::ratio(1, 1),
    })
}

/// Minimal `q` for vetoing `l` candidates among `m`.
pub fn quota_veto(rule: &Rule, l: usize, m: usize) -> Result<Quota> {
    if l < 1 || l >= m {
        return Err(Error::OutOfRange(format!("l = {l} needs 1 ≤ l < m = {m}")));
    }
    quota_majority(rule, m - l, m)
}

/// Convex-median root at `m = 2l` (so `k = l`):
/// `(−7 + 3l + √(9l² − 10l + 17)) / (8l − 8)`.
fn convex_median_veto_root(l: i64) -> QuadNum {
    QuadNum::surd(-7 + 3 * l, 1, (9 * l * l - 10 * l + 17) as u64, 8 * l - 8)
}

/// Supremum over `m ≥ max(3, l+1)` of [`quota_veto`]; with `half`, over
/// `m ≥ max(3, 2l)` instead.
pub fn quota_veto_sup(rule: &Rule, l: usize, half: bool) -> Result<Quota> {
    fixed_length(rule)?;
    if l < 1 {
        return Err(Error::OutOfRange("l must be at least 1".into()));
    }
    let li = l as i64;
    let q = match rule {
        Rule::InstantRunoff => Quota::ratio(1, 2),
        Rule::Clr => Quota::ratio(5, 8),
        Rule::Dodgson => Quota::interval(Rational::new(5, 8), Rational::from_integer(1)),
        Rule::T12 => Quota::sufficient(QuadNum::from_ratio(2, 3)),
        Rule::Plurality | Rule::Simpson | Rule::Young => Quota::ratio(1, 1),
        Rule::Runoff | Rule::Black | Rule::Borda | Rule::ConvexMedian if l == 1 => Quota::ratio(1, 2),
        Rule::VetoCore | Rule::Antiplurality if l == 1 => Quota::ratio(1, 3),
        Rule::Runoff | Rule::Antiplurality => Quota::ratio(1, 1),
        Rule::ConvexMedian => {
            let root = convex_median_veto_root(li);
            if half {
                Quota::exact(root)
            } else {
                Quota::exact(root.max(QuadNum::from_ratio(3 * li - 4, 4 * li - 4)))
            }
        }
        Rule::Black if half => Quota::ratio(3 * li - 1, 4 * li),
        Rule::Borda if half => Quota::ratio(3 * li - 1, 4 * li),
        Rule::Black => Quota::ratio(2 * li + 1, 2 * li + 4),
        Rule::Borda => Quota::ratio(li, li + 1),
        Rule::VetoCore if half => Quota::ratio(1, 2),
        Rule::VetoCore => Quota::ratio(li, li + 1),
        Rule::Scoring(_) => unreachable!(),
    };
    Ok(q)
}

/// Supremum over `l` of [`quota_veto_sup`].
pub fn quota_veto_sup_all(rule: &Rule, half: bool) -> Result<Quota> {
    fixed_length(rule)?;
    Ok(match rule {
        Rule::InstantRunoff => Quota::ratio(1, 2),
        Rule::Clr => Quota::ratio(5, 8),
        Rule::ConvexMedian => Quota::ratio(3, 4),
        Rule::T12 => Quota::sufficient(QuadNum::from_ratio(2, 3)),
        Rule::Dodgson => Quota::interval(Rational::new(5, 8), Rational::from_integer(1)),
        Rule::VetoCore if half => Quota::ratio(1, 2),
        Rule::Black | Rule::Borda if half => Quota::ratio(3, 4),
        _ => Quota::ratio(1, 1),
    })
}

/// Smallest quota compatible with second-order positional dominance:
/// `2k/(3k+1)`.
pub fn tradeoff_threshold(k: usize) -> Result<Quota> {
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let k = k as i64;
    Ok(Quota::ratio(2 * k, 3 * k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(q: Result<Quota>) -> String {
        q.unwrap().decimal()
    }

    #[test]
    fn three_candidate_and_four_candidate_values() {
        let cm = quota_majority(&Rule::ConvexMedian, 2, 4).unwrap();
        assert_eq!(cm.point().unwrap(), &QuadNum::surd(-1, 1, 33, 8));
        assert_eq!(cm.decimal(), "0.593");
        assert_eq!(quota_majority(&Rule::Black, 2, 4).unwrap(), Quota::ratio(5, 8));
        assert_eq!(quota_majority(&Rule::VetoCore, 3, 4).unwrap(), Quota::ratio(1, 4));
        assert_eq!(quota_majority(&Rule::Antiplurality, 3, 4).unwrap(), Quota::ratio(1, 4));
        assert_eq!(dec(quota_majority(&Rule::Clr, 3, 4)), "0.556");
        assert_eq!(dec(quota_majority(&Rule::Clr, 2, 3)), "0.500");
    }

    #[test]
    fn convex_median_root_in_range() {
        for k in 2..12i64 {
            for m in k + 2..=2 * k {
                let r = convex_median_root(k, m);
                assert!(r > QuadNum::from_ratio(1, 2), "k={k} m={m}");
                assert!(r < QuadNum::from_ratio(3 * k - 1, 4 * k), "k={k} m={m}");
                // Residual check in floating point.
                let q = r.to_f64();
                let (kf, mf) = (k as f64, m as f64);
                let resid = 4.0 * kf * (mf - kf - 1.0) * q * q
                    + (5.0 * kf * kf + 5.0 * kf - 2.0 * mf * kf - mf * mf + mf) * q
                    + mf * (mf - 1.0 - 2.0 * kf);
                assert!(resid.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn scoring_formula_specializations() {
        for m in 2..9usize {
            for k in 1..m {
                let plur = scoring_quota(&ScoreVector::plurality(m), k).unwrap();
                assert_eq!(plur, quota_majority(&Rule::Plurality, k, m).unwrap());
                let borda = scoring_quota(&ScoreVector::borda(m), k).unwrap();
                assert_eq!(borda, quota_majority(&Rule::Borda, k, m).unwrap());
                let anti = scoring_quota(&ScoreVector::antiplurality(m), k).unwrap();
                assert_eq!(anti, quota_majority(&Rule::Antiplurality, k, m).unwrap());
            }
        }
    }

    #[test]
    fn dodgson_interval() {
        let q = quota_majority(&Rule::Dodgson, 2, 5).unwrap();
        assert!(!q.tight);
        assert_eq!(q.decimal(), "[0.500, 0.667]");
        assert!(quota_majority(&Rule::Dodgson, 1, 5).unwrap().tight);
    }

    #[test]
    fn sup_over_m_examples() {
        assert_eq!(dec(quota_majority_sup(&Rule::Plurality, 2)), "0.667");
        assert_eq!(quota_majority_sup(&Rule::Clr, 3).unwrap(), Quota::ratio(5, 9));
        assert_eq!(dec(quota_majority_sup(&Rule::Simpson, 4)), "0.750");
        assert_eq!(dec(quota_majority_sup(&Rule::Clr, 4)), "0.563");
        assert_eq!(dec(quota_majority_sup(&Rule::Runoff, 3)), "0.600");
    }

    /// Largest quota over a long range of m, computed from `quota_majority`.
    fn scan_sup(rule: &Rule, from: usize, k_of_m: impl Fn(usize) -> Option<usize>) -> QuadNum {
        (from..400)
            .filter_map(|m| k_of_m(m).map(|k| quota_majority(rule, k, m).unwrap().upper().clone()))
            .max()
            .unwrap()
    }

    #[test]
    fn sup_closed_forms_bound_the_scan() {
        let eps = QuadNum::from_ratio(1, 50);
        for rule in Rule::NAMED {
            for k in 1..6 {
                let sup = quota_majority_sup(&rule, k).unwrap().upper().clone();
                let scanned = scan_sup(&rule, k + 1, |_| Some(k));
                assert!(scanned <= sup, "{rule} k={k}");
                assert!(scanned.add_rational(&eps.rational_part().clone()) >= sup, "{rule} k={k}");
            }
        }
    }

    #[test]
    fn veto_sup_closed_forms_bound_the_scan() {
        let eps = QuadNum::from_ratio(1, 50);
        for rule in Rule::NAMED {
            for l in 1..7 {
                for half in [false, true] {
                    let from = if half { 3.max(2 * l) } else { 3.max(l + 1) };
                    let sup = quota_veto_sup(&rule, l, half).unwrap().upper().clone();
                    let scanned = scan_sup(&rule, from, |m| Some(m - l));
                    assert!(scanned <= sup, "{rule} l={l} half={half}");
                    assert!(
                        scanned.add_rational(&eps.rational_part().clone()) >= sup,
                        "{rule} l={l} half={half}"
                    );
                }
            }
        }
    }

    #[test]
    fn veto_examples() {
        assert_eq!(dec(quota_veto_sup(&Rule::Borda, 2, false)), "0.667");
        assert_eq!(dec(quota_veto_sup(&Rule::VetoCore, 4, true)), "0.500");
        assert_eq!(dec(quota_veto_sup(&Rule::Antiplurality, 1, false)), "0.333");
        assert_eq!(dec(quota_veto_sup(&Rule::ConvexMedian, 3, false)), "0.640");
        assert_eq!(
            quota_veto_sup(&Rule::ConvexMedian, 2, true).unwrap().point().unwrap(),
            &QuadNum::surd(-1, 1, 33, 8)
        );
    }

    #[test]
    fn tradeoff_values() {
        assert_eq!(tradeoff_threshold(1).unwrap(), Quota::ratio(1, 2));
        assert_eq!(tradeoff_threshold(2).unwrap(), Quota::ratio(4, 7));
        assert!(tradeoff_threshold(0).is_err());
    }
}
