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

//! Acceptance suite. Each test writes one `criterion N: PASS|FAIL` line to
//! stderr (outside the test harness capture) and fails when the criterion
//! or its time limit is missed.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use votelab::criteria::{
    bottom_groups, check_qk_majority, check_ql_veto, dominated_winners, mutual_majority_groups,
    second_order_dominance,
};
use votelab::io::{emit_table, parse_profile, render, Format, QuotaTable};
use votelab::quota::{
    quota_majority, quota_majority_sup, quota_majority_sup_all, quota_veto_sup, quota_veto_sup_all,
};
use votelab::rules::{dodgson_score, young_score, Trace};
use votelab::search::generate::{all_profiles, random_profile};
use votelab::search::oracle::{oracle_dodgson_score, oracle_young_score};
use votelab::search::{
    empirical_quota, exhaustive_criterion_search, worst_case_profile, SearchBudget, SearchOutcome,
};
use votelab::{CandidateSet, Profile, QuadNum, Rational, Rule};

type Check = Result<String, String>;
type ClosedForm = Box<dyn Fn(i64) -> QuadNum>;

fn criterion(n: u32, name: &str, limit: Duration, body: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (ok, detail) = match &outcome {
        Ok(d) if elapsed <= limit => (true, d.clone()),
        Ok(d) => (false, format!("{d}; over the {limit:?} limit")),
        Err(e) => (false, e.clone()),
    };
    let verdict = if ok { "PASS" } else { "FAIL" };
    let line = format!("\ncriterion {n:>2}: {verdict}  {name} [{elapsed:.2?}] {detail}\n");
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(ok, "{}", line.trim());
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(p: i64, s: i64) -> QuadNum {
    QuadNum::from_ratio(p, s)
}

fn golden(which: QuotaTable, text: &str) -> Result<(), String> {
    let out = render(&emit_table(which).map_err(|e| e.to_string())?, Format::Csv);
    for (i, (got, want)) in out.lines().zip(text.lines()).enumerate() {
        ensure(got == want, || format!("{which:?} line {}: got `{got}`, printed `{want}`", i + 1))?;
    }
    ensure(out.lines().count() == text.lines().count(), || format!("{which:?}: row count differs"))
}

fn point(q: votelab::quota::Quota) -> Result<QuadNum, String> {
    q.point().cloned().ok_or_else(|| format!("expected a single value, got {q}"))
}

#[test]
fn c01_majority_power_by_k() {
    criterion(1, "quota table by k", Duration::from_secs(1), || {
        golden(QuotaTable::Majority, include_str!("golden/majority.csv"))?;
        let expected: Vec<(Rule, ClosedForm)> = vec![
            (Rule::InstantRunoff, Box::new(|_| r(1, 2))),
            (
                Rule::Clr,
                Box::new(
                    |k| if k % 2 == 0 { r(5 * k - 2, 8 * k) } else { r(5 * k * k - 2 * k + 1, 8 * k * k) },
                ),
            ),
            (Rule::ConvexMedian, Box::new(|k| if k == 1 { r(1, 2) } else { r(3 * k - 1, 4 * k) })),
            (Rule::Runoff, Box::new(|k| if k == 1 { r(1, 2) } else { r(k, k + 2) })),
            (Rule::Simpson, Box::new(|k| if k == 1 { r(1, 2) } else { r(k - 1, k) })),
            (Rule::Young, Box::new(|k| if k == 1 { r(1, 2) } else { r(k - 1, k) })),
            (Rule::Plurality, Box::new(|k| r(k, k + 1))),
            (Rule::Black, Box::new(|k| if k == 1 { r(1, 2) } else { r(1, 1) })),
            (Rule::VetoCore, Box::new(|_| r(1, 1))),
            (Rule::Borda, Box::new(|_| r(1, 1))),
            (Rule::Antiplurality, Box::new(|_| r(1, 1))),
        ];
        for (rule, f) in &expected {
            for k in 1..=40 {
                let got = point(quota_majority_sup(rule, k as usize).map_err(|e| e.to_string())?)?;
                ensure(got == f(k), || format!("{rule} k={k}: {got} != {}", f(k)))?;
            }
        }
        let sups = [
            (Rule::InstantRunoff, r(1, 2)),
            (Rule::Clr, r(5, 8)),
            (Rule::ConvexMedian, r(3, 4)),
            (Rule::Runoff, r(1, 1)),
            (Rule::Simpson, r(1, 1)),
            (Rule::Plurality, r(1, 1)),
            (Rule::Black, r(1, 1)),
        ];
        for (rule, want) in sups {
            let got = point(quota_majority_sup_all(&rule).map_err(|e| e.to_string())?)?;
            ensure(got == want, || format!("{rule} sup: {got} != {want}"))?;
        }
        Ok("12 rows, k = 1..40 exact".into())
    });
}

#[test]
fn c02_majority_power_small_m() {
    criterion(2, "quota table for m = 3, 4", Duration::from_secs(1), || {
        golden(QuotaTable::MajoritySmall, include_str!("golden/majority_small.csv"))?;
        let cm = QuadNum::surd(-1, 1, 33, 8);
        let half = r(1, 2);
        // (rule, [m3k1, m3k2, m4k1, m4k2, m4k3]) as printed.
        let rows: Vec<(Rule, [QuadNum; 5])> = vec![
            (Rule::InstantRunoff, [half.clone(), half.clone(), half.clone(), half.clone(), half.clone()]),
            (Rule::Clr, [half.clone(), half.clone(), half.clone(), half.clone(), r(5, 9)]),
            (Rule::ConvexMedian, [half.clone(), half.clone(), half.clone(), cm.clone(), half.clone()]),
            (Rule::Runoff, [half.clone(), half.clone(), half.clone(), half.clone(), half.clone()]),
            (Rule::Simpson, [half.clone(), half.clone(), half.clone(), half.clone(), r(2, 3)]),
            (Rule::Young, [half.clone(), half.clone(), half.clone(), half.clone(), r(2, 3)]),
            (Rule::Plurality, [half.clone(), r(2, 3), half.clone(), r(2, 3), r(3, 4)]),
            (Rule::Black, [half.clone(), half.clone(), half.clone(), r(5, 8), half.clone()]),
            (Rule::VetoCore, [r(2, 3), r(1, 3), r(3, 4), half.clone(), r(1, 4)]),
            (Rule::Borda, [r(2, 3), half.clone(), r(3, 4), r(5, 8), half.clone()]),
            (Rule::Antiplurality, [r(1, 1), r(1, 3), r(1, 1), r(1, 1), r(1, 4)]),
        ];
        let cells = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)];
        for (rule, want) in &rows {
            for (&(m, k), w) in cells.iter().zip(want) {
                let got = point(quota_majority(rule, k, m).map_err(|e| e.to_string())?)?;
                ensure(got == *w, || format!("{rule} m={m} k={k}: {got} != {w}"))?;
            }
        }
        // The irrational entry solves 8q² + 2q − 4 = 0.
        let q = cm.to_f64();
        ensure((8.0 * q * q + 2.0 * q - 4.0).abs() < 1e-12, || "root check".into())?;
        ensure(cm.to_string() == "(-1+sqrt(33))/8", || format!("exact form {cm}"))?;
        Ok(format!("55 cells exact, convex median (2,4) = {cm}"))
    });
}

#[test]
fn c03_veto_power() {
    criterion(3, "veto quota tables", Duration::from_secs(1), || {
        golden(QuotaTable::Veto, include_str!("golden/veto.csv"))?;
        golden(QuotaTable::VetoHalf, include_str!("golden/veto_half.csv"))?;
        for l in 4..=40i64 {
            let want = QuadNum::surd(-7 + 3 * l, 1, (9 * l * l - 10 * l + 17) as u64, 8 * l - 8);
            let got =
                point(quota_veto_sup(&Rule::ConvexMedian, l as usize, true).map_err(|e| e.to_string())?)?;
            ensure(got == want, || format!("convex median l={l}: {got} != {want}"))?;
            let unrestricted =
                point(quota_veto_sup(&Rule::ConvexMedian, l as usize, false).map_err(|e| e.to_string())?)?;
            let linear = r(3 * l - 4, 4 * l - 4);
            let expect = if want > linear { want.clone() } else { linear };
            ensure(unrestricted == expect, || format!("convex median l={l} unrestricted: {unrestricted}"))?;
            for (rule, half, f) in [
                (Rule::Black, true, r(3 * l - 1, 4 * l)),
                (Rule::Borda, true, r(3 * l - 1, 4 * l)),
                (Rule::Black, false, r(2 * l + 1, 2 * l + 4)),
                (Rule::Borda, false, r(l, l + 1)),
                (Rule::VetoCore, false, r(l, l + 1)),
                (Rule::VetoCore, true, r(1, 2)),
            ] {
                let got = point(quota_veto_sup(&rule, l as usize, half).map_err(|e| e.to_string())?)?;
                ensure(got == f, || format!("{rule} l={l} half={half}: {got} != {f}"))?;
            }
        }
        for (rule, half, want) in [
            (Rule::ConvexMedian, true, r(3, 4)),
            (Rule::Black, true, r(3, 4)),
            (Rule::VetoCore, true, r(1, 2)),
            (Rule::Clr, false, r(5, 8)),
            (Rule::Black, false, r(1, 1)),
        ] {
            let got = point(quota_veto_sup_all(&rule, half).map_err(|e| e.to_string())?)?;
            ensure(got == want, || format!("{rule} sup half={half}: {got}"))?;
        }
        Ok("both veto tables golden, closed forms l = 4..40".into())
    });
}

fn primaries() -> Profile {
    parse_profile(include_str!("data/primaries.txt")).unwrap()
}

fn four_candidates() -> Profile {
    parse_profile(include_str!("data/four_candidates.txt")).unwrap()
}

fn names(p: &Profile, rule: Rule) -> Result<Vec<String>, String> {
    Ok(p.names_of(rule.winners(p).map_err(|e| e.to_string())?.set()))
}

#[test]
fn c04_example_winners() {
    criterion(4, "example profiles", Duration::from_secs(1), || {
        let p1 = primaries();
        for (rule, want) in
            [(Rule::Plurality, "Hillary"), (Rule::Runoff, "Donald"), (Rule::InstantRunoff, "Ted")]
        {
            let got = names(&p1, rule.clone())?;
            ensure(got == [want], || format!("{rule}: {got:?}"))?;
        }
        let report = Rule::InstantRunoff.report(&p1).map_err(|e| e.to_string())?;
        let Trace::Elimination { rounds, .. } = report.trace else {
            return Err("no elimination trace".into());
        };
        let order: Vec<&str> = rounds.iter().map(|r| p1.name(r.lowest.first().unwrap())).collect();
        ensure(order == ["John", "Bernie", "Donald", "Hillary"], || format!("elimination {order:?}"))?;

        let p2 = four_candidates();
        ensure(p2.condorcet_winner(p2.all()) == Some(0), || "Condorcet winner".into())?;
        for rule in [Rule::Black, Rule::Simpson, Rule::Young, Rule::Dodgson, Rule::Clr] {
            let got = names(&p2, rule.clone())?;
            ensure(got == ["a"], || format!("{rule}: {got:?}"))?;
        }
        for rule in [Rule::Plurality, Rule::Borda] {
            let got = names(&p2, rule.clone())?;
            ensure(got == ["c"], || format!("{rule}: {got:?}"))?;
        }
        let borda: Vec<String> = Rule::Borda
            .report(&p2)
            .map_err(|e| e.to_string())?
            .scores
            .iter()
            .map(|s| s.to_string())
            .collect();
        ensure(borda == ["165", "163", "186", "86"], || format!("Borda {borda:?}"))?;
        let h = p2.tournament_matrix();
        let printed = [[0, 51, 57, 57], [49, 0, 57, 57], [43, 43, 0, 100], [43, 43, 0, 0]];
        for (a, row) in printed.iter().enumerate() {
            for b in (0..4).filter(|&b| b != a) {
                ensure(h.get(a, b) == row[b], || format!("h({a},{b}) = {}", h.get(a, b)))?;
            }
        }
        let pm = p2.positional_matrix();
        let ranks = [[29, 28, 43, 0], [28, 29, 0, 43], [22, 21, 57, 0], [21, 22, 0, 57]];
        for (pos, row) in ranks.iter().enumerate() {
            for (a, &v) in row.iter().enumerate() {
                ensure(pm.get(pos, a) == v, || format!("n_{}({a}) = {}", pos + 1, pm.get(pos, a)))?;
            }
        }
        Ok("winners, elimination order, Borda scores and both matrices".into())
    });
}

#[test]
fn c05_second_order_dominance() {
    criterion(5, "2-PD on the four-candidate example", Duration::from_secs(1), || {
        let d = second_order_dominance(&four_candidates());
        ensure(d.contains(&(2, 0)) && d.contains(&(2, 1)), || format!("relation {d:?}"))?;
        Ok("(c,a) and (c,b) present".into())
    });
}

fn budget(n: u64) -> SearchBudget {
    SearchBudget { max_voters: n, ..SearchBudget::default() }
}

#[test]
fn c06_tightness_m3() {
    criterion(6, "tightness search, m = 3, n <= 12", Duration::from_secs(300), || {
        let rules = [
            Rule::Plurality,
            Rule::Runoff,
            Rule::InstantRunoff,
            Rule::Borda,
            Rule::Antiplurality,
            Rule::Simpson,
            Rule::Clr,
            Rule::Black,
            Rule::ConvexMedian,
            Rule::VetoCore,
        ];
        let tol = Rational::new(1, 12);
        let mut exact_hits = 0;
        for rule in &rules {
            for k in 1..=2 {
                let q = point(quota_majority(rule, k, 3).map_err(|e| e.to_string())?)?;
                let search =
                    exhaustive_criterion_search(rule, 3, k, &q, &budget(12)).map_err(|e| e.to_string())?;
                ensure(matches!(search, SearchOutcome::Clean { .. }), || {
                    format!("{rule} k={k} at {q}: {search:?}")
                })?;
                let e = empirical_quota(rule, 3, k, &budget(12)).map_err(|e| e.to_string())?;
                let share = e.share.ok_or_else(|| format!("{rule} k={k}: no violating profile"))?;
                let sq = QuadNum::from(share);
                ensure(sq <= q, || format!("{rule} k={k}: witness share {share} above quota {q}"))?;
                let gap = q.add_rational(&-BigRational::new(
                    BigInt::from(*share.numer()),
                    BigInt::from(*share.denom()),
                ));
                ensure(gap <= QuadNum::from(tol), || format!("{rule} k={k}: share {share} vs quota {q}"))?;
                let w = e.witness.unwrap();
                let again = check_qk_majority(
                    rule,
                    &w.profile,
                    &sq.add_rational(&BigRational::new((-1).into(), 1000.into())),
                    k,
                )
                .map_err(|e| e.to_string())?;
                ensure(again.is_some(), || format!("{rule} k={k}: witness does not replay"))?;
                exact_hits += (sq == q) as usize;
            }
        }
        Ok(format!("20 cases clean at the quota; {exact_hits} witnesses attain it exactly"))
    });
}

#[test]
fn c07_spot_checks_m4() {
    criterion(7, "m = 4 spot checks, n <= 8", Duration::from_secs(600), || {
        let cases = [
            (Rule::Black, 2, r(5, 8)),
            (Rule::ConvexMedian, 2, QuadNum::surd(-1, 1, 33, 8)),
            (Rule::Simpson, 3, r(2, 3)),
            (Rule::Clr, 3, r(5, 9)),
        ];
        let step = BigRational::new((-1).into(), 20.into());
        let mut failures = Vec::new();
        let mut notes = Vec::new();
        for (rule, k, q) in cases {
            let at = exhaustive_criterion_search(&rule, 4, k, &q, &budget(8)).map_err(|e| e.to_string())?;
            if !matches!(at, SearchOutcome::Clean { .. }) {
                failures.push(format!("{rule} k={k}: violation at the quota {q}"));
            }
            let lower = q.add_rational(&step);
            match exhaustive_criterion_search(&rule, 4, k, &lower, &budget(8)).map_err(|e| e.to_string())? {
                SearchOutcome::Violation { violation, .. } => {
                    notes.push(format!("{rule} {}/{}", violation.support, violation.profile.num_voters()))
                }
                other => failures.push(format!(
                    "{rule} k={k}: no violation at {lower} (~{:.4}) with n <= 8 ({other:?})",
                    lower.to_f64()
                )),
            }
        }
        if failures.is_empty() {
            Ok(format!("clean at all quotas; witnesses {}", notes.join(", ")))
        } else {
            Err(failures.join("; "))
        }
    });
}

#[test]
fn c08_oracle_equivalence() {
    criterion(8, "Young and Dodgson against brute force", Duration::from_secs(300), || {
        let mut checked = 0;
        let mut compare = |p: &Profile| -> Result<(), String> {
            for a in 0..p.num_candidates() {
                let y = young_score(p, a);
                let yo = oracle_young_score(p, a, 10_000_000).map_err(|e| e.to_string())?;
                ensure(y == yo, || format!("Young {a}: {y} vs oracle {yo} on\n{p:?}"))?;
                let d = dodgson_score(p, a).map_err(|e| e.to_string())?;
                let dor = oracle_dodgson_score(p, a, 10_000_000).map_err(|e| e.to_string())?;
                ensure(d == dor, || format!("Dodgson {a}: {d} vs oracle {dor} on\n{p:?}"))?;
            }
            checked += 1;
            Ok(())
        };
        for n in 1..=6 {
            for p in all_profiles(3, n) {
                compare(&p)?;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            compare(&random_profile(&mut rng, 4, 8))?;
        }
        Ok(format!("{checked} profiles agree"))
    });
}

#[test]
fn c09_borda_two_ways() {
    criterion(9, "Borda from positions equals Borda from duels", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..1000 {
            let m = rng.gen_range(2..=5);
            let p = random_profile(&mut rng, m, 30);
            let pm = p.positional_matrix();
            let h = p.tournament_matrix();
            let report = Rule::Borda.report(&p).map_err(|e| e.to_string())?;
            for a in 0..m {
                let by_rank: u64 = (0..m).map(|pos| (m - 1 - pos) as u64 * pm.get(pos, a)).sum();
                let by_duel: u64 = (0..m).filter(|&b| b != a).map(|b| h.get(a, b)).sum();
                ensure(by_rank == by_duel, || format!("profile {i}, candidate {a}: {by_rank} vs {by_duel}"))?;
                ensure(report.scores[a].exact() == QuadNum::integer(by_rank as i64), || {
                    format!("profile {i}: rule score")
                })?;
            }
        }
        Ok("1000 profiles".into())
    });
}

#[test]
fn c10_tradeoff_rule() {
    criterion(10, "2-PD tradeoff rule, k = 1, m = 3", Duration::from_secs(120), || {
        let b = CandidateSet::singleton(0);
        let mut constructions = 0;
        for n in 1..=24i64 {
            for s in 1..=n {
                let q = Rational::new(s, n);
                let Ok(p) = worst_case_profile(3, 1, q, n as u64) else { continue };
                let w = Rule::T12.winners(&p).map_err(|e| e.to_string())?;
                if q > Rational::new(1, 2) {
                    ensure(w.is_subset(b), || {
                        format!("q = {q}, n = {n}: winners {:?}", p.names_of(w.set()))
                    })?;
                } else if q < Rational::new(1, 2) {
                    let d = second_order_dominance(&p);
                    ensure(d.contains(&(1, 0)), || format!("q = {q}, n = {n}: a1 does not dominate b1"))?;
                }
                constructions += 1;
            }
        }
        let search =
            exhaustive_criterion_search(&Rule::T12, 3, 1, &r(1, 2), &budget(8)).map_err(|e| e.to_string())?;
        ensure(matches!(search, SearchOutcome::Clean { .. }), || format!("majority search: {search:?}"))?;
        let mut profiles = 0;
        for n in 1..=8 {
            for p in all_profiles(3, n) {
                let w = Rule::T12.winners(&p).map_err(|e| e.to_string())?;
                let bad = dominated_winners(&p, w);
                ensure(bad.is_empty(), || format!("dominated winner {:?} in {p:?}", p.names_of(bad)))?;
                profiles += 1;
            }
        }
        Ok(format!("{constructions} constructions; {profiles} profiles without dominated winners"))
    });
}

#[test]
fn c11_veto_duality() {
    criterion(11, "veto check equals majority check with k = m - l", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut violations = 0;
        for i in 0..500 {
            let rule = Rule::NAMED[rng.gen_range(0..Rule::NAMED.len())].clone();
            let m = rng.gen_range(3..=5);
            let p = random_profile(&mut rng, m, 12);
            let l = rng.gen_range(1..m);
            let s = rng.gen_range(2..=12);
            let q = QuadNum::from_ratio(rng.gen_range(1..s), s);
            let veto = check_ql_veto(&rule, &p, &q, l).map_err(|e| e.to_string())?;
            let major = check_qk_majority(&rule, &p, &q, m - l).map_err(|e| e.to_string())?;
            ensure(veto.is_some() == major.is_some(), || format!("instance {i}: {rule} l={l} q={q}"))?;
            if let (Some(v), Some(w)) = (&veto, &major) {
                // Each witness must be a violating group on the other side.
                let tops = mutual_majority_groups(&p, m - l).map_err(|e| e.to_string())?;
                let bottoms = bottom_groups(&p, l).map_err(|e| e.to_string())?;
                ensure(tops.contains(&(v.b_set, v.support)) && !v.winners.is_subset(v.b_set), || {
                    format!("instance {i}: veto witness is not a majority witness")
                })?;
                ensure(bottoms.contains(&(p.all().difference(w.b_set), w.support)), || {
                    format!("instance {i}: majority witness is not a veto witness")
                })?;
                violations += 1;
            }
        }
        Ok(format!("500 instances, {violations} violations matched"))
    });
}
