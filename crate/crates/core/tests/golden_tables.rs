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

use votelab::io::{emit_table, render, Format, QuotaTable};

fn check(which: QuotaTable, golden: &str) {
    let doc = emit_table(which).unwrap();
    let out = render(&doc, Format::Csv);
    if out != golden {
        for (got, want) in out.lines().zip(golden.lines()) {
            if got != want {
                panic!("{which:?}:\n  got  {got}\n  want {want}");
            }
        }
        panic!("{which:?}: line count differs");
    }
}

#[test]
fn majority_by_k() {
    check(QuotaTable::Majority, include_str!("golden/majority.csv"));
}

#[test]
fn majority_by_m_and_k() {
    check(QuotaTable::MajoritySmall, include_str!("golden/majority_small.csv"));
}

#[test]
fn veto_by_l() {
    check(QuotaTable::Veto, include_str!("golden/veto.csv"));
}

#[test]
fn veto_by_l_bottom_half() {
    check(QuotaTable::VetoHalf, include_str!("golden/veto_half.csv"));
}
