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

//! Quota tables: majority power by `k`, by `(m, k)`, and veto power by `l`
//! with and without the bottom-half restriction.

use crate::error::{Error, Result};
use crate::quota::{
    quota_majority, quota_majority_sup, quota_majority_sup_all, quota_veto_sup, quota_veto_sup_all,
};
use crate::rules::Rule;

use super::output::{Cell, ResultDocument, Row, Table};

/// Closed-form column entry for rows whose value varies with the parameter.
struct RowDef {
    label: &'static str,
    rule: Rule,
    formula: Option<&'static str>,
    /// Show only even (`Some(0)`) or odd (`Some(1)`) parameters.
    parity: Option<usize>,
}

const fn row_def(label: &'static str, rule: Rule, formula: Option<&'static str>) -> RowDef {
    RowDef { label, rule, formula, parity: None }
}

fn majority_by_k() -> Vec<RowDef> {
    vec![
        row_def("Instant-runoff", Rule::InstantRunoff, None),
        RowDef { parity: Some(0), ..row_def("CLR (even k)", Rule::Clr, Some("(5k-2)/(8k)")) },
        RowDef { parity: Some(1), ..row_def("CLR (odd k)", Rule::Clr, Some("(5k^2-2k+1)/(8k^2)")) },
        row_def("Convex median", Rule::ConvexMedian, Some("(3k-1)/(4k)")),
        row_def("RV", Rule::Runoff, Some("k/(k+2)")),
        row_def("Simpson's", Rule::Simpson, Some("(k-1)/k")),
        row_def("Young's", Rule::Young, Some("(k-1)/k")),
        row_def("Plurality", Rule::Plurality, Some("k/(k+1)")),
        row_def("Black's", Rule::Black, None),
        row_def("Proportional veto", Rule::VetoCore, None),
        row_def("Borda", Rule::Borda, None),
        row_def("Inverse plurality", Rule::Antiplurality, None),
    ]
}

fn majority_by_mk() -> Vec<RowDef> {
    vec![
        row_def("Instant-runoff", Rule::InstantRunoff, None),
        row_def("Condorcet least-reversal", Rule::Clr, None),
        row_def("Convex median", Rule::ConvexMedian, None),
        row_def("Plurality with runoff", Rule::Runoff, None),
        row_def("Simpson's", Rule::Simpson, None),
        row_def("Young's", Rule::Young, None),
        row_def("Plurality", Rule::Plurality, None),
        row_def("Black's", Rule::Black, None),
        row_def("Proportional veto", Rule::VetoCore, None),
        row_def("Borda", Rule::Borda, None),
        row_def("Inverse plurality", Rule::Antiplurality, None),
    ]
}

fn veto_by_l() -> Vec<RowDef> {
    vec![
        row_def("Instant-runoff", Rule::InstantRunoff, None),
        row_def("Condorcet least reversal", Rule::Clr, None),
        row_def("Convex median", Rule::ConvexMedian, Some("(3l-4)/(4l-4)")),
        row_def("Black's", Rule::Black, Some("(2l+1)/(2l+4)")),
        row_def("Proportional veto", Rule::VetoCore, Some("l/(l+1)")),
        row_def("Borda", Rule::Borda, Some("l/(l+1)")),
        row_def("Inverse plurality", Rule::Antiplurality, None),
        row_def("Plurality with runoff", Rule::Runoff, None),
        row_def("Simpson's", Rule::Simpson, None),
        row_def("Young's", Rule::Young, None),
        row_def("Plurality", Rule::Plurality, None),
    ]
}

fn veto_by_l_half() -> Vec<RowDef> {
    vec![
        row_def("Proportional veto", Rule::VetoCore, None),
        row_def("Instant-runoff", Rule::InstantRunoff, None),
        row_def("Condorcet least-reversal", Rule::Clr, None),
        row_def("Convex median", Rule::ConvexMedian, Some("(-7+3l+sqrt(17-10l+9l^2))/(8l-8)")),
        row_def("Black's", Rule::Black, Some("(3l-1)/(4l)")),
        row_def("Borda", Rule::Borda, Some("(3l-1)/(4l)")),
        row_def("Inverse plurality", Rule::Antiplurality, None),
        row_def("Plurality with runoff", Rule::Runoff, None),
        row_def("Simpson's", Rule::Simpson, None),
        row_def("Young's", Rule::Young, None),
        row_def("Plurality", Rule::Plurality, None),
    ]
}

/// Rows over parameters `1..=4`, a closed-form column and the supremum.
/// Rows without a formula repeat the supremum in the closed-form column.
fn by_parameter(
    defs: Vec<RowDef>,
    param: char,
    value: impl Fn(&Rule, usize) -> Result<crate::quota::Quota>,
    sup: impl Fn(&Rule) -> Result<crate::quota::Quota>,
) -> Result<Vec<Row>> {
    let mut rows = Vec::with_capacity(defs.len());
    for s in defs {
        let mut cells = Vec::with_capacity(6);
        for p in 1..=4 {
            if s.parity.is_some_and(|par| p % 2 != par) {
                cells.push(Cell::blank());
            } else {
                cells.push(Cell::quota(&value(&s.rule, p)?));
            }
        }
        let top = sup(&s.rule)?;
        cells.push(match s.formula {
            Some(f) => Cell { text: f.to_string(), exact: Some(f.replace(param, &param.to_string())) },
            None => Cell::quota(&top),
        });
        cells.push(Cell::quota(&top));
        rows.push(Row { label: s.label.to_string(), cells });
    }
    Ok(rows)
}

fn columns(first: &[&str]) -> Vec<String> {
    std::iter::once("Voting rule").chain(first.iter().copied()).map(String::from).collect()
}

/// The four regenerated quota tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotaTable {
    /// Supremum over `m` for each `k`.
    Majority,
    /// Exact values for `m = 3, 4`.
    MajoritySmall,
    /// Supremum over `m` for each `l`.
    Veto,
    /// Veto quotas restricted to `l ≤ m/2`.
    VetoHalf,
}

impl QuotaTable {
    pub const ALL: [QuotaTable; 4] =
        [QuotaTable::Majority, QuotaTable::MajoritySmall, QuotaTable::Veto, QuotaTable::VetoHalf];

    pub fn id(self) -> &'static str {
        match self {
            QuotaTable::Majority => "majority",
            QuotaTable::MajoritySmall => "majority-small",
            QuotaTable::Veto => "veto",
            QuotaTable::VetoHalf => "veto-half",
        }
    }
}

impl std::str::FromStr for QuotaTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuotaTable::ALL.into_iter().find(|t| t.id() == s.trim()).ok_or_else(|| {
            Error::OutOfRange(format!("no table `{s}`; choose majority, majority-small, veto or veto-half"))
        })
    }
}

pub fn emit_table(which: QuotaTable) -> Result<ResultDocument> {
    let table = match which {
        QuotaTable::Majority => Table {
            title: "Minimal quota q for the (q,k)-majority criterion".into(),
            columns: columns(&["k=1", "k=2", "k=3", "k=4", "k>1", "sup_k q"]),
            rows: by_parameter(majority_by_k(), 'k', quota_majority_sup, quota_majority_sup_all)?,
        },
        QuotaTable::MajoritySmall => {
            let cols = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)];
            let mut rows = Vec::new();
            for s in majority_by_mk() {
                let cells = cols
                    .iter()
                    .map(|&(m, k)| quota_majority(&s.rule, k, m).map(|q| Cell::quota(&q)))
                    .collect::<Result<_>>()?;
                rows.push(Row { label: s.label.to_string(), cells });
            }
            Table {
                title: "Minimal quota q for the (q,k,m)-majority criterion".into(),
                columns: columns(&["m=3 k=1", "m=3 k=2", "m=4 k=1", "m=4 k=2", "m=4 k=3"]),
                rows,
            }
        }
        QuotaTable::Veto => Table {
            title: "Minimal quota q for the (q,l)-veto criterion".into(),
            columns: columns(&["l=1", "l=2", "l=3", "l=4", "l>3", "sup_l q"]),
            rows: by_parameter(
                veto_by_l(),
                'l',
                |r, l| quota_veto_sup(r, l, false),
                |r| quota_veto_sup_all(r, false),
            )?,
        },
        QuotaTable::VetoHalf => Table {
            title: "Minimal quota q for the (q,m-l,m)-majority criterion with l <= m/2".into(),
            columns: columns(&["l=1", "l=2", "l=3", "l=4", "l>3", "sup_l q"]),
            rows: by_parameter(
                veto_by_l_half(),
                'l',
                |r, l| quota_veto_sup(r, l, true),
                |r| quota_veto_sup_all(r, true),
            )?,
        },
    };
    let mut doc = ResultDocument::new(format!("tables --which {}", which.id()));
    doc.tables.push(table);
    Ok(doc)
}
