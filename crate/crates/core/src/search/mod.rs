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

//! Profile generators, brute-force oracles and bounded criterion search.

mod exhaustive;
pub mod generate;
pub mod oracle;

pub use exhaustive::{
    empirical_quota, exhaustive_criterion_search, EmpiricalQuota, SearchBudget, SearchOutcome, MAX_VOTERS_ENV,
};
pub use generate::{condorcet_k_tuple, worst_case_profile};
