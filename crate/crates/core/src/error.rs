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

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty candidate subset")]
    EmptySubset,

    #[error("candidate index {0} out of range")]
    UnknownCandidate(usize),

    #[error("unknown rule id `{0}`")]
    UnknownRule(String),

    #[error("invalid score vector: {0}")]
    InvalidScores(String),

    #[error("invalid number `{0}`")]
    InvalidNumber(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("divisibility: {0}")]
    Divisibility(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
