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

//! Voting rules, qualified mutual majority and veto criteria, and exact
//! quota calculators.

pub mod criteria;
pub mod error;
pub mod exact;
pub mod io;
pub mod profile;
pub mod quota;
pub mod rules;
pub mod search;

pub use error::{Error, Result};
pub use exact::{QuadNum, Rational};
pub use profile::{CandidateSet, PositionalMatrix, Profile, TournamentMatrix};
pub use rules::{ChoiceSet, Rule, Score, ScoreReport};
