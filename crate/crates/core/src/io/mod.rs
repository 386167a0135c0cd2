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

//! Profile files, quota tables and command output.

pub mod format;
pub mod output;
pub mod tables;

pub use format::{parse_document, parse_preflib_soc, parse_profile, serialize_profile, ProfileDocument};
pub use output::{render, Format, ResultDocument, Status, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
pub use tables::{emit_table, QuotaTable};
