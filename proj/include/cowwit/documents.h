// Copyright 2026 The cowwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COWWIT_DOCUMENTS_H
#define COWWIT_DOCUMENTS_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cowwit/cow_sim.h"
#include "cowwit/statistics.h"

namespace cowwit {

/// JSON file holding either raw tallies or an already renormalized table.
///
///     {
///       "schema_version": 1,
///       "loss_db": 14,                    // optional
///       "normalized": true,
///       "strict_normalization": true,     // optional, normalized only
///       "note": "...",                    // optional, ignored
///       "groups": {
///         "g_alpha0_early": ..., "g_alpha0_late": ...,
///         "g_0alpha_early": ..., "g_0alpha_late": ...,
///         "g_aa_m1": ..., "g_aa_m2": ...
///       }
///     }
///
/// With "normalized": false, "groups" holds "sent_alpha0" and
/// "sent_0alpha" ({early_only, late_only, both, none}) and
/// "sent_alphaalpha" ({m1_only, m2_only, both, none}) as integers.
///
/// A normalized table must have each pair summing to 1 within 1e-12
/// unless "strict_normalization" is false, in which case the defect is
/// recorded in `normalization_defect` and the values are kept verbatim.
struct CountsDocument {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::optional<double> loss_db;
    std::variant<RawCounts, RenormalizedTable> groups;
    bool strict_normalization = true;
    std::string note;

    bool normalized() const { return std::holds_alternative<RenormalizedTable>(groups); }
    /// Table to evaluate; renormalizes raw counts (may throw InsufficientData).
    RenormalizedTable table() const;
    double normalization_defect() const;
};

/// Throws FormatError on schema violations.
CountsDocument parse_counts_document(std::string_view text);
/// Throws IoError when the file cannot be read, FormatError when malformed.
CountsDocument load_counts_document(const std::filesystem::path &path);
/// Pretty-printed JSON with a trailing newline. Deterministic.
std::string serialize(const CountsDocument &doc);

/// Link configuration as nested JSON objects:
///
///     {
///       "source":   {"mu": 0.05, "f": 0.1, "n_rounds": 1000000},
///       "channel":  {"loss_db": 0, "v0": 0.98, "l_c": 30, "visibility": 1.0},
///       "receiver": {"t_b": 0.9, "eta_det": 0.2, "p_dark": 1e-5}
///     }
///
/// Every key is optional and falls back to the LinkConfig defaults.
/// "channel.visibility" fixes V and disables the loss model; "channel.l_c"
/// may be the string "inf". Unknown keys are rejected. Throws ConfigError.
LinkConfig parse_link_config(std::string_view text);
/// Throws IoError when the file cannot be read.
LinkConfig load_link_config(const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

}  // namespace cowwit

#endif
