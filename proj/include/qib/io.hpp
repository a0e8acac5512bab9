// Copyright 2026 The quantum-bottleneck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON encodings of matrices, states and channels, and CSV emission of
// iteration traces. Decoding errors are ValidationErrors whose message
// starts with the JSON pointer of the offending field.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qib/cq_model.hpp"
#include "qib/qib_engine.hpp"

namespace qib::io {

using Json = nlohmann::json;

/// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted on input.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& pointer);

/// {"px": [...], "dimY": n, "rhoY": [matrix, ...]}.
Json state_to_json(const CQState& state);
CQState state_from_json(const Json& j, const std::string& pointer);

/// {"dimT": n, "classical": bool, "sigmaT": [matrix, ...]}.
Json channel_to_json(const CQChannel& channel);
CQChannel channel_from_json(const Json& j, const std::string& pointer);

/// Throws ValidationError naming the path when the file cannot be read or
/// parsed.
Json read_json_file(const std::string& path);

/// 17 significant digits, '.' decimal point, independent of the locale.
/// NaN prints as "NaN".
std::string format_double(double v);

/// Joins fields with commas.
std::string csv_row(const std::vector<std::string>& fields);

std::vector<std::string> trace_header(bool qdib);
std::vector<std::string> trace_fields(const IterationRecord& r, bool qdib);

/// Header, one row per record, then "# status=<status>".
void write_trace_csv(std::ostream& os, const IterationTrace& trace);

Json trace_to_json(const IterationTrace& trace);

/// Writes `content` to a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace qib::io
