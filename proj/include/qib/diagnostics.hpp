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

#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace qib {

/// Non-fatal numerical diagnostics (support violations, clamped noise,
/// unseen test cells). The default sink writes to stderr.
using WarningSink = std::function<void(std::string_view)>;

void warn(std::string_view message);

/// Replaces the process-wide sink and returns the previous one. Pass an empty
/// function to silence warnings.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace qib
