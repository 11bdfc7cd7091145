// Copyright 2026 The qdleak Authors
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

// Machine-readable leakage reports. Documents serialize to JSON with sorted
// keys; docs/report.schema.json describes the layout.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdleak/leakage.hpp"

namespace qdleak {

inline constexpr std::string_view kReportSchemaVersion = "qdleak.report/1";

struct PosteriorEntry {
  std::vector<std::string> secrets;
  double prob = 0.0;
  bool operator==(const PosteriorEntry&) const = default;
};

struct TranscriptEntry {
  std::vector<std::string> announced;
  double probability = 0.0;
  std::vector<PosteriorEntry> posterior;
  double entropy_bits = 0.0;
  double leaked_bits = 0.0;
  bool operator==(const TranscriptEntry&) const = default;
};

struct ReportTotals {
  int total_bits = 0;
  double secure_bits = 0.0;
  double leaked_bits = 0.0;
  bool operator==(const ReportTotals&) const = default;
};

struct ReportDocument {
  std::string schema_version{kReportSchemaVersion};
  std::string protocol;
  std::map<std::string, int> params;
  ReportTotals totals;
  std::vector<TranscriptEntry> transcripts;
  bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_report_document(const LeakageReport& report);

void to_json(nlohmann::json& j, const ReportDocument& doc);
/// Throws std::invalid_argument listing every schema violation.
void from_json(const nlohmann::json& j, ReportDocument& doc);

/// Schema violations plus entropy and totals mismatches against values
/// recomputed from the listed probabilities. Empty means valid.
std::vector<std::string> validate_report(const nlohmann::json& j);

/// Two-space indented JSON followed by a newline.
std::string serialize(const ReportDocument& doc);
ReportDocument parse_report(std::string_view text);

}  // namespace qdleak
