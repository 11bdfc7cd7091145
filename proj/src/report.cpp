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

#include "qdleak/report.hpp"

#include <cmath>
#include <stdexcept>

namespace qdleak {

using nlohmann::json;

namespace {

bool is_string_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!e.is_string()) return false;
  return true;
}

void require(std::vector<std::string>& errors, bool ok, const std::string& what) {
  if (!ok) errors.push_back(what);
}

}  // namespace

ReportDocument make_report_document(const LeakageReport& report) {
  ReportDocument doc;
  doc.protocol = std::string(to_string(report.protocol));
  doc.params["parties"] = report.params.parties;
  doc.totals = {report.total_bits, report.secure_bits, report.leaked_bits};
  for (const auto& t : report.per_transcript) {
    TranscriptEntry entry{announced_strings(t.transcript), t.probability, {},
                          t.entropy_bits, t.leaked_bits};
    for (const auto& h : t.posterior.hypotheses)
      entry.posterior.push_back({secret_strings(h.secrets), h.probability});
    doc.transcripts.push_back(std::move(entry));
  }
  return doc;
}

void to_json(json& j, const ReportDocument& doc) {
  json transcripts = json::array();
  for (const auto& t : doc.transcripts) {
    json posterior = json::array();
    for (const auto& p : t.posterior)
      posterior.push_back({{"secrets", p.secrets}, {"prob", p.prob}});
    transcripts.push_back({{"announced", t.announced},
                           {"probability", t.probability},
                           {"posterior", posterior},
                           {"entropy_bits", t.entropy_bits},
                           {"leaked_bits", t.leaked_bits}});
  }
  j = json{{"schema_version", doc.schema_version},
           {"protocol", doc.protocol},
           {"params", doc.params},
           {"totals",
            {{"total_bits", doc.totals.total_bits},
             {"secure_bits", doc.totals.secure_bits},
             {"leaked_bits", doc.totals.leaked_bits}}},
           {"transcripts", transcripts}};
}

std::vector<std::string> validate_report(const json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"document is not an object"};
  require(errors, j.contains("schema_version") && j["schema_version"].is_string(),
          "schema_version must be a string");
  if (errors.empty() && j["schema_version"] != kReportSchemaVersion)
    errors.push_back("unsupported schema_version");
  require(errors, j.contains("protocol") && j["protocol"].is_string(),
          "protocol must be a string");
  bool params_ok = j.contains("params") && j["params"].is_object();
  if (params_ok)
    for (const auto& [key, value] : j["params"].items())
      params_ok = params_ok && value.is_number_integer();
  require(errors, params_ok, "params must map names to integers");

  const bool totals_ok =
      j.contains("totals") && j["totals"].is_object() &&
      j["totals"].contains("total_bits") &&
      j["totals"]["total_bits"].is_number_integer() &&
      j["totals"].contains("secure_bits") &&
      j["totals"]["secure_bits"].is_number() &&
      j["totals"].contains("leaked_bits") &&
      j["totals"]["leaked_bits"].is_number();
  require(errors, totals_ok, "totals must hold total_bits, secure_bits, leaked_bits");
  if (totals_ok) {
    const auto& t = j["totals"];
    const double sum = t["secure_bits"].get<double>() + t["leaked_bits"].get<double>();
    require(errors, std::abs(sum - t["total_bits"].get<double>()) <= 1e-9,
            "secure_bits + leaked_bits must equal total_bits");
  }

  if (!j.contains("transcripts") || !j["transcripts"].is_array()) {
    errors.push_back("transcripts must be an array");
    return errors;
  }
  double secure = 0.0;
  double mass = 0.0;
  bool entries_ok = true;
  for (std::size_t i = 0; i < j["transcripts"].size(); ++i) {
    const auto& t = j["transcripts"][i];
    const std::string where = "transcripts[" + std::to_string(i) + "]";
    const bool shape_ok =
        t.is_object() && t.contains("announced") && is_string_array(t["announced"]) &&
        t.contains("probability") && t["probability"].is_number() &&
        t.contains("entropy_bits") && t["entropy_bits"].is_number() &&
        t.contains("leaked_bits") && t["leaked_bits"].is_number() &&
        t.contains("posterior") && t["posterior"].is_array();
    if (!shape_ok) {
      errors.push_back(where + " is malformed");
      entries_ok = false;
      continue;
    }
    std::vector<double> probs;
    for (const auto& p : t["posterior"]) {
      if (!p.is_object() || !p.contains("secrets") || !is_string_array(p["secrets"]) ||
          !p.contains("prob") || !p["prob"].is_number()) {
        errors.push_back(where + " has a malformed posterior entry");
        entries_ok = false;
        continue;
      }
      probs.push_back(p["prob"].get<double>());
    }
    try {
      const double h = shannon_entropy(probs);
      require(errors, std::abs(h - t["entropy_bits"].get<double>()) <= 1e-9,
              where + " entropy_bits disagrees with its posterior");
    } catch (const std::invalid_argument&) {
      errors.push_back(where + " posterior is not a distribution");
    }
    const double p_t = t["probability"].get<double>();
    secure += p_t * t["entropy_bits"].get<double>();
    mass += p_t;
  }
  if (entries_ok && totals_ok && !j["transcripts"].empty()) {
    require(errors, std::abs(mass - 1.0) <= 1e-9,
            "transcript probabilities must sum to 1");
    require(errors,
            std::abs(secure - j["totals"]["secure_bits"].get<double>()) <= 1e-9,
            "secure_bits disagrees with the per-transcript entropies");
  }
  return errors;
}

void from_json(const json& j, ReportDocument& doc) {
  const auto errors = validate_report(j);
  if (!errors.empty()) {
    std::string message = "invalid report:";
    for (const auto& e : errors) message += " " + e + ";";
    throw std::invalid_argument(message);
  }
  doc.schema_version = j["schema_version"].get<std::string>();
  doc.protocol = j["protocol"].get<std::string>();
  doc.params = j["params"].get<std::map<std::string, int>>();
  doc.totals = {j["totals"]["total_bits"].get<int>(),
                j["totals"]["secure_bits"].get<double>(),
                j["totals"]["leaked_bits"].get<double>()};
  doc.transcripts.clear();
  for (const auto& t : j["transcripts"]) {
    TranscriptEntry entry{t["announced"].get<std::vector<std::string>>(),
                          t["probability"].get<double>(),
                          {},
                          t["entropy_bits"].get<double>(),
                          t["leaked_bits"].get<double>()};
    for (const auto& p : t["posterior"])
      entry.posterior.push_back(
          {p["secrets"].get<std::vector<std::string>>(), p["prob"].get<double>()});
    doc.transcripts.push_back(std::move(entry));
  }
}

std::string serialize(const ReportDocument& doc) {
  return json(doc).dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  return json::parse(text).get<ReportDocument>();
}

}  // namespace qdleak
