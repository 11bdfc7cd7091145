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

#include "qdleak/cli.hpp"

#include <array>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdleak/leakage.hpp"
#include "qdleak/report.hpp"

namespace qdleak::cli {

using nlohmann::json;

namespace {

constexpr std::string_view kRunSchemaVersion = "qdleak.run/1";
constexpr std::string_view kTableSchemaVersion = "qdleak.table1/1";

constexpr std::array<std::string_view, 6> kPartyNames{
    "alice", "bob", "charlie", "dave", "erin", "frank"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string protocol;
  std::string alice;
  std::string bob;
  std::string others;
  int parties = 0;
  std::string initial;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool verbose = false;
};

unsigned parse_bits(const std::string& text, int width, std::string_view flag) {
  if (static_cast<int>(text.size()) != width)
    throw UsageError(std::string(flag) + " expects " + std::to_string(width) +
                     " bit(s), got '" + text + "'");
  unsigned value = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw UsageError(std::string(flag) + " must be binary, got '" + text + "'");
    value = (value << 1) | static_cast<unsigned>(c - '0');
  }
  return value;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Protocol require_protocol(const Options& o, bool allow_otp) {
  const auto p = parse_protocol(o.protocol);
  if (!p || (!allow_otp && *p == Protocol::Otp))
    throw UsageError("unknown protocol '" + o.protocol + "'");
  return *p;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string describe_view(const SecretAssignment& view, int self) {
  const auto bits = secret_strings(view);
  std::vector<std::string> parts;
  for (int p = 0; p < view.parties(); ++p)
    if (p != self)
      parts.push_back(std::string(kPartyNames[static_cast<std::size_t>(p)]) +
                      "=" + bits[static_cast<std::size_t>(p)]);
  return join(parts, " ");
}

SecretAssignment secrets_from_flags(Protocol protocol, const Options& o,
                                    int parties) {
  if (o.alice.empty()) throw UsageError("--alice is required");
  SecretAssignment s{protocol, parse_bits(o.alice, alice_bit_width(protocol), "--alice"),
                     {}};
  if (protocol == Protocol::Mxn) {
    if (!o.bob.empty()) throw UsageError("mxn takes --others, not --bob");
    if (o.others.empty()) throw UsageError("--others is required for mxn");
    const auto items = split_commas(o.others);
    if (static_cast<int>(items.size()) != parties - 1)
      throw UsageError("--others needs " + std::to_string(parties - 1) +
                       " comma-separated bits");
    for (const auto& item : items) s.others.push_back(parse_bits(item, 1, "--others"));
  } else {
    if (!o.others.empty()) throw UsageError("--others is only valid for mxn");
    if (o.bob.empty()) throw UsageError("--bob is required");
    s.others.push_back(parse_bits(o.bob, other_bit_width(protocol), "--bob"));
  }
  return s;
}

RunRecord execute_run(Protocol protocol, const Options& o, int parties, Rng& rng) {
  const auto secrets = secrets_from_flags(protocol, o, parties);
  switch (protocol) {
    case Protocol::Nba: {
      BellLabel initial = kBellLabels[rng.below(4)];
      if (!o.initial.empty()) {
        const auto parsed = parse_bell_label(o.initial);
        if (!parsed) throw UsageError("--initial must be one of phi+ phi- psi+ psi-");
        initial = *parsed;
      }
      return run_nba(secrets, initial);
    }
    case Protocol::Jz: {
      PhotonLabel initial = kPhotonLabels[rng.below(4)];
      if (!o.initial.empty()) {
        const auto parsed = parse_photon_label(o.initial);
        if (!parsed) throw UsageError("--initial must be one of 0 1 + -");
        initial = *parsed;
      }
      return run_jz(secrets, initial);
    }
    case Protocol::Mxn:
      if (!o.initial.empty()) throw UsageError("mxn has no --initial");
      return run_mxn(secrets, parties, rng);
    case Protocol::Otp:
      break;
  }
  throw UsageError("protocol cannot be run");
}

int cmd_run(const Options& o, std::ostream& out) {
  const Protocol protocol = require_protocol(o, false);
  int parties = 2;
  if (protocol == Protocol::Mxn) {
    parties = o.parties == 0 ? 3 : o.parties;
    if (parties < 3 || parties > 6) throw UsageError("--parties must be 3..6");
  } else if (o.parties != 0 && o.parties != 2) {
    throw UsageError("--parties applies to mxn only");
  }

  Rng rng(o.seed);
  const RunRecord record = execute_run(protocol, o, parties, rng);
  const auto announced = announced_strings(record.transcript);
  std::string deduced;
  if (protocol == Protocol::Mxn) {
    const auto& t = std::get<MxnTranscript>(record.transcript);
    deduced = to_string(deduce_ghz_from_bells(parties, t.outcomes).front());
  }

  if (o.format == "json") {
    json decoded = json::object();
    for (int p = 0; p < parties; ++p)
      decoded[std::string(kPartyNames[static_cast<std::size_t>(p)])] =
          secret_strings(record.decoded[static_cast<std::size_t>(p)]);
    json doc{{"schema_version", kRunSchemaVersion},
             {"protocol", std::string(to_string(protocol))},
             {"params", {{"parties", parties}}},
             {"seed", o.seed},
             {"secrets", secret_strings(record.secrets)},
             {"announced", announced},
             {"decoded", decoded}};
    if (!deduced.empty()) doc["deduced"] = deduced;
    if (o.verbose) doc["trace"] = record.trace;
    out << doc.dump(2) << "\n";
  } else {
    out << "protocol: " << to_string(protocol) << "\n";
    out << "secrets: " << describe_view(record.secrets, -1) << "\n";
    if (o.verbose)
      for (const auto& line : record.trace) out << "trace: " << line << "\n";
    if (protocol == Protocol::Mxn) {
      out << "transcript: " << join(announced, " ") << "\n";
      out << "deduced: " << deduced << "\n";
    } else {
      out << "transcript: " << announced[0] << " -> " << announced[1] << "\n";
      out << (protocol == Protocol::Nba ? "final: " : "outcome: ") << announced[1]
          << "\n";
    }
    for (int p = 0; p < parties; ++p)
      out << kPartyNames[static_cast<std::size_t>(p)] << " decodes: "
          << describe_view(record.decoded[static_cast<std::size_t>(p)], p) << "\n";
  }

  for (const auto& view : record.decoded)
    if (view != record.secrets)
      throw InconsistencyError("a party decoded the wrong secrets");
  return kExitOk;
}

std::string aligned(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    line += cells[i];
    if (i + 1 < cells.size()) line.append(9 - cells[i].size(), ' ');
  }
  return line;
}

void print_operation_table(BellLabel initial, std::ostream& out) {
  out << "operations consistent with initial " << to_string(initial)
      << " (alice above bob)\n";
  for (const auto& row : nba_operation_table(initial)) {
    out << "final " << to_string(row.final_state) << "\n";
    std::vector<std::string> alice_cells, bob_cells;
    for (const auto& c : row.columns) {
      alice_cells.push_back(nba_cell(c.alice_bits));
      bob_cells.push_back(nba_cell(c.bob_bits));
    }
    out << "  alice  " << aligned(alice_cells) << "\n";
    out << "  bob    " << aligned(bob_cells) << "\n";
  }
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Protocol protocol = require_protocol(o, true);
  ProtocolParams params;
  if (protocol == Protocol::Mxn) {
    params.parties = o.parties == 0 ? 3 : o.parties;
    if (params.parties < 3 || params.parties > 6)
      throw UsageError("--parties must be 3..6");
  } else if (o.parties != 0 && o.parties != 2) {
    throw UsageError("--parties applies to mxn only");
  }
  const auto report = leakage_report(protocol, params);
  const auto doc = make_report_document(report);

  if (o.format == "json") {
    out << serialize(doc);
    return kExitOk;
  }
  out << std::fixed << std::setprecision(6);
  out << "protocol: " << doc.protocol << "\n";
  out << "parties: " << report.params.parties << "\n";
  out << "total_bits: " << doc.totals.total_bits << "\n";
  out << "secure_bits: " << doc.totals.secure_bits << "\n";
  out << "leaked_bits: " << doc.totals.leaked_bits << "\n";
  out << "transcripts: " << doc.transcripts.size() << "\n\n";
  out << std::left << std::setw(32) << "announced" << std::setw(10) << "prob"
      << std::setw(10) << "entropy" << std::setw(10) << "leaked" << "support\n";
  for (const auto& t : doc.transcripts) {
    std::vector<std::string> support;
    for (const auto& p : t.posterior) support.push_back("(" + join(p.secrets, ",") + ")");
    out << std::left << std::setw(32) << join(t.announced, " ") << std::setw(10)
        << t.probability << std::setw(10) << t.entropy_bits << std::setw(10)
        << t.leaked_bits << join(support, " ") << "\n";
  }
  if (protocol == Protocol::Nba) {
    out << "\n";
    print_operation_table(BellLabel::PsiPlus, out);
  }
  return kExitOk;
}

int cmd_table1(const Options& o, std::ostream& out) {
  BellLabel initial = BellLabel::PsiPlus;
  if (!o.initial.empty()) {
    const auto parsed = parse_bell_label(o.initial);
    if (!parsed) throw UsageError("--initial must be one of phi+ phi- psi+ psi-");
    initial = *parsed;
  }
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& row : nba_operation_table(initial)) {
      json columns = json::array();
      for (const auto& c : row.columns)
        columns.push_back({{"alice", nba_cell(c.alice_bits)}, {"bob", nba_cell(c.bob_bits)}});
      rows.push_back({{"final", std::string(to_string(row.final_state))},
                      {"columns", columns}});
    }
    out << json{{"schema_version", kTableSchemaVersion},
                {"initial", std::string(to_string(initial))},
                {"rows", rows}}
               .dump(2)
        << "\n";
  } else {
    print_operation_table(initial, out);
  }
  return kExitOk;
}

}  // namespace

std::vector<OperationRow> nba_operation_table(BellLabel initial) {
  std::vector<OperationRow> rows;
  for (BellLabel final_state :
       {BellLabel::PsiMinus, BellLabel::PsiPlus, BellLabel::PhiMinus, BellLabel::PhiPlus}) {
    OperationRow row{final_state, {}};
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b)
        if (nba_transcript(a, b, initial).final_state == final_state)
          row.columns.push_back({a, b});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string nba_cell(unsigned bits) {
  return std::string(to_string(nba_op_for_bits(bits))) + "(" + format_bits(bits, 2) + ")";
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum dialogue simulator and transcript leakage auditor", "qdleak"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* run_cmd = app.add_subcommand("run", "Run one message-mode round");
  run_cmd->add_option("--protocol", o.protocol, "nba, mzl, jz or mxn")->required();
  run_cmd->add_option("--alice", o.alice, "Alice's secret bits");
  run_cmd->add_option("--bob", o.bob, "Bob's secret bits (nba, jz)");
  run_cmd->add_option("--others", o.others, "Comma-separated bits of parties 2..N (mxn)");
  run_cmd->add_option("--parties", o.parties, "Party count for mxn (3..6)");
  run_cmd->add_option("--initial", o.initial, "Carrier state label");
  run_cmd->add_option("--seed", o.seed, "Generator seed");
  run_cmd->add_flag("--verbose", o.verbose, "Show intermediate states");
  add_common(run_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "Report eavesdropper leakage");
  analyze_cmd->add_option("--protocol", o.protocol, "nba, mzl, jz, mxn or otp")->required();
  analyze_cmd->add_option("--parties", o.parties, "Party count for mxn (3..6)");
  analyze_cmd->add_option("--seed", o.seed, "Accepted for uniformity; analysis is exact");
  add_common(analyze_cmd);

  auto* table_cmd = app.add_subcommand("table1", "NBA operation pairs per Bell outcome");
  table_cmd->add_option("--initial", o.initial, "Initial Bell state (default psi+)");
  add_common(table_cmd);

  std::vector<std::string> storage{"qdleak"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(o, out);
    if (*analyze_cmd) return cmd_analyze(o, out);
    return cmd_table1(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  }
}

}  // namespace qdleak::cli
