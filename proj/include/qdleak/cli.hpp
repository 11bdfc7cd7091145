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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qdleak/protocols.hpp"

namespace qdleak::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitUsage = 2;

/// One column of the NBA operation table: an (Alice, Bob) operation pair
/// consistent with the given initial and final Bell states.
struct OperationColumn {
  unsigned alice_bits;
  unsigned bob_bits;
};

struct OperationRow {
  BellLabel final_state;
  std::vector<OperationColumn> columns;
};

/// Rows ordered psi-, psi+, phi-, phi+; columns by Alice's bits.
std::vector<OperationRow> nba_operation_table(BellLabel initial);

/// "I(00)", "sx(01)", ...
std::string nba_cell(unsigned bits);

/// Runs the command line `args` (without the program name). Standard output
/// carries only the requested document; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qdleak::cli
