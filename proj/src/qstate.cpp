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

#include "qdleak/qstate.hpp"

namespace qdleak {

std::string_view to_string(PauliOp op) {
  switch (op) {
    case PauliOp::I:
      return "I";
    case PauliOp::SX:
      return "sx";
    case PauliOp::ISY:
      return "isy";
    case PauliOp::SZ:
      return "sz";
  }
  return "?";
}

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus:
      return "phi+";
    case BellLabel::PhiMinus:
      return "phi-";
    case BellLabel::PsiPlus:
      return "psi+";
    case BellLabel::PsiMinus:
      return "psi-";
  }
  return "?";
}

std::string_view to_string(Basis basis) {
  return basis == Basis::Z ? "Z" : "X";
}

std::string to_string(const GhzLabel& label) {
  std::string out = "ghz_";
  out.push_back(label.x ? '1' : '0');
  for (int bit = label.parties - 2; bit >= 0; --bit)
    out.push_back(((label.y >> bit) & 1u) ? '1' : '0');
  return out;
}

std::optional<BellLabel> parse_bell_label(std::string_view text) {
  for (BellLabel label : kBellLabels)
    if (text == to_string(label)) return label;
  return std::nullopt;
}

std::optional<GhzLabel> parse_ghz_label(std::string_view text) {
  constexpr std::string_view prefix = "ghz_";
  if (!text.starts_with(prefix)) return std::nullopt;
  text.remove_prefix(prefix.size());
  if (text.size() < 2 || text.size() > 12) return std::nullopt;
  std::uint32_t index = 0;
  for (char c : text) {
    if (c != '0' && c != '1') return std::nullopt;
    index = (index << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return GhzLabel::from_index(static_cast<int>(text.size()), index);
}

}  // namespace qdleak
