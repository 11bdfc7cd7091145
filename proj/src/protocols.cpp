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

#include "qdleak/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdleak {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_mxn_parties(int parties, int lo, int hi) {
  if (parties < lo || parties > hi)
    throw std::invalid_argument("MXN needs " + std::to_string(lo) + ".." +
                                std::to_string(hi) + " parties, got " +
                                std::to_string(parties));
}

void check_bits(unsigned bits, int width) {
  if (bits >= (1u << width))
    throw std::invalid_argument("secret value " + std::to_string(bits) +
                                " does not fit in " + std::to_string(width) +
                                " bit(s)");
}

std::optional<PhotonLabel> photon_label_of(const StateVector& state) {
  for (PhotonLabel label : kPhotonLabels)
    if (equal_up_to_phase(state, photon_state(label))) return label;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::Nba:
      return "nba";
    case Protocol::Jz:
      return "jz";
    case Protocol::Mxn:
      return "mxn";
    case Protocol::Otp:
      return "otp";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(std::string_view text) {
  for (Protocol p : {Protocol::Nba, Protocol::Jz, Protocol::Mxn, Protocol::Otp})
    if (text == to_string(p)) return p;
  if (text == "mzl") return Protocol::Nba;
  return std::nullopt;
}

std::string_view to_string(PhotonLabel label) {
  switch (label) {
    case PhotonLabel::Zero:
      return "0";
    case PhotonLabel::One:
      return "1";
    case PhotonLabel::Plus:
      return "+";
    case PhotonLabel::Minus:
      return "-";
  }
  return "?";
}

std::optional<PhotonLabel> parse_photon_label(std::string_view text) {
  for (PhotonLabel label : kPhotonLabels)
    if (text == to_string(label)) return label;
  return std::nullopt;
}

StateVector photon_state(PhotonLabel label) {
  const double h = 1.0 / std::sqrt(2.0);
  StateVector::Amplitudes amps(2);
  switch (label) {
    case PhotonLabel::Zero:
      amps << 1, 0;
      break;
    case PhotonLabel::One:
      amps << 0, 1;
      break;
    case PhotonLabel::Plus:
      amps << h, h;
      break;
    case PhotonLabel::Minus:
      amps << h, -h;
      break;
  }
  return StateVector(std::move(amps));
}

Basis photon_basis(PhotonLabel label) {
  return label == PhotonLabel::Zero || label == PhotonLabel::One ? Basis::Z
                                                                 : Basis::X;
}

unsigned photon_bit(PhotonLabel label) {
  return label == PhotonLabel::One || label == PhotonLabel::Minus ? 1u : 0u;
}

PhotonLabel photon_label(Basis basis, unsigned bit) {
  if (basis == Basis::Z) return bit ? PhotonLabel::One : PhotonLabel::Zero;
  return bit ? PhotonLabel::Minus : PhotonLabel::Plus;
}

int alice_bit_width(Protocol protocol) {
  return protocol == Protocol::Nba || protocol == Protocol::Mxn ? 2 : 1;
}

int other_bit_width(Protocol protocol) {
  return protocol == Protocol::Nba ? 2 : 1;
}

int total_secret_bits(Protocol protocol, int parties) {
  return alice_bit_width(protocol) + (parties - 1) * other_bit_width(protocol);
}

void validate(const SecretAssignment& secrets) {
  const int parties = secrets.parties();
  if (secrets.protocol == Protocol::Mxn)
    check_mxn_parties(parties, 2, 6);
  else if (parties != 2)
    throw std::invalid_argument(std::string(to_string(secrets.protocol)) +
                                " has exactly two parties");
  check_bits(secrets.alice, alice_bit_width(secrets.protocol));
  for (unsigned bits : secrets.others)
    check_bits(bits, other_bit_width(secrets.protocol));
}

std::vector<SecretAssignment> all_secret_assignments(Protocol protocol,
                                                     int parties) {
  const int a_width = alice_bit_width(protocol);
  const int o_width = other_bit_width(protocol);
  const int total = total_secret_bits(protocol, parties);
  std::vector<SecretAssignment> out;
  out.reserve(std::size_t{1} << total);
  for (unsigned packed = 0; packed < (1u << total); ++packed) {
    SecretAssignment s{protocol, packed >> (total - a_width), {}};
    for (int p = 1; p < parties; ++p) {
      const int shift = total - a_width - p * o_width;
      s.others.push_back((packed >> shift) & ((1u << o_width) - 1u));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_bits(unsigned value, int width) {
  std::string out;
  for (int bit = width - 1; bit >= 0; --bit)
    out.push_back(((value >> bit) & 1u) ? '1' : '0');
  return out;
}

std::vector<std::string> secret_strings(const SecretAssignment& secrets) {
  std::vector<std::string> out{
      format_bits(secrets.alice, alice_bit_width(secrets.protocol))};
  for (unsigned bits : secrets.others)
    out.push_back(format_bits(bits, other_bit_width(secrets.protocol)));
  return out;
}

Protocol protocol_of(const Transcript& transcript) {
  return std::visit(
      Overloaded{[](const NbaTranscript&) { return Protocol::Nba; },
                 [](const JzTranscript&) { return Protocol::Jz; },
                 [](const MxnTranscript&) { return Protocol::Mxn; },
                 [](const OtpTranscript&) { return Protocol::Otp; }},
      transcript);
}

std::vector<std::string> announced_strings(const Transcript& transcript) {
  return std::visit(
      Overloaded{
          [](const NbaTranscript& t) {
            return std::vector<std::string>{std::string(to_string(t.initial)),
                                            std::string(to_string(t.final_state))};
          },
          [](const JzTranscript& t) {
            return std::vector<std::string>{std::string(to_string(t.initial)),
                                            std::string(to_string(t.outcome))};
          },
          [](const MxnTranscript& t) {
            std::vector<std::string> out;
            for (BellLabel l : t.outcomes) out.emplace_back(to_string(l));
            return out;
          },
          [](const OtpTranscript& t) {
            return std::vector<std::string>{format_bits(t.cipher_a, 1),
                                            format_bits(t.cipher_b, 1)};
          }},
      transcript);
}

// NBA -----------------------------------------------------------------------

PauliOp nba_op_for_bits(unsigned bits) {
  check_bits(bits, 2);
  static constexpr std::array<PauliOp, 4> table{PauliOp::I, PauliOp::SX,
                                                PauliOp::ISY, PauliOp::SZ};
  return table[bits];
}

std::optional<BellLabel> bell_label_of(const StateVector& state) {
  if (state.num_qubits() != 2) return std::nullopt;
  for (BellLabel label : kBellLabels)
    if (equal_up_to_phase(state, bell_state(label))) return label;
  return std::nullopt;
}

NbaTranscript nba_transcript(unsigned alice_bits, unsigned bob_bits,
                             BellLabel initial) {
  auto state = apply_pauli(bell_state(initial), 1, nba_op_for_bits(bob_bits));
  state = apply_pauli(state, 1, nba_op_for_bits(alice_bits));
  const auto outcomes = project_bell(state, 0, 1);
  if (outcomes.size() != 1 ||
      std::abs(outcomes.front().probability - 1.0) > kTolerance<double>)
    throw InconsistencyError("NBA encoded state is not a Bell basis state");
  return {initial, outcomes.front().label};
}

RunRecord run_nba(const SecretAssignment& secrets, BellLabel initial) {
  if (secrets.protocol != Protocol::Nba)
    throw std::invalid_argument("run_nba needs an NBA assignment");
  validate(secrets);
  const unsigned alice = secrets.alice;
  const unsigned bob = secrets.others[0];

  RunRecord record{secrets, nba_transcript(alice, bob, initial), {}, {}};
  const auto& t = std::get<NbaTranscript>(record.transcript);

  const auto after_bob =
      apply_pauli(bell_state(initial), 1, nba_op_for_bits(bob));
  const auto after_alice = apply_pauli(after_bob, 1, nba_op_for_bits(alice));
  record.trace.push_back("prepared " + std::string(to_string(initial)));
  record.trace.push_back("bob " + std::string(to_string(nba_op_for_bits(bob))) +
                         " -> " +
                         std::string(to_string(*bell_label_of(after_bob))));
  record.trace.push_back(
      "alice " + std::string(to_string(nba_op_for_bits(alice))) + " -> " +
      std::string(to_string(*bell_label_of(after_alice))));

  record.decoded.push_back(
      {Protocol::Nba, alice, {nba_decode(alice, t.initial, t.final_state)}});
  record.decoded.push_back(
      {Protocol::Nba, nba_decode(bob, t.initial, t.final_state), {bob}});
  return record;
}

unsigned nba_decode(unsigned own_bits, BellLabel initial,
                    BellLabel final_state) {
  const auto own = nba_op_for_bits(own_bits);
  const auto target = bell_state(final_state);
  std::optional<unsigned> found;
  for (unsigned other = 0; other < 4; ++other) {
    const auto state = apply_pauli(
        apply_pauli(bell_state(initial), 1, nba_op_for_bits(other)), 1, own);
    if (!equal_up_to_phase(state, target)) continue;
    if (found) throw InconsistencyError("NBA decoding is ambiguous");
    found = other;
  }
  if (!found)
    throw TranscriptError("no counterpart operation maps " +
                          std::string(to_string(initial)) + " to " +
                          std::string(to_string(final_state)));
  return *found;
}

// JZ ------------------------------------------------------------------------

PauliOp jz_op_for_bit(unsigned bit) {
  check_bits(bit, 1);
  return bit ? PauliOp::ISY : PauliOp::I;
}

PhotonLabel jz_outcome(unsigned alice_bit, unsigned bob_bit,
                       PhotonLabel initial) {
  auto state = apply_pauli(photon_state(initial), 0, jz_op_for_bit(bob_bit));
  state = apply_pauli(state, 0, jz_op_for_bit(alice_bit));
  const Basis basis = photon_basis(initial);
  const auto probs = basis_probabilities(state, 0, basis);
  for (unsigned bit = 0; bit < 2; ++bit)
    if (std::abs(probs[bit] - 1.0) <= kTolerance<double>)
      return photon_label(basis, bit);
  throw InconsistencyError("JZ measurement in the preparation basis is random");
}

RunRecord run_jz(const SecretAssignment& secrets, PhotonLabel initial) {
  if (secrets.protocol != Protocol::Jz)
    throw std::invalid_argument("run_jz needs a JZ assignment");
  validate(secrets);
  const unsigned alice = secrets.alice;
  const unsigned bob = secrets.others[0];

  RunRecord record{secrets,
                   JzTranscript{initial, jz_outcome(alice, bob, initial)},
                   {},
                   {}};
  const auto& t = std::get<JzTranscript>(record.transcript);

  const auto after_bob =
      apply_pauli(photon_state(initial), 0, jz_op_for_bit(bob));
  const auto after_alice = apply_pauli(after_bob, 0, jz_op_for_bit(alice));
  record.trace.push_back("prepared " + std::string(to_string(initial)));
  record.trace.push_back("bob " + std::string(to_string(jz_op_for_bit(bob))) +
                         " -> " +
                         std::string(to_string(*photon_label_of(after_bob))));
  record.trace.push_back(
      "alice " + std::string(to_string(jz_op_for_bit(alice))) + " -> " +
      std::string(to_string(*photon_label_of(after_alice))));
  record.trace.push_back("measured in " +
                         std::string(to_string(photon_basis(initial))) +
                         " basis");

  record.decoded.push_back(
      {Protocol::Jz, alice, {jz_decode(alice, t.initial, t.outcome)}});
  record.decoded.push_back(
      {Protocol::Jz, jz_decode(bob, t.initial, t.outcome), {bob}});
  return record;
}

unsigned jz_decode(unsigned own_bit, PhotonLabel initial, PhotonLabel outcome) {
  check_bits(own_bit, 1);
  if (photon_basis(initial) != photon_basis(outcome))
    throw TranscriptError("JZ outcome " + std::string(to_string(outcome)) +
                          " is not in the basis of " +
                          std::string(to_string(initial)));
  const unsigned flipped = initial != outcome ? 1u : 0u;
  return flipped ^ own_bit;
}

// MXN -----------------------------------------------------------------------

PauliOp mxn_alice_op_for_bits(unsigned bits) {
  check_bits(bits, 2);
  static constexpr std::array<PauliOp, 4> table{PauliOp::I, PauliOp::SZ,
                                                PauliOp::ISY, PauliOp::SX};
  return table[bits];
}

PauliOp mxn_party_op_for_bit(unsigned bit) {
  check_bits(bit, 1);
  return bit ? PauliOp::ISY : PauliOp::I;
}

std::vector<PauliOp> mxn_ops(const SecretAssignment& secrets) {
  std::vector<PauliOp> ops{mxn_alice_op_for_bits(secrets.alice)};
  for (unsigned bit : secrets.others) ops.push_back(mxn_party_op_for_bit(bit));
  return ops;
}

GhzLabel ghz_after_ops(int parties, std::span<const PauliOp> ops) {
  if (parties < 2 || parties > StateVector::kMaxQubits)
    throw std::invalid_argument("GHZ register needs 2..12 particles");
  if (static_cast<int>(ops.size()) != parties)
    throw std::invalid_argument("one operation per particle is required");
  for (std::size_t i = 1; i < ops.size(); ++i)
    if (ops[i] != PauliOp::I && ops[i] != PauliOp::ISY)
      throw std::invalid_argument("non-Alice parties may only apply I or isy");

  auto state = ghz_state(GhzLabel{parties, 0, 0});
  for (int i = 0; i < parties; ++i)
    state = apply_pauli(state, i, ops[static_cast<std::size_t>(i)]);
  for (std::uint32_t idx = 0; idx < (1u << parties); ++idx) {
    const auto label = GhzLabel::from_index(parties, idx);
    if (equal_up_to_phase(state, ghz_state(label))) return label;
  }
  throw InconsistencyError("coded state left the GHZ basis");
}

std::vector<std::pair<int, int>> mxn_pairs(int parties) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < parties; ++i) pairs.emplace_back(i, parties + i);
  return pairs;
}

StateVector mxn_encoded_state(const SecretAssignment& secrets) {
  validate(secrets);
  const int n = secrets.parties();
  const auto fresh = ghz_state(GhzLabel{n, 0, 0});
  auto state = tensor(fresh, fresh);
  const auto ops = mxn_ops(secrets);
  for (int i = 0; i < n; ++i)
    state = apply_pauli(state, n + i, ops[static_cast<std::size_t>(i)]);
  return state;
}

// After parties 0..i-1 have measured, party i's pair sits at (0, N - i).

namespace {

void enumerate_branches(const StateVector& state, int parties, int party,
                        std::vector<BellLabel>& prefix, double probability,
                        std::vector<MxnBranch>& out) {
  if (party == parties) {
    out.push_back({prefix, probability});
    return;
  }
  for (const auto& outcome : project_bell(state, 0, parties - party)) {
    prefix.push_back(outcome.label);
    enumerate_branches(outcome.remainder, parties, party + 1, prefix,
                       probability * outcome.probability, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MxnBranch> mxn_outcome_distribution(const StateVector& encoded,
                                                int parties) {
  if (encoded.num_qubits() != 2 * parties)
    throw std::invalid_argument("encoded state must hold 2N qubits");
  std::vector<MxnBranch> out;
  std::vector<BellLabel> prefix;
  enumerate_branches(encoded, parties, 0, prefix, 1.0, out);
  return out;
}

double mxn_outcome_probability(const StateVector& encoded, int parties,
                               std::span<const BellLabel> outcomes) {
  if (encoded.num_qubits() != 2 * parties ||
      static_cast<int>(outcomes.size()) != parties)
    throw std::invalid_argument("need a 2N-qubit state and N outcomes");
  StateVector state = encoded;
  double probability = 1.0;
  for (int party = 0; party < parties; ++party) {
    const auto branches = project_bell(state, 0, parties - party);
    const auto it = std::find_if(
        branches.begin(), branches.end(), [&](const auto& b) {
          return b.label == outcomes[static_cast<std::size_t>(party)];
        });
    if (it == branches.end()) return 0.0;
    probability *= it->probability;
    state = it->remainder;
  }
  return probability;
}

SwapDeducer::SwapDeducer(int parties)
    : parties_(parties), pairs_(mxn_pairs(parties)) {
  check_mxn_parties(parties, 2, 6);
  const auto fresh = ghz_state(GhzLabel{parties, 0, 0});
  for (std::uint32_t idx = 0; idx < (1u << parties); ++idx)
    candidates_.push_back(
        tensor(fresh, ghz_state(GhzLabel::from_index(parties, idx))));
}

std::vector<GhzLabel> SwapDeducer::deduce(
    std::span<const BellLabel> outcomes) const {
  if (static_cast<int>(outcomes.size()) != parties_)
    throw std::invalid_argument("one Bell outcome per party is required");
  std::vector<GhzLabel> labels;
  for (std::uint32_t idx = 0; idx < candidates_.size(); ++idx) {
    const auto amp = bell_product_amplitude(candidates_[idx], pairs_, outcomes);
    if (std::norm(amp) > kTolerance<double>)
      labels.push_back(GhzLabel::from_index(parties_, idx));
  }
  if (labels.empty())
    throw TranscriptError("no GHZ label can produce the announced outcomes");
  return labels;
}

std::vector<GhzLabel> deduce_ghz_from_bells(
    int parties, std::span<const BellLabel> outcomes) {
  return SwapDeducer(parties).deduce(outcomes);
}

RunRecord run_mxn(const SecretAssignment& secrets, int parties, Rng& rng) {
  if (secrets.protocol != Protocol::Mxn)
    throw std::invalid_argument("run_mxn needs an MXN assignment");
  check_mxn_parties(parties, 3, 6);
  if (secrets.parties() != parties)
    throw std::invalid_argument("assignment has " +
                                std::to_string(secrets.parties()) +
                                " parties, expected " + std::to_string(parties));

  const auto ops = mxn_ops(secrets);
  RunRecord record{secrets, MxnTranscript{}, {}, {}};
  record.trace.push_back("coded register " +
                         to_string(ghz_after_ops(parties, ops)));

  StateVector state = mxn_encoded_state(secrets);
  MxnTranscript transcript;
  for (int party = 0; party < parties; ++party) {
    const auto branches = project_bell(state, 0, parties - party);
    const double draw = rng.uniform();
    double cumulative = 0.0;
    std::size_t pick = branches.size() - 1;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      cumulative += branches[b].probability;
      if (draw < cumulative) {
        pick = b;
        break;
      }
    }
    transcript.outcomes.push_back(branches[pick].label);
    state = branches[pick].remainder;
  }
  record.transcript = transcript;

  for (int party = 0; party < parties; ++party)
    record.decoded.push_back(
        mxn_decode(party, secrets.bits_of(party), transcript));
  return record;
}

SecretAssignment mxn_decode(int party, unsigned own_bits,
                            const MxnTranscript& transcript) {
  const int parties = static_cast<int>(transcript.outcomes.size());
  check_mxn_parties(parties, 2, 6);
  if (party < 0 || party >= parties)
    throw std::out_of_range("party index out of range");
  check_bits(own_bits, party == 0 ? 2 : 1);

  const auto labels = deduce_ghz_from_bells(parties, transcript.outcomes);
  if (labels.size() != 1)
    throw InconsistencyError("entanglement swapping deduction is ambiguous");

  std::optional<SecretAssignment> found;
  for (const auto& candidate : all_secret_assignments(Protocol::Mxn, parties)) {
    if (candidate.bits_of(party) != own_bits) continue;
    if (ghz_after_ops(parties, mxn_ops(candidate)) != labels.front()) continue;
    if (found) throw InconsistencyError("MXN decoding is ambiguous");
    found = candidate;
  }
  if (!found)
    throw TranscriptError("deduced " + to_string(labels.front()) +
                          " is inconsistent with the party's own bits");
  return *found;
}

}  // namespace qdleak
