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

// Message-mode simulation of the Bell-pair dialogue (NBA, and MZL which
// shares its message mode), the single-photon dialogue (JZ), and the
// N-party GHZ entanglement-swapping protocol (MXN).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qdleak/errors.hpp"
#include "qdleak/qstate.hpp"
#include "qdleak/rng.hpp"

namespace qdleak {

/// Otp is the classical reused-key analogue; it has no quantum run.
enum class Protocol : std::uint8_t { Nba, Jz, Mxn, Otp };

std::string_view to_string(Protocol protocol);
std::optional<Protocol> parse_protocol(std::string_view text);

/// Single-photon carrier states of the JZ protocol.
enum class PhotonLabel : std::uint8_t { Zero, One, Plus, Minus };

inline constexpr std::array<PhotonLabel, 4> kPhotonLabels{
    PhotonLabel::Zero, PhotonLabel::One, PhotonLabel::Plus, PhotonLabel::Minus};

std::string_view to_string(PhotonLabel label);
std::optional<PhotonLabel> parse_photon_label(std::string_view text);
StateVector photon_state(PhotonLabel label);
Basis photon_basis(PhotonLabel label);
/// 0 for |0> and |+>, 1 for |1> and |->.
unsigned photon_bit(PhotonLabel label);
PhotonLabel photon_label(Basis basis, unsigned bit);

/// One party's secret bits per run: Alice always, then the other parties
/// in order (Bob, Charlie, ...).
struct SecretAssignment {
  Protocol protocol = Protocol::Nba;
  unsigned alice = 0;
  std::vector<unsigned> others;

  int parties() const { return 1 + static_cast<int>(others.size()); }
  /// Bits of party `index` (0 = Alice).
  unsigned bits_of(int index) const {
    return index == 0 ? alice : others.at(static_cast<std::size_t>(index - 1));
  }

  auto operator<=>(const SecretAssignment&) const = default;
};

int alice_bit_width(Protocol protocol);
int other_bit_width(Protocol protocol);
/// Sum of all parties' secret bits per run.
int total_secret_bits(Protocol protocol, int parties);

/// Throws std::invalid_argument on a wrong party count or overwide bits.
void validate(const SecretAssignment& secrets);

/// Every assignment for the protocol, in lexicographic order.
std::vector<SecretAssignment> all_secret_assignments(Protocol protocol,
                                                     int parties);

std::string format_bits(unsigned value, int width);
/// Per-party bit strings, e.g. {"00", "0", "1"}.
std::vector<std::string> secret_strings(const SecretAssignment& secrets);

struct NbaTranscript {
  BellLabel initial;
  BellLabel final_state;
  auto operator<=>(const NbaTranscript&) const = default;
};

struct JzTranscript {
  PhotonLabel initial;
  PhotonLabel outcome;
  auto operator<=>(const JzTranscript&) const = default;
};

/// Bell outcome announced by each party, in party order.
struct MxnTranscript {
  std::vector<BellLabel> outcomes;
  auto operator<=>(const MxnTranscript&) const = default;
};

struct OtpTranscript {
  unsigned cipher_a;
  unsigned cipher_b;
  auto operator<=>(const OtpTranscript&) const = default;
};

/// Exactly the publicly announced data of one run.
using Transcript =
    std::variant<NbaTranscript, JzTranscript, MxnTranscript, OtpTranscript>;

Protocol protocol_of(const Transcript& transcript);
std::vector<std::string> announced_strings(const Transcript& transcript);

struct RunRecord {
  SecretAssignment secrets;
  Transcript transcript;
  /// decoded[p] is the joint assignment party p reconstructs from its own
  /// bits and the transcript.
  std::vector<SecretAssignment> decoded;
  /// Human-readable intermediate state labels.
  std::vector<std::string> trace;
};

// NBA -----------------------------------------------------------------------

/// 00 -> I, 01 -> SX, 10 -> ISY, 11 -> SZ.
PauliOp nba_op_for_bits(unsigned bits);

/// Label of a 2-qubit state that is a Bell state up to phase.
std::optional<BellLabel> bell_label_of(const StateVector& state);

/// Transcript production: Bob's then Alice's operation on the traveling
/// qubit (qubit 1), followed by a Bell measurement that must be certain.
NbaTranscript nba_transcript(unsigned alice_bits, unsigned bob_bits,
                             BellLabel initial);

RunRecord run_nba(const SecretAssignment& secrets, BellLabel initial);

/// Counterpart bits consistent with one's own bits and the announcements.
/// Throws TranscriptError if no counterpart operation fits.
unsigned nba_decode(unsigned own_bits, BellLabel initial, BellLabel final_state);

// JZ ------------------------------------------------------------------------

/// 0 -> I, 1 -> ISY.
PauliOp jz_op_for_bit(unsigned bit);

PhotonLabel jz_outcome(unsigned alice_bit, unsigned bob_bit,
                       PhotonLabel initial);

RunRecord run_jz(const SecretAssignment& secrets, PhotonLabel initial);

/// Throws TranscriptError when initial and outcome lie in different bases.
unsigned jz_decode(unsigned own_bit, PhotonLabel initial, PhotonLabel outcome);

// MXN -----------------------------------------------------------------------

/// Alice's alphabet: 00 -> I, 01 -> SZ, 10 -> ISY, 11 -> SX.
PauliOp mxn_alice_op_for_bits(unsigned bits);
/// Every other party: 0 -> I, 1 -> ISY.
PauliOp mxn_party_op_for_bit(unsigned bit);
std::vector<PauliOp> mxn_ops(const SecretAssignment& secrets);

/// GHZ label reached from GHZ_0...0 after applying ops[i] to particle i.
GhzLabel ghz_after_ops(int parties, std::span<const PauliOp> ops);

/// Pairs (i, N + i) measured by party i.
std::vector<std::pair<int, int>> mxn_pairs(int parties);

/// GHZ_0..0 (qubits 0..N-1) tensor the coded GHZ (qubits N..2N-1).
StateVector mxn_encoded_state(const SecretAssignment& secrets);

struct MxnBranch {
  std::vector<BellLabel> outcomes;
  double probability;
};

/// Every outcome tuple with nonzero probability, enumerated exactly by
/// sequential Bell measurements on the pairs (i, N + i).
std::vector<MxnBranch> mxn_outcome_distribution(const StateVector& encoded,
                                                int parties);

/// Joint probability of one outcome tuple by sequential projection.
double mxn_outcome_probability(const StateVector& encoded, int parties,
                               std::span<const BellLabel> outcomes);

/// Brute-force entanglement-swapping inference: all candidate labels g for
/// which GHZ_0..0 tensor GHZ_g gives the outcome tuple nonzero probability.
class SwapDeducer {
 public:
  /// 2 <= parties <= 6.
  explicit SwapDeducer(int parties);

  int parties() const { return parties_; }
  std::vector<GhzLabel> deduce(std::span<const BellLabel> outcomes) const;

 private:
  int parties_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<StateVector> candidates_;
};

/// Throws TranscriptError for a tuple no label can produce.
std::vector<GhzLabel> deduce_ghz_from_bells(int parties,
                                            std::span<const BellLabel> outcomes);

/// Samples the Bell outcomes pair by pair with collapse. 3 <= parties <= 6.
RunRecord run_mxn(const SecretAssignment& secrets, int parties, Rng& rng);

/// Joint assignment reconstructed by `party`. Throws TranscriptError when
/// the deduced label does not fit the party's own bits.
SecretAssignment mxn_decode(int party, unsigned own_bits,
                            const MxnTranscript& transcript);

}  // namespace qdleak
