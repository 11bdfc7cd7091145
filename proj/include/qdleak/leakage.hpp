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

// Eavesdropper inference from public transcripts. Every posterior here is
// computed by enumerating all secret assignments under a uniform prior and
// weighting each by the probability that an honest run produces the
// observed announcements.

#include <span>
#include <vector>

#include "qdleak/protocols.hpp"

namespace qdleak {

struct Hypothesis {
  SecretAssignment secrets;
  double probability;
};

struct Posterior {
  /// Support only, in all_secret_assignments order.
  std::vector<Hypothesis> hypotheses;
  double entropy_bits = 0.0;
};

struct ProtocolParams {
  /// Party count; 2 for the two-party protocols.
  int parties = 2;
};

/// -sum p log2 p with 0 log 0 = 0. Throws std::invalid_argument unless the
/// entries are nonnegative and sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> probabilities);

/// Builds a posterior from unnormalized likelihoods, one per hypothesis.
/// Throws TranscriptError when every likelihood is zero.
Posterior posterior_from_likelihoods(
    std::span<const SecretAssignment> hypotheses,
    std::span<const double> likelihoods);

/// Re-runs the transcript-producing logic for every secret assignment and
/// keeps those that reproduce `transcript` with nonzero probability.
Posterior eve_posterior(Protocol protocol, const ProtocolParams& params,
                        const Transcript& transcript);

/// MXN posterior taken the other way round: deduce the GHZ label from the
/// Bell outcomes, then keep the op tuples that reach that label.
Posterior eve_posterior_by_deduction(int parties,
                                     const MxnTranscript& transcript);

/// The XOR of Alice's and Bob's bits shared by every supported hypothesis.
unsigned nba_xor_constraint(const NbaTranscript& transcript);

/// Posterior over (p_A, p_B) when c_A = p_A ^ k and c_B = p_B ^ k share one
/// uniform key bit k.
Posterior otp_reuse_posterior(unsigned cipher_a, unsigned cipher_b);

/// Whether the JZ posterior for (initial, outcome) has the same support and
/// entropy as the reused-key posterior with k = bit(initial),
/// c_A = bit(outcome), c_B = k. Throws TranscriptError on a basis mismatch.
bool jz_otp_equivalence(PhotonLabel initial, PhotonLabel outcome);

struct TranscriptLeakage {
  Transcript transcript;
  /// Probability of this transcript over uniform secrets and carriers.
  double probability;
  Posterior posterior;
  double entropy_bits;
  double leaked_bits;
};

struct LeakageReport {
  Protocol protocol;
  ProtocolParams params;
  int total_bits;
  double secure_bits;
  double leaked_bits;
  std::vector<TranscriptLeakage> per_transcript;
};

/// Exact leakage accounting over all secrets and carrier states. MXN takes
/// 3..6 parties and enumerates every nonzero-probability outcome tuple.
LeakageReport leakage_report(Protocol protocol, const ProtocolParams& params);

}  // namespace qdleak
