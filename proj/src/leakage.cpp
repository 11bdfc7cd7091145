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

#include "qdleak/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qdleak {

namespace {

constexpr double kTol = kTolerance<double>;

int parties_for(Protocol protocol, const ProtocolParams& params) {
  return protocol == Protocol::Mxn ? params.parties : 2;
}

bool same_support(const Posterior& a, const Posterior& b) {
  if (a.hypotheses.size() != b.hypotheses.size()) return false;
  for (std::size_t i = 0; i < a.hypotheses.size(); ++i) {
    const auto& ha = a.hypotheses[i];
    const auto& hb = b.hypotheses[i];
    if (ha.secrets.alice != hb.secrets.alice ||
        ha.secrets.others != hb.secrets.others ||
        std::abs(ha.probability - hb.probability) > kTol)
      return false;
  }
  return std::abs(a.entropy_bits - b.entropy_bits) <= kTol;
}

/// Two hypotheses that differ by complementing both one-bit secrets.
bool is_complement_pair(const Posterior& p) {
  if (p.hypotheses.size() != 2) return false;
  const auto& a = p.hypotheses[0].secrets;
  const auto& b = p.hypotheses[1].secrets;
  return (a.alice ^ b.alice) == 1u && (a.others[0] ^ b.others[0]) == 1u;
}

}  // namespace

double shannon_entropy(std::span<const double> probabilities) {
  double sum = 0.0;
  double entropy = 0.0;
  for (double p : probabilities) {
    if (p < -kTol || std::isnan(p))
      throw std::invalid_argument("probabilities must be nonnegative");
    sum += p;
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  if (std::abs(sum - 1.0) > kTol)
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum));
  return entropy < 0.0 ? 0.0 : entropy;
}

Posterior posterior_from_likelihoods(
    std::span<const SecretAssignment> hypotheses,
    std::span<const double> likelihoods) {
  if (hypotheses.size() != likelihoods.size())
    throw std::invalid_argument("one likelihood per hypothesis is required");
  double evidence = 0.0;
  for (double w : likelihoods)
    if (w > kTol) evidence += w;
  if (evidence <= 0.0)
    throw TranscriptError("no secret assignment explains the transcript");

  Posterior posterior;
  std::vector<double> probs;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (likelihoods[i] <= kTol) continue;
    const double p = likelihoods[i] / evidence;
    posterior.hypotheses.push_back({hypotheses[i], p});
    probs.push_back(p);
  }
  posterior.entropy_bits = shannon_entropy(probs);
  return posterior;
}

Posterior eve_posterior(Protocol protocol, const ProtocolParams& params,
                        const Transcript& transcript) {
  if (protocol_of(transcript) != protocol)
    throw std::invalid_argument("transcript belongs to " +
                                std::string(to_string(protocol_of(transcript))));
  if (protocol == Protocol::Otp) {
    const auto& t = std::get<OtpTranscript>(transcript);
    return otp_reuse_posterior(t.cipher_a, t.cipher_b);
  }

  const int parties = parties_for(protocol, params);
  if (protocol == Protocol::Mxn &&
      std::get<MxnTranscript>(transcript).outcomes.size() !=
          static_cast<std::size_t>(parties))
    throw std::invalid_argument("MXN transcript needs one outcome per party");

  const auto hypotheses = all_secret_assignments(protocol, parties);
  std::vector<double> likelihoods;
  likelihoods.reserve(hypotheses.size());
  for (const auto& h : hypotheses) {
    switch (protocol) {
      case Protocol::Nba: {
        const auto& t = std::get<NbaTranscript>(transcript);
        likelihoods.push_back(nba_transcript(h.alice, h.others[0], t.initial) ==
                                      t
                                  ? 1.0
                                  : 0.0);
        break;
      }
      case Protocol::Jz: {
        const auto& t = std::get<JzTranscript>(transcript);
        likelihoods.push_back(
            jz_outcome(h.alice, h.others[0], t.initial) == t.outcome ? 1.0
                                                                     : 0.0);
        break;
      }
      case Protocol::Mxn: {
        const auto& t = std::get<MxnTranscript>(transcript);
        likelihoods.push_back(
            mxn_outcome_probability(mxn_encoded_state(h), parties, t.outcomes));
        break;
      }
      case Protocol::Otp:
        break;
    }
  }
  return posterior_from_likelihoods(hypotheses, likelihoods);
}

Posterior eve_posterior_by_deduction(int parties,
                                     const MxnTranscript& transcript) {
  const auto labels = deduce_ghz_from_bells(parties, transcript.outcomes);
  const auto hypotheses = all_secret_assignments(Protocol::Mxn, parties);
  std::vector<double> likelihoods;
  for (const auto& h : hypotheses) {
    const auto reached = ghz_after_ops(parties, mxn_ops(h));
    likelihoods.push_back(
        std::find(labels.begin(), labels.end(), reached) != labels.end() ? 1.0
                                                                         : 0.0);
  }
  return posterior_from_likelihoods(hypotheses, likelihoods);
}

unsigned nba_xor_constraint(const NbaTranscript& transcript) {
  const auto posterior = eve_posterior(Protocol::Nba, {}, transcript);
  const unsigned value = posterior.hypotheses.front().secrets.alice ^
                         posterior.hypotheses.front().secrets.others[0];
  for (const auto& h : posterior.hypotheses)
    if ((h.secrets.alice ^ h.secrets.others[0]) != value)
      throw InconsistencyError("NBA support does not share one XOR value");
  return value;
}

Posterior otp_reuse_posterior(unsigned cipher_a, unsigned cipher_b) {
  if (cipher_a > 1 || cipher_b > 1)
    throw std::invalid_argument("ciphertexts are single bits");
  const auto hypotheses = all_secret_assignments(Protocol::Otp, 2);
  std::vector<double> likelihoods;
  for (const auto& h : hypotheses) {
    double w = 0.0;
    for (unsigned key = 0; key < 2; ++key)
      if ((h.alice ^ key) == cipher_a && (h.others[0] ^ key) == cipher_b)
        w += 0.5;
    likelihoods.push_back(w);
  }
  return posterior_from_likelihoods(hypotheses, likelihoods);
}

bool jz_otp_equivalence(PhotonLabel initial, PhotonLabel outcome) {
  if (photon_basis(initial) != photon_basis(outcome))
    throw TranscriptError("JZ transcript mixes bases");
  const auto jz =
      eve_posterior(Protocol::Jz, {}, JzTranscript{initial, outcome});
  const unsigned key = photon_bit(initial);
  const auto otp = otp_reuse_posterior(photon_bit(outcome), key);
  return is_complement_pair(jz) && is_complement_pair(otp) &&
         same_support(jz, otp);
}

LeakageReport leakage_report(Protocol protocol, const ProtocolParams& params) {
  if (protocol == Protocol::Mxn && (params.parties < 3 || params.parties > 6))
    throw std::invalid_argument("MXN leakage needs 3..6 parties");
  const int parties = parties_for(protocol, params);
  const auto hypotheses = all_secret_assignments(protocol, parties);
  const std::size_t count = hypotheses.size();

  // likelihood[t][h] = Pr(t | h), carriers marginalized.
  std::map<Transcript, std::vector<double>> likelihood;
  auto emit = [&](std::size_t h, Transcript t, double p) {
    auto [it, inserted] = likelihood.try_emplace(std::move(t));
    if (inserted) it->second.assign(count, 0.0);
    it->second[h] += p;
  };

  for (std::size_t h = 0; h < count; ++h) {
    const auto& s = hypotheses[h];
    switch (protocol) {
      case Protocol::Nba:
        for (BellLabel initial : kBellLabels)
          emit(h, nba_transcript(s.alice, s.others[0], initial), 0.25);
        break;
      case Protocol::Jz:
        for (PhotonLabel initial : kPhotonLabels)
          emit(h,
               JzTranscript{initial, jz_outcome(s.alice, s.others[0], initial)},
               0.25);
        break;
      case Protocol::Mxn:
        for (const auto& branch :
             mxn_outcome_distribution(mxn_encoded_state(s), parties))
          emit(h, MxnTranscript{branch.outcomes}, branch.probability);
        break;
      case Protocol::Otp:
        for (unsigned key = 0; key < 2; ++key)
          emit(h, OtpTranscript{s.alice ^ key, s.others[0] ^ key}, 0.5);
        break;
    }
  }

  LeakageReport report{protocol,
                       ProtocolParams{parties},
                       total_secret_bits(protocol, parties),
                       0.0,
                       0.0,
                       {}};
  for (const auto& [transcript, weights] : likelihood) {
    double p_transcript = 0.0;
    for (double w : weights) p_transcript += w / static_cast<double>(count);
    auto posterior = posterior_from_likelihoods(hypotheses, weights);
    const double entropy = posterior.entropy_bits;
    report.secure_bits += p_transcript * entropy;
    report.per_transcript.push_back({transcript, p_transcript,
                                     std::move(posterior), entropy,
                                     report.total_bits - entropy});
  }
  report.leaked_bits = report.total_bits - report.secure_bits;
  return report;
}

}  // namespace qdleak
