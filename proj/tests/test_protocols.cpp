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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"

namespace qdleak {
namespace {

constexpr double kTol = 1e-9;

SecretAssignment nba(unsigned alice, unsigned bob) { return {Protocol::Nba, alice, {bob}}; }
SecretAssignment jz(unsigned alice, unsigned bob) { return {Protocol::Jz, alice, {bob}}; }

TEST(NbaOps, BitMapping) {
  EXPECT_EQ(nba_op_for_bits(0b00), PauliOp::I);
  EXPECT_EQ(nba_op_for_bits(0b01), PauliOp::SX);
  EXPECT_EQ(nba_op_for_bits(0b10), PauliOp::ISY);
  EXPECT_EQ(nba_op_for_bits(0b11), PauliOp::SZ);
  EXPECT_THROW(nba_op_for_bits(4), std::invalid_argument);
}

TEST(RunNba, WorkedExamples) {
  auto r = run_nba(nba(0b00, 0b11), BellLabel::PsiPlus);
  EXPECT_EQ(std::get<NbaTranscript>(r.transcript),
            (NbaTranscript{BellLabel::PsiPlus, BellLabel::PsiMinus}));
  EXPECT_EQ(r.decoded[0].others[0], 0b11u);
  EXPECT_EQ(r.decoded[1].alice, 0b00u);

  r = run_nba(nba(0b00, 0b00), BellLabel::PsiPlus);
  EXPECT_EQ(std::get<NbaTranscript>(r.transcript).final_state, BellLabel::PsiPlus);

  r = run_nba(nba(0b01, 0b10), BellLabel::PsiPlus);
  EXPECT_EQ(std::get<NbaTranscript>(r.transcript).final_state, BellLabel::PsiMinus);
}

TEST(RunNba, RejectsWrongAssignments) {
  EXPECT_THROW(run_nba(jz(0, 0), BellLabel::PsiPlus), std::invalid_argument);
  EXPECT_THROW(run_nba(nba(4, 0), BellLabel::PsiPlus), std::invalid_argument);
  EXPECT_THROW(run_nba({Protocol::Nba, 0, {0, 0}}, BellLabel::PsiPlus), std::invalid_argument);
}

TEST(NbaDecode, Examples) {
  EXPECT_EQ(nba_decode(0b11, BellLabel::PsiPlus, BellLabel::PsiMinus), 0b00u);
  EXPECT_EQ(nba_decode(0b00, BellLabel::PsiPlus, BellLabel::PsiPlus), 0b00u);
  EXPECT_EQ(nba_decode(0b10, BellLabel::PsiPlus, BellLabel::PsiMinus), 0b01u);
}

// Dense-matrix oracle: (I x A)(I x B)|initial> is, up to phase, exactly one
// Bell vector; that vector must be the announced final label.
TEST(RunNba, EncodedStateIsABellStateForEveryInput) {
  for (BellLabel initial : kBellLabels)
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b) {
        const oracle::Vec psi = oracle::kron(oracle::pauli(PauliOp::I), oracle::pauli(nba_op_for_bits(a))) *
                         oracle::kron(oracle::pauli(PauliOp::I), oracle::pauli(nba_op_for_bits(b))) *
                         oracle::bell(initial);
        int certain = 0;
        BellLabel hit{};
        for (BellLabel l : kBellLabels)
          if (std::abs(std::norm(oracle::bell(l).dot(psi)) - 1.0) < kTol) ++certain, hit = l;
        ASSERT_EQ(certain, 1);
        const auto t = nba_transcript(a, b, initial);
        EXPECT_EQ(t.final_state, hit);
      }
}

TEST(RunNba, OperationOrderDoesNotChangeTheRay) {
  for (BellLabel initial : kBellLabels)
    for (PauliOp a : kPauliOps)
      for (PauliOp b : kPauliOps) {
        const auto ab = apply_pauli(apply_pauli(bell_state(initial), 1, b), 1, a);
        const auto ba = apply_pauli(apply_pauli(bell_state(initial), 1, a), 1, b);
        EXPECT_TRUE(equal_up_to_phase(ab, ba));
      }
}

TEST(RunNba, DecodesEveryAssignmentAndCarrier) {
  for (BellLabel initial : kBellLabels)
    for (const auto& s : all_secret_assignments(Protocol::Nba, 2)) {
      const auto r = run_nba(s, initial);
      ASSERT_EQ(r.decoded.size(), 2u);
      EXPECT_EQ(r.decoded[0], s);
      EXPECT_EQ(r.decoded[1], s);
    }
}

TEST(JzOps, BitMappingAndPhotonLabels) {
  EXPECT_EQ(jz_op_for_bit(0), PauliOp::I);
  EXPECT_EQ(jz_op_for_bit(1), PauliOp::ISY);
  EXPECT_THROW(jz_op_for_bit(2), std::invalid_argument);
  for (PhotonLabel l : kPhotonLabels) {
    EXPECT_EQ(parse_photon_label(to_string(l)), l);
    EXPECT_EQ(photon_label(photon_basis(l), photon_bit(l)), l);
  }
}

TEST(RunJz, WorkedExamples) {
  auto r = run_jz(jz(0, 1), PhotonLabel::Plus);
  EXPECT_EQ(std::get<JzTranscript>(r.transcript).outcome, PhotonLabel::Minus);
  EXPECT_EQ(r.decoded[0].others[0], 1u);  // Alice learns Bob's 1
  EXPECT_EQ(r.decoded[1].alice, 0u);      // Bob learns Alice's 0

  EXPECT_EQ(jz_outcome(0, 0, PhotonLabel::Zero), PhotonLabel::Zero);
  // iSY . iSY = -I by dense multiplication, so the photon returns to |0>.
  const oracle::Dense twice = oracle::pauli(PauliOp::ISY) * oracle::pauli(PauliOp::ISY);
  EXPECT_LE((twice + Eigen::Matrix2cd::Identity()).norm(), kTol);
  EXPECT_EQ(jz_outcome(1, 1, PhotonLabel::Zero), PhotonLabel::Zero);
}

TEST(JzDecode, Examples) {
  EXPECT_EQ(jz_decode(0, PhotonLabel::Plus, PhotonLabel::Minus), 1u);
  EXPECT_EQ(jz_decode(0, PhotonLabel::Zero, PhotonLabel::Zero), 0u);
  EXPECT_EQ(jz_decode(1, PhotonLabel::One, PhotonLabel::One), 1u);
  EXPECT_THROW(jz_decode(0, PhotonLabel::Zero, PhotonLabel::Plus), TranscriptError);
}

TEST(RunJz, DecodesEveryAssignmentAndCarrier) {
  for (PhotonLabel initial : kPhotonLabels)
    for (const auto& s : all_secret_assignments(Protocol::Jz, 2)) {
      const auto r = run_jz(s, initial);
      EXPECT_EQ(r.decoded[0], s);
      EXPECT_EQ(r.decoded[1], s);
      // Basis is preserved.
      EXPECT_EQ(photon_basis(std::get<JzTranscript>(r.transcript).outcome),
                photon_basis(initial));
    }
}

TEST(MxnOps, BitMappingDiffersFromNba) {
  EXPECT_EQ(mxn_alice_op_for_bits(0b00), PauliOp::I);
  EXPECT_EQ(mxn_alice_op_for_bits(0b01), PauliOp::SZ);
  EXPECT_EQ(mxn_alice_op_for_bits(0b10), PauliOp::ISY);
  EXPECT_EQ(mxn_alice_op_for_bits(0b11), PauliOp::SX);
  EXPECT_EQ(mxn_party_op_for_bit(1), PauliOp::ISY);
}

TEST(GhzAfterOps, Examples) {
  using enum PauliOp;
  const std::vector<PauliOp> a{I, I, ISY}, b{SX, ISY, I}, c{I, I, I};
  EXPECT_EQ(ghz_after_ops(3, a), (GhzLabel{3, 1, 0b01}));
  EXPECT_EQ(ghz_after_ops(3, b), (GhzLabel{3, 1, 0b01}));
  EXPECT_EQ(ghz_after_ops(3, c), (GhzLabel{3, 0, 0b00}));
  const std::vector<PauliOp> bad{I, SX, I};
  EXPECT_THROW(ghz_after_ops(3, bad), std::invalid_argument);
  const std::vector<PauliOp> short_tuple{I, I};
  EXPECT_THROW(ghz_after_ops(3, short_tuple), std::invalid_argument);
}

TEST(GhzAfterOps, MapIsExactlyTwoToOne) {
  for (int n = 2; n <= 6; ++n) {
    std::map<GhzLabel, int> preimages;
    for (const auto& s : all_secret_assignments(Protocol::Mxn, n))
      ++preimages[ghz_after_ops(n, mxn_ops(s))];
    EXPECT_EQ(preimages.size(), std::size_t{1} << n);
    for (const auto& [label, count] : preimages) EXPECT_EQ(count, 2) << to_string(label);
  }
}

MxnTranscript some_transcript_for(const SecretAssignment& s) {
  const auto branches = mxn_outcome_distribution(mxn_encoded_state(s), s.parties());
  return MxnTranscript{branches.front().outcomes};
}

TEST(RunMxn, ThreePartyWorkedExample) {
  const SecretAssignment s{Protocol::Mxn, 0b00, {0, 1}};
  const auto ghz000 = ghz_state(GhzLabel{3, 0, 0});
  EXPECT_TRUE(equal_up_to_phase(mxn_encoded_state(s),
                                tensor(ghz000, ghz_state(GhzLabel{3, 1, 0b01}))));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto r = run_mxn(s, 3, rng);
    const auto& t = std::get<MxnTranscript>(r.transcript);
    const auto labels = deduce_ghz_from_bells(3, t.outcomes);
    ASSERT_EQ(labels.size(), 1u);
    EXPECT_EQ(labels[0], (GhzLabel{3, 1, 0b01}));
    for (const auto& view : r.decoded) EXPECT_EQ(view, s);
  }
}

TEST(RunMxn, AllZerosDeducesGhz000) {
  Rng rng(0);
  const auto r = run_mxn({Protocol::Mxn, 0, {0, 0}}, 3, rng);
  EXPECT_EQ(deduce_ghz_from_bells(3, std::get<MxnTranscript>(r.transcript).outcomes),
            std::vector<GhzLabel>{(GhzLabel{3, 0, 0})});
}

TEST(RunMxn, FourPartyDeductionMatchesOpsForEverySeed) {
  const SecretAssignment s{Protocol::Mxn, 0b11, {1, 1, 1}};
  const auto expected = ghz_after_ops(4, mxn_ops(s));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto r = run_mxn(s, 4, rng);
    EXPECT_EQ(deduce_ghz_from_bells(4, std::get<MxnTranscript>(r.transcript).outcomes),
              std::vector<GhzLabel>{expected});
  }
}

TEST(RunMxn, SameSeedSameTranscript) {
  const SecretAssignment s{Protocol::Mxn, 0b10, {1, 0}};
  Rng a(99), b(99);
  EXPECT_EQ(std::get<MxnTranscript>(run_mxn(s, 3, a).transcript),
            std::get<MxnTranscript>(run_mxn(s, 3, b).transcript));
}

TEST(RunMxn, RejectsBadArguments) {
  Rng rng;
  EXPECT_THROW(run_mxn({Protocol::Mxn, 0, {0, 0}}, 4, rng), std::invalid_argument);
  EXPECT_THROW(run_mxn({Protocol::Mxn, 0, {0}}, 2, rng), std::invalid_argument);
  EXPECT_THROW(run_mxn({Protocol::Nba, 0, {0, 0}}, 3, rng), std::invalid_argument);
}

TEST(RunMxn, DecodesEveryAssignmentOverSeeds) {
  for (const auto& s : all_secret_assignments(Protocol::Mxn, 3))
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const auto r = run_mxn(s, 3, rng);
      for (const auto& view : r.decoded) ASSERT_EQ(view, s);
    }
}

// Joint outcome probabilities do not depend on which pair is measured first.
TEST(MxnOutcomes, MeasurementOrderIsIrrelevant) {
  const SecretAssignment s{Protocol::Mxn, 0b01, {1, 0}};
  const auto encoded = mxn_encoded_state(s);
  const auto forward = mxn_outcome_distribution(encoded, 3);
  double total = 0.0;
  for (const auto& branch : forward) {
    total += branch.probability;
    // Reverse order: parties 2, 1, 0, tracking where original qubits sit.
    std::vector<int> alive{0, 1, 2, 3, 4, 5};
    StateVector state = encoded;
    double p = 1.0;
    for (int party = 2; party >= 0; --party) {
      const auto pos = [&](int q) {
        return static_cast<int>(std::find(alive.begin(), alive.end(), q) - alive.begin());
      };
      const auto outcomes = project_bell(state, pos(party), pos(3 + party));
      const auto it = std::find_if(outcomes.begin(), outcomes.end(), [&](const auto& o) {
        return o.label == branch.outcomes[static_cast<std::size_t>(party)];
      });
      ASSERT_NE(it, outcomes.end());
      p *= it->probability;
      state = it->remainder;
      std::erase(alive, party);
      std::erase(alive, 3 + party);
    }
    EXPECT_NEAR(p, branch.probability, kTol);
    EXPECT_NEAR(mxn_outcome_probability(encoded, 3, branch.outcomes), branch.probability, kTol);
  }
  EXPECT_NEAR(total, 1.0, kTol);
}

TEST(DeduceGhz, TwoPartySwapOfPhiPlusPair) {
  // Dense 16x16 projectors on pairs (0,2) and (1,3) decide which candidate
  // can yield (phi+, phi+).
  const auto outcome = std::vector<BellLabel>{BellLabel::PhiPlus, BellLabel::PhiPlus};
  std::vector<GhzLabel> oracle_labels;
  for (std::uint32_t idx = 0; idx < 4; ++idx) {
    const auto g = GhzLabel::from_index(2, idx);
    const auto psi = tensor(ghz_state(GhzLabel{2, 0, 0}), ghz_state(g)).amplitudes();
    const oracle::Dense proj = oracle::bell_projector(4, 0, 2, BellLabel::PhiPlus) *
                      oracle::bell_projector(4, 1, 3, BellLabel::PhiPlus);
    if (oracle::expectation(psi, proj) > kTol) oracle_labels.push_back(g);
  }
  ASSERT_EQ(oracle_labels, std::vector<GhzLabel>{(GhzLabel{2, 0, 0})});
  EXPECT_EQ(deduce_ghz_from_bells(2, outcome), oracle_labels);
}

TEST(DeduceGhz, SingleValuedAndTotalForSmallN) {
  for (int n = 2; n <= 4; ++n) {
    std::map<std::vector<BellLabel>, std::set<GhzLabel>> producers;
    for (std::uint32_t idx = 0; idx < (1u << n); ++idx) {
      const auto g = GhzLabel::from_index(n, idx);
      const auto state = tensor(ghz_state(GhzLabel{n, 0, 0}), ghz_state(g));
      for (const auto& b : mxn_outcome_distribution(state, n)) producers[b.outcomes].insert(g);
    }
    const SwapDeducer deducer(n);
    for (const auto& [outcomes, labels] : producers) {
      ASSERT_EQ(labels.size(), 1u);
      EXPECT_EQ(deducer.deduce(outcomes), std::vector<GhzLabel>(labels.begin(), labels.end()));
    }
    // Every one of the 4^n tuples is reachable, so none is rejected.
    EXPECT_EQ(producers.size(), std::size_t{1} << (2 * n));
  }
}

TEST(DeduceGhz, RejectsMalformedInput) {
  const std::vector<BellLabel> two{BellLabel::PhiPlus, BellLabel::PhiPlus};
  EXPECT_THROW(deduce_ghz_from_bells(3, two), std::invalid_argument);
  EXPECT_THROW(deduce_ghz_from_bells(7, two), std::invalid_argument);
}

TEST(MxnDecode, Examples) {
  const auto t101 = some_transcript_for({Protocol::Mxn, 0b00, {0, 1}});
  EXPECT_EQ(mxn_decode(1, 0, t101), (SecretAssignment{Protocol::Mxn, 0b00, {0, 1}}));
  EXPECT_EQ(mxn_decode(2, 1, t101), (SecretAssignment{Protocol::Mxn, 0b00, {0, 1}}));
  EXPECT_EQ(mxn_decode(2, 0, t101), (SecretAssignment{Protocol::Mxn, 0b11, {1, 0}}));
  const auto t000 = some_transcript_for({Protocol::Mxn, 0b00, {0, 0}});
  EXPECT_EQ(mxn_decode(0, 0b00, t000), (SecretAssignment{Protocol::Mxn, 0b00, {0, 0}}));
}

TEST(MxnDecode, ReportsBitsThatCannotReachTheLabel) {
  // GHZ_101 is reached only from (00,0,1) and (11,1,0).
  const auto t101 = some_transcript_for({Protocol::Mxn, 0b00, {0, 1}});
  EXPECT_THROW(mxn_decode(0, 0b01, t101), TranscriptError);
  EXPECT_THROW(mxn_decode(3, 0, t101), std::out_of_range);
}

TEST(Secrets, EnumerationAndFormatting) {
  EXPECT_EQ(all_secret_assignments(Protocol::Nba, 2).size(), 16u);
  EXPECT_EQ(all_secret_assignments(Protocol::Jz, 2).size(), 4u);
  EXPECT_EQ(all_secret_assignments(Protocol::Mxn, 5).size(), 64u);
  EXPECT_EQ(secret_strings({Protocol::Mxn, 0b11, {1, 0}}),
            (std::vector<std::string>{"11", "1", "0"}));
  EXPECT_EQ(total_secret_bits(Protocol::Mxn, 6), 7);
  EXPECT_EQ(parse_protocol("mzl"), Protocol::Nba);
  EXPECT_FALSE(parse_protocol("bb84"));
}

}  // namespace
}  // namespace qdleak
