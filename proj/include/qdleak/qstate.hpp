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

// Exact state-vector engine for small registers.
//
// Qubit 0 is the most significant bit of a computational-basis index: in a
// 3-qubit register |abc> lives at index 4a + 2b + c.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdleak/rng.hpp"

namespace qdleak {

template <typename Scalar>
inline constexpr Scalar kTolerance = Scalar(1e-9);

/// Coding alphabet. ISY is i*sigma_y = [[0, 1], [-1, 0]].
enum class PauliOp : std::uint8_t { I, SX, ISY, SZ };

inline constexpr std::array<PauliOp, 4> kPauliOps{PauliOp::I, PauliOp::SX,
                                                  PauliOp::ISY, PauliOp::SZ};

enum class BellLabel : std::uint8_t { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellLabels{
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus,
    BellLabel::PsiMinus};

enum class Basis : std::uint8_t { Z, X };

/// Label of an N-particle GHZ state (|0,y> + (-1)^x |1,~y>)/sqrt(2).
///
/// `y` packs the N-1 trailing bits with the first of them most significant,
/// so GHZ_101 (three particles) is {parties=3, x=1, y=0b01}.
struct GhzLabel {
  int parties = 3;
  unsigned x = 0;
  std::uint32_t y = 0;

  /// Index in [0, 2^parties): x is the top bit, y the rest.
  std::uint32_t index() const { return (x << (parties - 1)) | y; }

  static GhzLabel from_index(int parties, std::uint32_t index) {
    return GhzLabel{parties, (index >> (parties - 1)) & 1u,
                    index & ((1u << (parties - 1)) - 1u)};
  }

  auto operator<=>(const GhzLabel&) const = default;
};

std::string_view to_string(PauliOp op);
std::string_view to_string(BellLabel label);
std::string_view to_string(Basis basis);
/// "ghz_" followed by x and the bits of y, e.g. "ghz_101".
std::string to_string(const GhzLabel& label);

std::optional<BellLabel> parse_bell_label(std::string_view text);
std::optional<GhzLabel> parse_ghz_label(std::string_view text);

/// Normalized amplitude vector over 0..12 qubits.
///
/// A zero-qubit state is a single unit scalar; it is what remains after the
/// last pair of a register has been measured.
template <typename Scalar>
class BasicStateVector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  static constexpr int kMaxQubits = 12;

  /// Throws std::invalid_argument unless the length is a power of two no
  /// larger than 2^12 and the norm is 1 within tolerance.
  explicit BasicStateVector(Amplitudes amplitudes)
      : num_qubits_(qubits_for_length(amplitudes.size())),
        amplitudes_(std::move(amplitudes)) {
    const Scalar norm = amplitudes_.norm();
    if (norm < kTolerance<Scalar>)
      throw std::invalid_argument("state vector has zero norm");
    if (std::abs(norm - Scalar(1)) > kTolerance<Scalar>)
      throw std::invalid_argument("state vector is not normalized");
  }

  /// Computational basis state |index> on `num_qubits` qubits.
  static BasicStateVector basis(int num_qubits, std::size_t index) {
    if (num_qubits < 0 || num_qubits > kMaxQubits)
      throw std::invalid_argument("qubit count out of range");
    const auto dim = std::size_t{1} << num_qubits;
    if (index >= dim) throw std::out_of_range("basis index out of range");
    Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = Complex(1);
    return BasicStateVector(std::move(amps));
  }

  /// Rescales an arbitrary nonzero vector to unit norm.
  static BasicStateVector normalized(Amplitudes amplitudes) {
    const Scalar norm = amplitudes.norm();
    if (norm < kTolerance<Scalar>)
      throw std::invalid_argument("state vector has zero norm");
    amplitudes /= norm;
    return BasicStateVector(std::move(amplitudes));
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t index) const {
    return amplitudes_(static_cast<Eigen::Index>(index));
  }

 private:
  static int qubits_for_length(Eigen::Index length) {
    for (int n = 0; n <= kMaxQubits; ++n)
      if (length == (Eigen::Index{1} << n)) return n;
    throw std::invalid_argument(
        "amplitude count must be 2^n with 0 <= n <= 12");
  }

  int num_qubits_;
  Amplitudes amplitudes_;
};

using StateVector = BasicStateVector<double>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar = double>
Matrix2c<Scalar> pauli_matrix(PauliOp op) {
  Matrix2c<Scalar> m;
  switch (op) {
    case PauliOp::I:
      m << 1, 0, 0, 1;
      break;
    case PauliOp::SX:
      m << 0, 1, 1, 0;
      break;
    case PauliOp::ISY:
      m << 0, 1, -1, 0;
      break;
    case PauliOp::SZ:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

namespace detail {

inline std::size_t qubit_mask(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

inline void check_qubit(int num_qubits, int qubit) {
  if (qubit < 0 || qubit >= num_qubits)
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(num_qubits) +
                            "-qubit state");
}

/// Drops the bits of qubits `a` and `b` from `index`, keeping the order of
/// the remaining qubits.
inline std::size_t remove_two_bits(std::size_t index, int num_qubits, int a,
                                   int b) {
  std::size_t out = 0;
  for (int q = 0; q < num_qubits; ++q) {
    if (q == a || q == b) continue;
    out = (out << 1) | ((index & qubit_mask(num_qubits, q)) ? 1u : 0u);
  }
  return out;
}

/// Amplitudes of a Bell state, indexed by 2 * (first bit) + (second bit).
template <typename Scalar>
std::array<std::complex<Scalar>, 4> bell_amplitudes(BellLabel label) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  switch (label) {
    case BellLabel::PhiPlus:
      return {h, 0, 0, h};
    case BellLabel::PhiMinus:
      return {h, 0, 0, -h};
    case BellLabel::PsiPlus:
      return {0, h, h, 0};
    case BellLabel::PsiMinus:
      return {0, h, -h, 0};
  }
  return {};
}

}  // namespace detail

/// Applies `op` to one qubit. Throws std::out_of_range for a bad index.
template <typename Scalar>
BasicStateVector<Scalar> apply_pauli(const BasicStateVector<Scalar>& state,
                                     int qubit, PauliOp op) {
  const int n = state.num_qubits();
  detail::check_qubit(n, qubit);
  const Matrix2c<Scalar> m = pauli_matrix<Scalar>(op);
  const std::size_t mask = detail::qubit_mask(n, qubit);
  auto amps = state.amplitudes();
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    if (k & mask) continue;
    const auto lo = static_cast<Eigen::Index>(k);
    const auto hi = static_cast<Eigen::Index>(k | mask);
    const auto a0 = amps(lo);
    const auto a1 = amps(hi);
    amps(lo) = m(0, 0) * a0 + m(0, 1) * a1;
    amps(hi) = m(1, 0) * a0 + m(1, 1) * a1;
  }
  return BasicStateVector<Scalar>(std::move(amps));
}

/// Kronecker product; `first` occupies the leading qubits.
template <typename Scalar>
BasicStateVector<Scalar> tensor(const BasicStateVector<Scalar>& first,
                                const BasicStateVector<Scalar>& second) {
  if (first.num_qubits() + second.num_qubits() >
      BasicStateVector<Scalar>::kMaxQubits)
    throw std::invalid_argument("tensor product exceeds 12 qubits");
  using Amplitudes = typename BasicStateVector<Scalar>::Amplitudes;
  const auto inner = static_cast<Eigen::Index>(second.dimension());
  Amplitudes amps(static_cast<Eigen::Index>(first.dimension()) * inner);
  for (Eigen::Index i = 0; i < first.amplitudes().size(); ++i)
    amps.segment(i * inner, inner) = first.amplitudes()(i) * second.amplitudes();
  return BasicStateVector<Scalar>(std::move(amps));
}

template <typename Scalar = double>
BasicStateVector<Scalar> bell_state(BellLabel label) {
  const auto coeffs = detail::bell_amplitudes<Scalar>(label);
  typename BasicStateVector<Scalar>::Amplitudes amps(4);
  for (Eigen::Index k = 0; k < 4; ++k) amps(k) = coeffs[k];
  return BasicStateVector<Scalar>(std::move(amps));
}

/// (|0,y> + (-1)^x |1,~y>)/sqrt(2). Throws for fewer than two particles.
template <typename Scalar = double>
BasicStateVector<Scalar> ghz_state(const GhzLabel& label) {
  const int n = label.parties;
  if (n < 2 || n > BasicStateVector<Scalar>::kMaxQubits)
    throw std::invalid_argument("GHZ state needs 2..12 particles");
  if (label.x > 1 || label.y >= (1u << (n - 1)))
    throw std::invalid_argument("GHZ label bits out of range");
  const std::size_t tail = (std::size_t{1} << (n - 1)) - 1;
  const std::size_t zero_branch = label.y;
  const std::size_t one_branch = (std::size_t{1} << (n - 1)) | (~label.y & tail);
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  typename BasicStateVector<Scalar>::Amplitudes amps =
      BasicStateVector<Scalar>::Amplitudes::Zero(Eigen::Index{1} << n);
  amps(static_cast<Eigen::Index>(zero_branch)) = h;
  amps(static_cast<Eigen::Index>(one_branch)) = label.x ? -h : h;
  return BasicStateVector<Scalar>(std::move(amps));
}

/// True iff a = e^{i theta} b for some real theta, amplitude-wise within
/// tolerance. Throws std::invalid_argument on a dimension mismatch.
template <typename Scalar>
bool equal_up_to_phase(const BasicStateVector<Scalar>& a,
                       const BasicStateVector<Scalar>& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("cannot compare states of different size");
  Eigen::Index pivot = 0;
  b.amplitudes().cwiseAbs().maxCoeff(&pivot);
  const auto ratio = a.amplitudes()(pivot) / b.amplitudes()(pivot);
  if (std::abs(std::abs(ratio) - Scalar(1)) > kTolerance<Scalar>) return false;
  const auto phase = ratio / std::abs(ratio);
  return (a.amplitudes() - phase * b.amplitudes()).cwiseAbs().maxCoeff() <=
         kTolerance<Scalar>;
}

template <typename Scalar>
struct BellOutcome {
  BellLabel label;
  Scalar probability;
  /// Normalized state of the qubits that were not measured, in their
  /// original relative order.
  BasicStateVector<Scalar> remainder;
};

/// Bell measurement on qubits (first, second). Returns every outcome with
/// probability above tolerance, in kBellLabels order.
template <typename Scalar>
std::vector<BellOutcome<Scalar>> project_bell(
    const BasicStateVector<Scalar>& state, int first, int second) {
  const int n = state.num_qubits();
  detail::check_qubit(n, first);
  detail::check_qubit(n, second);
  if (first == second)
    throw std::invalid_argument("Bell measurement needs two distinct qubits");

  using Amplitudes = typename BasicStateVector<Scalar>::Amplitudes;
  const auto rest_dim = Eigen::Index{1} << (n - 2);
  std::array<Amplitudes, 4> projected;
  std::array<std::array<std::complex<Scalar>, 4>, 4> bras;
  for (std::size_t l = 0; l < 4; ++l) {
    projected[l] = Amplitudes::Zero(rest_dim);
    bras[l] = detail::bell_amplitudes<Scalar>(kBellLabels[l]);
  }

  const std::size_t mask_a = detail::qubit_mask(n, first);
  const std::size_t mask_b = detail::qubit_mask(n, second);
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    const auto amp = state[k];
    if (amp == std::complex<Scalar>(0)) continue;
    const std::size_t pair = ((k & mask_a) ? 2u : 0u) | ((k & mask_b) ? 1u : 0u);
    const auto rest =
        static_cast<Eigen::Index>(detail::remove_two_bits(k, n, first, second));
    for (std::size_t l = 0; l < 4; ++l)
      projected[l](rest) += std::conj(bras[l][pair]) * amp;
  }

  std::vector<BellOutcome<Scalar>> outcomes;
  for (std::size_t l = 0; l < 4; ++l) {
    const Scalar p = projected[l].squaredNorm();
    if (p <= kTolerance<Scalar>) continue;
    outcomes.push_back({kBellLabels[l], p,
                        BasicStateVector<Scalar>::normalized(projected[l])});
  }
  return outcomes;
}

/// Amplitude <B_1 ... B_k | state> for disjoint qubit pairs covering the
/// whole register. Its squared modulus is the joint probability of the
/// given Bell outcomes, since the pairwise projectors commute.
template <typename Scalar>
std::complex<Scalar> bell_product_amplitude(
    const BasicStateVector<Scalar>& state,
    std::span<const std::pair<int, int>> pairs,
    std::span<const BellLabel> labels) {
  const int n = state.num_qubits();
  if (pairs.size() != labels.size())
    throw std::invalid_argument("one Bell label per pair is required");
  if (static_cast<int>(pairs.size()) * 2 != n)
    throw std::invalid_argument("pairs must cover every qubit");
  std::vector<std::size_t> mask_a, mask_b;
  std::vector<std::array<std::complex<Scalar>, 4>> bras;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    detail::check_qubit(n, pairs[p].first);
    detail::check_qubit(n, pairs[p].second);
    mask_a.push_back(detail::qubit_mask(n, pairs[p].first));
    mask_b.push_back(detail::qubit_mask(n, pairs[p].second));
    bras.push_back(detail::bell_amplitudes<Scalar>(labels[p]));
  }
  std::complex<Scalar> total = 0;
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    const auto amp = state[k];
    if (amp == std::complex<Scalar>(0)) continue;
    std::complex<Scalar> term = amp;
    for (std::size_t p = 0; p < pairs.size() && term != Scalar(0); ++p) {
      const std::size_t idx =
          ((k & mask_a[p]) ? 2u : 0u) | ((k & mask_b[p]) ? 1u : 0u);
      term *= std::conj(bras[p][idx]);
    }
    total += term;
  }
  return total;
}

/// Born probabilities of outcomes 0 and 1 for a single-qubit measurement.
/// In the X basis outcome 0 is |+> and outcome 1 is |->.
template <typename Scalar>
std::array<Scalar, 2> basis_probabilities(const BasicStateVector<Scalar>& state,
                                          int qubit, Basis basis) {
  const int n = state.num_qubits();
  detail::check_qubit(n, qubit);
  const std::size_t mask = detail::qubit_mask(n, qubit);
  std::array<Scalar, 2> probs{0, 0};
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    if (k & mask) continue;
    const auto a0 = state[k];
    const auto a1 = state[k | mask];
    if (basis == Basis::Z) {
      probs[0] += std::norm(a0);
      probs[1] += std::norm(a1);
    } else {
      probs[0] += std::norm(a0 + a1) / Scalar(2);
      probs[1] += std::norm(a0 - a1) / Scalar(2);
    }
  }
  return probs;
}

template <typename Scalar>
struct QubitMeasurement {
  int outcome;
  BasicStateVector<Scalar> state;
};

/// Samples a projective measurement of one qubit and returns the collapsed
/// state (same register size).
template <typename Scalar>
QubitMeasurement<Scalar> measure_qubit(const BasicStateVector<Scalar>& state,
                                       int qubit, Basis basis, Rng& rng) {
  const auto probs = basis_probabilities(state, qubit, basis);
  int outcome = rng.uniform() < static_cast<double>(probs[0]) ? 0 : 1;
  // Rounding can put a draw on a branch of weight ~1e-16.
  if (probs[outcome] <= kTolerance<Scalar>) outcome = 1 - outcome;
  const std::size_t mask = detail::qubit_mask(state.num_qubits(), qubit);
  auto amps = state.amplitudes();
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    if (k & mask) continue;
    const auto lo = static_cast<Eigen::Index>(k);
    const auto hi = static_cast<Eigen::Index>(k | mask);
    if (basis == Basis::Z) {
      (outcome == 0 ? amps(hi) : amps(lo)) = 0;
    } else {
      const Scalar sign = outcome == 0 ? Scalar(1) : Scalar(-1);
      const auto c = (amps(lo) + sign * amps(hi)) / Scalar(2);
      amps(lo) = c;
      amps(hi) = sign * c;
    }
  }
  return {outcome, BasicStateVector<Scalar>::normalized(std::move(amps))};
}

}  // namespace qdleak
