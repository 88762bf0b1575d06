// Copyright 2026 The fkham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Verification protocol for a local Hamiltonian: pick a term uniformly at
// random, toss the ancilla coin whose 1-probability is 1 - <H_i>, accept on 1.

#pragma once

#include "fkham/eigh.hpp"
#include "fkham/ops.hpp"
#include "fkham/rng.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace fkham {

struct TermDecomposition {
  RealVector weights;  // w_j in [0, 1], ascending
  Matrix vectors;      // alpha_j as orthonormal columns

  Matrix reconstruct() const { return vectors * weights.cast<Complex>().asDiagonal() * vectors.adjoint(); }
};

inline TermDecomposition decompose_term(const LocalTerm& term) {
  if (hermiticity_deviation(term.matrix) > tol::kHermitian) throw ValidationError("term is not Hermitian");
  EigenDecomposition ed = hermitian_eigh(term.matrix);
  const double lo = ed.values[0];
  const double hi = ed.values[ed.values.size() - 1];
  if (lo < -tol::kPsd || hi > 1.0 + tol::kNorm)
    throw ValidationError("term eigenvalues [" + std::to_string(lo) + ", " + std::to_string(hi) + "] leave [0, 1]");
  TermDecomposition d;
  d.weights = ed.values.cwiseMax(0.0).cwiseMin(1.0);
  d.vectors = std::move(ed.vectors);
  return d;
}

/// Probability that the ancilla reads 1 after T|alpha_j>|0> =
/// |alpha_j>(sqrt(w_j)|0> + sqrt(1-w_j)|1>); equals 1 - <state|H_i|state>.
inline double coin_probability(const LocalTerm& term, const Vector& state, std::size_t n_qubits) {
  if (static_cast<std::size_t>(state.size()) != pow2(n_qubits)) throw DimensionError("state does not match register");
  Vector h_state = Vector::Zero(state.size());
  apply_term_accumulate(term, n_qubits, state, h_state);
  const double p = 1.0 - real_inner(state, h_state);
  if (p < -1e-10 || p > 1.0 + 1e-10) throw ValidationError("coin probability out of [0, 1]; invalid term or state");
  return std::clamp(p, 0.0, 1.0);
}

inline double coin_probability(const LocalTerm& term, const StateVector& state) {
  return coin_probability(term, state.amplitudes(), state.qubits());
}

struct AcceptanceEstimate {
  double exact_probability = 0.0;
  std::optional<double> sampled_frequency;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  double standard_error = 0.0;  // sqrt(p(1-p)/shots), p = exact
};

/// Exact acceptance 1 - <H>/r, optionally with a seeded Monte Carlo estimate.
/// Shot k draws its term index and coin from SplitMix64::stream(seed, k).
inline AcceptanceEstimate protocol_accept_probability(const HamiltonianSpec& spec, const StateVector& state,
                                                      std::size_t shots = 0, std::uint64_t seed = 0) {
  if (spec.terms.empty()) throw ValidationError("verification needs at least one term");
  if (state.qubits() != spec.n_qubits) throw DimensionError("witness qubit count does not match Hamiltonian");
  const std::size_t r = spec.terms.size();
  std::vector<double> coins(r);
  for (std::size_t i = 0; i < r; ++i) coins[i] = coin_probability(spec.terms[i], state);
  AcceptanceEstimate est;
  est.exact_probability = std::clamp(1.0 - expectation(spec, state) / static_cast<double>(r), 0.0, 1.0);
  est.shots = shots;
  est.seed = seed;
  if (shots > 0) {
    std::size_t accepted = 0;
    for (std::size_t k = 0; k < shots; ++k) {
      SplitMix64 g = SplitMix64::stream(seed, k);
      const std::size_t i = static_cast<std::size_t>(g.below(r));
      if (g.uniform() < coins[i]) ++accepted;
    }
    est.sampled_frequency = static_cast<double>(accepted) / static_cast<double>(shots);
    const double p = est.exact_probability;
    est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
  }
  return est;
}

struct AmplificationPlan {
  double completeness = 0.0;
  double soundness = 0.0;
  double target_error = 0.0;
  std::size_t repetitions = 0;
  double decision_threshold = 0.0;  // accept iff accept-count >= (c+s)/2 * repetitions

  /// Two-sided Hoeffding bound 2 exp(-m (c-s)^2 / 2).
  double error_bound() const {
    const double g = completeness - soundness;
    return 2.0 * std::exp(-static_cast<double>(repetitions) * g * g / 2.0);
  }
};

/// Smallest m with 2 exp(-m (c-s)^2 / 2) <= delta. delta >= 1 needs one run.
inline AmplificationPlan plan_amplification(double c, double s, double delta) {
  if (!(c > s)) throw ValidationError("amplification needs completeness > soundness");
  if (!(delta > 0.0)) throw ValidationError("target error must be positive");
  AmplificationPlan plan;
  plan.completeness = c;
  plan.soundness = s;
  plan.target_error = delta;
  if (delta >= 1.0) {
    plan.repetitions = 1;
  } else {
    const double g = c - s;
    auto m = static_cast<std::size_t>(std::ceil(2.0 * std::log(2.0 / delta) / (g * g)));
    m = std::max<std::size_t>(m, 1);
    // Guard against rounding in the closed form.
    auto fails = [&](std::size_t k) { return 2.0 * std::exp(-static_cast<double>(k) * g * g / 2.0) > delta; };
    while (fails(m)) ++m;
    while (m > 1 && !fails(m - 1)) --m;
    plan.repetitions = m;
  }
  plan.decision_threshold = (c + s) / 2.0 * static_cast<double>(plan.repetitions);
  return plan;
}

}  // namespace fkham
