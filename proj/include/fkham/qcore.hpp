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

// Circuits and exact statevector simulation.
//
// Bit ordering throughout the library: qubit 0 is the most significant bit of
// a basis-state index, so on m qubits qubit q carries weight 2^(m-1-q).

#pragma once

#include "fkham/eigh.hpp"
#include "fkham/linalg.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fkham {

enum class GateKind { I, X, Y, Z, H, S, T, CNOT, CZ, SWAP, Custom };

inline std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::I: return "I";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Custom: return "CUSTOM";
  }
  return "?";
}

inline GateKind parse_gate_kind(std::string_view name) {
  static constexpr std::array kinds = {GateKind::I,  GateKind::X,    GateKind::Y,  GateKind::Z,
                                       GateKind::H,  GateKind::S,    GateKind::T,  GateKind::CNOT,
                                       GateKind::CZ, GateKind::SWAP, GateKind::Custom};
  for (GateKind k : kinds)
    if (gate_name(k) == name) return k;
  throw ParseError("unknown gate name '" + std::string(name) + "'");
}

inline std::size_t gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP: return 2;
    case GateKind::Custom: return 0;
    default: return 1;
  }
}

/// Standard matrix of a named gate. For CNOT the first target is the control.
inline Matrix standard_gate_matrix(GateKind kind) {
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m;
  switch (kind) {
    case GateKind::I: m = Matrix::Identity(2, 2); break;
    case GateKind::X: m.resize(2, 2); m << 0, 1, 1, 0; break;
    case GateKind::Y: m.resize(2, 2); m << 0, -i, i, 0; break;
    case GateKind::Z: m.resize(2, 2); m << 1, 0, 0, -1; break;
    case GateKind::H: m.resize(2, 2); m << r, r, r, -r; break;
    case GateKind::S: m.resize(2, 2); m << 1, 0, 0, i; break;
    case GateKind::T: m.resize(2, 2); m << 1, 0, 0, std::exp(i * (std::numbers::pi / 4.0)); break;
    case GateKind::CNOT:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      break;
    case GateKind::CZ:
      m = Matrix::Identity(4, 4);
      m(3, 3) = -1.0;
      break;
    case GateKind::SWAP:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
      break;
    case GateKind::Custom: throw ValidationError("CUSTOM gates carry their own matrix");
  }
  return m;
}

/// A one- or two-qubit unitary with the ordered qubits it acts on. The first
/// target is the most significant bit of the gate's local index.
class Gate {
 public:
  Gate(GateKind kind, std::vector<std::size_t> targets) : kind_(kind), targets_(std::move(targets)) {
    if (kind == GateKind::Custom) throw ValidationError("CUSTOM gate requires a matrix");
    matrix_ = standard_gate_matrix(kind);
    check();
  }

  Gate(std::vector<std::size_t> targets, Matrix matrix)
      : kind_(GateKind::Custom), targets_(std::move(targets)), matrix_(std::move(matrix)) {
    check();
  }

  static Gate named(std::string_view name, std::vector<std::size_t> targets) {
    return Gate(parse_gate_kind(name), std::move(targets));
  }

  GateKind kind() const { return kind_; }
  std::string_view name() const { return gate_name(kind_); }
  const std::vector<std::size_t>& targets() const { return targets_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  void check() const {
    if (targets_.empty() || targets_.size() > 2)
      throw ValidationError("gate must act on 1 or 2 qubits");
    if (targets_.size() == 2 && targets_[0] == targets_[1])
      throw ValidationError("gate targets must be distinct");
    if (kind_ != GateKind::Custom && gate_arity(kind_) != targets_.size())
      throw ValidationError("gate " + std::string(name()) + " expects " +
                            std::to_string(gate_arity(kind_)) + " target(s)");
    const auto dim = static_cast<Eigen::Index>(pow2(targets_.size()));
    if (matrix_.rows() != dim || matrix_.cols() != dim)
      throw ValidationError("gate matrix dimension does not match its target count");
    if (!is_unitary(matrix_))
      throw ValidationError("gate matrix is not unitary (deviation " +
                            std::to_string(unitarity_deviation(matrix_)) + ")");
  }

  GateKind kind_;
  std::vector<std::size_t> targets_;
  Matrix matrix_;
};

/// Unit-norm amplitude vector on `qubits` qubits.
class StateVector {
 public:
  StateVector() : qubits_(0), amplitudes_(Vector::Ones(1)) {}

  StateVector(std::size_t qubits, Vector amplitudes)
      : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != pow2(qubits_))
      throw DimensionError("state has " + std::to_string(amplitudes_.size()) +
                           " amplitudes, expected 2^" + std::to_string(qubits_));
    const double dev = std::abs(amplitudes_.squaredNorm() - 1.0);
    if (dev > tol::kStateNorm)
      throw ValidationError("state is not normalized (|norm^2 - 1| = " + std::to_string(dev) + ")");
  }

  static StateVector basis(std::size_t qubits, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(pow2(qubits)));
    if (index >= static_cast<std::size_t>(v.size())) throw DimensionError("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(qubits, std::move(v));
  }

  /// Normalizes a non-zero vector before construction.
  static StateVector normalized(std::size_t qubits, Vector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
    return StateVector(qubits, amplitudes / n);
  }

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

 private:
  friend StateVector apply_gate(StateVector state, const Gate& gate);
  std::size_t qubits_;
  Vector amplitudes_;
};

/// Tensor product |a> (x) |b>, a on the leading qubits.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    v.segment(static_cast<Eigen::Index>(i * b.dim()), static_cast<Eigen::Index>(b.dim())) =
        a[i] * b.amplitudes();
  return StateVector(a.qubits() + b.qubits(), std::move(v));
}

inline StateVector bitstring_state(std::string_view bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("bit string may contain only 0 and 1");
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  return StateVector::basis(bits.size(), index);
}

namespace detail {

/// Index offsets of the 2^k local basis states of `qubits` inside an
/// n-qubit index, plus the mask of the touched bits.
struct LocalIndex {
  std::vector<std::size_t> offsets;
  std::size_t mask = 0;
};

inline LocalIndex local_index(std::span<const std::size_t> qubits, std::size_t n_qubits) {
  LocalIndex li;
  const std::size_t k = qubits.size();
  li.offsets.assign(pow2(k), 0);
  for (std::size_t j = 0; j < k; ++j) {
    if (qubits[j] >= n_qubits)
      throw DimensionError("qubit index " + std::to_string(qubits[j]) + " out of range for " +
                           std::to_string(n_qubits) + " qubits");
    const std::size_t weight = std::size_t{1} << (n_qubits - 1 - qubits[j]);
    if (li.mask & weight) throw DimensionError("repeated qubit index " + std::to_string(qubits[j]));
    li.mask |= weight;
    for (std::size_t l = 0; l < li.offsets.size(); ++l)
      if ((l >> (k - 1 - j)) & 1U) li.offsets[l] |= weight;
  }
  return li;
}

/// amps <- (M (x) I_rest) amps, with M acting on `qubits`.
inline void apply_local_inplace(Vector& amps, std::size_t n_qubits, std::span<const std::size_t> qubits,
                                const Matrix& m) {
  const LocalIndex li = local_index(qubits, n_qubits);
  const std::size_t local_dim = li.offsets.size();
  Vector in(static_cast<Eigen::Index>(local_dim));
  const std::size_t dim = pow2(n_qubits);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & li.mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l)
      in(static_cast<Eigen::Index>(l)) = amps(static_cast<Eigen::Index>(base | li.offsets[l]));
    for (std::size_t r = 0; r < local_dim; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < local_dim; ++c)
        acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in(static_cast<Eigen::Index>(c));
      amps(static_cast<Eigen::Index>(base | li.offsets[r])) = acc;
    }
  }
}

}  // namespace detail

/// Returns (G (x) I_rest)|state>.
inline StateVector apply_gate(StateVector state, const Gate& gate) {
  detail::apply_local_inplace(state.amplitudes_, state.qubits_, gate.targets(), gate.matrix());
  return state;
}

/// Gate sequence on `qubits` qubits. Input bits occupy qubits 0..n-1; the
/// remaining qubits hold the witness.
class Circuit {
 public:
  Circuit(std::size_t qubits, std::string input_bits, std::vector<Gate> gates, std::size_t output_qubit = 0)
      : qubits_(qubits), input_bits_(std::move(input_bits)), gates_(std::move(gates)),
        output_qubit_(output_qubit) {
    if (qubits_ == 0) throw ValidationError("circuit needs at least one qubit");
    if (gates_.empty()) throw ValidationError("circuit needs at least one gate");
    if (input_bits_.size() > qubits_) throw DimensionError("more input bits than qubits");
    for (char c : input_bits_)
      if (c != '0' && c != '1') throw ParseError("input bits may contain only 0 and 1");
    if (output_qubit_ >= qubits_) throw DimensionError("output qubit out of range");
    for (const Gate& g : gates_)
      for (std::size_t t : g.targets())
        if (t >= qubits_)
          throw DimensionError("gate " + std::string(g.name()) + " targets qubit " + std::to_string(t) +
                               " of a " + std::to_string(qubits_) + "-qubit circuit");
  }

  std::size_t qubits() const { return qubits_; }
  const std::string& input_bits() const { return input_bits_; }
  std::size_t input_count() const { return input_bits_.size(); }
  std::size_t witness_qubits() const { return qubits_ - input_bits_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t steps() const { return gates_.size(); }
  std::size_t output_qubit() const { return output_qubit_; }

  /// Same gates, different input string.
  Circuit with_input(std::string x) const { return Circuit(qubits_, std::move(x), gates_, output_qubit_); }

 private:
  std::size_t qubits_;
  std::string input_bits_;
  std::vector<Gate> gates_;
  std::size_t output_qubit_;
};

/// |x> (x) |witness>, the state at time 0.
inline StateVector initial_state(const Circuit& circuit, const StateVector& witness) {
  if (witness.qubits() != circuit.witness_qubits())
    throw DimensionError("witness has " + std::to_string(witness.qubits()) + " qubits, circuit expects " +
                         std::to_string(circuit.witness_qubits()));
  return tensor(bitstring_state(circuit.input_bits()), witness);
}

/// All T+1 intermediate states U_t...U_1|x,witness>, t = 0..T.
inline std::vector<StateVector> run_circuit_trace(const Circuit& circuit, const StateVector& witness) {
  std::vector<StateVector> trace;
  trace.reserve(circuit.steps() + 1);
  trace.push_back(initial_state(circuit, witness));
  for (const Gate& g : circuit.gates()) trace.push_back(apply_gate(trace.back(), g));
  return trace;
}

inline StateVector run_circuit(const Circuit& circuit, const StateVector& witness) {
  StateVector state = initial_state(circuit, witness);
  for (const Gate& g : circuit.gates()) state = apply_gate(std::move(state), g);
  return state;
}

/// Probability of measuring 1 on `qubit`.
inline double probability_of_one(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.qubits()) throw DimensionError("qubit out of range");
  const std::size_t weight = std::size_t{1} << (state.qubits() - 1 - qubit);
  double p = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i)
    if (i & weight) p += std::norm(state[i]);
  return std::clamp(p, 0.0, 1.0);
}

inline double acceptance_probability(const Circuit& circuit, const StateVector& witness) {
  return probability_of_one(run_circuit(circuit, witness), circuit.output_qubit());
}

/// Acceptance operator on the witness space: entry (j,k) = <psi_j|P1_out|psi_k>
/// with psi_j the final state for witness basis state j.
inline Matrix acceptance_operator(const Circuit& circuit) {
  const std::size_t wq = circuit.witness_qubits();
  const std::size_t wdim = pow2(wq);
  require_dense_dim(wdim);
  const std::size_t weight = std::size_t{1} << (circuit.qubits() - 1 - circuit.output_qubit());
  Matrix finals(static_cast<Eigen::Index>(pow2(circuit.qubits())), static_cast<Eigen::Index>(wdim));
  for (std::size_t j = 0; j < wdim; ++j)
    finals.col(static_cast<Eigen::Index>(j)) = run_circuit(circuit, StateVector::basis(wq, j)).amplitudes();
  for (Eigen::Index i = 0; i < finals.rows(); ++i)
    if (!(static_cast<std::size_t>(i) & weight)) finals.row(i).setZero();
  return finals.adjoint() * finals;
}

struct BestWitness {
  double probability = 0.0;
  StateVector witness;
};

/// Witness maximizing the acceptance probability (top eigenvector of the
/// acceptance operator) together with that probability.
inline BestWitness max_acceptance(const Circuit& circuit) {
  const EigenDecomposition ed = hermitian_eigh(acceptance_operator(circuit));
  const Eigen::Index top = ed.values.size() - 1;
  BestWitness best;
  best.witness = StateVector::normalized(circuit.witness_qubits(), ed.vectors.col(top));
  best.probability = acceptance_probability(circuit, best.witness);
  return best;
}

/// Dense 2^m x 2^m unitary of gate `gate` on an m-qubit register.
inline Matrix gate_unitary(const Gate& gate, std::size_t qubits) {
  const std::size_t dim = pow2(qubits);
  require_dense_dim(dim);
  Matrix u = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Vector col = u.col(j);
    detail::apply_local_inplace(col, qubits, gate.targets(), gate.matrix());
    u.col(j) = col;
  }
  return u;
}

/// Prefix products U_t...U_1 for t = 0..T (index 0 is the identity).
inline std::vector<Matrix> prefix_unitaries(const Circuit& circuit) {
  const std::size_t dim = pow2(circuit.qubits());
  require_dense_dim(dim);
  std::vector<Matrix> out;
  out.reserve(circuit.steps() + 1);
  out.push_back(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  for (const Gate& g : circuit.gates()) {
    Matrix next = out.back();
    for (Eigen::Index j = 0; j < next.cols(); ++j) {
      Vector col = next.col(j);
      detail::apply_local_inplace(col, circuit.qubits(), g.targets(), g.matrix());
      next.col(j) = col;
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace fkham
