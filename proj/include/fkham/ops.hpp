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

// Local Hermitian terms on qubit registers and their sums.

#pragma once

#include "fkham/eigh.hpp"
#include "fkham/linalg.hpp"
#include "fkham/qcore.hpp"

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fkham {

/// Dense 2^k x 2^k matrix acting on the ordered qubit list `qubits`; the first
/// listed qubit is the most significant bit of the local index.
struct LocalTerm {
  std::vector<std::size_t> qubits;
  Matrix matrix;

  std::size_t locality() const { return qubits.size(); }
};

struct TermCheck {
  double hermitian_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;

  bool hermitian() const { return hermitian_deviation <= tol::kHermitian; }
  bool psd() const { return min_eigenvalue >= -tol::kPsd; }
  bool bounded() const { return std::max(std::abs(min_eigenvalue), std::abs(max_eigenvalue)) <= 1.0 + tol::kNorm; }
  bool ok() const { return hermitian() && psd() && bounded(); }
};

inline TermCheck check_matrix(const Matrix& m) {
  TermCheck c;
  c.hermitian_deviation = hermiticity_deviation(m);
  if (m.size() == 0) return c;
  const EigenDecomposition ed = hermitian_eigh(m, false);
  c.min_eigenvalue = ed.values[0];
  c.max_eigenvalue = ed.values[ed.values.size() - 1];
  return c;
}

/// Throws ValidationError unless the term is Hermitian, PSD and has norm <= 1.
inline void validate_term(const LocalTerm& term) {
  for (std::size_t i = 0; i < term.qubits.size(); ++i)
    for (std::size_t j = i + 1; j < term.qubits.size(); ++j)
      if (term.qubits[i] == term.qubits[j])
        throw ValidationError("term lists qubit " + std::to_string(term.qubits[i]) + " twice");
  const auto dim = static_cast<Eigen::Index>(pow2(term.qubits.size()));
  if (term.matrix.rows() != dim || term.matrix.cols() != dim)
    throw ValidationError("term matrix is " + std::to_string(term.matrix.rows()) + "x" +
                          std::to_string(term.matrix.cols()) + ", expected " + std::to_string(dim) +
                          " for " + std::to_string(term.qubits.size()) + " qubits");
  const TermCheck c = check_matrix(term.matrix);
  if (!c.hermitian())
    throw ValidationError("term is not Hermitian (deviation " + std::to_string(c.hermitian_deviation) + ")");
  if (!c.psd())
    throw ValidationError("term is not positive semi-definite (min eigenvalue " +
                          std::to_string(c.min_eigenvalue) + ")");
  if (!c.bounded())
    throw ValidationError("term norm exceeds 1 (max eigenvalue " + std::to_string(c.max_eigenvalue) + ")");
}

/// H = sum of terms on n_qubits qubits, with optional promise thresholds a < b.
struct HamiltonianSpec {
  std::size_t n_qubits = 0;
  std::vector<LocalTerm> terms;
  std::optional<double> a;
  std::optional<double> b;

  std::size_t dim() const { return pow2(n_qubits); }
  std::optional<double> threshold_gap() const {
    if (a && b) return *b - *a;
    return std::nullopt;
  }
};

inline void validate(const HamiltonianSpec& spec) {
  for (const LocalTerm& t : spec.terms) {
    detail::local_index(t.qubits, spec.n_qubits);  // throws on bad indices
    validate_term(t);
  }
  if (spec.a && spec.b && !(*spec.b > *spec.a))
    throw ValidationError("thresholds require b > a");
}

/// out += scale * (M (x) I_rest) in, without materializing the embedding.
inline void apply_term_accumulate(const LocalTerm& term, std::size_t n_qubits, const Vector& in, Vector& out,
                                  Complex scale = 1.0) {
  const detail::LocalIndex li = detail::local_index(term.qubits, n_qubits);
  const std::size_t local_dim = li.offsets.size();
  struct Entry {
    std::size_t row, col;
    Complex value;
  };
  std::vector<Entry> nz;
  for (std::size_t r = 0; r < local_dim; ++r)
    for (std::size_t c = 0; c < local_dim; ++c) {
      const Complex v = term.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v != 0.0) nz.push_back({li.offsets[r], li.offsets[c], scale * v});
    }
  if (nz.empty()) return;
  // Enumerate the untouched bits as subsets of the free mask.
  const std::size_t free = (pow2(n_qubits) - 1) & ~li.mask;
  std::size_t base = 0;
  do {
    for (const Entry& e : nz)
      out(static_cast<Eigen::Index>(base | e.row)) += e.value * in(static_cast<Eigen::Index>(base | e.col));
    base = (base - free) & free;
  } while (base != 0);
}

/// Dense 2^N x 2^N embedding of a term (requires 2^N <= kDenseDimCap).
inline Matrix embed_dense(const LocalTerm& term, std::size_t n_qubits) {
  const std::size_t dim = pow2(n_qubits);
  require_dense_dim(dim);
  const detail::LocalIndex li = detail::local_index(term.qubits, n_qubits);
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  const std::size_t local_dim = li.offsets.size();
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & li.mask) continue;
    for (std::size_t r = 0; r < local_dim; ++r)
      for (std::size_t c = 0; c < local_dim; ++c)
        m(static_cast<Eigen::Index>(base | li.offsets[r]), static_cast<Eigen::Index>(base | li.offsets[c])) +=
            term.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return m;
}

/// Embedded term as a full-space operator. Small registers get a dense matrix
/// behind the operator, larger ones the matrix-free kernel.
inline LinearOperator embed(const LocalTerm& term, std::size_t n_qubits) {
  detail::local_index(term.qubits, n_qubits);
  const std::size_t dim = pow2(n_qubits);
  LinearOperator op;
  op.dim = dim;
  if (dim <= kDenseDimCap) {
    auto dense = std::make_shared<const Matrix>(embed_dense(term, n_qubits));
    op.apply = [dense](const Vector& in, Vector& out) { out.noalias() += (*dense) * in; };
  } else {
    op.apply = [term, n_qubits](const Vector& in, Vector& out) { apply_term_accumulate(term, n_qubits, in, out); };
  }
  return op;
}

/// sum_i embed(H_i)|in>, terms summed in index order.
inline Vector apply_hamiltonian(const HamiltonianSpec& spec, const Vector& in) {
  if (static_cast<std::size_t>(in.size()) != spec.dim())
    throw DimensionError("vector dimension " + std::to_string(in.size()) + " does not match 2^" +
                         std::to_string(spec.n_qubits));
  Vector out = Vector::Zero(in.size());
  for (const LocalTerm& t : spec.terms) apply_term_accumulate(t, spec.n_qubits, in, out);
  return out;
}

inline Vector apply_hamiltonian(const HamiltonianSpec& spec, const StateVector& state) {
  if (state.qubits() != spec.n_qubits) throw DimensionError("state qubit count does not match Hamiltonian");
  return apply_hamiltonian(spec, state.amplitudes());
}

inline LinearOperator as_operator(const HamiltonianSpec& spec) {
  LinearOperator op;
  op.dim = spec.dim();
  op.apply = [spec](const Vector& in, Vector& out) {
    for (const LocalTerm& t : spec.terms) apply_term_accumulate(t, spec.n_qubits, in, out);
  };
  return op;
}

inline Matrix assemble_dense(const HamiltonianSpec& spec) {
  require_dense_dim(spec.dim());
  const auto d = static_cast<Eigen::Index>(spec.dim());
  Matrix h = Matrix::Zero(d, d);
  for (const LocalTerm& t : spec.terms) h += embed_dense(t, spec.n_qubits);
  return h;
}

/// Real part of <v|w>; throws when the imaginary part exceeds 1e-8, which can
/// only happen for a non-Hermitian operator.
inline double real_inner(const Vector& v, const Vector& w) {
  const Complex z = v.dot(w);
  if (std::abs(z.imag()) > 1e-8)
    throw ValidationError("expectation has imaginary part " + std::to_string(z.imag()) + " (non-Hermitian input)");
  return z.real();
}

/// <state|H|state>. A non-unit vector is normalized with a warning.
inline double expectation(const HamiltonianSpec& spec, const Vector& state) {
  const double n2 = state.squaredNorm();
  if (n2 == 0.0) throw ValidationError("expectation of the zero vector");
  if (std::abs(n2 - 1.0) > tol::kStateNorm) {
    std::cerr << "warning: expectation: state norm^2 = " << n2 << ", normalizing\n";
    const Vector u = state / std::sqrt(n2);
    return real_inner(u, apply_hamiltonian(spec, u));
  }
  return real_inner(state, apply_hamiltonian(spec, state));
}

inline double expectation(const HamiltonianSpec& spec, const StateVector& state) {
  if (state.qubits() != spec.n_qubits) throw DimensionError("state qubit count does not match Hamiltonian");
  return expectation(spec, state.amplitudes());
}

/// One tensor-product component system_matrix (x) clock_matrix.
struct ClockProduct {
  Matrix system;
  Matrix clock;
};

/// A term acting on at most two system qubits and on the whole (T+1)-level
/// clock register, written as a sum of tensor products.
struct ClockRegisterTerm {
  std::vector<std::size_t> system_qubits;
  std::vector<ClockProduct> parts;

  /// Joint matrix on (listed system qubits) (x) clock.
  Matrix joint() const {
    if (parts.empty()) return Matrix();
    Matrix m = Matrix::Zero(parts[0].system.rows() * parts[0].clock.rows(),
                            parts[0].system.cols() * parts[0].clock.cols());
    for (const ClockProduct& p : parts) m += kron(p.system, p.clock);
    return m;
  }
};

inline void validate_term(const ClockRegisterTerm& term, std::size_t clock_dim) {
  if (term.system_qubits.size() > 2) throw ValidationError("clock-register term touches more than 2 system qubits");
  if (term.parts.empty()) throw ValidationError("clock-register term has no components");
  const auto sd = static_cast<Eigen::Index>(pow2(term.system_qubits.size()));
  const auto cd = static_cast<Eigen::Index>(clock_dim);
  for (const ClockProduct& p : term.parts) {
    if (p.system.rows() != sd || p.system.cols() != sd)
      throw ValidationError("system factor dimension does not match system qubit count");
    if (p.clock.rows() != cd || p.clock.cols() != cd)
      throw ValidationError("clock factor dimension does not match clock_dim");
  }
  const TermCheck c = check_matrix(term.joint());
  if (!c.ok())
    throw ValidationError("clock-register term is not Hermitian PSD with norm <= 1 (herm dev " +
                          std::to_string(c.hermitian_deviation) + ", eig range [" +
                          std::to_string(c.min_eigenvalue) + ", " + std::to_string(c.max_eigenvalue) + "])");
}

}  // namespace fkham
