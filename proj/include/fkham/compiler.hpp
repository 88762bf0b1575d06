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

// Circuit-to-Hamiltonian compilation with a clock.
//
// Register form: system (m qubits) (x) clock register of dimension T+1, basis
// index s*(T+1) + t. Unary form: m system qubits followed by T clock qubits,
// clock qubit c_t (t = 1..T) at index m+t-1, time t stored as 1^t 0^(T-t).

#pragma once

#include "fkham/ops.hpp"
#include "fkham/qcore.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace fkham {

enum class ClockEncoding { Register, Unary };

inline std::string_view encoding_name(ClockEncoding e) { return e == ClockEncoding::Register ? "register" : "unary"; }

inline ClockEncoding parse_encoding(std::string_view s) {
  if (s == "register") return ClockEncoding::Register;
  if (s == "unary") return ClockEncoding::Unary;
  throw ParseError("unknown clock encoding '" + std::string(s) + "'");
}

struct Thresholds {
  double a = 0.0;
  double b = 0.0;
};

/// a = 1/T^10, b = 1/(4(T+1)^3). Only defined for T >= 2, where a < b.
inline std::optional<Thresholds> reduction_thresholds(std::size_t steps) {
  if (steps < 2) return std::nullopt;
  const double t = static_cast<double>(steps);
  return Thresholds{1.0 / std::pow(t, 10.0), 1.0 / (4.0 * std::pow(t + 1.0, 3.0))};
}

/// Projector onto the computational basis value `bit` of one qubit.
inline Matrix bit_projector(int bit) { return outer(2, static_cast<std::size_t>(bit), static_cast<std::size_t>(bit)); }

//
// Register-clock form
//

struct RegisterClockHamiltonian {
  std::size_t system_qubits = 0;
  std::size_t clock_dim = 0;
  std::vector<ClockRegisterTerm> in_terms;
  ClockRegisterTerm out_term;
  std::vector<ClockRegisterTerm> prop_terms;
  std::optional<double> a;
  std::optional<double> b;

  std::size_t steps() const { return clock_dim - 1; }
  std::size_t dim() const { return pow2(system_qubits) * clock_dim; }
};

/// Which groups of terms to include when applying or assembling.
struct TermSelection {
  bool in = true;
  bool out = true;
  bool prop = true;
};

inline constexpr TermSelection kAllTerms{true, true, true};
inline constexpr TermSelection kInOutTerms{true, true, false};
inline constexpr TermSelection kPropTerms{false, false, true};

inline void apply_clock_term_accumulate(const ClockRegisterTerm& term, std::size_t system_qubits,
                                        std::size_t clock_dim, const Vector& in, Vector& out) {
  const detail::LocalIndex li = detail::local_index(term.system_qubits, system_qubits);
  const std::size_t sdim = pow2(system_qubits);
  const std::size_t ld = li.offsets.size();
  for (const ClockProduct& part : term.parts) {
    struct Entry {
      std::size_t row, col;
      Complex value;
    };
    std::vector<Entry> clock_nz;
    for (Eigen::Index r = 0; r < part.clock.rows(); ++r)
      for (Eigen::Index c = 0; c < part.clock.cols(); ++c)
        if (part.clock(r, c) != 0.0)
          clock_nz.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), part.clock(r, c)});
    std::vector<Entry> sys_nz;
    for (std::size_t r = 0; r < ld; ++r)
      for (std::size_t c = 0; c < ld; ++c) {
        const Complex v = part.system(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v != 0.0) sys_nz.push_back({r, c, v});
      }
    for (std::size_t base = 0; base < sdim; ++base) {
      if (base & li.mask) continue;
      for (const Entry& s : sys_nz) {
        const std::size_t row_s = (base | li.offsets[s.row]) * clock_dim;
        const std::size_t col_s = (base | li.offsets[s.col]) * clock_dim;
        for (const Entry& c : clock_nz)
          out(static_cast<Eigen::Index>(row_s + c.row)) +=
              s.value * c.value * in(static_cast<Eigen::Index>(col_s + c.col));
      }
    }
  }
}

template <typename Fn>
void for_each_selected(const RegisterClockHamiltonian& h, TermSelection sel, Fn&& fn) {
  if (sel.in)
    for (const auto& t : h.in_terms) fn(t);
  if (sel.out) fn(h.out_term);
  if (sel.prop)
    for (const auto& t : h.prop_terms) fn(t);
}

inline Vector apply_hamiltonian(const RegisterClockHamiltonian& h, const Vector& in,
                                TermSelection sel = kAllTerms) {
  if (static_cast<std::size_t>(in.size()) != h.dim()) throw DimensionError("vector does not match register-clock dimension");
  Vector out = Vector::Zero(in.size());
  for_each_selected(h, sel, [&](const ClockRegisterTerm& t) {
    apply_clock_term_accumulate(t, h.system_qubits, h.clock_dim, in, out);
  });
  return out;
}

inline LinearOperator as_operator(const RegisterClockHamiltonian& h, TermSelection sel = kAllTerms) {
  LinearOperator op;
  op.dim = h.dim();
  op.apply = [h, sel](const Vector& in, Vector& out) {
    for_each_selected(h, sel, [&](const ClockRegisterTerm& t) {
      apply_clock_term_accumulate(t, h.system_qubits, h.clock_dim, in, out);
    });
  };
  return op;
}

inline Matrix assemble_dense(const RegisterClockHamiltonian& h, TermSelection sel = kAllTerms) {
  require_dense_dim(h.dim());
  const auto d = static_cast<Eigen::Index>(h.dim());
  const std::size_t D = h.clock_dim;
  Matrix m = Matrix::Zero(d, d);
  for_each_selected(h, sel, [&](const ClockRegisterTerm& term) {
    const detail::LocalIndex li = detail::local_index(term.system_qubits, h.system_qubits);
    const std::size_t ld = li.offsets.size();
    for (const ClockProduct& part : term.parts)
      for (std::size_t base = 0; base < pow2(h.system_qubits); ++base) {
        if (base & li.mask) continue;
        for (std::size_t r = 0; r < ld; ++r)
          for (std::size_t c = 0; c < ld; ++c) {
            const Complex sv = part.system(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (sv == 0.0) continue;
            const auto row0 = static_cast<Eigen::Index>((base | li.offsets[r]) * D);
            const auto col0 = static_cast<Eigen::Index>((base | li.offsets[c]) * D);
            m.block(row0, col0, static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D)) += sv * part.clock;
          }
      }
  });
  return m;
}

/// H = H_in + H_out + H_prop with the (T+1)-level clock register.
///   H_in      = sum_i P(not x_i)_i (x) |0><0|
///   H_out     = P(0)_out (x) |T><T|
///   H_prop(t) = 1/2 (I (x) |t><t| + I (x) |t-1><t-1| - U_t (x) |t><t-1| - U_t^H (x) |t-1><t|)
/// Thresholds are left empty for T < 2.
inline RegisterClockHamiltonian compile_register_clock(const Circuit& circuit) {
  const std::size_t T = circuit.steps();
  const std::size_t D = T + 1;
  RegisterClockHamiltonian h;
  h.system_qubits = circuit.qubits();
  h.clock_dim = D;

  const std::string& x = circuit.input_bits();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int wrong = x[i] == '1' ? 0 : 1;
    h.in_terms.push_back({{i}, {{bit_projector(wrong), outer(D, 0, 0)}}});
  }
  h.out_term = {{circuit.output_qubit()}, {{bit_projector(0), outer(D, T, T)}}};

  for (std::size_t t = 1; t <= T; ++t) {
    const Gate& g = circuit.gates()[t - 1];
    const Matrix& u = g.matrix();
    const Matrix id = Matrix::Identity(u.rows(), u.cols());
    ClockRegisterTerm term;
    term.system_qubits = g.targets();
    term.parts = {{0.5 * id, outer(D, t, t)},
                  {0.5 * id, outer(D, t - 1, t - 1)},
                  {-0.5 * u, outer(D, t, t - 1)},
                  {-0.5 * u.adjoint(), outer(D, t - 1, t)}};
    h.prop_terms.push_back(std::move(term));
  }

  if (auto th = reduction_thresholds(T)) {
    h.a = th->a;
    h.b = th->b;
  }
  return h;
}

inline RegisterClockHamiltonian compile_register_clock(const Circuit& circuit, const std::string& x) {
  return compile_register_clock(circuit.with_input(x));
}

//
// Unary-clock form
//

enum class TermRole { In, Out, Prop, Clock };

inline std::string_view role_name(TermRole r) {
  switch (r) {
    case TermRole::In: return "in";
    case TermRole::Out: return "out";
    case TermRole::Prop: return "prop";
    case TermRole::Clock: return "clock";
  }
  return "?";
}

struct UnaryHamiltonian {
  HamiltonianSpec spec;
  std::vector<TermRole> roles;  // parallel to spec.terms
  std::size_t system_qubits = 0;
  std::size_t steps = 0;
  /// T = 1: a single clock qubit carries both edge rules.
  bool single_clock_qubit = false;

  /// Sub-Hamiltonian made of the terms with the given role.
  HamiltonianSpec select(TermRole role) const {
    HamiltonianSpec s;
    s.n_qubits = spec.n_qubits;
    for (std::size_t i = 0; i < spec.terms.size(); ++i)
      if (roles[i] == role) s.terms.push_back(spec.terms[i]);
    return s;
  }
};

/// Clock-register index (c_1 most significant) of time t, i.e. 1^t 0^(T-t).
inline std::size_t unary_clock_index(std::size_t t, std::size_t steps) {
  if (t > steps) throw DimensionError("time step beyond T");
  return ((std::size_t{1} << t) - 1) << (steps - t);
}

inline bool is_valid_unary(std::size_t clock_bits, std::size_t steps) {
  for (std::size_t t = 0; t <= steps; ++t)
    if (unary_clock_index(t, steps) == clock_bits) return true;
  return false;
}

/// Full-space indices of the unary-valid subspace, ordered like the register
/// basis (s, t) so that restriction reproduces the register-form matrix.
inline std::vector<std::size_t> unary_valid_indices(std::size_t system_qubits, std::size_t steps) {
  std::vector<std::size_t> idx;
  const std::size_t cdim = pow2(steps);
  for (std::size_t s = 0; s < pow2(system_qubits); ++s)
    for (std::size_t t = 0; t <= steps; ++t) idx.push_back(s * cdim + unary_clock_index(t, steps));
  return idx;
}

inline std::vector<std::size_t> unary_invalid_indices(std::size_t system_qubits, std::size_t steps) {
  std::vector<std::size_t> idx;
  const std::size_t cdim = pow2(steps);
  for (std::size_t s = 0; s < pow2(system_qubits); ++s)
    for (std::size_t c = 0; c < cdim; ++c)
      if (!is_valid_unary(c, steps)) idx.push_back(s * cdim + c);
  return idx;
}

/// 5-local H' = H'_in + H'_out + H'_prop + H'_clock on m + T qubits.
/// Propagation clock factors act on (c_{t-1}, c_t, c_{t+1}) with |100> for
/// time t-1 and |110> for time t; the missing outer bit is dropped at t = 1 and
/// t = T. H'_in uses |0><0| on c_1, H'_out uses |1><1| on c_T, and H'_clock
/// penalizes |01> on every adjacent clock pair.
inline UnaryHamiltonian compile_unary(const Circuit& circuit) {
  const std::size_t T = circuit.steps();
  const std::size_t m = circuit.qubits();
  if (T < 1) throw CompileRefusal("unary encoding needs at least one gate");
  UnaryHamiltonian u;
  u.system_qubits = m;
  u.steps = T;
  u.single_clock_qubit = T == 1;
  u.spec.n_qubits = m + T;
  auto clock_qubit = [m](std::size_t t) { return m + t - 1; };
  auto add = [&u](std::vector<std::size_t> qubits, Matrix matrix, TermRole role) {
    u.spec.terms.push_back({std::move(qubits), std::move(matrix)});
    u.roles.push_back(role);
  };

  const std::string& x = circuit.input_bits();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int wrong = x[i] == '1' ? 0 : 1;
    add({i, clock_qubit(1)}, kron(bit_projector(wrong), bit_projector(0)), TermRole::In);
  }
  add({circuit.output_qubit(), clock_qubit(T)}, kron(bit_projector(0), bit_projector(1)), TermRole::Out);

  for (std::size_t t = 1; t <= T; ++t) {
    std::vector<std::size_t> clocks;
    std::size_t prev = 0;
    std::size_t now = 0;
    if (T == 1) {
      clocks = {clock_qubit(1)};
      prev = 0b0;
      now = 0b1;
    } else if (t == 1) {
      clocks = {clock_qubit(1), clock_qubit(2)};
      prev = 0b00;
      now = 0b10;
    } else if (t == T) {
      clocks = {clock_qubit(T - 1), clock_qubit(T)};
      prev = 0b10;
      now = 0b11;
    } else {
      clocks = {clock_qubit(t - 1), clock_qubit(t), clock_qubit(t + 1)};
      prev = 0b100;
      now = 0b110;
    }
    const std::size_t cd = pow2(clocks.size());
    const Gate& g = circuit.gates()[t - 1];
    const Matrix& gu = g.matrix();
    const Matrix id = Matrix::Identity(gu.rows(), gu.cols());
    Matrix term = 0.5 * (kron(id, outer(cd, now, now)) + kron(id, outer(cd, prev, prev)) -
                         kron(gu, outer(cd, now, prev)) - kron(gu.adjoint(), outer(cd, prev, now)));
    std::vector<std::size_t> qubits = g.targets();
    qubits.insert(qubits.end(), clocks.begin(), clocks.end());
    add(std::move(qubits), std::move(term), TermRole::Prop);
  }

  for (std::size_t t = 1; t + 1 <= T; ++t) add({clock_qubit(t), clock_qubit(t + 1)}, outer(4, 0b01, 0b01), TermRole::Clock);

  if (auto th = reduction_thresholds(T)) {
    u.spec.a = th->a;
    u.spec.b = th->b;
  }
  return u;
}

inline UnaryHamiltonian compile_unary(const Circuit& circuit, const std::string& x) {
  return compile_unary(circuit.with_input(x));
}

//
// History states and the rotation R
//

struct HistoryState {
  std::size_t system_qubits = 0;
  std::size_t steps = 0;
  ClockEncoding encoding = ClockEncoding::Register;
  Vector amplitudes;

  std::size_t clock_dim() const { return encoding == ClockEncoding::Register ? steps + 1 : pow2(steps); }

  /// Squared norm carried by time leaf t.
  double leaf_weight(std::size_t t) const {
    const std::size_t cd = clock_dim();
    const std::size_t c = encoding == ClockEncoding::Register ? t : unary_clock_index(t, steps);
    double w = 0.0;
    for (std::size_t s = 0; s < pow2(system_qubits); ++s) w += std::norm(amplitudes(static_cast<Eigen::Index>(s * cd + c)));
    return w;
  }
};

/// (1/sqrt(T+1)) sum_t U_t...U_1|initial> (x) |t>, for an arbitrary m-qubit
/// initial state (not necessarily consistent with the input bits).
inline HistoryState history_state_from(const Circuit& circuit, const StateVector& initial, ClockEncoding encoding) {
  if (initial.qubits() != circuit.qubits()) throw DimensionError("initial state does not match circuit width");
  HistoryState h;
  h.system_qubits = circuit.qubits();
  h.steps = circuit.steps();
  h.encoding = encoding;
  const std::size_t cd = h.clock_dim();
  h.amplitudes = Vector::Zero(static_cast<Eigen::Index>(pow2(h.system_qubits) * cd));
  const double w = 1.0 / std::sqrt(static_cast<double>(h.steps + 1));
  StateVector current = initial;
  for (std::size_t t = 0; t <= h.steps; ++t) {
    if (t > 0) current = apply_gate(std::move(current), circuit.gates()[t - 1]);
    const std::size_t c = encoding == ClockEncoding::Register ? t : unary_clock_index(t, h.steps);
    for (std::size_t s = 0; s < current.dim(); ++s) h.amplitudes(static_cast<Eigen::Index>(s * cd + c)) = w * current[s];
  }
  return h;
}

inline HistoryState history_state(const Circuit& circuit, const StateVector& witness, ClockEncoding encoding) {
  return history_state_from(circuit, initial_state(circuit, witness), encoding);
}

/// R = sum_t U_t...U_1 (x) |t><t| on the register-clock space.
inline Matrix rotation_R(const Circuit& circuit) {
  const std::size_t D = circuit.steps() + 1;
  const std::size_t sdim = pow2(circuit.qubits());
  require_dense_dim(sdim * D);
  const std::vector<Matrix> prefix = prefix_unitaries(circuit);
  const auto d = static_cast<Eigen::Index>(sdim * D);
  Matrix r = Matrix::Zero(d, d);
  for (std::size_t t = 0; t < D; ++t)
    for (std::size_t s = 0; s < sdim; ++s)
      for (std::size_t s2 = 0; s2 < sdim; ++s2)
        r(static_cast<Eigen::Index>(s * D + t), static_cast<Eigen::Index>(s2 * D + t)) =
            prefix[t](static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s2));
  return r;
}

}  // namespace fkham
