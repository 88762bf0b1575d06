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

// JSON formats.
//
//   circuit:     {"qubits", "input_bits", "output_qubit", "gates": [{"name", "targets", "matrix"?}]}
//   state:       {"qubits", "amplitudes": [[re, im], ...]}
//   hamiltonian: {"n_qubits", "a", "b", "terms": [{"qubits", "matrix"}], "metadata"?}
//   register:    {"encoding": "register", "system_qubits", "clock_dim", "a", "b",
//                 "terms": [{"role", "system_qubits", "system_matrix", "clock_matrix"} |
//                           {"role", "system_qubits", "parts": [{"system_matrix", "clock_matrix"}]}]}
//
// Matrices are row-major arrays of rows of [re, im] pairs. Doubles are written
// in shortest round-trip form, so parse(serialize(x)) == x bit for bit.

#pragma once

#include "fkham/compiler.hpp"
#include "fkham/ops.hpp"
#include "fkham/qcore.hpp"
#include "fkham/spectral.hpp"
#include "fkham/verifier.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace fkham::io {

using json = nlohmann::json;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<double> optional_number_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw ParseError(std::string("field '") + key + "' must be a number or null");
  return j.at(key).get<double>();
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

//
// Circuits and states
//

inline json to_json(const Gate& g) {
  json j = {{"name", std::string(g.name())}, {"targets", g.targets()}};
  if (g.kind() == GateKind::Custom) j["matrix"] = to_json(g.matrix());
  return j;
}

inline Gate gate_from_json(const json& j) {
  const auto name = field<std::string>(j, "name");
  const auto targets = field<std::vector<std::size_t>>(j, "targets");
  const GateKind kind = parse_gate_kind(name);
  if (kind == GateKind::Custom) {
    if (!j.contains("matrix")) throw ParseError("CUSTOM gate needs a matrix");
    return Gate(targets, matrix_from_json(j.at("matrix")));
  }
  if (j.contains("matrix")) throw ParseError("only CUSTOM gates may carry a matrix");
  return Gate(kind, targets);
}

inline json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates()) gates.push_back(to_json(g));
  return {{"qubits", c.qubits()}, {"input_bits", c.input_bits()}, {"output_qubit", c.output_qubit()}, {"gates", gates}};
}

inline Circuit circuit_from_json(const json& j) {
  const auto qubits = field<std::size_t>(j, "qubits");
  const std::string bits = j.contains("input_bits") ? field<std::string>(j, "input_bits") : std::string();
  const std::size_t out = j.contains("output_qubit") ? field<std::size_t>(j, "output_qubit") : 0;
  if (!j.contains("gates") || !j.at("gates").is_array()) throw ParseError("circuit needs a 'gates' array");
  std::vector<Gate> gates;
  for (const json& g : j.at("gates")) gates.push_back(gate_from_json(g));
  return Circuit(qubits, bits, std::move(gates), out);
}

inline json to_json(const StateVector& s) {
  json amps = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) amps.push_back(to_json(s[i]));
  return {{"qubits", s.qubits()}, {"amplitudes", amps}};
}

inline StateVector state_from_json(const json& j) {
  const auto qubits = field<std::size_t>(j, "qubits");
  if (!j.contains("amplitudes") || !j.at("amplitudes").is_array()) throw ParseError("state needs 'amplitudes'");
  const json& a = j.at("amplitudes");
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(a[i]);
  return StateVector(qubits, std::move(v));
}

//
// Hamiltonians
//

inline json to_json(const LocalTerm& t) { return {{"qubits", t.qubits}, {"matrix", to_json(t.matrix)}}; }

inline json to_json(const HamiltonianSpec& spec, const json& metadata = nullptr) {
  json terms = json::array();
  for (const LocalTerm& t : spec.terms) terms.push_back(to_json(t));
  json j = {{"n_qubits", spec.n_qubits}, {"a", optional_number(spec.a)}, {"b", optional_number(spec.b)}, {"terms", terms}};
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

inline HamiltonianSpec hamiltonian_from_json(const json& j) {
  HamiltonianSpec spec;
  spec.n_qubits = field<std::size_t>(j, "n_qubits");
  spec.a = optional_number_from(j, "a");
  spec.b = optional_number_from(j, "b");
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("hamiltonian needs a 'terms' array");
  for (const json& t : j.at("terms"))
    spec.terms.push_back({field<std::vector<std::size_t>>(t, "qubits"), matrix_from_json(t.at("matrix"))});
  try {
    validate(spec);
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
  return spec;
}

inline json unary_metadata(const UnaryHamiltonian& u) {
  json roles = json::array();
  for (TermRole r : u.roles) roles.push_back(std::string(role_name(r)));
  return {{"encoding", "unary"},
          {"T", u.steps},
          {"m", u.system_qubits},
          {"single_clock_qubit_edge_case", u.single_clock_qubit},
          {"five_local", !u.single_clock_qubit},
          {"roles", roles}};
}

inline json to_json(const UnaryHamiltonian& u) { return io::to_json(u.spec, unary_metadata(u)); }

inline json to_json(const ClockRegisterTerm& t, std::string_view role) {
  json j = {{"role", std::string(role)}, {"system_qubits", t.system_qubits}};
  if (t.parts.size() == 1) {
    j["system_matrix"] = to_json(t.parts[0].system);
    j["clock_matrix"] = to_json(t.parts[0].clock);
  } else {
    json parts = json::array();
    for (const ClockProduct& p : t.parts)
      parts.push_back({{"system_matrix", to_json(p.system)}, {"clock_matrix", to_json(p.clock)}});
    j["parts"] = parts;
  }
  return j;
}

inline json to_json(const RegisterClockHamiltonian& h) {
  json terms = json::array();
  for (const auto& t : h.in_terms) terms.push_back(to_json(t, "in"));
  terms.push_back(to_json(h.out_term, "out"));
  for (const auto& t : h.prop_terms) terms.push_back(to_json(t, "prop"));
  return {{"encoding", "register"},
          {"system_qubits", h.system_qubits},
          {"clock_dim", h.clock_dim},
          {"a", optional_number(h.a)},
          {"b", optional_number(h.b)},
          {"terms", terms},
          {"metadata", {{"encoding", "register"}, {"T", h.steps()}, {"m", h.system_qubits}}}};
}

inline bool is_register_clock(const json& j) { return j.is_object() && j.contains("clock_dim"); }

inline RegisterClockHamiltonian register_clock_from_json(const json& j) {
  RegisterClockHamiltonian h;
  h.system_qubits = field<std::size_t>(j, "system_qubits");
  h.clock_dim = field<std::size_t>(j, "clock_dim");
  if (h.clock_dim < 2) throw ParseError("clock_dim must be at least 2");
  h.a = optional_number_from(j, "a");
  h.b = optional_number_from(j, "b");
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("hamiltonian needs a 'terms' array");
  bool have_out = false;
  for (const json& t : j.at("terms")) {
    ClockRegisterTerm term;
    term.system_qubits = field<std::vector<std::size_t>>(t, "system_qubits");
    if (t.contains("parts")) {
      for (const json& p : t.at("parts"))
        term.parts.push_back({matrix_from_json(p.at("system_matrix")), matrix_from_json(p.at("clock_matrix"))});
    } else {
      term.parts.push_back({matrix_from_json(t.at("system_matrix")), matrix_from_json(t.at("clock_matrix"))});
    }
    try {
      detail::local_index(term.system_qubits, h.system_qubits);
    } catch (const DimensionError& e) {
      throw ParseError(e.what());
    }
    validate_term(term, h.clock_dim);
    const std::string role = t.contains("role") ? field<std::string>(t, "role") : "prop";
    if (role == "in") {
      h.in_terms.push_back(std::move(term));
    } else if (role == "out") {
      if (have_out) throw ParseError("more than one 'out' term");
      h.out_term = std::move(term);
      have_out = true;
    } else if (role == "prop") {
      h.prop_terms.push_back(std::move(term));
    } else {
      throw ParseError("unknown term role '" + role + "'");
    }
  }
  if (!have_out) throw ParseError("register-clock Hamiltonian lacks an 'out' term");
  return h;
}

//
// Reports
//

inline json to_json(const SpectralReport& r) {
  json j = {{"method", std::string(method_name(r.method))},
            {"lambda_min", r.min_eigenvalue()},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"converged", r.converged}};
  if (r.method == SpectralMethod::Dense) j["eigenvalues"] = to_json(r.eigenvalues);
  return j;
}

inline json to_json(const ClockWalk& w) {
  return {{"T", w.steps},
          {"A", to_json(w.A)},
          {"B", to_json(w.B)},
          {"conductance", w.conductance},
          {"gap_bound", w.gap_bound},
          {"eigenvalues", to_json(w.eigenvalues)},
          {"second_eigenvalue", w.second_eigenvalue},
          {"bound_holds", w.bound_holds()}};
}

inline json to_json(const AngleReport& a) {
  json j = {{"dim_N1", a.dim_n1}, {"dim_N2", a.dim_n2}, {"defined", a.defined},
            {"cos_theta", a.cos_theta}, {"theta", a.theta}, {"sin2_half_theta", a.sin2_half}, {"sin2_theta", a.sin2_theta}};
  j["bound"] = optional_number(a.bound);
  j["bound_holds"] = a.bound_holds ? json(*a.bound_holds) : json(nullptr);
  j["full_angle_bound_holds"] = a.full_angle_holds ? json(*a.full_angle_holds) : json(nullptr);
  return j;
}

inline json to_json(const LemmaReport& l) {
  return {{"vacuous", l.vacuous},     {"lambda", l.lambda},         {"angle", to_json(l.angle)},
          {"bound", l.bound},         {"actual_min", l.actual_min},
          {"holds", l.holds ? json(*l.holds) : json(nullptr)}};
}

inline json to_json(const SoundnessAudit& a) {
  return {{"T", a.steps},
          {"max_acceptance", a.max_acceptance},
          {"lambda_min", a.lambda_min},
          {"bound", a.bound},
          {"h1_second_eigenvalue", a.h1_second},
          {"h1_ok", a.h1_ok},
          {"h2_second_eigenvalue", a.h2_second},
          {"h2_second_bound", a.h2_second_bound},
          {"h2_ok", a.h2_ok},
          {"angle", to_json(a.angle)},
          {"lemma", to_json(a.lemma)},
          {"holds", a.holds}};
}

inline json to_json(const CompletenessAudit& c) {
  return {{"T", c.steps},
          {"acceptance", c.acceptance},
          {"epsilon", c.epsilon},
          {"register_energy", c.register_energy},
          {"unary_energy", c.unary_energy},
          {"out_energy", c.out_energy},
          {"register_prop_residual", c.register_prop_residual},
          {"unary_prop_residual", c.unary_prop_residual},
          {"in_residual", c.in_residual},
          {"register_lambda_min", optional_number(c.register_lambda_min)},
          {"holds", c.holds}};
}

inline json to_json(const AcceptanceEstimate& e) {
  return {{"exact", e.exact_probability},
          {"sampled", optional_number(e.sampled_frequency)},
          {"shots", e.shots},
          {"seed", e.seed},
          {"stderr", e.standard_error}};
}

inline json to_json(const AmplificationPlan& p) {
  return {{"c", p.completeness},           {"s", p.soundness}, {"delta", p.target_error},
          {"repetitions", p.repetitions}, {"decision_threshold", p.decision_threshold},
          {"error_bound", p.error_bound()}};
}

}  // namespace fkham::io
