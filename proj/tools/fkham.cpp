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

// fkham command-line tool.
//
// Exit codes: 0 ok, 1 internal error, 2 parse/dimension error, 3 compile
// refusal, 4 energy classification UNDECIDED, 5 dense method above the cap.

#include "fkham/io.hpp"
#include "fkham/satenc.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using fkham::io::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kParse = 2, kRefused = 3, kUndecided = 4, kCapacity = 5 };

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string method = "dense";
  std::size_t shots = 0;
  double tolerance = 1e-10;
};

void emit(const Common& common, const json& report, const std::string& summary) {
  if (common.out.empty()) {
    std::cout << fkham::io::dump(report);
    return;
  }
  fkham::io::write_file(common.out, fkham::io::dump(report));
  std::cout << summary;
}

fkham::Circuit load_circuit(const std::string& path, const std::optional<std::string>& input) {
  fkham::Circuit c = fkham::io::circuit_from_json(fkham::io::parse_text(fkham::io::read_file(path)));
  return input ? c.with_input(*input) : c;
}

int cmd_compile(const Common& common, const std::string& circuit_file, const std::optional<std::string>& input,
                const std::string& clock) {
  const fkham::Circuit circuit = load_circuit(circuit_file, input);
  const fkham::ClockEncoding enc = fkham::parse_encoding(clock);
  json out;
  bool thresholds = false;
  std::string summary;
  if (enc == fkham::ClockEncoding::Register) {
    const auto h = fkham::compile_register_clock(circuit);
    out = fkham::io::to_json(h);
    thresholds = h.a.has_value();
    summary = "register-clock Hamiltonian: m=" + std::to_string(h.system_qubits) + " T=" + std::to_string(h.steps()) +
              " dim=" + std::to_string(h.dim()) + "\n";
  } else {
    const auto u = fkham::compile_unary(circuit);
    out = fkham::io::to_json(u);
    thresholds = u.spec.a.has_value();
    std::size_t max_loc = 0;
    for (const auto& t : u.spec.terms) max_loc = std::max(max_loc, t.locality());
    summary = "unary Hamiltonian: " + std::to_string(u.spec.n_qubits) + " qubits, " +
              std::to_string(u.spec.terms.size()) + " terms, max locality " + std::to_string(max_loc) + "\n";
    if (u.single_clock_qubit) summary += "note: T=1 single-clock-qubit edge case\n";
  }
  emit(common, out, summary);
  if (!thresholds) {
    std::cerr << "compile: thresholds refused for T=" << circuit.steps() << " (need T >= 2)\n";
    return kRefused;
  }
  return kOk;
}

std::string classify(double lambda, std::optional<double> a, std::optional<double> b, double tolerance) {
  if (!a || !b) return "UNDECIDED";
  if (lambda <= *a) return "YES";
  if (lambda >= *b - tolerance) return "NO";
  return "UNDECIDED";
}

int cmd_energy(const Common& common, const std::string& ham_file) {
  const json j = fkham::io::parse_text(fkham::io::read_file(ham_file));
  const fkham::SpectralMethod method = fkham::parse_method(common.method);
  fkham::SpectralReport report;
  std::optional<double> a;
  std::optional<double> b;
  std::size_t dim = 0;
  if (fkham::io::is_register_clock(j)) {
    const auto h = fkham::io::register_clock_from_json(j);
    a = h.a;
    b = h.b;
    dim = h.dim();
    report = method == fkham::SpectralMethod::Dense ? fkham::dense_eigh(fkham::assemble_dense(h))
                                                    : fkham::lanczos_min_eig(fkham::as_operator(h), common.seed);
  } else {
    const auto spec = fkham::io::hamiltonian_from_json(j);
    a = spec.a;
    b = spec.b;
    dim = spec.dim();
    report = method == fkham::SpectralMethod::Dense ? fkham::dense_eigh(fkham::assemble_dense(spec))
                                                    : fkham::lanczos_min_eig(fkham::as_operator(spec), common.seed);
  }
  const double lambda = report.min_eigenvalue();
  const std::string cls = classify(lambda, a, b, common.tolerance);
  json out = fkham::io::to_json(report);
  out["dimension"] = dim;
  out["a"] = fkham::io::optional_number(a);
  out["b"] = fkham::io::optional_number(b);
  out["classification"] = cls;
  if (method == fkham::SpectralMethod::Lanczos) out["seed"] = common.seed;
  out.erase("eigenvalues");
  std::ostringstream summary;
  summary.precision(17);
  summary << "lambda_min = " << lambda << " (" << fkham::method_name(method) << ")  classification: " << cls << "\n";
  emit(common, out, summary.str());
  if (method == fkham::SpectralMethod::Lanczos && !report.converged) std::cerr << "energy: Lanczos did not converge\n";
  return cls == "UNDECIDED" ? kUndecided : kOk;
}

int cmd_sat2ham(const Common& common, const std::string& cnf_file) {
  std::ifstream in(cnf_file);
  if (!in) throw fkham::ParseError("cannot open '" + cnf_file + "'");
  const auto formula = fkham::sat::parse_dimacs(in);
  const auto spec = fkham::sat::encode(formula);
  const json meta = {{"encoding", "sat"}, {"n_vars", formula.n_vars}, {"clauses", formula.clauses.size()}};
  emit(common, fkham::io::to_json(spec, meta),
       "3-local Hamiltonian: " + std::to_string(spec.n_qubits) + " qubits, " + std::to_string(spec.terms.size()) +
           " terms\n");
  return kOk;
}

int cmd_verify(const Common& common, const std::string& ham_file, const std::string& witness_file) {
  const json j = fkham::io::parse_text(fkham::io::read_file(ham_file));
  if (fkham::io::is_register_clock(j))
    throw fkham::ParseError("verify expects a qubit Hamiltonian (compile with --clock unary)");
  const auto spec = fkham::io::hamiltonian_from_json(j);
  const auto witness = fkham::io::state_from_json(fkham::io::parse_text(fkham::io::read_file(witness_file)));
  const auto est = fkham::protocol_accept_probability(spec, witness, common.shots, common.seed);
  std::ostringstream summary;
  summary.precision(17);
  summary << "acceptance: exact " << est.exact_probability;
  if (est.sampled_frequency) summary << ", sampled " << *est.sampled_frequency << " (" << est.shots << " shots)";
  summary << "\n";
  emit(common, fkham::io::to_json(est), summary.str());
  return kOk;
}

int cmd_audit(const Common& common, const std::string& circuit_file, const std::optional<std::string>& input) {
  const fkham::Circuit circuit = load_circuit(circuit_file, input);
  const auto h = fkham::compile_register_clock(circuit);
  fkham::require_dense_dim(h.dim());
  const std::size_t T = circuit.steps();

  const fkham::BestWitness best = fkham::max_acceptance(circuit);
  const auto completeness = fkham::completeness_audit(circuit, best.witness);
  const auto walk = fkham::clock_walk(T);
  const fkham::Matrix h1 = fkham::assemble_dense(h, fkham::kInOutTerms);
  const fkham::Matrix h2 = fkham::assemble_dense(h, fkham::kPropTerms);
  const auto angle = fkham::principal_angle(fkham::null_space(h1), fkham::null_space(h2), T);
  const auto lemma = fkham::geometric_lemma_check(h1, h2);

  json out = {{"T", T},
              {"m", circuit.qubits()},
              {"input_bits", circuit.input_bits()},
              {"max_acceptance", best.probability},
              {"completeness", fkham::io::to_json(completeness)},
              {"clock", {{"second_eigenvalue", walk.second_eigenvalue},
                         {"gap_bound", walk.gap_bound},
                         {"bound_holds", walk.bound_holds()}}},
              {"angle", fkham::io::to_json(angle)},
              {"lemma", fkham::io::to_json(lemma)}};
  std::ostringstream summary;
  summary.precision(17);
  summary << "completeness: <eta|H|eta> = " << completeness.register_energy << ", epsilon = " << completeness.epsilon
          << "\nclock: second eigenvalue of A = " << walk.second_eigenvalue << " >= " << walk.gap_bound << "\n";
  if (best.probability <= fkham::kRejectingAcceptance) {
    const auto s = fkham::soundness_audit(circuit);
    out["soundness"] = fkham::io::to_json(s);
    summary << "soundness: lambda_min = " << s.lambda_min << " >= " << s.bound << " : " << (s.holds ? "holds" : "FAILS")
            << "\n";
  } else {
    out["soundness"] = {{"refused", "instance accepts some witness"}, {"max_acceptance", best.probability}};
    summary << "soundness: skipped (accepting instance)\n";
  }
  emit(common, out, summary.str());
  return kOk;
}

int cmd_clock(const Common& common, std::size_t steps) {
  const auto walk = fkham::clock_walk(steps);
  std::ostringstream summary;
  summary.precision(17);
  summary << "T=" << steps << ": second eigenvalue of A = " << walk.second_eigenvalue << ", bound " << walk.gap_bound
          << (walk.bound_holds() ? " (holds)" : " (FAILS)") << "\n";
  emit(common, fkham::io::to_json(walk), summary.str());
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool method, bool shots) {
  sub->add_option("--seed", c.seed, "PRNG seed");
  sub->add_option("--out", c.out, "write the JSON report to this path");
  sub->add_option("--tolerance", c.tolerance, "classification tolerance");
  if (method) sub->add_option("--method", c.method, "dense | lanczos")->check(CLI::IsMember({"dense", "lanczos"}));
  if (shots) sub->add_option("--shots", c.shots, "Monte Carlo shots");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fkham: circuit-to-local-Hamiltonian compiler and spectral certification"};
  app.require_subcommand(1);
  Common common;

  std::string circuit_file, ham_file, cnf_file, witness_file, clock = "register";
  std::optional<std::string> input;
  std::size_t steps = 1;

  auto* compile = app.add_subcommand("compile", "compile a circuit into a clock Hamiltonian");
  compile->add_option("circuit", circuit_file)->required();
  compile->add_option("--input", input, "input bit string (overrides the circuit file)");
  compile->add_option("--clock", clock, "register | unary")->check(CLI::IsMember({"register", "unary"}));
  add_common(compile, common, false, false);

  auto* energy = app.add_subcommand("energy", "ground energy and YES/NO classification");
  energy->add_option("hamiltonian", ham_file)->required();
  add_common(energy, common, true, false);

  auto* sat2ham = app.add_subcommand("sat2ham", "encode a DIMACS CNF formula");
  sat2ham->add_option("cnf", cnf_file)->required();
  add_common(sat2ham, common, false, false);

  auto* verify = app.add_subcommand("verify", "acceptance probability of the verification protocol");
  verify->add_option("hamiltonian", ham_file)->required();
  verify->add_option("witness", witness_file)->required();
  add_common(verify, common, false, true);

  auto* audit = app.add_subcommand("audit", "completeness and soundness audit of a circuit");
  audit->add_option("circuit", circuit_file)->required();
  audit->add_option("--input", input, "input bit string (overrides the circuit file)");
  add_common(audit, common, false, false);

  auto* clk = app.add_subcommand("clock", "clock-walk report for T steps");
  clk->add_option("T", steps)->required()->check(CLI::PositiveNumber);
  add_common(clk, common, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*compile) return cmd_compile(common, circuit_file, input, clock);
    if (*energy) return cmd_energy(common, ham_file);
    if (*sat2ham) return cmd_sat2ham(common, cnf_file);
    if (*verify) return cmd_verify(common, ham_file, witness_file);
    if (*audit) return cmd_audit(common, circuit_file, input);
    if (*clk) return cmd_clock(common, steps);
  } catch (const fkham::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const fkham::CompileRefusal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRefused;
  } catch (const fkham::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const fkham::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kParse;
  } catch (const fkham::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
