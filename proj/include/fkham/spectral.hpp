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

// Eigenvalue machinery and the numerical soundness analysis of the clock
// construction: clock walk, null spaces, principal angles, the two-projector
// lower bound and a full audit of rejecting instances.

#pragma once

#include "fkham/compiler.hpp"
#include "fkham/eigh.hpp"
#include "fkham/linalg.hpp"
#include "fkham/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fkham {

enum class SpectralMethod { Dense, Lanczos };

inline std::string_view method_name(SpectralMethod m) { return m == SpectralMethod::Dense ? "dense" : "lanczos"; }

inline SpectralMethod parse_method(std::string_view s) {
  if (s == "dense") return SpectralMethod::Dense;
  if (s == "lanczos") return SpectralMethod::Lanczos;
  throw ParseError("unknown method '" + std::string(s) + "'");
}

struct SpectralReport {
  SpectralMethod method = SpectralMethod::Dense;
  RealVector eigenvalues;  // full ascending spectrum (dense) or the single estimate (lanczos)
  Matrix eigenvectors;     // dense only
  Vector ground_vector;
  double residual = 0.0;   // ||H v - lambda v|| for the ground pair
  std::size_t iterations = 0;
  bool converged = false;

  double min_eigenvalue() const { return eigenvalues[0]; }
};

/// Full spectrum of a Hermitian matrix (Hermitian within 1e-8, dim <= cap).
inline SpectralReport dense_eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("dense_eigh: matrix is not square");
  require_dense_dim(static_cast<std::size_t>(m.rows()));
  if (m.rows() == 0) throw DimensionError("dense_eigh: empty matrix");
  const double dev = hermiticity_deviation(m);
  if (dev > 1e-8) throw ValidationError("dense_eigh: matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  EigenDecomposition ed = hermitian_eigh(m);
  SpectralReport r;
  r.method = SpectralMethod::Dense;
  r.ground_vector = ed.vectors.col(0);
  r.residual = (m * r.ground_vector - ed.values[0] * r.ground_vector).norm();
  r.eigenvalues = std::move(ed.values);
  r.eigenvectors = std::move(ed.vectors);
  r.iterations = 1;
  r.converged = r.residual <= 1e-8;
  return r;
}

struct LanczosOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-8;  // on the true residual of the reported pair
};

/// Smallest eigenvalue of a Hermitian operator by Lanczos with full
/// reorthogonalization. The start vector depends only on `seed`.
inline SpectralReport lanczos_min_eig(const LinearOperator& op, std::uint64_t seed, LanczosOptions opts = {}) {
  const std::size_t n = op.dim;
  if (n == 0) throw DimensionError("lanczos: empty operator");
  const std::size_t kmax = std::min(opts.max_iterations, n);
  const auto dn = static_cast<Eigen::Index>(n);

  SplitMix64 rng(seed);
  Vector v(dn);
  for (Eigen::Index i = 0; i < dn; ++i) v(i) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  v.normalize();

  Matrix basis(dn, static_cast<Eigen::Index>(kmax));
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.col(0) = v;

  double theta = 0.0;
  RealVector ritz;
  std::size_t k = 0;
  // Internal target well below the reported tolerance so that the eigenvalue
  // error (~ residual^2 / gap) is negligible.
  const double internal_tol = std::min(opts.tolerance, 1e-11);
  for (std::size_t j = 0; j < kmax; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    Vector w = op(basis.col(jj));
    const double a = basis.col(jj).dot(w).real();
    alpha.push_back(a);
    w -= a * basis.col(jj);
    if (j > 0) w -= beta[j - 1] * basis.col(jj - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const auto span = basis.leftCols(jj + 1);
      w -= span * (span.adjoint() * w);
    }
    const double b = w.norm();
    beta.push_back(b);
    k = j + 1;

    RealVector d = Eigen::Map<const RealVector>(alpha.data(), static_cast<Eigen::Index>(k));
    RealVector e = Eigen::Map<const RealVector>(beta.data(), static_cast<Eigen::Index>(k));
    auto [vals, vecs] = tridiagonal_eigh(d, e.head(static_cast<Eigen::Index>(k) - 1), true);
    theta = vals[0];
    ritz = vecs.col(0);
    const double scale = std::max(1.0, std::abs(theta));
    const double estimate = b * std::abs(ritz[static_cast<Eigen::Index>(k) - 1]);
    if (estimate <= internal_tol * scale || b <= 1e-13 * scale || k == kmax) break;
    basis.col(jj + 1) = w / b;
  }

  Vector x = basis.leftCols(static_cast<Eigen::Index>(k)) * ritz.cast<Complex>();
  x.normalize();
  SpectralReport r;
  r.method = SpectralMethod::Lanczos;
  r.eigenvalues = RealVector::Constant(1, theta);
  r.ground_vector = x;
  r.residual = (op(x) - theta * x).norm();
  r.iterations = k;
  r.converged = r.residual <= opts.tolerance;
  return r;
}

inline SpectralReport ground_energy(const LinearOperator& op, SpectralMethod method, std::uint64_t seed = 0) {
  if (method == SpectralMethod::Dense) return dense_eigh(to_dense(op));
  return lanczos_min_eig(op, seed);
}

/// Smallest eigenvalue strictly above `tolerance` ("second eigenvalue" of a PSD
/// operator with a null space); nullopt if there is none.
inline std::optional<double> smallest_above(const RealVector& ascending, double tolerance = tol::kNullSpace) {
  for (Eigen::Index i = 0; i < ascending.size(); ++i)
    if (ascending[i] >= tolerance) return ascending[i];
  return std::nullopt;
}

//
// Clock walk
//

struct ClockWalk {
  std::size_t steps = 0;
  RealMatrix A;  // tridiagonal clock matrix, I (x) A = R^H H_prop R
  RealMatrix B;  // I - A, lazy-at-the-ends random walk on 0..T
  double conductance = 0.0;
  double gap_bound = 0.0;  // conductance^2 / 2
  RealVector eigenvalues;   // of A, ascending
  double second_eigenvalue = 0.0;

  bool bound_holds(double tolerance = 1e-10) const { return second_eigenvalue >= gap_bound - tolerance; }
};

inline RealMatrix clock_matrix(std::size_t steps) {
  const auto D = static_cast<Eigen::Index>(steps + 1);
  RealMatrix a = RealMatrix::Zero(D, D);
  for (Eigen::Index i = 0; i < D; ++i) {
    a(i, i) = (i == 0 || i == D - 1) ? 0.5 : 1.0;
    if (i + 1 < D) a(i, i + 1) = a(i + 1, i) = -0.5;
  }
  return a;
}

inline ClockWalk clock_walk(std::size_t steps) {
  if (steps < 1) throw DimensionError("clock walk needs T >= 1");
  ClockWalk w;
  w.steps = steps;
  w.A = clock_matrix(steps);
  w.B = RealMatrix::Identity(w.A.rows(), w.A.cols()) - w.A;
  w.conductance = 1.0 / static_cast<double>(steps + 1);
  w.gap_bound = w.conductance * w.conductance / 2.0;
  RealVector diag = w.A.diagonal();
  RealVector off = w.A.diagonal(1);
  w.eigenvalues = tridiagonal_eigh(diag, off, false).first;
  w.second_eigenvalue = w.eigenvalues[1];
  return w;
}

//
// Null spaces and principal angles
//

/// Orthonormal basis (columns) of the eigenvectors with eigenvalue < tolerance.
inline Matrix null_space(const Matrix& m, double tolerance = tol::kNullSpace) {
  const SpectralReport r = dense_eigh(m);
  Eigen::Index k = 0;
  while (k < r.eigenvalues.size() && r.eigenvalues[k] < tolerance) ++k;
  return r.eigenvectors.leftCols(k);
}

struct AngleReport {
  std::size_t dim_n1 = 0;
  std::size_t dim_n2 = 0;
  bool defined = false;  // both subspaces non-trivial
  double cos_theta = 0.0;
  double theta = 0.0;
  double sin2_half = 0.0;  // sin^2(theta/2)
  double sin2_theta = 0.0;  // sin^2(theta) = 1 - cos^2(theta)
  std::optional<double> bound;  // 1/(2(T+1)) when a step count is supplied
  std::optional<bool> bound_holds;       // sin^2(theta/2) >= bound
  std::optional<bool> full_angle_holds;  // sin^2(theta) >= bound
};

inline void require_orthonormal(const Matrix& b, const char* what) {
  if (b.cols() == 0) return;
  const double dev = max_abs(b.adjoint() * b - Matrix::Identity(b.cols(), b.cols()));
  if (dev > 1e-8) throw ValidationError(std::string(what) + " is not orthonormal (deviation " + std::to_string(dev) + ")");
}

/// Minimal angle between span(b1) and span(b2): cos(theta) is the largest
/// singular value of b1^H b2.
inline AngleReport principal_angle(const Matrix& b1, const Matrix& b2, std::optional<std::size_t> steps = std::nullopt,
                                   double tolerance = 1e-9) {
  if (b1.rows() != b2.rows()) throw DimensionError("principal_angle: bases live in different spaces");
  require_orthonormal(b1, "first basis");
  require_orthonormal(b2, "second basis");
  AngleReport r;
  r.dim_n1 = static_cast<std::size_t>(b1.cols());
  r.dim_n2 = static_cast<std::size_t>(b2.cols());
  if (b1.cols() == 0 || b2.cols() == 0) return r;
  r.defined = true;
  const Matrix c = b1.adjoint() * b2;
  const Matrix gram = c.cols() <= c.rows() ? Matrix(c.adjoint() * c) : Matrix(c * c.adjoint());
  const EigenDecomposition ed = hermitian_eigh(gram, false);
  const double s2 = std::max(0.0, ed.values[ed.values.size() - 1]);
  r.cos_theta = std::min(1.0, std::sqrt(s2));
  r.theta = std::acos(r.cos_theta);
  r.sin2_half = (1.0 - r.cos_theta) / 2.0;
  r.sin2_theta = std::max(0.0, 1.0 - s2);
  if (steps) {
    r.bound = 1.0 / (2.0 * static_cast<double>(*steps + 1));
    r.bound_holds = r.sin2_half >= *r.bound - tolerance;
    r.full_angle_holds = r.sin2_theta >= *r.bound - tolerance;
  }
  return r;
}

struct LemmaReport {
  bool vacuous = false;  // a null space is empty
  double lambda = 0.0;   // min over both operators of the smallest eigenvalue above tolerance
  AngleReport angle;
  double bound = 0.0;    // lambda * sin^2(theta/2)
  double actual_min = 0.0;
  std::optional<bool> holds;
};

/// Lower bound lambda_min(H1 + H2) >= lambda * sin^2(theta/2) for PSD H1, H2
/// with null spaces N1, N2 at minimal angle theta.
inline LemmaReport geometric_lemma_check(const Matrix& h1, const Matrix& h2, double null_tol = tol::kNullSpace) {
  if (h1.rows() != h2.rows() || h1.cols() != h2.cols()) throw DimensionError("lemma: operator sizes differ");
  const SpectralReport r1 = dense_eigh(h1);
  const SpectralReport r2 = dense_eigh(h2);
  if (r1.eigenvalues[0] < -null_tol || r2.eigenvalues[0] < -null_tol)
    throw ValidationError("lemma: operators must be positive semi-definite");
  LemmaReport rep;
  rep.actual_min = dense_eigh(h1 + h2).min_eigenvalue();

  auto null_cols = [&](const SpectralReport& r) {
    Eigen::Index k = 0;
    while (k < r.eigenvalues.size() && r.eigenvalues[k] < null_tol) ++k;
    return Matrix(r.eigenvectors.leftCols(k));
  };
  const Matrix n1 = null_cols(r1);
  const Matrix n2 = null_cols(r2);
  rep.angle = principal_angle(n1, n2);
  if (!rep.angle.defined) {
    rep.vacuous = true;
    return rep;
  }
  const auto s1 = smallest_above(r1.eigenvalues, null_tol);
  const auto s2 = smallest_above(r2.eigenvalues, null_tol);
  if (s1 && s2)
    rep.lambda = std::min(*s1, *s2);
  else if (s1 || s2)
    rep.lambda = s1 ? *s1 : *s2;
  rep.bound = rep.lambda * rep.angle.sin2_half;
  rep.holds = rep.actual_min >= rep.bound - 1e-10;
  return rep;
}

//
// Audits of compiled instances
//

class AuditRefused : public Error {
 public:
  using Error::Error;
};

/// Acceptance probability at or below which an instance counts as rejecting.
inline constexpr double kRejectingAcceptance = 1e-6;

struct SoundnessAudit {
  std::size_t steps = 0;
  double max_acceptance = 0.0;
  double lambda_min = 0.0;
  double bound = 0.0;  // 1/(4(T+1)^3)
  double h1_second = 0.0;
  double h2_second = 0.0;
  double h2_second_bound = 0.0;  // 1/(2(T+1)^2)
  AngleReport angle;
  LemmaReport lemma;
  bool h1_ok = false;
  bool h2_ok = false;
  bool holds = false;  // lambda_min >= bound - 1e-10; the ingredient flags are reported separately
};

/// Dense soundness analysis of the register-clock instance of a circuit that
/// rejects every witness. Throws AuditRefused otherwise.
inline SoundnessAudit soundness_audit(const Circuit& circuit) {
  const RegisterClockHamiltonian h = compile_register_clock(circuit);
  require_dense_dim(h.dim());
  SoundnessAudit a;
  a.steps = circuit.steps();
  a.max_acceptance = max_acceptance(circuit).probability;
  if (a.max_acceptance > kRejectingAcceptance)
    throw AuditRefused("instance is not verifiably rejecting (max acceptance " + std::to_string(a.max_acceptance) + ")");

  const double D = static_cast<double>(a.steps + 1);
  const Matrix h1 = assemble_dense(h, kInOutTerms);
  const Matrix h2 = assemble_dense(h, kPropTerms);
  a.lambda_min = dense_eigh(h1 + h2).min_eigenvalue();
  a.bound = 1.0 / (4.0 * D * D * D);
  a.h2_second_bound = 1.0 / (2.0 * D * D);

  const SpectralReport r1 = dense_eigh(h1);
  const SpectralReport r2 = dense_eigh(h2);
  a.h1_second = smallest_above(r1.eigenvalues).value_or(std::numeric_limits<double>::infinity());
  a.h2_second = smallest_above(r2.eigenvalues).value_or(std::numeric_limits<double>::infinity());
  a.h1_ok = a.h1_second >= 1.0 - 1e-10;
  a.h2_ok = a.h2_second >= a.h2_second_bound - 1e-10;
  a.angle = principal_angle(null_space(h1), null_space(h2), a.steps);
  a.lemma = geometric_lemma_check(h1, h2);
  a.holds = a.lambda_min >= a.bound - 1e-10;
  return a;
}

struct CompletenessAudit {
  std::size_t steps = 0;
  double acceptance = 0.0;
  double epsilon = 0.0;  // 1 - acceptance, measured
  double register_energy = 0.0;  // <eta|H|eta>
  double unary_energy = 0.0;     // <eta'|H'|eta'>
  double register_prop_residual = 0.0;  // ||H_prop eta||
  double unary_prop_residual = 0.0;
  double in_residual = 0.0;             // ||H_in eta||
  double out_energy = 0.0;              // <eta|H_out|eta> = epsilon/(T+1)
  std::optional<double> register_lambda_min;  // dense, when within the cap
  bool holds = false;
};

/// History-state analysis for a given witness.
inline CompletenessAudit completeness_audit(const Circuit& circuit, const StateVector& witness) {
  CompletenessAudit c;
  c.steps = circuit.steps();
  c.acceptance = acceptance_probability(circuit, witness);
  c.epsilon = 1.0 - c.acceptance;

  const RegisterClockHamiltonian h = compile_register_clock(circuit);
  const HistoryState eta = history_state(circuit, witness, ClockEncoding::Register);
  c.register_energy = real_inner(eta.amplitudes, apply_hamiltonian(h, eta.amplitudes));
  c.register_prop_residual = apply_hamiltonian(h, eta.amplitudes, kPropTerms).norm();
  c.in_residual = apply_hamiltonian(h, eta.amplitudes, TermSelection{true, false, false}).norm();
  c.out_energy = real_inner(eta.amplitudes, apply_hamiltonian(h, eta.amplitudes, TermSelection{false, true, false}));

  const UnaryHamiltonian u = compile_unary(circuit);
  const HistoryState eta_u = history_state(circuit, witness, ClockEncoding::Unary);
  c.unary_energy = expectation(u.spec, eta_u.amplitudes);
  c.unary_prop_residual = apply_hamiltonian(u.select(TermRole::Prop), eta_u.amplitudes).norm();

  if (h.dim() <= kDenseDimCap) c.register_lambda_min = dense_eigh(assemble_dense(h)).min_eigenvalue();
  c.holds = c.register_energy <= c.epsilon + 1e-10 && c.unary_energy <= c.epsilon + 1e-10 &&
            c.register_prop_residual <= 1e-10 && c.unary_prop_residual <= 1e-10 &&
            (!c.register_lambda_min || *c.register_lambda_min <= c.epsilon + 1e-10);
  return c;
}

}  // namespace fkham
