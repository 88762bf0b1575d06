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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace fkham {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest Hilbert-space dimension that is ever materialized as a dense matrix.
inline constexpr std::size_t kDenseDimCap = 4096;

namespace tol {
inline constexpr double kUnitary = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kStateNorm = 1e-10;
inline constexpr double kNullSpace = 1e-9;
}  // namespace tol

// Error hierarchy. The CLI maps each class onto a fixed exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or unknown identifier.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Sizes or qubit indices that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a mathematical invariant (non-unitary gate, non-PSD term, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A dense method was requested above kDenseDimCap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The compiler refused to produce part of an instance (e.g. thresholds at T < 2).
class CompileRefusal : public Error {
 public:
  using Error::Error;
};

/// A matrix-free linear map `out = A * in` on a space of dimension `dim`.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(const Vector& in, Vector& out)> apply;

  Vector operator()(const Vector& in) const {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
    apply(in, out);
    return out;
  }
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_deviation(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const Matrix& m, double tolerance = tol::kHermitian) {
  return m.rows() == m.cols() && hermiticity_deviation(m) <= tolerance;
}

inline double unitarity_deviation(const Matrix& m) {
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

inline bool is_unitary(const Matrix& m, double tolerance = tol::kUnitary) {
  return m.rows() == m.cols() && unitarity_deviation(m) <= tolerance;
}

/// Kronecker product, first factor most significant.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// |bra><ket| style elementary matrix of size dim x dim.
inline Matrix outer(std::size_t dim, std::size_t row, std::size_t col) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return m;
}

inline std::size_t pow2(std::size_t k) {
  if (k >= 63) throw CapacityError("2^" + std::to_string(k) + " does not fit in an index");
  return std::size_t{1} << k;
}

/// Dense matrix of a linear operator, built column by column.
inline Matrix to_dense(const LinearOperator& op) {
  if (op.dim > kDenseDimCap)
    throw CapacityError("dimension " + std::to_string(op.dim) + " exceeds dense cap " +
                        std::to_string(kDenseDimCap));
  const auto d = static_cast<Eigen::Index>(op.dim);
  Matrix m(d, d);
  Vector e = Vector::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    e.setZero();
    e(j) = 1.0;
    m.col(j) = op(e);
  }
  return m;
}

inline void require_dense_dim(std::size_t dim) {
  if (dim > kDenseDimCap)
    throw CapacityError("dimension " + std::to_string(dim) + " exceeds dense cap " +
                        std::to_string(kDenseDimCap));
}

}  // namespace fkham
