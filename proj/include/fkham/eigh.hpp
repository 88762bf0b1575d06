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

// Dense Hermitian eigensolver: Householder reduction to a real symmetric
// tridiagonal matrix followed by implicit QL iterations. Deterministic, no
// LAPACK dependency.

#pragma once

#include "fkham/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace fkham {

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // column j belongs to values[j]; empty if not requested
};

namespace detail {

/// Implicit QL on a real symmetric tridiagonal matrix. `diag` is overwritten by
/// the (unsorted) eigenvalues. `off[i]` couples i and i+1; off is destroyed.
/// Rotations are accumulated into the columns of `*z` when z is non-null.
template <typename ZMatrix>
void tridiagonal_ql(RealVector& diag, RealVector& off, ZMatrix* z) {
  const Eigen::Index n = diag.size();
  if (n == 0) return;
  off.conservativeResize(n);
  off[n - 1] = 0.0;
  constexpr int kMaxSweeps = 90;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int iter = 0;
    Eigen::Index m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kMaxSweeps) throw Error("tridiagonal QL failed to converge");

      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (Eigen::Index i = m - 1; i >= l; --i) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          for (Eigen::Index k = 0; k < z->rows(); ++k) {
            const auto zk1 = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * zk1;
            (*z)(k, i) = c * (*z)(k, i) - s * zk1;
          }
        }
      }
      if (underflow) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    } while (true);
  }
}

template <typename ZMatrix>
void sort_ascending(RealVector& values, ZMatrix* vectors) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
  RealVector sorted(n);
  for (Eigen::Index i = 0; i < n; ++i) sorted[i] = values[order[static_cast<std::size_t>(i)]];
  values = std::move(sorted);
  if (vectors != nullptr) {
    ZMatrix permuted(vectors->rows(), vectors->cols());
    for (Eigen::Index i = 0; i < n; ++i) permuted.col(i) = vectors->col(order[static_cast<std::size_t>(i)]);
    *vectors = std::move(permuted);
  }
}

}  // namespace detail

/// Eigen-decomposition of a real symmetric tridiagonal matrix given by its
/// diagonal and off-diagonal (size n-1). Eigenvalues ascending.
inline std::pair<RealVector, RealMatrix> tridiagonal_eigh(RealVector diag, RealVector off,
                                                          bool want_vectors = true) {
  const Eigen::Index n = diag.size();
  RealMatrix z;
  if (want_vectors) z = RealMatrix::Identity(n, n);
  detail::tridiagonal_ql(diag, off, want_vectors ? &z : static_cast<RealMatrix*>(nullptr));
  detail::sort_ascending(diag, want_vectors ? &z : static_cast<RealMatrix*>(nullptr));
  return {std::move(diag), std::move(z)};
}

/// Full eigen-decomposition of a Hermitian matrix. Only the lower triangle's
/// Hermitian part is meaningful; callers validate Hermiticity beforehand.
inline EigenDecomposition hermitian_eigh(const Matrix& input, bool want_vectors = true) {
  if (input.rows() != input.cols()) throw DimensionError("eigh: matrix is not square");
  const Eigen::Index n = input.rows();
  EigenDecomposition out;
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }

  Matrix a = 0.5 * (input + input.adjoint());
  Matrix q;
  if (want_vectors) q = Matrix::Identity(n, n);

  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    Vector x = a.block(k + 1, k, len, 1);
    const double xnorm = x.norm();
    if (xnorm == 0.0) continue;
    const double x0abs = std::abs(x(0));
    const Complex phase = x0abs == 0.0 ? Complex(1.0) : x(0) / x0abs;
    const Complex alpha = -phase * xnorm;
    Vector v = x;
    v(0) -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;

    auto a22 = a.bottomRightCorner(len, len);
    const Vector p = a22 * v;
    const Complex kappa = v.dot(p);  // v^H p
    const Vector w = p - kappa * v;
    a22.noalias() -= 2.0 * v * w.adjoint();
    a22.noalias() -= 2.0 * w * v.adjoint();

    a.block(k + 1, k, len, 1).setZero();
    a.block(k, k + 1, 1, len).setZero();
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);

    if (want_vectors) {
      auto qr = q.rightCols(len);
      const Vector qv = qr * v;
      qr.noalias() -= 2.0 * qv * v.adjoint();
    }
  }

  // Remove the phases of the Hermitian tridiagonal so the QL step is real.
  RealVector diag(n);
  RealVector off(n);
  Complex d_phase = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    diag[i] = a(i, i).real();
    if (want_vectors) q.col(i) *= d_phase;
    if (i + 1 < n) {
      const Complex e = a(i + 1, i);
      const double mag = std::abs(e);
      off[i] = mag;
      if (mag != 0.0) d_phase *= e / mag;
    }
  }

  detail::tridiagonal_ql(diag, off, want_vectors ? &q : static_cast<Matrix*>(nullptr));
  detail::sort_ascending(diag, want_vectors ? &q : static_cast<Matrix*>(nullptr));
  out.values = std::move(diag);
  if (want_vectors) out.vectors = std::move(q);
  return out;
}

}  // namespace fkham
