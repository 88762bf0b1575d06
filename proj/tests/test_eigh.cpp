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


#include "fkham/eigh.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using fkham::Matrix;

TEST(HermitianEigh, ReconstructsAndOrthonormal) {
  std::mt19937_64 rng(1);
  for (Eigen::Index d : {1, 2, 3, 5, 8, 17, 64, 130}) {
    const Matrix m = oracle::random_hermitian(d, rng);
    const auto ed = fkham::hermitian_eigh(m);
    const Matrix rec = ed.vectors * ed.values.cast<fkham::Complex>().asDiagonal() * ed.vectors.adjoint();
    EXPECT_LE(fkham::max_abs(rec - m), 1e-11) << d;
    EXPECT_LE(fkham::max_abs(ed.vectors.adjoint() * ed.vectors - Matrix::Identity(d, d)), 1e-11) << d;
    for (Eigen::Index i = 1; i < d; ++i) EXPECT_LE(ed.values[i - 1], ed.values[i]);
  }
}

TEST(HermitianEigh, MatchesEigenSelfAdjointSolver) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix m = oracle::random_hermitian(40, rng);
    const Eigen::SelfAdjointEigenSolver<Matrix> ref(m, Eigen::EigenvaluesOnly);
    EXPECT_LE((fkham::hermitian_eigh(m, false).values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(HermitianEigh, DegenerateAndDiagonalInputs) {
  const auto id = fkham::hermitian_eigh(Matrix::Identity(6, 6));
  EXPECT_LE((id.values - fkham::RealVector::Ones(6)).cwiseAbs().maxCoeff(), 0.0);
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 2.0, -1.0, 2.0, 0.0;
  const auto ed = fkham::hermitian_eigh(d);
  EXPECT_EQ(ed.values[0], -1.0);
  EXPECT_EQ(ed.values[3], 2.0);
}

TEST(TridiagonalEigh, ClosedFormPath) {
  // Path-graph Laplacian / 2 with free ends: eigenvalues 1 - cos(pi k / n).
  const Eigen::Index n = 12;
  fkham::RealVector diag = fkham::RealVector::Ones(n), off = -0.5 * fkham::RealVector::Ones(n - 1);
  diag[0] = diag[n - 1] = 0.5;
  const auto [vals, vecs] = fkham::tridiagonal_eigh(diag, off, true);
  for (Eigen::Index k = 0; k < n; ++k) EXPECT_NEAR(vals[k], 1.0 - std::cos(M_PI * k / n), 1e-13);
  EXPECT_LE((vecs.transpose() * vecs - fkham::RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
}

}  // namespace
