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


#include "fkham/satenc.hpp"
#include "fkham/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

namespace sat = fkham::sat;
using fkham::Matrix;

double dense_ground(const fkham::HamiltonianSpec& s) {
  if (s.terms.empty()) return 0.0;
  return fkham::dense_eigh(fkham::assemble_dense(s)).min_eigenvalue();
}

TEST(ClauseToTerm, ThreeLiteralClauseIsRankOneProjector) {
  const fkham::LocalTerm t = sat::clause_to_term({1, 2, -3}, 3);
  Matrix expected = Matrix::Zero(8, 8);
  expected(1, 1) = 1.0;
  EXPECT_EQ(t.qubits, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(fkham::max_abs(t.matrix - expected), 0.0);
}

TEST(ClauseToTerm, SingleLiteral) {
  const fkham::LocalTerm t = sat::clause_to_term({1}, 1);
  EXPECT_EQ(t.qubits, (std::vector<std::size_t>{0}));
  EXPECT_EQ(fkham::max_abs(t.matrix - fkham::outer(2, 0, 0)), 0.0);
  const fkham::LocalTerm n = sat::clause_to_term({-4}, 4);
  EXPECT_EQ(n.qubits, (std::vector<std::size_t>{3}));
  EXPECT_EQ(fkham::max_abs(n.matrix - fkham::outer(2, 1, 1)), 0.0);
}

TEST(ClauseToTerm, ProjectsExactlyOnFalsifyingAssignments) {
  const sat::Clause clauses[] = {{1, 2, -3}, {-1, 3, 2}, {-2, -3, -1}, {3, 1, 2}};
  for (const auto& clause : clauses) {
    const fkham::Matrix full = fkham::embed_dense(sat::clause_to_term(clause, 3), 3);
    for (std::size_t z = 0; z < 8; ++z) {
      bool sat_z = false;
      for (int lit : clause) {
        const bool v = (z >> (2 - (std::abs(lit) - 1))) & 1U;
        if ((lit > 0) == v) sat_z = true;
      }
      const fkham::Vector e = fkham::StateVector::basis(3, z).amplitudes();
      const fkham::Vector out = full * e;
      if (sat_z)
        EXPECT_EQ(out.norm(), 0.0);
      else
        EXPECT_EQ((out - e).norm(), 0.0);
    }
  }
}

TEST(ClauseToTerm, Errors) {
  EXPECT_THROW(sat::clause_to_term({1, -1}, 1), fkham::ValidationError);
  EXPECT_THROW(sat::clause_to_term({}, 1), fkham::ValidationError);
  EXPECT_THROW(sat::clause_to_term({1, 2, 3, 4}, 4), fkham::ValidationError);
  EXPECT_THROW(sat::clause_to_term({5}, 4), fkham::ValidationError);
  const fkham::LocalTerm merged = sat::clause_to_term({2, 2, -1}, 2);
  EXPECT_EQ(merged.qubits, (std::vector<std::size_t>{1, 0}));
}

TEST(Encode, EmptyFormula) {
  const auto s = sat::encode({3, {}});
  EXPECT_TRUE(s.terms.empty());
  EXPECT_EQ(dense_ground(s), 0.0);
  EXPECT_EQ(*s.a, 0.0);
  EXPECT_EQ(*s.b, 1.0);
}

TEST(Encode, Contradiction) {
  const auto s = sat::encode({1, {{1}, {-1}}});
  EXPECT_EQ(s.terms.size(), 2u);
  EXPECT_NEAR(dense_ground(s), 1.0, 1e-12);
  EXPECT_EQ(oracle::brute_force_min_unsat({1, {{1}, {-1}}}), 1u);
}

TEST(Encode, RandomFormulaMatchesExhaustiveSearch) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = oracle::random_cnf(4, 8, rng);
    EXPECT_NEAR(dense_ground(sat::encode(f)), static_cast<double>(oracle::brute_force_min_unsat(f)), 1e-10);
  }
}

TEST(Encode, ExpectationCountsFalsifiedClauses) {
  std::mt19937_64 rng(2);
  const auto f = oracle::random_cnf(5, 12, rng);
  const auto s = sat::encode(f);
  for (std::size_t z = 0; z < 32; ++z) {
    std::size_t unsat = 0;
    for (const auto& c : f.clauses) {
      bool ok = false;
      for (int lit : c)
        if ((lit > 0) == static_cast<bool>((z >> (4 - (std::abs(lit) - 1))) & 1U)) ok = true;
      unsat += ok ? 0 : 1;
    }
    EXPECT_NEAR(fkham::expectation(s, fkham::StateVector::basis(5, z)), static_cast<double>(unsat), 1e-12);
  }
}

TEST(Encode, DuplicateClausesAddEnergy) {
  const auto s = sat::encode({2, {{1, 2}, {1, 2}}});
  EXPECT_NEAR(fkham::expectation(s, fkham::StateVector::basis(2, 0)), 2.0, 1e-15);
}

TEST(Properties, HamiltonianIsDiagonal) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix h = fkham::assemble_dense(sat::encode(oracle::random_cnf(10, 20, rng)));
    Matrix off = h;
    off.diagonal().setZero();
    EXPECT_LE(fkham::max_abs(off), 1e-14);
  }
}

TEST(Properties, GroundEnergyIsTheMinimumUnsatisfiedCount) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 6 + static_cast<std::size_t>(rep) % 11;  // up to 16 variables
    const auto f = oracle::random_cnf(n, 3 * n, rng);
    const auto s = sat::encode(f);
    const double e = fkham::lanczos_min_eig(fkham::as_operator(s), 7).min_eigenvalue();
    const double exact = static_cast<double>(oracle::brute_force_min_unsat(f));
    // H is diagonal, so H applied to the all-ones vector is its diagonal.
    const fkham::Vector diag =
        fkham::apply_hamiltonian(s, fkham::Vector(fkham::Vector::Ones(static_cast<Eigen::Index>(s.dim()))));
    const double dmin = diag.real().minCoeff();
    EXPECT_NEAR(dmin, exact, 1e-10);
    EXPECT_NEAR(e, exact, 1e-8);
    EXPECT_NEAR(dmin, std::round(dmin), 1e-10);
  }
}

TEST(Properties, SatisfiableIffZeroGroundEnergy) {
  std::mt19937_64 rng(5);
  int sat_count = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const auto f = oracle::random_cnf(6, 4 + static_cast<std::size_t>(rep) % 24, rng);
    const bool satisfiable = oracle::brute_force_min_unsat(f) == 0;
    sat_count += satisfiable;
    EXPECT_EQ(dense_ground(sat::encode(f)) <= 1e-10, satisfiable);
  }
  EXPECT_GT(sat_count, 0);
  EXPECT_LT(sat_count, 40);
}

TEST(Dimacs, ParsesStandardInput) {
  const auto f = sat::parse_dimacs("c comment\np cnf 3 2\n1 2 -3 0\n-1\n 2 0\n");
  EXPECT_EQ(f.n_vars, 3u);
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[0], (sat::Clause{1, 2, -3}));
  EXPECT_EQ(f.clauses[1], (sat::Clause{-1, 2}));
  const auto g = sat::parse_dimacs("p cnf 2 1\n1 -2 0\n%\n0\n");
  EXPECT_EQ(g.clauses.size(), 1u);
  EXPECT_TRUE(sat::parse_dimacs("p cnf 4 0\n").clauses.empty());
}

TEST(Dimacs, RejectsMalformedInput) {
  EXPECT_THROW(sat::parse_dimacs("1 2 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p cnf 2 1\n1 x 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p cnf 2 1\n1 3 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p cnf 2 2\n1 2 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p cnf 2 1\n1 2\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p cnf 2 1\n1 -1 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p dnf 2 1\n1 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs("p cnf 4 1\n1 2 3 4 0\n"), fkham::ParseError);
  EXPECT_THROW(sat::parse_dimacs(""), fkham::ParseError);
}

}  // namespace
