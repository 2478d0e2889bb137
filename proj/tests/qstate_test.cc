// Copyright 2026 The entvqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "entvqa/circuits.h"
#include "entvqa/qstate.h"
#include "test_oracles.h"

namespace entvqa {
namespace {

using testing::kron;
using testing::random_complex_matrix;

StateVector plus_state() {
  CVector v(2);
  v << 1.0, 1.0;
  return StateVector::normalized(1, v);
}

TEST(StateVectorTest, RejectsBadInput) {
  EXPECT_THROW(StateVector(1, CVector::Zero(3)), std::invalid_argument);
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector(1, v), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(1, CVector::Zero(2)),
               std::invalid_argument);
  EXPECT_THROW(StateVector::basis(2, 4), std::invalid_argument);
}

TEST(DensityMatrixTest, RejectsBadInput) {
  CMatrix m = CMatrix::Identity(2, 2) / 2.0;
  m(0, 1) = 0.3;  // not Hermitian
  EXPECT_THROW(DensityMatrix(1, m), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(1, CMatrix::Identity(2, 2)),
               std::invalid_argument);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(1, neg), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

TEST(TensorProductTest, Examples) {
  const StateVector a = tensor_product(StateVector::zero(1), StateVector::zero(1));
  EXPECT_NEAR(std::abs(a[0] - 1.0), 0.0, 1e-12);
  const StateVector b =
      tensor_product(StateVector::basis(1, 1), StateVector::zero(1));
  EXPECT_NEAR(std::abs(b[2] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(b[0]) + std::abs(b[1]) + std::abs(b[3]), 0.0, 1e-12);
  const StateVector c = tensor_product(plus_state(), StateVector::basis(1, 1));
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(c[1] - h), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c[3] - h), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c[0]) + std::abs(c[2]), 0.0, 1e-12);
  EXPECT_EQ(c.n_qubits(), 2);
}

TEST(PartialTraceTest, BellMarginalIsMaximallyMixed) {
  const DensityMatrix rho = DensityMatrix::from_pure(max_entangled_state(1));
  const DensityMatrix a = partial_trace(rho, {1, 1}, Party::kA);
  EXPECT_TRUE(a.matrix().isApprox(CMatrix::Identity(2, 2) / 2.0, 1e-12));
}

TEST(PartialTraceTest, ProductState) {
  const DensityMatrix rho = DensityMatrix::from_pure(StateVector::zero(2));
  const DensityMatrix a = partial_trace(rho, {1, 1}, Party::kA);
  EXPECT_NEAR(std::abs(a.matrix()(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(a.matrix().cwiseAbs().sum(), 1.0, 1e-12);
}

TEST(PartialTraceTest, TwoQubitStateMarginalSpectrum) {
  const DensityMatrix rho = DensityMatrix::from_pure(prepare_paper_2q_state());
  const DensityMatrix a = partial_trace(rho, {1, 1}, Party::kA);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  EXPECT_NEAR(es.eigenvalues()[1], 0.958 * 0.958, 1e-3);
  EXPECT_NEAR(es.eigenvalues()[0], 0.286 * 0.286, 1e-3);
  EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-12);
}

TEST(PartialTraceTest, VectorAndMatrixFormsAgree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StateVector psi = haar_random_state(5, seed);
    const Bipartition part{2, 3};
    for (Party keep : {Party::kA, Party::kB}) {
      const CMatrix a = partial_trace(psi, part, keep).matrix();
      const CMatrix b =
          partial_trace(DensityMatrix::from_pure(psi), part, keep).matrix();
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(PartialTraceTest, DimensionMismatchThrows) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(partial_trace(rho, {2, 1}, Party::kA), std::invalid_argument);
}

TEST(PartialTraceTest, ProductOfRandomStatesFactorizes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix ra = random_mixed_state(2, 3, seed);
    const DensityMatrix rb = random_mixed_state(1, 2, seed + 100);
    const DensityMatrix prod = tensor_product(ra, rb);
    EXPECT_LT((partial_trace(prod, {2, 1}, Party::kA).matrix() - ra.matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    EXPECT_LT((partial_trace(prod, {2, 1}, Party::kB).matrix() - rb.matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
  }
}

TEST(FidelityTest, Examples) {
  EXPECT_NEAR(fidelity_pure(StateVector::zero(1), StateVector::zero(1)), 1.0,
              1e-12);
  EXPECT_NEAR(fidelity_pure(StateVector::zero(1), StateVector::basis(1, 1)),
              0.0, 1e-12);
  EXPECT_NEAR(fidelity_pure(max_entangled_state(1), StateVector::zero(2)),
              1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_THROW(fidelity_pure(StateVector::zero(1), StateVector::zero(2)),
               std::invalid_argument);
}

TEST(OverlapTest, Examples) {
  const StateVector phi = max_entangled_state(1);
  EXPECT_NEAR(overlap_with_pure(DensityMatrix::maximally_mixed(2), phi), 0.25,
              1e-12);
  EXPECT_NEAR(overlap_with_pure(DensityMatrix::from_pure(phi), phi), 1.0,
              1e-12);
  EXPECT_NEAR(
      overlap_with_pure(DensityMatrix::from_pure(StateVector::zero(2)), phi),
      0.5, 1e-12);
  EXPECT_THROW(overlap_with_pure(DensityMatrix::maximally_mixed(1), phi),
               std::invalid_argument);
}

TEST(OverlapTest, FidelitySquaredMatchesOverlap) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const StateVector psi = haar_random_state(3, 2 * seed);
    const StateVector phi = haar_random_state(3, 2 * seed + 1);
    const double f = fidelity_pure(psi, phi);
    EXPECT_NEAR(f, fidelity_pure(phi, psi), 1e-12);
    EXPECT_NEAR(f * f, overlap_with_pure(DensityMatrix::from_pure(psi), phi),
                1e-10);
  }
}

TEST(MeasureTest, Examples) {
  const auto bell = measure_probabilities(max_entangled_state(1));
  EXPECT_NEAR(bell[0], 0.5, 1e-12);
  EXPECT_NEAR(bell[1], 0.0, 1e-12);
  EXPECT_NEAR(bell[2], 0.0, 1e-12);
  EXPECT_NEAR(bell[3], 0.5, 1e-12);
  const auto zero = measure_probabilities(StateVector::zero(3));
  EXPECT_NEAR(zero[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < zero.size(); ++i) EXPECT_EQ(zero[i], 0.0);
  for (double p : measure_probabilities(DensityMatrix::maximally_mixed(2))) {
    EXPECT_NEAR(p, 0.25, 1e-12);
  }
}

TEST(MeasureTest, RandomStatesGiveDistributions) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (const AnyState& s :
         {AnyState(haar_random_state(3, seed)),
          AnyState(random_mixed_state(3, 1 + seed % 4, seed))}) {
      const auto p = measure_probabilities(s);
      for (double x : p) EXPECT_GE(x, 0.0);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
    }
  }
}

TEST(SampleCountsTest, DeterministicOutcome) {
  const std::vector<double> probs = {1.0, 0.0};
  const auto c = sample_counts(probs, 100, 7);
  EXPECT_EQ(c[0], 100);
  EXPECT_EQ(c[1], 0);
}

TEST(SampleCountsTest, FairCoinWithinThreeSigma) {
  const std::vector<double> probs = {0.5, 0.5};
  const auto c = sample_counts(probs, 1000000, 11);
  EXPECT_EQ(c[0] + c[1], 1000000);
  EXPECT_LE(std::abs(c[0] - 500000), 1500);
}

TEST(SampleCountsTest, Reproducible) {
  const std::vector<double> probs = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(sample_counts(probs, 4096, 3), sample_counts(probs, 4096, 3));
  EXPECT_NE(sample_counts(probs, 4096, 3), sample_counts(probs, 4096, 4));
}

TEST(SampleCountsTest, RejectsInvalidInput) {
  EXPECT_THROW(sample_counts(std::vector<double>{1.5, -0.5}, 10, 0),
               std::invalid_argument);
  EXPECT_THROW(sample_counts(std::vector<double>{0.5, 0.4}, 10, 0),
               std::invalid_argument);
  EXPECT_THROW(sample_counts(std::vector<double>{1.0}, 0, 0),
               std::invalid_argument);
}

TEST(TransposeTrickTest, RandomMatrices) {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const std::int64_t d = std::int64_t{1} << n;
    const CMatrix m = random_complex_matrix(d, d, 1000 + trial);
    const CVector phi = max_entangled_state(n).amplitudes();
    const CMatrix id = CMatrix::Identity(d, d);
    const CVector lhs = kron(m, id) * phi;
    const CVector rhs = kron(id, m.transpose()) * phi;
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(GlobalPhaseTest, Comparison) {
  const CVector a = haar_random_state(2, 5).amplitudes();
  const CVector b = a * std::polar(1.0, 0.7);
  EXPECT_TRUE(equal_up_to_global_phase(a, b));
  EXPECT_FALSE(equal_up_to_global_phase(a, haar_random_state(2, 6).amplitudes()));
}

TEST(RandomTest, SeededGeneratorsAreReproducible) {
  EXPECT_TRUE(haar_random_state(4, 9).amplitudes().isApprox(
      haar_random_state(4, 9).amplitudes(), 0.0));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  const CMatrix u = haar_random_unitary(8, 3);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(),
            1e-12);
  const DensityMatrix r = random_mixed_state(3, 2, 4);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r.matrix());
  EXPECT_NEAR(es.eigenvalues()[5], 0.0, 1e-12);  // rank 2 of 8
  EXPECT_GT(es.eigenvalues()[6], 1e-6);
}

}  // namespace
}  // namespace entvqa
