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

#include "entvqa/oracle.h"
#include "entvqa/vqa.h"
#include "test_oracles.h"

namespace entvqa {
namespace {

OptimConfig optim(Method m, std::uint64_t seed, int iters = 100) {
  OptimConfig c;
  c.method = m;
  c.seed = seed;
  c.max_iters = iters;
  return c;
}

void expect_valid_coefficients(const std::vector<double>& c) {
  double sq = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    EXPECT_GE(c[j], 0.0);
    if (j > 0) EXPECT_LE(c[j], c[j - 1]);
    sq += c[j] * c[j];
  }
  EXPECT_NEAR(sq, 1.0, 1e-6);
}

TEST(SchmidtDecomposeTest, TwoQubitReferenceState) {
  for (Method m : {Method::kAdam, Method::kSmo}) {
    const SchmidtResult r =
        schmidt_decompose(prepare_paper_2q_state(), {1, 1}, {}, optim(m, 0),
                          build_wa_params(1));
    ASSERT_EQ(r.coefficients.size(), 2u);
    EXPECT_NEAR(r.coefficients[0], 0.958, 1e-3);
    EXPECT_NEAR(r.coefficients[1], 0.286, 1e-3);
    expect_valid_coefficients(r.coefficients);
    ASSERT_TRUE(r.error_vs_oracle.has_value());
    EXPECT_LT(*r.error_vs_oracle, 1e-6);
    EXPECT_FALSE(r.degenerate[0]);
    EXPECT_FALSE(r.degenerate[1]);
  }
}

TEST(SchmidtDecomposeTest, BellAndProductStates) {
  const SchmidtResult bell = schmidt_decompose(
      max_entangled_state(1), {1, 1}, {}, optim(Method::kSmo, 1), build_wa_params(1));
  EXPECT_NEAR(bell.coefficients[0], 1 / std::sqrt(2.0), 1e-3);
  EXPECT_NEAR(bell.coefficients[1], 1 / std::sqrt(2.0), 1e-3);
  EXPECT_TRUE(bell.degenerate[0]);
  EXPECT_FALSE(bell.basis_circuit(Party::kA, 0).has_value());

  CVector plus_zero = CVector::Zero(4);
  plus_zero[0] = plus_zero[2] = 1 / std::sqrt(2.0);
  const SchmidtResult prod = schmidt_decompose(
      StateVector(2, plus_zero), {1, 1}, {}, optim(Method::kAdam, 2),
      build_wa_params(1));
  EXPECT_NEAR(prod.coefficients[0], 1.0, 1e-3);
  EXPECT_NEAR(prod.coefficients[1], 0.0, 1e-3);
}

TEST(SchmidtDecomposeTest, FinalCostRespectsUpperBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 1 + seed % 2;
    const Bipartition part = Bipartition::symmetric(n);
    const StateVector psi = haar_random_state(2 * n, seed);
    const WaParams wa = build_wa_params(n);
    const SchmidtResult r = schmidt_decompose(psi, part, {2, Entangler::kCNOT},
                                              optim(Method::kSmo, seed, 30), wa);
    const auto c = exact_schmidt(psi, part).coefficients;
    const auto p = wa_amplitudes(wa);
    double bound = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) bound += p[j] * c[j];
    EXPECT_LE(r.final_cost, bound * bound + 1e-9);
    for (const auto& rec : r.trace.records) EXPECT_LE(rec.cost, bound * bound + 1e-9);
    expect_valid_coefficients(r.coefficients);
  }
}

// |<u_j (x) v_j|psi>| = c_j for nondegenerate coefficients.
void check_bases(const StateVector& psi, const SchmidtResult& r, int n) {
  const std::int64_t d = std::int64_t{1} << n;
  int checked = 0;
  for (std::int64_t j = 0; j < d; ++j) {
    const auto ca = r.basis_circuit(Party::kA, j);
    const auto cb = r.basis_circuit(Party::kB, j);
    ASSERT_EQ(ca.has_value(), cb.has_value());
    if (!ca) continue;
    const StateVector u = apply(*ca, StateVector::zero(n));
    const StateVector v = apply(*cb, StateVector::zero(n));
    const double overlap = std::abs(tensor_product(u, v).amplitudes().dot(psi.amplitudes()));
    EXPECT_NEAR(overlap, r.coefficients_index_order[j], 1e-3) << "j = " << j;
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(SchmidtDecomposeTest, BasisCircuitsReproduceCoefficients) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const StateVector psi = haar_random_state(2, 100 + seed);
    const SchmidtResult r = schmidt_decompose(psi, {1, 1}, {},
                                              optim(Method::kSmo, seed),
                                              build_wa_params(1));
    check_bases(psi, r, 1);
  }
  const StateVector psi2 = haar_random_state(4, 7);
  const SchmidtResult r2 = schmidt_decompose(
      psi2, {2, 2}, {4, Entangler::kCNOT}, optim(Method::kSmo, 3, 300),
      build_wa_params(2));
  ASSERT_LT(*r2.error_vs_oracle, 1e-5);
  check_bases(psi2, r2, 2);
}

TEST(SchmidtDecomposeTest, ShotModeIsCloseAndValid) {
  const SchmidtResult r = schmidt_decompose(
      prepare_paper_2q_state(), {1, 1}, {}, optim(Method::kSmo, 4), build_wa_params(1),
      4096);
  EXPECT_NEAR(r.coefficients[0], 0.958, 0.03);
  EXPECT_NEAR(r.coefficients[1], 0.286, 0.06);
  expect_valid_coefficients(r.coefficients);
}

TEST(SchmidtDecomposeTest, MixedInputHasNoOracleError) {
  const DensityMatrix rho = random_mixed_state(2, 2, 3);
  const SchmidtResult r = schmidt_decompose(rho, {1, 1}, {}, optim(Method::kAdam, 0),
                                            build_wa_params(1));
  EXPECT_FALSE(r.error_vs_oracle.has_value());
  expect_valid_coefficients(r.coefficients);
}

TEST(SchmidtDecomposeTest, RejectsMismatchedConfiguration) {
  const StateVector psi = haar_random_state(3, 0);
  EXPECT_THROW(schmidt_decompose(psi, {1, 2}, {}, optim(Method::kAdam, 0),
                                 build_wa_params(1)),
               std::invalid_argument);
  EXPECT_THROW(schmidt_decompose(haar_random_state(4, 0), {2, 2}, {},
                                 optim(Method::kAdam, 0), build_wa_params(1)),
               std::invalid_argument);
  EXPECT_THROW(schmidt_decompose(haar_random_state(2, 0), {1, 1}, {0},
                                 optim(Method::kAdam, 0), build_wa_params(1)),
               std::invalid_argument);
}

TEST(LogNegativityTest, RankStates) {
  const AnsatzConfig ac{5, Entangler::kCNOT};
  const LogNegResult r1 = estimate_log_negativity(
      prepare_rank_r_state(3, 1), {3, 3}, ac, optim(Method::kSmo, 0));
  EXPECT_NEAR(r1.log_negativity, 0.0, 0.05);
  const LogNegResult r8 = estimate_log_negativity(
      prepare_rank_r_state(3, 8), {3, 3}, ac, optim(Method::kSmo, 0));
  EXPECT_NEAR(r8.log_negativity, 3.0, 0.05);
}

TEST(LogNegativityTest, TwoQubitReferenceState) {
  const LogNegResult r = estimate_log_negativity(
      prepare_paper_2q_state(), {1, 1}, {}, optim(Method::kAdam, 0));
  EXPECT_NEAR(r.log_negativity, std::log2(std::pow(0.958 + 0.286, 2)), 0.02);
  EXPECT_NEAR(r.log_negativity,
              exact_log_negativity(prepare_paper_2q_state(), {1, 1}), 1e-6);
}

TEST(LogNegativityTest, LocalUnitaryInvariance) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 1 + seed % 2;
    const Bipartition part = Bipartition::symmetric(n);
    const std::int64_t d = part.dim_a();
    const StateVector psi = haar_random_state(2 * n, seed);
    const CMatrix ua = haar_random_unitary(d, seed + 10);
    const CMatrix ub = haar_random_unitary(d, seed + 20);
    const StateVector rotated(2 * n, testing::kron(ua, ub) * psi.amplitudes());
    const AnsatzConfig ac{n == 1 ? 1 : 4, Entangler::kCNOT};
    const double a =
        estimate_log_negativity(psi, part, ac, optim(Method::kSmo, 1, 200)).log_negativity;
    const double b =
        estimate_log_negativity(rotated, part, ac, optim(Method::kSmo, 1, 200))
            .log_negativity;
    EXPECT_NEAR(a, b, 2e-3) << "seed " << seed;
  }
}

TEST(LogNegativityTest, ShotModeUsesFreshSample) {
  const LogNegResult r = estimate_log_negativity(
      prepare_rank_r_state(2, 4), {2, 2}, {4, Entangler::kCNOT},
      optim(Method::kSmo, 0), 1024);
  EXPECT_NEAR(r.log_negativity, 2.0, 0.2);
  EXPECT_DOUBLE_EQ(r.c_max * 1024, std::round(r.c_max * 1024));
}

TEST(DetectTest, IsotropicFamily) {
  const auto iso = [](double p) {
    return build_family({.family = Family::kIsotropic, .p = p});
  };
  const DetectionResult yes =
      detect_entanglement(iso(0.5), {1, 1}, {}, optim(Method::kAdam, 0));
  EXPECT_TRUE(yes.detected);
  EXPECT_TRUE(yes.halted_early);
  EXPECT_DOUBLE_EQ(yes.threshold, 0.5);
  EXPECT_GT(yes.chi_lower_bound, 0.5);
  EXPECT_LE(yes.chi_lower_bound, 0.625 + 1e-9);

  const DetectionResult no =
      detect_entanglement(iso(0.2), {1, 1}, {}, optim(Method::kAdam, 0));
  EXPECT_FALSE(no.detected);
  EXPECT_FALSE(no.halted_early);
  EXPECT_NEAR(no.chi_lower_bound, 0.4, 1e-4);
}

TEST(DetectTest, AmplitudeDampedBell) {
  const DensityMatrix rho = build_family({.family = Family::kAdBell, .gamma = 0.9});
  const DetectionResult r =
      detect_entanglement(rho, {1, 1}, {}, optim(Method::kSmo, 0));
  EXPECT_FALSE(r.detected);
  EXPECT_NEAR(r.chi_lower_bound, (2 + 2 * std::sqrt(0.1) - 0.9) / 4, 1e-4);
  EXPECT_LT(reduction_criterion(rho, {1, 1}), 0.0);
}

TEST(DetectTest, NeverFiresOnProductStates) {
  int fired = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = seed < 100 ? 1 : 2;
    const DensityMatrix ra = random_mixed_state(n, 1 + seed % 2, 2 * seed);
    const DensityMatrix rb = random_mixed_state(n, 1 + (seed / 2) % 2, 2 * seed + 1);
    const AnsatzConfig ac{n == 1 ? 1 : 3, Entangler::kCNOT};
    const DetectionResult r =
        detect_entanglement(tensor_product(ra, rb), Bipartition::symmetric(n), ac,
                            optim(seed % 2 ? Method::kSmo : Method::kAdam, seed, 50));
    fired += r.detected ? 1 : 0;
    EXPECT_LE(r.chi_lower_bound, r.threshold + 1e-9);
  }
  EXPECT_EQ(fired, 0);
}

TEST(DetectTest, ShotModeMargin) {
  const DensityMatrix rho = build_family({.family = Family::kIsotropic, .p = 0.8});
  const DetectionResult r =
      detect_entanglement(rho, {1, 1}, {}, optim(Method::kSmo, 0), 1024, 3.0);
  EXPECT_NEAR(r.margin, 3.0 * std::sqrt(0.25 / 1024), 1e-15);
  EXPECT_TRUE(r.detected);
  EXPECT_GT(r.chi_lower_bound, r.threshold + r.margin);
  EXPECT_THROW(detect_entanglement(rho, {1, 1}, {}, optim(Method::kSmo, 0), 1024, -1.0),
               std::invalid_argument);
}

TEST(DetectTest, ExactModeProductAtThresholdNotDetected) {
  const DensityMatrix rho = DensityMatrix::from_pure(StateVector::zero(2));
  const DetectionResult r =
      detect_entanglement(rho, {1, 1}, {}, optim(Method::kSmo, 0));
  EXPECT_NEAR(r.chi_lower_bound, 0.5, 1e-9);
  EXPECT_FALSE(r.detected);
}

}  // namespace
}  // namespace entvqa
