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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "entvqa/cost.h"
#include "entvqa/experiments.h"
#include "entvqa/oracle.h"
#include "entvqa/vqa.h"
#include "test_oracles.h"

namespace entvqa {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string description;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

double median(std::vector<double> v) { return summarize(std::move(v)).median; }

Outcome oracle_fidelity() {
  const auto c = exact_schmidt(prepare_paper_2q_state(), {1, 1}).coefficients;
  const bool ok = std::abs(c[0] - 0.958) <= 1e-3 && std::abs(c[1] - 0.286) <= 1e-3;
  return {ok, fmt("c = (%.6f, %.6f)", c[0], c[1])};
}

Outcome schmidt_convergence() {
  const StateVector psi = prepare_paper_2q_state();
  const auto truth = to_std(exact_schmidt(psi, {1, 1}).coefficients);
  std::string detail;
  bool ok = true;
  for (Method m : {Method::kAdam, Method::kSmo}) {
    int good = 0;
    std::size_t worst_iters = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      OptimConfig oc;
      oc.method = m;
      oc.seed = seed;
      oc.max_iters = 100;
      const SchmidtResult r = schmidt_decompose(psi, {1, 1}, {}, oc, build_wa_params(1));
      worst_iters = std::max(worst_iters, r.trace.records.size());
      if (max_abs_diff(r.coefficients, truth) <= 1e-3 && r.trace.records.size() <= 100) ++good;
    }
    ok = ok && good >= 18;
    detail += fmt("%s %d/20 (max %zu iters) ", std::string(method_name(m)).c_str(), good,
                  worst_iters);
  }
  return {ok, detail};
}

Outcome theorem_bound() {
  std::mt19937_64 rng(2024);
  double worst = -1.0;
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const Bipartition part = Bipartition::symmetric(n);
    const StateVector psi = haar_random_state(2 * n, rng());
    const WaParams wa = build_wa_params(n);
    const int depth = 1 + trial % 4;
    const CostSpec spec = CostSpec::schmidt(psi, part, hardware_efficient_ansatz(n, depth),
                                            hardware_efficient_ansatz(n, depth), wa);
    const auto theta = random_initial_params(spec.n_params(), rng());
    const double cost = evaluate_cost(spec, theta);

    const auto weights = testing::rational_weights(testing::rational_wa(n, 2, 3, 1));
    testing::Rational total = 0;
    for (const auto& w : weights) total += w;
    const auto c = exact_schmidt(psi, part).coefficients;
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      s += std::sqrt(static_cast<double>(weights[j] / total)) * c[j];
    }
    const double gap = cost - s * s;
    worst = std::max(worst, gap);
    if (gap > 1e-9) ++violations;
  }
  return {violations == 0, fmt("max(C - bound) = %.3e over 200 pairs", worst)};
}

Outcome corollary_and_rank_scan() {
  std::mt19937_64 rng(99);
  double worst_gap = -1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const Bipartition part = Bipartition::symmetric(n);
    const StateVector psi = haar_random_state(2 * n, rng());
    const CostSpec spec = CostSpec::max_entangled(psi, part, hardware_efficient_ansatz(n, 2));
    const auto theta = random_initial_params(spec.n_params(), rng());
    const double s = exact_schmidt(psi, part).coefficients.sum();
    worst_gap = std::max(worst_gap, evaluate_cost(spec, theta) - s * s / part.dim_a());
  }
  bool ok = worst_gap <= 1e-9;
  std::string detail = fmt("max(C - bound) = %.3e; ", worst_gap);

  ExperimentConfig cfg;
  cfg.experiment = Experiment::kRankScan;
  double exact_dev = 0.0, shot_dev = 0.0, worst_rep = 0.0;
  for (const RankPoint& p : rank_scan(cfg)) {
    const double dev = std::abs(p.summary.median - p.expected);
    if (p.shots) {
      shot_dev = std::max(shot_dev, dev);
    } else {
      exact_dev = std::max(exact_dev, dev);
      for (double v : p.values) worst_rep = std::max(worst_rep, std::abs(v - p.expected));
    }
  }
  ok = ok && exact_dev <= 0.05 && shot_dev <= 0.2;
  detail += fmt("exact median dev %.4f (worst single rep %.4f), 1024-shot median dev %.4f",
                exact_dev, worst_rep, shot_dev);
  return {ok, detail};
}

Outcome depth_trend() {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kDepthScan;
  const auto series = depth_scan(cfg);
  const DepthSeries* d1 = nullptr;
  const DepthSeries* d8 = nullptr;
  std::string detail;
  for (const auto& s : series) {
    if (s.depth == 1) d1 = &s;
    if (s.depth == 8) d8 = &s;
    detail += fmt("d%d %.4f ", s.depth, s.final_error.median);
  }
  const bool ok = d1 && d8 && d1->runs.size() >= 5 && d8->final_error.median < d1->final_error.median;
  return {ok, "median final error: " + detail};
}

Outcome noise_scan_check() {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kNoiseScan;
  bool ok = true;
  double zero_dev = 0.0, ad_dev = 0.0, bf_dev = 0.0;
  for (const NoisePoint& p : noise_scan(cfg)) {
    bf_dev = std::max(bf_dev, p.deviation_from_brute_force);
    if (p.level == 0.0) zero_dev = std::max(zero_dev, p.deviation_from_noiseless);
    if (p.channel == NoiseKind::kAmplitudeDamping && p.level <= 0.3 + 1e-12) {
      ad_dev = std::max(ad_dev, p.deviation_from_noiseless);
    }
  }
  ok = zero_dev <= 1e-3 && ad_dev <= 0.05 && bf_dev <= 5e-3;
  return {ok, fmt("p=0 dev %.2e, AD p<=0.3 dev %.4f, max vs brute force %.2e", zero_dev,
                  ad_dev, bf_dev)};
}

Outcome detection_thresholds() {
  OptimConfig oc;
  oc.method = Method::kAdam;
  bool ok = true;
  std::string detail;
  for (double p : {0.2, 0.3, 0.4, 0.6}) {
    const DetectionResult r = detect_entanglement(
        build_family({.family = Family::kIsotropic, .p = p}), {1, 1}, {}, oc);
    ok = ok && r.detected == (p > 1.0 / 3);
    detail += fmt("iso %.1f:%s ", p, r.detected ? "yes" : "no");
  }
  const DensityMatrix ad5 = build_family({.family = Family::kAdBell, .gamma = 0.5});
  const DensityMatrix ad9 = build_family({.family = Family::kAdBell, .gamma = 0.9});
  const bool d5 = detect_entanglement(ad5, {1, 1}, {}, oc).detected;
  const bool d9 = detect_entanglement(ad9, {1, 1}, {}, oc).detected;
  const double red9 = reduction_criterion(ad9, {1, 1});
  ok = ok && d5 && !d9 && red9 < 0;
  detail += fmt("ad 0.5:%s ad 0.9:%s reduction(0.9) = %.4f", d5 ? "yes" : "no",
                d9 ? "yes" : "no", red9);
  return {ok, detail};
}

// Random two-qubit states from several ensembles.
DensityMatrix sample_state(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (k % 6) {
    case 0:
      return DensityMatrix::from_pure(haar_random_state(2, rng()));
    case 1:
    case 2:
      return random_mixed_state(2, 2 + k % 3, rng());
    case 3: {
      const double w = u(rng);
      const CMatrix m = w * random_mixed_state(2, 1, rng()).matrix() +
                        (1 - w) * CMatrix::Identity(4, 4) / 4.0;
      return DensityMatrix(2, m);
    }
    case 4: {
      const CMatrix m = 0.5 * tensor_product(random_mixed_state(1, 1, rng()),
                                             random_mixed_state(1, 1, rng())).matrix() +
                        0.5 * random_mixed_state(2, 4, rng()).matrix();
      return DensityMatrix(2, m);
    }
    default: {
      switch ((k / 6) % 5) {
        case 0:
          return build_family({.family = Family::kIsotropic, .p = -1.0 / 3 + 4.0 / 3 * u(rng)});
        case 1:
          return build_family({.family = Family::kSState, .p = u(rng)});
        case 2:
          return build_family({.family = Family::kWerner2, .alpha = -1 + 2 * u(rng)});
        case 3:
          return build_family({.family = Family::kBpfBell, .p = u(rng), .q = u(rng)});
        default:
          return build_family({.family = Family::kAdBell, .gamma = u(rng)});
      }
    }
  }
}

Outcome lemma_property() {
  std::mt19937_64 rng(7);
  int r_states = 0, sampled = 0, above = 0, r_violations = 0, contra_violations = 0;
  double worst_r_chi = 0.0;
  for (int k = 0; r_states < 500 && k < 20000; ++k) {
    const DensityMatrix rho = sample_state(k, rng);
    const double chi = brute_force_chi_2q(rho);
    const bool is_r = reduction_criterion(rho, {1, 1}) >= -1e-12;
    ++sampled;
    if (is_r) {
      ++r_states;
      worst_r_chi = std::max(worst_r_chi, chi);
      if (chi > 0.5 + 1e-3) ++r_violations;
    }
    if (chi > 0.5 + 1e-3) {
      ++above;
      if (is_r) ++contra_violations;
    }
  }
  const bool ok = r_states >= 500 && r_violations == 0 && contra_violations == 0;
  return {ok, fmt("%d R-states of %d sampled, max chi %.6f; %d with chi > 0.501, %d of "
                  "them satisfy reduction",
                  r_states, sampled, worst_r_chi, above, contra_violations)};
}

Outcome numerical_hygiene() {
  std::mt19937_64 rng(5);
  double grad_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    const Bipartition part = Bipartition::symmetric(n);
    const AnyState input = trial % 3 == 0
                               ? AnyState{random_mixed_state(2 * n, 2, rng())}
                               : AnyState{haar_random_state(2 * n, rng())};
    const CostSpec spec =
        trial % 2 == 0
            ? CostSpec::schmidt(input, part, hardware_efficient_ansatz(n, 2),
                                hardware_efficient_ansatz(n, 2), build_wa_params(n))
            : CostSpec::max_entangled(input, part, hardware_efficient_ansatz(n, 2));
    const Objective f = make_objective(spec);
    const auto theta = random_initial_params(spec.n_params(), rng());
    const auto ps = param_shift_gradient(f, theta);
    const auto fd = testing::central_difference(f, theta);
    grad_err = std::max(grad_err, max_abs_diff(ps, fd));
  }

  bool enumeration_ok = true;
  std::uniform_int_distribution<int> num(1, 40);
  for (int n = 2; n <= 10; ++n) {
    enumeration_ok = enumeration_ok &&
                     testing::strictly_decreasing(
                         testing::rational_weights(testing::rational_wa(n, 2, 3, 1)));
    for (int t = 0; t < 3; ++t) {
      const testing::Rational bn = 1 + testing::Rational(num(rng), 7);
      const testing::Rational bnm1 = bn + testing::Rational(num(rng), 11);
      const testing::Rational delta = testing::Rational(num(rng), 13);
      enumeration_ok = enumeration_ok && testing::strictly_decreasing(testing::rational_weights(
                                             testing::rational_wa(n, bn, bnm1, delta)));
    }
  }

  // (A x I)|Phi+> = (I x A^T)|Phi+>.
  double transpose_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const std::int64_t d = std::int64_t{1} << n;
    const CMatrix a = testing::random_complex_matrix(d, d, rng());
    const CMatrix id = CMatrix::Identity(d, d);
    const CVector phi = max_entangled_state(n).amplitudes();
    const CVector lhs = testing::kron(a, id) * phi;
    const CVector rhs = testing::kron(id, a.transpose()) * phi;
    transpose_err = std::max(transpose_err, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  const bool ok = grad_err <= 1e-6 && enumeration_ok && transpose_err <= 1e-10;
  return {ok, fmt("shift vs FD %.2e; enumeration n<=10 %s; transpose trick %.2e", grad_err,
                  enumeration_ok ? "ok" : "FAILED", transpose_err)};
}

}  // namespace
}  // namespace entvqa

int main() {
  using namespace entvqa;
  const std::vector<Criterion> criteria = {
      {1, "oracle Schmidt coefficients of the reference state", 1, oracle_fidelity},
      {2, "VQA Schmidt convergence, ADAM and SMO, 20 seeds", 60, schmidt_convergence},
      {3, "Schmidt cost upper bound on 200 random pairs", 60, theorem_bound},
      {4, "log-negativity cost bound and rank scan", 300, corollary_and_rank_scan},
      {5, "depth scan: depth 8 beats depth 1", 1800, depth_trend},
      {6, "noise scan vs noiseless and brute force", 300, noise_scan_check},
      {7, "detection thresholds for isotropic and damped Bell states", 120,
       detection_thresholds},
      {8, "fully entangled fraction of reduction-respecting states", 600, lemma_property},
      {9, "gradients, amplitude ordering and transpose identity", 60, numerical_hygiene},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt(" (over time budget of %.0f s)", c.budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.description.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
