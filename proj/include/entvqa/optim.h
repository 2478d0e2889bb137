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

#ifndef ENTVQA_OPTIM_H_
#define ENTVQA_OPTIM_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "entvqa/cost.h"

namespace entvqa {

enum class Method { kAdam, kSmo };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

struct OptimConfig {
  Method method = Method::kAdam;
  int max_iters = 100;
  double learning_rate = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Stop once |cost_k - cost_{k-1}| < convergence_tol for
  /// convergence_window consecutive iterations.
  double convergence_tol = 1e-6;
  int convergence_window = 10;
  /// Seeds the initial parameters of the drivers.
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  std::vector<double> theta;
};

struct OptimTrace {
  double initial_cost = 0.0;
  std::vector<IterationRecord> records;
  std::vector<double> final_theta;
  double final_cost = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
  bool stopped_by_observer = false;
};

/// Called after every iteration; returning true stops the run.
using Observer = std::function<bool(const IterationRecord&)>;

/// Component i is [f(theta + pi/2 e_i) - f(theta - pi/2 e_i)] / 2.
std::vector<double> param_shift_gradient(const Objective& cost,
                                         std::span<const double> theta);

/// ADAM ascent driven by parameter-shift gradients.
OptimTrace adam_maximize(const Objective& cost, std::vector<double> theta0,
                         const OptimConfig& cfg, const Observer& observer = {});

/// Closed-form coordinate step: fits f(theta_i) = a + b cos(theta_i - c)
/// from the three points theta_i, theta_i +- 2pi/3 and moves theta_i to c,
/// wrapped to (-pi, pi]. Leaves theta_i alone when |b| < 1e-12. Returns the
/// fitted maximum a + |b| (or a when degenerate).
double smo_coordinate_update(const Objective& cost, std::vector<double>& theta,
                             std::size_t i);

/// Sequential minimal optimization; one iteration is one full sweep.
OptimTrace smo_maximize(const Objective& cost, std::vector<double> theta0,
                        const OptimConfig& cfg, const Observer& observer = {});

/// Dispatches on cfg.method.
OptimTrace maximize(const Objective& cost, std::vector<double> theta0,
                    const OptimConfig& cfg, const Observer& observer = {});

/// Uniform in [0, 2pi).
std::vector<double> random_initial_params(std::size_t n, std::uint64_t seed);

}  // namespace entvqa

#endif  // ENTVQA_OPTIM_H_
