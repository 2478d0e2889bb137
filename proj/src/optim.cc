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

#include "entvqa/optim.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace entvqa {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

// Tracks the |delta cost| < tol streak.
class ConvergenceMonitor {
 public:
  ConvergenceMonitor(double tol, int window, double initial)
      : tol_(tol), window_(window), last_(initial) {}

  bool update(double cost) {
    streak_ = std::abs(cost - last_) < tol_ ? streak_ + 1 : 0;
    last_ = cost;
    return streak_ >= window_;
  }

 private:
  double tol_;
  int window_;
  double last_;
  int streak_ = 0;
};

// Wraps an objective and counts calls.
struct CountingObjective {
  const Objective& f;
  std::int64_t calls = 0;
  double operator()(std::span<const double> theta) {
    ++calls;
    return f(theta);
  }
};

}  // namespace

std::string_view method_name(Method m) {
  return m == Method::kAdam ? "adam" : "smo";
}

Method parse_method(std::string_view name) {
  if (name == "adam" || name == "ADAM") return Method::kAdam;
  if (name == "smo" || name == "SMO") return Method::kSmo;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

void OptimConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning_rate must be > 0");
  }
  if (!(beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("ADAM betas must lie in (0, 1)");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("adam eps must be > 0");
  if (!(convergence_tol >= 0.0) || convergence_window < 1) {
    throw std::invalid_argument("invalid convergence criterion");
  }
}

std::vector<double> param_shift_gradient(const Objective& cost,
                                         std::span<const double> theta) {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    shifted[i] = theta[i] + kPi / 2;
    const double plus = cost(shifted);
    shifted[i] = theta[i] - kPi / 2;
    const double minus = cost(shifted);
    shifted[i] = theta[i];
    grad[i] = 0.5 * (plus - minus);
  }
  return grad;
}

OptimTrace adam_maximize(const Objective& cost, std::vector<double> theta0,
                         const OptimConfig& cfg, const Observer& observer) {
  cfg.validate();
  CountingObjective f{cost};
  Objective counted = [&f](std::span<const double> t) { return f(t); };

  OptimTrace trace;
  std::vector<double> theta = std::move(theta0);
  trace.initial_cost = counted(theta);
  ConvergenceMonitor monitor(cfg.convergence_tol, cfg.convergence_window,
                             trace.initial_cost);
  std::vector<double> m(theta.size(), 0.0), v(theta.size(), 0.0);
  double b1t = 1.0, b2t = 1.0;
  double current = trace.initial_cost;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    const std::vector<double> g = param_shift_gradient(counted, theta);
    b1t *= cfg.beta1;
    b2t *= cfg.beta2;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      const double m_hat = m[i] / (1.0 - b1t);
      const double v_hat = v[i] / (1.0 - b2t);
      theta[i] += cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
    current = counted(theta);
    trace.records.push_back({it, current, theta});
    if (observer && observer(trace.records.back())) {
      trace.stopped_by_observer = true;
      break;
    }
    if (monitor.update(current)) {
      trace.converged = true;
      break;
    }
  }
  trace.final_theta = std::move(theta);
  trace.final_cost = current;
  trace.evaluations = f.calls;
  return trace;
}

double smo_coordinate_update(const Objective& cost, std::vector<double>& theta,
                             std::size_t i) {
  const double t0 = theta[i];
  const double f0 = cost(theta);
  theta[i] = t0 + 2.0 * kPi / 3.0;
  const double fp = cost(theta);
  theta[i] = t0 - 2.0 * kPi / 3.0;
  const double fm = cost(theta);
  theta[i] = t0;
  // f(t0 + x) = a + B cos x + C sin x
  const double a = (f0 + fp + fm) / 3.0;
  const double b_cos = (2.0 * f0 - fp - fm) / 3.0;
  const double c_sin = (fp - fm) / std::sqrt(3.0);
  const double amplitude = std::hypot(b_cos, c_sin);
  if (amplitude < 1e-12) return a;
  theta[i] = wrap_angle(t0 + std::atan2(c_sin, b_cos));
  return a + amplitude;
}

OptimTrace smo_maximize(const Objective& cost, std::vector<double> theta0,
                        const OptimConfig& cfg, const Observer& observer) {
  cfg.validate();
  CountingObjective f{cost};
  Objective counted = [&f](std::span<const double> t) { return f(t); };

  OptimTrace trace;
  std::vector<double> theta = std::move(theta0);
  trace.initial_cost = counted(theta);
  ConvergenceMonitor monitor(cfg.convergence_tol, cfg.convergence_window,
                             trace.initial_cost);
  double current = trace.initial_cost;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      smo_coordinate_update(counted, theta, i);
    }
    current = counted(theta);
    trace.records.push_back({it, current, theta});
    if (observer && observer(trace.records.back())) {
      trace.stopped_by_observer = true;
      break;
    }
    if (monitor.update(current)) {
      trace.converged = true;
      break;
    }
  }
  trace.final_theta = std::move(theta);
  trace.final_cost = current;
  trace.evaluations = f.calls;
  return trace;
}

OptimTrace maximize(const Objective& cost, std::vector<double> theta0,
                    const OptimConfig& cfg, const Observer& observer) {
  return cfg.method == Method::kAdam
             ? adam_maximize(cost, std::move(theta0), cfg, observer)
             : smo_maximize(cost, std::move(theta0), cfg, observer);
}

std::vector<double> random_initial_params(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  std::vector<double> theta(n);
  for (double& t : theta) t = uni(rng);
  return theta;
}

}  // namespace entvqa
