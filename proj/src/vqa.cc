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

#include "entvqa/vqa.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "entvqa/oracle.h"

namespace entvqa {

namespace {

// Stream 0 drives the optimizer; stream 1 is reserved for readouts.
constexpr std::uint64_t kReadoutStream = 1;

void require_symmetric(Bipartition part) {
  if (part.n_a < 1 || part.n_a != part.n_b) {
    throw std::invalid_argument("driver needs n_a == n_b >= 1");
  }
  if (part.total() > kMaxQubits) {
    throw std::invalid_argument("register exceeds the qubit limit");
  }
}

double best_cost(const OptimTrace& trace) {
  double best = trace.initial_cost;
  for (const auto& r : trace.records) best = std::max(best, r.cost);
  return best;
}

bool is_pure(const AnyState& s) {
  if (std::holds_alternative<StateVector>(s)) return true;
  const CMatrix& m = std::get<DensityMatrix>(s).matrix();
  return std::abs((m * m).trace().real() - 1.0) < kValidationTol;
}

}  // namespace

void AnsatzConfig::validate() const {
  if (depth < 1) throw std::invalid_argument("ansatz depth must be >= 1");
}

std::optional<Circuit> SchmidtResult::basis_circuit(Party party,
                                                    std::int64_t j) const {
  const Circuit& basis = party == Party::kA ? basis_a : basis_b;
  const int n = basis.n_qubits();
  if (j < 0 || j >= (std::int64_t{1} << n)) {
    throw std::out_of_range("basis index out of range");
  }
  if (static_cast<std::size_t>(j) < degenerate.size() && degenerate[j]) {
    return std::nullopt;
  }
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    if ((j >> (n - 1 - q)) & 1) c.add(Gate::x(q));
  }
  c.append(basis);
  return c;
}

SchmidtResult schmidt_decompose(const AnyState& input, Bipartition part,
                                const AnsatzConfig& ansatz_cfg,
                                const OptimConfig& optim_cfg,
                                const WaParams& wa,
                                std::optional<std::int64_t> shots) {
  require_symmetric(part);
  ansatz_cfg.validate();
  optim_cfg.validate();
  if (wa.n != part.n_a) {
    throw std::invalid_argument("W_A width differs from party A");
  }
  Ansatz pqc_a =
      hardware_efficient_ansatz(part.n_a, ansatz_cfg.depth, ansatz_cfg.entangler);
  Ansatz pqc_b =
      hardware_efficient_ansatz(part.n_b, ansatz_cfg.depth, ansatz_cfg.entangler);
  const CostSpec spec = CostSpec::schmidt(input, part, pqc_a, pqc_b, wa, shots,
                                          optim_cfg.seed);

  SchmidtResult out;
  out.trace = maximize(make_objective(spec),
                       random_initial_params(spec.n_params(), optim_cfg.seed),
                       optim_cfg);
  const std::vector<double>& theta = out.trace.final_theta;
  out.final_cost = out.trace.final_cost;

  const AnyState rotated = transformed_state(spec, theta);
  SchmidtReadout readout;
  if (!shots) {
    const DensityMatrix rho_a =
        std::holds_alternative<StateVector>(rotated)
            ? partial_trace(std::get<StateVector>(rotated), part, Party::kA)
            : partial_trace(std::get<DensityMatrix>(rotated), part, Party::kA);
    readout = readout_schmidt_coefficients(rho_a);
  } else {
    // One joint sample, marginalized onto A.
    std::vector<double> probs = measure_probabilities(rotated);
    double total = 0.0;
    for (double p : probs) total += p;
    for (double& p : probs) p /= total;
    const auto counts =
        sample_counts(probs, *shots, sample_seed(spec, theta, kReadoutStream));
    std::vector<std::int64_t> counts_a(part.dim_a(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts_a[i >> part.n_b] += counts[i];
    }
    readout = readout_from_counts(counts_a);
  }
  out.coefficients = readout.sorted;
  out.coefficients_index_order = readout.index_order;

  const std::size_t n_a_params = pqc_a.n_params();
  const std::span<const double> all(theta);
  out.basis_a = inverse(pqc_a.bind(all.first(n_a_params)));
  out.basis_b = inverse(pqc_b.bind(all.subspan(n_a_params)));

  const auto& c = out.coefficients_index_order;
  out.degenerate.assign(c.size(), false);
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k != j && std::abs(c[j] - c[k]) < kDegeneracyGap) {
        out.degenerate[j] = true;
      }
    }
  }

  if (is_pure(input)) {
    const SchmidtDecomposition svd = exact_schmidt(input, part);
    const std::vector<double> exact(svd.coefficients.begin(),
                                    svd.coefficients.end());
    out.error_vs_oracle = error_metric(out.coefficients, exact);
  }
  return out;
}

LogNegResult estimate_log_negativity(const StateVector& input,
                                     Bipartition part,
                                     const AnsatzConfig& ansatz_cfg,
                                     const OptimConfig& optim_cfg,
                                     std::optional<std::int64_t> shots) {
  require_symmetric(part);
  ansatz_cfg.validate();
  optim_cfg.validate();
  Ansatz pqc_a =
      hardware_efficient_ansatz(part.n_a, ansatz_cfg.depth, ansatz_cfg.entangler);
  const CostSpec spec =
      CostSpec::max_entangled(input, part, pqc_a, shots, optim_cfg.seed);

  LogNegResult out;
  out.trace = maximize(make_objective(spec),
                       random_initial_params(spec.n_params(), optim_cfg.seed),
                       optim_cfg);
  if (!shots) {
    out.c_max = best_cost(out.trace);
  } else {
    // The running max of noisy samples is biased upward; resample instead.
    // A zero count is replaced by half a count so the log stays finite.
    out.c_max = std::max(
        evaluate_cost(spec, out.trace.final_theta, kReadoutStream),
        0.5 / static_cast<double>(*shots));
  }
  out.log_negativity =
      std::log2(std::max(out.c_max, std::numeric_limits<double>::min())) +
      part.n_a;
  return out;
}

DetectionResult detect_entanglement(const DensityMatrix& input,
                                    Bipartition part,
                                    const AnsatzConfig& ansatz_cfg,
                                    const OptimConfig& optim_cfg,
                                    std::optional<std::int64_t> shots,
                                    double margin_sigmas) {
  require_symmetric(part);
  ansatz_cfg.validate();
  optim_cfg.validate();
  if (!(margin_sigmas >= 0.0)) {
    throw std::invalid_argument("margin_sigmas must be >= 0");
  }
  Ansatz pqc_a =
      hardware_efficient_ansatz(part.n_a, ansatz_cfg.depth, ansatz_cfg.entangler);
  const CostSpec spec =
      CostSpec::max_entangled(input, part, pqc_a, shots, optim_cfg.seed);

  DetectionResult out;
  out.threshold = 1.0 / static_cast<double>(part.dim_a());
  out.margin = shots ? margin_sigmas * std::sqrt(out.threshold *
                                                 (1.0 - out.threshold) /
                                                 static_cast<double>(*shots))
                     : kExactDetectionMargin;
  const double bar = out.threshold + out.margin;

  const Objective f = make_objective(spec);
  std::vector<double> theta0 =
      random_initial_params(spec.n_params(), optim_cfg.seed);
  const double initial = f(theta0);
  if (initial > bar) {
    out.trace.initial_cost = initial;
    out.trace.final_cost = initial;
    out.trace.final_theta = std::move(theta0);
    out.trace.evaluations = 1;
    out.halted_early = true;
  } else {
    out.trace = maximize(f, std::move(theta0), optim_cfg,
                         [bar](const IterationRecord& r) { return r.cost > bar; });
    out.halted_early = out.trace.stopped_by_observer;
  }
  out.chi_lower_bound = best_cost(out.trace);
  out.detected = out.chi_lower_bound > bar;
  return out;
}

}  // namespace entvqa
