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

#ifndef ENTVQA_COST_H_
#define ENTVQA_COST_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "entvqa/circuits.h"
#include "entvqa/qstate.h"

namespace entvqa {

enum class Subcircuit {
  kW,       // weighted target sum_j p_j |jj>, two-sided PQC
  kWPrime,  // maximally entangled target, one-sided PQC
};

/// Everything needed to evaluate one all-zero-probability cost:
///   C(theta) = Pr[0...0] after PQC_A (x) PQC_B and the inverse subcircuit.
///
/// theta is laid out as [pqc_a params..., pqc_b params...].
class CostSpec {
 public:
  CostSpec(AnyState input, Bipartition part, Ansatz pqc_a,
           std::optional<Ansatz> pqc_b, Subcircuit kind, Circuit subcircuit,
           std::optional<std::int64_t> shots = std::nullopt,
           std::uint64_t seed = 0);

  /// Two-sided PQC against W built from `wa`.
  static CostSpec schmidt(AnyState input, Bipartition part, Ansatz pqc_a,
                          Ansatz pqc_b, const WaParams& wa,
                          std::optional<std::int64_t> shots = std::nullopt,
                          std::uint64_t seed = 0);
  /// One-sided PQC against W'.
  static CostSpec max_entangled(AnyState input, Bipartition part,
                                Ansatz pqc_a,
                                std::optional<std::int64_t> shots =
                                    std::nullopt,
                                std::uint64_t seed = 0);

  const AnyState& input() const { return input_; }
  Bipartition partition() const { return part_; }
  const Ansatz& pqc_a() const { return pqc_a_; }
  const std::optional<Ansatz>& pqc_b() const { return pqc_b_; }
  Subcircuit kind() const { return kind_; }
  const Circuit& subcircuit() const { return subcircuit_; }
  const Circuit& inverse_subcircuit() const { return inverse_subcircuit_; }
  std::optional<std::int64_t> shots() const { return shots_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t n_params() const;

  /// Same spec with sampling turned off.
  CostSpec exact() const;

  /// PQC_A (x) PQC_B bound to theta, on the full register.
  Circuit bound_pqc(std::span<const double> theta) const;

 private:
  AnyState input_;
  Bipartition part_;
  Ansatz pqc_a_;
  std::optional<Ansatz> pqc_b_;
  Subcircuit kind_;
  Circuit subcircuit_;
  Circuit inverse_subcircuit_;
  std::optional<std::int64_t> shots_;
  std::uint64_t seed_;
};

/// The transformed input (PQCs applied, before the inverse subcircuit).
AnyState transformed_state(const CostSpec& spec,
                           std::span<const double> theta);

/// Pr[0...0]. Exact when spec.shots() is empty; otherwise the frequency of
/// the all-zero outcome in a multinomial sample whose seed is derived from
/// (spec.seed(), stream, theta), so the value is a pure function of its
/// arguments.
double evaluate_cost(const CostSpec& spec, std::span<const double> theta,
                     std::uint64_t stream = 0);

/// Seed used for the shot sample of evaluate_cost.
std::uint64_t sample_seed(const CostSpec& spec, std::span<const double> theta,
                          std::uint64_t stream);

using Objective = std::function<double(std::span<const double>)>;
Objective make_objective(const CostSpec& spec, std::uint64_t stream = 0);

struct SchmidtReadout {
  std::vector<double> index_order;  // c_j = sqrt(<j|rho_A|j>)
  std::vector<double> sorted;       // descending copy
};

SchmidtReadout readout_schmidt_coefficients(const DensityMatrix& rho_tilde_a);
/// c_j = sqrt(count_j / shots) from a sample of party A's outcomes.
SchmidtReadout readout_from_counts(std::span<const std::int64_t> counts);

/// sum_j |c_j - c'_j|^2 after sorting both descending and zero-padding.
double error_metric(std::span<const double> estimated,
                    std::span<const double> actual);

}  // namespace entvqa

#endif  // ENTVQA_COST_H_
