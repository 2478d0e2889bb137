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

#include "entvqa/cost.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>

namespace entvqa {

CostSpec::CostSpec(AnyState input, Bipartition part, Ansatz pqc_a,
                   std::optional<Ansatz> pqc_b, Subcircuit kind,
                   Circuit subcircuit, std::optional<std::int64_t> shots,
                   std::uint64_t seed)
    : input_(std::move(input)),
      part_(part),
      pqc_a_(std::move(pqc_a)),
      pqc_b_(std::move(pqc_b)),
      kind_(kind),
      subcircuit_(std::move(subcircuit)),
      inverse_subcircuit_(inverse(subcircuit_)),
      shots_(shots),
      seed_(seed) {
  const int n = n_qubits_of(input_);
  if (part_.n_a < 1 || part_.n_b < 1 || part_.total() != n) {
    throw std::invalid_argument("cost: bipartition does not match input");
  }
  if (pqc_a_.n_qubits() != part_.n_a) {
    throw std::invalid_argument("cost: PQC_A width differs from party A");
  }
  if (pqc_b_ && pqc_b_->n_qubits() != part_.n_b) {
    throw std::invalid_argument("cost: PQC_B width differs from party B");
  }
  if (subcircuit_.n_qubits() != n) {
    throw std::invalid_argument("cost: subcircuit width differs from input");
  }
  if (kind_ == Subcircuit::kW && !pqc_b_) {
    throw std::invalid_argument("cost: subcircuit W needs a PQC on party B");
  }
  if (kind_ == Subcircuit::kWPrime && pqc_b_) {
    throw std::invalid_argument("cost: subcircuit W' takes no PQC on B");
  }
  if (shots_ && *shots_ < 1) {
    throw std::invalid_argument("cost: shots must be positive");
  }
}

CostSpec CostSpec::schmidt(AnyState input, Bipartition part, Ansatz pqc_a,
                           Ansatz pqc_b, const WaParams& wa,
                           std::optional<std::int64_t> shots,
                           std::uint64_t seed) {
  Circuit w = build_w(part, wa);
  return CostSpec(std::move(input), part, std::move(pqc_a), std::move(pqc_b),
                  Subcircuit::kW, std::move(w), shots, seed);
}

CostSpec CostSpec::max_entangled(AnyState input, Bipartition part,
                                 Ansatz pqc_a,
                                 std::optional<std::int64_t> shots,
                                 std::uint64_t seed) {
  Circuit w = build_w_prime(part);
  return CostSpec(std::move(input), part, std::move(pqc_a), std::nullopt,
                  Subcircuit::kWPrime, std::move(w), shots, seed);
}

std::size_t CostSpec::n_params() const {
  return pqc_a_.n_params() + (pqc_b_ ? pqc_b_->n_params() : 0);
}

CostSpec CostSpec::exact() const {
  CostSpec out = *this;
  out.shots_.reset();
  return out;
}

Circuit CostSpec::bound_pqc(std::span<const double> theta) const {
  if (theta.size() != n_params()) {
    throw std::invalid_argument("cost: expected " +
                                std::to_string(n_params()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
  const int n = part_.total();
  Circuit c = pqc_a_.bind(theta.first(pqc_a_.n_params())).embedded(n, 0);
  if (pqc_b_) {
    c.append(pqc_b_->bind(theta.subspan(pqc_a_.n_params()))
                 .embedded(n, part_.n_a));
  }
  return c;
}

AnyState transformed_state(const CostSpec& spec,
                           std::span<const double> theta) {
  return apply_any(spec.bound_pqc(theta), spec.input());
}

std::uint64_t sample_seed(const CostSpec& spec, std::span<const double> theta,
                          std::uint64_t stream) {
  // FNV-1a over the parameter bits.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double t : theta) {
    std::uint64_t bits;
    std::memcpy(&bits, &t, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return derive_seed(derive_seed(spec.seed(), stream), h);
}

double evaluate_cost(const CostSpec& spec, std::span<const double> theta,
                     std::uint64_t stream) {
  Circuit c = spec.bound_pqc(theta);
  c.append(spec.inverse_subcircuit());
  const AnyState out = apply_any(c, spec.input());
  if (!spec.shots()) {
    if (const auto* psi = std::get_if<StateVector>(&out)) {
      return std::norm((*psi)[0]);
    }
    return std::clamp(std::get<DensityMatrix>(out).matrix()(0, 0).real(), 0.0,
                      1.0);
  }
  std::vector<double> probs = measure_probabilities(out);
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  const auto counts =
      sample_counts(probs, *spec.shots(), sample_seed(spec, theta, stream));
  return static_cast<double>(counts[0]) / static_cast<double>(*spec.shots());
}

Objective make_objective(const CostSpec& spec, std::uint64_t stream) {
  return [spec, stream](std::span<const double> theta) {
    return evaluate_cost(spec, theta, stream);
  };
}

namespace {

SchmidtReadout finish_readout(std::vector<double> index_order) {
  SchmidtReadout r;
  r.sorted = index_order;
  std::sort(r.sorted.begin(), r.sorted.end(), std::greater<>());
  r.index_order = std::move(index_order);
  return r;
}

}  // namespace

SchmidtReadout readout_schmidt_coefficients(const DensityMatrix& rho_tilde_a) {
  const std::vector<double> probs = measure_probabilities(rho_tilde_a);
  std::vector<double> c(probs.size());
  for (std::size_t j = 0; j < probs.size(); ++j) c[j] = std::sqrt(probs[j]);
  return finish_readout(std::move(c));
}

SchmidtReadout readout_from_counts(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto k : counts) total += k;
  if (total <= 0) throw std::invalid_argument("readout: empty sample");
  std::vector<double> c(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    c[j] = std::sqrt(static_cast<double>(counts[j]) /
                     static_cast<double>(total));
  }
  return finish_readout(std::move(c));
}

double error_metric(std::span<const double> estimated,
                    std::span<const double> actual) {
  const std::size_t n = std::max(estimated.size(), actual.size());
  std::vector<double> a(estimated.begin(), estimated.end());
  std::vector<double> b(actual.begin(), actual.end());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j) err += (a[j] - b[j]) * (a[j] - b[j]);
  return err;
}

}  // namespace entvqa
