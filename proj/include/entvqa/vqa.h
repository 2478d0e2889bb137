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

// End-to-end drivers: variational Schmidt decomposition, log-negativity
// estimation and entanglement detection.

#ifndef ENTVQA_VQA_H_
#define ENTVQA_VQA_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "entvqa/circuits.h"
#include "entvqa/cost.h"
#include "entvqa/optim.h"
#include "entvqa/qstate.h"

namespace entvqa {

struct AnsatzConfig {
  int depth = 1;
  Entangler entangler = Entangler::kCNOT;

  void validate() const;
};

/// Two coefficients closer than this are treated as degenerate.
inline constexpr double kDegeneracyGap = 1e-4;

struct SchmidtResult {
  std::vector<double> coefficients;              // descending
  std::vector<double> coefficients_index_order;  // c_j for outcome j of A
  /// Inverse of the trained PQC on each party; applied to |j> it prepares
  /// the j-th basis vector up to a global phase.
  Circuit basis_a{1};
  Circuit basis_b{1};
  /// degenerate[j] is set when c_j (index order) has a partner within
  /// kDegeneracyGap; its basis vector is then not well defined.
  std::vector<bool> degenerate;
  /// Squared L2 distance to the SVD coefficients; only for pure inputs.
  std::optional<double> error_vs_oracle;
  double final_cost = 0.0;
  OptimTrace trace;

  /// |j> preparation followed by the party's basis circuit, or nothing for
  /// a degenerate index.
  std::optional<Circuit> basis_circuit(Party party, std::int64_t j) const;
};

/// Trains PQC_A (x) PQC_B against W and reads c_j = sqrt(Pr[b = j]) from the
/// A register of the trained state. Requires n_a == n_b == wa.n. The initial
/// parameters come from optim_cfg.seed; shot sampling uses the same seed.
SchmidtResult schmidt_decompose(const AnyState& input, Bipartition part,
                                const AnsatzConfig& ansatz_cfg,
                                const OptimConfig& optim_cfg,
                                const WaParams& wa,
                                std::optional<std::int64_t> shots = {});

struct LogNegResult {
  double log_negativity = 0.0;
  /// Best exact cost over the run, or a fresh sample at the final
  /// parameters in shot mode.
  double c_max = 0.0;
  OptimTrace trace;
};

/// One-sided PQC against W': E_N = log2(C_max) + n_a.
LogNegResult estimate_log_negativity(const StateVector& input,
                                     Bipartition part,
                                     const AnsatzConfig& ansatz_cfg,
                                     const OptimConfig& optim_cfg,
                                     std::optional<std::int64_t> shots = {});

/// Slack above 1/d required in exact mode, to absorb rounding.
inline constexpr double kExactDetectionMargin = 1e-9;

struct DetectionResult {
  bool detected = false;
  double chi_lower_bound = 0.0;  // max observed cost
  double threshold = 0.0;        // 1/d
  double margin = 0.0;
  bool halted_early = false;
  OptimTrace trace;
};

/// Same circuit as the log-negativity driver, run on a density matrix. Stops
/// as soon as the cost exceeds 1/d + margin, where margin is
/// kExactDetectionMargin in exact mode and margin_sigmas binomial standard
/// errors (at the threshold) with shots.
DetectionResult detect_entanglement(const DensityMatrix& input,
                                    Bipartition part,
                                    const AnsatzConfig& ansatz_cfg,
                                    const OptimConfig& optim_cfg,
                                    std::optional<std::int64_t> shots = {},
                                    double margin_sigmas = 3.0);

}  // namespace entvqa

#endif  // ENTVQA_VQA_H_
