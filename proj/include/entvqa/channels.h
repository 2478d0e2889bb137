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

#ifndef ENTVQA_CHANNELS_H_
#define ENTVQA_CHANNELS_H_

#include <string>
#include <string_view>
#include <vector>

#include "entvqa/qstate.h"

namespace entvqa {

/// Trace-preserving single-qubit channel rho -> sum_k K_k rho K_k^dagger.
class KrausChannel {
 public:
  /// Throws unless sum_k K_k^dagger K_k = I within 1e-10.
  KrausChannel(std::vector<Eigen::Matrix2cd> kraus, std::string label,
               double level);

  const std::vector<Eigen::Matrix2cd>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }
  double level() const { return level_; }

 private:
  std::vector<Eigen::Matrix2cd> kraus_;
  std::string label_;
  double level_;
};

/// E0 = diag(1, sqrt(1-p)), E1 = sqrt(p) |0><1|; 0 <= p < 1.
KrausChannel amplitude_damping(double p);
/// (1-p) rho + p I/2, realized with the Pauli Kraus set; 0 <= p < 1.
KrausChannel depolarizing(double p);

enum class NoiseKind { kNone, kAmplitudeDamping, kDepolarizing };

std::string_view noise_name(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view name);
/// Throws for NoiseKind::kNone.
KrausChannel make_channel(NoiseKind kind, double level);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho,
                            int qubit);
/// The same channel on every qubit in turn.
DensityMatrix apply_channel_all(const KrausChannel& ch,
                                const DensityMatrix& rho);

}  // namespace entvqa

#endif  // ENTVQA_CHANNELS_H_
