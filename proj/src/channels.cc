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

#include "entvqa/channels.h"

#include <cmath>
#include <stdexcept>

#include "entvqa/circuits.h"

namespace entvqa {

namespace {

void check_level(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("noise level must lie in [0, 1), got " +
                                std::to_string(p));
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Eigen::Matrix2cd> kraus,
                           std::string label, double level)
    : kraus_(std::move(kraus)), label_(std::move(label)), level_(level) {
  if (kraus_.empty()) throw std::invalid_argument("empty Kraus set");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  if ((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Kraus operators are not trace preserving");
  }
}

KrausChannel amplitude_damping(double p) {
  check_level(p);
  Eigen::Matrix2cd e0, e1;
  e0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - p);
  e1 << 0.0, std::sqrt(p), 0.0, 0.0;
  return KrausChannel({e0, e1}, "amplitude_damping", p);
}

KrausChannel depolarizing(double p) {
  check_level(p);
  const double a = std::sqrt(1.0 - 3.0 * p / 4.0);
  const double b = std::sqrt(p / 4.0);
  Eigen::Matrix2cd i, x, y, z;
  i << a, 0.0, 0.0, a;
  x << 0.0, b, b, 0.0;
  y << 0.0, Complex(0.0, -b), Complex(0.0, b), 0.0;
  z << b, 0.0, 0.0, -b;
  return KrausChannel({i, x, y, z}, "depolarizing", p);
}

std::string_view noise_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kAmplitudeDamping: return "ad";
    case NoiseKind::kDepolarizing: return "depolarizing";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "none") return NoiseKind::kNone;
  if (name == "ad" || name == "amplitude_damping") {
    return NoiseKind::kAmplitudeDamping;
  }
  if (name == "depolarizing" || name == "depol") return NoiseKind::kDepolarizing;
  throw std::invalid_argument("unknown noise kind '" + std::string(name) +
                              "'");
}

KrausChannel make_channel(NoiseKind kind, double level) {
  switch (kind) {
    case NoiseKind::kAmplitudeDamping: return amplitude_damping(level);
    case NoiseKind::kDepolarizing: return depolarizing(level);
    case NoiseKind::kNone: break;
  }
  throw std::invalid_argument("no channel for noise kind 'none'");
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho,
                            int qubit) {
  const int n = rho.n_qubits();
  if (qubit < 0 || qubit >= n) {
    throw std::invalid_argument("channel qubit index out of range");
  }
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : ch.kraus()) {
    // K rho K^dagger = (K (K rho)^dagger)^dagger
    CMatrix m = rho.matrix();
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      apply_1q_inplace(k, qubit, n, m.col(c).data());
    }
    CMatrix t = m.adjoint();
    for (std::int64_t c = 0; c < t.cols(); ++c) {
      apply_1q_inplace(k, qubit, n, t.col(c).data());
    }
    out += t.adjoint();
  }
  return make_trusted_density(n, std::move(out));
}

DensityMatrix apply_channel_all(const KrausChannel& ch,
                                const DensityMatrix& rho) {
  DensityMatrix out = rho;
  for (int q = 0; q < rho.n_qubits(); ++q) out = apply_channel(ch, out, q);
  return out;
}

}  // namespace entvqa
