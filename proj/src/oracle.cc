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

#include "entvqa/oracle.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace entvqa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

// Rotation matrices are rebuilt here rather than taken from the circuit
// module so the references stay independent of the simulator path.
Eigen::Matrix2cd rot_z(double a) {
  Eigen::Matrix2cd m;
  m << std::exp(-kI * (a / 2)), 0.0, 0.0, std::exp(kI * (a / 2));
  return m;
}

Eigen::Matrix2cd rot_y(double a) {
  Eigen::Matrix2cd m;
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

Eigen::Matrix2cd zyz(double z1, double y, double z2) {
  return rot_z(z1) * rot_y(y) * rot_z(z2);
}

int log2_dim(std::int64_t d) {
  if (d < 2 || (d & (d - 1)) != 0) {
    throw std::invalid_argument("local dimension must be a power of two >= 2");
  }
  int n = 0;
  while ((std::int64_t{1} << n) < d) ++n;
  return n;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix phi_plus_projector(std::int64_t d) {
  CVector v = CVector::Zero(d * d);
  for (std::int64_t j = 0; j < d; ++j) v[j * d + j] = 1.0 / std::sqrt(double(d));
  return v * v.adjoint();
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void check_bipartite(const DensityMatrix& rho, Bipartition part) {
  if (part.n_a < 1 || part.n_b < 1 || part.total() != rho.n_qubits()) {
    throw std::invalid_argument("bipartition does not match the state");
  }
}

void check_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo - 1e-12 && v <= hi + 1e-12)) {
    throw std::invalid_argument(std::string(what) + " out of range");
  }
}

}  // namespace

SchmidtDecomposition exact_schmidt(const StateVector& psi, Bipartition part) {
  if (part.n_a < 1 || part.n_b < 1 || part.total() != psi.n_qubits()) {
    throw std::invalid_argument("exact_schmidt: bipartition mismatch");
  }
  const CVector& v = psi.amplitudes();
  const CMatrix x = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic,
                                                   Eigen::Dynamic,
                                                   Eigen::RowMajor>>(
      v.data(), part.dim_a(), part.dim_b());
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // X = U S V^dagger  =>  psi = sum_k s_k u_k (x) conj(v_k)
  return SchmidtDecomposition{svd.singularValues(), svd.matrixU(),
                              svd.matrixV().conjugate()};
}

SchmidtDecomposition exact_schmidt(const AnyState& state, Bipartition part) {
  if (const auto* psi = std::get_if<StateVector>(&state)) {
    return exact_schmidt(*psi, part);
  }
  const DensityMatrix& rho = std::get<DensityMatrix>(state);
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  if (std::abs(purity - 1.0) > kValidationTol) {
    throw std::invalid_argument("exact_schmidt: input is not pure");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  const Eigen::Index top = es.eigenvalues().size() - 1;
  return exact_schmidt(
      StateVector::normalized(rho.n_qubits(), es.eigenvectors().col(top)),
      part);
}

double exact_log_negativity(const StateVector& psi, Bipartition part) {
  const double s = exact_schmidt(psi, part).coefficients.sum();
  return std::log2(s * s);
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kIsotropic: return "isotropic";
    case Family::kSState: return "s_state";
    case Family::kWerner2: return "werner2";
    case Family::kBpfBell: return "bpf_bell";
    case Family::kAdBell: return "ad_bell";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::kIsotropic, Family::kSState, Family::kWerner2,
                   Family::kBpfBell, Family::kAdBell}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown state family '" + std::string(name) +
                              "'");
}

void StateFamily::validate() const {
  const int n = log2_dim(local_dim);
  if (2 * n > kMaxQubits) throw std::invalid_argument("local_dim too large");
  const double d = static_cast<double>(local_dim);
  switch (family) {
    case Family::kIsotropic:
      check_range(p, -1.0 / (d * d - 1.0), 1.0, "isotropic p");
      break;
    case Family::kSState:
      check_range(p, 0.0, 1.0, "s_state p");
      break;
    case Family::kWerner2:
      if (local_dim != 2) throw std::invalid_argument("werner2 needs d = 2");
      check_range(alpha, -1.0, 1.0, "werner2 alpha");
      break;
    case Family::kBpfBell:
      if (local_dim != 2) throw std::invalid_argument("bpf_bell needs d = 2");
      check_range(p, 0.0, 1.0, "bpf_bell p");
      check_range(q, 0.0, 1.0, "bpf_bell q");
      break;
    case Family::kAdBell:
      if (local_dim != 2) throw std::invalid_argument("ad_bell needs d = 2");
      check_range(gamma, 0.0, 1.0, "ad_bell gamma");
      break;
  }
}

DensityMatrix build_family(const StateFamily& f) {
  f.validate();
  const std::int64_t d = f.local_dim;
  const int n_total = 2 * log2_dim(d);
  const CMatrix phi = phi_plus_projector(d);
  const CMatrix id = CMatrix::Identity(d * d, d * d);
  CMatrix rho;
  switch (f.family) {
    case Family::kIsotropic:
      rho = f.p * phi + (1.0 - f.p) * id / static_cast<double>(d * d);
      break;
    case Family::kSState: {
      CMatrix zero = CMatrix::Zero(d * d, d * d);
      zero(0, 0) = 1.0;
      rho = f.p * phi + (1.0 - f.p) * zero;
      break;
    }
    case Family::kWerner2: {
      CMatrix flip = CMatrix::Zero(4, 4);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) flip(j * 2 + i, i * 2 + j) = 1.0;
      }
      rho = ((2.0 - f.alpha) * id + (2.0 * f.alpha - 1.0) * flip) / 6.0;
      break;
    }
    case Family::kBpfBell: {
      CMatrix x(2, 2), z(2, 2);
      x << 0.0, 1.0, 1.0, 0.0;
      z << 1.0, 0.0, 0.0, -1.0;
      const CMatrix xa = kron(x, CMatrix::Identity(2, 2));
      const CMatrix za = kron(z, CMatrix::Identity(2, 2));
      const CMatrix rho1 = f.q * phi + (1.0 - f.q) * za * phi * za;
      rho = f.p * rho1 + (1.0 - f.p) * xa * rho1 * xa;
      break;
    }
    case Family::kAdBell: {
      CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2);
      e0(0, 0) = 1.0;
      e0(1, 1) = std::sqrt(1.0 - f.gamma);
      e1(0, 1) = std::sqrt(f.gamma);
      const CMatrix k0 = kron(e0, CMatrix::Identity(2, 2));
      const CMatrix k1 = kron(e1, CMatrix::Identity(2, 2));
      rho = k0 * phi * k0.adjoint() + k1 * phi * k1.adjoint();
      break;
    }
  }
  return DensityMatrix(n_total, std::move(rho));
}

double chi_closed_form(const StateFamily& f) {
  f.validate();
  const double d = static_cast<double>(f.local_dim);
  switch (f.family) {
    case Family::kIsotropic:
      // For p < 0 the best maximally entangled state is orthogonal to Phi+.
      return f.p >= 0.0 ? f.p + (1.0 - f.p) / (d * d) : (1.0 - f.p) / (d * d);
    case Family::kSState:
      return f.p + (1.0 - f.p) / d;
    case Family::kWerner2:
      return chi_closed_form(StateFamily{
          .family = Family::kIsotropic,
          .p = werner_equivalent_isotropic_p(f.alpha),
          .local_dim = 2});
    case Family::kBpfBell:
      // Bell-diagonal with weights {pq, p(1-q), (1-p)q, (1-p)(1-q)}; chi is
      // the largest weight.
      return std::max(f.p, 1.0 - f.p) * std::max(f.q, 1.0 - f.q);
    case Family::kAdBell:
      return (2.0 + 2.0 * std::sqrt(1.0 - f.gamma) - f.gamma) / 4.0;
  }
  throw std::invalid_argument("unsupported family");
}

CMatrix werner_to_isotropic_unitary() {
  CMatrix zx(2, 2);
  zx << 0.0, 1.0, -1.0, 0.0;  // Z * X
  return kron(CMatrix::Identity(2, 2), zx);
}

double werner_equivalent_isotropic_p(double alpha) {
  return (1.0 - 2.0 * alpha) / 3.0;
}

double brute_force_chi_2q(const DensityMatrix& rho, int grid) {
  if (rho.n_qubits() != 2) {
    throw std::invalid_argument("brute_force_chi_2q needs a two-qubit state");
  }
  if (grid < 1) throw std::invalid_argument("grid must be >= 1");
  const Eigen::Matrix4cd m = rho.matrix();
  auto overlap = [&m](const Eigen::Matrix2cd& u) {
    // (U x I)|Phi+> has amplitude U(i, j)/sqrt(2) at index 2i + j.
    Eigen::Vector4cd phi;
    phi << u(0, 0), u(0, 1), u(1, 0), u(1, 1);
    phi /= std::sqrt(2.0);
    return phi.dot(m * phi).real();
  };
  auto value = [&](const std::array<double, 3>& x) {
    return overlap(zyz(x[0], x[1], x[2]));
  };

  const double step0 = 2.0 * kPi / grid;
  std::vector<Eigen::Matrix2cd> rz(grid), ry(grid);
  for (int k = 0; k < grid; ++k) {
    rz[k] = rot_z(k * step0);
    ry[k] = rot_y(k * step0);
  }
  std::array<double, 3> best_x{0.0, 0.0, 0.0};
  double best = -1.0;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const Eigen::Matrix2cd ab = rz[a] * ry[b];
      for (int c = 0; c < grid; ++c) {
        const double v = overlap(ab * rz[c]);
        if (v > best) {
          best = v;
          best_x = {a * step0, b * step0, c * step0};
        }
      }
    }
  }
  // Compass search refinement.
  double step = step0;
  while (step > 1e-6) {
    bool improved = false;
    for (int k = 0; k < 3; ++k) {
      for (double sign : {1.0, -1.0}) {
        std::array<double, 3> trial = best_x;
        trial[k] += sign * step;
        const double v = value(trial);
        if (v > best) {
          best = v;
          best_x = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

DensityMatrix partial_transpose_a(const DensityMatrix& rho, Bipartition part) {
  check_bipartite(rho, part);
  const std::int64_t da = part.dim_a(), db = part.dim_b();
  const CMatrix& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (std::int64_t i = 0; i < da; ++i) {
    for (std::int64_t k = 0; k < da; ++k) {
      out.block(i * db, k * db, db, db) = m.block(k * db, i * db, db, db);
    }
  }
  return make_trusted_density(rho.n_qubits(), std::move(out));
}

double reduction_criterion(const DensityMatrix& rho, Bipartition part) {
  check_bipartite(rho, part);
  const DensityMatrix rho_b = partial_trace(rho, part, Party::kB);
  const CMatrix op =
      kron(CMatrix::Identity(part.dim_a(), part.dim_a()), rho_b.matrix()) -
      rho.matrix();
  return min_eigenvalue(op);
}

double ppt_criterion(const DensityMatrix& rho, Bipartition part) {
  return min_eigenvalue(partial_transpose_a(rho, part).matrix());
}

bool chi_threshold_verdict(double chi, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  return chi > 1.0 / static_cast<double>(d);
}

std::vector<double> nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, double step, double ftol, int max_evals) {
  const std::size_t n = x0.size();
  if (n == 0) return x0;
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  // Work with g = -f so the usual minimization steps apply.
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto g = [&](const std::vector<double>& x) {
    ++evals;
    return -f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) vals[i] = g(pts[i]);

  std::vector<std::size_t> order(n + 1);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t lo = order.front(), hi = order.back(),
                      second = order[n - 1];
    if (std::abs(vals[hi] - vals[lo]) < ftol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) {
        x[k] = centroid[k] + t * (pts[hi][k] - centroid[k]);
      }
      return x;
    };
    std::vector<double> xr = along(-1.0);
    const double fr = g(xr);
    if (fr < vals[lo]) {
      std::vector<double> xe = along(-2.0);
      const double fe = g(xe);
      if (fe < fr) {
        pts[hi] = std::move(xe);
        vals[hi] = fe;
      } else {
        pts[hi] = std::move(xr);
        vals[hi] = fr;
      }
    } else if (fr < vals[second]) {
      pts[hi] = std::move(xr);
      vals[hi] = fr;
    } else {
      const bool outside = fr < vals[hi];
      std::vector<double> xc = along(outside ? -0.5 : 0.5);
      const double fc = g(xc);
      if (fc < std::min(fr, vals[hi])) {
        pts[hi] = std::move(xc);
        vals[hi] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (std::size_t k = 0; k < n; ++k) {
            pts[i][k] = pts[lo][k] + 0.5 * (pts[i][k] - pts[lo][k]);
          }
          vals[i] = g(pts[i]);
        }
      }
    }
  }
  const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  return pts[best];
}

BruteForceSchmidt brute_force_schmidt_2q(const DensityMatrix& rho,
                                         const WaParams& wa, int starts,
                                         std::uint64_t seed) {
  if (rho.n_qubits() != 2 || wa.n != 1) {
    throw std::invalid_argument(
        "brute_force_schmidt_2q needs a two-qubit state and one-qubit W_A");
  }
  Eigen::Vector4cd target = Eigen::Vector4cd::Zero();
  target[0] = std::sqrt(wa.gamma[0]);
  target[3] = std::sqrt(wa.one_minus_gamma[0]);
  const Eigen::Matrix4cd m = rho.matrix();

  auto rotated = [&m](std::span<const double> x) -> Eigen::Matrix4cd {
    const Eigen::Matrix2cd u = zyz(x[0], x[1], x[2]);
    const Eigen::Matrix2cd v = zyz(x[3], x[4], x[5]);
    Eigen::Matrix4cd uv;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) uv.block<2, 2>(2 * i, 2 * j) = u(i, j) * v;
    }
    return uv * m * uv.adjoint();
  };
  auto cost = [&](std::span<const double> x) {
    return target.dot(rotated(x) * target).real();
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  BruteForceSchmidt best;
  best.cost = -1.0;
  for (int s = 0; s < starts; ++s) {
    std::vector<double> x0(6);
    for (double& v : x0) v = uni(rng);
    std::vector<double> x = nelder_mead_maximize(cost, x0, 0.6, 1e-15, 6000);
    // Polish from a fresh simplex.
    x = nelder_mead_maximize(cost, x, 0.05, 1e-16, 6000);
    const double c = cost(x);
    if (c > best.cost) {
      best.cost = c;
      std::copy(x.begin(), x.end(), best.angles.begin());
    }
  }
  const Eigen::Matrix4cd r = rotated(best.angles);
  std::vector<double> coeffs = {
      std::sqrt(std::max(0.0, (r(0, 0) + r(1, 1)).real())),
      std::sqrt(std::max(0.0, (r(2, 2) + r(3, 3)).real()))};
  std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
  best.coefficients = std::move(coeffs);
  return best;
}

}  // namespace entvqa
