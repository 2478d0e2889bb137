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

#include "entvqa/qstate.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace entvqa {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

std::int64_t dim_of(int n_qubits) { return std::int64_t{1} << n_qubits; }

void check_partition(int n_qubits, Bipartition part) {
  if (part.n_a < 1 || part.n_b < 1 || part.total() != n_qubits) {
    throw std::invalid_argument(
        "bipartition (" + std::to_string(part.n_a) + ", " +
        std::to_string(part.n_b) + ") does not match a " +
        std::to_string(n_qubits) + "-qubit state");
  }
}

CVector complex_gaussian(std::int64_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

}  // namespace

StateVector::StateVector(int n_qubits, CVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  if (amplitudes_.size() != dim_of(n_qubits_)) {
    throw std::invalid_argument("state vector length " +
                                std::to_string(amplitudes_.size()) +
                                " is not 2^" + std::to_string(n_qubits_));
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kValidationTol) {
    throw std::invalid_argument("state vector is not normalized (norm " +
                                std::to_string(norm) + ")");
  }
}

StateVector StateVector::basis(int n_qubits, std::int64_t index) {
  check_qubit_count(n_qubits);
  if (index < 0 || index >= dim_of(n_qubits)) {
    throw std::invalid_argument("basis index out of range");
  }
  CVector v = CVector::Zero(dim_of(n_qubits));
  v[index] = 1.0;
  return StateVector(Trusted{}, n_qubits, std::move(v));
}

StateVector StateVector::normalized(int n_qubits, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("cannot normalize a zero vector");
  }
  amplitudes /= norm;
  return StateVector(n_qubits, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(int n_qubits, CMatrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits_);
  const std::int64_t d = dim_of(n_qubits_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kValidationTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kValidationTol) {
    throw std::invalid_argument("density matrix trace is " +
                                std::to_string(tr.real()) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kValidationTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const CVector& v = psi.amplitudes();
  return DensityMatrix(Trusted{}, psi.n_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubit_count(n_qubits);
  const std::int64_t d = dim_of(n_qubits);
  return DensityMatrix(Trusted{}, n_qubits,
                       CMatrix::Identity(d, d) / static_cast<double>(d));
}

StateVector make_trusted_state(int n_qubits, CVector amplitudes) {
  return StateVector(StateVector::Trusted{}, n_qubits, std::move(amplitudes));
}

DensityMatrix make_trusted_density(int n_qubits, CMatrix matrix) {
  return DensityMatrix(DensityMatrix::Trusted{}, n_qubits, std::move(matrix));
}

int n_qubits_of(const AnyState& state) {
  return std::visit([](const auto& s) { return s.n_qubits(); }, state);
}

DensityMatrix to_density(const AnyState& state) {
  if (const auto* psi = std::get_if<StateVector>(&state)) {
    return DensityMatrix::from_pure(*psi);
  }
  return std::get<DensityMatrix>(state);
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  check_qubit_count(a.n_qubits() + b.n_qubits());
  const CVector& x = a.amplitudes();
  const CVector& y = b.amplitudes();
  CVector out(x.size() * y.size());
  for (std::int64_t i = 0; i < x.size(); ++i) {
    out.segment(i * y.size(), y.size()) = x[i] * y;
  }
  return make_trusted_state(a.n_qubits() + b.n_qubits(), std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  check_qubit_count(a.n_qubits() + b.n_qubits());
  const CMatrix& x = a.matrix();
  const CMatrix& y = b.matrix();
  const std::int64_t db = y.rows();
  CMatrix out(x.rows() * db, x.cols() * db);
  for (std::int64_t i = 0; i < x.rows(); ++i) {
    for (std::int64_t j = 0; j < x.cols(); ++j) {
      out.block(i * db, j * db, db, db) = x(i, j) * y;
    }
  }
  return make_trusted_density(a.n_qubits() + b.n_qubits(), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Bipartition part,
                            Party keep) {
  check_partition(rho.n_qubits(), part);
  const std::int64_t da = part.dim_a();
  const std::int64_t db = part.dim_b();
  const CMatrix& m = rho.matrix();
  if (keep == Party::kA) {
    CMatrix out = CMatrix::Zero(da, da);
    for (std::int64_t i = 0; i < da; ++i) {
      for (std::int64_t j = 0; j < da; ++j) {
        out(i, j) = m.block(i * db, j * db, db, db).trace();
      }
    }
    return make_trusted_density(part.n_a, std::move(out));
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (std::int64_t k = 0; k < da; ++k) {
    out += m.block(k * db, k * db, db, db);
  }
  return make_trusted_density(part.n_b, std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, Bipartition part,
                            Party keep) {
  check_partition(psi.n_qubits(), part);
  // Row-major matricization: X(i, j) = psi[i * d_B + j].
  const CVector& v = psi.amplitudes();
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      x(v.data(), part.dim_a(), part.dim_b());
  if (keep == Party::kA) {
    return make_trusted_density(part.n_a, x * x.adjoint());
  }
  return make_trusted_density(part.n_b, (x.adjoint() * x).transpose());
}

double fidelity_pure(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  return std::abs(phi.amplitudes().dot(psi.amplitudes()));
}

double overlap_with_pure(const DensityMatrix& rho, const StateVector& phi) {
  if (rho.dim() != phi.dim()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  const CVector& v = phi.amplitudes();
  return v.dot(rho.matrix() * v).real();
}

std::vector<double> measure_probabilities(const StateVector& state) {
  const CVector& v = state.amplitudes();
  std::vector<double> p(v.size());
  for (std::int64_t i = 0; i < v.size(); ++i) p[i] = std::norm(v[i]);
  return p;
}

std::vector<double> measure_probabilities(const DensityMatrix& state) {
  const CMatrix& m = state.matrix();
  std::vector<double> p(m.rows());
  for (std::int64_t i = 0; i < m.rows(); ++i) {
    p[i] = std::max(0.0, m(i, i).real());
  }
  return p;
}

std::vector<double> measure_probabilities(const AnyState& state) {
  return std::visit([](const auto& s) { return measure_probabilities(s); },
                    state);
}

std::vector<std::int64_t> sample_counts(std::span<const double> probs,
                                        std::int64_t shots,
                                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw std::invalid_argument("negative probability in sample_counts");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("probabilities do not sum to 1");
  }
  // Conditional binomial decomposition of the multinomial.
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> counts(probs.size(), 0);
  std::int64_t remaining = shots;
  double mass = total;
  for (std::size_t i = 0; i < probs.size() && remaining > 0; ++i) {
    if (i + 1 == probs.size() || mass <= 0.0) {
      counts[i] = remaining;
      break;
    }
    const double q = std::clamp(probs[i] / mass, 0.0, 1.0);
    std::binomial_distribution<std::int64_t> binom(remaining, q);
    counts[i] = binom(rng);
    remaining -= counts[i];
    mass -= probs[i];
  }
  return counts;
}

StateVector max_entangled_state(int n_per_party) {
  check_qubit_count(2 * n_per_party);
  const std::int64_t d = dim_of(n_per_party);
  CVector v = CVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::int64_t j = 0; j < d; ++j) v[j * d + j] = amp;
  return make_trusted_state(2 * n_per_party, std::move(v));
}

bool equal_up_to_global_phase(const CVector& a, const CVector& b,
                              double tol) {
  if (a.size() != b.size()) return false;
  Eigen::Index k = 0;
  b.cwiseAbs().maxCoeff(&k);
  if (std::abs(b[k]) <= tol) return a.cwiseAbs().maxCoeff() <= tol;
  const Complex ratio = a[k] / b[k];
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  const Complex phase = ratio / std::abs(ratio);
  return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

StateVector haar_random_state(int n_qubits, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  std::mt19937_64 rng(seed);
  return StateVector::normalized(n_qubits,
                                 complex_gaussian(dim_of(n_qubits), rng));
}

CMatrix haar_random_unitary(std::int64_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix g(dim, dim);
  for (std::int64_t c = 0; c < dim; ++c) g.col(c) = complex_gaussian(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the result is Haar distributed.
  for (std::int64_t i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

DensityMatrix random_mixed_state(int n_qubits, int rank, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  const std::int64_t d = dim_of(n_qubits);
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("rank out of range for random_mixed_state");
  }
  std::mt19937_64 rng(seed);
  CMatrix g(d, rank);
  for (int c = 0; c < rank; ++c) g.col(c) = complex_gaussian(d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return make_trusted_density(n_qubits, std::move(rho));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace entvqa
