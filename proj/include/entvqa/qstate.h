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

#ifndef ENTVQA_QSTATE_H_
#define ENTVQA_QSTATE_H_

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace entvqa {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Tolerance used when validating user-supplied states.
inline constexpr double kValidationTol = 1e-8;
/// Hard upper bound on simulated register size.
inline constexpr int kMaxQubits = 16;

/// Split of a register into party A (leading, most-significant qubits) and
/// party B (trailing qubits).
struct Bipartition {
  int n_a = 0;
  int n_b = 0;

  static Bipartition symmetric(int n) { return {n, n}; }
  int total() const { return n_a + n_b; }
  std::int64_t dim_a() const { return std::int64_t{1} << n_a; }
  std::int64_t dim_b() const { return std::int64_t{1} << n_b; }
  bool operator==(const Bipartition&) const = default;
};

enum class Party { kA, kB };

/// Normalized pure state on n qubits. Qubit 0 is the most significant bit of
/// the basis index.
class StateVector {
 public:
  /// Validates length and normalization (within kValidationTol).
  StateVector(int n_qubits, CVector amplitudes);

  /// |index> in the computational basis.
  static StateVector basis(int n_qubits, std::int64_t index);
  /// |0...0>.
  static StateVector zero(int n_qubits) { return basis(n_qubits, 0); }
  /// Rescales an arbitrary nonzero vector to unit norm.
  static StateVector normalized(int n_qubits, CVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::int64_t i) const { return amplitudes_[i]; }

 private:
  struct Trusted {};
  StateVector(Trusted, int n_qubits, CVector amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}
  friend StateVector make_trusted_state(int, CVector);

  int n_qubits_;
  CVector amplitudes_;
};

/// Density operator on n qubits.
class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace, and positivity (min eigenvalue
  /// >= -kValidationTol).
  DensityMatrix(int n_qubits, CMatrix matrix);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  struct Trusted {};
  DensityMatrix(Trusted, int n_qubits, CMatrix matrix)
      : n_qubits_(n_qubits), matrix_(std::move(matrix)) {}
  friend DensityMatrix make_trusted_density(int, CMatrix);

  int n_qubits_;
  CMatrix matrix_;
};

// Skip validation. For values produced by norm/trace-preserving maps inside
// the library, where revalidating every intermediate would dominate runtime.
StateVector make_trusted_state(int n_qubits, CVector amplitudes);
DensityMatrix make_trusted_density(int n_qubits, CMatrix matrix);

using AnyState = std::variant<StateVector, DensityMatrix>;

int n_qubits_of(const AnyState& state);
DensityMatrix to_density(const AnyState& state);

StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the kept party.
DensityMatrix partial_trace(const DensityMatrix& rho, Bipartition part,
                            Party keep);
/// Same, without forming the full density matrix of a pure state.
DensityMatrix partial_trace(const StateVector& psi, Bipartition part,
                            Party keep);

/// |<phi|psi>|.
double fidelity_pure(const StateVector& psi, const StateVector& phi);
/// Tr[rho |phi><phi|].
double overlap_with_pure(const DensityMatrix& rho, const StateVector& phi);

/// Computational-basis outcome distribution.
std::vector<double> measure_probabilities(const StateVector& state);
std::vector<double> measure_probabilities(const DensityMatrix& state);
std::vector<double> measure_probabilities(const AnyState& state);

/// Multinomial draw of `shots` outcomes from `probs`, deterministic in seed.
std::vector<std::int64_t> sample_counts(std::span<const double> probs,
                                        std::int64_t shots,
                                        std::uint64_t seed);

/// (1/sqrt(d)) sum_j |j>_A |j>_B on 2n qubits, d = 2^n.
StateVector max_entangled_state(int n_per_party);

/// True when a = e^{i phi} b for some phi, elementwise within tol.
bool equal_up_to_global_phase(const CVector& a, const CVector& b,
                              double tol = 1e-10);

/// Haar-random pure state (normalized complex Gaussian vector).
StateVector haar_random_state(int n_qubits, std::uint64_t seed);
/// Haar-random d x d unitary (QR of a complex Ginibre matrix).
CMatrix haar_random_unitary(std::int64_t dim, std::uint64_t seed);
/// Random mixed state of the given rank (normalized Wishart).
DensityMatrix random_mixed_state(int n_qubits, int rank, std::uint64_t seed);

/// Mixes a master seed with a stream index (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace entvqa

#endif  // ENTVQA_QSTATE_H_
