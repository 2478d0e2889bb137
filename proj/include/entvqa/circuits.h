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

#ifndef ENTVQA_CIRCUITS_H_
#define ENTVQA_CIRCUITS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entvqa/qstate.h"

namespace entvqa {

enum class GateKind { kH, kX, kZ, kCNOT, kCZ, kRy, kRz, kU3 };

std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// Gate conventions:
///   Ry(a) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]]
///   Rz(a) = diag(e^{-ia/2}, e^{ia/2})
///   U3(theta, phi, lambda) = Rz(phi) Ry(theta) Rz(lambda)
/// Two-qubit gates list (control, target); the first target is the more
/// significant factor of the 4x4 matrix.
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::vector<double> params;

  /// Checks parameter and target arity.
  static Gate make(GateKind kind, std::vector<int> targets,
                   std::vector<double> params = {});

  static Gate h(int q) { return make(GateKind::kH, {q}); }
  static Gate x(int q) { return make(GateKind::kX, {q}); }
  static Gate z(int q) { return make(GateKind::kZ, {q}); }
  static Gate cnot(int c, int t) { return make(GateKind::kCNOT, {c, t}); }
  static Gate cz(int a, int b) { return make(GateKind::kCZ, {a, b}); }
  static Gate ry(int q, double a) { return make(GateKind::kRy, {q}, {a}); }
  static Gate rz(int q, double a) { return make(GateKind::kRz, {q}, {a}); }
  static Gate u3(int q, double theta, double phi, double lambda) {
    return make(GateKind::kU3, {q}, {theta, phi, lambda});
  }

  bool operator==(const Gate&) const = default;
};

/// 2x2 or 4x4 unitary of the gate.
CMatrix gate_matrix(const Gate& g);
Gate adjoint(const Gate& g);

class Circuit {
 public:
  explicit Circuit(int n_qubits);
  Circuit(int n_qubits, std::vector<Gate> gates);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Appends a gate; every target must be < n_qubits.
  Circuit& add(Gate g);
  Circuit& append(const Circuit& other);
  /// Same gates acting on qubits [offset, offset + n_qubits) of a wider
  /// register.
  Circuit embedded(int total_qubits, int offset) const;
  /// Number of layers when gates on disjoint qubits are packed greedily.
  int depth() const;

  bool operator==(const Circuit&) const = default;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

Circuit inverse(const Circuit& c);

StateVector apply(const Circuit& c, const StateVector& s);
DensityMatrix apply_density(const Circuit& c, const DensityMatrix& r);
AnyState apply_any(const Circuit& c, const AnyState& s);

// In-place kernels shared with the channel code. `data` holds one state
// vector of 2^n_qubits amplitudes; `apply_gate_columns` treats each column of
// a matrix as such a vector.
void apply_gate_inplace(const Gate& g, int n_qubits, CVector& data);
void apply_gate_columns(const Gate& g, int n_qubits, CMatrix& data);
void apply_1q_inplace(const Eigen::Matrix2cd& u, int qubit, int n_qubits,
                      Complex* data);

/// Position of one trainable angle inside an ansatz template.
struct ParamSlot {
  std::size_t gate_index;
  std::size_t angle_index;
  bool operator==(const ParamSlot&) const = default;
};

enum class Entangler { kCNOT, kCZ };

std::string_view entangler_name(Entangler e);
Entangler parse_entangler(std::string_view name);

/// Parameterized circuit: a template whose angle slots are filled by bind().
/// Each parameter occupies exactly one slot.
class Ansatz {
 public:
  Ansatz(Circuit templ, std::vector<ParamSlot> slots);

  int n_qubits() const { return template_.n_qubits(); }
  std::size_t n_params() const { return slots_.size(); }
  const Circuit& circuit_template() const { return template_; }
  const std::vector<ParamSlot>& slots() const { return slots_; }

  Circuit bind(std::span<const double> theta) const;

 private:
  Circuit template_;
  std::vector<ParamSlot> slots_;
};

/// `depth` repetitions of [U3 on every qubit; entangler on (i, i+1)].
Ansatz hardware_efficient_ansatz(int n_qubits, int depth,
                                 Entangler entangler = Entangler::kCNOT);

/// Rotation angles of the product-of-Ry circuit that prepares
/// sum_j p_j |j> with p_j strictly decreasing in j.
///
/// beta is built backwards from (beta_n, beta_{n-1}) by
/// beta_j = prod_{k>j} beta_k + delta, then gamma_j = beta_j / (beta_j + 1)
/// and alpha_j = 2 arccos(sqrt(gamma_j)). Index 0 is the most significant
/// qubit.
struct WaParams {
  int n = 0;
  std::vector<double> beta;
  std::vector<double> gamma;
  /// 1 - gamma_j, kept separately since gamma_j rounds to 1 for large n.
  std::vector<double> one_minus_gamma;
  std::vector<double> alpha;
};

inline constexpr double kDefaultBetaN = 2.0;
inline constexpr double kDefaultBetaNm1 = 3.0;
inline constexpr double kDefaultDeltaBeta = 1.0;

WaParams build_wa_params(int n, double beta_n = kDefaultBetaN,
                         double beta_nm1 = kDefaultBetaNm1,
                         double delta = kDefaultDeltaBeta);

/// The 2^n amplitudes p_j induced by the Ry layer.
std::vector<double> wa_amplitudes(const WaParams& wa);

/// Ry(alpha_j) on A-qubit j, then CNOT(A_j -> B_j).
Circuit build_w(Bipartition part, const WaParams& wa);
/// H on every A-qubit, then CNOT(A_j -> B_j); prepares the maximally
/// entangled state from |0...0>.
Circuit build_w_prime(Bipartition part);

/// (1/sqrt r) sum_{j<r} |j>_A |j>_B on 2n qubits.
StateVector prepare_rank_r_state(int n, std::int64_t r);

/// Ry(0.58) on qubit 0, Ry(1.58) on qubit 1, then CZ.
Circuit reference_2q_circuit();
StateVector prepare_paper_2q_state();

}  // namespace entvqa

#endif  // ENTVQA_CIRCUITS_H_
