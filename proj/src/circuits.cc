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

#include "entvqa/circuits.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace entvqa {

namespace {

constexpr Complex kI(0.0, 1.0);

std::size_t param_arity(GateKind kind) {
  switch (kind) {
    case GateKind::kRy:
    case GateKind::kRz:
      return 1;
    case GateKind::kU3:
      return 3;
    default:
      return 0;
  }
}

std::size_t target_arity(GateKind kind) {
  return (kind == GateKind::kCNOT || kind == GateKind::kCZ) ? 2 : 1;
}

Eigen::Matrix2cd ry_matrix(double a) {
  const double c = std::cos(a / 2), s = std::sin(a / 2);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return m;
}

Eigen::Matrix2cd rz_matrix(double a) {
  Eigen::Matrix2cd m;
  m << std::exp(-kI * (a / 2)), 0.0, 0.0, std::exp(kI * (a / 2));
  return m;
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& g) {
  Eigen::Matrix2cd m;
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::kH:
      m << r, r, r, -r;
      return m;
    case GateKind::kX:
      m << 0.0, 1.0, 1.0, 0.0;
      return m;
    case GateKind::kZ:
      m << 1.0, 0.0, 0.0, -1.0;
      return m;
    case GateKind::kRy:
      return ry_matrix(g.params[0]);
    case GateKind::kRz:
      return rz_matrix(g.params[0]);
    case GateKind::kU3:
      return rz_matrix(g.params[1]) * ry_matrix(g.params[0]) *
             rz_matrix(g.params[2]);
    default:
      throw std::logic_error("not a single-qubit gate");
  }
}

std::int64_t bit_of(int qubit, int n_qubits) {
  return std::int64_t{1} << (n_qubits - 1 - qubit);
}

void apply_cnot_inplace(int control, int target, int n_qubits,
                        Complex* data) {
  const std::int64_t cb = bit_of(control, n_qubits);
  const std::int64_t tb = bit_of(target, n_qubits);
  const std::int64_t d = std::int64_t{1} << n_qubits;
  for (std::int64_t i = 0; i < d; ++i) {
    if ((i & cb) && !(i & tb)) std::swap(data[i], data[i | tb]);
  }
}

void apply_cz_inplace(int a, int b, int n_qubits, Complex* data) {
  const std::int64_t mask = bit_of(a, n_qubits) | bit_of(b, n_qubits);
  const std::int64_t d = std::int64_t{1} << n_qubits;
  for (std::int64_t i = 0; i < d; ++i) {
    if ((i & mask) == mask) data[i] = -data[i];
  }
}

void apply_gate_raw(const Gate& g, const Eigen::Matrix2cd* u1, int n_qubits,
                    Complex* data) {
  switch (g.kind) {
    case GateKind::kCNOT:
      apply_cnot_inplace(g.targets[0], g.targets[1], n_qubits, data);
      return;
    case GateKind::kCZ:
      apply_cz_inplace(g.targets[0], g.targets[1], n_qubits, data);
      return;
    default:
      apply_1q_inplace(*u1, g.targets[0], n_qubits, data);
  }
}

void check_gate_fits(const Gate& g, int n_qubits) {
  for (int t : g.targets) {
    if (t < 0 || t >= n_qubits) {
      throw std::invalid_argument("gate target " + std::to_string(t) +
                                  " outside a " + std::to_string(n_qubits) +
                                  "-qubit circuit");
    }
  }
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kX: return "X";
    case GateKind::kZ: return "Z";
    case GateKind::kCNOT: return "CNOT";
    case GateKind::kCZ: return "CZ";
    case GateKind::kRy: return "Ry";
    case GateKind::kRz: return "Rz";
    case GateKind::kU3: return "U3";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : {GateKind::kH, GateKind::kX, GateKind::kZ,
                     GateKind::kCNOT, GateKind::kCZ, GateKind::kRy,
                     GateKind::kRz, GateKind::kU3}) {
    if (gate_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) +
                              "'");
}

Gate Gate::make(GateKind kind, std::vector<int> targets,
                std::vector<double> params) {
  if (params.size() != param_arity(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " takes " +
                                std::to_string(param_arity(kind)) +
                                " angle(s), got " +
                                std::to_string(params.size()));
  }
  if (targets.size() != target_arity(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " takes " +
                                std::to_string(target_arity(kind)) +
                                " target(s)");
  }
  if (targets.size() == 2 && targets[0] == targets[1]) {
    throw std::invalid_argument("two-qubit gate targets must be distinct");
  }
  for (int t : targets) {
    if (t < 0) throw std::invalid_argument("negative qubit index");
  }
  return Gate{kind, std::move(targets), std::move(params)};
}

CMatrix gate_matrix(const Gate& g) {
  if (g.kind == GateKind::kCNOT) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (g.kind == GateKind::kCZ) {
    CMatrix m = CMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return m;
  }
  return single_qubit_matrix(g);
}

Gate adjoint(const Gate& g) {
  switch (g.kind) {
    case GateKind::kRy:
    case GateKind::kRz:
      return Gate{g.kind, g.targets, {-g.params[0]}};
    case GateKind::kU3:
      // (Rz(phi) Ry(theta) Rz(lambda))^dagger = Rz(-lambda) Ry(-theta) Rz(-phi)
      return Gate{g.kind, g.targets, {-g.params[0], -g.params[2], -g.params[1]}};
    default:
      return g;
  }
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range");
  }
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates) : Circuit(n_qubits) {
  for (auto& g : gates) add(std::move(g));
}

Circuit& Circuit::add(Gate g) {
  check_gate_fits(g, n_qubits_);
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("append: qubit count mismatch");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::embedded(int total_qubits, int offset) const {
  if (offset < 0 || offset + n_qubits_ > total_qubits) {
    throw std::invalid_argument("embedded: circuit does not fit");
  }
  Circuit out(total_qubits);
  out.gates_.reserve(gates_.size());
  for (Gate g : gates_) {
    for (int& t : g.targets) t += offset;
    out.gates_.push_back(std::move(g));
  }
  return out;
}

int Circuit::depth() const {
  std::vector<int> level(n_qubits_, 0);
  int depth = 0;
  for (const Gate& g : gates_) {
    int l = 0;
    for (int t : g.targets) l = std::max(l, level[t]);
    for (int t : g.targets) level[t] = l + 1;
    depth = std::max(depth, l + 1);
  }
  return depth;
}

Circuit inverse(const Circuit& c) {
  std::vector<Gate> gates;
  gates.reserve(c.size());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
    gates.push_back(adjoint(*it));
  }
  return Circuit(c.n_qubits(), std::move(gates));
}

void apply_1q_inplace(const Eigen::Matrix2cd& u, int qubit, int n_qubits,
                      Complex* data) {
  const std::int64_t stride = bit_of(qubit, n_qubits);
  const std::int64_t d = std::int64_t{1} << n_qubits;
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::int64_t block = 0; block < d; block += 2 * stride) {
    for (std::int64_t k = block; k < block + stride; ++k) {
      const Complex a = data[k];
      const Complex b = data[k + stride];
      data[k] = u00 * a + u01 * b;
      data[k + stride] = u10 * a + u11 * b;
    }
  }
}

void apply_gate_inplace(const Gate& g, int n_qubits, CVector& data) {
  check_gate_fits(g, n_qubits);
  if (data.size() != (std::int64_t{1} << n_qubits)) {
    throw std::invalid_argument("apply: dimension mismatch");
  }
  Eigen::Matrix2cd u;
  if (target_arity(g.kind) == 1) u = single_qubit_matrix(g);
  apply_gate_raw(g, &u, n_qubits, data.data());
}

void apply_gate_columns(const Gate& g, int n_qubits, CMatrix& data) {
  check_gate_fits(g, n_qubits);
  if (data.rows() != (std::int64_t{1} << n_qubits)) {
    throw std::invalid_argument("apply: dimension mismatch");
  }
  Eigen::Matrix2cd u;
  if (target_arity(g.kind) == 1) u = single_qubit_matrix(g);
  for (std::int64_t c = 0; c < data.cols(); ++c) {
    apply_gate_raw(g, &u, n_qubits, data.col(c).data());
  }
}

StateVector apply(const Circuit& c, const StateVector& s) {
  if (c.n_qubits() != s.n_qubits()) {
    throw std::invalid_argument("apply: circuit has " +
                                std::to_string(c.n_qubits()) +
                                " qubits, state has " +
                                std::to_string(s.n_qubits()));
  }
  CVector v = s.amplitudes();
  for (const Gate& g : c.gates()) apply_gate_inplace(g, c.n_qubits(), v);
  return make_trusted_state(s.n_qubits(), std::move(v));
}

DensityMatrix apply_density(const Circuit& c, const DensityMatrix& r) {
  if (c.n_qubits() != r.n_qubits()) {
    throw std::invalid_argument("apply_density: qubit count mismatch");
  }
  // C rho C^dagger = (C (C rho)^dagger)^dagger.
  CMatrix m = r.matrix();
  for (const Gate& g : c.gates()) apply_gate_columns(g, c.n_qubits(), m);
  CMatrix t = m.adjoint();
  for (const Gate& g : c.gates()) apply_gate_columns(g, c.n_qubits(), t);
  return make_trusted_density(r.n_qubits(), t.adjoint());
}

AnyState apply_any(const Circuit& c, const AnyState& s) {
  if (const auto* psi = std::get_if<StateVector>(&s)) return apply(c, *psi);
  return apply_density(c, std::get<DensityMatrix>(s));
}

std::string_view entangler_name(Entangler e) {
  return e == Entangler::kCNOT ? "CNOT" : "CZ";
}

Entangler parse_entangler(std::string_view name) {
  if (name == "CNOT" || name == "cnot") return Entangler::kCNOT;
  if (name == "CZ" || name == "cz") return Entangler::kCZ;
  throw std::invalid_argument("unknown entangler '" + std::string(name) + "'");
}

Ansatz::Ansatz(Circuit templ, std::vector<ParamSlot> slots)
    : template_(std::move(templ)), slots_(std::move(slots)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const ParamSlot& s : slots_) {
    if (s.gate_index >= template_.size()) {
      throw std::invalid_argument("ansatz slot refers to a missing gate");
    }
    const Gate& g = template_.gates()[s.gate_index];
    if (s.angle_index >= g.params.size()) {
      throw std::invalid_argument("ansatz slot refers to a missing angle");
    }
    if (!seen.emplace(s.gate_index, s.angle_index).second) {
      throw std::invalid_argument("ansatz slot used by two parameters");
    }
  }
}

Circuit Ansatz::bind(std::span<const double> theta) const {
  if (theta.size() != slots_.size()) {
    throw std::invalid_argument("ansatz expects " +
                                std::to_string(slots_.size()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
  std::vector<Gate> gates = template_.gates();
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    gates[slots_[i].gate_index].params[slots_[i].angle_index] = theta[i];
  }
  return Circuit(template_.n_qubits(), std::move(gates));
}

Ansatz hardware_efficient_ansatz(int n_qubits, int depth,
                                 Entangler entangler) {
  if (depth < 1) throw std::invalid_argument("ansatz depth must be >= 1");
  Circuit c(n_qubits);
  std::vector<ParamSlot> slots;
  slots.reserve(3 * n_qubits * depth);
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < n_qubits; ++q) {
      c.add(Gate::u3(q, 0.0, 0.0, 0.0));
      for (std::size_t a = 0; a < 3; ++a) slots.push_back({c.size() - 1, a});
    }
    for (int q = 0; q + 1 < n_qubits; ++q) {
      c.add(entangler == Entangler::kCNOT ? Gate::cnot(q, q + 1)
                                          : Gate::cz(q, q + 1));
    }
  }
  return Ansatz(std::move(c), std::move(slots));
}

WaParams build_wa_params(int n, double beta_n, double beta_nm1,
                         double delta) {
  if (n < 1) throw std::invalid_argument("W_A needs at least one qubit");
  WaParams wa;
  wa.n = n;
  if (n == 1) {
    // A single qubit has one nonzero coefficient; no rotation needed.
    wa.gamma = {1.0};
    wa.one_minus_gamma = {0.0};
    wa.alpha = {0.0};
    return wa;
  }
  if (!(beta_n > 1.0 && beta_nm1 > beta_n && delta > 0.0)) {
    throw std::invalid_argument(
        "W_A parameters need 1 < beta_n < beta_{n-1} and delta > 0");
  }
  wa.beta.assign(n, 0.0);
  wa.beta[n - 1] = beta_n;
  wa.beta[n - 2] = beta_nm1;
  double suffix_product = beta_n * beta_nm1;
  for (int j = n - 3; j >= 0; --j) {
    wa.beta[j] = suffix_product + delta;
    suffix_product *= wa.beta[j];
  }
  wa.gamma.resize(n);
  wa.one_minus_gamma.resize(n);
  wa.alpha.resize(n);
  for (int j = 0; j < n; ++j) {
    const double b = wa.beta[j];
    if (!std::isfinite(b)) {
      throw std::overflow_error("W_A beta recursion overflows for n = " +
                                std::to_string(n));
    }
    wa.gamma[j] = b / (b + 1.0);
    wa.one_minus_gamma[j] = 1.0 / (b + 1.0);
    // 2 arccos(sqrt(gamma)) == 2 atan(1 / sqrt(beta)); the latter keeps
    // precision when gamma rounds to 1.
    wa.alpha[j] = 2.0 * std::atan(1.0 / std::sqrt(b));
  }
  return wa;
}

std::vector<double> wa_amplitudes(const WaParams& wa) {
  const std::int64_t d = std::int64_t{1} << wa.n;
  std::vector<double> p(d);
  for (std::int64_t j = 0; j < d; ++j) {
    double amp = 1.0;
    for (int l = 0; l < wa.n; ++l) {
      const bool bit = (j >> (wa.n - 1 - l)) & 1;
      amp *= std::sqrt(bit ? wa.one_minus_gamma[l] : wa.gamma[l]);
    }
    p[j] = amp;
  }
  return p;
}

Circuit build_w(Bipartition part, const WaParams& wa) {
  if (part.n_a != part.n_b || part.n_a != wa.n) {
    throw std::invalid_argument("build_w: bipartition does not match W_A");
  }
  Circuit c(part.total());
  for (int j = 0; j < wa.n; ++j) c.add(Gate::ry(j, wa.alpha[j]));
  for (int j = 0; j < wa.n; ++j) c.add(Gate::cnot(j, part.n_a + j));
  return c;
}

Circuit build_w_prime(Bipartition part) {
  if (part.n_a != part.n_b) {
    throw std::invalid_argument("build_w_prime: parties must be equal size");
  }
  Circuit c(part.total());
  for (int j = 0; j < part.n_a; ++j) c.add(Gate::h(j));
  for (int j = 0; j < part.n_a; ++j) c.add(Gate::cnot(j, part.n_a + j));
  return c;
}

StateVector prepare_rank_r_state(int n, std::int64_t r) {
  if (n < 1 || 2 * n > kMaxQubits) {
    throw std::invalid_argument("prepare_rank_r_state: bad party size");
  }
  const std::int64_t d = std::int64_t{1} << n;
  if (r < 1 || r > d) {
    throw std::invalid_argument("Schmidt rank must be in [1, 2^n]");
  }
  CVector v = CVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(r));
  for (std::int64_t j = 0; j < r; ++j) v[j * d + j] = amp;
  return make_trusted_state(2 * n, std::move(v));
}

Circuit reference_2q_circuit() {
  return Circuit(2, {Gate::ry(0, 0.58), Gate::ry(1, 1.58), Gate::cz(0, 1)});
}

StateVector prepare_paper_2q_state() {
  return apply(reference_2q_circuit(), StateVector::zero(2));
}

}  // namespace entvqa
