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

// Exact classical references: SVD-based Schmidt decomposition, closed-form
// and brute-force fully entangled fraction, and separability criteria.

#ifndef ENTVQA_ORACLE_H_
#define ENTVQA_ORACLE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "entvqa/circuits.h"
#include "entvqa/qstate.h"

namespace entvqa {

struct SchmidtDecomposition {
  RVector coefficients;  // descending
  CMatrix left;          // column j is u_j on party A
  CMatrix right;         // column j is v_j on party B
};

/// psi = sum_j c_j |u_j>|v_j>, from the SVD of the d_A x d_B matricization.
SchmidtDecomposition exact_schmidt(const StateVector& psi, Bipartition part);
/// Accepts a density matrix only if it is pure (Tr rho^2 = 1 within 1e-8).
SchmidtDecomposition exact_schmidt(const AnyState& state, Bipartition part);

/// log2((sum_j c_j)^2).
double exact_log_negativity(const StateVector& psi, Bipartition part);

enum class Family { kIsotropic, kSState, kWerner2, kBpfBell, kAdBell };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// A named two-party state family. Unused parameters are ignored.
///   isotropic  p |Phi+><Phi+| + (1-p) I/d^2,  p in [-1/(d^2-1), 1]
///   s_state    p |Phi+><Phi+| + (1-p) |00><00|, p in [0, 1]
///   werner2    ((d-alpha) I + (d alpha - 1) F) / (d^3 - d), d = 2,
///              alpha = Tr[rho F] in [-1, 1]
///   bpf_bell   p rho1 + (1-p) X_A rho1 X_A,
///              rho1 = q Phi+ + (1-q) Z_A Phi+ Z_A, p, q in [0, 1]
///   ad_bell    (amplitude damping(gamma) on A)(Phi+), gamma in [0, 1]
struct StateFamily {
  Family family = Family::kIsotropic;
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  std::int64_t local_dim = 2;

  void validate() const;
};

DensityMatrix build_family(const StateFamily& f);

/// Closed-form fully entangled fraction of a family member.
double chi_closed_form(const StateFamily& f);

/// The local unitary I (x) (Z X) used to map werner2 onto an isotropic
/// state; it sends the singlet to Phi+.
CMatrix werner_to_isotropic_unitary();
/// Isotropic parameter of the image of werner2(alpha): (1 - 2 alpha) / 3.
double werner_equivalent_isotropic_p(double alpha);

/// max_U Tr[rho (U x I)|Phi+><Phi+|(U x I)^dagger] for a two-qubit rho, with
/// U = Rz(z1) Ry(y) Rz(z2) scanned on a grid^3 lattice over [0, 2pi)^3 and
/// then refined by compass search down to a 1e-6 step.
double brute_force_chi_2q(const DensityMatrix& rho, int grid = 30);

/// Minimum eigenvalue of I_A (x) rho_B - rho_AB. Negative => entangled and
/// distillable.
double reduction_criterion(const DensityMatrix& rho, Bipartition part);
/// Minimum eigenvalue of the partial transpose on A.
double ppt_criterion(const DensityMatrix& rho, Bipartition part);
DensityMatrix partial_transpose_a(const DensityMatrix& rho, Bipartition part);

/// chi > 1/d.
bool chi_threshold_verdict(double chi, std::int64_t d);

/// Nelder-Mead maximization of f from x0 with initial simplex size `step`.
/// Stops when the simplex value spread falls below ftol or after max_evals.
std::vector<double> nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, double step, double ftol, int max_evals);

/// Brute-force reference for the two-qubit Schmidt cost on a (possibly
/// mixed) input: maximizes <Psi|(U x V) rho (U x V)^dagger|Psi> over the six
/// angles of two ZYZ rotations, Psi = sum_j p_j |jj> with p from `wa`, and
/// reads out c_j = sqrt(<j|rho~_A|j>) at the argmax.
struct BruteForceSchmidt {
  double cost = 0.0;
  std::vector<double> coefficients;  // descending
  std::array<double, 6> angles{};
};

BruteForceSchmidt brute_force_schmidt_2q(const DensityMatrix& rho,
                                         const WaParams& wa, int starts = 64,
                                         std::uint64_t seed = 1);

}  // namespace entvqa

#endif  // ENTVQA_ORACLE_H_
