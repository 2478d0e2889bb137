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

#include "entvqa/serialize.h"

#include <stdexcept>
#include <vector>

namespace entvqa {

namespace {

Json complex_parts(const Complex* data, std::int64_t size, int n_qubits) {
  std::vector<double> re(size), im(size);
  for (std::int64_t i = 0; i < size; ++i) {
    re[i] = data[i].real();
    im[i] = data[i].imag();
  }
  return Json{{"n_qubits", n_qubits}, {"re", re}, {"im", im}};
}

}  // namespace

Json state_to_json(const StateVector& s) {
  return complex_parts(s.amplitudes().data(), s.dim(), s.n_qubits());
}

Json state_to_json(const DensityMatrix& r) {
  // Eigen is column-major; copy to row-major first.
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      m = r.matrix();
  return complex_parts(m.data(), m.size(), r.n_qubits());
}

Json state_to_json(const AnyState& s) {
  return std::visit([](const auto& v) { return state_to_json(v); }, s);
}

AnyState state_from_json(const Json& j) {
  const int n = j.at("n_qubits").get<int>();
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("state: n_qubits out of range");
  }
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) {
    throw std::invalid_argument("state: re and im differ in length");
  }
  const std::size_t dim = std::size_t{1} << n;
  if (re.size() == dim) {
    CVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = Complex(re[i], im[i]);
    return StateVector(n, std::move(v));
  }
  if (re.size() == dim * dim) {
    CMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        m(r, c) = Complex(re[r * dim + c], im[r * dim + c]);
      }
    }
    return DensityMatrix(n, std::move(m));
  }
  throw std::invalid_argument("state: length is neither 2^n nor 4^n");
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const Gate& g : c.gates()) {
    gates.push_back({{"kind", std::string(gate_name(g.kind))},
                     {"targets", g.targets},
                     {"params", g.params}});
  }
  return Json{{"n_qubits", c.n_qubits()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c(j.at("n_qubits").get<int>());
  for (const Json& g : j.at("gates")) {
    c.add(Gate::make(parse_gate_kind(g.at("kind").get<std::string>()),
                     g.at("targets").get<std::vector<int>>(),
                     g.value("params", std::vector<double>{})));
  }
  return c;
}

Json trace_to_json(const OptimTrace& t, bool with_theta) {
  Json records = Json::array();
  for (const auto& r : t.records) {
    Json rec{{"iteration", r.iteration}, {"cost", r.cost}};
    if (with_theta) rec["theta"] = r.theta;
    records.push_back(std::move(rec));
  }
  Json out{{"initial_cost", t.initial_cost},
           {"final_cost", t.final_cost},
           {"iterations", t.records.size()},
           {"evaluations", t.evaluations},
           {"converged", t.converged},
           {"stopped_by_observer", t.stopped_by_observer},
           {"records", std::move(records)}};
  if (with_theta) out["final_theta"] = t.final_theta;
  return out;
}

std::string trace_to_jsonl(const OptimTrace& t) {
  std::string out = Json{{"iteration", 0}, {"cost", t.initial_cost}}.dump();
  out += '\n';
  for (const auto& r : t.records) {
    out += Json{{"iteration", r.iteration}, {"cost", r.cost}, {"theta", r.theta}}
               .dump();
    out += '\n';
  }
  return out;
}

Json result_to_json(const SchmidtResult& r, bool with_trace) {
  std::vector<bool> degenerate(r.degenerate.begin(), r.degenerate.end());
  Json out{{"coefficients", r.coefficients},
           {"coefficients_index_order", r.coefficients_index_order},
           {"degenerate", degenerate},
           {"final_cost", r.final_cost},
           {"basis_a", circuit_to_json(r.basis_a)},
           {"basis_b", circuit_to_json(r.basis_b)}};
  out["error_vs_oracle"] =
      r.error_vs_oracle ? Json(*r.error_vs_oracle) : Json(nullptr);
  if (with_trace) out["trace"] = trace_to_json(r.trace);
  return out;
}

Json result_to_json(const LogNegResult& r, bool with_trace) {
  Json out{{"log_negativity", r.log_negativity}, {"c_max", r.c_max}};
  if (with_trace) out["trace"] = trace_to_json(r.trace);
  return out;
}

Json result_to_json(const DetectionResult& r, bool with_trace) {
  Json out{{"detected", r.detected},
           {"chi_lower_bound", r.chi_lower_bound},
           {"threshold", r.threshold},
           {"margin", r.margin},
           {"halted_early", r.halted_early}};
  if (with_trace) out["trace"] = trace_to_json(r.trace);
  return out;
}

}  // namespace entvqa
