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

// JSON encodings of states, circuits, traces and driver results.

#ifndef ENTVQA_SERIALIZE_H_
#define ENTVQA_SERIALIZE_H_

#include <string>

#include <json.hpp>

#include "entvqa/circuits.h"
#include "entvqa/optim.h"
#include "entvqa/qstate.h"
#include "entvqa/vqa.h"

namespace entvqa {

using Json = nlohmann::json;

/// {"n_qubits", "re", "im"}; matrices are flattened row-major.
Json state_to_json(const StateVector& s);
Json state_to_json(const DensityMatrix& r);
Json state_to_json(const AnyState& s);
/// A vector when re/im have 2^n entries, a matrix when they have 4^n.
AnyState state_from_json(const Json& j);

/// [{"kind", "targets", "params"}, ...] wrapped with the register width.
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json trace_to_json(const OptimTrace& t, bool with_theta = true);
/// One JSON object per line: the initial point, then each iteration.
std::string trace_to_jsonl(const OptimTrace& t);

Json result_to_json(const SchmidtResult& r, bool with_trace = true);
Json result_to_json(const LogNegResult& r, bool with_trace = true);
Json result_to_json(const DetectionResult& r, bool with_trace = true);

}  // namespace entvqa

#endif  // ENTVQA_SERIALIZE_H_
