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

// Experiment configuration and the batch runners behind the command line.

#ifndef ENTVQA_EXPERIMENTS_H_
#define ENTVQA_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entvqa/channels.h"
#include "entvqa/oracle.h"
#include "entvqa/serialize.h"
#include "entvqa/vqa.h"

namespace entvqa {

/// Bad or inconsistent configuration (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds the simulator's size limit (exit code 3).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  kSchmidt,
  kLogNeg,
  kDetect,
  kOracle,
  kDepthScan,
  kNoiseScan,
  kRankScan,
};

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::kSchmidt;
  /// Qubits per party. Unset: taken from the family, else 4 for the depth
  /// scan, 3 for the rank scan and 1 otherwise.
  std::optional<int> qubits;
  /// Layers of the hardware-efficient ansatz. Unset: 1 for one qubit per
  /// party, 5 otherwise.
  std::optional<int> depth;
  std::vector<int> depths = {1, 2, 4, 8};  // depth-scan
  Entangler entangler = Entangler::kCNOT;
  /// optim.method is ignored; see `optimizer`.
  OptimConfig optim;
  /// Unset: SMO for the rank scan, ADAM otherwise.
  std::optional<Method> optimizer;
  /// For the rank scan this is the sampled arm (default 1024); the exact
  /// arm always runs.
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
  /// Unset: 20 for schmidt, 5 for the depth scan, 10 for the rank scan,
  /// 1 otherwise.
  std::optional<int> reps;

  /// Input for schmidt / logneg / detect / oracle when no family is given:
  /// "ref2q", "bell", "random" or "rank:R". The depth scan reads only
  /// "bell" and "rank:R" and uses Haar-random states otherwise.
  std::string state = "ref2q";
  std::optional<StateFamily> family;
  NoiseKind noise = NoiseKind::kNone;
  double noise_level = 0.0;
  std::vector<double> noise_levels = {0.0, 0.1, 0.2, 0.3, 0.4,
                                      0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<int> ranks = {1, 2, 3, 4, 5, 6, 7, 8};
  double margin_sigmas = 3.0;
  int brute_force_starts = 64;
  int chi_grid = 30;
  bool record_timing = false;
  bool with_traces = true;

  int resolved_qubits() const;
  int resolved_depth() const;
  int resolved_reps() const;
  Method resolved_method() const;
  /// optim with the resolved method and the given seed.
  OptimConfig optim_for(std::uint64_t seed) const;
  /// Throws ConfigError or ResourceError.
  void validate() const;
};

Json config_to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);

struct Summary {
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;  // population
};

Summary summarize(std::vector<double> values);
Json summary_to_json(const Summary& s);

/// Full output of one command.
struct RunRecord {
  Json config;
  Json repetitions = Json::array();
  Json summary = Json::object();
  std::optional<double> duration_s;
  std::vector<std::string> csv_header;
  std::vector<std::vector<double>> csv_rows;

  Json to_json() const;
  std::string to_csv() const;
};

/// Seed of repetition `rep`.
std::uint64_t rep_seed(std::uint64_t master, int rep);

// ---- typed experiment results ----

struct DepthRun {
  std::uint64_t seed = 0;
  double final_error = 0.0;
  std::vector<double> error_per_iteration;  // entry 0 is the initial point
};

struct DepthSeries {
  int depth = 0;
  std::vector<DepthRun> runs;
  Summary final_error;
};

struct NoisePoint {
  NoiseKind channel = NoiseKind::kNone;
  double level = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> estimated;    // descending
  std::vector<double> brute_force;  // descending
  double vqa_cost = 0.0;
  double brute_force_cost = 0.0;
  double deviation_from_noiseless = 0.0;    // max abs difference
  double deviation_from_brute_force = 0.0;  // max abs difference
};

struct RankPoint {
  int rank = 0;
  std::optional<std::int64_t> shots;
  std::vector<double> values;  // one per repetition
  std::vector<std::uint64_t> seeds;
  Summary summary;
  double expected = 0.0;  // log2 r
};

std::vector<DepthSeries> depth_scan(const ExperimentConfig& cfg);
std::vector<NoisePoint> noise_scan(const ExperimentConfig& cfg);
/// Exact mode first, then cfg.shots if set.
std::vector<RankPoint> rank_scan(const ExperimentConfig& cfg);

/// The noiseless coefficients the noise scan compares against.
std::vector<double> noiseless_reference();

RunRecord run_depth_scan(const ExperimentConfig& cfg);
RunRecord run_noise_scan(const ExperimentConfig& cfg);
RunRecord run_rank_scan(const ExperimentConfig& cfg);
RunRecord run_schmidt(const ExperimentConfig& cfg);
RunRecord run_logneg(const ExperimentConfig& cfg);
RunRecord run_detect(const ExperimentConfig& cfg);
RunRecord run_oracle(const ExperimentConfig& cfg);

/// Validates, dispatches on cfg.experiment and fills the timing if asked.
RunRecord run_experiment(const ExperimentConfig& cfg);

/// The single-run input described by cfg.state / cfg.family / cfg.noise.
AnyState build_input(const ExperimentConfig& cfg, int rep);

}  // namespace entvqa

#endif  // ENTVQA_EXPERIMENTS_H_
