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

// entvqa command line.
//
//   entvqa schmidt --state ref2q --optimizer smo
//   entvqa detect --family isotropic --p 0.4
//   entvqa experiment rank-scan --reps 10 --out rank.json --csv rank.csv
//
// Exit codes: 0 ok, 2 invalid configuration, 3 resource limit, 1 other.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entvqa/experiments.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct Flags {
  std::string config_path;
  int qubits = 0;
  int depth = 0;
  std::vector<int> depths;
  std::string entangler;
  std::string optimizer;
  int iters = 0;
  double learning_rate = 0.0;
  double tol = 0.0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::string noise;
  double noise_level = 0.0;
  std::vector<double> noise_levels;
  std::string state;
  std::string family;
  double p = 0.0, q = 0.0, alpha = 0.0, gamma = 0.0;
  int reps = 0;
  std::vector<int> ranks;
  double margin_sigmas = 0.0;
  int starts = 0;
  int grid = 0;
  bool record_timing = false;
  bool no_traces = false;
  std::string out;
  std::string csv;
  std::string experiment;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  app->add_option("--qubits", f.qubits, "qubits per party");
  app->add_option("--depth", f.depth, "ansatz layers");
  app->add_option("--depths", f.depths, "layer counts for the depth scan");
  app->add_option("--entangler", f.entangler, "cnot | cz");
  app->add_option("--optimizer", f.optimizer, "adam | smo");
  app->add_option("--iters", f.iters, "maximum iterations");
  app->add_option("--lr", f.learning_rate, "ADAM learning rate");
  app->add_option("--tol", f.tol, "convergence tolerance");
  app->add_option("--shots", f.shots, "samples per cost evaluation");
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--noise", f.noise, "none | ad | depolarizing");
  app->add_option("--noise-level", f.noise_level, "channel strength");
  app->add_option("--noise-levels", f.noise_levels, "noise scan grid");
  app->add_option("--state", f.state, "ref2q | bell | random | rank:R");
  app->add_option("--family", f.family,
                  "isotropic | s_state | werner2 | bpf_bell | ad_bell");
  app->add_option("--p", f.p, "family parameter p");
  app->add_option("--q", f.q, "family parameter q");
  app->add_option("--alpha", f.alpha, "family parameter alpha");
  app->add_option("--gamma", f.gamma, "family parameter gamma");
  app->add_option("--reps", f.reps, "repetitions");
  app->add_option("--ranks", f.ranks, "ranks for the rank scan");
  app->add_option("--margin-sigmas", f.margin_sigmas,
                  "detection margin in standard errors (shot mode)");
  app->add_option("--starts", f.starts, "brute-force restarts (noise scan)");
  app->add_option("--grid", f.grid, "brute-force chi grid");
  app->add_flag("--record-timing", f.record_timing,
                "add wall-clock duration to the output");
  app->add_flag("--no-traces", f.no_traces, "omit per-iteration traces");
  app->add_option("--out", f.out, "JSON output path (default stdout)");
  app->add_option("--csv", f.csv, "CSV output path");
}

bool given(const CLI::App* app, const std::string& name) {
  return app->count(name) > 0;
}

entvqa::ExperimentConfig build_config(const CLI::App* app, const Flags& f,
                                      entvqa::Experiment experiment) {
  using namespace entvqa;
  ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("cannot parse config: ") + e.what());
    }
    cfg = config_from_json(j);
  }
  cfg.experiment = experiment;
  try {
    if (given(app, "--qubits")) cfg.qubits = f.qubits;
    if (given(app, "--depth")) cfg.depth = f.depth;
    if (given(app, "--depths")) cfg.depths = f.depths;
    if (given(app, "--entangler")) cfg.entangler = parse_entangler(f.entangler);
    if (given(app, "--optimizer")) cfg.optimizer = parse_method(f.optimizer);
    if (given(app, "--iters")) cfg.optim.max_iters = f.iters;
    if (given(app, "--lr")) cfg.optim.learning_rate = f.learning_rate;
    if (given(app, "--tol")) cfg.optim.convergence_tol = f.tol;
    if (given(app, "--shots")) cfg.shots = f.shots;
    if (given(app, "--seed")) cfg.seed = f.seed;
    if (given(app, "--noise")) cfg.noise = parse_noise_kind(f.noise);
    if (given(app, "--noise-level")) cfg.noise_level = f.noise_level;
    if (given(app, "--noise-levels")) cfg.noise_levels = f.noise_levels;
    if (given(app, "--state")) cfg.state = f.state;
    if (given(app, "--reps")) cfg.reps = f.reps;
    if (given(app, "--ranks")) cfg.ranks = f.ranks;
    if (given(app, "--margin-sigmas")) cfg.margin_sigmas = f.margin_sigmas;
    if (given(app, "--starts")) cfg.brute_force_starts = f.starts;
    if (given(app, "--grid")) cfg.chi_grid = f.grid;
    if (f.record_timing) cfg.record_timing = true;
    if (f.no_traces) cfg.with_traces = false;
    if (given(app, "--family")) {
      StateFamily fam;
      fam.family = parse_family(f.family);
      cfg.family = fam;
    }
    if (cfg.family) {
      if (given(app, "--p")) cfg.family->p = f.p;
      if (given(app, "--q")) cfg.family->q = f.q;
      if (given(app, "--alpha")) cfg.family->alpha = f.alpha;
      if (given(app, "--gamma")) cfg.family->gamma = f.gamma;
      if (cfg.qubits) {
        if (*cfg.qubits < 1 || *cfg.qubits > kMaxQubits) {
          throw ResourceError("qubits per party out of range");
        }
        cfg.family->local_dim = std::int64_t{1} << *cfg.qubits;
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run(const CLI::App* app, const Flags& f, entvqa::Experiment e) {
  const entvqa::ExperimentConfig cfg = build_config(app, f, e);
  const entvqa::RunRecord rec = entvqa::run_experiment(cfg);
  const std::string json = rec.to_json().dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << json;
  } else {
    write_text(f.out, json);
  }
  if (!f.csv.empty()) write_text(f.csv, rec.to_csv());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational entanglement analysis"};
  app.require_subcommand(1);
  Flags flags;

  auto* schmidt = app.add_subcommand("schmidt", "variational Schmidt decomposition");
  auto* logneg = app.add_subcommand("logneg", "log-negativity of a pure state");
  auto* detect = app.add_subcommand("detect", "entanglement detection");
  auto* oracle = app.add_subcommand("oracle", "exact classical reference values");
  auto* experiment = app.add_subcommand("experiment", "batch experiments");
  experiment->add_option("name", flags.experiment,
                         "depth-scan | noise-scan | rank-scan")
      ->required();
  for (CLI::App* sub : {schmidt, logneg, detect, oracle, experiment}) {
    add_common(sub, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (schmidt->parsed()) return run(schmidt, flags, entvqa::Experiment::kSchmidt);
    if (logneg->parsed()) return run(logneg, flags, entvqa::Experiment::kLogNeg);
    if (detect->parsed()) return run(detect, flags, entvqa::Experiment::kDetect);
    if (oracle->parsed()) return run(oracle, flags, entvqa::Experiment::kOracle);
    const entvqa::Experiment e = entvqa::parse_experiment(flags.experiment);
    if (e != entvqa::Experiment::kDepthScan &&
        e != entvqa::Experiment::kNoiseScan &&
        e != entvqa::Experiment::kRankScan) {
      throw entvqa::ConfigError("'" + flags.experiment +
                                "' is a command, not an experiment");
    }
    return run(experiment, flags, e);
  } catch (const entvqa::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const entvqa::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
