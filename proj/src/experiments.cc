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

#include "entvqa/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

namespace entvqa {

namespace {

// Runs f(0..n-1) on a few worker threads; results keep their index.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(0))> {
  using R = decltype(f(0));
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  std::vector<std::future<void>> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < n; i = next++) slots[i].emplace(f(i));
    }));
  }
  for (auto& fut : pool) fut.get();
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<double> to_std(const RVector& v) {
  return std::vector<double>(v.begin(), v.end());
}

double max_abs_diff(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct ParsedState {
  enum Kind { kRef2q, kBell, kRandom, kRank } kind = kRef2q;
  std::int64_t rank = 0;
};

ParsedState parse_state(const std::string& s) {
  if (s == "ref2q") return {ParsedState::kRef2q};
  if (s == "bell") return {ParsedState::kBell};
  if (s == "random") return {ParsedState::kRandom};
  if (s.rfind("rank:", 0) == 0) {
    try {
      std::size_t used = 0;
      const long long r = std::stoll(s.substr(5), &used);
      if (used == s.size() - 5) return {ParsedState::kRank, r};
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown state '" + s +
                    "' (expected ref2q, bell, random or rank:R)");
}

Json family_to_json(const StateFamily& f) {
  return Json{{"name", std::string(family_name(f.family))},
              {"p", f.p},
              {"q", f.q},
              {"alpha", f.alpha},
              {"gamma", f.gamma},
              {"local_dim", f.local_dim}};
}

StateFamily family_from_json(const Json& j) {
  StateFamily f;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      f.family = parse_family(value.get<std::string>());
    } else if (key == "p") {
      f.p = value.get<double>();
    } else if (key == "q") {
      f.q = value.get<double>();
    } else if (key == "alpha") {
      f.alpha = value.get<double>();
    } else if (key == "gamma") {
      f.gamma = value.get<double>();
    } else if (key == "local_dim") {
      f.local_dim = value.get<std::int64_t>();
    } else {
      throw ConfigError("unknown family key '" + key + "'");
    }
  }
  return f;
}

Json coefficient_summaries(const std::vector<std::vector<double>>& rows) {
  Json out = Json::array();
  if (rows.empty()) return out;
  for (std::size_t j = 0; j < rows.front().size(); ++j) {
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(r[j]);
    out.push_back(summary_to_json(summarize(col)));
  }
  return out;
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kSchmidt: return "schmidt";
    case Experiment::kLogNeg: return "logneg";
    case Experiment::kDetect: return "detect";
    case Experiment::kOracle: return "oracle";
    case Experiment::kDepthScan: return "depth-scan";
    case Experiment::kNoiseScan: return "noise-scan";
    case Experiment::kRankScan: return "rank-scan";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e :
       {Experiment::kSchmidt, Experiment::kLogNeg, Experiment::kDetect,
        Experiment::kOracle, Experiment::kDepthScan, Experiment::kNoiseScan,
        Experiment::kRankScan}) {
    if (experiment_name(e) == name) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

int ExperimentConfig::resolved_qubits() const {
  if (qubits) return *qubits;
  if (family) {
    int n = 0;
    while ((std::int64_t{1} << n) < family->local_dim) ++n;
    return n;
  }
  switch (experiment) {
    case Experiment::kDepthScan: return 4;
    case Experiment::kRankScan: return 3;
    default: return 1;
  }
}

int ExperimentConfig::resolved_depth() const {
  if (depth) return *depth;
  return resolved_qubits() == 1 ? 1 : 5;
}

int ExperimentConfig::resolved_reps() const {
  if (reps) return *reps;
  switch (experiment) {
    case Experiment::kSchmidt: return 20;
    case Experiment::kDepthScan: return 5;
    case Experiment::kRankScan: return 10;
    default: return 1;
  }
}

Method ExperimentConfig::resolved_method() const {
  if (optimizer) return *optimizer;
  return experiment == Experiment::kRankScan ? Method::kSmo : Method::kAdam;
}

OptimConfig ExperimentConfig::optim_for(std::uint64_t s) const {
  OptimConfig o = optim;
  o.method = resolved_method();
  o.seed = s;
  return o;
}

void ExperimentConfig::validate() const {
  const int q = resolved_qubits();
  if (q < 1) throw ConfigError("qubits per party must be >= 1");
  if (2 * q > kMaxQubits) {
    throw ResourceError("2 x " + std::to_string(q) +
                        " qubits exceeds the limit of " +
                        std::to_string(kMaxQubits));
  }
  if (depth && *depth < 1) throw ConfigError("depth must be >= 1");
  if (depths.empty()) throw ConfigError("depths must not be empty");
  for (int d : depths) {
    if (d < 1) throw ConfigError("depths must be >= 1");
  }
  try {
    optim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (shots && *shots < 1) throw ConfigError("shots must be >= 1");
  if (resolved_reps() < 1) throw ConfigError("reps must be >= 1");
  if (!(noise_level >= 0.0 && noise_level < 1.0)) {
    throw ConfigError("noise level must lie in [0, 1)");
  }
  if (noise_levels.empty()) throw ConfigError("noise grid must not be empty");
  for (double p : noise_levels) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw ConfigError("noise grid values must lie in [0, 1)");
    }
  }
  if (!(margin_sigmas >= 0.0)) throw ConfigError("margin must be >= 0");
  if (brute_force_starts < 1) throw ConfigError("brute-force starts >= 1");
  if (chi_grid < 1) throw ConfigError("chi grid must be >= 1");

  const std::int64_t d = std::int64_t{1} << q;
  if (family) {
    try {
      family->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (family->local_dim != d) {
      throw ConfigError("family local dimension does not match qubits");
    }
  } else {
    const ParsedState st = parse_state(state);
    if (st.kind == ParsedState::kRef2q && q != 1 &&
        experiment != Experiment::kDepthScan &&
        experiment != Experiment::kNoiseScan &&
        experiment != Experiment::kRankScan) {
      throw ConfigError("ref2q is a one-qubit-per-party state");
    }
    if (st.kind == ParsedState::kRank && (st.rank < 1 || st.rank > d)) {
      throw ConfigError("rank out of range for the register");
    }
  }

  switch (experiment) {
    case Experiment::kNoiseScan:
      if (q != 1) throw ConfigError("noise scan uses one qubit per party");
      break;
    case Experiment::kRankScan:
      for (int r : ranks) {
        if (r < 1 || r > d) throw ConfigError("rank out of range");
      }
      if (ranks.empty()) throw ConfigError("ranks must not be empty");
      break;
    case Experiment::kLogNeg:
      if (family || noise != NoiseKind::kNone) {
        throw ConfigError("logneg needs a pure input (no family, no noise)");
      }
      break;
    default:
      break;
  }
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j{{"experiment", std::string(experiment_name(cfg.experiment))},
         {"qubits", cfg.resolved_qubits()},
         {"depth", cfg.resolved_depth()},
         {"depths", cfg.depths},
         {"entangler", std::string(entangler_name(cfg.entangler))},
         {"optimizer", std::string(method_name(cfg.resolved_method()))},
         {"iters", cfg.optim.max_iters},
         {"learning_rate", cfg.optim.learning_rate},
         {"beta1", cfg.optim.beta1},
         {"beta2", cfg.optim.beta2},
         {"eps", cfg.optim.eps},
         {"tol", cfg.optim.convergence_tol},
         {"window", cfg.optim.convergence_window},
         {"seed", cfg.seed},
         {"reps", cfg.resolved_reps()},
         {"state", cfg.state},
         {"noise", std::string(noise_name(cfg.noise))},
         {"noise_level", cfg.noise_level},
         {"noise_levels", cfg.noise_levels},
         {"ranks", cfg.ranks},
         {"margin_sigmas", cfg.margin_sigmas},
         {"brute_force_starts", cfg.brute_force_starts},
         {"chi_grid", cfg.chi_grid},
         {"record_timing", cfg.record_timing},
         {"with_traces", cfg.with_traces}};
  j["shots"] = cfg.shots ? Json(*cfg.shots) : Json(nullptr);
  j["family"] = cfg.family ? family_to_json(*cfg.family) : Json(nullptr);
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") {
        cfg.experiment = parse_experiment(v.get<std::string>());
      } else if (key == "qubits") {
        cfg.qubits = v.get<int>();
      } else if (key == "depth") {
        cfg.depth = v.get<int>();
      } else if (key == "depths") {
        cfg.depths = v.get<std::vector<int>>();
      } else if (key == "entangler") {
        cfg.entangler = parse_entangler(v.get<std::string>());
      } else if (key == "optimizer") {
        cfg.optimizer = parse_method(v.get<std::string>());
      } else if (key == "iters") {
        cfg.optim.max_iters = v.get<int>();
      } else if (key == "learning_rate") {
        cfg.optim.learning_rate = v.get<double>();
      } else if (key == "beta1") {
        cfg.optim.beta1 = v.get<double>();
      } else if (key == "beta2") {
        cfg.optim.beta2 = v.get<double>();
      } else if (key == "eps") {
        cfg.optim.eps = v.get<double>();
      } else if (key == "tol") {
        cfg.optim.convergence_tol = v.get<double>();
      } else if (key == "window") {
        cfg.optim.convergence_window = v.get<int>();
      } else if (key == "shots") {
        if (!v.is_null()) cfg.shots = v.get<std::int64_t>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "reps") {
        cfg.reps = v.get<int>();
      } else if (key == "state") {
        cfg.state = v.get<std::string>();
      } else if (key == "family") {
        if (!v.is_null()) cfg.family = family_from_json(v);
      } else if (key == "noise") {
        cfg.noise = parse_noise_kind(v.get<std::string>());
      } else if (key == "noise_level") {
        cfg.noise_level = v.get<double>();
      } else if (key == "noise_levels") {
        cfg.noise_levels = v.get<std::vector<double>>();
      } else if (key == "ranks") {
        cfg.ranks = v.get<std::vector<int>>();
      } else if (key == "margin_sigmas") {
        cfg.margin_sigmas = v.get<double>();
      } else if (key == "brute_force_starts") {
        cfg.brute_force_starts = v.get<int>();
      } else if (key == "chi_grid") {
        cfg.chi_grid = v.get<int>();
      } else if (key == "record_timing") {
        cfg.record_timing = v.get<bool>();
      } else if (key == "with_traces") {
        cfg.with_traces = v.get<bool>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

Summary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  Summary s;
  s.min = values.front();
  s.max = values.back();
  s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  s.std = std::sqrt(var / static_cast<double>(n));
  return s;
}

Json summary_to_json(const Summary& s) {
  return Json{{"median", s.median}, {"min", s.min}, {"max", s.max},
              {"std", s.std}};
}

Json RunRecord::to_json() const {
  Json j{{"config", config}, {"repetitions", repetitions}, {"summary", summary}};
  if (duration_s) j["duration_s"] = *duration_s;
  return j;
}

std::string RunRecord::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < csv_header.size(); ++i) {
    os << (i ? "," : "") << csv_header[i];
  }
  os << '\n' << std::setprecision(12);
  for (const auto& row : csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << '\n';
  }
  return os.str();
}

std::uint64_t rep_seed(std::uint64_t master, int rep) {
  return derive_seed(master, static_cast<std::uint64_t>(rep));
}

AnyState build_input(const ExperimentConfig& cfg, int rep) {
  const int q = cfg.resolved_qubits();
  AnyState s = [&]() -> AnyState {
    if (cfg.family) return build_family(*cfg.family);
    const ParsedState st = parse_state(cfg.state);
    switch (st.kind) {
      case ParsedState::kRef2q: return prepare_paper_2q_state();
      case ParsedState::kBell: return max_entangled_state(q);
      case ParsedState::kRandom:
        return haar_random_state(2 * q, derive_seed(rep_seed(cfg.seed, rep), 1));
      case ParsedState::kRank: return prepare_rank_r_state(q, st.rank);
    }
    throw ConfigError("unknown state");
  }();
  if (cfg.noise != NoiseKind::kNone) {
    s = apply_channel_all(make_channel(cfg.noise, cfg.noise_level),
                          to_density(s));
  }
  return s;
}

// ---- scans ----

std::vector<DepthSeries> depth_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const int q = cfg.resolved_qubits();
  const int reps = cfg.resolved_reps();
  const Bipartition part = Bipartition::symmetric(q);
  const WaParams wa = build_wa_params(q);

  struct Task {
    int depth;
    int rep;
  };
  std::vector<Task> tasks;
  for (int d : cfg.depths) {
    for (int r = 0; r < reps; ++r) tasks.push_back({d, r});
  }
  auto runs = parallel_map(tasks.size(), [&](std::size_t i) {
    const Task t = tasks[i];
    const std::uint64_t seed = rep_seed(cfg.seed, t.rep);
    // The state depends only on the repetition, so every depth sees the
    // same inputs. Haar random unless bell or rank:R is asked for.
    const ParsedState st = parse_state(cfg.state);
    const StateVector psi =
        st.kind == ParsedState::kBell   ? max_entangled_state(q)
        : st.kind == ParsedState::kRank ? prepare_rank_r_state(q, st.rank)
                                        : haar_random_state(2 * q, derive_seed(seed, 1));
    const std::vector<double> exact = to_std(exact_schmidt(psi, part).coefficients);
    const AnsatzConfig ac{t.depth, cfg.entangler};
    const SchmidtResult res =
        schmidt_decompose(psi, part, ac, cfg.optim_for(seed), wa);

    // Replay the trace to get the readout error at every iteration.
    const CostSpec spec = CostSpec::schmidt(
        psi, part, hardware_efficient_ansatz(q, t.depth, cfg.entangler),
        hardware_efficient_ansatz(q, t.depth, cfg.entangler), wa);
    auto error_at = [&](std::span<const double> theta) {
      const AnyState rotated = transformed_state(spec, theta);
      const DensityMatrix rho_a =
          partial_trace(std::get<StateVector>(rotated), part, Party::kA);
      return error_metric(readout_schmidt_coefficients(rho_a).sorted, exact);
    };
    DepthRun run;
    run.seed = seed;
    run.error_per_iteration.push_back(
        error_at(random_initial_params(spec.n_params(), seed)));
    for (const auto& rec : res.trace.records) {
      run.error_per_iteration.push_back(error_at(rec.theta));
    }
    run.final_error = *res.error_vs_oracle;
    return run;
  });

  std::vector<DepthSeries> out;
  std::size_t k = 0;
  for (int d : cfg.depths) {
    DepthSeries s;
    s.depth = d;
    std::vector<double> finals;
    for (int r = 0; r < reps; ++r, ++k) {
      finals.push_back(runs[k].final_error);
      s.runs.push_back(std::move(runs[k]));
    }
    s.final_error = summarize(finals);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> noiseless_reference() {
  return to_std(
      exact_schmidt(prepare_paper_2q_state(), Bipartition::symmetric(1))
          .coefficients);
}

std::vector<NoisePoint> noise_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const Bipartition part = Bipartition::symmetric(1);
  const WaParams wa = build_wa_params(1);
  const std::vector<double> reference = noiseless_reference();
  const DensityMatrix clean = DensityMatrix::from_pure(prepare_paper_2q_state());
  const int reps = cfg.resolved_reps();

  struct Task {
    NoiseKind kind;
    double level;
    int rep;
  };
  std::vector<Task> tasks;
  for (NoiseKind k : {NoiseKind::kAmplitudeDamping, NoiseKind::kDepolarizing}) {
    for (double p : cfg.noise_levels) {
      for (int r = 0; r < reps; ++r) tasks.push_back({k, p, r});
    }
  }
  return parallel_map(tasks.size(), [&](std::size_t i) {
    const Task t = tasks[i];
    const std::uint64_t seed = rep_seed(cfg.seed, t.rep);
    const DensityMatrix rho =
        apply_channel_all(make_channel(t.kind, t.level), clean);
    const AnsatzConfig ac{cfg.resolved_depth(), cfg.entangler};
    const SchmidtResult res =
        schmidt_decompose(rho, part, ac, cfg.optim_for(seed), wa, cfg.shots);
    const BruteForceSchmidt bf =
        brute_force_schmidt_2q(rho, wa, cfg.brute_force_starts,
                               derive_seed(seed, 2));
    NoisePoint pt;
    pt.channel = t.kind;
    pt.level = t.level;
    pt.seed = seed;
    pt.estimated = res.coefficients;
    pt.brute_force = bf.coefficients;
    pt.vqa_cost = res.final_cost;
    pt.brute_force_cost = bf.cost;
    pt.deviation_from_noiseless = max_abs_diff(pt.estimated, reference);
    pt.deviation_from_brute_force = max_abs_diff(pt.estimated, pt.brute_force);
    return pt;
  });
}

std::vector<RankPoint> rank_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const int q = cfg.resolved_qubits();
  const int reps = cfg.resolved_reps();
  const Bipartition part = Bipartition::symmetric(q);
  const AnsatzConfig ac{cfg.resolved_depth(), cfg.entangler};
  const std::vector<std::optional<std::int64_t>> modes = {
      std::nullopt, cfg.shots.value_or(1024)};

  struct Task {
    std::size_t point;
    int rank;
    std::optional<std::int64_t> shots;
    int rep;
  };
  std::vector<Task> tasks;
  std::vector<RankPoint> out;
  for (const auto& mode : modes) {
    for (int r : cfg.ranks) {
      RankPoint pt;
      pt.rank = r;
      pt.shots = mode;
      pt.expected = std::log2(static_cast<double>(r));
      for (int k = 0; k < reps; ++k) tasks.push_back({out.size(), r, mode, k});
      out.push_back(std::move(pt));
    }
  }
  const auto values = parallel_map(tasks.size(), [&](std::size_t i) {
    const Task& t = tasks[i];
    const std::uint64_t seed = rep_seed(cfg.seed, t.rep);
    return estimate_log_negativity(prepare_rank_r_state(q, t.rank), part, ac,
                                   cfg.optim_for(seed), t.shots)
        .log_negativity;
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    RankPoint& pt = out[tasks[i].point];
    pt.values.push_back(values[i]);
    pt.seeds.push_back(rep_seed(cfg.seed, tasks[i].rep));
  }
  for (RankPoint& pt : out) pt.summary = summarize(pt.values);
  return out;
}

// ---- records ----

RunRecord run_depth_scan(const ExperimentConfig& cfg) {
  const auto series = depth_scan(cfg);
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.csv_header = {"depth", "rep", "iteration", "error"};
  Json per_depth = Json::array();
  for (const DepthSeries& s : series) {
    for (std::size_t r = 0; r < s.runs.size(); ++r) {
      const DepthRun& run = s.runs[r];
      Json j{{"depth", s.depth},
             {"rep", r},
             {"seed", run.seed},
             {"final_error", run.final_error}};
      if (cfg.with_traces) j["error_per_iteration"] = run.error_per_iteration;
      rec.repetitions.push_back(std::move(j));
      for (std::size_t it = 0; it < run.error_per_iteration.size(); ++it) {
        rec.csv_rows.push_back({double(s.depth), double(r), double(it),
                                run.error_per_iteration[it]});
      }
    }
    per_depth.push_back(
        {{"depth", s.depth}, {"final_error", summary_to_json(s.final_error)}});
  }
  rec.summary["depths"] = std::move(per_depth);
  return rec;
}

RunRecord run_noise_scan(const ExperimentConfig& cfg) {
  const auto points = noise_scan(cfg);
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.csv_header = {"channel", "level", "c1", "c2", "bf_c1", "bf_c2"};
  double worst_bf = 0.0;
  for (const NoisePoint& p : points) {
    rec.repetitions.push_back(
        {{"channel", std::string(noise_name(p.channel))},
         {"level", p.level},
         {"seed", p.seed},
         {"estimated", p.estimated},
         {"brute_force", p.brute_force},
         {"vqa_cost", p.vqa_cost},
         {"brute_force_cost", p.brute_force_cost},
         {"deviation_from_noiseless", p.deviation_from_noiseless},
         {"deviation_from_brute_force", p.deviation_from_brute_force}});
    rec.csv_rows.push_back(
        {p.channel == NoiseKind::kAmplitudeDamping ? 0.0 : 1.0, p.level,
         p.estimated[0], p.estimated[1], p.brute_force[0], p.brute_force[1]});
    worst_bf = std::max(worst_bf, p.deviation_from_brute_force);
  }
  rec.summary = {{"noiseless", noiseless_reference()},
                 {"max_deviation_from_brute_force", worst_bf}};
  return rec;
}

RunRecord run_rank_scan(const ExperimentConfig& cfg) {
  const auto points = rank_scan(cfg);
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.csv_header = {"rank", "shots", "median", "std", "min", "max", "expected"};
  Json summary = Json::array();
  for (const RankPoint& p : points) {
    const Json shots = p.shots ? Json(*p.shots) : Json(nullptr);
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      rec.repetitions.push_back({{"rank", p.rank},
                                 {"shots", shots},
                                 {"seed", p.seeds[k]},
                                 {"log_negativity", p.values[k]}});
    }
    summary.push_back({{"rank", p.rank},
                       {"shots", shots},
                       {"expected", p.expected},
                       {"log_negativity", summary_to_json(p.summary)}});
    rec.csv_rows.push_back({double(p.rank), double(p.shots.value_or(0)),
                            p.summary.median, p.summary.std, p.summary.min,
                            p.summary.max, p.expected});
  }
  rec.summary["ranks"] = std::move(summary);
  return rec;
}

RunRecord run_schmidt(const ExperimentConfig& cfg) {
  cfg.validate();
  const int q = cfg.resolved_qubits();
  const Bipartition part = Bipartition::symmetric(q);
  const WaParams wa = build_wa_params(q);
  const AnsatzConfig ac{cfg.resolved_depth(), cfg.entangler};
  const int reps = cfg.resolved_reps();
  const auto results = parallel_map(reps, [&](std::size_t r) {
    const std::uint64_t seed = rep_seed(cfg.seed, int(r));
    return schmidt_decompose(build_input(cfg, int(r)), part, ac,
                             cfg.optim_for(seed), wa, cfg.shots);
  });
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.csv_header = {"rep"};
  for (std::int64_t j = 0; j < part.dim_a(); ++j) {
    rec.csv_header.push_back("c" + std::to_string(j + 1));
  }
  std::vector<std::vector<double>> coeffs;
  std::vector<double> errors;
  for (int r = 0; r < reps; ++r) {
    Json j = result_to_json(results[r], cfg.with_traces);
    j["rep"] = r;
    j["seed"] = rep_seed(cfg.seed, r);
    rec.repetitions.push_back(std::move(j));
    coeffs.push_back(results[r].coefficients);
    if (results[r].error_vs_oracle) errors.push_back(*results[r].error_vs_oracle);
    std::vector<double> row = {double(r)};
    row.insert(row.end(), results[r].coefficients.begin(),
               results[r].coefficients.end());
    rec.csv_rows.push_back(std::move(row));
  }
  rec.summary["coefficients"] = coefficient_summaries(coeffs);
  if (!errors.empty()) {
    rec.summary["error_vs_oracle"] = summary_to_json(summarize(errors));
  }
  return rec;
}

RunRecord run_logneg(const ExperimentConfig& cfg) {
  cfg.validate();
  const int q = cfg.resolved_qubits();
  const Bipartition part = Bipartition::symmetric(q);
  const AnsatzConfig ac{cfg.resolved_depth(), cfg.entangler};
  const int reps = cfg.resolved_reps();
  struct Out {
    LogNegResult result;
    double exact;
  };
  const auto results = parallel_map(reps, [&](std::size_t r) {
    const std::uint64_t seed = rep_seed(cfg.seed, int(r));
    const StateVector psi = std::get<StateVector>(build_input(cfg, int(r)));
    return Out{estimate_log_negativity(psi, part, ac, cfg.optim_for(seed),
                                       cfg.shots),
               exact_log_negativity(psi, part)};
  });
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.csv_header = {"rep", "log_negativity", "exact"};
  std::vector<double> values;
  for (int r = 0; r < reps; ++r) {
    Json j = result_to_json(results[r].result, cfg.with_traces);
    j["rep"] = r;
    j["seed"] = rep_seed(cfg.seed, r);
    j["exact_log_negativity"] = results[r].exact;
    rec.repetitions.push_back(std::move(j));
    values.push_back(results[r].result.log_negativity);
    rec.csv_rows.push_back(
        {double(r), results[r].result.log_negativity, results[r].exact});
  }
  rec.summary["log_negativity"] = summary_to_json(summarize(values));
  return rec;
}

RunRecord run_detect(const ExperimentConfig& cfg) {
  cfg.validate();
  const int q = cfg.resolved_qubits();
  const Bipartition part = Bipartition::symmetric(q);
  const AnsatzConfig ac{cfg.resolved_depth(), cfg.entangler};
  const int reps = cfg.resolved_reps();
  const auto results = parallel_map(reps, [&](std::size_t r) {
    const std::uint64_t seed = rep_seed(cfg.seed, int(r));
    return detect_entanglement(to_density(build_input(cfg, int(r))), part, ac,
                               cfg.optim_for(seed), cfg.shots,
                               cfg.margin_sigmas);
  });
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.csv_header = {"rep", "chi_lower_bound", "detected"};
  std::vector<double> chis;
  int detected = 0;
  for (int r = 0; r < reps; ++r) {
    Json j = result_to_json(results[r], cfg.with_traces);
    j["rep"] = r;
    j["seed"] = rep_seed(cfg.seed, r);
    rec.repetitions.push_back(std::move(j));
    chis.push_back(results[r].chi_lower_bound);
    detected += results[r].detected ? 1 : 0;
    rec.csv_rows.push_back({double(r), results[r].chi_lower_bound,
                            results[r].detected ? 1.0 : 0.0});
  }
  rec.summary = {{"detected", detected},
                 {"reps", reps},
                 {"chi_lower_bound", summary_to_json(summarize(chis))}};
  if (cfg.family) rec.summary["chi_closed_form"] = chi_closed_form(*cfg.family);
  return rec;
}

RunRecord run_oracle(const ExperimentConfig& cfg) {
  cfg.validate();
  const int q = cfg.resolved_qubits();
  const Bipartition part = Bipartition::symmetric(q);
  const AnyState input = build_input(cfg, 0);
  const DensityMatrix rho = to_density(input);
  const std::int64_t d = part.dim_a();

  Json out{{"reduction_criterion", reduction_criterion(rho, part)},
           {"ppt_criterion", ppt_criterion(rho, part)}};
  std::optional<double> chi;
  if (cfg.family) {
    chi = chi_closed_form(*cfg.family);
    out["chi_closed_form"] = *chi;
  }
  if (q == 1) {
    const double bf = brute_force_chi_2q(rho, cfg.chi_grid);
    out["chi_brute_force"] = bf;
    if (!chi) chi = bf;
  }
  if (chi) out["chi_verdict"] = chi_threshold_verdict(*chi, d);
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  if (std::abs(purity - 1.0) < kValidationTol) {
    const SchmidtDecomposition svd = exact_schmidt(input, part);
    out["schmidt_coefficients"] = to_std(svd.coefficients);
    const double s = svd.coefficients.sum();
    out["log_negativity"] = std::log2(s * s);
  }
  RunRecord rec;
  rec.config = config_to_json(cfg);
  rec.repetitions.push_back(out);
  rec.summary = out;
  rec.csv_header = {"reduction_criterion", "ppt_criterion", "chi"};
  rec.csv_rows.push_back({out["reduction_criterion"].get<double>(),
                          out["ppt_criterion"].get<double>(),
                          chi.value_or(std::nan(""))});
  return rec;
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec = [&] {
    switch (cfg.experiment) {
      case Experiment::kSchmidt: return run_schmidt(cfg);
      case Experiment::kLogNeg: return run_logneg(cfg);
      case Experiment::kDetect: return run_detect(cfg);
      case Experiment::kOracle: return run_oracle(cfg);
      case Experiment::kDepthScan: return run_depth_scan(cfg);
      case Experiment::kNoiseScan: return run_noise_scan(cfg);
      case Experiment::kRankScan: return run_rank_scan(cfg);
    }
    throw ConfigError("unknown experiment");
  }();
  if (cfg.record_timing) {
    rec.duration_s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return rec;
}

}  // namespace entvqa
