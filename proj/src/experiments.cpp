#include "aerecov/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "aerecov/datagen.hpp"
#include "aerecov/dictionary.hpp"
#include "aerecov/dictlearn.hpp"
#include "aerecov/io.hpp"
#include "aerecov/metrics.hpp"
#include "aerecov/recovery.hpp"
#include "aerecov/rng.hpp"
#include "aerecov/signals.hpp"

#ifndef AERECOV_VERSION
#define AERECOV_VERSION "unknown"
#endif

namespace aerecov {

namespace fs = std::filesystem;
using nlohmann::json;

const char* version_string() { return AERECOV_VERSION; }

namespace {

const json kSignalTypes = json::array({"continuous", "binary"});

json heatmap_defaults() {
  return {{"m", 200},           {"n", 180},
          {"samples", 5000},    {"p", 0.02},
          {"c_min", 0.1},       {"c_max", 2.0},
          {"c_steps", 20},      {"delta_b_min", -1.0},
          {"delta_b_max", 1.0}, {"delta_b_steps", 21},
          {"threshold", 0.55},  {"dictionaries", json::array({"orthogonalized", "coherent_uniform"})},
          {"signal_types", kSignalTypes}};
}

json noise_sweep_defaults() {
  return {{"m", 200},          {"n", 180},         {"samples", 5000},
          {"p", 0.02},         {"std_min", 0.001}, {"std_max", 1.0},
          {"std_steps", 10},   {"noise_mean", 100.0},
          {"threshold", 0.55}, {"dictionary", "orthogonalized"},
          {"signal_types", kSignalTypes}};
}

json sparsity_sweep_defaults() {
  return {{"m", 200},
          {"n", 180},
          {"samples", 5000},
          {"p_min", 0.02},
          {"p_max", 0.98},
          {"p_steps", 15},
          {"noise_mean", 100.0},
          {"noise_std", 0.05},
          {"include_noiseless", true},
          {"threshold", 0.55},
          {"generators", json::array({"plain_gaussian", "orthogonalized"})},
          {"signal_types", kSignalTypes}};
}

json coherence_sweep_defaults() {
  return {{"m", 200},
          {"n_min", 100},
          {"n_max", 300},
          {"n_steps", 9},
          {"seeds", 5},
          {"generators", json::array({"orthogonalized", "plain_gaussian"})}};
}

json dict_recovery_defaults() {
  return {{"m", 200},
          {"n", 180},
          {"samples", 50000},
          {"p", 0.02},
          {"noise_stds", json::array({0.0, 0.01, 0.02, 0.05, 0.1, 0.2})},
          {"noise_mean", 100.0},
          {"threshold", 0.55},
          {"learning_rate", 200.0},
          {"epochs", 150},
          {"batch_size", 100},
          {"init", "orthogonalized"},
          {"signal_types", kSignalTypes}};
}

json bounds_check_defaults() {
  return {{"m", 200},
          {"n", 180},
          {"p", 0.02},
          {"samples", 5000},
          {"hand_samples", 100000},
          {"hand_p_binary", 0.1},
          {"hand_p_continuous", 0.2},
          {"noise_mean", 100.0},
          {"noise_std", 0.05},
          {"hand_noise_std", 0.1},
          {"delta_steps", 20},
          {"continuous_delta_max", 0.95},
          {"configs", json::array({"main", "hand", "orthonormal", "coherent"})}};
}

bool same_kind(const json& reference, const json& value) {
  if (reference.is_number_integer()) return value.is_number_integer();
  if (reference.is_number()) return value.is_number();
  if (reference.is_array()) {
    if (!value.is_array()) return false;
    if (reference.empty()) return true;
    return std::all_of(value.begin(), value.end(),
                       [&](const json& v) { return same_kind(reference.front(), v); });
  }
  return reference.type() == value.type();
}

Seed sub(Seed root, std::uint64_t a, std::uint64_t b) { return rng::derive(rng::derive(root, a), b); }

// Runs f(0..count-1) on up to `threads` workers. Each index owns its output
// slot, so results do not depend on scheduling.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) f(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          f(k);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool is_binary_type(const std::string& signal_type) {
  if (signal_type == "binary") return true;
  if (signal_type == "continuous") return false;
  throw InvalidArgument("unknown signal type '" + signal_type + "'");
}

BinsParams make_params(bool binary, Index m, double p) {
  return BinsParams::broadcast(m, p, binary ? FcKind::DiracAtLmax : FcKind::UniformOnZeroToLmax, 1.0);
}

RecoveryConfig make_recovery(bool binary, double c, double delta_b, double threshold) {
  RecoveryConfig cfg;
  cfg.activation = binary ? Activation::Sigmoid : Activation::Relu;
  cfg.scale_c = c;
  cfg.delta_b = delta_b;
  cfg.binarize_threshold = threshold;
  cfg.validate();
  return cfg;
}

// APRE of a closed-form estimate; sigmoid outputs are binarized first.
double score(const Matrix& H, const Matrix& estimate, const BinsParams& params,
             const RecoveryConfig& cfg) {
  if (cfg.activation == Activation::Sigmoid)
    return apre(H, binarize(estimate, cfg.binarize_threshold), 0.0, params.p());
  return apre(H, estimate, 0.1, params.p());
}

std::vector<std::string> strings(const json& array) { return array.get<std::vector<std::string>>(); }

std::size_t count_param(const json& params, const char* key, std::size_t minimum) {
  const auto value = params.at(key).get<std::int64_t>();
  require(value >= static_cast<std::int64_t>(minimum),
          std::string(key) + " must be at least " + std::to_string(minimum));
  return static_cast<std::size_t>(value);
}

Index dim_param(const json& params, const char* key) {
  return static_cast<Index>(count_param(params, key, 1));
}

class Outputs {
 public:
  explicit Outputs(const ExperimentSpec& spec) : dir_(spec.output_dir) {}
  bool enabled() const { return !dir_.empty(); }
  void text(const std::string& name, const std::string& body) {
    if (!enabled()) return;
    io::write_text(dir_ / name, body);
    files_.push_back(name);
  }
  void json_file(const std::string& name, const json& body) {
    if (!enabled()) return;
    io::write_json(dir_ / name, body);
    files_.push_back(name);
  }
  void dictionary(const std::string& stem, const Dictionary& dict) {
    if (!enabled()) return;
    io::save_dictionary(dir_ / stem, dict);
    files_.push_back(stem + ".csv");
    files_.push_back(stem + ".json");
  }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string num(double value) { return io::format_double(value); }

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Heatmap: return "heatmap";
    case ExperimentKind::NoiseSweep: return "noise-sweep";
    case ExperimentKind::SparsitySweep: return "sparsity-sweep";
    case ExperimentKind::CoherenceSweep: return "coherence-sweep";
    case ExperimentKind::DictRecovery: return "dict-recovery";
    case ExperimentKind::BoundsCheck: return "bounds-check";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (const auto kind : {ExperimentKind::Heatmap, ExperimentKind::NoiseSweep,
                          ExperimentKind::SparsitySweep, ExperimentKind::CoherenceSweep,
                          ExperimentKind::DictRecovery, ExperimentKind::BoundsCheck})
    if (name == to_string(kind)) return kind;
  throw InvalidArgument("unknown experiment kind '" + name + "'");
}

json default_parameters(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Heatmap: return heatmap_defaults();
    case ExperimentKind::NoiseSweep: return noise_sweep_defaults();
    case ExperimentKind::SparsitySweep: return sparsity_sweep_defaults();
    case ExperimentKind::CoherenceSweep: return coherence_sweep_defaults();
    case ExperimentKind::DictRecovery: return dict_recovery_defaults();
    case ExperimentKind::BoundsCheck: return bounds_check_defaults();
  }
  throw std::logic_error("unknown experiment kind");
}

json resolve_parameters(const ExperimentSpec& spec) {
  require(spec.parameters.is_object(), "parameters must be a JSON object");
  json resolved = default_parameters(spec.kind);
  for (const auto& [key, value] : spec.parameters.items()) {
    require(resolved.contains(key),
            std::string("unknown parameter '") + key + "' for " + to_string(spec.kind));
    require(same_kind(resolved[key], value), std::string("parameter '") + key + "' has the wrong type");
    resolved[key] = value;
  }
  require(spec.threads >= 1, "threads must be at least 1");
  return resolved;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  require(n >= 2, "linspace needs at least two points");
  std::vector<double> out(n);
  // Snapped to 12 decimals so decimal grid points such as 1.0 or 0.5 are exact.
  const auto last = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = lo + (hi - lo) * static_cast<double>(k) / last;
    out[k] = std::round(v * 1e12) / 1e12;
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  require(lo > 0.0 && hi > 0.0, "logspace bounds must be positive");
  std::vector<double> out = linspace(std::log10(lo), std::log10(hi), n);
  for (double& v : out) v = std::pow(10.0, v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

HeatmapResult run_heatmap(const ExperimentSpec& spec) {
  const json P = resolve_parameters(spec);
  const Index m = dim_param(P, "m");
  const Index n = dim_param(P, "n");
  const Index N = dim_param(P, "samples");
  const double p = P.at("p").get<double>();
  const double threshold = P.at("threshold").get<double>();
  const auto dicts = strings(P.at("dictionaries"));
  const auto signal_types = strings(P.at("signal_types"));

  HeatmapResult result;
  result.c_grid = linspace(P.at("c_min"), P.at("c_max"), count_param(P, "c_steps", 2));
  result.delta_b_grid =
      linspace(P.at("delta_b_min"), P.at("delta_b_max"), count_param(P, "delta_b_steps", 2));
  const std::size_t cells = result.c_grid.size() * result.delta_b_grid.size();

  const std::size_t jobs = dicts.size() * signal_types.size();
  std::vector<std::vector<HeatmapRow>> blocks(jobs);
  parallel_for(jobs, spec.threads, [&](std::size_t job) {
    const std::size_t d = job / signal_types.size();
    const std::size_t s = job % signal_types.size();
    const bool binary = is_binary_type(signal_types[s]);
    const Dictionary dict = generate(generator_from_string(dicts[d]), m, n, sub(spec.seed, 1, d));
    const BinsParams params = make_params(binary, m, p);
    const SignalBatch H = sample_signals(params, m, N, sub(spec.seed, 2, job));
    const DataBatch X = generate_data(dict, H, std::nullopt, sub(spec.seed, 3, job));
    const Matrix Z = preactivations(dict, X.X, analytic_data_mean(dict, params));

    auto& block = blocks[job];
    block.reserve(cells);
    for (const double c : result.c_grid)
      for (const double db : result.delta_b_grid) {
        const RecoveryConfig cfg = make_recovery(binary, c, db, threshold);
        block.push_back({signal_types[s], dicts[d], c, db, score(H.values, activate(Z, params, cfg), params, cfg)});
      }
  });

  for (const auto& block : blocks) {
    const auto best = std::min_element(block.begin(), block.end(),
                                       [](const HeatmapRow& a, const HeatmapRow& b) { return a.apre < b.apre; });
    result.argmin.push_back(*best);
    result.rows.insert(result.rows.end(), block.begin(), block.end());
  }
  return result;
}

std::vector<NoiseSweepRow> run_noise_sweep(const ExperimentSpec& spec) {
  const json P = resolve_parameters(spec);
  const Index m = dim_param(P, "m");
  const Index n = dim_param(P, "n");
  const Index N = dim_param(P, "samples");
  const double p = P.at("p").get<double>();
  const double threshold = P.at("threshold").get<double>();
  const double noise_mean = P.at("noise_mean").get<double>();
  const auto stds = logspace(P.at("std_min"), P.at("std_max"), count_param(P, "std_steps", 2));
  const auto signal_types = strings(P.at("signal_types"));
  const Dictionary dict = generate(generator_from_string(P.at("dictionary")), m, n, sub(spec.seed, 1, 0));

  std::vector<NoiseSweepRow> rows(signal_types.size() * stds.size());
  parallel_for(rows.size(), spec.threads, [&](std::size_t job) {
    const std::size_t s = job / stds.size();
    const std::size_t k = job % stds.size();
    const bool binary = is_binary_type(signal_types[s]);
    const BinsParams params = make_params(binary, m, p);
    const SignalBatch H = sample_signals(params, m, N, sub(spec.seed, 2, s));
    const DataBatch X = generate_data(dict, H, NoiseSpec{noise_mean, stds[k]}, sub(spec.seed, 3, job));
    const RecoveryConfig cfg = make_recovery(binary, 1.0, 0.0, threshold);
    rows[job] = {signal_types[s], stds[k], score(H.values, recover(dict, X, data_mean(X), params, cfg), params, cfg)};
  });
  return rows;
}

std::vector<SparsitySweepRow> run_sparsity_sweep(const ExperimentSpec& spec) {
  const json P = resolve_parameters(spec);
  const Index m = dim_param(P, "m");
  const Index n = dim_param(P, "n");
  const Index N = dim_param(P, "samples");
  const double threshold = P.at("threshold").get<double>();
  const auto ps = linspace(P.at("p_min"), P.at("p_max"), count_param(P, "p_steps", 2));
  const auto generators = strings(P.at("generators"));
  const auto signal_types = strings(P.at("signal_types"));
  std::vector<std::optional<NoiseSpec>> noises;
  if (P.at("include_noiseless").get<bool>()) noises.emplace_back(std::nullopt);
  noises.emplace_back(NoiseSpec{P.at("noise_mean"), P.at("noise_std")});

  std::vector<Dictionary> dicts;
  for (std::size_t g = 0; g < generators.size(); ++g)
    dicts.push_back(generate(generator_from_string(generators[g]), m, n, sub(spec.seed, 1, g)));

  // Signals are shared across generators and noise settings (paired design).
  const std::size_t per_signal = generators.size() * noises.size();
  std::vector<SparsitySweepRow> rows(signal_types.size() * ps.size() * per_signal);
  parallel_for(signal_types.size() * ps.size(), spec.threads, [&](std::size_t job) {
    const std::size_t s = job / ps.size();
    const std::size_t k = job % ps.size();
    const bool binary = is_binary_type(signal_types[s]);
    const BinsParams params = make_params(binary, m, ps[k]);
    const SignalBatch H = sample_signals(params, m, N, sub(spec.seed, 2, job));
    const RecoveryConfig cfg = make_recovery(binary, 1.0, 0.0, threshold);
    for (std::size_t g = 0; g < generators.size(); ++g)
      for (std::size_t v = 0; v < noises.size(); ++v) {
        const std::size_t slot = job * per_signal + g * noises.size() + v;
        const DataBatch X = generate_data(dicts[g], H, noises[v], sub(spec.seed, 3, slot));
        const auto& noise = noises[v];
        rows[slot] = {signal_types[s],
                      generators[g],
                      noise ? "gaussian" : "none",
                      noise ? noise->mean : 0.0,
                      noise ? noise->std : 0.0,
                      ps[k],
                      score(H.values, recover(dicts[g], X, data_mean(X), params, cfg), params, cfg)};
      }
  });
  return rows;
}

std::vector<CoherenceSweepRow> run_coherence_sweep(const ExperimentSpec& spec) {
  const json P = resolve_parameters(spec);
  const Index m = dim_param(P, "m");
  const auto n_grid = linspace(P.at("n_min").get<double>(), P.at("n_max").get<double>(),
                               count_param(P, "n_steps", 2));
  const std::size_t seeds = count_param(P, "seeds", 1);
  const auto generators = strings(P.at("generators"));
  require(m >= 2, "coherence needs at least two rows");

  std::vector<CoherenceSweepRow> rows(generators.size() * n_grid.size() * seeds);
  parallel_for(rows.size(), spec.threads, [&](std::size_t job) {
    const std::size_t g = job / (n_grid.size() * seeds);
    const std::size_t k = (job / seeds) % n_grid.size();
    const std::size_t r = job % seeds;
    const auto n = static_cast<Index>(std::llround(n_grid[k]));
    require(n >= 1, "n must be positive");
    const Seed seed = sub(spec.seed, 1 + k, r);
    const Generator generator = generator_from_string(generators[g]);
    // Orthogonalization needs m >= n; wider matrices get orthonormal rows.
    const Dictionary dict = generator == Generator::OrthogonalizedGaussian
                                ? gen_orthogonal_init(m, n, seed)
                                : generate(generator, m, n, seed);
    rows[job] = {generators[g], m, n, seed, coherence(dict),
                 n < m ? welch_bound(m, n) : std::numeric_limits<double>::quiet_NaN()};
  });
  return rows;
}

namespace {

std::vector<DictRecoveryRow> dict_recovery_impl(const ExperimentSpec& spec, json& records,
                                                Outputs& out) {
  const json P = resolve_parameters(spec);
  const Index m = dim_param(P, "m");
  const Index n = dim_param(P, "n");
  const Index N = dim_param(P, "samples");
  const double p = P.at("p").get<double>();
  const double threshold = P.at("threshold").get<double>();
  const double noise_mean = P.at("noise_mean").get<double>();
  const auto stds = P.at("noise_stds").get<std::vector<double>>();
  const auto signal_types = strings(P.at("signal_types"));
  require(!stds.empty(), "noise_stds must not be empty");
  for (const double s : stds) require(s >= 0.0, "noise std must be non-negative");

  const Dictionary truth = gen_orthogonalized_gaussian(m, n, sub(spec.seed, 1, 0));
  out.dictionary("true_dictionary", truth);

  const std::size_t jobs = signal_types.size() * stds.size();
  std::vector<DictRecoveryRow> rows(jobs);
  std::vector<json> job_records(jobs);
  std::vector<Dictionary> learned(jobs);
  parallel_for(jobs, spec.threads, [&](std::size_t job) {
    const std::size_t s = job / stds.size();
    const std::size_t k = job % stds.size();
    const bool binary = is_binary_type(signal_types[s]);
    const BinsParams params = make_params(binary, m, p);
    const SignalBatch H = sample_signals(params, m, N, sub(spec.seed, 2, s));
    std::optional<NoiseSpec> noise;
    if (stds[k] > 0.0) noise = NoiseSpec{noise_mean, stds[k]};
    const DataBatch X = generate_data(truth, H, noise, sub(spec.seed, 3, job));

    TrainConfig train;
    train.activation = binary ? TrainActivation::SaturatedSigmoid : TrainActivation::Relu;
    train.learning_rate = P.at("learning_rate").get<double>();
    train.epochs = static_cast<Index>(count_param(P, "epochs", 0));
    train.batch_size = static_cast<Index>(count_param(P, "batch_size", 1));
    train.init = init_kind_from_string(P.at("init"));
    train.seed = sub(spec.seed, 4, s);
    const TrainResult trained = train_autoencoder(X, m, train);

    const MatchResult match = greedy_match(truth, trained.dict);
    const RecoveryConfig cfg = make_recovery(binary, 1.0, 0.0, threshold);
    DictRecoveryRow& row = rows[job];
    row.signal_type = signal_types[s];
    row.noise_std = stds[k];
    row.cosine_p5 = match.p5;
    row.cosine_p50 = match.p50;
    row.cosine_p95 = match.p95;
    row.frac_cosine_ge_099 = (match.cosines.array() >= 0.99).cast<double>().mean();
    row.frac_cosine_ge_095 = (match.cosines.array() >= 0.95).cast<double>().mean();
    row.matched_apre = matched_apre(truth, trained.dict, match, H, X, params, cfg);
    row.final_loss = trained.epoch_loss.empty() ? trained.initial_loss : trained.epoch_loss.back();

    job_records[job] = run_record(train, trained);
    job_records[job]["signal_type"] = signal_types[s];
    job_records[job]["noise_std"] = stds[k];
    learned[job] = trained.dict;
  });

  records = json::array();
  for (std::size_t job = 0; job < jobs; ++job) {
    records.push_back(job_records[job]);
    out.dictionary("learned_" + rows[job].signal_type + "_std" + num(rows[job].noise_std), learned[job]);
  }
  return rows;
}

Dictionary hand_matrix() {
  Matrix W(3, 2);
  const double r = 1.0 / std::sqrt(2.0);
  W << 1.0, 0.0, 0.0, 1.0, r, r;
  return Dictionary{W, Generator::External, 0};
}

std::vector<BoundsCheckEntry> bounds_impl(const ExperimentSpec& spec) {
  const json P = resolve_parameters(spec);
  const Index m = dim_param(P, "m");
  const Index n = dim_param(P, "n");
  const double p = P.at("p").get<double>();
  const std::size_t steps = count_param(P, "delta_steps", 2);
  const double noise_mean = P.at("noise_mean").get<double>();

  std::vector<double> binary_grid(steps);
  for (std::size_t k = 0; k < steps; ++k)
    binary_grid[k] = static_cast<double>(k + 1) / static_cast<double>(steps + 1);
  const std::vector<double> continuous_grid = linspace(0.0, P.at("continuous_delta_max"), steps);

  struct Job {
    std::string config;
    Dictionary dict;
    bool binary;
    double p;
    Index samples;
    std::optional<NoiseSpec> noise;
  };
  std::vector<Job> jobs;
  const auto add_modes = [&](const std::string& config, const Dictionary& dict, double p_binary,
                             double p_continuous, Index samples, double noise_std) {
    for (const bool binary : {true, false})
      for (const bool noisy : {false, true})
        jobs.push_back({config, dict, binary, binary ? p_binary : p_continuous, samples,
                        noisy ? std::optional<NoiseSpec>(NoiseSpec{noise_mean, noise_std}) : std::nullopt});
  };
  const Index samples = dim_param(P, "samples");
  for (const auto& config : strings(P.at("configs"))) {
    if (config == "main") {
      add_modes(config, gen_orthogonalized_gaussian(m, n, sub(spec.seed, 1, 0)), p, p, samples,
                P.at("noise_std"));
    } else if (config == "hand") {
      add_modes(config, hand_matrix(), P.at("hand_p_binary"), P.at("hand_p_continuous"),
                dim_param(P, "hand_samples"), P.at("hand_noise_std"));
    } else if (config == "orthonormal") {
      // Identity rows keep every product exact, so recovery is exact too.
      add_modes(config, Dictionary{Matrix::Identity(4, 4), Generator::External, 0}, p, p, samples,
                P.at("noise_std"));
    } else if (config == "coherent") {
      add_modes(config, gen_coherent_uniform(m, n, sub(spec.seed, 1, 1)), p, p, samples,
                P.at("noise_std"));
    } else {
      throw InvalidArgument("unknown bounds config '" + config + "'");
    }
  }

  std::vector<BoundsCheckEntry> entries(jobs.size());
  parallel_for(jobs.size(), spec.threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    const BinsParams params = make_params(job.binary, job.dict.units(), job.p);
    RecoveryConfig cfg;
    cfg.activation = job.binary ? Activation::Sigmoid : Activation::Relu;
    entries[k] = {job.config,
                  empirical_recovery_prob(job.dict, params, cfg,
                                          job.binary ? binary_grid : continuous_grid, job.samples,
                                          sub(spec.seed, 2, k), job.noise)};
  });
  return entries;
}

void write_manifest(const ExperimentSpec& spec, Outputs& out, double wall_seconds) {
  if (!out.enabled()) return;
  const json manifest{{"kind", to_string(spec.kind)},
                      {"parameters", resolve_parameters(spec)},
                      {"seed", spec.seed},
                      {"threads", spec.threads},
                      {"version", version_string()},
                      {"wall_seconds", wall_seconds},
                      {"outputs", out.files()}};
  io::write_json(spec.output_dir / "manifest.json", manifest);
}

}  // namespace

std::vector<DictRecoveryRow> run_dict_recovery(const ExperimentSpec& spec) {
  ExperimentSpec quiet = spec;
  quiet.output_dir.clear();
  Outputs none(quiet);
  json records;
  return dict_recovery_impl(quiet, records, none);
}

std::vector<BoundsCheckEntry> run_bounds_check(const ExperimentSpec& spec) { return bounds_impl(spec); }

json run_experiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  resolve_parameters(spec);
  Outputs out(spec);

  switch (spec.kind) {
    case ExperimentKind::Heatmap: {
      const HeatmapResult result = run_heatmap(spec);
      const auto table = [](const std::vector<HeatmapRow>& rows) {
        std::string text = "signal_type,dict_type,c,delta_b,apre\n";
        for (const auto& r : rows)
          text += io::csv_row({r.signal_type, r.dict_type, num(r.c), num(r.delta_b), num(r.apre)});
        return text;
      };
      out.text("heatmap.csv", table(result.rows));
      out.text("heatmap_argmin.csv", table(result.argmin));
      break;
    }
    case ExperimentKind::NoiseSweep: {
      std::string text = "signal_type,noise_std,apre\n";
      for (const auto& r : run_noise_sweep(spec))
        text += io::csv_row({r.signal_type, num(r.noise_std), num(r.apre)});
      out.text("noise_sweep.csv", text);
      break;
    }
    case ExperimentKind::SparsitySweep: {
      std::string text = "signal_type,generator,noise,noise_mean,noise_std,p,apre\n";
      for (const auto& r : run_sparsity_sweep(spec))
        text += io::csv_row({r.signal_type, r.generator, r.noise, num(r.noise_mean), num(r.noise_std),
                             num(r.p), num(r.apre)});
      out.text("sparsity_sweep.csv", text);
      break;
    }
    case ExperimentKind::CoherenceSweep: {
      std::string text = "generator,m,n,seed,coherence,welch_bound\n";
      for (const auto& r : run_coherence_sweep(spec))
        text += io::csv_row({r.generator, std::to_string(r.m), std::to_string(r.n), std::to_string(r.seed),
                             num(r.coherence), std::isnan(r.welch_bound) ? "" : num(r.welch_bound)});
      out.text("coherence_sweep.csv", text);
      break;
    }
    case ExperimentKind::DictRecovery: {
      json records;
      const auto rows = dict_recovery_impl(spec, records, out);
      std::string text =
          "signal_type,noise_std,cosine_p5,cosine_p50,cosine_p95,frac_cosine_ge_099,"
          "frac_cosine_ge_095,matched_apre,final_loss\n";
      for (const auto& r : rows)
        text += io::csv_row({r.signal_type, num(r.noise_std), num(r.cosine_p5), num(r.cosine_p50),
                             num(r.cosine_p95), num(r.frac_cosine_ge_099), num(r.frac_cosine_ge_095),
                             num(r.matched_apre), num(r.final_loss)});
      out.text("dict_recovery.csv", text);
      out.json_file("training_runs.json", records);
      break;
    }
    case ExperimentKind::BoundsCheck: {
      std::string combined = "config,delta,theoretical,empirical,n_samples,mode,std_error\n";
      for (const auto& entry : run_bounds_check(spec)) {
        const BoundReport& r = entry.report;
        out.text("bounds_" + entry.config + "_" + to_string(r.mode) + ".csv", bound_report_csv(r));
        for (std::size_t k = 0; k < r.delta_grid.size(); ++k)
          combined += io::csv_row({entry.config, num(r.delta_grid[k]), num(r.theoretical[k]),
                                   num(r.empirical[k]), std::to_string(r.n_samples), to_string(r.mode),
                                   num(r.standard_error(k))});
      }
      out.text("bounds.csv", combined);
      break;
    }
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(spec, out, wall);
  return {{"kind", to_string(spec.kind)}, {"outputs", out.files()}, {"wall_seconds", wall}};
}

}  // namespace aerecov
