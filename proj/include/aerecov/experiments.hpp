#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aerecov/bounds.hpp"
#include "aerecov/types.hpp"

namespace aerecov {

enum class ExperimentKind { Heatmap, NoiseSweep, SparsitySweep, CoherenceSweep, DictRecovery, BoundsCheck };

/// One experiment run. `parameters` overrides the kind's defaults; unknown
/// keys and type mismatches are rejected before any computation. An empty
/// `output_dir` keeps results in memory only.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Heatmap;
  nlohmann::json parameters = nlohmann::json::object();
  Seed seed = 0;
  std::filesystem::path output_dir;
  unsigned threads = 1;
};

nlohmann::json default_parameters(ExperimentKind kind);

/// Defaults merged with the overrides, validated.
nlohmann::json resolve_parameters(const ExperimentSpec& spec);

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// n evenly spaced points including both ends, snapped to 12 decimals.
/// Requires n >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// n points evenly spaced in log10 between lo and hi (both > 0).
std::vector<double> logspace(double lo, double hi, std::size_t n);

// heatmap.csv: signal_type,dict_type,c,delta_b,apre
// heatmap_argmin.csv: same columns, first minimal cell per (signal_type, dict_type)
struct HeatmapRow {
  std::string signal_type;
  std::string dict_type;
  double c = 0.0;
  double delta_b = 0.0;
  double apre = 0.0;
};
struct HeatmapResult {
  std::vector<double> c_grid;
  std::vector<double> delta_b_grid;
  std::vector<HeatmapRow> rows;
  std::vector<HeatmapRow> argmin;
};
HeatmapResult run_heatmap(const ExperimentSpec& spec);

// noise_sweep.csv: signal_type,noise_std,apre
struct NoiseSweepRow {
  std::string signal_type;
  double noise_std = 0.0;
  double apre = 0.0;
};
std::vector<NoiseSweepRow> run_noise_sweep(const ExperimentSpec& spec);

// sparsity_sweep.csv: signal_type,generator,noise,noise_mean,noise_std,p,apre
struct SparsitySweepRow {
  std::string signal_type;
  std::string generator;
  std::string noise;  ///< "none" or "gaussian"
  double noise_mean = 0.0;
  double noise_std = 0.0;
  double p = 0.0;
  double apre = 0.0;
};
std::vector<SparsitySweepRow> run_sparsity_sweep(const ExperimentSpec& spec);

// coherence_sweep.csv: generator,m,n,seed,coherence,welch_bound (empty when n >= m)
struct CoherenceSweepRow {
  std::string generator;
  Index m = 0;
  Index n = 0;
  Seed seed = 0;
  double coherence = 0.0;
  double welch_bound = 0.0;  ///< NaN when n >= m
};
std::vector<CoherenceSweepRow> run_coherence_sweep(const ExperimentSpec& spec);

// dict_recovery.csv: signal_type,noise_std,cosine_p5,cosine_p50,cosine_p95,
//                    frac_cosine_ge_099,frac_cosine_ge_095,matched_apre,final_loss
struct DictRecoveryRow {
  std::string signal_type;
  double noise_std = 0.0;
  double cosine_p5 = 0.0;
  double cosine_p50 = 0.0;
  double cosine_p95 = 0.0;
  double frac_cosine_ge_099 = 0.0;
  double frac_cosine_ge_095 = 0.0;
  double matched_apre = 0.0;
  double final_loss = 0.0;
};
std::vector<DictRecoveryRow> run_dict_recovery(const ExperimentSpec& spec);

// bounds.csv: config,delta,theoretical,empirical,n_samples,mode,std_error
// bounds_<config>_<mode>.csv: delta,theoretical,empirical,n_samples,mode
struct BoundsCheckEntry {
  std::string config;
  BoundReport report;
};
std::vector<BoundsCheckEntry> run_bounds_check(const ExperimentSpec& spec);

/// Dispatches on spec.kind; returns the resolved manifest.
nlohmann::json run_experiment(const ExperimentSpec& spec);

/// Version string of this build.
const char* version_string();

}  // namespace aerecov
