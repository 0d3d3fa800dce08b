// Command-line runner for the recovery experiments.
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "aerecov/experiments.hpp"
#include "aerecov/io.hpp"

namespace {

struct Options {
  std::string config;
  std::string out = "results";
  aerecov::Seed seed = 2024;
  std::optional<std::int64_t> samples;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> n;
  unsigned threads = 1;
};

// Applies a size override, rejecting it for kinds that have no such parameter.
void override_param(nlohmann::json& params, const nlohmann::json& defaults, const char* key,
                    const std::optional<std::int64_t>& value, const char* kind) {
  if (!value) return;
  if (!defaults.contains(key))
    throw aerecov::InvalidArgument(std::string("--") + key + " does not apply to " + kind);
  params[key] = *value;
}

int run(aerecov::ExperimentKind kind, const Options& opt) {
  aerecov::ExperimentSpec spec;
  spec.kind = kind;
  spec.seed = opt.seed;
  spec.output_dir = opt.out;
  spec.threads = opt.threads;
  if (!opt.config.empty()) spec.parameters = aerecov::io::read_json(opt.config);
  if (spec.parameters.is_null()) spec.parameters = nlohmann::json::object();

  const auto defaults = aerecov::default_parameters(kind);
  const char* name = aerecov::to_string(kind);
  override_param(spec.parameters, defaults, "samples", opt.samples, name);
  override_param(spec.parameters, defaults, "m", opt.m, name);
  override_param(spec.parameters, defaults, "n", opt.n, name);

  const auto summary = aerecov::run_experiment(spec);
  std::cout << name << ": wrote " << summary.at("outputs").size() << " files to " << opt.out
            << " in " << summary.at("wall_seconds").get<double>() << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-signal recovery experiments"};
  app.set_version_flag("--version", std::string(aerecov::version_string()));
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON file with parameter overrides")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--seed", opt.seed, "Root seed");
    sub->add_option("--samples", opt.samples, "Number of samples")->check(CLI::PositiveNumber);
    sub->add_option("--m", opt.m, "Hidden dimension")->check(CLI::PositiveNumber);
    sub->add_option("--n", opt.n, "Data dimension")->check(CLI::PositiveNumber);
    sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  std::optional<aerecov::ExperimentKind> chosen;
  for (const auto kind :
       {aerecov::ExperimentKind::Heatmap, aerecov::ExperimentKind::NoiseSweep,
        aerecov::ExperimentKind::SparsitySweep, aerecov::ExperimentKind::CoherenceSweep,
        aerecov::ExperimentKind::DictRecovery, aerecov::ExperimentKind::BoundsCheck}) {
    CLI::App* sub = app.add_subcommand(aerecov::to_string(kind));
    add_common(sub);
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return run(*chosen, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
