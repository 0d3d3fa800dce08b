#include "aerecov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aerecov/io.hpp"
#include "aerecov/metrics.hpp"
#include "aerecov/rng.hpp"

namespace aerecov {

namespace {

// Hoeffding tail with the deterministic and t <= 0 cases made explicit.
double tail(double deviation, double spread) {
  if (deviation < 0.0) return 1.0;
  if (spread == 0.0) return 0.0;
  return std::exp(-2.0 * deviation * deviation / spread);
}

void require_unit_rows(const Dictionary& dict) {
  const Vector norms = dict.W.rowwise().norm();
  require(((norms.array() - 1.0).abs() <= 1e-9).all(), "bounds require unit-norm rows");
}

}  // namespace

double logit(double delta) {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  return std::log(delta / (1.0 - delta));
}

BinaryBound::BinaryBound(const Dictionary& dict, const BinsParams& params) {
  require(params.is_binary(), "binary bound requires {0,1} signals");
  require(params.dim() == dict.units(), "signal dimension must match dictionary units");
  require_unit_rows(dict);
  W_ = dict.W;
  p_ = params.p();
  const Matrix A = gram_offsets(dict, GramMode::Binary).A;
  a_diag_ = A.diagonal();
  spread_ = A.array().square().rowwise().sum().matrix() - a_diag_.cwiseAbs2();
  for (Index i = 0; i < spread_.size(); ++i) spread_[i] = std::max(spread_[i], 0.0);
}

double BinaryBound::with_projection(double delta, const Vector& projected_dev) const {
  require(projected_dev.size() == p_.size(), "projection length must equal unit count");
  const double d = logit(delta);
  double failure = 0.0;
  for (Index i = 0; i < p_.size(); ++i) {
    const double base = d - projected_dev[i];
    failure += (1.0 - p_[i]) * tail(base + p_[i] * a_diag_[i], spread_[i]) +
               p_[i] * tail(base + (1.0 - p_[i]) * a_diag_[i], spread_[i]);
  }
  return 1.0 - failure;
}

double BinaryBound::operator()(double delta) const {
  return with_projection(delta, Vector::Zero(p_.size()));
}

double BinaryBound::operator()(double delta, const Vector& noise_dev) const {
  require(noise_dev.size() == W_.cols(), "noise deviation length must equal data dimension");
  return with_projection(delta, W_ * noise_dev);
}

ContinuousBound::ContinuousBound(const Dictionary& dict, const BinsParams& params) {
  require(params.fc() == FcKind::UniformOnZeroToLmax, "continuous bound requires uniform f_c");
  require(params.dim() == dict.units(), "signal dimension must match dictionary units");
  require_unit_rows(dict);
  W_ = dict.W;
  const Matrix A = gram_offsets(dict, GramMode::Continuous).A;
  const Vector& p = params.p();
  const Vector& l = params.l_max();
  const Vector weight = ((1.0 - p.array()) * (l.array() - 2.0 * p.array() * params.mu_h().array())).matrix();
  shift_pos_ = A.cwiseMax(0.0) * weight;
  shift_neg_ = (-A).cwiseMax(0.0) * weight;
  spread_ = A.array().square().matrix() * l.cwiseAbs2();
}

double ContinuousBound::with_projection(double delta, const Vector& projected_dev) const {
  require(delta >= 0.0, "delta must be non-negative");
  require(projected_dev.size() == spread_.size(), "projection length must equal unit count");
  double failure = 0.0;
  for (Index i = 0; i < spread_.size(); ++i) {
    const double base = delta - projected_dev[i];
    failure += tail(base + shift_pos_[i], spread_[i]) + tail(base + shift_neg_[i], spread_[i]);
  }
  return 1.0 - failure;
}

double ContinuousBound::operator()(double delta) const {
  return with_projection(delta, Vector::Zero(spread_.size()));
}

double ContinuousBound::operator()(double delta, const Vector& noise_dev) const {
  require(noise_dev.size() == W_.cols(), "noise deviation length must equal data dimension");
  return with_projection(delta, W_ * noise_dev);
}

double bound_binary_noiseless(const Dictionary& dict, const BinsParams& params, double delta) {
  return BinaryBound(dict, params)(delta);
}

double bound_binary_noisy(const Dictionary& dict, const BinsParams& params, double delta,
                          const Vector& noise_dev) {
  return BinaryBound(dict, params)(delta, noise_dev);
}

double bound_continuous_noiseless(const Dictionary& dict, const BinsParams& params,
                                  double delta) {
  return ContinuousBound(dict, params)(delta);
}

double bound_continuous_noisy(const Dictionary& dict, const BinsParams& params, double delta,
                              const Vector& noise_dev) {
  return ContinuousBound(dict, params)(delta, noise_dev);
}

double BoundReport::standard_error(std::size_t k) const {
  const double q = empirical.at(k);
  return n_samples > 0 ? std::sqrt(q * (1.0 - q) / static_cast<double>(n_samples)) : 0.0;
}

BoundReport empirical_recovery_prob(const Dictionary& dict, const BinsParams& params,
                                    const RecoveryConfig& cfg,
                                    const std::vector<double>& delta_grid, Index n_samples,
                                    Seed seed, const std::optional<NoiseSpec>& noise) {
  require(n_samples >= 1, "n_samples must be positive");
  require(!delta_grid.empty(), "delta grid must not be empty");
  const bool binary = cfg.activation == Activation::Sigmoid;
  if (binary)
    require(params.is_binary(), "sigmoid recovery requires {0,1} signals");
  else
    require(params.fc() == FcKind::UniformOnZeroToLmax, "relu recovery requires uniform f_c");

  BoundReport report;
  report.delta_grid = delta_grid;
  report.n_samples = n_samples;
  report.mode = binary ? (noise ? BoundMode::BinaryNoisy : BoundMode::BinaryNoiseless)
                       : (noise ? BoundMode::ContinuousNoisy : BoundMode::ContinuousNoiseless);

  const SignalBatch signals = sample_signals(params, dict.units(), n_samples, rng::derive(seed, 0));
  const Seed noise_seed = rng::derive(seed, 1);
  const DataBatch data = generate_data(dict, signals, noise, noise_seed);

  Vector bias = binary ? theoretical_bias_binary(dict, params)
                       : theoretical_bias_continuous(dict, params);
  if (noise) bias -= dict.W * Vector::Constant(dict.data_dim(), noise->mean);
  // Raw activations: the bounds concern the unthresholded sigmoid output.
  const Matrix estimate = encode(dict, data.X, bias, cfg.activation);
  const Vector error = mean_l1_error(signals.values, estimate);

  for (const double delta : delta_grid) {
    const Index hits = (error.array() <= delta).count();
    report.empirical.push_back(static_cast<double>(hits) / static_cast<double>(n_samples));
  }

  const auto evaluate = [&](double delta, const Vector& projected) {
    return binary ? BinaryBound(dict, params).with_projection(delta, projected)
                  : ContinuousBound(dict, params).with_projection(delta, projected);
  };
  if (!noise) {
    const Vector zero = Vector::Zero(dict.units());
    for (const double delta : delta_grid) report.theoretical.push_back(evaluate(delta, zero));
    return report;
  }

  // Realized noise, regenerated from the same per-row streams on zero signals.
  SignalBatch silent = signals;
  silent.values.setZero();
  const DataBatch pure_noise = generate_data(dict, silent, noise, noise_seed);
  const Matrix projected =
      (pure_noise.X.array() - noise->mean).matrix() * dict.W.transpose();  // N x m

  const auto k_deltas = static_cast<Index>(delta_grid.size());
  report.per_sample_theoretical.resize(n_samples, k_deltas);
  if (binary) {
    const BinaryBound bound(dict, params);
    for (Index s = 0; s < n_samples; ++s)
      for (Index k = 0; k < k_deltas; ++k)
        report.per_sample_theoretical(s, k) =
            bound.with_projection(delta_grid[static_cast<std::size_t>(k)], projected.row(s).transpose());
  } else {
    const ContinuousBound bound(dict, params);
    for (Index s = 0; s < n_samples; ++s)
      for (Index k = 0; k < k_deltas; ++k)
        report.per_sample_theoretical(s, k) =
            bound.with_projection(delta_grid[static_cast<std::size_t>(k)], projected.row(s).transpose());
  }
  for (Index k = 0; k < k_deltas; ++k)
    report.theoretical.push_back(report.per_sample_theoretical.col(k).mean());
  return report;
}

const char* to_string(BoundMode mode) {
  switch (mode) {
    case BoundMode::BinaryNoiseless: return "BinaryNoiseless";
    case BoundMode::BinaryNoisy: return "BinaryNoisy";
    case BoundMode::ContinuousNoiseless: return "ContinuousNoiseless";
    case BoundMode::ContinuousNoisy: return "ContinuousNoisy";
  }
  return "unknown";
}

std::string bound_report_csv(const BoundReport& report, bool header) {
  std::string text;
  if (header) text += "delta,theoretical,empirical,n_samples,mode\n";
  for (std::size_t k = 0; k < report.delta_grid.size(); ++k)
    text += io::csv_row({io::format_double(report.delta_grid[k]),
                         io::format_double(report.theoretical[k]),
                         io::format_double(report.empirical[k]),
                         std::to_string(report.n_samples), to_string(report.mode)});
  return text;
}

}  // namespace aerecov
