#include "aerecov/datagen.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "aerecov/rng.hpp"

namespace aerecov {

DataBatch generate_data(const Dictionary& dict, const SignalBatch& signals,
                        const Vector& b_d, double scale_c,
                        const std::optional<NoiseSpec>& noise, Seed seed) {
  const Index n = dict.data_dim();
  require(signals.dim() == dict.units(),
          "generate_data: signal dimension differs from dictionary rows");
  require(b_d.size() == n, "generate_data: b_d length differs from data dimension");
  if (noise) require(noise->std >= 0.0, "generate_data: noise std must be >= 0");

  Matrix X = scale_c * (signals.values * dict.W);
  X.rowwise() += b_d.transpose();
  if (noise) {
    for (Index i = 0; i < X.rows(); ++i) {
      auto engine = rng::stream(seed, rng::Purpose::Noise, static_cast<std::uint64_t>(i));
      for (Index k = 0; k < n; ++k)
        X(i, k) += noise->mean + noise->std * rng::standard_normal(engine);
    }
  }
  return DataBatch{std::move(X), seed, scale_c, b_d, noise};
}

DataBatch generate_data(const Dictionary& dict, const SignalBatch& signals,
                        const std::optional<NoiseSpec>& noise, Seed seed) {
  return generate_data(dict, signals, Vector::Zero(dict.data_dim()), 1.0, noise, seed);
}

Vector data_mean(const Matrix& X) {
  require(X.rows() >= 1, "data_mean: needs at least one sample");
  return X.colwise().mean().transpose();
}

Vector data_mean(const DataBatch& data) { return data_mean(data.X); }

Vector analytic_data_mean(const Dictionary& dict, const BinsParams& params,
                          double scale_c, const Vector& b_d,
                          const std::optional<NoiseSpec>& noise) {
  require(params.dim() == dict.units(), "analytic_data_mean: dimension mismatch");
  Vector mean = scale_c * (dict.W.transpose() * signal_mean(params));
  if (b_d.size() != 0) {
    require(b_d.size() == dict.data_dim(), "analytic_data_mean: b_d length mismatch");
    mean += b_d;
  }
  if (noise) mean.array() += noise->mean;
  return mean;
}

Matrix empirical_covariance(const Matrix& X) {
  require(X.rows() >= 2, "empirical_covariance: needs at least two samples");
  const Matrix centered = X.rowwise() - X.colwise().mean();
  return (centered.transpose() * centered) / static_cast<double>(X.rows() - 1);
}

double sphericity_gap_of(const Matrix& covariance) {
  const double alpha = covariance.trace() / static_cast<double>(covariance.rows());
  Matrix diff = covariance;
  diff.diagonal().array() -= alpha;
  return diff.norm();
}

double sphericity_gap(const DataBatch& data) {
  require(data.samples() >= 2, "sphericity_gap: needs at least two samples");
  return sphericity_gap_of(empirical_covariance(data.X));
}

double sphericity_bound(const Vector& zeta, Index n) {
  require(n >= 1, "sphericity_bound: n must be at least 1");
  require(zeta.size() >= 1, "sphericity_bound: zeta must not be empty");
  require((zeta.array() >= 0.0).all(), "sphericity_bound: zeta must be non-negative");
  const double m = static_cast<double>(zeta.size());
  // m ||zeta||_2^2 - ||zeta||_1^2 is invariant under a common shift; shifting
  // by zeta_0 makes equal entries give exactly 0.
  const Eigen::ArrayXd d = zeta.array() - zeta(0);
  const double inner = std::max(0.0, m * d.square().sum() - d.sum() * d.sum());
  return std::sqrt(inner / static_cast<double>(n));
}

void to_json(nlohmann::json& j, const NoiseSpec& noise) {
  j = nlohmann::json{{"mean", noise.mean}, {"std", noise.std}};
}

NoiseSpec noise_spec_from_json(const nlohmann::json& j) {
  NoiseSpec noise{j.value("mean", 0.0), j.value("std", 0.0)};
  require(noise.std >= 0.0, "noise: std must be >= 0");
  return noise;
}

}  // namespace aerecov
