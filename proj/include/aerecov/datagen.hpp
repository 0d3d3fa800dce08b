#pragma once

#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "aerecov/dictionary.hpp"
#include "aerecov/signals.hpp"

namespace aerecov {

/// Isotropic Gaussian noise, the same mean and std on every coordinate.
struct NoiseSpec {
  double mean = 0.0;
  double std = 0.0;
};

/// N x n measurements, one per row: x = scale_c W^T h + b_d + e.
struct DataBatch {
  Matrix X;
  Seed source_seed = 0;
  double scale_c = 1.0;
  Vector b_d;
  std::optional<NoiseSpec> noise;

  Index samples() const { return X.rows(); }
  Index dim() const { return X.cols(); }
};

/// Noise for row i comes from its own stream of `seed`.
DataBatch generate_data(const Dictionary& dict, const SignalBatch& signals,
                        const Vector& b_d, double scale_c,
                        const std::optional<NoiseSpec>& noise, Seed seed);

/// Convenience overload with b_d = 0 and scale 1.
DataBatch generate_data(const Dictionary& dict, const SignalBatch& signals,
                        const std::optional<NoiseSpec>& noise, Seed seed);

/// Column-wise mean.
Vector data_mean(const DataBatch& data);
Vector data_mean(const Matrix& X);

/// Analytic mean of the generating process, scale_c W^T E[h] + b_d + E[e].
Vector analytic_data_mean(const Dictionary& dict, const BinsParams& params,
                          double scale_c = 1.0, const Vector& b_d = Vector(),
                          const std::optional<NoiseSpec>& noise = std::nullopt);

/// Unbiased (1/(N-1)) sample covariance. Requires N >= 2.
Matrix empirical_covariance(const Matrix& X);

/// ||Sigma - alpha* I||_F for alpha* = trace(Sigma) / n.
double sphericity_gap_of(const Matrix& covariance);

/// Sphericity gap of the empirical covariance of X. Requires N >= 2.
double sphericity_gap(const DataBatch& data);

/// sqrt((m ||zeta||_2^2 - ||zeta||_1^2) / n).
double sphericity_bound(const Vector& zeta, Index n);

void to_json(nlohmann::json& j, const NoiseSpec& noise);
NoiseSpec noise_spec_from_json(const nlohmann::json& j);

}  // namespace aerecov
