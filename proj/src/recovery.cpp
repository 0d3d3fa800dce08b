#include "aerecov/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace aerecov {

void RecoveryConfig::validate() const {
  require(scale_c > 0.0, "RecoveryConfig: scale_c must be positive");
  require(binarize_threshold > 0.0 && binarize_threshold < 1.0,
          "RecoveryConfig: threshold must lie in (0, 1)");
  require(std::isfinite(delta_b), "RecoveryConfig: delta_b must be finite");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Vector theoretical_bias_continuous(const Dictionary& dict, const BinsParams& params) {
  require(params.dim() == dict.units(),
          "theoretical_bias_continuous: params dimension differs from dictionary rows");
  const Vector mu = signal_mean(params);
  const GramOffsets a = gram_offsets(dict, GramMode::Continuous);
  Vector bias = -(a.A * mu);

  const Vector via_mean = -(dict.W * (dict.W.transpose() * mu)) + mu;
  const double scale = 1.0 + mu.lpNorm<Eigen::Infinity>() * static_cast<double>(dict.units());
  if ((bias - via_mean).lpNorm<Eigen::Infinity>() > 1e-9 * scale)
    throw std::logic_error("theoretical_bias_continuous: bias forms disagree");
  return bias;
}

Vector theoretical_bias_binary(const Dictionary& dict, const BinsParams& params) {
  require(params.dim() == dict.units(),
          "theoretical_bias_binary: params dimension differs from dictionary rows");
  require(params.is_binary(), "theoretical_bias_binary: requires Dirac at l_max = 1");
  const GramOffsets a = gram_offsets(dict, GramMode::Binary);
  return -(a.A * params.p());
}

Matrix preactivations(const Dictionary& dict, const Matrix& X, const Vector& data_mean) {
  require(X.cols() == dict.data_dim(), "preactivations: data dimension mismatch");
  require(data_mean.size() == dict.data_dim(), "preactivations: data_mean length mismatch");
  const Matrix centered = X.rowwise() - data_mean.transpose();
  return centered * dict.W.transpose();
}

Matrix activate(const Matrix& Z, const BinsParams& params, const RecoveryConfig& cfg) {
  cfg.validate();
  require(Z.cols() == params.dim(), "activate: params dimension mismatch");
  Matrix out(Z.rows(), Z.cols());
  if (cfg.activation == Activation::Relu) {
    const Vector offset = signal_mean(params).array() + cfg.delta_b;
    for (Index j = 0; j < Z.cols(); ++j)
      for (Index i = 0; i < Z.rows(); ++i)
        out(i, j) = std::max(0.0, cfg.scale_c * Z(i, j) + offset(j));
  } else {
    for (Index j = 0; j < Z.cols(); ++j)
      for (Index i = 0; i < Z.rows(); ++i)
        out(i, j) = sigmoid(cfg.scale_c * Z(i, j) + cfg.delta_b);
  }
  return out;
}

Matrix recover(const Dictionary& dict, const DataBatch& data, const Vector& data_mean,
               const BinsParams& params, const RecoveryConfig& cfg) {
  require(params.dim() == dict.units(), "recover: params dimension differs from dictionary rows");
  return activate(preactivations(dict, data.X, data_mean), params, cfg);
}

Matrix encode(const Dictionary& dict, const Matrix& X, const Vector& bias,
              Activation activation) {
  require(X.cols() == dict.data_dim(), "encode: data dimension mismatch");
  require(bias.size() == dict.units(), "encode: bias length mismatch");
  Matrix Z = X * dict.W.transpose();
  Z.rowwise() += bias.transpose();
  if (activation == Activation::Relu) return Z.cwiseMax(0.0);
  return Z.unaryExpr([](double z) { return sigmoid(z); });
}

Matrix binarize(const Matrix& estimate, double threshold) {
  require((estimate.array() >= 0.0).all() && (estimate.array() <= 1.0).all(),
          "binarize: entries must lie in [0, 1]");
  return (estimate.array() >= threshold).cast<double>();
}

const char* to_string(Activation activation) {
  return activation == Activation::Relu ? "relu" : "sigmoid";
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::Relu;
  if (name == "sigmoid") return Activation::Sigmoid;
  throw InvalidArgument("unknown activation '" + name + "' (expected relu|sigmoid)");
}

void to_json(nlohmann::json& j, const RecoveryConfig& cfg) {
  j = nlohmann::json{{"activation", to_string(cfg.activation)},
                     {"c", cfg.scale_c},
                     {"delta_b", cfg.delta_b},
                     {"threshold", cfg.binarize_threshold}};
}

RecoveryConfig recovery_config_from_json(const nlohmann::json& j) {
  RecoveryConfig cfg;
  cfg.activation = activation_from_string(j.at("activation").get<std::string>());
  cfg.scale_c = j.value("c", 1.0);
  cfg.delta_b = j.value("delta_b", 0.0);
  cfg.binarize_threshold = j.value("threshold", 0.55);
  cfg.validate();
  return cfg;
}

}  // namespace aerecov
