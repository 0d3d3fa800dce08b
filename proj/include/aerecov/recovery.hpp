#pragma once

#include <nlohmann/json_fwd.hpp>

#include "aerecov/datagen.hpp"
#include "aerecov/dictionary.hpp"
#include "aerecov/signals.hpp"

namespace aerecov {

enum class Activation { Relu, Sigmoid };

struct RecoveryConfig {
  Activation activation = Activation::Relu;
  double scale_c = 1.0;
  double delta_b = 0.0;
  double binarize_threshold = 0.55;  // Sigmoid only

  void validate() const;
};

/// b_i = -sum_j a_ij p_j mu_h_j with continuous-mode offsets. Cross-checked
/// against the data-mean form -W_i . E[x] + E[h_i].
Vector theoretical_bias_continuous(const Dictionary& dict, const BinsParams& params);

/// b_i = -sum_j a_ij p_j with binary-mode offsets. Requires {0,1} signals.
Vector theoretical_bias_binary(const Dictionary& dict, const BinsParams& params);

/// N x m matrix of W_i . (x - data_mean).
Matrix preactivations(const Dictionary& dict, const Matrix& X, const Vector& data_mean);

/// Applies the closed-form activation to centered pre-activations:
///   Relu:    max(0, c z_i + p_i mu_h_i + delta_b)
///   Sigmoid: sigmoid(c z_i + delta_b)
Matrix activate(const Matrix& Z, const BinsParams& params, const RecoveryConfig& cfg);

/// Closed-form signal estimate. The sigmoid output is not binarized.
Matrix recover(const Dictionary& dict, const DataBatch& data, const Vector& data_mean,
               const BinsParams& params, const RecoveryConfig& cfg);

/// Plain encoder s(W x + bias) with an explicit bias vector.
Matrix encode(const Dictionary& dict, const Matrix& X, const Vector& bias,
              Activation activation);

/// Entries >= threshold become 1, the rest 0. Entries must lie in [0, 1].
Matrix binarize(const Matrix& estimate, double threshold);

double sigmoid(double z);

const char* to_string(Activation activation);
Activation activation_from_string(const std::string& name);

void to_json(nlohmann::json& j, const RecoveryConfig& cfg);
RecoveryConfig recovery_config_from_json(const nlohmann::json& j);

}  // namespace aerecov
