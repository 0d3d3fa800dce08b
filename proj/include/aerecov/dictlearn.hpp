#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "aerecov/datagen.hpp"
#include "aerecov/dictionary.hpp"
#include "aerecov/recovery.hpp"
#include "aerecov/signals.hpp"

namespace aerecov {

enum class TrainActivation {
  Relu,              ///< max(0, z)
  SaturatedSigmoid,  ///< sigmoid(c (z + k))
};

enum class InitKind { OrthogonalizedGaussian, PlainGaussian, WarmStart };

struct TrainConfig {
  TrainActivation activation = TrainActivation::Relu;
  double sigmoid_c = 6.0;
  double sigmoid_k = -0.6;
  double learning_rate = 200.0;  ///< in units of the per-coordinate loss
  Index epochs = 150;
  Index batch_size = 100;
  InitKind init = InitKind::OrthogonalizedGaussian;
  std::optional<Matrix> warm_start;  ///< required iff init == WarmStart
  Seed seed = 0;

  void validate() const;
};

struct TrainResult {
  Dictionary dict;
  double initial_loss = 0.0;       ///< before any update
  std::vector<double> epoch_loss;  ///< mean minibatch loss per epoch
  Index steps = 0;
  double wall_seconds = 0.0;
};

/// Thrown when the loss becomes non-finite; carries the trace so far.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<double> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

/// Mean squared reconstruction error per coordinate,
///   (1 / (N n)) sum_x ||x - W^T s(W x)||^2,
/// of rows `Xc` that are already mean-centered.
double reconstruction_loss(const Matrix& W, const Matrix& Xc, const TrainConfig& cfg);

/// Projected minibatch SGD on the reconstruction objective. The data mean is
/// subtracted once up front; every update is followed by rescaling each row
/// of W to unit norm. Reshuffles every epoch from the seed.
TrainResult train_autoencoder(const DataBatch& data, Index m, const TrainConfig& cfg);

struct MatchResult {
  /// permutation[j] is the learned row paired with true row j.
  std::vector<Index> permutation;
  /// Cosine of each pair, in true-row order.
  Vector cosines;
  double p5 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
};

/// Greedy pairing by largest dot product; ties go to the lowest
/// (true index, learned index).
MatchResult greedy_match(const Dictionary& W_true, const Dictionary& W_learned);

/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);

/// Closed-form recovery with the learned dictionary (empirical data mean),
/// realigned to the true units by the match, then scored with APRE.
/// Sigmoid estimates are binarized at cfg.binarize_threshold.
double matched_apre(const Dictionary& W_true, const Dictionary& W_learned,
                    const MatchResult& match, const SignalBatch& H, const DataBatch& X,
                    const BinsParams& params, const RecoveryConfig& cfg);

const char* to_string(TrainActivation activation);
TrainActivation train_activation_from_string(const std::string& name);
const char* to_string(InitKind init);
InitKind init_kind_from_string(const std::string& name);

/// Hyperparameters only; a warm-start matrix is flagged, not embedded.
void to_json(nlohmann::json& j, const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::json& j);

/// {config, initial_loss, epoch_loss, steps, wall_seconds}.
nlohmann::json run_record(const TrainConfig& cfg, const TrainResult& result);

}  // namespace aerecov
