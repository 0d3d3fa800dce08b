#pragma once

#include <nlohmann/json_fwd.hpp>

#include "aerecov/types.hpp"

namespace aerecov {

/// Shape of the nonzero part of a hidden unit.
enum class FcKind {
  UniformOnZeroToLmax,  ///< uniform on (0, l_max], conditional mean l_max / 2
  DiracAtLmax,          ///< point mass at l_max, conditional mean l_max
};

/// Bounded, independent, non-negative, sparse signal distribution.
///
/// Each hidden unit j is exactly 0 with probability 1 - p_j and otherwise
/// drawn from the conditional density named by `fc` on (0, l_max_j]. The
/// conditional mean mu_h is implied by `fc` and checked on construction.
class BinsParams {
 public:
  /// Per-dimension parameters. `mu_h` must match the value implied by `fc`.
  BinsParams(Vector p, FcKind fc, Vector mu_h, Vector l_max);

  /// Scalar parameters broadcast to `m` dimensions.
  static BinsParams broadcast(Index m, double p, FcKind fc, double l_max);

  /// Scalar parameters with an explicit conditional mean (validated).
  static BinsParams broadcast(Index m, double p, FcKind fc, double mu_h,
                              double l_max);

  Index dim() const { return p_.size(); }
  const Vector& p() const { return p_; }
  FcKind fc() const { return fc_; }
  const Vector& mu_h() const { return mu_h_; }
  const Vector& l_max() const { return l_max_; }

  /// True when every unit is {0, 1} valued (Dirac at l_max = 1).
  bool is_binary() const;

  /// Single activation probability shared by all units, if there is one.
  bool has_uniform_p() const;

  bool operator==(const BinsParams&) const = default;

 private:
  Vector p_;
  FcKind fc_;
  Vector mu_h_;
  Vector l_max_;
};

/// N x m matrix of sampled hidden signals, one sample per row.
struct SignalBatch {
  Matrix values;
  BinsParams params;
  Seed seed = 0;

  Index samples() const { return values.rows(); }
  Index dim() const { return values.cols(); }
};

/// Draws `n_samples` independent signals. `params` must have dimension `m`.
/// Row i uses its own random stream, so any subset of rows can be reproduced
/// without generating the rest.
SignalBatch sample_signals(const BinsParams& params, Index m, Index n_samples,
                           Seed seed);

/// E[h_j] = p_j mu_h_j.
Vector signal_mean(const BinsParams& params);

/// Var(h_j) = p_j E[v^2] - (p_j mu_h_j)^2.
Vector signal_variance(const BinsParams& params);

const char* to_string(FcKind kind);
FcKind fc_kind_from_string(const std::string& name);

void to_json(nlohmann::json& j, const BinsParams& params);
BinsParams bins_params_from_json(const nlohmann::json& j, Index m);

}  // namespace aerecov
