#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aerecov/datagen.hpp"
#include "aerecov/dictionary.hpp"
#include "aerecov/recovery.hpp"
#include "aerecov/signals.hpp"

namespace aerecov {

enum class BoundMode { BinaryNoiseless, BinaryNoisy, ContinuousNoiseless, ContinuousNoisy };

/// Lower bounds on P((1/m) ||hhat - h||_1 <= delta) for the closed-form
/// encoder, evaluated unclamped (negative values are vacuous, not errors).
///
/// Every failure summand has the form w * exp(-2 d^2 / S) where d is the
/// Chernoff deviation and S the Hoeffding spread of unit i:
///  - S = 0 with d >= 0 means the pre-activation is deterministic and never
///    crosses the threshold, so the summand is 0.
///  - d < 0 means no positive Chernoff parameter improves on the trivial
///    bound, so the exponential factor is 1. With S = 0 this is exact:
///    the deterministic deviation always crosses the threshold.
/// Both rules leave the closed form untouched wherever it applies (d > 0, S > 0).
///
/// The evaluators below cache the Gram-derived quantities so that a bound can
/// be evaluated for many deltas and noise realizations cheaply.
class BinaryBound {
 public:
  BinaryBound(const Dictionary& dict, const BinsParams& params);

  /// Requires 0 < delta < 1.
  double operator()(double delta) const;

  /// Per-sample noisy bound; `noise_dev` is e - E[e] for one realization.
  double operator()(double delta, const Vector& noise_dev) const;

  /// Same as above with the projections W_i . (e - E[e]) precomputed.
  double with_projection(double delta, const Vector& projected_dev) const;

  const Matrix& weights() const { return W_; }

 private:
  Matrix W_;
  Vector p_;
  Vector a_diag_;
  Vector spread_;  // sum_{j != i} a_ij^2
};

class ContinuousBound {
 public:
  ContinuousBound(const Dictionary& dict, const BinsParams& params);

  /// Requires delta >= 0.
  double operator()(double delta) const;
  double operator()(double delta, const Vector& noise_dev) const;
  double with_projection(double delta, const Vector& projected_dev) const;

  const Matrix& weights() const { return W_; }

 private:
  Matrix W_;
  Vector shift_pos_;  // sum_j (1-p_j)(l_j - 2 p_j mu_j) max(0,  a_ij)
  Vector shift_neg_;  // sum_j (1-p_j)(l_j - 2 p_j mu_j) max(0, -a_ij)
  Vector spread_;     // sum_j a_ij^2 l_j^2
};

double bound_binary_noiseless(const Dictionary& dict, const BinsParams& params, double delta);
double bound_binary_noisy(const Dictionary& dict, const BinsParams& params, double delta,
                          const Vector& noise_dev);
double bound_continuous_noiseless(const Dictionary& dict, const BinsParams& params,
                                  double delta);
double bound_continuous_noisy(const Dictionary& dict, const BinsParams& params, double delta,
                              const Vector& noise_dev);

/// ln(delta / (1 - delta)).
double logit(double delta);

struct BoundReport {
  std::vector<double> delta_grid;
  std::vector<double> theoretical;
  std::vector<double> empirical;
  Index n_samples = 0;
  BoundMode mode = BoundMode::ContinuousNoiseless;
  /// Noisy modes only: samples x deltas matrix of per-sample bounds.
  Matrix per_sample_theoretical;

  /// Binomial standard error of empirical[k].
  double standard_error(std::size_t k) const;
};

/// Monte-Carlo estimate of the recovery probability next to the bound.
/// Recovery uses the theoretical bias (scale 1, no offset); `cfg` selects the
/// activation, which must match the signal kind (Sigmoid for {0,1} signals,
/// Relu for uniform). Noisy modes average the per-sample bound over the
/// realized noise.
BoundReport empirical_recovery_prob(const Dictionary& dict, const BinsParams& params,
                                    const RecoveryConfig& cfg,
                                    const std::vector<double>& delta_grid, Index n_samples,
                                    Seed seed, const std::optional<NoiseSpec>& noise);

const char* to_string(BoundMode mode);

/// CSV with header delta,theoretical,empirical,n_samples,mode.
std::string bound_report_csv(const BoundReport& report, bool header = true);

}  // namespace aerecov
