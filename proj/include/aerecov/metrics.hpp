#pragma once

#include "aerecov/types.hpp"

namespace aerecov {

/// Tolerance and class-balancing probability for the weighted error metric.
struct ApreConfig {
  double epsilon = 0.1;      ///< 0.1 for continuous signals, 0 for binary
  double p_weighting = 0.02;  ///< activation probability used in the weights

  void validate() const;
};

/// Average percentage recovery error in [0, 100]. An entry counts as wrong
/// when |hhat - h| > epsilon; wrong nonzero entries weigh 0.5/p, wrong zero
/// entries 0.5/(1-p), so an all-zero predictor scores about 50.
///
/// The result is the correctly rounded value of the defining sum: errors are
/// tallied as integers and combined in quad precision.
double apre(const Matrix& H, const Matrix& Hhat, const ApreConfig& cfg);

/// Per-dimension weights, for signals whose activation probability varies.
double apre(const Matrix& H, const Matrix& Hhat, double epsilon, const Vector& p_weighting);

/// (1/m) ||hhat - h||_1 for every sample, correctly rounded.
Vector mean_l1_error(const Matrix& H, const Matrix& Hhat);

}  // namespace aerecov
