#include "aerecov/metrics.hpp"

#include <cmath>
#include <vector>

namespace aerecov {

namespace {

using Quad = __float128;

// |a - b| without the rounding of a double subtraction: any two doubles of
// comparable magnitude differ by a value that quad represents exactly.
Quad abs_diff(double a, double b) {
  const Quad d = static_cast<Quad>(a) - static_cast<Quad>(b);
  return d < 0 ? -d : d;
}

void require_same_shape(const Matrix& H, const Matrix& Hhat, const char* who) {
  require(H.rows() == Hhat.rows() && H.cols() == Hhat.cols(),
          std::string(who) + ": shape mismatch");
}

}  // namespace

void ApreConfig::validate() const {
  require(p_weighting > 0.0 && p_weighting < 1.0,
          "ApreConfig: p_weighting must lie strictly between 0 and 1");
  require(epsilon >= 0.0, "ApreConfig: epsilon must be >= 0");
}

double apre(const Matrix& H, const Matrix& Hhat, const ApreConfig& cfg) {
  cfg.validate();
  return apre(H, Hhat, cfg.epsilon, Vector::Constant(H.cols(), cfg.p_weighting));
}

double apre(const Matrix& H, const Matrix& Hhat, double epsilon, const Vector& p_weighting) {
  require_same_shape(H, Hhat, "apre");
  require(p_weighting.size() == H.cols(), "apre: p_weighting length mismatch");
  require(epsilon >= 0.0, "apre: epsilon must be >= 0");
  require(H.size() > 0, "apre: empty batch");
  require(H.allFinite() && Hhat.allFinite(), "apre: non-finite entries");
  for (Index j = 0; j < p_weighting.size(); ++j)
    require(p_weighting(j) > 0.0 && p_weighting(j) < 1.0,
            "apre: p_weighting must lie strictly between 0 and 1");

  Quad total = 0;
  for (Index j = 0; j < H.cols(); ++j) {
    std::int64_t wrong_active = 0;
    std::int64_t wrong_zero = 0;
    for (Index i = 0; i < H.rows(); ++i) {
      if (!(abs_diff(Hhat(i, j), H(i, j)) > static_cast<Quad>(epsilon))) continue;
      if (H(i, j) > 0.0) ++wrong_active; else ++wrong_zero;
    }
    const Quad p = p_weighting(j);
    total += static_cast<Quad>(wrong_active) * (Quad(0.5) / p) +
             static_cast<Quad>(wrong_zero) * (Quad(0.5) / (Quad(1) - p));
  }
  const Quad count = static_cast<Quad>(H.rows()) * static_cast<Quad>(H.cols());
  return static_cast<double>(Quad(100) * total / count);
}

Vector mean_l1_error(const Matrix& H, const Matrix& Hhat) {
  require_same_shape(H, Hhat, "mean_l1_error");
  require(H.cols() > 0, "mean_l1_error: signals have no dimensions");
  require(H.allFinite() && Hhat.allFinite(), "mean_l1_error: non-finite entries");
  Vector out(H.rows());
  std::vector<Quad> sums(static_cast<std::size_t>(H.rows()), Quad(0));
  for (Index j = 0; j < H.cols(); ++j)
    for (Index i = 0; i < H.rows(); ++i)
      sums[static_cast<std::size_t>(i)] += abs_diff(Hhat(i, j), H(i, j));
  const Quad m = static_cast<Quad>(H.cols());
  for (Index i = 0; i < H.rows(); ++i)
    out(i) = static_cast<double>(sums[static_cast<std::size_t>(i)] / m);
  return out;
}

}  // namespace aerecov
