#include "aerecov/signals.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "aerecov/rng.hpp"

namespace aerecov {

namespace {

double implied_mu(FcKind fc, double l_max) {
  return fc == FcKind::UniformOnZeroToLmax ? 0.5 * l_max : l_max;
}

double second_moment(FcKind fc, double l_max) {
  return fc == FcKind::UniformOnZeroToLmax ? l_max * l_max / 3.0
                                           : l_max * l_max;
}

}  // namespace

BinsParams::BinsParams(Vector p, FcKind fc, Vector mu_h, Vector l_max)
    : p_(std::move(p)), fc_(fc), mu_h_(std::move(mu_h)), l_max_(std::move(l_max)) {
  require(p_.size() >= 1, "BinsParams: dimension must be at least 1");
  require(mu_h_.size() == p_.size() && l_max_.size() == p_.size(),
          "BinsParams: p, mu_h and l_max must have equal length");
  for (Index j = 0; j < p_.size(); ++j) {
    require(p_(j) >= 0.0 && p_(j) <= 1.0, "BinsParams: p must lie in [0, 1]");
    require(l_max_(j) > 0.0 && std::isfinite(l_max_(j)),
            "BinsParams: l_max must be positive and finite");
    require(mu_h_(j) > 0.0 && mu_h_(j) <= l_max_(j),
            "BinsParams: mu_h must lie in (0, l_max]");
    const double expected = implied_mu(fc_, l_max_(j));
    require(std::abs(mu_h_(j) - expected) <= 1e-12 * l_max_(j),
            std::string("BinsParams: mu_h inconsistent with fc = ") + to_string(fc_));
  }
}

BinsParams BinsParams::broadcast(Index m, double p, FcKind fc, double l_max) {
  return broadcast(m, p, fc, implied_mu(fc, l_max), l_max);
}

BinsParams BinsParams::broadcast(Index m, double p, FcKind fc, double mu_h,
                                 double l_max) {
  require(m >= 1, "BinsParams: dimension must be at least 1");
  return BinsParams(Vector::Constant(m, p), fc, Vector::Constant(m, mu_h),
                    Vector::Constant(m, l_max));
}

bool BinsParams::is_binary() const {
  return fc_ == FcKind::DiracAtLmax && (l_max_.array() == 1.0).all();
}

bool BinsParams::has_uniform_p() const {
  return (p_.array() == p_(0)).all();
}

SignalBatch sample_signals(const BinsParams& params, Index m, Index n_samples,
                           Seed seed) {
  require(params.dim() == m, "sample_signals: params dimension differs from m");
  require(n_samples >= 1, "sample_signals: n_samples must be at least 1");

  Matrix values(n_samples, m);
  const bool dirac = params.fc() == FcKind::DiracAtLmax;
  for (Index i = 0; i < n_samples; ++i) {
    auto engine = rng::stream(seed, rng::Purpose::Signals, static_cast<std::uint64_t>(i));
    for (Index j = 0; j < m; ++j) {
      const bool active = rng::uniform_closed_open(engine) < params.p()(j);
      if (!active) {
        values(i, j) = 0.0;
      } else if (dirac) {
        values(i, j) = params.l_max()(j);
      } else {
        values(i, j) = params.l_max()(j) * rng::uniform_open_closed(engine);
      }
    }
  }
  return SignalBatch{std::move(values), params, seed};
}

Vector signal_mean(const BinsParams& params) {
  return params.p().cwiseProduct(params.mu_h());
}

Vector signal_variance(const BinsParams& params) {
  Vector zeta(params.dim());
  for (Index j = 0; j < params.dim(); ++j) {
    const double p = params.p()(j);
    const double mean = p * params.mu_h()(j);
    zeta(j) = p * second_moment(params.fc(), params.l_max()(j)) - mean * mean;
  }
  return zeta;
}

const char* to_string(FcKind kind) {
  return kind == FcKind::UniformOnZeroToLmax ? "uniform" : "dirac";
}

FcKind fc_kind_from_string(const std::string& name) {
  if (name == "uniform") return FcKind::UniformOnZeroToLmax;
  if (name == "dirac") return FcKind::DiracAtLmax;
  throw InvalidArgument("unknown fc kind '" + name + "' (expected uniform|dirac)");
}

namespace {

nlohmann::json compact(const Vector& v) {
  if ((v.array() == v(0)).all()) return v(0);
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector expand(const nlohmann::json& j, Index m, const char* field) {
  if (j.is_number()) return Vector::Constant(m, j.get<double>());
  require(j.is_array(), std::string("BinsParams json: '") + field +
                            "' must be a number or an array");
  const auto values = j.get<std::vector<double>>();
  require(static_cast<Index>(values.size()) == m,
          std::string("BinsParams json: '") + field + "' has wrong length");
  return Eigen::Map<const Vector>(values.data(), m);
}

}  // namespace

void to_json(nlohmann::json& j, const BinsParams& params) {
  j = nlohmann::json{{"p", compact(params.p())},
                     {"fc", to_string(params.fc())},
                     {"mu_h", compact(params.mu_h())},
                     {"l_max", compact(params.l_max())}};
}

BinsParams bins_params_from_json(const nlohmann::json& j, Index m) {
  require(j.is_object(), "BinsParams json: expected an object");
  const FcKind fc = fc_kind_from_string(j.at("fc").get<std::string>());
  Vector p = expand(j.at("p"), m, "p");
  Vector l_max = expand(j.at("l_max"), m, "l_max");
  Vector mu_h = j.contains("mu_h")
                    ? expand(j.at("mu_h"), m, "mu_h")
                    : Vector(fc == FcKind::UniformOnZeroToLmax ? Vector(0.5 * l_max) : l_max);
  return BinsParams(std::move(p), fc, std::move(mu_h), std::move(l_max));
}

}  // namespace aerecov
