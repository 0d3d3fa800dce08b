#include "aerecov/dictlearn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <boost/random/uniform_int_distribution.hpp>
#include <nlohmann/json.hpp>

#include "aerecov/metrics.hpp"
#include "aerecov/rng.hpp"

namespace aerecov {

void TrainConfig::validate() const {
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "learning_rate must be positive");
  require(batch_size >= 1, "batch_size must be at least 1");
  require(epochs >= 0, "epochs must be non-negative");
  require(std::isfinite(sigmoid_c) && std::isfinite(sigmoid_k), "sigmoid constants must be finite");
  require((init == InitKind::WarmStart) == warm_start.has_value(),
          "a warm-start matrix is required exactly when init is WarmStart");
}

namespace {

// Encoder output and its derivative with respect to the pre-activation.
void encode_with_slope(const Matrix& Z, const TrainConfig& cfg, Matrix& A, Matrix& slope) {
  if (cfg.activation == TrainActivation::Relu) {
    A = Z.cwiseMax(0.0);
    slope = (Z.array() > 0.0).cast<double>();
    return;
  }
  const double c = cfg.sigmoid_c;
  const double k = cfg.sigmoid_k;
  A = Z.unaryExpr([c, k](double z) { return sigmoid(c * (z + k)); });
  slope = (c * A.array() * (1.0 - A.array())).matrix();
}

Matrix encode_only(const Matrix& Z, const TrainConfig& cfg) {
  if (cfg.activation == TrainActivation::Relu) return Z.cwiseMax(0.0);
  const double c = cfg.sigmoid_c;
  const double k = cfg.sigmoid_k;
  return Z.unaryExpr([c, k](double z) { return sigmoid(c * (z + k)); });
}

Matrix initial_weights(Index m, Index n, const TrainConfig& cfg) {
  switch (cfg.init) {
    case InitKind::OrthogonalizedGaussian: return gen_orthogonal_init(m, n, cfg.seed).W;
    case InitKind::PlainGaussian: return gen_plain_gaussian(m, n, cfg.seed).W;
    case InitKind::WarmStart: {
      const Matrix& W0 = *cfg.warm_start;
      require(W0.rows() == m && W0.cols() == n, "warm-start matrix has the wrong shape");
      Matrix W = W0;
      normalize_rows(W);
      return W;
    }
  }
  throw std::logic_error("unknown init kind");
}

void shuffle(std::vector<Index>& order, rng::Engine& engine) {
  // Fisher-Yates with a platform-stable bounded draw.
  for (std::size_t i = order.size(); i > 1; --i) {
    boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(engine)]);
  }
}

}  // namespace

double reconstruction_loss(const Matrix& W, const Matrix& Xc, const TrainConfig& cfg) {
  require(W.cols() == Xc.cols(), "data dimension must match dictionary columns");
  require(Xc.rows() >= 1, "loss needs at least one sample");
  const Matrix A = encode_only(Xc * W.transpose(), cfg);
  const Matrix R = A * W - Xc;
  return R.squaredNorm() / static_cast<double>(Xc.rows() * Xc.cols());
}

TrainResult train_autoencoder(const DataBatch& data, Index m, const TrainConfig& cfg) {
  cfg.validate();
  require(m >= 1, "m must be positive");
  const Index N = data.samples();
  const Index n = data.dim();
  require(N >= cfg.batch_size, "need at least batch_size samples");

  const auto start = std::chrono::steady_clock::now();
  const Matrix Xc = data.X.rowwise() - data_mean(data.X).transpose();

  TrainResult result;
  Matrix W = initial_weights(m, n, cfg);
  result.initial_loss = reconstruction_loss(W, Xc, cfg);
  if (!std::isfinite(result.initial_loss))
    throw DivergenceError("initial loss is not finite", {});

  std::vector<Index> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), Index{0});
  Matrix Xb, Z, A, slope, R, grad;
  for (Index epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng::Engine engine = rng::stream(cfg.seed, rng::Purpose::Shuffle, static_cast<std::uint64_t>(epoch));
    shuffle(order, engine);
    double loss_sum = 0.0;
    Index batches = 0;
    for (Index begin = 0; begin < N; begin += cfg.batch_size) {
      const Index B = std::min(cfg.batch_size, N - begin);
      Xb.resize(B, n);
      for (Index r = 0; r < B; ++r) Xb.row(r) = Xc.row(order[static_cast<std::size_t>(begin + r)]);

      Z.noalias() = Xb * W.transpose();
      encode_with_slope(Z, cfg, A, slope);
      R.noalias() = A * W;
      R -= Xb;
      const double scale = 1.0 / static_cast<double>(B * n);
      loss_sum += R.squaredNorm() * scale;
      ++batches;

      // d/dW of ||R||^2: decoder path A^T R plus encoder path (slope .* R W^T)^T Xb.
      grad.noalias() = A.transpose() * R;
      Z.noalias() = R * W.transpose();
      Z.array() *= slope.array();
      grad.noalias() += Z.transpose() * Xb;
      W.noalias() -= (2.0 * scale * cfg.learning_rate) * grad;
      normalize_rows(W);
      ++result.steps;
    }
    const double epoch_loss = loss_sum / static_cast<double>(batches);
    result.epoch_loss.push_back(epoch_loss);
    if (!std::isfinite(epoch_loss) || !W.allFinite())
      throw DivergenceError("training diverged in epoch " + std::to_string(epoch), result.epoch_loss);
  }

  result.dict = Dictionary{std::move(W), Generator::External, cfg.seed};
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double percentile(std::vector<double> values, double q) {
  require(!values.empty(), "percentile of an empty set");
  require(q >= 0.0 && q <= 100.0, "percentile must lie in [0, 100]");
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

MatchResult greedy_match(const Dictionary& W_true, const Dictionary& W_learned) {
  require(W_true.W.rows() == W_learned.W.rows() && W_true.W.cols() == W_learned.W.cols(),
          "dictionaries must have the same shape");
  const Index m = W_true.units();
  const Matrix dots = W_true.W * W_learned.W.transpose();

  struct Pair {
    double dot;
    Index t;
    Index l;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(m * m));
  for (Index t = 0; t < m; ++t)
    for (Index l = 0; l < m; ++l) pairs.push_back({dots(t, l), t, l});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.dot != b.dot) return a.dot > b.dot;
    if (a.t != b.t) return a.t < b.t;
    return a.l < b.l;
  });

  MatchResult match;
  match.permutation.assign(static_cast<std::size_t>(m), -1);
  std::vector<bool> learned_used(static_cast<std::size_t>(m), false);
  Index matched = 0;
  for (const Pair& pair : pairs) {
    if (matched == m) break;
    auto& slot = match.permutation[static_cast<std::size_t>(pair.t)];
    if (slot >= 0 || learned_used[static_cast<std::size_t>(pair.l)]) continue;
    slot = pair.l;
    learned_used[static_cast<std::size_t>(pair.l)] = true;
    ++matched;
  }

  match.cosines.resize(m);
  for (Index t = 0; t < m; ++t) {
    const Index l = match.permutation[static_cast<std::size_t>(t)];
    const double denom = W_true.W.row(t).norm() * W_learned.W.row(l).norm();
    require(denom > 0.0, "dictionary rows must be nonzero");
    match.cosines[t] = std::clamp(dots(t, l) / denom, -1.0, 1.0);
  }
  const std::vector<double> cos(match.cosines.data(), match.cosines.data() + m);
  match.p5 = percentile(cos, 5.0);
  match.p50 = percentile(cos, 50.0);
  match.p95 = percentile(cos, 95.0);
  return match;
}

double matched_apre(const Dictionary& W_true, const Dictionary& W_learned,
                    const MatchResult& match, const SignalBatch& H, const DataBatch& X,
                    const BinsParams& params, const RecoveryConfig& cfg) {
  const Index m = W_true.units();
  require(W_learned.units() == m && W_learned.data_dim() == W_true.data_dim(),
          "dictionaries must have the same shape");
  require(static_cast<Index>(match.permutation.size()) == m, "match does not fit the dictionary");
  require(H.dim() == m && H.samples() == X.samples(), "signals and data do not align");
  require(params.dim() == m, "params dimension must match dictionary units");

  Matrix estimate = recover(W_learned, X, data_mean(X), params, cfg);
  if (cfg.activation == Activation::Sigmoid) estimate = binarize(estimate, cfg.binarize_threshold);

  Matrix aligned(estimate.rows(), m);
  for (Index j = 0; j < m; ++j) aligned.col(j) = estimate.col(match.permutation[static_cast<std::size_t>(j)]);
  const double epsilon = cfg.activation == Activation::Sigmoid ? 0.0 : 0.1;
  return apre(H.values, aligned, epsilon, params.p());
}

const char* to_string(TrainActivation activation) {
  return activation == TrainActivation::Relu ? "relu" : "saturated_sigmoid";
}

TrainActivation train_activation_from_string(const std::string& name) {
  if (name == "relu") return TrainActivation::Relu;
  if (name == "saturated_sigmoid") return TrainActivation::SaturatedSigmoid;
  throw InvalidArgument("unknown training activation '" + name + "'");
}

const char* to_string(InitKind init) {
  switch (init) {
    case InitKind::OrthogonalizedGaussian: return "orthogonalized";
    case InitKind::PlainGaussian: return "plain_gaussian";
    case InitKind::WarmStart: return "warm_start";
  }
  return "unknown";
}

InitKind init_kind_from_string(const std::string& name) {
  if (name == "orthogonalized") return InitKind::OrthogonalizedGaussian;
  if (name == "plain_gaussian") return InitKind::PlainGaussian;
  if (name == "warm_start") return InitKind::WarmStart;
  throw InvalidArgument("unknown init kind '" + name + "'");
}

void to_json(nlohmann::json& j, const TrainConfig& cfg) {
  j = {{"activation", to_string(cfg.activation)},
       {"sigmoid_c", cfg.sigmoid_c},
       {"sigmoid_k", cfg.sigmoid_k},
       {"learning_rate", cfg.learning_rate},
       {"epochs", cfg.epochs},
       {"batch_size", cfg.batch_size},
       {"init", to_string(cfg.init)},
       {"seed", cfg.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig cfg;
  cfg.activation = train_activation_from_string(j.value("activation", std::string("relu")));
  cfg.sigmoid_c = j.value("sigmoid_c", cfg.sigmoid_c);
  cfg.sigmoid_k = j.value("sigmoid_k", cfg.sigmoid_k);
  cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.batch_size = j.value("batch_size", cfg.batch_size);
  cfg.init = init_kind_from_string(j.value("init", std::string("orthogonalized")));
  cfg.seed = j.value("seed", cfg.seed);
  require(cfg.init != InitKind::WarmStart, "warm start cannot be configured from JSON");
  cfg.validate();
  return cfg;
}

nlohmann::json run_record(const TrainConfig& cfg, const TrainResult& result) {
  return {{"config", cfg},
          {"initial_loss", result.initial_loss},
          {"epoch_loss", result.epoch_loss},
          {"steps", result.steps},
          {"wall_seconds", result.wall_seconds}};
}

}  // namespace aerecov
