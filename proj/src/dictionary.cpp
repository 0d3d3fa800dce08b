#include "aerecov/dictionary.hpp"

#include <cmath>

#include "aerecov/rng.hpp"

namespace aerecov {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, Seed seed) {
  auto engine = rng::stream(seed, rng::Purpose::Dictionary);
  Matrix G(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) G(i, j) = rng::standard_normal(engine);
  return G;
}

// Thin Q factor of a tall matrix with R's diagonal made positive.
Matrix orthonormal_columns(const Matrix& G) {
  Eigen::HouseholderQR<Matrix> qr(G);
  const Index k = G.cols();
  Matrix Q = qr.householderQ() * Matrix::Identity(G.rows(), k);
  const Matrix& R = qr.matrixQR();
  for (Index c = 0; c < k; ++c)
    if (R(c, c) < 0.0) Q.col(c) *= -1.0;
  return Q;
}

}  // namespace

void normalize_rows(Matrix& W) {
  for (Index i = 0; i < W.rows(); ++i) {
    const double norm = W.row(i).norm();
    require(norm > 0.0, "normalize_rows: zero row cannot be normalized");
    W.row(i) /= norm;
  }
}

Dictionary gen_orthogonalized_gaussian(Index m, Index n, Seed seed) {
  require(n >= 1, "gen_orthogonalized_gaussian: n must be at least 1");
  require(m >= n, "gen_orthogonalized_gaussian: requires m >= n to orthonormalize columns");
  Matrix W = orthonormal_columns(gaussian_matrix(m, n, seed));
  normalize_rows(W);
  return Dictionary{std::move(W), Generator::OrthogonalizedGaussian, seed};
}

Dictionary gen_orthogonal_init(Index m, Index n, Seed seed) {
  if (m >= n) return gen_orthogonalized_gaussian(m, n, seed);
  require(m >= 1, "gen_orthogonal_init: m must be at least 1");
  // Undercomplete: orthonormalize the rows instead.
  Matrix G = gaussian_matrix(m, n, seed);
  Matrix W = orthonormal_columns(G.transpose()).transpose();
  normalize_rows(W);
  return Dictionary{std::move(W), Generator::OrthogonalizedGaussian, seed};
}

Dictionary gen_plain_gaussian(Index m, Index n, Seed seed) {
  require(m >= 1 && n >= 1, "gen_plain_gaussian: m and n must be at least 1");
  Matrix W = gaussian_matrix(m, n, seed);
  normalize_rows(W);
  return Dictionary{std::move(W), Generator::PlainGaussian, seed};
}

Dictionary gen_coherent_uniform(Index m, Index n, Seed seed) {
  require(m >= 1 && n >= 1, "gen_coherent_uniform: m and n must be at least 1");
  auto engine = rng::stream(seed, rng::Purpose::Dictionary);
  Matrix W(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) W(i, j) = rng::uniform_closed_open(engine);
  normalize_rows(W);
  return Dictionary{std::move(W), Generator::CoherentUniform, seed};
}

Dictionary generate(Generator generator, Index m, Index n, Seed seed) {
  switch (generator) {
    case Generator::OrthogonalizedGaussian: return gen_orthogonal_init(m, n, seed);
    case Generator::PlainGaussian: return gen_plain_gaussian(m, n, seed);
    case Generator::CoherentUniform: return gen_coherent_uniform(m, n, seed);
    case Generator::External: break;
  }
  throw InvalidArgument("generate: external dictionaries cannot be generated");
}

double coherence(const Dictionary& dict) {
  require(dict.units() >= 2, "coherence: needs at least two rows");
  Matrix U = dict.W;
  normalize_rows(U);
  const Matrix G = U * U.transpose();
  double best = 0.0;
  for (Index j = 0; j < G.cols(); ++j)
    for (Index i = j + 1; i < G.rows(); ++i) best = std::max(best, std::abs(G(i, j)));
  return std::min(best, 1.0);
}

GramOffsets gram_offsets(const Dictionary& dict, GramMode mode) {
  Matrix A = dict.W * dict.W.transpose();
  const Matrix lower = A;
  A.triangularView<Eigen::StrictlyUpper>() = lower.transpose();
  if (mode == GramMode::Continuous) A.diagonal().array() -= 1.0;
  return GramOffsets{std::move(A), mode};
}

double welch_bound(Index m, Index n) {
  require(n >= 1 && m > n, "welch_bound: requires m > n >= 1");
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return std::sqrt((md - nd) / (nd * (md - 1.0)));
}

const char* to_string(Generator generator) {
  switch (generator) {
    case Generator::OrthogonalizedGaussian: return "orthogonalized";
    case Generator::PlainGaussian: return "plain_gaussian";
    case Generator::CoherentUniform: return "coherent_uniform";
    case Generator::External: return "external";
  }
  return "external";
}

Generator generator_from_string(const std::string& name) {
  if (name == "orthogonalized") return Generator::OrthogonalizedGaussian;
  if (name == "plain_gaussian") return Generator::PlainGaussian;
  if (name == "coherent_uniform") return Generator::CoherentUniform;
  if (name == "external") return Generator::External;
  throw InvalidArgument("unknown generator '" + name + "'");
}

}  // namespace aerecov
