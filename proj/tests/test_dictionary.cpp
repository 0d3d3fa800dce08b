#include <gtest/gtest.h>

#include <cmath>

#include "aerecov/dictionary.hpp"
#include "oracles.hpp"

using namespace aerecov;

namespace {

void expect_unit_rows(const Matrix& W) {
  for (Index i = 0; i < W.rows(); ++i) EXPECT_NEAR(W.row(i).norm(), 1.0, 1e-9);
}

Dictionary rows_of(const Matrix& W) { return Dictionary{W, Generator::External, 0}; }

}  // namespace

TEST(Generators, UnitRowsForEveryGenerator) {
  for (const Index n : {1, 7, 40}) {
    expect_unit_rows(gen_orthogonalized_gaussian(50, n, 3).W);
    expect_unit_rows(gen_plain_gaussian(50, n, 3).W);
    expect_unit_rows(gen_coherent_uniform(50, n, 3).W);
  }
  expect_unit_rows(gen_orthogonal_init(20, 50, 3).W);
}

TEST(Generators, OrthogonalizedSquareIsOrthonormal) {
  const auto d = gen_orthogonalized_gaussian(2, 2, 17);
  EXPECT_NEAR(coherence(d), 0.0, 1e-9);
  EXPECT_TRUE((d.W * d.W.transpose()).isApprox(Matrix::Identity(2, 2), 1e-12));
}

TEST(Generators, OrthogonalInitWideHasOrthonormalRows) {
  const auto d = gen_orthogonal_init(20, 50, 6);
  EXPECT_TRUE((d.W * d.W.transpose()).isApprox(Matrix::Identity(20, 20), 1e-12));
  EXPECT_NEAR(coherence(d), 0.0, 1e-12);
}

TEST(Generators, OrthogonalizedRejectsWideShape) {
  EXPECT_THROW(gen_orthogonalized_gaussian(3, 5, 1), InvalidArgument);
}

TEST(Generators, Reproducible) {
  EXPECT_EQ(gen_orthogonalized_gaussian(20, 10, 4).W, gen_orthogonalized_gaussian(20, 10, 4).W);
  EXPECT_EQ(gen_plain_gaussian(20, 10, 4).W, gen_plain_gaussian(20, 10, 4).W);
  EXPECT_EQ(gen_coherent_uniform(20, 10, 4).W, gen_coherent_uniform(20, 10, 4).W);
  EXPECT_NE(gen_plain_gaussian(20, 10, 4).W, gen_plain_gaussian(20, 10, 5).W);
}

TEST(Generators, CoherenceOrdering) {
  EXPECT_LT(coherence(gen_orthogonalized_gaussian(200, 180, 1)), 0.5);
  EXPECT_GT(coherence(gen_coherent_uniform(200, 100, 1)), 0.8);  // about 0.86 across seeds
  EXPECT_GT(coherence(gen_plain_gaussian(200, 200, 1)), coherence(gen_orthogonalized_gaussian(200, 200, 1)));
  for (Seed seed = 0; seed < 10; ++seed)
    for (const Index n : {100, 180, 200}) {
      EXPECT_GT(coherence(gen_coherent_uniform(200, n, seed)),
                coherence(gen_orthogonalized_gaussian(200, n, seed)));
    }
}

TEST(Generators, CoherenceAboveWelch) {
  for (const Index n : {50, 100, 150})
    for (Seed seed = 0; seed < 3; ++seed) {
      EXPECT_GE(coherence(gen_orthogonalized_gaussian(200, n, seed)), welch_bound(200, n));
      EXPECT_GE(coherence(gen_plain_gaussian(200, n, seed)), welch_bound(200, n));
    }
}

TEST(Coherence, HandExamples) {
  EXPECT_EQ(coherence(rows_of(Matrix::Identity(2, 2))), 0.0);
  EXPECT_NEAR(coherence(rows_of(oracle::hand_matrix())), 1.0 / std::sqrt(2.0), 1e-15);
  Matrix dup(2, 3);
  dup << 1, 2, 3, 1, 2, 3;
  EXPECT_DOUBLE_EQ(coherence(rows_of(dup)), 1.0);
  EXPECT_THROW(coherence(gen_plain_gaussian(1, 3, 0)), InvalidArgument);
}

TEST(GramOffsets, OrthonormalModes) {
  const auto d = gen_orthogonalized_gaussian(6, 6, 2);
  EXPECT_TRUE(gram_offsets(d, GramMode::Continuous).A.isZero(1e-12));
  EXPECT_TRUE(gram_offsets(d, GramMode::Binary).A.isIdentity(1e-12));
}

TEST(GramOffsets, HandValueAndSymmetry) {
  Matrix W(2, 2);
  W << 1.0, 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto A = gram_offsets(rows_of(W), GramMode::Binary).A;
  EXPECT_NEAR(A(0, 1), 1.0 / std::sqrt(2.0), 1e-15);
  const auto big = gram_offsets(gen_plain_gaussian(50, 20, 9), GramMode::Continuous).A;
  EXPECT_EQ(big, Matrix(big.transpose()));
}

TEST(WelchBound, Values) {
  EXPECT_DOUBLE_EQ(welch_bound(2, 1), 1.0);
  EXPECT_NEAR(welch_bound(200, 100), 0.070888, 1e-6);
  EXPECT_NEAR(welch_bound(200, 180), 0.0236294, 1e-7);
  EXPECT_THROW(welch_bound(3, 3), InvalidArgument);
}

TEST(NormalizeRows, RejectsZeroRow) {
  Matrix W = Matrix::Zero(2, 2);
  W(0, 0) = 3.0;
  EXPECT_THROW(normalize_rows(W), InvalidArgument);
}

TEST(Generator, StringRoundTrip) {
  for (const auto g : {Generator::OrthogonalizedGaussian, Generator::PlainGaussian, Generator::CoherentUniform,
                       Generator::External})
    EXPECT_EQ(generator_from_string(to_string(g)), g);
  EXPECT_THROW(generator_from_string("nope"), InvalidArgument);
}
