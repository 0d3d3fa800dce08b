#pragma once

#include <string>

#include "aerecov/types.hpp"

namespace aerecov {

enum class Generator {
  OrthogonalizedGaussian,  ///< Gaussian entries, orthonormalized columns, unit rows
  PlainGaussian,           ///< Gaussian entries, unit rows
  CoherentUniform,         ///< uniform [0, 1] entries, unit rows
  External,                ///< loaded from disk or learned
};

/// m x n weight matrix. Row i is the weight vector of hidden unit i, so data
/// is generated as x = W^T h.
struct Dictionary {
  Matrix W;
  Generator generator = Generator::External;
  Seed seed = 0;

  Index units() const { return W.rows(); }
  Index data_dim() const { return W.cols(); }
};

/// Which diagonal convention the a_ij offsets use.
enum class GramMode {
  Binary,      ///< a_ij = W_i . W_j everywhere
  Continuous,  ///< off-diagonal W_i . W_j, diagonal W_i . W_i - 1
};

struct GramOffsets {
  Matrix A;
  GramMode mode;
};

/// Requires m >= n. Columns are orthonormalized by Householder QR with a
/// positive-diagonal sign convention, then every row is scaled to unit norm.
Dictionary gen_orthogonalized_gaussian(Index m, Index n, Seed seed);

/// Orthogonal initialization for either aspect ratio: columns are
/// orthonormalized when m >= n, rows when m < n.
Dictionary gen_orthogonal_init(Index m, Index n, Seed seed);

Dictionary gen_plain_gaussian(Index m, Index n, Seed seed);

Dictionary gen_coherent_uniform(Index m, Index n, Seed seed);

Dictionary generate(Generator generator, Index m, Index n, Seed seed);

/// Max |cos| between distinct rows. Requires at least two rows.
double coherence(const Dictionary& dict);

/// Exactly symmetric a_ij matrix.
GramOffsets gram_offsets(const Dictionary& dict, GramMode mode);

/// sqrt((m - n) / (n (m - 1))), the smallest coherence any m unit vectors in
/// R^n can have. Requires m > n >= 1.
double welch_bound(Index m, Index n);

/// Scales every row to unit l2 norm in place.
void normalize_rows(Matrix& W);

const char* to_string(Generator generator);
Generator generator_from_string(const std::string& name);

}  // namespace aerecov
