// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "aerecov/bounds.hpp"
#include "aerecov/dictlearn.hpp"
#include "aerecov/experiments.hpp"
#include "aerecov/metrics.hpp"
#include "aerecov/rng.hpp"
#include "oracles.hpp"

using namespace aerecov;

namespace {

constexpr Seed kSeed = 2024;

// Pinned tolerances.
constexpr double kGridSlack = 1e-9;            // grid-step comparisons
constexpr double kContinuousOptimumMax = 2.0;  // criterion 1
constexpr double kBinaryOptimumMax = 0.5;      // criterion 1
constexpr double kHeatmapSeconds = 600.0;      // criterion 1
constexpr double kCoherentMin = 20.0;          // criterion 2
constexpr double kStdErrors = 3.0;             // criterion 3
constexpr double kExactRecovery = 1e-9;        // criterion 4
constexpr double kSphericityFactor = 1.1;      // criterion 7
constexpr double kCosine099Frac = 0.95;        // criterion 8
constexpr double kContinuousMatchedMax = 5.0;  // criterion 8
constexpr double kBinaryMatchedMax = 1.0;      // criteria 8, 9
constexpr double kTrainingSeconds = 1800.0;    // criterion 8
constexpr double kCiCosine095Frac = 0.90;      // criterion 8, CI scale
constexpr double kNoisyLowMax = 10.0;          // criterion 9, std 0.01
constexpr double kNoisyHighMin = 20.0;         // criterion 9, std 0.1

int failures = 0;

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int id, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

ExperimentSpec spec_for(ExperimentKind kind, nlohmann::json params = nlohmann::json::object()) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.seed = kSeed;
  spec.threads = threads();
  spec.parameters = std::move(params);
  return spec;
}

void heatmap_criteria() {
  const auto start = std::chrono::steady_clock::now();
  const HeatmapResult result = run_heatmap(spec_for(ExperimentKind::Heatmap));
  const double elapsed = seconds_since(start);
  const double c_step = result.c_grid[1] - result.c_grid[0];
  const double b_step = result.delta_b_grid[1] - result.delta_b_grid[0];

  bool pass1 = elapsed <= kHeatmapSeconds;
  std::string detail1 = "runtime " + fmt(elapsed) + " s;";
  bool pass2 = true;
  std::string detail2;
  for (const HeatmapRow& best : result.argmin) {
    if (best.dict_type == "orthogonalized") {
      // Any cell attaining the minimum counts; the binary surface has flat plateaus.
      bool near = false;
      for (const HeatmapRow& row : result.rows)
        if (row.signal_type == best.signal_type && row.dict_type == best.dict_type && row.apre == best.apre &&
            std::abs(row.c - 1.0) <= c_step + kGridSlack && std::abs(row.delta_b) <= b_step + kGridSlack)
          near = true;
      const double limit = best.signal_type == "binary" ? kBinaryOptimumMax : kContinuousOptimumMax;
      pass1 = pass1 && near && best.apre <= limit;
      detail1 += " " + best.signal_type + " min " + fmt(best.apre) + " first at (" + fmt(best.c) + ", " +
                 fmt(best.delta_b) + "), minimum within one step of (1, 0): " + (near ? "yes" : "no") + ";";
    } else {
      pass2 = pass2 && best.apre >= kCoherentMin;
      detail2 += " " + best.signal_type + " min " + fmt(best.apre) + ";";
    }
  }
  report(1, "heatmap optimum", pass1, detail1);
  report(2, "coherent degradation", pass2, detail2);
}

void bounds_dominance() {
  const auto entries = run_bounds_check(spec_for(ExperimentKind::BoundsCheck, {{"configs", {"main", "hand"}}}));
  int checked = 0, violations = 0;
  double worst = -1e300;
  std::string where, modes;
  for (const auto& e : entries) {
    const BoundReport& r = e.report;
    int local = 0;
    for (std::size_t k = 0; k < r.delta_grid.size(); ++k) {
      ++checked;
      const double excess = r.theoretical[k] - (r.empirical[k] + kStdErrors * r.standard_error(k));
      if (excess > 0.0) {
        ++violations;
        ++local;
      }
      if (excess > worst) {
        worst = excess;
        where = e.config + "/" + to_string(r.mode) + " at delta " + fmt(r.delta_grid[k]) + " (bound " +
                fmt(r.theoretical[k]) + ", empirical " + fmt(r.empirical[k]) + ")";
      }
    }
    modes += " " + e.config + "/" + to_string(r.mode) + " " + std::to_string(local) + "/" +
             std::to_string(r.delta_grid.size()) + ";";
  }
  report(3, "bound dominance", violations == 0,
         std::to_string(violations) + " of " + std::to_string(checked) + " grid points violate;" + modes +
             " worst excess " + fmt(worst) + " at " + where);
}

void exact_recovery() {
  const Index m = 50;
  const auto dict = gen_orthogonalized_gaussian(m, m, rng::derive(kSeed, 40));
  const auto params = BinsParams::broadcast(m, 0.1, FcKind::UniformOnZeroToLmax, 1.0);
  const auto H = sample_signals(params, m, 1000, rng::derive(kSeed, 41));
  const auto X = generate_data(dict, H, std::nullopt, rng::derive(kSeed, 42));
  const Matrix est = encode(dict, X.X, theoretical_bias_continuous(dict, params), Activation::Relu);
  const double err = (est - H.values).cwiseAbs().maxCoeff();

  const Dictionary eye{Matrix::Identity(4, 4), Generator::External, 0};
  const auto bin = BinsParams::broadcast(4, 0.2, FcKind::DiracAtLmax, 1.0);
  const auto cont = BinsParams::broadcast(4, 0.2, FcKind::UniformOnZeroToLmax, 1.0);
  const Vector zero = Vector::Zero(4);
  bool ones = true;
  for (const double delta : {0.5, 0.6, 0.75, 0.9, 0.99})
    ones = ones && bound_binary_noiseless(eye, bin, delta) == 1.0 && bound_binary_noisy(eye, bin, delta, zero) == 1.0;
  for (const double delta : {0.0, 0.1, 0.5, 0.95})
    ones = ones && bound_continuous_noiseless(eye, cont, delta) == 1.0 &&
           bound_continuous_noisy(eye, cont, delta, zero) == 1.0;
  report(4, "exact recovery", err < kExactRecovery && ones,
         "max entry error " + fmt(err) + "; all four bounds exactly 1 on the identity: " + (ones ? "yes" : "no"));
}

void sparsity_trend() {
  const auto rows = run_sparsity_sweep(
      spec_for(ExperimentKind::SparsitySweep, {{"p_min", 0.02}, {"p_max", 0.5}, {"p_steps", 2}}));
  bool pass = true;
  std::string detail;
  for (const auto& lo : rows) {
    if (lo.p != 0.02) continue;
    for (const auto& hi : rows)
      if (hi.p == 0.5 && hi.signal_type == lo.signal_type && hi.generator == lo.generator && hi.noise == lo.noise) {
        pass = pass && lo.apre < hi.apre;
        detail += " " + lo.signal_type + "/" + lo.generator + "/" + lo.noise + " " + fmt(lo.apre) + " < " +
                  fmt(hi.apre) + ";";
      }
  }
  report(5, "sparsity trend", pass && rows.size() == 16, detail);
}

void coherence_ordering() {
  const auto rows = run_coherence_sweep(spec_for(ExperimentKind::CoherenceSweep));
  bool ordered = true, welch = true;
  double max_ratio = 0.0;
  int pairs = 0;
  for (const auto& o : rows) {
    if (o.n < o.m) welch = welch && o.coherence >= o.welch_bound;
    if (o.generator != "orthogonalized") continue;
    for (const auto& g : rows)
      if (g.generator == "plain_gaussian" && g.n == o.n && g.seed == o.seed) {
        ++pairs;
        ordered = ordered && o.coherence < g.coherence;
        max_ratio = std::max(max_ratio, o.coherence / g.coherence);
      }
  }
  report(6, "coherence ordering", ordered && welch && pairs == 45,
         std::to_string(pairs) + " paired (n, seed) points, orthogonalized below plain: " + (ordered ? "yes" : "no") +
             ", largest ratio " + fmt(max_ratio) + "; Welch bound respected: " + (welch ? "yes" : "no"));
}

void sphericity() {
  const Index m = 200, n = 180, N = 50000;
  const auto dict = gen_orthogonalized_gaussian(m, n, rng::derive(kSeed, 70));
  bool pass = true;
  std::string detail;
  for (const bool binary : {false, true}) {
    const auto params = BinsParams::broadcast(m, 0.02, binary ? FcKind::DiracAtLmax : FcKind::UniformOnZeroToLmax, 1.0);
    const auto H = sample_signals(params, m, N, rng::derive(kSeed, 71));
    const auto X = generate_data(dict, H, std::nullopt, rng::derive(kSeed, 72));
    const double gap = sphericity_gap(X);
    const double bound = sphericity_bound(signal_variance(params), n);
    const Matrix centered = H.values.rowwise() - H.values.colwise().mean();
    const Vector zeta_hat = centered.colwise().squaredNorm().transpose() / static_cast<double>(N - 1);
    pass = pass && gap <= kSphericityFactor * bound;
    detail += std::string(" ") + (binary ? "binary" : "continuous") + " gap " + fmt(gap) + ", bound " + fmt(bound) +
              " (with sample variances " + fmt(sphericity_bound(zeta_hat, n)) + ");";
  }
  report(7, "sphericity", pass, detail);
}

const DictRecoveryRow* find(const std::vector<DictRecoveryRow>& rows, const std::string& type, double std) {
  for (const auto& r : rows)
    if (r.signal_type == type && r.noise_std == std) return &r;
  return nullptr;
}

void dictionary_recovery() {
  auto start = std::chrono::steady_clock::now();
  const auto clean = run_dict_recovery(spec_for(ExperimentKind::DictRecovery, {{"noise_stds", {0.0}}}));
  const double elapsed = seconds_since(start);

  // CI scale trains for the same number of SGD steps as desk scale.
  const auto ci = run_dict_recovery(spec_for(
      ExperimentKind::DictRecovery,
      {{"m", 50}, {"n", 40}, {"samples", 10000}, {"epochs", 750}, {"noise_stds", {0.0}}}));

  bool pass = elapsed <= kTrainingSeconds;
  std::string detail = "desk runtime " + fmt(elapsed) + " s;";
  for (const auto& r : clean) {
    const double limit = r.signal_type == "binary" ? kBinaryMatchedMax : kContinuousMatchedMax;
    pass = pass && r.frac_cosine_ge_099 >= kCosine099Frac && r.matched_apre <= limit;
    detail += " " + r.signal_type + " frac cos>=0.99 " + fmt(r.frac_cosine_ge_099) + ", p5 " + fmt(r.cosine_p5) +
              ", matched apre " + fmt(r.matched_apre) + ";";
  }
  for (const auto& r : ci) {
    pass = pass && r.frac_cosine_ge_095 >= kCiCosine095Frac;
    detail += " CI " + r.signal_type + " frac cos>=0.95 " + fmt(r.frac_cosine_ge_095) + ";";
  }
  report(8, "dictionary recovery", pass && clean.size() == 2 && ci.size() == 2, detail);
}

void noisy_dictionary_recovery() {
  const std::vector<double> stds{0.01, 0.02, 0.05, 0.1};
  const auto rows = run_dict_recovery(spec_for(ExperimentKind::DictRecovery, {{"noise_stds", stds}}));
  bool pass = rows.size() == 8;
  std::string detail;
  double prev = -1.0;
  for (const double s : stds) {
    const DictRecoveryRow* c = find(rows, "continuous", s);
    const DictRecoveryRow* b = find(rows, "binary", s);
    if (!c || !b) {
      pass = false;
      continue;
    }
    if (s <= 0.05) pass = pass && b->matched_apre <= kBinaryMatchedMax;
    if (s == 0.01) pass = pass && c->matched_apre <= kNoisyLowMax;
    if (s == 0.1) pass = pass && c->matched_apre >= kNoisyHighMin;
    pass = pass && c->matched_apre >= prev;
    prev = c->matched_apre;
    detail += " std " + fmt(s) + ": continuous " + fmt(c->matched_apre) + ", binary " + fmt(b->matched_apre) + ";";
  }
  report(9, "noisy dictionary recovery", pass, detail);
}

void decoder_bias_equivalence() {
  const Index m = 200, n = 180, N = 2000;
  const auto dict = gen_orthogonalized_gaussian(m, n, rng::derive(kSeed, 100));
  std::mt19937_64 gen(kSeed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector b_d(n);
  for (Index k = 0; k < n; ++k) b_d[k] = normal(gen);

  bool identical = true, binarized_identical = true;
  std::string detail;
  for (const bool binary : {false, true}) {
    const auto params = BinsParams::broadcast(m, 0.02, binary ? FcKind::DiracAtLmax : FcKind::UniformOnZeroToLmax, 1.0);
    const auto H = sample_signals(params, m, N, rng::derive(kSeed, 101));
    const auto plain = generate_data(dict, H, Vector::Zero(n), 1.0, std::nullopt, rng::derive(kSeed, 102));
    const auto shifted = generate_data(dict, H, b_d, 1.0, std::nullopt, rng::derive(kSeed, 102));
    const Vector bias = binary ? theoretical_bias_binary(dict, params) : theoretical_bias_continuous(dict, params);
    const Activation act = binary ? Activation::Sigmoid : Activation::Relu;
    const Matrix a = encode(dict, plain.X, bias, act);
    const Matrix b = encode(dict, shifted.X, bias - dict.W * b_d, act);
    const double diff = (a - b).cwiseAbs().maxCoeff();
    const Index differing = (a.array() != b.array()).count();
    identical = identical && differing == 0;
    detail += std::string(" ") + (binary ? "sigmoid" : "relu") + " " + std::to_string(differing) + " of " +
              std::to_string(a.size()) + " entries differ, max |diff| " + fmt(diff);
    if (binary) {
      const bool same = binarize(a, 0.55) == binarize(b, 0.55);
      binarized_identical = binarized_identical && same;
      detail += std::string(", binarized identical: ") + (same ? "yes" : "no");
    }
    detail += ";";
  }
  report(10, "decoder bias equivalence", identical && binarized_identical, detail);
}

void metric_oracle() {
  std::mt19937_64 gen(kSeed);
  std::uniform_int_distribution<int> rows(1, 5), cols(1, 6), coin(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int apre_ok = 0, l1_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const int N = rows(gen), m = cols(gen);
    Matrix H(N, m), Hhat(N, m);
    for (Index k = 0; k < H.size(); ++k) {
      H(k) = u(gen) < 0.4 ? u(gen) : 0.0;
      // Mix exact hits, offsets at the tolerance and arbitrary guesses.
      switch (coin(gen)) {
        case 0: Hhat(k) = H(k); break;
        case 1: Hhat(k) = H(k) + 0.1; break;
        case 2: Hhat(k) = H(k) - 0.1; break;
        default: Hhat(k) = u(gen); break;
      }
    }
    Vector p(m);
    for (Index j = 0; j < m; ++j) p[j] = 0.01 + 0.98 * u(gen);
    const double epsilon = t % 2 == 0 ? 0.1 : 0.0;
    if (apre(H, Hhat, epsilon, p) == oracle::brute_apre(H, Hhat, epsilon, p)) ++apre_ok;
    if (mean_l1_error(H, Hhat) == oracle::brute_mean_l1(H, Hhat)) ++l1_ok;
  }
  report(11, "metric oracle", apre_ok == 100 && l1_ok == 100,
         "apre exact on " + std::to_string(apre_ok) + "/100, mean_l1_error exact on " + std::to_string(l1_ok) + "/100");
}

}  // namespace

int main() {
  std::printf("acceptance suite, seed %llu, %u threads, version %s\n", static_cast<unsigned long long>(kSeed),
              threads(), version_string());
  // A thrown error fails every criterion the step covers.
  const auto guard = [](std::initializer_list<int> ids, const char* name, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      for (const int id : ids) report(id, name, false, std::string("error: ") + e.what());
    }
  };
  guard({1, 2}, "heatmap", heatmap_criteria);
  guard({3}, "bound dominance", bounds_dominance);
  guard({4}, "exact recovery", exact_recovery);
  guard({5}, "sparsity trend", sparsity_trend);
  guard({6}, "coherence ordering", coherence_ordering);
  guard({7}, "sphericity", sphericity);
  guard({8}, "dictionary recovery", dictionary_recovery);
  guard({9}, "noisy dictionary recovery", noisy_dictionary_recovery);
  guard({10}, "decoder bias equivalence", decoder_bias_equivalence);
  guard({11}, "metric oracle", metric_oracle);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
