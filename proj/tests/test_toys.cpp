#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hawkes/rng.hpp"
#include "hawkes/toys.hpp"
#include "support/stats.hpp"

using hawkes::Toy1Config;
using hawkes::Toy2Config;
using testsupport::sample_mean;
using testsupport::sample_variance;

namespace {

// The quoted closed form for Var(C_T) drops a factor present in the exact
// calculation: C_T is an affine image of a scaled chi-square, and carrying
// the algebra through gives exactly 2 ((1-p)/mu)^4 times the quoted value.
// The exact form is what simulation must reproduce; the quoted one is kept
// as the reported reference value.
double toy2_exact_variance(const Toy2Config& cfg) {
  const double m = cfg.mu / (1.0 - cfg.p);
  return hawkes::toy2_variance_formula(cfg) * 2.0 / (m * m * m * m);
}

double toy2_exact_mean(const Toy2Config& cfg) {
  return cfg.p * cfg.p +
         (2.0 * cfg.p - cfg.p * cfg.p) / static_cast<double>(cfg.k - 1);
}

}  // namespace

TEST_CASE("toy 1: replicates are deterministic and internally consistent") {
  Toy1Config cfg{100, 50, 2.0, 0.5, 20.0, 10, 99};
  const auto a = hawkes::toy1_trial(cfg, 3);
  const auto b = hawkes::toy1_trial(cfg, 3);
  CHECK(a.s == b.s);
  CHECK(a.t == b.t);
  CHECK(hawkes::toy1_trial(cfg, 4).s != a.s);

  // t is the advertised affine function of s
  const double gp = cfg.gamma * cfg.p;
  CHECK(a.t == doctest::Approx(cfg.n / (gp * gp) *
                               (a.s - gp / cfg.m_t)).epsilon(1e-12));

  const auto run = hawkes::toy1_run(cfg);
  CHECK(run.size() == 10);
  CHECK(run[3].s == a.s);
}

TEST_CASE("toy 1: mean matches 1/p - 1") {
  Toy1Config cfg{100, 50, 2.0, 0.5, 20.0, 20000, 7};
  const auto run = hawkes::toy1_run(cfg);
  std::vector<double> ts;
  for (const auto& r : run) ts.push_back(r.t);
  const double se = std::sqrt(sample_variance(ts) / ts.size());
  CHECK(std::fabs(sample_mean(ts) - 1.0) < 4.0 * se);
}

TEST_CASE("toy 1: p = 1 removes the graph variance entirely") {
  Toy1Config cfg{100, 50, 2.0, 1.0, 20.0, 5000, 13};
  const auto run = hawkes::toy1_run(cfg);
  std::vector<double> ts;
  for (const auto& r : run) ts.push_back(r.t);
  const double se = std::sqrt(sample_variance(ts) / ts.size());
  CHECK(std::fabs(sample_mean(ts)) < 4.0 * se);
}

TEST_CASE("toy 1: empirical variance matches the closed form") {
  Toy1Config cfg{1000, 500, 2.0, 0.5, 100.0, 20000, 21};
  const auto run = hawkes::toy1_run(cfg);
  std::vector<double> ts;
  for (const auto& r : run) ts.push_back(r.t);
  const double formula = hawkes::toy1_variance_formula(cfg);
  CHECK(sample_variance(ts) == doctest::Approx(formula).epsilon(0.10));

  // the closed form is also the exact variance: 2 (N Var X)^2 / (K (Gamma p)^4)
  const double v = cfg.gamma * cfg.gamma * cfg.p * (1.0 - cfg.p) / cfg.n +
                   cfg.gamma * cfg.p / cfg.m_t;
  const double gp = cfg.gamma * cfg.p;
  const double exact =
      2.0 * (cfg.n * v) * (cfg.n * v) / (cfg.k * gp * gp * gp * gp);
  CHECK(formula == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("toy 1: validation") {
  CHECK_THROWS_AS(hawkes::toy1_trial({0, 1, 1.0, 0.5, 1.0, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy1_trial({4, 5, 1.0, 0.5, 1.0, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy1_trial({4, 2, -1.0, 0.5, 1.0, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy1_trial({4, 2, 1.0, 0.0, 1.0, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy1_trial({4, 2, 1.0, 0.5, 0.0, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy1_run({4, 2, 1.0, 0.5, 1.0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("toy 2: covariance corner in closed form") {
  Toy2Config cfg{4, 2, 1, 1.0, 0.5, 1, 0};
  CHECK(hawkes::toy2_cov_diag(cfg) == doctest::Approx(2.75));
  CHECK(hawkes::toy2_cov_offdiag(cfg) == doctest::Approx(0.25));
  // quoted variance form: (N/(K-1))^2 (rho + (K-1) alpha / N)^2 / T with
  // rho = 2.75, alpha = 1: 16 * 9 = 144
  CHECK(hawkes::toy2_variance_formula(cfg) == doctest::Approx(144.0));
}

TEST_CASE("toy 2: factor construction reproduces the covariance and the "
          "library statistic") {
  // reconstruct the per-individual values from the same deterministic
  // stream and check both the entrywise covariance and the resulting C
  Toy2Config cfg{6, 4, 3, 1.0, 0.4, 3000, 31};
  const double m = cfg.mu / (1.0 - cfg.p);
  const double diag = hawkes::toy2_cov_diag(cfg);
  const double off = hawkes::toy2_cov_offdiag(cfg);
  const double sd_common = std::sqrt(off);
  const double sd_own = std::sqrt(diag - off);

  std::vector<double> acc_para(static_cast<size_t>(cfg.k) * cfg.k, 0.0);
  long long slices = 0;
  for (int rep = 0; rep < cfg.replicates; ++rep) {
    hawkes::CounterRng rng(
        hawkes::derive_seed(cfg.seed, 2, static_cast<uint64_t>(rep)));
    double s = 0.0;
    std::vector<double> x(cfg.k);
    for (int t = 0; t < cfg.t_steps; ++t) {
      const double common = sd_common * rng.normal();
      double slice_sum = 0.0;
      for (int i = 0; i < cfg.k; ++i) {
        x[i] = common + sd_own * rng.normal();
        slice_sum += x[i];
      }
      for (int i = 0; i < cfg.k; ++i)
        for (int j = 0; j < cfg.k; ++j)
          acc_para[static_cast<size_t>(i) * cfg.k + j] += x[i] * x[j];
      ++slices;
      const double d = slice_sum / cfg.k;
      s += d * d;
    }
    s /= cfg.t_steps;
    const double c_rebuilt =
        static_cast<double>(cfg.n) / (cfg.k - 1) / (m * m) * (cfg.k * s - m);
    CHECK(c_rebuilt == hawkes::toy2_trial(cfg, rep));
  }

  for (int i = 0; i < cfg.k; ++i) {
    for (int j = 0; j < cfg.k; ++j) {
      const double cov =
          acc_para[static_cast<size_t>(i) * cfg.k + j] / slices;
      const double target = i == j ? diag : off;
      // loose band: 9000 slices, entries have sd about diag * sqrt(2/slices)
      CHECK(std::fabs(cov - target) < 0.1 * diag);
    }
  }
}

TEST_CASE("toy 2: mean matches the exact finite-K expectation") {
  Toy2Config cfg{20, 10, 10, 1.0, 0.5, 4000, 17};
  const auto run = hawkes::toy2_run(cfg);
  const double se = std::sqrt(sample_variance(run) / run.size());
  CHECK(std::fabs(sample_mean(run) - toy2_exact_mean(cfg)) < 4.0 * se);
}

TEST_CASE("toy 2: empirical variance matches the exact closed form, not the "
          "quoted one") {
  Toy2Config cfg{200, 100, 50, 1.0, 0.5, 10000, 23};
  const auto run = hawkes::toy2_run(cfg);
  const double var = sample_variance(run);
  CHECK(var == doctest::Approx(toy2_exact_variance(cfg)).epsilon(0.10));
  // the quoted form differs by 2 ((1-p)/mu)^4 = 1/8 at these parameters
  CHECK(var < 0.5 * hawkes::toy2_variance_formula(cfg));
}

TEST_CASE("toy 2: quadrupling the horizon halves the spread") {
  Toy2Config short_cfg{20, 10, 8, 1.0, 0.5, 3000, 41};
  Toy2Config long_cfg = short_cfg;
  long_cfg.t_steps = 32;
  const double sd_short = std::sqrt(sample_variance(hawkes::toy2_run(short_cfg)));
  const double sd_long = std::sqrt(sample_variance(hawkes::toy2_run(long_cfg)));
  CHECK(sd_short / sd_long == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("toy 2: validation") {
  CHECK_THROWS_AS(hawkes::toy2_trial({4, 1, 1, 1.0, 0.5, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy2_trial({4, 5, 1, 1.0, 0.5, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy2_trial({4, 2, 0, 1.0, 0.5, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy2_trial({4, 2, 1, 0.0, 0.5, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy2_trial({4, 2, 1, 1.0, 1.0, 1, 0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hawkes::toy2_run({4, 2, 1, 1.0, 0.5, 0, 0}), std::invalid_argument);
}
