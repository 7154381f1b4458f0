#include "hawkes/toys.hpp"

#include <cmath>
#include <stdexcept>

#include "hawkes/rng.hpp"

namespace hawkes {

namespace {

void validate1(const Toy1Config& c) {
  if (c.n < 1 || c.k < 1 || c.k > c.n)
    throw std::invalid_argument("toy1 needs 1 <= k <= n");
  if (!(c.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(c.p > 0.0) || !(c.p <= 1.0))
    throw std::invalid_argument("p must lie in (0, 1]");
  if (!(c.m_t > 0.0)) throw std::invalid_argument("m_t must be > 0");
}

void validate2(const Toy2Config& c) {
  if (c.n < 1 || c.k < 2 || c.k > c.n)
    throw std::invalid_argument("toy2 needs 2 <= k <= n");
  if (c.t_steps < 1) throw std::invalid_argument("t_steps must be >= 1");
  if (!(c.mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  if (!(c.p > 0.0) || !(c.p < 1.0))
    throw std::invalid_argument("p must lie in (0, 1)");
}

}  // namespace

Toy1Sample toy1_trial(const Toy1Config& cfg, int replicate) {
  validate1(cfg);
  const double mean = cfg.gamma * cfg.p;
  const double var = cfg.gamma * cfg.gamma * cfg.p * (1.0 - cfg.p) / cfg.n +
                     cfg.gamma * cfg.p / cfg.m_t;
  const double sd = std::sqrt(var);
  CounterRng rng(derive_seed(cfg.seed, 1, static_cast<uint64_t>(replicate)));
  double ss = 0.0;
  for (int i = 0; i < cfg.k; ++i) {
    const double d = sd * rng.normal();
    ss += d * d;
  }
  Toy1Sample out;
  out.s = ss / cfg.k;
  out.t = cfg.n / (mean * mean) * (out.s - cfg.gamma * cfg.p / cfg.m_t);
  return out;
}

std::vector<Toy1Sample> toy1_run(const Toy1Config& cfg) {
  validate1(cfg);
  if (cfg.replicates < 1)
    throw std::invalid_argument("replicates must be >= 1");
  std::vector<Toy1Sample> out(cfg.replicates);
  for (int r = 0; r < cfg.replicates; ++r) out[r] = toy1_trial(cfg, r);
  return out;
}

double toy1_variance_formula(const Toy1Config& cfg) {
  validate1(cfg);
  const double gp = cfg.gamma * cfg.p;
  const double rk = std::sqrt(static_cast<double>(cfg.k));
  const double term = cfg.gamma * cfg.gamma * cfg.p * (1.0 - cfg.p) / rk +
                      cfg.n * gp / (cfg.m_t * rk);
  return 2.0 / (gp * gp * gp * gp) * term * term;
}

double toy2_cov_diag(const Toy2Config& cfg) {
  validate2(cfg);
  const double q = 1.0 - cfg.p;
  return cfg.p * cfg.mu * cfg.mu / (cfg.n * q) +
         cfg.p * cfg.mu * cfg.mu / (cfg.n * q * q) + cfg.mu / q;
}

double toy2_cov_offdiag(const Toy2Config& cfg) {
  validate2(cfg);
  const double q = 1.0 - cfg.p;
  return cfg.p * cfg.p * cfg.mu * cfg.mu / (cfg.n * q * q);
}

double toy2_trial(const Toy2Config& cfg, int replicate) {
  validate2(cfg);
  const double mean = cfg.mu / (1.0 - cfg.p);
  const double diag = toy2_cov_diag(cfg);
  const double off = toy2_cov_offdiag(cfg);
  if (!(off >= 0.0) || !(diag >= off))
    throw std::domain_error("toy2 covariance corner is not exchangeable-PSD");
  const double sd_common = std::sqrt(off);
  const double sd_own = std::sqrt(diag - off);
  CounterRng rng(derive_seed(cfg.seed, 2, static_cast<uint64_t>(replicate)));
  double s = 0.0;
  for (int t = 0; t < cfg.t_steps; ++t) {
    const double common = sd_common * rng.normal();
    double slice_sum = 0.0;
    for (int i = 0; i < cfg.k; ++i)
      slice_sum += common + sd_own * rng.normal();
    const double d = slice_sum / cfg.k;  // slice mean minus its expectation
    s += d * d;
  }
  s /= cfg.t_steps;
  return static_cast<double>(cfg.n) / (cfg.k - 1) / (mean * mean) *
         (cfg.k * s - mean);
}

std::vector<double> toy2_run(const Toy2Config& cfg) {
  validate2(cfg);
  if (cfg.replicates < 1)
    throw std::invalid_argument("replicates must be >= 1");
  std::vector<double> out(cfg.replicates);
  for (int r = 0; r < cfg.replicates; ++r) out[r] = toy2_trial(cfg, r);
  return out;
}

double toy2_variance_formula(const Toy2Config& cfg) {
  validate2(cfg);
  const double rho = toy2_cov_diag(cfg);
  const double alpha = cfg.n * toy2_cov_offdiag(cfg);
  const double ratio = static_cast<double>(cfg.n) / (cfg.k - 1);
  const double inner = rho + (cfg.k - 1) * alpha / cfg.n;
  return ratio * ratio * inner * inner / cfg.t_steps;
}

}  // namespace hawkes
