#ifndef HAWKES_SUBCRITICAL_HPP
#define HAWKES_SUBCRITICAL_HPP

#include <optional>
#include <utility>

#include "hawkes/events.hpp"

namespace hawkes {

// Statistics taken on the observation window (t, 2t] over the first k of n
// individuals. Their large-(n,t) limits, when the system is subcritical with
// baseline mu, branching ratio L (kernel total mass) and edge density p, are
//
//   epsilon -> mu / (1 - L p)
//   v       -> mu^2 L^2 p (1-p) / (1 - L p)^2
//   x       -> mu / (1 - L p)^3
//
// and psi() inverts that triple back to (mu, L, p).
struct SubcriticalStats {
  double epsilon = 0.0;
  double v = 0.0;
  double x = 0.0;
  double delta = 0.0;  // bin width used by the multiscale statistic
  double t = 0.0;
  int n = 0;
  int k = 0;
};

struct EstimateTriple {
  double mu_hat = 0.0;
  double lambda_hat = 0.0;
  double p_hat = 0.0;
  bool valid = false;
};

// Mean event rate: (1/(t k)) sum_{i<k} |Z_i on (t, 2t]|.
double epsilon_stat(const EventData& data, double t, int k);

// Cross-sectional variance statistic:
// (n/k) sum_{i<k} (count_i/t - epsilon)^2 - (n/t) epsilon.
double v_stat(const EventData& data, double t, int k);

// Multiscale bin statistic at width delta (t/delta must be a positive
// integer): (n/t) sum over the t/delta bins of (t, 2t] of
// (mean bin count over the first k - delta*epsilon)^2. Exposed for tests;
// w_stat below is its Richardson pair.
double z_stat(const EventData& data, double t, int k, double delta);

// w = 2 z(2 delta) - z(delta); needs t/(2 delta) to be a positive integer.
double w_stat(const EventData& data, double t, int k, double delta);

// x = w - ((n-k)/k) epsilon.
double x_stat(const EventData& data, double t, int k, double delta);

// Default bin width delta = t / (2 floor(t^{1 - 4/(q+1)})). q is the moment
// order driving the rate tradeoff; q >= 3 and t >= 4 required (at q = 3 the
// exponent degenerates to 0 and delta = t/2).
double default_delta(double t, double q);

// Inverts a (u, v, w) statistics triple to (mu_hat, lambda_hat, p_hat).
// Defined on u >= 0, v >= 0, w > 0; outside that domain, or when the
// division guards trip (u <= 1e-12, or |u - mu_hat| <= 1e-12 max(1, u)),
// the result carries valid = false and the caller must treat the trial as
// failed; no silent zero triple.
EstimateTriple psi(double u, double v, double w);

// Full pipeline on one realization: counts on (t, 2t], the three statistics
// with delta = default_delta(t, q) (or the override), then psi. Requires
// 2t <= horizon and k <= population.
std::pair<SubcriticalStats, EstimateTriple> estimate_subcritical(
    const EventData& data, double t, int k, double q,
    std::optional<double> delta_override = std::nullopt);

}  // namespace hawkes

#endif
