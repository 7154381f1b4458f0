#include "hawkes/subcritical.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hawkes {

namespace {

void require_window(const EventData& data, double t, int k) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  if (k < 1 || k > data.population())
    throw std::invalid_argument("k must satisfy 1 <= k <= population");
  const double slack = 1e-9 * std::max(1.0, data.horizon());
  if (2.0 * t > data.horizon() + slack) {
    std::ostringstream os;
    os << "observation window (t, 2t] = (" << t << ", " << 2.0 * t
       << "] exceeds horizon " << data.horizon();
    throw std::invalid_argument(os.str());
  }
}

// t/delta as an exact positive integer, rejecting ratios that are not
// integral to within 1e-9 relative.
long long bins_for(double t, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  const double ratio = t / delta;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 ||
      std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "t/delta = " << ratio << " is not a positive integer";
    throw std::invalid_argument(os.str());
  }
  return static_cast<long long>(rounded);
}

}  // namespace

double epsilon_stat(const EventData& data, double t, int k) {
  require_window(data, t, k);
  long long total = 0;
  for (int i = 0; i < k; ++i) total += count_in_window(data, i, t, 2.0 * t);
  return static_cast<double>(total) / (t * k);
}

double v_stat(const EventData& data, double t, int k) {
  require_window(data, t, k);
  const int n = data.population();
  const double eps = epsilon_stat(data, t, k);
  double ss = 0.0;
  for (int i = 0; i < k; ++i) {
    const double rate =
        static_cast<double>(count_in_window(data, i, t, 2.0 * t)) / t;
    const double d = rate - eps;
    ss += d * d;
  }
  return static_cast<double>(n) / k * ss - static_cast<double>(n) / t * eps;
}

double z_stat(const EventData& data, double t, int k, double delta) {
  require_window(data, t, k);
  const long long bins = bins_for(t, delta);
  const int n = data.population();
  const double eps = epsilon_stat(data, t, k);
  // bins are ((a-1) delta, a delta] for a = t/delta + 1 .. 2t/delta, which
  // tile (t, 2t] exactly
  double ss = 0.0;
  for (long long a = bins + 1; a <= 2 * bins; ++a) {
    const double lo = static_cast<double>(a - 1) * delta;
    const double hi = static_cast<double>(a) * delta;
    long long cnt = 0;
    for (int i = 0; i < k; ++i) cnt += count_in_window(data, i, lo, hi);
    const double d = static_cast<double>(cnt) / k - delta * eps;
    ss += d * d;
  }
  return static_cast<double>(n) / t * ss;
}

double w_stat(const EventData& data, double t, int k, double delta) {
  bins_for(t, 2.0 * delta);  // enforces t/(2 delta) integral up front
  return 2.0 * z_stat(data, t, k, 2.0 * delta) - z_stat(data, t, k, delta);
}

double x_stat(const EventData& data, double t, int k, double delta) {
  const int n = data.population();
  return w_stat(data, t, k, delta) -
         static_cast<double>(n - k) / k * epsilon_stat(data, t, k);
}

double default_delta(double t, double q) {
  if (!(t >= 4.0)) throw std::invalid_argument("default_delta needs t >= 4");
  if (!(q >= 3.0)) throw std::invalid_argument("default_delta needs q >= 3");
  const double exponent = 1.0 - 4.0 / (q + 1.0);
  const double m = std::floor(std::pow(t, exponent));
  if (m < 1.0) {
    std::ostringstream os;
    os << "floor(t^" << exponent << ") = 0 at t = " << t
       << "; t too small for this q";
    throw std::invalid_argument(os.str());
  }
  return t / (2.0 * m);
}

EstimateTriple psi(double u, double v, double w) {
  EstimateTriple out;
  if (!(w > 0.0) || !(u >= 0.0) || !(v >= 0.0)) return out;  // outside domain
  if (u <= 1e-12) return out;
  const double mu_hat = u * std::sqrt(u / w);
  const double gap = u - mu_hat;
  if (std::abs(gap) <= 1e-12 * std::max(1.0, u)) return out;
  const double lambda_hat = (v + gap * gap) / (u * gap);
  const double p_hat = (1.0 - mu_hat / u) / lambda_hat;
  out.mu_hat = mu_hat;
  out.lambda_hat = lambda_hat;
  out.p_hat = p_hat;
  out.valid = std::isfinite(mu_hat) && std::isfinite(lambda_hat) &&
              std::isfinite(p_hat);
  return out;
}

std::pair<SubcriticalStats, EstimateTriple> estimate_subcritical(
    const EventData& data, double t, int k, double q,
    std::optional<double> delta_override) {
  require_window(data, t, k);
  SubcriticalStats stats;
  stats.t = t;
  stats.n = data.population();
  stats.k = k;
  stats.delta = delta_override ? *delta_override : default_delta(t, q);
  bins_for(t, 2.0 * stats.delta);
  stats.epsilon = epsilon_stat(data, t, k);
  stats.v = v_stat(data, t, k);
  stats.x = x_stat(data, t, k, stats.delta);
  return {stats, psi(stats.epsilon, stats.v, stats.x)};
}

}  // namespace hawkes
