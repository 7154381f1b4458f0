#include "hawkes/supercritical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hawkes {

SupercriticalStats supercritical_stats(const std::vector<double>& counts,
                                       int n, double t) {
  if (counts.empty()) throw std::invalid_argument("need at least one count");
  if (n < static_cast<int>(counts.size()))
    throw std::invalid_argument("population smaller than the count vector");
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  const size_t k = counts.size();
  SupercriticalStats out;
  double sum = 0.0;
  for (double z : counts) {
    if (!(z >= 0.0)) throw std::invalid_argument("counts must be >= 0");
    sum += z;
  }
  out.z_bar = sum / static_cast<double>(k);
  if (out.z_bar > 0.0) {
    double ss = 0.0;
    for (double z : counts) {
      const double d = (z - out.z_bar) / out.z_bar;
      ss += d * d;
    }
    out.u = static_cast<double>(n) / static_cast<double>(k) * ss -
            static_cast<double>(n) / out.z_bar;
    out.growth_rate = std::log(out.z_bar) / t;
  } else {
    out.u = 0.0;
    out.growth_rate = std::numeric_limits<double>::quiet_NaN();
  }
  out.p_hat = out.u >= 0.0 ? 1.0 / (out.u + 1.0) : 0.0;
  return out;
}

SupercriticalStats estimate_supercritical(const EventData& data, double t,
                                          int k) {
  if (k < 1 || k > data.population())
    throw std::invalid_argument("k must satisfy 1 <= k <= population");
  const double slack = 1e-9 * std::max(1.0, data.horizon());
  if (t > data.horizon() + slack)
    throw std::invalid_argument("t exceeds the simulated horizon");
  std::vector<double> counts(k);
  for (int i = 0; i < k; ++i)
    counts[i] =
        static_cast<double>(count_in_window(data, i, 0.0, std::min(t, data.horizon())));
  return supercritical_stats(counts, data.population(), t);
}

}  // namespace hawkes
