#ifndef HAWKES_SUPERCRITICAL_HPP
#define HAWKES_SUPERCRITICAL_HPP

#include <vector>

#include "hawkes/events.hpp"

namespace hawkes {

// Estimators for the exploding regime, built from the counts Z_i on (0, t]
// of the first k individuals. The relative spread statistic
//
//   u = (n/k) sum_{i<k} ((Z_i - Zbar)/Zbar)^2 - n/Zbar      (0 if Zbar = 0)
//
// converges to 1/p - 1, so p_hat = 1/(u+1) (or 0 when u < 0). With no
// events at all, u = 0 and p_hat = 1 by convention. growth_rate is
// log(Zbar)/t, defined only when Zbar > 0 (NaN otherwise).
struct SupercriticalStats {
  double u = 0.0;
  double p_hat = 0.0;
  double z_bar = 0.0;
  double growth_rate = 0.0;
};

// Core computation on a plain count vector (the first k individuals'
// counts); n is the full population size.
SupercriticalStats supercritical_stats(const std::vector<double>& counts,
                                       int n, double t);

// Counts extracted from event data on (0, t], then supercritical_stats.
// Requires t <= horizon and 1 <= k <= population.
SupercriticalStats estimate_supercritical(const EventData& data, double t,
                                          int k);

}  // namespace hawkes

#endif
