#include "hawkes/events.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hawkes {

EventData::EventData(int n, double horizon,
                     std::vector<std::vector<double>> events, uint64_t seed)
    : n_(n), horizon_(horizon), seed_(seed), total_(0),
      events_(std::move(events)) {
  if (n < 1) throw std::invalid_argument("population must be >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  if (events_.size() != static_cast<size_t>(n))
    throw std::invalid_argument("event lists do not match the population");
  for (int i = 0; i < n; ++i) {
    double prev = 0.0;
    for (double t : events_[i]) {
      if (!(t > prev)) {
        std::ostringstream os;
        os << "event times of individual " << i
           << " must be strictly increasing and > 0 (saw " << t << " after "
           << prev << ")";
        throw std::invalid_argument(os.str());
      }
      if (t > horizon_) {
        std::ostringstream os;
        os << "event at " << t << " beyond horizon " << horizon_;
        throw std::invalid_argument(os.str());
      }
      prev = t;
    }
    total_ += static_cast<long long>(events_[i].size());
  }
}

const std::vector<double>& EventData::times(int individual) const {
  if (individual < 0 || individual >= n_)
    throw std::out_of_range("individual index out of range");
  return events_[individual];
}

long long count_in_window(const EventData& data, int individual, double from,
                          double to) {
  if (!(from >= 0.0) || !(to >= from))
    throw std::invalid_argument("window must satisfy 0 <= from <= to");
  const double slack = 1e-9 * std::max(1.0, data.horizon());
  if (to > data.horizon() + slack) {
    std::ostringstream os;
    os << "window end " << to << " beyond horizon " << data.horizon();
    throw std::invalid_argument(os.str());
  }
  to = std::min(to, data.horizon());
  const auto& ts = data.times(individual);
  auto lo = std::upper_bound(ts.begin(), ts.end(), from);
  auto hi = std::upper_bound(ts.begin(), ts.end(), to);
  return hi - lo;
}

}  // namespace hawkes
