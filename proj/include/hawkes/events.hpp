#ifndef HAWKES_EVENTS_HPP
#define HAWKES_EVENTS_HPP

#include <cstdint>
#include <vector>

namespace hawkes {

// Per-individual event times on (0, horizon], each list strictly increasing.
// Window counting is left-open right-closed throughout the project: an event
// at exactly `from` is excluded, one at exactly `to` is included. All the
// statistics downstream assume this one convention.
class EventData {
 public:
  EventData(int n, double horizon, std::vector<std::vector<double>> events,
            uint64_t seed);

  int population() const { return n_; }
  double horizon() const { return horizon_; }
  uint64_t seed() const { return seed_; }
  const std::vector<double>& times(int individual) const;
  long long total_events() const { return total_; }

 private:
  int n_;
  double horizon_;
  uint64_t seed_;
  long long total_;
  std::vector<std::vector<double>> events_;
};

// Number of events of `individual` in (from, to]. The window must satisfy
// 0 <= from <= to <= horizon (up to a relative 1e-9 slack on the upper end,
// which is then clamped, so bin edges computed as multiples of a float bin
// width cannot be rejected for an ulp overshoot).
long long count_in_window(const EventData& data, int individual, double from,
                          double to);

}  // namespace hawkes

#endif
