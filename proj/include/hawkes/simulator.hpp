#ifndef HAWKES_SIMULATOR_HPP
#define HAWKES_SIMULATOR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hawkes/events.hpp"
#include "hawkes/graph.hpp"
#include "hawkes/kernel.hpp"

namespace hawkes {

// One simulation run: n coupled counting processes with intensities
//
//   lambda_i(t) = mu + (1/n) sum_j theta(i,j) sum_{s in Z_j, s < t} phi(t-s)
//
// on (0, horizon]. The sum over past events is strictly before t, so an
// event never excites itself at its own timestamp.
struct SimConfig {
  const Graph* graph = nullptr;
  double mu = 0.0;
  Kernel kernel;
  double horizon = 0.0;
  uint64_t seed = 0;
  long long max_events = 10'000'000;
};

// Thrown when a run exceeds max_events; expected in deep supercritical
// sweeps, so it carries enough to re-run or skip the offending trial.
class SimulationOverflow : public std::runtime_error {
 public:
  SimulationOverflow(long long count, uint64_t seed);
  long long count;
  uint64_t seed;
};

// Intensity of the accepted individual at its event time, recorded just
// before the event is inserted. Matches intensity_probe on the finished
// data, which is what the oracle tests assert.
struct TracePoint {
  double time = 0.0;
  int individual = 0;
  double intensity = 0.0;
};

// Ogata thinning with one global bound B = sum_i lambda_i(t+). Both kernel
// shapes are non-increasing between events, so B dominates the total
// intensity until the next accepted event and a single Exp(B) candidate
// clock is valid; the bound is re-tightened after every candidate. One
// uniform per candidate handles accept/reject and individual assignment
// together. Exponential excitation is carried as one decaying scalar per
// individual; box excitation as active-contribution counters plus an expiry
// queue. Runs are deterministic per seed; if two accepted timestamps ever
// collide at double precision the run aborts naming the seed.
EventData simulate(const SimConfig& config,
                   std::vector<TracePoint>* trace = nullptr);

// Brute-force lambda_i(t) straight from the definition, summing phi over
// every recorded event. Slow and independent of the simulator's recursive
// state, which is the point: it is the oracle the simulator is checked
// against.
double intensity_probe(const EventData& data, const SimConfig& config,
                       int individual, double t);

// Time-rescaling residuals for one individual: the integrated intensity
// between its consecutive events,
//
//   r_k = integral_{t_{k-1}}^{t_k} lambda_i(s) ds,   k = 2..m.
//
// Under a correct simulation these are i.i.d. Exp(1). Computed exactly in
// closed form, walking the merged stream of the individual's own events and
// its neighbors' events. Fewer than two events -> empty.
std::vector<double> rescaling_residuals(const EventData& data,
                                        const SimConfig& config,
                                        int individual);

}  // namespace hawkes

#endif
