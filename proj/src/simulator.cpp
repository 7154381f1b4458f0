#include "hawkes/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "hawkes/rng.hpp"

namespace hawkes {

namespace {

std::string overflow_message(long long count, uint64_t seed) {
  std::ostringstream os;
  os << "simulation exceeded max_events: " << count
     << " events accepted (seed " << seed << ")";
  return os.str();
}

std::string collision_message(double t, uint64_t seed) {
  std::ostringstream os;
  os.precision(17);
  os << "two accepted timestamps collided at t = " << t << " (seed " << seed
     << "); rerun with a different seed";
  return os.str();
}

void validate(const SimConfig& c) {
  if (!c.graph) throw std::invalid_argument("simulation needs a graph");
  if (!(c.mu > 0.0))
    throw std::invalid_argument("baseline intensity mu must be > 0");
  if (!(c.horizon > 0.0))
    throw std::invalid_argument("horizon must be > 0");
  if (c.max_events < 1)
    throw std::invalid_argument("max_events must be >= 1");
}

// receivers[j] = { i : theta(i,j) = 1 }, the individuals whose intensity an
// event of j excites (column adjacency).
std::vector<std::vector<int>> receiver_lists(const Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> rec(n);
  for (int i = 0; i < n; ++i) {
    const uint8_t* row = g.row(i);
    for (int j = 0; j < n; ++j)
      if (row[j]) rec[j].push_back(i);
  }
  return rec;
}

EventData simulate_exponential(const SimConfig& c,
                               std::vector<TracePoint>* trace) {
  const Graph& g = *c.graph;
  const int n = g.size();
  const double a = c.kernel.param1();
  const double b = c.kernel.param2();
  const double jump = a / n;
  const double base_total = n * c.mu;
  const auto receivers = receiver_lists(g);

  std::vector<std::vector<double>> events(n);
  std::vector<double> excite(n, 0.0);  // S_i with lambda_i = mu + S_i
  CounterRng rng(c.seed);

  double t_cur = 0.0;
  double bound = base_total;
  double last_accept = -1.0;
  long long total = 0;

  while (true) {
    const double tau = t_cur + rng.exponential() / bound;
    if (tau > c.horizon) break;
    // decay every excitation level to tau; the same left-to-right pass
    // accumulates the exact total the selection scan below re-walks, so the
    // two can never disagree about whether a candidate fits.
    const double decay = std::exp(-b * (tau - t_cur));
    double total_intensity = 0.0;
    for (int i = 0; i < n; ++i) {
      excite[i] *= decay;
      total_intensity += c.mu + excite[i];
    }
    const double x = rng.uniform_open() * bound;
    t_cur = tau;
    if (x > total_intensity) {
      bound = total_intensity;
      continue;
    }
    int who = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += c.mu + excite[i];
      if (x <= acc) {
        who = i;
        break;
      }
    }
    if (tau == last_accept)
      throw std::runtime_error(collision_message(tau, c.seed));
    ++total;
    if (total > c.max_events) throw SimulationOverflow(total, c.seed);
    if (trace) trace->push_back({tau, who, c.mu + excite[who]});
    events[who].push_back(tau);
    last_accept = tau;
    const auto& rec = receivers[who];
    for (int i : rec) excite[i] += jump;
    bound = total_intensity + jump * static_cast<double>(rec.size());
  }
  return EventData(n, c.horizon, std::move(events), c.seed);
}

EventData simulate_box(const SimConfig& c, std::vector<TracePoint>* trace) {
  const Graph& g = *c.graph;
  const int n = g.size();
  const double height = c.kernel.param1() / n;  // per-edge contribution c/n
  const double width = c.kernel.param2();
  const double base_total = n * c.mu;
  const auto receivers = receiver_lists(g);

  std::vector<std::vector<double>> events(n);
  std::vector<long long> active(n, 0);  // active contribution counts
  // Emitter event times awaiting expiry, in insertion = time order. An event
  // at s contributes while tau - s <= width, the same comparison
  // Kernel::evaluate uses, so the probe and the simulator always agree on
  // boundary cases.
  std::deque<std::pair<double, int>> pending;  // (event time, emitter)
  CounterRng rng(c.seed);

  double t_cur = 0.0;
  double bound = base_total;
  double last_accept = -1.0;
  long long total = 0;

  while (true) {
    const double tau = t_cur + rng.exponential() / bound;
    if (tau > c.horizon) break;
    while (!pending.empty() && tau - pending.front().first > width) {
      const int emitter = pending.front().second;
      pending.pop_front();
      for (int i : receivers[emitter]) --active[i];
    }
    double total_intensity = 0.0;
    for (int i = 0; i < n; ++i)
      total_intensity += c.mu + height * static_cast<double>(active[i]);
    const double x = rng.uniform_open() * bound;
    t_cur = tau;
    if (x > total_intensity) {
      bound = total_intensity;
      continue;
    }
    int who = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += c.mu + height * static_cast<double>(active[i]);
      if (x <= acc) {
        who = i;
        break;
      }
    }
    if (tau == last_accept)
      throw std::runtime_error(collision_message(tau, c.seed));
    ++total;
    if (total > c.max_events) throw SimulationOverflow(total, c.seed);
    if (trace)
      trace->push_back(
          {tau, who, c.mu + height * static_cast<double>(active[who])});
    events[who].push_back(tau);
    last_accept = tau;
    pending.emplace_back(tau, who);
    const auto& rec = receivers[who];
    for (int i : rec) ++active[i];
    bound = total_intensity + height * static_cast<double>(rec.size());
  }
  return EventData(n, c.horizon, std::move(events), c.seed);
}

}  // namespace

SimulationOverflow::SimulationOverflow(long long count_, uint64_t seed_)
    : std::runtime_error(overflow_message(count_, seed_)),
      count(count_),
      seed(seed_) {}

EventData simulate(const SimConfig& config, std::vector<TracePoint>* trace) {
  validate(config);
  if (trace) trace->clear();
  if (config.kernel.shape() == Kernel::Shape::Exponential)
    return simulate_exponential(config, trace);
  return simulate_box(config, trace);
}

double intensity_probe(const EventData& data, const SimConfig& config,
                       int individual, double t) {
  validate(config);
  const Graph& g = *config.graph;
  if (g.size() != data.population())
    throw std::invalid_argument("graph size does not match event data");
  if (individual < 0 || individual >= data.population())
    throw std::out_of_range("individual index out of range");
  if (!(t >= 0.0)) throw std::invalid_argument("probe time must be >= 0");
  double acc = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    if (!g.edge(individual, j)) continue;
    for (double s : data.times(j)) {
      if (s >= t) break;
      acc += config.kernel.evaluate(t - s);
    }
  }
  return config.mu + acc / g.size();
}

std::vector<double> rescaling_residuals(const EventData& data,
                                        const SimConfig& config,
                                        int individual) {
  validate(config);
  const Graph& g = *config.graph;
  const int n = data.population();
  if (g.size() != n)
    throw std::invalid_argument("graph size does not match event data");
  if (individual < 0 || individual >= n)
    throw std::out_of_range("individual index out of range");

  // Merged stream of the individual's own events (residual checkpoints) and
  // its neighbors' events (excitation bumps); one item can be both. Own
  // items sort first on ties: an event at exactly t contributes to the
  // intensity only strictly after t, so a checkpoint at t must close before
  // a simultaneous bump applies.
  struct Item {
    double t;
    bool own;
    bool excites;
  };
  std::vector<Item> stream;
  for (int j = 0; j < n; ++j) {
    const bool own = j == individual;
    const bool excites = g.edge(individual, j);
    if (!own && !excites) continue;
    for (double s : data.times(j)) stream.push_back({s, own, excites});
  }
  std::sort(stream.begin(), stream.end(), [](const Item& a, const Item& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.own && !b.own;
  });

  std::vector<double> out;
  const double mu = config.mu;
  double integral = 0.0;
  double checkpoint = 0.0;
  bool seen_own = false;
  double x = 0.0;  // left end of the segment being integrated

  if (config.kernel.shape() == Kernel::Shape::Exponential) {
    const double a = config.kernel.param1() / n;
    const double b = config.kernel.param2();
    double s_state = 0.0;
    for (const Item& it : stream) {
      const double dt = it.t - x;
      integral += mu * dt + s_state / b * (-std::expm1(-b * dt));
      s_state *= std::exp(-b * dt);
      x = it.t;
      if (it.own) {
        if (seen_own) out.push_back(integral - checkpoint);
        checkpoint = integral;
        seen_own = true;
      }
      if (it.excites) s_state += a;
    }
  } else {
    const double height = config.kernel.param1() / n;
    const double width = config.kernel.param2();
    std::deque<double> active;  // neighbor event times not yet expired
    for (const Item& it : stream) {
      // integrate piecewise-constant intensity up to it.t, splitting at
      // expiries inside the segment
      while (!active.empty() && active.front() + width <= it.t) {
        const double e = active.front() + width;
        integral += (mu + height * static_cast<double>(active.size())) *
                    (e - x);
        x = e;
        active.pop_front();
      }
      integral +=
          (mu + height * static_cast<double>(active.size())) * (it.t - x);
      x = it.t;
      if (it.own) {
        if (seen_own) out.push_back(integral - checkpoint);
        checkpoint = integral;
        seen_own = true;
      }
      if (it.excites) active.push_back(it.t);
    }
  }
  return out;
}

}  // namespace hawkes
