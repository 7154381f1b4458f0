#include "hawkes/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hawkes/graph.hpp"
#include "hawkes/io.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulator.hpp"

namespace hawkes {

using nlohmann::json;

namespace {

// distinct role tags for the per-trial seed derivation
constexpr uint64_t kGraphRole = 17;
constexpr uint64_t kSimRole = 29;

double json_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN()
                     : j.get<double>();
}

json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

std::string regime_name(Regime r) {
  return r == Regime::Subcritical ? "subcritical" : "supercritical";
}

Regime regime_from_name(const std::string& name) {
  if (name == "subcritical") return Regime::Subcritical;
  if (name == "supercritical") return Regime::Supercritical;
  throw std::invalid_argument("unknown regime: " + name);
}

json run_config_to_json(const RunConfig& cfg) {
  json j{{"regime", regime_name(cfg.regime)},
         {"mu", cfg.mu},
         {"kernel", kernel_to_json(cfg.kernel)},
         {"p", cfg.p},
         {"n", cfg.n_list},
         {"t", cfg.t_list},
         {"q", cfg.q},
         {"replicates", cfg.replicates},
         {"seed", cfg.seed},
         {"max_events", cfg.max_events}};
  if (cfg.k_list)
    j["k"] = *cfg.k_list;
  else
    j["k"] = nullptr;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  cfg.regime = regime_from_name(j.at("regime").get<std::string>());
  cfg.mu = j.at("mu").get<double>();
  cfg.kernel = kernel_from_json(j.at("kernel"));
  cfg.p = j.at("p").get<double>();
  cfg.n_list = j.at("n").get<std::vector<int>>();
  if (j.contains("k") && !j.at("k").is_null())
    cfg.k_list = j.at("k").get<std::vector<int>>();
  cfg.t_list = j.at("t").get<std::vector<double>>();
  if (j.contains("q")) cfg.q = j.at("q").get<double>();
  cfg.replicates = j.at("replicates").get<int>();
  cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("max_events"))
    cfg.max_events = j.at("max_events").get<long long>();
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  if (!(cfg.mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  if (!(cfg.p > 0.0) || !(cfg.p <= 1.0))
    throw std::invalid_argument("p must lie in (0, 1]");
  if (cfg.n_list.empty() || cfg.t_list.empty())
    throw std::invalid_argument("n and t sweep lists must be non-empty");
  if (cfg.replicates < 1)
    throw std::invalid_argument("replicates must be >= 1");
  if (cfg.max_events < 1)
    throw std::invalid_argument("max_events must be >= 1");
  const double mass_p = cfg.kernel.total_mass() * cfg.p;
  if (cfg.regime == Regime::Subcritical && !(mass_p < 1.0)) {
    std::ostringstream os;
    os << "regime says subcritical but total_mass * p = " << mass_p
       << " >= 1";
    throw std::invalid_argument(os.str());
  }
  if (cfg.regime == Regime::Supercritical && !(mass_p > 1.0)) {
    std::ostringstream os;
    os << "regime says supercritical but total_mass * p = " << mass_p
       << " <= 1";
    throw std::invalid_argument(os.str());
  }
  if (cfg.regime == Regime::Subcritical)
    for (double t : cfg.t_list) default_delta(t, cfg.q);  // throws if unusable
  if (enumerate_grid(cfg).empty())
    throw std::invalid_argument("sweep grid is empty (every k exceeds n?)");
}

std::vector<GridPoint> enumerate_grid(const RunConfig& cfg) {
  std::vector<GridPoint> grid;
  for (int n : cfg.n_list) {
    std::vector<int> ks = cfg.k_list ? *cfg.k_list : std::vector<int>{n};
    for (int k : ks) {
      if (k < 1 || k > n) continue;
      for (double t : cfg.t_list) grid.push_back({n, k, t});
    }
  }
  return grid;
}

json trial_record_to_json(const TrialRecord& rec) {
  json j{{"grid_index", rec.grid_index},
         {"replicate", rec.replicate},
         {"regime", regime_name(rec.regime)},
         {"n", rec.n},
         {"k", rec.k},
         {"t", rec.t},
         {"q", rec.q},
         {"mu", rec.mu},
         {"p", rec.p},
         {"kernel", rec.kernel},
         {"lambda", rec.lambda},
         {"graph_seed", rec.graph_seed},
         {"sim_seed", rec.sim_seed},
         {"events", rec.events},
         {"wall_ms", rec.wall_ms},
         {"failed", rec.failed}};
  if (rec.failed) j["failure"] = rec.failure;
  if (rec.sub) {
    j["stats"] = json{{"epsilon", rec.sub->epsilon},
                      {"v", rec.sub->v},
                      {"x", rec.sub->x},
                      {"delta", rec.sub->delta}};
  }
  if (rec.estimate) {
    j["estimate"] = json{{"mu_hat", rec.estimate->mu_hat},
                         {"lambda_hat", rec.estimate->lambda_hat},
                         {"p_hat", rec.estimate->p_hat},
                         {"valid", rec.estimate->valid}};
    if (rec.estimate->valid)
      j["errors"] = json{{"mu", std::abs(rec.estimate->mu_hat - rec.mu)},
                         {"lambda", std::abs(rec.estimate->lambda_hat -
                                             rec.lambda)},
                         {"p", std::abs(rec.estimate->p_hat - rec.p)}};
  }
  if (rec.super) {
    j["stats"] = json{{"u", rec.super->u},
                      {"p_hat", rec.super->p_hat},
                      {"z_bar", rec.super->z_bar},
                      {"growth_rate", number_json(rec.super->growth_rate)}};
    j["errors"] = json{{"p", std::abs(rec.super->p_hat - rec.p)}};
  }
  return j;
}

TrialRecord trial_record_from_json(const json& j) {
  TrialRecord rec;
  rec.grid_index = j.at("grid_index").get<int>();
  rec.replicate = j.at("replicate").get<int>();
  rec.regime = regime_from_name(j.at("regime").get<std::string>());
  rec.n = j.at("n").get<int>();
  rec.k = j.at("k").get<int>();
  rec.t = j.at("t").get<double>();
  rec.q = j.at("q").get<double>();
  rec.mu = j.at("mu").get<double>();
  rec.p = j.at("p").get<double>();
  rec.kernel = j.at("kernel");
  rec.lambda = j.at("lambda").get<double>();
  rec.graph_seed = j.at("graph_seed").get<uint64_t>();
  rec.sim_seed = j.at("sim_seed").get<uint64_t>();
  rec.events = j.at("events").get<long long>();
  rec.wall_ms = j.at("wall_ms").get<double>();
  rec.failed = j.at("failed").get<bool>();
  if (rec.failed) rec.failure = j.value("failure", "");
  if (rec.regime == Regime::Subcritical && j.contains("stats")) {
    SubcriticalStats s;
    s.epsilon = j["stats"].at("epsilon").get<double>();
    s.v = j["stats"].at("v").get<double>();
    s.x = j["stats"].at("x").get<double>();
    s.delta = j["stats"].at("delta").get<double>();
    s.t = rec.t;
    s.n = rec.n;
    s.k = rec.k;
    rec.sub = s;
  }
  if (j.contains("estimate")) {
    EstimateTriple e;
    e.mu_hat = j["estimate"].at("mu_hat").get<double>();
    e.lambda_hat = j["estimate"].at("lambda_hat").get<double>();
    e.p_hat = j["estimate"].at("p_hat").get<double>();
    e.valid = j["estimate"].at("valid").get<bool>();
    rec.estimate = e;
  }
  if (rec.regime == Regime::Supercritical && j.contains("stats")) {
    SupercriticalStats s;
    s.u = j["stats"].at("u").get<double>();
    s.p_hat = j["stats"].at("p_hat").get<double>();
    s.z_bar = j["stats"].at("z_bar").get<double>();
    s.growth_rate = json_number(j["stats"].at("growth_rate"));
    rec.super = s;
  }
  return rec;
}

TrialRecord run_trial(const RunConfig& cfg, const GridPoint& gp,
                      int grid_index, int replicate) {
  TrialRecord rec;
  rec.grid_index = grid_index;
  rec.replicate = replicate;
  rec.regime = cfg.regime;
  rec.n = gp.n;
  rec.k = gp.k;
  rec.t = gp.t;
  rec.q = cfg.q;
  rec.mu = cfg.mu;
  rec.p = cfg.p;
  rec.kernel = kernel_to_json(cfg.kernel);
  rec.lambda = cfg.kernel.total_mass();
  rec.graph_seed = derive_seed(cfg.seed, static_cast<uint64_t>(grid_index),
                               static_cast<uint64_t>(replicate), kGraphRole);
  rec.sim_seed = derive_seed(cfg.seed, static_cast<uint64_t>(grid_index),
                             static_cast<uint64_t>(replicate), kSimRole);

  const auto start = std::chrono::steady_clock::now();
  try {
    const Graph graph = Graph::sample(gp.n, cfg.p, rec.graph_seed);
    SimConfig sim{.graph = &graph,
                  .mu = cfg.mu,
                  .kernel = cfg.kernel,
                  .horizon = cfg.regime == Regime::Subcritical ? 2.0 * gp.t
                                                               : gp.t,
                  .seed = rec.sim_seed,
                  .max_events = cfg.max_events};
    const EventData data = simulate(sim);
    rec.events = data.total_events();
    if (cfg.regime == Regime::Subcritical) {
      auto [stats, estimate] = estimate_subcritical(data, gp.t, gp.k, cfg.q);
      rec.sub = stats;
      rec.estimate = estimate;
    } else {
      rec.super = estimate_supercritical(data, gp.t, gp.k);
    }
  } catch (const SimulationOverflow& e) {
    rec.failed = true;
    rec.failure = e.what();
    rec.events = e.count;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

void run_sweep(const RunConfig& cfg, int workers,
               const std::function<void(const TrialRecord&)>& sink,
               const std::set<std::pair<int, int>>* done) {
  validate_run_config(cfg);
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  const auto grid = enumerate_grid(cfg);

  std::vector<std::pair<int, int>> tasks;
  for (int g = 0; g < static_cast<int>(grid.size()); ++g)
    for (int r = 0; r < cfg.replicates; ++r)
      if (!done || !done->count({g, r})) tasks.emplace_back(g, r);

  std::atomic<size_t> next{0};
  std::mutex sink_mutex;
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      const auto [g, r] = tasks[idx];
      try {
        TrialRecord rec = run_trial(cfg, grid[g], g, r);
        std::lock_guard<std::mutex> lock(sink_mutex);
        sink(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

long long run_sweep_to_file(const RunConfig& cfg, int workers,
                            const std::string& path) {
  std::set<std::pair<int, int>> done;
  {
    std::ifstream probe(path);
    if (probe.good())
      for (const auto& rec : read_records_jsonl(path))
        done.insert({rec.grid_index, rec.replicate});
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open for append: " + path);
  long long written = 0;
  run_sweep(
      cfg, workers,
      [&](const TrialRecord& rec) {
        out << trial_record_to_json(rec).dump() << '\n';
        out.flush();
        ++written;
      },
      done.empty() ? nullptr : &done);
  return written;
}

std::vector<TrialRecord> read_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open records file: " + path);
  std::vector<TrialRecord> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(trial_record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << path << ":" << line_no << ": " << e.what();
      throw std::runtime_error(os.str());
    }
  }
  return out;
}

void append_record_jsonl(const std::string& path, const TrialRecord& rec) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open for append: " + path);
  out << trial_record_to_json(rec).dump() << '\n';
}

double rate_predictor(Regime regime, int n, int k, double t, double q,
                      double alpha0) {
  const double rk = std::sqrt(static_cast<double>(k));
  if (regime == Regime::Subcritical) {
    const double expo = 0.5 * (1.0 - 4.0 / (q + 1.0));
    return 1.0 / rk + n / (k * std::pow(t, expo)) + n / (t * rk);
  }
  return n / (rk * std::exp(alpha0 * t)) + 1.0 / rk;
}

std::vector<PointSummary> aggregate_records(
    const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");
  // grid points keyed by (n, k, t); alpha0 for the supercritical predictor
  // comes from the shared kernel and p of the file
  double alpha0 = 0.0;
  const Regime regime = records.front().regime;
  if (regime == Regime::Supercritical)
    alpha0 =
        kernel_from_json(records.front().kernel).growth_exponent(records.front().p);

  std::vector<PointSummary> out;
  auto find_point = [&](const TrialRecord& r) -> PointSummary& {
    for (auto& ps : out)
      if (ps.n == r.n && ps.k == r.k && ps.t == r.t) return ps;
    PointSummary ps;
    ps.n = r.n;
    ps.k = r.k;
    ps.t = r.t;
    ps.predictor = rate_predictor(regime, r.n, r.k, r.t, r.q, alpha0);
    out.push_back(ps);
    return out.back();
  };

  for (const auto& r : records) {
    PointSummary& ps = find_point(r);
    ps.trials += 1;
    if (r.failed) {
      ps.failed += 1;
      continue;
    }
    if (r.regime == Regime::Subcritical) {
      if (r.sub) {
        ps.mean_epsilon += r.sub->epsilon;
        ps.mean_v += r.sub->v;
        ps.mean_x += r.sub->x;
      }
      if (r.estimate && r.estimate->valid) {
        ps.valid += 1;
        ps.mean_p_hat += r.estimate->p_hat;
        const double ep = r.estimate->p_hat - r.p;
        const double em = r.estimate->mu_hat - r.mu;
        const double el = r.estimate->lambda_hat - r.lambda;
        ps.rmse_p += ep * ep;
        ps.rmse_mu += em * em;
        ps.rmse_lambda += el * el;
      }
    } else if (r.super) {
      ps.valid += 1;
      ps.mean_p_hat += r.super->p_hat;
      ps.mean_u += r.super->u;
      if (std::isfinite(r.super->growth_rate)) {
        ps.mean_growth += r.super->growth_rate;
        ps.growth_defined += 1;
      }
      const double ep = r.super->p_hat - r.p;
      ps.rmse_p += ep * ep;
    }
  }
  for (auto& ps : out) {
    const long long denom_all = ps.trials - ps.failed;
    if (denom_all > 0) {
      ps.mean_epsilon /= denom_all;
      ps.mean_v /= denom_all;
      ps.mean_x /= denom_all;
    }
    if (ps.valid > 0) {
      ps.mean_p_hat /= ps.valid;
      ps.mean_u /= ps.valid;
      if (ps.growth_defined > 0) ps.mean_growth /= ps.growth_defined;
      ps.rmse_p = std::sqrt(ps.rmse_p / ps.valid);
      ps.rmse_mu = std::sqrt(ps.rmse_mu / ps.valid);
      ps.rmse_lambda = std::sqrt(ps.rmse_lambda / ps.valid);
    }
    ps.invalid_fraction =
        ps.trials > 0
            ? 1.0 - static_cast<double>(ps.valid) / static_cast<double>(ps.trials)
            : 0.0;
  }
  return out;
}

namespace {

RateParamFit fit_loglog(const std::string& name,
                        const std::vector<double>& predictor,
                        const std::vector<double>& rmse) {
  const size_t m = predictor.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx(m), ly(m);
  for (size_t i = 0; i < m; ++i) {
    lx[i] = std::log(predictor[i]);
    ly[i] = std::log(rmse[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  RateParamFit fit;
  fit.parameter = name;
  if (sxx == 0.0)
    throw std::invalid_argument(
        "rate fit needs varying predictors across grid points");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace

RateFit fit_rates(const std::vector<TrialRecord>& records) {
  const auto points = aggregate_records(records);
  std::vector<const PointSummary*> usable;
  for (const auto& ps : points)
    if (ps.valid >= 5) usable.push_back(&ps);
  if (usable.size() < 3) {
    std::ostringstream os;
    os << "rate fit needs at least 3 grid points with >= 5 valid trials; have "
       << usable.size();
    throw std::invalid_argument(os.str());
  }

  RateFit out;
  out.grid_points_used = static_cast<int>(usable.size());
  for (const auto& r : records) {
    out.trials_total += 1;
    if (r.regime == Regime::Subcritical) {
      if (r.estimate && r.estimate->valid) out.trials_valid += 1;
    } else if (!r.failed && r.super) {
      out.trials_valid += 1;
    }
  }

  std::vector<double> pred, rp, rm, rl;
  for (const auto* ps : usable) {
    pred.push_back(ps->predictor);
    rp.push_back(ps->rmse_p);
    rm.push_back(ps->rmse_mu);
    rl.push_back(ps->rmse_lambda);
  }
  const Regime regime = records.front().regime;
  if (regime == Regime::Subcritical) {
    out.fits.push_back(fit_loglog("mu", pred, rm));
    out.fits.push_back(fit_loglog("lambda", pred, rl));
  }
  out.fits.push_back(fit_loglog("p", pred, rp));
  return out;
}

void write_report_csv(const std::string& path,
                      const std::vector<TrialRecord>& records) {
  const auto points = aggregate_records(records);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const bool sub = records.front().regime == Regime::Subcritical;
  out << "n,k,t,trials,failed,valid,invalid_fraction,predictor,mean_p_hat,"
         "rmse_p";
  if (sub)
    out << ",rmse_mu,rmse_lambda,mean_epsilon,mean_v,mean_x";
  else
    out << ",mean_u,mean_growth_rate";
  out << '\n';
  out.precision(12);
  for (const auto& ps : points) {
    out << ps.n << ',' << ps.k << ',' << ps.t << ',' << ps.trials << ','
        << ps.failed << ',' << ps.valid << ',' << ps.invalid_fraction << ','
        << ps.predictor << ',' << ps.mean_p_hat << ',' << ps.rmse_p;
    if (sub)
      out << ',' << ps.rmse_mu << ',' << ps.rmse_lambda << ','
          << ps.mean_epsilon << ',' << ps.mean_v << ',' << ps.mean_x;
    else
      out << ',' << ps.mean_u << ',' << ps.mean_growth;
    out << '\n';
  }
}

}  // namespace hawkes
