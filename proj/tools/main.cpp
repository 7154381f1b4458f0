// Command-line front end: simulate event streams, run the estimators on
// stored streams, inspect graph diagnostics, exercise the Gaussian toys, and
// drive Monte-Carlo sweeps with resumable JSONL output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hawkes/graph.hpp"
#include "hawkes/harness.hpp"
#include "hawkes/io.hpp"
#include "hawkes/kernel.hpp"
#include "hawkes/simulator.hpp"
#include "hawkes/subcritical.hpp"
#include "hawkes/supercritical.hpp"
#include "hawkes/toys.hpp"

using nlohmann::json;

namespace {

// --kernel accepts inline JSON or a path to a JSON file
hawkes::Kernel parse_kernel(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec.front() != '{') {
    std::ifstream in(spec);
    if (!in) throw CLI::ValidationError("--kernel", "cannot open " + spec);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return hawkes::kernel_from_json(json::parse(text));
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--kernel", e.what());
  }
}

json perron_json(const hawkes::PerronResult& p, bool with_vector) {
  json j{{"rho", p.rho},
         {"converged", p.converged},
         {"iterations", p.iterations},
         {"residual", p.residual}};
  if (with_vector) j["v"] = p.v;
  return j;
}

int cmd_graph_diag(int n, int k, double p, double lambda, double mu,
                   uint64_t seed, const std::string& format) {
  const auto g = hawkes::Graph::sample(n, p, seed);
  const auto d = hawkes::collect_diagnostics(g, lambda, mu, p, k);
  if (format == "json") {
    json j{{"n", d.n},
           {"k", d.k},
           {"p", d.p},
           {"lambda", d.lambda},
           {"mu", d.mu},
           {"seed", seed},
           {"norm_one", d.norm_one},
           {"norm_inf", d.norm_inf},
           {"norm_one_rows_k", d.norm_one_rows_k},
           {"norm_inf_cols_k", d.norm_inf_cols_k},
           {"omega_subcritical", d.omega_subcritical},
           {"omega_supercritical", d.omega_supercritical}};
    if (d.resolvent) {
      j["resolvent"] = json{{"ell", d.resolvent->ell},
                            {"c", d.resolvent->c},
                            {"ell_bar_k", d.resolvent->ell_bar_k},
                            {"residual_ell", d.resolvent->residual_ell},
                            {"residual_c", d.resolvent->residual_c},
                            {"iterations", d.resolvent->iterations}};
      j["limits"] = json{{"ell_bar_k", d.limits->ell_bar_k},
                         {"x_norm", d.limits->x_norm},
                         {"x_inf", d.limits->x_inf}};
    }
    if (d.perron) j["perron"] = perron_json(*d.perron, true);
    std::cout << j.dump(2) << '\n';
  } else {
    // flat one-row CSV: scalar fields only
    std::cout << "n,k,p,lambda,mu,seed,norm_one,norm_inf,norm_one_rows_k,"
                 "norm_inf_cols_k,omega_subcritical,omega_supercritical,"
                 "ell_bar_k,x_norm,x_inf,resolvent_residual,rho,"
                 "perron_converged,perron_residual\n";
    std::cout.precision(12);
    std::cout << d.n << ',' << d.k << ',' << d.p << ',' << d.lambda << ','
              << d.mu << ',' << seed << ',' << d.norm_one << ',' << d.norm_inf
              << ',' << d.norm_one_rows_k << ',' << d.norm_inf_cols_k << ','
              << d.omega_subcritical << ',' << d.omega_supercritical << ',';
    if (d.resolvent)
      std::cout << d.limits->ell_bar_k << ',' << d.limits->x_norm << ','
                << d.limits->x_inf << ','
                << std::max(d.resolvent->residual_ell,
                            d.resolvent->residual_c);
    else
      std::cout << ",,,";
    std::cout << ',';
    if (d.perron)
      std::cout << d.perron->rho << ',' << d.perron->converged << ','
                << d.perron->residual;
    else
      std::cout << ",,";
    std::cout << '\n';
  }
  return 0;
}

int cmd_simulate(int n, double p, uint64_t graph_seed, double mu,
                 const hawkes::Kernel& kernel, double horizon, uint64_t seed,
                 long long max_events, const std::string& out) {
  const auto g = hawkes::Graph::sample(n, p, graph_seed);
  hawkes::SimConfig cfg{.graph = &g,
                        .mu = mu,
                        .kernel = kernel,
                        .horizon = horizon,
                        .seed = seed,
                        .max_events = max_events};
  const auto data = hawkes::simulate(cfg);
  json echo{{"n", n},
            {"mu", mu},
            {"kernel", hawkes::kernel_to_json(kernel)},
            {"horizon", horizon},
            {"seed", seed},
            {"max_events", max_events},
            {"graph", json{{"n", n}, {"p", p}, {"seed", graph_seed}}}};
  hawkes::write_events_csv(out, data, echo);
  std::cerr << "wrote " << data.total_events() << " events to " << out
            << " (+ sidecar " << hawkes::sidecar_path(out) << ")\n";
  return 0;
}

int cmd_estimate_sub(const std::string& events, double t, int k, double q,
                     std::optional<double> delta, std::optional<int> n) {
  const auto data = hawkes::read_events_csv(events, n);
  const auto [stats, estimate] = hawkes::estimate_subcritical(
      data, t, k, q, delta ? std::optional<double>(*delta) : std::nullopt);
  json j{{"n", stats.n},
         {"k", stats.k},
         {"t", stats.t},
         {"delta", stats.delta},
         {"epsilon", stats.epsilon},
         {"v", stats.v},
         {"x", stats.x},
         {"estimate",
          json{{"mu_hat", estimate.mu_hat},
               {"lambda_hat", estimate.lambda_hat},
               {"p_hat", estimate.p_hat},
               {"valid", estimate.valid}}}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_estimate_super(const std::string& events, double t, int k,
                       std::optional<int> n) {
  const auto data = hawkes::read_events_csv(events, n);
  const auto stats = hawkes::estimate_supercritical(data, t, k);
  json j{{"n", data.population()},
         {"k", k},
         {"t", t},
         {"u", stats.u},
         {"p_hat", stats.p_hat},
         {"z_bar", stats.z_bar},
         {"growth_rate", std::isfinite(stats.growth_rate)
                             ? json(stats.growth_rate)
                             : json(nullptr)}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_toy(int model, int n, int k, double gamma, double p, double m_t,
            int t_steps, double mu, int replicates, uint64_t seed) {
  json j;
  if (model == 1) {
    hawkes::Toy1Config cfg{n, k, gamma, p, m_t, replicates, seed};
    const auto samples = hawkes::toy1_run(cfg);
    double mean = 0.0;
    for (const auto& s : samples) mean += s.t;
    mean /= samples.size();
    double var = 0.0;
    for (const auto& s : samples) var += (s.t - mean) * (s.t - mean);
    var /= samples.size() - 1;
    const double formula = hawkes::toy1_variance_formula(cfg);
    j = json{{"model", 1},
             {"replicates", replicates},
             {"mean_t", mean},
             {"target_mean", (1.0 - p) / p},
             {"var_t", var},
             {"formula_var", formula},
             {"ratio", var / formula}};
  } else {
    hawkes::Toy2Config cfg{n, k, t_steps, mu, p, replicates, seed};
    const auto samples = hawkes::toy2_run(cfg);
    double mean = 0.0;
    for (double c : samples) mean += c;
    mean /= samples.size();
    double var = 0.0;
    for (double c : samples) var += (c - mean) * (c - mean);
    var /= samples.size() - 1;
    const double formula = hawkes::toy2_variance_formula(cfg);
    j = json{{"model", 2},
             {"replicates", replicates},
             {"mean_c", mean},
             {"target_mean", p * p},
             {"var_c", var},
             {"formula_var", formula},
             {"ratio", var / formula}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_mc(const std::string& config_path, int workers,
           const std::string& out) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config: " << config_path << '\n';
    return 1;
  }
  const auto cfg = hawkes::run_config_from_json(json::parse(in));
  hawkes::validate_run_config(cfg);
  const auto grid = hawkes::enumerate_grid(cfg);
  std::cerr << "sweep: " << grid.size() << " grid points x "
            << cfg.replicates << " replicates, " << workers << " workers\n";
  const long long written = hawkes::run_sweep_to_file(cfg, workers, out);
  std::cerr << "appended " << written << " records to " << out << '\n';
  return 0;
}

int cmd_report(const std::string& in_path, const std::string& out_path,
               bool with_fit) {
  const auto records = hawkes::read_records_jsonl(in_path);
  hawkes::write_report_csv(out_path, records);
  std::cerr << "wrote " << out_path << " from " << records.size()
            << " records\n";
  if (with_fit) {
    const auto fit = hawkes::fit_rates(records);
    json j{{"grid_points_used", fit.grid_points_used},
           {"trials_total", fit.trials_total},
           {"trials_valid", fit.trials_valid},
           {"fits", json::array()}};
    for (const auto& f : fit.fits)
      j["fits"].push_back(json{{"parameter", f.parameter},
                               {"slope", f.slope},
                               {"intercept", f.intercept},
                               {"r2", f.r2}});
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interacting point processes on a random graph: simulation "
               "and estimation"};
  app.require_subcommand(1);

  // graph-diag
  auto* diag = app.add_subcommand("graph-diag",
                                  "sample a graph and print its diagnostics");
  int dg_n = 100, dg_k = 0;
  double dg_p = 0.5, dg_lambda = 0.5, dg_mu = 1.0;
  uint64_t dg_seed = 1;
  std::string dg_format = "json";
  diag->add_option("--n", dg_n, "population size")->required();
  diag->add_option("--k", dg_k, "observed individuals (default n)");
  diag->add_option("--p", dg_p, "edge probability")->required();
  diag->add_option("--lambda", dg_lambda, "kernel total mass")->required();
  diag->add_option("--mu", dg_mu, "baseline intensity")->required();
  diag->add_option("--seed", dg_seed, "graph seed");
  diag->add_option("--format", dg_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one simulation to CSV");
  int sm_n = 0;
  double sm_p = 0.0, sm_mu = 0.0, sm_horizon = 0.0;
  uint64_t sm_graph_seed = 1, sm_seed = 1;
  long long sm_max_events = 10'000'000;
  std::string sm_kernel, sm_out;
  sim->add_option("--n", sm_n, "population size")->required();
  sim->add_option("--p", sm_p, "edge probability")->required();
  sim->add_option("--graph-seed", sm_graph_seed, "graph seed");
  sim->add_option("--mu", sm_mu, "baseline intensity")->required();
  sim->add_option("--kernel", sm_kernel, "kernel JSON (inline or file path)")
      ->required();
  sim->add_option("--horizon", sm_horizon, "simulation horizon")->required();
  sim->add_option("--seed", sm_seed, "simulation seed");
  sim->add_option("--max-events", sm_max_events, "event cap");
  sim->add_option("--out", sm_out, "output CSV path")->required();

  // estimate-sub
  auto* esub = app.add_subcommand("estimate-sub",
                                  "subcritical estimators on stored events");
  std::string es_events;
  double es_t = 0.0, es_q = 10.0;
  int es_k = 0;
  double es_delta_val = 0.0;
  int es_n_val = 0;
  esub->add_option("--events", es_events, "events CSV")->required();
  esub->add_option("--t", es_t, "window start (observation is (t, 2t])")
      ->required();
  esub->add_option("--k", es_k, "observed individuals")->required();
  esub->add_option("--q", es_q, "moment order for the default bin width");
  auto* es_delta_opt =
      esub->add_option("--delta", es_delta_val, "bin width override");
  auto* es_n_opt = esub->add_option(
      "--n", es_n_val, "population size (default: sidecar, else inferred)");

  // estimate-super
  auto* esup = app.add_subcommand("estimate-super",
                                  "supercritical estimators on stored events");
  std::string eu_events;
  double eu_t = 0.0;
  int eu_k = 0;
  int eu_n_val = 0;
  esup->add_option("--events", eu_events, "events CSV")->required();
  esup->add_option("--t", eu_t, "counts taken on (0, t]")->required();
  esup->add_option("--k", eu_k, "observed individuals")->required();
  auto* eu_n_opt = esup->add_option(
      "--n", eu_n_val, "population size (default: sidecar, else inferred)");

  // toy
  auto* toy = app.add_subcommand("toy", "Gaussian toy models");
  int ty_model = 1, ty_n = 0, ty_k = 0, ty_tsteps = 50, ty_reps = 10000;
  double ty_gamma = 2.0, ty_p = 0.5, ty_mt = 100.0, ty_mu = 1.0;
  uint64_t ty_seed = 1;
  toy->add_option("--model", ty_model, "1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  toy->add_option("--n", ty_n, "population size")->required();
  toy->add_option("--k", ty_k, "observed individuals")->required();
  toy->add_option("--gamma", ty_gamma, "toy-1 kernel mass");
  toy->add_option("--p", ty_p, "edge probability")->required();
  toy->add_option("--m-t", ty_mt, "toy-1 time-integral surrogate");
  toy->add_option("--t-steps", ty_tsteps, "toy-2 time slices");
  toy->add_option("--mu", ty_mu, "toy-2 baseline");
  toy->add_option("--replicates", ty_reps, "Monte-Carlo replicates");
  toy->add_option("--seed", ty_seed, "base seed");

  // mc
  auto* mc = app.add_subcommand("mc", "run a Monte-Carlo sweep from a config");
  std::string mc_config, mc_out;
  int mc_workers = 1;
  mc->add_option("--config", mc_config, "RunConfig JSON path")->required();
  mc->add_option("--workers", mc_workers, "worker threads");
  mc->add_option("--out", mc_out, "output JSONL path (appends/resumes)")
      ->required();

  // report
  auto* rep = app.add_subcommand("report", "aggregate a sweep JSONL to CSV");
  std::string rp_in, rp_out;
  bool rp_fit = false;
  rep->add_option("--in", rp_in, "records JSONL")->required();
  rep->add_option("--out", rp_out, "output CSV")->required();
  rep->add_flag("--fit", rp_fit, "also print the log-log rate fit as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (diag->parsed())
      return cmd_graph_diag(dg_n, dg_k > 0 ? dg_k : dg_n, dg_p, dg_lambda,
                            dg_mu, dg_seed, dg_format);
    if (sim->parsed())
      return cmd_simulate(sm_n, sm_p, sm_graph_seed, sm_mu,
                          parse_kernel(sm_kernel), sm_horizon, sm_seed,
                          sm_max_events, sm_out);
    if (esub->parsed())
      return cmd_estimate_sub(es_events, es_t, es_k, es_q,
                              es_delta_opt->count()
                                  ? std::optional<double>(es_delta_val)
                                  : std::nullopt,
                              es_n_opt->count() ? std::optional<int>(es_n_val)
                                                : std::nullopt);
    if (esup->parsed())
      return cmd_estimate_super(eu_events, eu_t, eu_k,
                                eu_n_opt->count()
                                    ? std::optional<int>(eu_n_val)
                                    : std::nullopt);
    if (toy->parsed())
      return cmd_toy(ty_model, ty_n, ty_k, ty_gamma, ty_p, ty_mt, ty_tsteps,
                     ty_mu, ty_reps, ty_seed);
    if (mc->parsed()) return cmd_mc(mc_config, mc_workers, mc_out);
    if (rep->parsed()) return cmd_report(rp_in, rp_out, rp_fit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
