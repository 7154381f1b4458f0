#ifndef HAWKES_HARNESS_HPP
#define HAWKES_HARNESS_HPP

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hawkes/kernel.hpp"
#include "hawkes/subcritical.hpp"
#include "hawkes/supercritical.hpp"

namespace hawkes {

enum class Regime { Subcritical, Supercritical };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

// One Monte-Carlo sweep: the cross product of n_list x k_list x t_list
// (combinations with k > n are dropped at enumeration), `replicates` trials
// per grid point. Every trial derives its graph and simulation seeds from
// (seed, grid index, replicate index), so records are reproducible no matter
// which workers execute which trials, and a partial file can be resumed.
struct RunConfig {
  Regime regime = Regime::Subcritical;
  double mu = 0.0;
  Kernel kernel = Kernel::exponential(1.0, 1.0);
  double p = 0.0;
  std::vector<int> n_list;
  std::optional<std::vector<int>> k_list;  // absent: k = n per grid point
  std::vector<double> t_list;
  double q = 10.0;
  int replicates = 0;
  uint64_t seed = 0;
  long long max_events = 10'000'000;
};

nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

// Consistency checks that must fail loudly before any simulation starts:
// regime vs kernel-mass * p, empty lists, subcritical t too small for q.
void validate_run_config(const RunConfig& cfg);

struct GridPoint {
  int n = 0;
  int k = 0;
  double t = 0.0;
};

std::vector<GridPoint> enumerate_grid(const RunConfig& cfg);

// One trial's outcome. Failed simulations (overflow, aborted run) are
// recorded with the message, never dropped, so sweep files always contain
// grid_points * replicates lines when complete.
struct TrialRecord {
  int grid_index = 0;
  int replicate = 0;
  Regime regime = Regime::Subcritical;
  int n = 0;
  int k = 0;
  double t = 0.0;
  double q = 0.0;
  double mu = 0.0;
  double p = 0.0;
  nlohmann::json kernel;
  double lambda = 0.0;  // kernel total mass, denormalized for reporting
  uint64_t graph_seed = 0;
  uint64_t sim_seed = 0;
  long long events = 0;
  double wall_ms = 0.0;
  bool failed = false;
  std::string failure;
  std::optional<SubcriticalStats> sub;
  std::optional<EstimateTriple> estimate;
  std::optional<SupercriticalStats> super;
};

nlohmann::json trial_record_to_json(const TrialRecord& rec);
TrialRecord trial_record_from_json(const nlohmann::json& j);

// Runs one trial of the grid; what run_sweep calls underneath.
TrialRecord run_trial(const RunConfig& cfg, const GridPoint& gp,
                      int grid_index, int replicate);

// Executes the sweep on `workers` threads (>= 1). sink is called once per
// record under a lock, in completion order; the set of records (not their
// order) is what is deterministic. Pass `done` to skip already-present
// (grid_index, replicate) pairs when resuming.
void run_sweep(const RunConfig& cfg, int workers,
               const std::function<void(const TrialRecord&)>& sink,
               const std::set<std::pair<int, int>>* done = nullptr);

// Sweep with JSONL persistence and resume-by-key: existing records in the
// file are kept and their (grid_index, replicate) pairs skipped. Returns the
// number of records appended.
long long run_sweep_to_file(const RunConfig& cfg, int workers,
                            const std::string& path);

std::vector<TrialRecord> read_records_jsonl(const std::string& path);
void append_record_jsonl(const std::string& path, const TrialRecord& rec);

// Per-grid-point aggregation. rmse/mean fields are over valid estimates
// only; trials/valid counts expose how many that is.
struct PointSummary {
  int n = 0;
  int k = 0;
  double t = 0.0;
  long long trials = 0;
  long long failed = 0;
  long long valid = 0;  // valid estimates among non-failed trials
  double invalid_fraction = 0.0;
  double predictor = 0.0;  // theoretical error scale at this grid point
  double mean_p_hat = 0.0;
  double rmse_p = 0.0;
  double rmse_mu = 0.0;      // subcritical only, 0 otherwise
  double rmse_lambda = 0.0;  // subcritical only, 0 otherwise
  double mean_epsilon = 0.0;
  double mean_v = 0.0;
  double mean_x = 0.0;
  double mean_u = 0.0;
  double mean_growth = 0.0;  // over trials whose growth rate is defined
  long long growth_defined = 0;
};

// The theoretical error scale the rate fit regresses against:
//   subcritical:   1/sqrt(k) + n/(k t^{(1-4/(q+1))/2}) + n/(t sqrt(k))
//   supercritical: n/(sqrt(k) e^{alpha0 t}) + 1/sqrt(k)
double rate_predictor(Regime regime, int n, int k, double t, double q,
                      double alpha0);

std::vector<PointSummary> aggregate_records(
    const std::vector<TrialRecord>& records);

struct RateParamFit {
  std::string parameter;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct RateFit {
  std::vector<RateParamFit> fits;  // subcritical: mu, lambda, p; super: p
  int grid_points_used = 0;
  long long trials_total = 0;
  long long trials_valid = 0;
};

// Least-squares fit of log RMSE against log predictor across grid points.
// Needs >= 3 grid points with >= 5 valid trials each; throws otherwise.
RateFit fit_rates(const std::vector<TrialRecord>& records);

void write_report_csv(const std::string& path,
                      const std::vector<TrialRecord>& records);

}  // namespace hawkes

#endif
