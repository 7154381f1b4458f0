#ifndef HAWKES_GRAPH_HPP
#define HAWKES_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace hawkes {

// Directed interaction graph on n individuals: theta(i,j) = 1 means events
// of j excite i. Entries are i.i.d. Bernoulli(p), diagonal included. The
// interaction matrix the estimators reason about is A = theta / n; it is
// never materialized, every operation applies the 1/n scale on the fly.
class Graph {
 public:
  static Graph sample(int n, double p, uint64_t seed);
  // test entry point: adopt an explicit adjacency matrix (row-major, n*n)
  static Graph from_matrix(int n, std::vector<uint8_t> theta,
                           uint64_t seed = 0);

  int size() const { return n_; }
  uint64_t seed() const { return seed_; }
  bool edge(int i, int j) const { return theta_[static_cast<size_t>(i) * n_ + j] != 0; }
  const uint8_t* row(int i) const { return theta_.data() + static_cast<size_t>(i) * n_; }
  long long edge_count() const;

 private:
  Graph(int n, std::vector<uint8_t> theta, uint64_t seed)
      : n_(n), theta_(std::move(theta)), seed_(seed) {}

  int n_;
  std::vector<uint8_t> theta_;  // row-major
  uint64_t seed_;
};

enum class NormOrder { One, Inf };

// Operator norm of A = theta/n: One = max column sum, Inf = max row sum.
// With restrict_rows_to set to K, rows beyond the first K are zeroed first
// (the norm of I_K A).
double operator_norm(const Graph& g, NormOrder ord,
                     std::optional<int> restrict_rows_to = std::nullopt);

// Same, but zeroing columns beyond the first K (the norm of A I_K).
double operator_norm_cols(const Graph& g, NormOrder ord, int restrict_cols_to);

struct ResolventResult {
  std::vector<double> ell;  // (I - lambda A) ell = 1, length n
  std::vector<double> c;    // (I - lambda A)^T c = 1_K, length n
  double ell_bar_k = 0.0;   // mean of ell over the first K entries
  double residual_ell = 0.0;
  double residual_c = 0.0;
  int iterations = 0;
  int k = 0;
};

// Solves both resolvent systems by fixed-point sweeps x <- rhs + lambda A x.
// Never forms a dense inverse. Requires lambda * max(|||A|||_1, |||A|||_inf)
// < 1 so both sweeps contract; throws std::domain_error otherwise with the
// offending norm in the message. Residuals (inf-norm) are iterated below
// 1e-12 and reported.
ResolventResult resolvent_vectors(const Graph& g, double lambda, int k);

struct LimitDiagnostics {
  double ell_bar_k = 0.0;
  double x_norm = 0.0;  // (n/k) * sum_{i<k} (ell_i - ell_bar_k)^2
  double x_inf = 0.0;   // finite-n value of the limit the X statistic targets
};

LimitDiagnostics limit_diagnostics(const ResolventResult& res, double mu,
                                   int n);

// Norm-concentration event for the subcritical theory. lambda is the kernel
// total mass, the margin is a = (1 + lambda p) / 2, and the event holds iff
//   lambda |||A|||_1 <= a,            lambda |||A|||_inf <= a,
//   lambda (n/k) |||I_K A|||_1 <= a,  lambda (n/k) |||A I_K|||_inf <= a.
// Intermediate norm orders follow from the r=1 / r=inf corners by
// interpolation, so only the corners are checked. Requires lambda * p < 1.
bool check_omega_subcritical(const Graph& g, double lambda, double p, int k);

// Degree/second-neighborhood concentration event used by the supercritical
// theory: mean entry of A over everything and over the first k rows exceeds
// p/2, and every entry of n A^2 is within p^2 / (2 n^{3/8}) of p^2.
bool check_omega_supercritical(const Graph& g, double p, int k);

struct PerronResult {
  double rho = 0.0;           // Rayleigh quotient at the final iterate
  std::vector<double> v;      // scaled so ||v||_2 = sqrt(n)
  bool converged = false;     // successive-iterate criterion met
  int iterations = 0;
  double residual = 0.0;      // ||A v - rho v||_2 / ||v||_2
};

// Power iteration for the Perron pair of A = theta/n, starting from the
// all-ones vector. Stops when successive normalized iterates differ by less
// than 1e-12 in the inf norm, or after 10000 sweeps (converged = false then;
// callers must consult the flag, reducible patterns are reported, not
// rejected). A graph with no edges has no Perron pair and throws.
PerronResult perron(const Graph& g);

// Everything the graph-diag CLI emits in one record. Regime-dependent parts
// are optional: the resolvent block needs lambda * |||A||| < 1, the Perron
// block needs at least one edge.
struct GraphDiagnostics {
  int n = 0;
  int k = 0;
  double lambda = 0.0;
  double mu = 0.0;
  double p = 0.0;
  double norm_one = 0.0;
  double norm_inf = 0.0;
  double norm_one_rows_k = 0.0;  // |||I_K A|||_1
  double norm_inf_cols_k = 0.0;  // |||A I_K|||_inf
  bool omega_subcritical = false;
  bool omega_supercritical = false;
  std::optional<ResolventResult> resolvent;
  std::optional<LimitDiagnostics> limits;
  std::optional<PerronResult> perron;
};

GraphDiagnostics collect_diagnostics(const Graph& g, double lambda, double mu,
                                     double p, int k);

}  // namespace hawkes

#endif
