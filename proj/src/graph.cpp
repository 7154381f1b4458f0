#include "hawkes/graph.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hawkes/rng.hpp"

namespace hawkes {

namespace {

void require_k(int n, int k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("observed count k must satisfy 1 <= k <= n");
}

// y = rhs_scale * rhs + lambda * A x, where A = theta/n. Serial on purpose:
// fixed summation order keeps results deterministic.
void sweep(const Graph& g, double lambda, const std::vector<double>& rhs,
           const std::vector<double>& x, std::vector<double>& y) {
  const int n = g.size();
  const double scale = lambda / n;
  for (int i = 0; i < n; ++i) {
    const uint8_t* row = g.row(i);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] ? x[j] : 0.0;
    y[i] = rhs[i] + scale * acc;
  }
}

// Same with A^T.
void sweep_transpose(const Graph& g, double lambda,
                     const std::vector<double>& rhs,
                     const std::vector<double>& x, std::vector<double>& y) {
  const int n = g.size();
  const double scale = lambda / n;
  for (int j = 0; j < n; ++j) y[j] = rhs[j];
  for (int i = 0; i < n; ++i) {
    const uint8_t* row = g.row(i);
    const double xi = scale * x[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < n; ++j)
      if (row[j]) y[j] += xi;
  }
}

double residual_inf(const Graph& g, double lambda,
                    const std::vector<double>& rhs,
                    const std::vector<double>& x, bool transpose) {
  const int n = g.size();
  std::vector<double> ax(n, 0.0);
  std::vector<double> zero(n, 0.0);
  if (transpose)
    sweep_transpose(g, lambda, zero, x, ax);
  else
    sweep(g, lambda, zero, x, ax);
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    r = std::max(r, std::abs(x[i] - ax[i] - rhs[i]));
  return r;
}

}  // namespace

Graph Graph::sample(int n, double p, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph size must be >= 1");
  if (!(p > 0.0) || !(p <= 1.0))
    throw std::invalid_argument("edge probability must lie in (0, 1]");
  std::vector<uint8_t> theta(static_cast<size_t>(n) * n);
  CounterRng rng(seed);
  for (size_t e = 0; e < theta.size(); ++e)
    theta[e] = rng.bernoulli(p) ? 1 : 0;
  return Graph(n, std::move(theta), seed);
}

Graph Graph::from_matrix(int n, std::vector<uint8_t> theta, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph size must be >= 1");
  if (theta.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("adjacency matrix has wrong size");
  for (uint8_t v : theta)
    if (v > 1) throw std::invalid_argument("adjacency entries must be 0 or 1");
  return Graph(n, std::move(theta), seed);
}

long long Graph::edge_count() const {
  return std::accumulate(theta_.begin(), theta_.end(), 0ll,
                         [](long long a, uint8_t v) { return a + v; });
}

double operator_norm(const Graph& g, NormOrder ord,
                     std::optional<int> restrict_rows_to) {
  const int n = g.size();
  const int rows = restrict_rows_to.value_or(n);
  require_k(n, rows);
  if (ord == NormOrder::Inf) {
    long long best = 0;
    for (int i = 0; i < rows; ++i) {
      const uint8_t* row = g.row(i);
      long long s = 0;
      for (int j = 0; j < n; ++j) s += row[j];
      best = std::max(best, s);
    }
    return static_cast<double>(best) / n;
  }
  std::vector<long long> col(n, 0);
  for (int i = 0; i < rows; ++i) {
    const uint8_t* row = g.row(i);
    for (int j = 0; j < n; ++j) col[j] += row[j];
  }
  long long best = 0;
  for (int j = 0; j < n; ++j) best = std::max(best, col[j]);
  return static_cast<double>(best) / n;
}

double operator_norm_cols(const Graph& g, NormOrder ord,
                          int restrict_cols_to) {
  const int n = g.size();
  require_k(n, restrict_cols_to);
  if (ord == NormOrder::Inf) {
    long long best = 0;
    for (int i = 0; i < n; ++i) {
      const uint8_t* row = g.row(i);
      long long s = 0;
      for (int j = 0; j < restrict_cols_to; ++j) s += row[j];
      best = std::max(best, s);
    }
    return static_cast<double>(best) / n;
  }
  std::vector<long long> col(restrict_cols_to, 0);
  for (int i = 0; i < n; ++i) {
    const uint8_t* row = g.row(i);
    for (int j = 0; j < restrict_cols_to; ++j) col[j] += row[j];
  }
  long long best = 0;
  for (int j = 0; j < restrict_cols_to; ++j) best = std::max(best, col[j]);
  return static_cast<double>(best) / n;
}

ResolventResult resolvent_vectors(const Graph& g, double lambda, int k) {
  const int n = g.size();
  require_k(n, k);
  if (!(lambda >= 0.0))
    throw std::invalid_argument("lambda must be >= 0");
  const double n1 = lambda * operator_norm(g, NormOrder::One);
  const double ninf = lambda * operator_norm(g, NormOrder::Inf);
  const double contraction = std::max(n1, ninf);
  if (contraction >= 1.0) {
    std::ostringstream os;
    os << "resolvent sweep does not contract: lambda*max(|||A|||_1, "
          "|||A|||_inf) = "
       << contraction << " >= 1";
    throw std::domain_error(os.str());
  }

  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 100000;

  ResolventResult out;
  out.k = k;
  std::vector<double> ones(n, 1.0);
  std::vector<double> ones_k(n, 0.0);
  for (int i = 0; i < k; ++i) ones_k[i] = 1.0;

  out.ell.assign(n, 1.0);
  std::vector<double> next(n, 0.0);
  int it = 0;
  for (; it < kMaxIter; ++it) {
    sweep(g, lambda, ones, out.ell, next);
    out.ell.swap(next);
    out.residual_ell = residual_inf(g, lambda, ones, out.ell, false);
    if (out.residual_ell <= kTol) break;
  }
  out.iterations = it + 1;

  out.c = ones_k;
  for (it = 0; it < kMaxIter; ++it) {
    sweep_transpose(g, lambda, ones_k, out.c, next);
    out.c.swap(next);
    out.residual_c = residual_inf(g, lambda, ones_k, out.c, true);
    if (out.residual_c <= kTol) break;
  }
  out.iterations = std::max(out.iterations, it + 1);

  if (out.residual_ell > kTol || out.residual_c > kTol) {
    std::ostringstream os;
    os << "resolvent iteration stalled: residuals " << out.residual_ell
       << " / " << out.residual_c << " above " << kTol;
    throw std::runtime_error(os.str());
  }

  double s = 0.0;
  for (int i = 0; i < k; ++i) s += out.ell[i];
  out.ell_bar_k = s / k;
  return out;
}

LimitDiagnostics limit_diagnostics(const ResolventResult& res, double mu,
                                   int n) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  const int k = res.k;
  LimitDiagnostics out;
  out.ell_bar_k = res.ell_bar_k;
  double ss = 0.0;
  for (int i = 0; i < k; ++i) {
    const double d = res.ell[i] - res.ell_bar_k;
    ss += d * d;
  }
  out.x_norm = static_cast<double>(n) / k * ss;
  double cc = 0.0;
  for (int j = 0; j < n; ++j) cc += res.c[j] * res.c[j] * res.ell[j];
  out.x_inf = mu * n / (static_cast<double>(k) * k) * cc -
              mu * (n - k) / static_cast<double>(k) * res.ell_bar_k;
  return out;
}

bool check_omega_subcritical(const Graph& g, double lambda, double p, int k) {
  const int n = g.size();
  require_k(n, k);
  if (!(p > 0.0) || !(p <= 1.0))
    throw std::invalid_argument("p must lie in (0, 1]");
  if (!(lambda * p < 1.0))
    throw std::domain_error("subcritical event needs lambda * p < 1");
  const double a = 0.5 * (1.0 + lambda * p);
  const double ratio = static_cast<double>(n) / k;
  if (lambda * operator_norm(g, NormOrder::One) > a) return false;
  if (lambda * operator_norm(g, NormOrder::Inf) > a) return false;
  if (lambda * ratio * operator_norm(g, NormOrder::One, k) > a) return false;
  if (lambda * ratio * operator_norm_cols(g, NormOrder::Inf, k) > a)
    return false;
  return true;
}

bool check_omega_supercritical(const Graph& g, double p, int k) {
  const int n = g.size();
  require_k(n, k);
  if (!(p > 0.0) || !(p <= 1.0))
    throw std::invalid_argument("p must lie in (0, 1]");

  long long total = 0;
  long long first_k = 0;
  for (int i = 0; i < n; ++i) {
    const uint8_t* row = g.row(i);
    long long s = 0;
    for (int j = 0; j < n; ++j) s += row[j];
    total += s;
    if (i < k) first_k += s;
  }
  // (1/n) sum_ij A(i,j) = total / n^2 and the first-k analog
  if (!(static_cast<double>(total) / (static_cast<double>(n) * n) > 0.5 * p))
    return false;
  if (!(static_cast<double>(first_k) / (static_cast<double>(k) * n) > 0.5 * p))
    return false;

  // Entrywise check of n A^2 against p^2. (theta . theta)(i,j) =
  // popcount(row_i(theta) AND col_j(theta)); build packed rows of theta and
  // of theta^T once, the whole scan is n^2 * (n/64) word operations.
  const int words = (n + 63) / 64;
  std::vector<uint64_t> rows(static_cast<size_t>(n) * words, 0);
  std::vector<uint64_t> cols(static_cast<size_t>(n) * words, 0);
  for (int i = 0; i < n; ++i) {
    const uint8_t* row = g.row(i);
    for (int j = 0; j < n; ++j) {
      if (!row[j]) continue;
      rows[static_cast<size_t>(i) * words + j / 64] |= 1ull << (j % 64);
      cols[static_cast<size_t>(j) * words + i / 64] |= 1ull << (i % 64);
    }
  }
  const double band = 0.5 * p * p / std::pow(n, 0.375);
  for (int i = 0; i < n; ++i) {
    const uint64_t* ri = rows.data() + static_cast<size_t>(i) * words;
    for (int j = 0; j < n; ++j) {
      const uint64_t* cj = cols.data() + static_cast<size_t>(j) * words;
      long long cnt = 0;
      for (int w = 0; w < words; ++w) cnt += std::popcount(ri[w] & cj[w]);
      // n * A^2(i,j) = (theta.theta)(i,j) / n
      if (std::abs(static_cast<double>(cnt) / n - p * p) >= band) return false;
    }
  }
  return true;
}

PerronResult perron(const Graph& g) {
  const int n = g.size();
  if (g.edge_count() == 0)
    throw std::invalid_argument("graph has no edges: no Perron pair");

  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 10000;

  std::vector<double> v(n, 1.0);
  std::vector<double> av(n, 0.0);
  std::vector<double> zero(n, 0.0);
  PerronResult out;
  for (int it = 0; it < kMaxIter; ++it) {
    sweep(g, 1.0, zero, v, av);
    double norm = 0.0;
    for (double x : av) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0)
      throw std::runtime_error("power iteration hit the zero vector");
    double diff = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ni = av[i] / norm;
      diff = std::max(diff, std::abs(ni - v[i]));
      v[i] = ni;
    }
    out.iterations = it + 1;
    if (diff < kTol) {
      out.converged = true;
      break;
    }
  }

  // Rayleigh quotient and residual at the final iterate; v then rescaled to
  // ||v||_2 = sqrt(n).
  sweep(g, 1.0, zero, v, av);
  double vav = 0.0, vv = 0.0;
  for (int i = 0; i < n; ++i) {
    vav += v[i] * av[i];
    vv += v[i] * v[i];
  }
  out.rho = vav / vv;
  double rr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = av[i] - out.rho * v[i];
    rr += r * r;
  }
  out.residual = std::sqrt(rr / vv);
  const double scale = std::sqrt(static_cast<double>(n) / vv);
  out.v.resize(n);
  for (int i = 0; i < n; ++i) out.v[i] = v[i] * scale;
  return out;
}

GraphDiagnostics collect_diagnostics(const Graph& g, double lambda, double mu,
                                     double p, int k) {
  GraphDiagnostics d;
  d.n = g.size();
  d.k = k;
  d.lambda = lambda;
  d.mu = mu;
  d.p = p;
  d.norm_one = operator_norm(g, NormOrder::One);
  d.norm_inf = operator_norm(g, NormOrder::Inf);
  d.norm_one_rows_k = operator_norm(g, NormOrder::One, k);
  d.norm_inf_cols_k = operator_norm_cols(g, NormOrder::Inf, k);
  d.omega_subcritical =
      lambda * p < 1.0 ? check_omega_subcritical(g, lambda, p, k) : false;
  d.omega_supercritical = check_omega_supercritical(g, p, k);
  if (lambda * std::max(d.norm_one, d.norm_inf) < 1.0) {
    d.resolvent = resolvent_vectors(g, lambda, k);
    d.limits = limit_diagnostics(*d.resolvent, mu, g.size());
  }
  if (g.edge_count() > 0) d.perron = perron(g);
  return d;
}

}  // namespace hawkes
