#include "laguerre/lipschitz.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "laguerre/error.hpp"

namespace laguerre {

namespace {

std::string label_t(double t) { return "t=" + format_real(t); }

double sup_over_points(std::size_t count, const std::function<double(std::size_t)>& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(g(i)));
  return m;
}

}  // namespace

void LipschitzGrids::validate(int d) const {
  if (t_grid.empty()) throw DomainError("LipschitzGrids: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw DomainError("LipschitzGrids: t values must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("LipschitzGrids: t grid must ascend");
  }
  if (x_grid.empty()) throw DomainError("LipschitzGrids: empty x grid");
  for (const auto& x : x_grid) {
    if (static_cast<int>(x.size()) != d) throw DomainError("LipschitzGrids: point dimension mismatch");
    for (double v : x) {
      if (!(v > 0.0)) throw DomainError("LipschitzGrids: coordinates must be positive");
    }
  }
}

std::vector<double> dyadic_t_grid(double t_max, int levels) {
  if (!(t_max > 0.0) || levels < 0) throw DomainError("dyadic_t_grid: need t_max > 0 and levels >= 0");
  std::vector<double> out;
  for (int j = levels; j >= 0; --j) out.push_back(std::ldexp(t_max, -j));
  return out;
}

std::vector<double> refine_t_grid(const std::vector<double>& grid) {
  std::vector<double> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) out.push_back(std::sqrt(grid[i - 1] * grid[i]));
    out.push_back(grid[i]);
  }
  return out;
}

PointGrid log_x_grid(int d, int points, double lo, double hi) {
  if (d < 1 || points < 1 || !(lo > 0.0) || !(hi >= lo)) throw DomainError("log_x_grid: invalid arguments");
  std::vector<double> axis(points);
  for (int i = 0; i < points; ++i) {
    axis[i] = points == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  }
  PointGrid out;
  std::vector<int> idx(d, 0);
  for (;;) {
    std::vector<double> x(d);
    for (int j = 0; j < d; ++j) x[j] = axis[idx[j]];
    out.push_back(std::move(x));
    int j = d - 1;
    while (j >= 0 && ++idx[j] == points) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

LipschitzGrids default_grids(int d) { return LipschitzGrids{dyadic_t_grid(5.0, 10), log_x_grid(d)}; }

double sup_norm(const Function& g, const PointGrid& x_grid) {
  if (x_grid.empty()) throw DomainError("sup_norm: empty grid");
  return sup_over_points(x_grid.size(), [&](std::size_t i) { return g(x_grid[i]); });
}

LipschitzEstimate seminorm_from_field(const DerivativeField& field, const PointValues& value, double beta,
                                      const LipschitzGrids& grids, int n, ExecPolicy policy) {
  if (!(beta > 0.0)) throw DomainError("lipschitz seminorm: beta must be positive");
  if (n == 0) n = smallest_integer_above(beta);
  if (!(n > beta)) throw DomainError("lipschitz seminorm: derivative order must exceed beta");
  LipschitzEstimate est;
  est.beta = beta;
  est.n = n;
  est.t_grid = grids.t_grid;
  est.x_grid = grids.x_grid;
  const std::size_t nx = grids.x_grid.size();
  const std::size_t nt = grids.t_grid.size();
  // One task per (t, x) pair; the sup over x is reduced serially.
  const auto cells = parallel_map<double>(
      nt * nx, [&](std::size_t c) { return std::abs(field(grids.t_grid[c / nx], n, c % nx)); }, policy);
  const auto fvals = parallel_map<double>(nx, [&](std::size_t i) { return std::abs(value(i)); }, policy);
  for (double v : fvals) est.f_sup = std::max(est.f_sup, v);
  est.sup_table.assign(nt, 0.0);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!std::isfinite(cells[c])) throw QuadratureError("lipschitz seminorm: non-finite derivative value");
    est.sup_table[c / nx] = std::max(est.sup_table[c / nx], cells[c]);
  }
  for (std::size_t i = 0; i < nt; ++i) {
    const double a = std::pow(grids.t_grid[i], n - beta) * est.sup_table[i];
    if (a > est.A_beta) {
      est.A_beta = a;
      est.t_at_max = grids.t_grid[i];
    }
  }
  return est;
}

LipschitzEstimate lipschitz_seminorm(const LaguerreExpansion& f, double beta, const LipschitzGrids& grids, int n,
                                     ExecPolicy policy) {
  grids.validate(f.params.d);
  std::vector<std::vector<double>> grades;
  for (const auto& x : grids.x_grid) grades.push_back(graded_values(f, x));
  auto field = [&](double t, int order, std::size_t i) {
    double sum = 0.0;
    for (std::size_t m = 1; m < grades[i].size(); ++m) {
      const double r = std::sqrt(static_cast<double>(m));
      sum += grades[i][m] * std::pow(-r, order) * std::exp(-t * r);
    }
    return sum;
  };
  auto value = [&](std::size_t i) {
    double sum = 0.0;
    for (double g : grades[i]) sum += g;
    return sum;
  };
  return seminorm_from_field(field, value, beta, grids, n, policy);
}

LipschitzEstimate lipschitz_seminorm(const Function& f, const MultiIndexParams& params, double beta,
                                     const LipschitzGrids& grids, int n, const KernelOptions& opts,
                                     ExecPolicy policy) {
  grids.validate(params.d);
  auto field = [&](double t, int order, std::size_t i) {
    return poisson_dt_apply(f, params, t, grids.x_grid[i], order, opts).value;
  };
  auto value = [&](std::size_t i) { return f(grids.x_grid[i]); };
  return seminorm_from_field(field, value, beta, grids, n, policy);
}

LipschitzEstimate operator_seminorm(FracOp op, const LaguerreExpansion& f, double lambda, double beta,
                                    const LipschitzGrids& grids, const FracOpConfig& cfg, ExecPolicy policy) {
  grids.validate(f.params.d);
  auto c = cfg.resolved(lambda);
  c.policy = ExecPolicy::Serial;  // the grid map is the parallel level
  std::vector<SpectralTrajectory> traj;
  for (const auto& x : grids.x_grid) traj.emplace_back(f, x);
  auto field = [&](double t, int order, std::size_t i) { return apply_on_trajectory(op, traj[i], c, t, order); };
  auto value = [&](std::size_t i) { return apply_on_trajectory(op, traj[i], c, 0.0, 0); };
  return seminorm_from_field(field, value, beta, grids, 0, policy);
}

LipschitzEstimate operator_seminorm_spectral(FracOp op, const LaguerreExpansion& f, double lambda, double beta,
                                             const LipschitzGrids& grids, ExecPolicy policy) {
  const auto g = spectral_apply(spectral_multiplier(op, lambda),
                                op == FracOp::FractionalIntegral ? pi0(f) : f);
  return lipschitz_seminorm(g, beta, grids, 0, policy);
}

BoundReport check_equivalence(const LaguerreExpansion& f, double beta, int k, int l, const LipschitzGrids& grids,
                              double window) {
  if (!(k > beta) || !(l > beta)) throw DomainError("check_equivalence: k and l must exceed beta");
  if (!(window >= 1.0)) throw DomainError("check_equivalence: window must be >= 1");
  const auto ek = lipschitz_seminorm(f, beta, grids, k);
  const auto el = lipschitz_seminorm(f, beta, grids, l);
  BoundReport r;
  r.scenario = "prop31";
  r.claim = "A_{beta,k}(f) and A_{beta,l}(f) are comparable for any integers k, l > beta";
  r.threshold = window;
  r.add_row("A_beta_k", ek.A_beta, std::numeric_limits<double>::infinity(), std::isfinite(ek.A_beta));
  r.add_row("A_beta_l", el.A_beta, std::numeric_limits<double>::infinity(), std::isfinite(el.A_beta));
  double ratio = 1.0;
  const bool both_zero = ek.A_beta == 0.0 && el.A_beta == 0.0;
  if (!both_zero) ratio = ek.A_beta / el.A_beta;
  const bool ok = std::isfinite(ratio) && ratio > 0.0 && ratio <= window && ratio >= 1.0 / window;
  r.add_row("ratio_k_over_l", ratio, window, ok || both_zero);
  r.summary["beta"] = format_real(beta);
  r.summary["k"] = k;
  r.summary["l"] = l;
  r.summary["A_beta_k"] = format_real(ek.A_beta);
  r.summary["A_beta_l"] = format_real(el.A_beta);
  r.summary["ratio"] = format_real(ratio);
  r.finalize();
  return r;
}

BoundReport check_approximation(const LaguerreExpansion& f, double beta, const LipschitzGrids& grids, double tol) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("check_approximation: beta must lie in (0, 1)");
  const auto est = lipschitz_seminorm(f, beta, grids);
  BoundReport r;
  r.scenario = "prop33";
  r.claim = "sup_x |P_t f - f| <= A_beta(f) t^beta";
  r.threshold = 1.0 + tol;
  double worst = 0.0;
  for (double t : grids.t_grid) {
    const auto g = spectral_apply(SpectralMultiplier::poisson_difference(t, 1), f);
    const double m = sup_norm([&](std::span<const double> x) { return synthesize(g, x); }, grids.x_grid);
    const double bound = (1.0 + tol) * est.A_beta * std::pow(t, beta);
    r.add_upper(label_t(t), m, bound);
    if (est.A_beta > 0.0) worst = std::max(worst, m / (est.A_beta * std::pow(t, beta)));
  }
  r.summary["beta"] = format_real(beta);
  r.summary["A_beta"] = format_real(est.A_beta);
  r.summary["max_ratio"] = format_real(worst);
  r.finalize();
  return r;
}

BoundReport check_pminusI_power(const LaguerreExpansion& f, int n, double beta, const LipschitzGrids& grids,
                                double tol) {
  if (n < 1) throw DomainError("check_pminusI_power: n must be positive");
  if (smallest_integer_above(beta) != n) throw DomainError("check_pminusI_power: n must be the smallest integer > beta");
  const auto est = lipschitz_seminorm(f, beta, grids);
  BoundReport r;
  r.scenario = "pminusI_power";
  r.claim = "sup |(P_t - I)^n f| <= 2^n ||f|| and <= A_beta(f) t^beta";
  r.threshold = 1.0 + tol;
  for (double t : grids.t_grid) {
    const auto g = spectral_apply(SpectralMultiplier::poisson_difference(t, n), f);
    const double m = sup_norm([&](std::span<const double> x) { return synthesize(g, x); }, grids.x_grid);
    r.add_upper(label_t(t) + ",bound=2^n", m, std::ldexp(est.f_sup, n));
    r.add_upper(label_t(t) + ",bound=A_beta", m, (1.0 + tol) * est.A_beta * std::pow(t, beta));
  }
  r.summary["n"] = n;
  r.summary["beta"] = format_real(beta);
  r.summary["A_beta"] = format_real(est.A_beta);
  r.summary["f_sup"] = format_real(est.f_sup);
  r.finalize();
  return r;
}

}  // namespace laguerre
