#include "laguerre/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "laguerre/error.hpp"

namespace laguerre {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// g(t, s) < e^{-700} for s below t^2 / kStableCut.
constexpr double kStableCut = 2800.0;
// Gaussian half-width of the heat density in the w variable.
constexpr double kHeatWidth = 12.0;

// sum_m (z^2/4)^m / (m! (nu+1)_m), the reduced series without 1/Gamma(nu+1).
double reduced_sum(double nu, double z, int terms) {
  const double q = 0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < terms; ++m) {
    term *= q / (m * (m + nu));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double log_density_1d(double a, double lg1, const HeatTime& T, double x, double y, const BesselBranchConfig& cfg) {
  if (!(y > 0.0)) return kNegInf;
  const double rx = T.r * x;
  const double z = 2.0 * std::sqrt(rx * y) / T.om;
  if (z <= cfg.switch_threshold) {
    return a * std::log(y) - (a + 1.0) * T.log_om - (rx + y) / T.om + std::log(reduced_sum(a, z, cfg.series_terms)) -
           lg1;
  }
  const double gap = std::sqrt(rx) - std::sqrt(y);
  const double w2 = gap * gap / T.om;
  return -T.log_om + 0.5 * a * (std::log(y) - std::log(x) + T.s) - w2 +
         std::log(bessel_i_scaled_asymptotic(a, z, cfg));
}

std::vector<double> log_gamma_shift(const MultiIndexParams& p) {
  std::vector<double> out(p.d);
  for (int j = 0; j < p.d; ++j) out[j] = log_gamma(p.alpha[j] + 1.0);
  return out;
}

double log_density(const MultiIndexParams& p, const std::vector<double>& lg1, const HeatTime& T,
                   std::span<const double> x, std::span<const double> y, const BesselBranchConfig& cfg) {
  double sum = 0.0;
  for (int j = 0; j < p.d; ++j) {
    sum += log_density_1d(p.alpha[j], lg1[j], T, x[j], y[j], cfg);
    if (sum == kNegInf) return sum;
  }
  return sum;
}

double log_mu_density(const MultiIndexParams& p, const std::vector<double>& lg1, std::span<const double> y) {
  double sum = 0.0;
  for (int j = 0; j < p.d; ++j) {
    if (!(y[j] > 0.0)) return kNegInf;
    sum += p.alpha[j] * std::log(y[j]) - y[j] - lg1[j];
  }
  return sum;
}

void check_point(const MultiIndexParams& p, std::span<const double> x, const char* what) {
  if (static_cast<int>(x.size()) != p.d) throw DomainError(std::string(what) + ": point dimension mismatch");
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + ": coordinates must be positive");
  }
}

void check_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": time must be positive");
}

struct Accumulator {
  double abs_error = 0.0;
  bool converged = true;
  long evaluations = 0;
  double min_sample = std::numeric_limits<double>::infinity();

  void add(const IntegrationResult& r) {
    abs_error += r.abs_error;
    converged = converged && r.converged;
    evaluations += r.evaluations;
  }
};

KernelValue finish(double value, const Accumulator& acc, const KernelOptions& opts, const char* what) {
  if (!std::isfinite(value)) throw QuadratureError(std::string(what) + ": non-finite result");
  if (opts.strict && !acc.converged) throw QuadratureError(std::string(what) + ": tolerance not reached");
  KernelValue v;
  v.value = value;
  v.abs_error = acc.abs_error;
  v.converged = acc.converged;
  v.evaluations = acc.evaluations;
  v.min_sample = std::isfinite(acc.min_sample) ? acc.min_sample : 0.0;
  return v;
}

std::vector<double> sorted_breakpoints(std::vector<double> pts, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (double p : pts) {
    if (p > lo && p < hi) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            out.end());
  return out;
}

// Integrates phi(y) * prod_j h_s(x_j, y_j) dy over (0, inf)^d, axis by axis,
// with y_j = (sqrt(r x_j) + sqrt(1-r) w)^2 so that the density is Gaussian in w.
template <class Phi>
double heat_integral(const MultiIndexParams& p, const std::vector<double>& lg1, const HeatTime& T,
                     std::span<const double> x, Phi& phi, const KernelOptions& opts, Accumulator& acc) {
  const double b = std::sqrt(T.om);
  std::vector<double> y(p.d);
  std::vector<double> a(p.d);
  for (int j = 0; j < p.d; ++j) a[j] = std::sqrt(T.r * x[j]);

  auto axis = [&](auto& self, int j) -> double {
    const double w_lo = -a[j] / b;
    const auto bps = sorted_breakpoints({-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}, w_lo, kHeatWidth);
    auto integrand = [&](double w) -> double {
      const double root = a[j] + b * w;
      if (!(root > 0.0)) return 0.0;
      y[j] = root * root;
      const double lh = log_density_1d(p.alpha[j], lg1[j], T, x[j], y[j], opts.bessel);
      if (lh < -745.0) return 0.0;
      const double jac = 2.0 * b * root * std::exp(lh);
      return jac * (j + 1 == p.d ? phi(std::span<const double>(y)) : self(self, j + 1));
    };
    const auto r = integrate_adaptive(integrand, bps, opts.y_quad);
    acc.add(r);
    return r.value;
  };
  return axis(axis, 0);
}

// d^m/dt^m p_t(x, y) by the subordination integral over tau = log s.
double subordinated_kernel(const MultiIndexParams& p, const std::vector<double>& lg1, double t,
                           std::span<const double> x, std::span<const double> y, int m, const KernelOptions& opts,
                           Accumulator& acc) {
  const double S = std::max(opts.s_cap, 10.0 * t * t);
  const double tau_lo = std::log(t * t / kStableCut);
  const double tau_hi = std::log(S);
  const double tau_g = std::log(t * t / 6.0);
  std::vector<double> pts{tau_g - 4.0, tau_g - 2.0, tau_g, tau_g + 2.0, tau_g + 4.0, 0.0};
  double dist2 = 0.0;
  for (int j = 0; j < p.d; ++j) {
    const double g = std::sqrt(x[j]) - std::sqrt(y[j]);
    dist2 += g * g;
  }
  if (dist2 > 0.0) {
    const double tau_d = std::log(dist2);
    pts.insert(pts.end(), {tau_d - 1.0, tau_d, tau_d + 1.0});
  }
  for (double v = tau_lo + 3.0; v < tau_hi; v += 3.0) pts.push_back(v);
  const auto bps = sorted_breakpoints(std::move(pts), tau_lo, tau_hi);

  auto integrand = [&](double tau) -> double {
    const double s = std::exp(tau);
    const double wgt = s * stable_density_dt(t, s, m);
    if (wgt == 0.0) return 0.0;
    const HeatTime T(s);
    const double lh = log_density(p, lg1, T, x, y, opts.bessel);
    if (lh < -745.0) return 0.0;
    return wgt * std::exp(lh);
  };
  const auto r = integrate_adaptive(integrand, bps, opts.s_quad);
  acc.add(r);
  const double lw = log_mu_density(p, lg1, y);
  const double tail = lw == kNegInf ? 0.0 : std::exp(lw) * stable_tail_dt(t, S, m);
  return r.value + tail;
}

// Integrates combine(y, d^m p_t(x, y)) dy, axis by axis in xi_j = sqrt(y_j).
template <class Combine>
KernelValue kernel_y_integral(const MultiIndexParams& p, double t, std::span<const double> x, int m,
                              Combine&& combine, const KernelOptions& opts, const char* what) {
  p.validate();
  check_time(t, what);
  check_point(p, x, what);
  if (m < 0) throw DomainError(std::string(what) + ": derivative order must be nonnegative");
  opts.validate();
  const auto lg1 = log_gamma_shift(p);
  Accumulator acc;
  std::vector<double> y(p.d);
  auto axis = [&](auto& self, int j) -> double {
    const double sx = std::sqrt(x[j]);
    const double xi_max = std::sqrt(2.0 * x[j] + 100.0);
    std::vector<double> pts{sx};
    for (double off : {0.25 * t, t, 4.0 * t, 1.0, 3.0}) {
      pts.push_back(sx - off);
      pts.push_back(sx + off);
    }
    const auto bps = sorted_breakpoints(std::move(pts), 0.0, xi_max);
    auto integrand = [&](double xi) -> double {
      y[j] = xi * xi;
      if (!(y[j] > 0.0)) return 0.0;
      double inner;
      if (j + 1 == p.d) {
        const double k = subordinated_kernel(p, lg1, t, x, y, m, opts, acc);
        if (m == 0) acc.min_sample = std::min(acc.min_sample, k);
        inner = combine(std::span<const double>(y), k);
      } else {
        inner = self(self, j + 1);
      }
      return 2.0 * xi * inner;
    };
    const auto r = integrate_adaptive(integrand, bps, opts.y_quad);
    acc.add(r);
    return r.value;
  };
  const double v = axis(axis, 0);
  return finish(v, acc, opts, what);
}

}  // namespace

void KernelQuery::validate(bool need_y) const {
  params.validate();
  check_time(t, "KernelQuery");
  check_point(params, x, "KernelQuery");
  if (need_y) check_point(params, y, "KernelQuery");
  if (derivative_order < 0) throw DomainError("KernelQuery: derivative order must be nonnegative");
}

void KernelOptions::validate() const {
  bessel.validate();
  if (!(s_cap > 0.0)) throw DomainError("KernelOptions: s_cap must be positive");
  for (const auto* q : {&s_quad, &y_quad, &outer_quad}) {
    if (!(q->abs_tol > 0.0) || !(q->rel_tol > 0.0)) throw DomainError("KernelOptions: tolerances must be positive");
  }
}

HeatTime::HeatTime(double s_) : s(s_), r(std::exp(-s_)), om(-std::expm1(-s_)), log_om(std::log(om)) {}

double log_heat_density_1d(double alpha, const HeatTime& T, double x, double y, const BesselBranchConfig& cfg) {
  if (!(alpha > -1.0)) throw DomainError("log_heat_density_1d: alpha must exceed -1");
  return log_density_1d(alpha, log_gamma(alpha + 1.0), T, x, y, cfg);
}

double log_heat_density(const MultiIndexParams& params, double s, std::span<const double> x,
                        std::span<const double> y, const BesselBranchConfig& cfg) {
  check_time(s, "log_heat_density");
  return log_density(params, log_gamma_shift(params), HeatTime(s), x, y, cfg);
}

double log_heat_kernel(const KernelQuery& q, const BesselBranchConfig& cfg) {
  q.validate();
  const auto lg1 = log_gamma_shift(q.params);
  return log_density(q.params, lg1, HeatTime(q.t), q.x, q.y, cfg) - log_mu_density(q.params, lg1, q.y);
}

double heat_kernel(const KernelQuery& q, const BesselBranchConfig& cfg) {
  const double lg = log_heat_kernel(q, cfg);
  if (!(std::abs(lg) <= 700.0)) {
    throw OverflowError("heat_kernel: log value " + std::to_string(lg) + " outside [-700, 700]");
  }
  return std::exp(lg);
}

KernelValue heat_apply_kernel(const Function& f, const MultiIndexParams& params, double t, std::span<const double> x,
                              const KernelOptions& opts) {
  params.validate();
  check_time(t, "heat_apply_kernel");
  check_point(params, x, "heat_apply_kernel");
  opts.validate();
  const auto lg1 = log_gamma_shift(params);
  Accumulator acc;
  auto phi = [&](std::span<const double> y) { return f(y); };
  const double v = heat_integral(params, lg1, HeatTime(t), x, phi, opts, acc);
  return finish(v, acc, opts, "heat_apply_kernel");
}

double hermite(int n, double a) {
  if (n < 0) throw DomainError("hermite: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * a;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * a * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double stable_density(double t, double s) { return stable_density_dt(t, s, 0); }

double stable_density_dt(double t, double s, int m) {
  if (!(t > 0.0) || !(s > 0.0)) throw DomainError("stable_density: t and s must be positive");
  if (m < 0) throw DomainError("stable_density_dt: negative order");
  // With a = t / (2 sqrt s): g = s^{-1} a e^{-a^2} / sqrt(pi) and d/dt = (2 sqrt s)^{-1} d/da.
  const double rs = std::sqrt(s);
  const double a = t / (2.0 * rs);
  const double a2 = a * a;
  if (a2 > 745.0) return 0.0;
  const double sign = (m % 2 == 0) ? 0.5 : -0.5;
  return sign * hermite(m + 1, a) * std::exp(-a2) / (std::sqrt(std::numbers::pi) * s * std::pow(2.0 * rs, m));
}

double stable_tail_dt(double t, double S, int m) {
  if (!(S > 0.0)) throw DomainError("stable_tail_dt: S must be positive");
  const double c = 0.5 / std::sqrt(S);
  if (m == 0) return std::erf(c * t);
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;
  return sign * 2.0 / std::sqrt(std::numbers::pi) * std::pow(c, m) * hermite(m - 1, c * t) * std::exp(-c * c * t * t);
}

KernelValue stable_laplace_transform(double t, double lambda, const KernelOptions& opts) {
  check_time(t, "stable_laplace_transform");
  if (!(lambda >= 0.0)) throw DomainError("stable_laplace_transform: lambda must be nonnegative");
  const double S = std::max(opts.s_cap, 10.0 * t * t);
  const double tau_lo = std::log(t * t / kStableCut);
  const double tau_g = std::log(t * t / 6.0);
  std::vector<double> pts{tau_g - 2.0, tau_g, tau_g + 2.0};
  if (lambda > 0.0) pts.push_back(-std::log(lambda));
  for (double v = tau_lo + 3.0; v < std::log(S); v += 3.0) pts.push_back(v);
  const auto bps = sorted_breakpoints(std::move(pts), tau_lo, std::log(S));
  auto integrand = [&](double tau) {
    const double s = std::exp(tau);
    return s * stable_density(t, s) * std::exp(-lambda * s);
  };
  Accumulator acc;
  const auto r = integrate_adaptive(integrand, bps, AdaptiveOptions{1e-15, 1e-13, 40, 4000});
  acc.add(r);
  // Past S only lambda = 0 leaves mass, erf(t / (2 sqrt S)); otherwise it is below e^{-lambda S}.
  const double tail = lambda == 0.0 ? std::erf(t / (2.0 * std::sqrt(S))) : 0.0;
  return finish(r.value + tail, acc, opts, "stable_laplace_transform");
}

KernelValue poisson_kernel(const KernelQuery& q, const KernelOptions& opts) {
  q.validate();
  opts.validate();
  if (q.derivative_order != 0) throw DomainError("poisson_kernel: use poisson_kernel_dt for derivatives");
  Accumulator acc;
  const double v = subordinated_kernel(q.params, log_gamma_shift(q.params), q.t, q.x, q.y, 0, opts, acc);
  auto out = finish(v, acc, opts, "poisson_kernel");
  out.min_sample = v;
  return out;
}

KernelValue poisson_kernel_dt(const KernelQuery& q, const KernelOptions& opts) {
  q.validate();
  opts.validate();
  if (q.derivative_order < 1) throw DomainError("poisson_kernel_dt: derivative order must be >= 1");
  Accumulator acc;
  const double v =
      subordinated_kernel(q.params, log_gamma_shift(q.params), q.t, q.x, q.y, q.derivative_order, opts, acc);
  return finish(v, acc, opts, "poisson_kernel_dt");
}

KernelValue l1_kernel_derivative(const MultiIndexParams& params, double t, std::span<const double> x, int m,
                                 const KernelOptions& opts) {
  return kernel_y_integral(
      params, t, x, m, [](std::span<const double>, double k) { return std::abs(k); }, opts, "l1_kernel_derivative");
}

KernelValue poisson_kernel_integral(const MultiIndexParams& params, double t, std::span<const double> x, int m,
                                    const Function& phi, const KernelOptions& opts) {
  return kernel_y_integral(
      params, t, x, m, [&](std::span<const double> y, double k) { return k == 0.0 ? 0.0 : k * phi(y); }, opts,
      "poisson_kernel_integral");
}

KernelValue poisson_dt_apply(const Function& f, const MultiIndexParams& params, double t, std::span<const double> x,
                             int m, const KernelOptions& opts) {
  if (m < 1) throw DomainError("poisson_dt_apply: derivative order must be >= 1");
  const double fx = f(x);
  return kernel_y_integral(
      params, t, x, m, [&](std::span<const double> y, double k) { return k == 0.0 ? 0.0 : k * (f(y) - fx); }, opts,
      "poisson_dt_apply");
}

KernelValue poisson_apply(const Function& f, const MultiIndexParams& params, double t, std::span<const double> x,
                          const KernelOptions& opts) {
  params.validate();
  check_time(t, "poisson_apply");
  check_point(params, x, "poisson_apply");
  opts.validate();
  const auto lg1 = log_gamma_shift(params);
  const double fx = f(x);
  Accumulator acc;
  auto centred = [&](std::span<const double> y) { return f(y) - fx; };
  // P_t f(x) - f(x) = int g(t, s) (T_s f(x) - f(x)) ds; past S, T_s f(x) is the mu_alpha mean.
  const double S = std::max(opts.s_cap, 10.0 * t * t);
  const double tau_lo = std::log(t * t / kStableCut);
  const double tau_hi = std::log(S);
  const double tau_g = std::log(t * t / 6.0);
  std::vector<double> pts{tau_g - 4.0, tau_g - 2.0, tau_g, tau_g + 2.0, tau_g + 4.0, 0.0};
  for (double v = tau_lo + 3.0; v < tau_hi; v += 3.0) pts.push_back(v);
  const auto bps = sorted_breakpoints(std::move(pts), tau_lo, tau_hi);
  auto integrand = [&](double tau) -> double {
    const double s = std::exp(tau);
    const double wgt = s * stable_density(t, s);
    if (wgt == 0.0) return 0.0;
    return wgt * heat_integral(params, lg1, HeatTime(s), x, centred, opts, acc);
  };
  const auto r = integrate_adaptive(integrand, bps, opts.outer_quad);
  acc.add(r);
  const double drift = heat_integral(params, lg1, HeatTime(S), x, centred, opts, acc);
  const double v = fx + r.value + drift * std::erf(t / (2.0 * std::sqrt(S)));
  return finish(v, acc, opts, "poisson_apply");
}

IdentityCheck exponential_moment_identity(const MultiIndexParams& params, double r, std::span<const double> x) {
  params.validate();
  check_point(params, x, "exponential_moment_identity");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("exponential_moment_identity: r must lie in (0, 1)");
  const double om = 1.0 - r;
  IdentityCheck out;
  double log_lhs = 0.0, log_rhs = 0.0;
  AdaptiveOptions opt{1e-300, 1e-14, 40, 4000};
  for (int j = 0; j < params.d; ++j) {
    const double a = params.alpha[j];
    // In tau = log y the integrand y^{a+1} e^{-y/(1-r)} is smooth with exponential decay at both ends.
    const double centre = std::log(om);
    const double lo = centre - 45.0 / (a + 1.0);
    const double hi = centre + std::log(800.0);
    std::vector<double> bps;
    for (double v = lo; v < hi; v += 2.0) bps.push_back(v);
    bps.push_back(hi);
    auto integrand = [&](double tau) {
      const double y = std::exp(tau);
      return std::exp((a + 1.0) * tau - y / om);
    };
    const auto res = integrate_adaptive(integrand, bps, opt);
    log_lhs += std::log(res.value) - r * x[j] / om - (a + 1.0) * std::log(om);
    log_rhs += log_gamma(a + 1.0) - r * x[j] / om;
  }
  out.lhs = std::exp(log_lhs);
  out.rhs = std::exp(log_rhs);
  out.rel_error = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

double stable_derivative_l1_scaled(double t) {
  check_time(t, "stable_derivative_l1_scaled");
  const double tau_lo = std::log(t * t / kStableCut);
  const double tau_hi = std::log(t * t) + 90.0;
  const double tau_sign = std::log(0.5 * t * t);
  std::vector<double> pts{tau_sign};
  for (double v = tau_lo + 2.0; v < tau_hi; v += 2.0) pts.push_back(v);
  const auto bps = sorted_breakpoints(std::move(pts), tau_lo, tau_hi);
  auto integrand = [&](double tau) {
    const double s = std::exp(tau);
    return std::exp(-t * t / (4.0 * s)) / std::sqrt(s) * std::abs(1.0 - t * t / (2.0 * s));
  };
  const auto r = integrate_adaptive(integrand, bps, AdaptiveOptions{1e-300, 1e-13, 40, 4000});
  return t * r.value;
}

double stable_derivative_l1_exact() { return 4.0 * std::sqrt(2.0) * std::exp(-0.5); }

void write_kernel_sweep_csv(std::ostream& os, std::span<const KernelSweepRow> rows) {
  os << "t,x,m,value,est_error\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%.17g\n", r.t, r.x, r.m, r.value, r.est_error);
    os << buf;
  }
}

}  // namespace laguerre
