#include "laguerre/fractional.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "laguerre/error.hpp"
#include "laguerre/quadrature.hpp"
#include "laguerre/specfun.hpp"

namespace laguerre {

namespace {

double c_lambda_uncached(double lambda, int k) {
  const double kl = k - lambda;
  const AdaptiveOptions opt{1e-300, 1e-14, 40, 4000};
  // [0,1]: u^{k-lambda-1} q(u)^k with q(u) = expm1(-u)/u, then u = v^{1/(k-lambda)}.
  auto near = [&](double v) {
    const double u = std::pow(v, 1.0 / kl);
    const double q = u == 0.0 ? -1.0 : std::expm1(-u) / u;
    return std::pow(q, k);
  };
  // [1,inf): u = v^{-1/lambda}.
  auto far = [&](double v) {
    if (v == 0.0) return std::pow(-1.0, k);
    return std::pow(std::expm1(-std::pow(v, -1.0 / lambda)), k);
  };
  const double bp[] = {0.0, 0.125, 0.25, 0.5, 1.0};
  const auto a = integrate_adaptive(near, bp, opt);
  const auto b = integrate_adaptive(far, bp, opt);
  return a.value / kl + b.value / lambda;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw QuadratureError(std::string(what) + ": non-finite result");
}

}  // namespace

const char* frac_op_name(FracOp op) {
  switch (op) {
    case FracOp::BesselPotential: return "bessel_potential";
    case FracOp::FractionalIntegral: return "fractional_integral";
    case FracOp::FractionalDerivative: return "fractional_derivative";
    case FracOp::BesselDerivative: return "bessel_derivative";
  }
  return "unknown";
}

int smallest_integer_above(double lambda) { return static_cast<int>(std::floor(lambda)) + 1; }

FracOpConfig FracOpConfig::for_order(double lambda) { return FracOpConfig{}.resolved(lambda); }

FracOpConfig FracOpConfig::resolved(double l) const {
  FracOpConfig c = *this;
  c.lambda = l;
  if (c.k == 0 && l > 0.0) c.k = smallest_integer_above(l);
  c.validate();
  return c;
}

void FracOpConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("FracOpConfig: lambda must be positive");
  if (k < 1) throw DomainError("FracOpConfig: k must be a positive integer");
  if (!(t_floor > 0.0 && t_floor < 1e-2)) throw DomainError("FracOpConfig: t_floor must lie in (0, 1e-2)");
  if (!(s_max >= 30.0)) throw DomainError("FracOpConfig: s_max must be at least 30");
  if (!(log_step > 0.0 && log_step <= 0.5)) throw DomainError("FracOpConfig: log_step must lie in (0, 0.5]");
}

double c_lambda(double lambda, int k) {
  if (!(lambda > 0.0)) throw DomainError("c_lambda: lambda must be positive");
  if (k < 1) throw DomainError("c_lambda: k must be positive");
  if (!(lambda < k)) {
    throw DomainError("c_lambda: integral diverges for lambda >= k (lambda=" + std::to_string(lambda) +
                      ", k=" + std::to_string(k) + ")");
  }
  static std::mutex mu;
  static std::map<std::pair<double, int>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({lambda, k});
    if (it != cache.end()) return it->second;
  }
  const double v = c_lambda_uncached(lambda, k);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(lambda, k), v);
  return v;
}

double forward_difference(const std::function<double(double)>& f, int k, double s, double t) {
  if (k < 0) throw DomainError("forward_difference: order must be nonnegative");
  double sum = 0.0;
  double c = 1.0;  // C(k, j)
  for (int j = 0; j <= k; ++j) {
    sum += ((j % 2 == 0) ? c : -c) * f(t + (k - j) * s);
    c = c * (k - j) / (j + 1);
  }
  return sum;
}

double apply_on_trajectory(FracOp op, const Trajectory& u, const FracOpConfig& cfg, double t, int n) {
  cfg.validate();
  const double lambda = cfg.lambda;
  const int k = cfg.k;
  if (!(t >= 0.0)) throw DomainError("apply_on_trajectory: t must be nonnegative");
  if (n < 0) throw DomainError("apply_on_trajectory: negative derivative order");
  const bool derivative = op == FracOp::FractionalDerivative || op == FracOp::BesselDerivative;
  if (derivative && !(lambda < k)) {
    throw PreconditionError(std::string(frac_op_name(op)) + ": requires lambda < k");
  }
  if (op == FracOp::FractionalIntegral) {
    const double scale = std::max(1.0, std::abs(u.origin()));
    if (std::abs(u.limit()) > 1e-8 * scale) {
      throw PreconditionError("fractional_integral: input mean " + std::to_string(u.limit()) + " is not zero");
    }
  }

  auto integrand = [&](double s) -> double {
    switch (op) {
      case FracOp::BesselPotential:
        return std::pow(s, lambda) * std::exp(-s) * u.value(t + s, n);
      case FracOp::FractionalIntegral:
        return std::pow(s, lambda) * u.value(t + s, n);
      case FracOp::FractionalDerivative:
        return std::pow(s, -lambda) * u.difference(t, s, k, n, 0.0);
      case FracOp::BesselDerivative:
        return std::pow(s, -lambda) * u.difference(t, s, k, n, 1.0);
    }
    return 0.0;
  };

  const double h = cfg.log_step;
  const double tau0 = std::log(cfg.t_floor);
  const int count = static_cast<int>(std::floor((std::log(cfg.s_max) - tau0) / h)) + 1;
  const auto values = parallel_map<double>(
      static_cast<std::size_t>(count), [&](std::size_t i) { return integrand(std::exp(tau0 + h * i)); }, cfg.policy);
  double sum = 0.0;
  for (double v : values) sum += v;

  // Below t_floor the integrand is s^rate (A + B s), fitted through the first two nodes.
  const double rate = derivative ? k - lambda : lambda;
  const double s0 = cfg.t_floor, s1 = std::exp(tau0 + h);
  const double g0 = values[0] / std::pow(s0, rate), g1 = values[1] / std::pow(s1, rate);
  const double B = (g1 - g0) / (s1 - s0);
  const double A = g0 - B * s0;
  double tails = A * std::pow(s0, rate) / std::expm1(rate * h) + B * std::pow(s0, rate + 1.0) / std::expm1((rate + 1.0) * h);
  if (derivative) {
    // Above s_max the damped or converged terms are gone and the integrand is L s^{-lambda}.
    double level = ((k % 2 == 0) ? 1.0 : -1.0) * u.value(t, n);
    if (op == FracOp::FractionalDerivative && n == 0) level -= ((k % 2 == 0) ? 1.0 : -1.0) * u.limit();
    const double s_last = std::exp(tau0 + h * (count - 1));
    tails += level * std::pow(s_last, -lambda) / std::expm1(lambda * h);
  }
  const double integral = h * (sum + tails);
  const double norm = derivative ? c_lambda(lambda, k) : gamma(lambda);
  const double out = integral / norm;
  check_finite(out, frac_op_name(op));
  return out;
}

namespace {

double apply_expansion(FracOp op, const LaguerreExpansion& f, double lambda, std::span<const double> x,
                       const FracOpConfig& cfg) {
  const auto c = cfg.resolved(lambda);
  return apply_on_trajectory(op, SpectralTrajectory(f, x), c);
}

double apply_function(FracOp op, const Function& f, const MultiIndexParams& params, double lambda,
                      std::span<const double> x, const FracOpConfig& cfg, const KernelTrajectoryOptions& kopts) {
  const auto c = cfg.resolved(lambda);
  return apply_on_trajectory(op, KernelTrajectory(f, params, x, kopts), c);
}

}  // namespace

double bessel_potential_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                              const FracOpConfig& cfg) {
  return apply_expansion(FracOp::BesselPotential, f, lambda, x, cfg);
}
double fractional_integral_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                                 const FracOpConfig& cfg) {
  return apply_expansion(FracOp::FractionalIntegral, f, lambda, x, cfg);
}
double fractional_derivative_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                                   const FracOpConfig& cfg) {
  return apply_expansion(FracOp::FractionalDerivative, f, lambda, x, cfg);
}
double bessel_derivative_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                               const FracOpConfig& cfg) {
  return apply_expansion(FracOp::BesselDerivative, f, lambda, x, cfg);
}

double bessel_potential_apply(const Function& f, const MultiIndexParams& params, double lambda,
                              std::span<const double> x, const FracOpConfig& cfg,
                              const KernelTrajectoryOptions& kopts) {
  return apply_function(FracOp::BesselPotential, f, params, lambda, x, cfg, kopts);
}
double fractional_integral_apply(const Function& f, const MultiIndexParams& params, double lambda,
                                 std::span<const double> x, const FracOpConfig& cfg,
                                 const KernelTrajectoryOptions& kopts) {
  return apply_function(FracOp::FractionalIntegral, f, params, lambda, x, cfg, kopts);
}
double fractional_derivative_apply(const Function& f, const MultiIndexParams& params, double lambda,
                                   std::span<const double> x, const FracOpConfig& cfg,
                                   const KernelTrajectoryOptions& kopts) {
  return apply_function(FracOp::FractionalDerivative, f, params, lambda, x, cfg, kopts);
}
double bessel_derivative_apply(const Function& f, const MultiIndexParams& params, double lambda,
                               std::span<const double> x, const FracOpConfig& cfg,
                               const KernelTrajectoryOptions& kopts) {
  return apply_function(FracOp::BesselDerivative, f, params, lambda, x, cfg, kopts);
}

LaguerreExpansion apply_by_quadrature(FracOp op, const LaguerreExpansion& f, double lambda,
                                      const FracOpConfig& cfg) {
  const auto c = cfg.resolved(lambda);
  // The outer loop over nodes is serial; the s-lattice inside each node is the parallel part.
  Function g = [&](std::span<const double> x) { return apply_on_trajectory(op, SpectralTrajectory(f, x), c); };
  return analyze(g, f.params, f.degree, f.degree + 4);
}

SpectralMultiplier spectral_multiplier(FracOp op, double lambda) {
  switch (op) {
    case FracOp::BesselPotential: return SpectralMultiplier::bessel_potential(lambda);
    case FracOp::FractionalIntegral: return SpectralMultiplier::fractional_integral(lambda);
    case FracOp::FractionalDerivative: return SpectralMultiplier::fractional_derivative(lambda);
    case FracOp::BesselDerivative: return SpectralMultiplier::bessel_derivative(lambda);
  }
  throw DomainError("spectral_multiplier: unknown operator");
}

}  // namespace laguerre
