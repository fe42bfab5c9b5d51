#include <cmath>
#include <string>

#include "laguerre/error.hpp"
#include "laguerre/specfun.hpp"

namespace laguerre {

namespace {

constexpr int kMaxNewton = 100;
constexpr double kNewtonTol = 1e-14;
constexpr int kMaxRuleSize = 256;

// L_n^alpha(z) and L_{n-1}^alpha(z) by the upward recurrence.
void laguerre_pair(int n, double alpha, double z, double& ln, double& lnm1) {
  double p1 = 1.0;
  double p2 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j - 1.0 + alpha - z) * p2 - (j - 1.0 + alpha) * p3) / j;
  }
  ln = p1;
  lnm1 = p2;
}

}  // namespace

void QuadratureRule::validate() const {
  if (nodes.size() != weights.size()) throw DomainError("QuadratureRule: nodes/weights size mismatch");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("QuadratureRule: nodes not strictly increasing");
  }
  if (weight_kind == WeightKind::LaguerreMeasure) {
    double mass = 0.0;
    for (double w : weights) mass += w;
    if (std::abs(mass - 1.0) > 1e-10) {
      throw DomainError("QuadratureRule: Laguerre-measure weights do not sum to 1");
    }
  }
}

QuadratureRule gauss_laguerre_rule(double alpha, int n) {
  if (!(alpha > -1.0)) throw DomainError("gauss_laguerre_rule: alpha must exceed -1");
  if (n < 1) throw DomainError("gauss_laguerre_rule: n must be >= 1");
  if (n > kMaxRuleSize) throw DomainError("gauss_laguerre_rule: n above supported maximum");

  QuadratureRule rule;
  rule.weight_kind = WeightKind::LaguerreMeasure;
  rule.alpha = alpha;
  rule.exact_degree = 2 * n - 1;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double log_scale = log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0) - log_gamma(alpha + 1.0);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    // Tricomi-type asymptotic initial guesses, each extrapolated from the previous roots.
    if (i == 0) {
      z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
    } else if (i == 1) {
      z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
    } else {
      const double ai = i - 1.0;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
           (z - rule.nodes[i - 2]) / (1.0 + 0.3 * alpha);
    }
    double ln = 0.0, lnm1 = 0.0, deriv = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      laguerre_pair(n, alpha, z, ln, lnm1);
      deriv = (n * ln - (n + alpha) * lnm1) / z;
      const double step = ln / deriv;
      z -= step;
      if (std::abs(step) <= kNewtonTol * std::abs(z)) {
        converged = true;
        break;
      }
    }
    if (!converged || !(z > 0.0)) {
      throw QuadratureError("gauss_laguerre_rule: Newton iteration failed for node " + std::to_string(i) +
                            " (alpha=" + std::to_string(alpha) + ", n=" + std::to_string(n) + ")");
    }
    laguerre_pair(n, alpha, z, ln, lnm1);
    deriv = (n * ln - (n + alpha) * lnm1) / z;
    rule.nodes[i] = z;
    // w_i = Gamma(n+alpha+1) / (n! Gamma(alpha+1) x_i L_n'(x_i)^2)
    rule.weights[i] = std::exp(log_scale - std::log(z) - 2.0 * std::log(std::abs(deriv)));
  }
  for (int i = 1; i < n; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) {
      throw QuadratureError("gauss_laguerre_rule: roots out of order (alpha=" + std::to_string(alpha) +
                            ", n=" + std::to_string(n) + ")");
    }
  }
  return rule;
}

}  // namespace laguerre
