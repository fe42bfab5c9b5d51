#pragma once

// Scalar special functions: Gamma, modified Bessel I_nu (power series and
// large-argument expansion), generalized Laguerre polynomials and
// Gauss-Laguerre rules normalized to the Laguerre probability measure.

#include <span>
#include <vector>

namespace laguerre {

struct BesselBranchConfig {
  int series_terms = 40;
  // Terms of the large-argument expansion. 20 terms keep the relative
  // truncation error below 1e-12 for z >= 15.
  int asymptotic_terms = 20;
  // Arguments above this use the asymptotic branch.
  double switch_threshold = 15.0;

  void validate() const;
};

double gamma(double x);
// log|Gamma(x)| for x > 0; thread safe.
double log_gamma(double x);

double bessel_i_series(double nu, double z, const BesselBranchConfig& cfg = {});
// Hankel symbol [nu, r] = Gamma(nu + r + 1/2) / (r! Gamma(nu - r + 1/2)).
double asymptotic_coefficient(double nu, int r);
double bessel_i_asymptotic(double nu, double z, const BesselBranchConfig& cfg = {});
// Branch dispatch on cfg.switch_threshold.
double bessel_i(double nu, double z, const BesselBranchConfig& cfg = {});

// (z/2)^{-nu} I_nu(z) by the series; finite at z = 0 for every nu > -1.
double bessel_i_reduced_series(double nu, double z, const BesselBranchConfig& cfg = {});
// e^{-z} I_nu(z) by the asymptotic expansion.
double bessel_i_scaled_asymptotic(double nu, double z, const BesselBranchConfig& cfg = {});

double laguerre_poly(int k, double alpha, double x);
// out[j] = L_j^alpha(x) for j = 0..out.size()-1.
void laguerre_poly_table(double alpha, double x, std::span<double> out);

enum class WeightKind { LaguerreMeasure, LebesgueHalfline, UnitIntervalLog };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  WeightKind weight_kind = WeightKind::LaguerreMeasure;
  double alpha = 0.0;
  int exact_degree = 0;

  std::size_t size() const { return nodes.size(); }
  void validate() const;
};

// n-point rule for the normalized measure x^alpha e^{-x} dx / Gamma(alpha+1).
QuadratureRule gauss_laguerre_rule(double alpha, int n);

}  // namespace laguerre
