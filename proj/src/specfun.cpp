#include "laguerre/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "laguerre/error.hpp"

namespace laguerre {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

void check_order(double nu, const char* where) {
  if (!(nu > -1.0)) {
    throw DomainError(std::string(where) + ": order must exceed -1, got " + std::to_string(nu));
  }
}

}  // namespace

void BesselBranchConfig::validate() const {
  if (series_terms < 1) throw DomainError("BesselBranchConfig: series_terms must be >= 1");
  if (asymptotic_terms < 1) throw DomainError("BesselBranchConfig: asymptotic_terms must be >= 1");
  if (!(switch_threshold > 0.0)) throw DomainError("BesselBranchConfig: switch_threshold must be > 0");
}

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at nonpositive integer " + std::to_string(x));
  }
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  // lgamma writes signgam on some platforms; positive arguments stay exact via tgamma where finite.
  if (x < 170.0) return std::log(std::tgamma(x));
  return std::lgamma(x);
#endif
}

double bessel_i_reduced_series(double nu, double z, const BesselBranchConfig& cfg) {
  check_order(nu, "bessel_i_reduced_series");
  if (!(z >= 0.0)) throw DomainError("bessel_i_reduced_series: z must be >= 0");
  // sum_m (z^2/4)^m / (m! Gamma(m+nu+1)); every term is positive for nu > -1.
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < cfg.series_terms; ++m) {
    term *= q / (m * (m + nu));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum / gamma(nu + 1.0);
}

double bessel_i_series(double nu, double z, const BesselBranchConfig& cfg) {
  check_order(nu, "bessel_i_series");
  if (!(z >= 0.0)) throw DomainError("bessel_i_series: z must be >= 0");
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double q = 0.25 * z * z;
  double sum = 1.0;
  double term = 1.0;
  for (int m = 1; m < cfg.series_terms; ++m) {
    term *= q / (m * (m + nu));
    sum += term;
  }
  return std::exp(nu * std::log(0.5 * z) - log_gamma(nu + 1.0)) * sum;
}

double asymptotic_coefficient(double nu, int r) {
  if (r < 0) throw DomainError("asymptotic_coefficient: r must be >= 0");
  const double mu = 4.0 * nu * nu;
  double c = 1.0;
  for (int i = 1; i <= r; ++i) {
    const double odd = 2.0 * i - 1.0;
    c *= (mu - odd * odd) / (4.0 * i);
  }
  return c;
}

double bessel_i_scaled_asymptotic(double nu, double z, const BesselBranchConfig& cfg) {
  if (!(z > 0.0)) throw DomainError("bessel_i_asymptotic: z must be > 0");
  // sum_{r=0}^{n} (-1)^r [nu,r] (2z)^{-r}, built by the ratio of consecutive terms.
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int r = 1; r <= cfg.asymptotic_terms; ++r) {
    const double odd = 2.0 * r - 1.0;
    term *= -(mu - odd * odd) / (8.0 * r * z);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

double bessel_i_asymptotic(double nu, double z, const BesselBranchConfig& cfg) {
  return std::exp(z) * bessel_i_scaled_asymptotic(nu, z, cfg);
}

double bessel_i(double nu, double z, const BesselBranchConfig& cfg) {
  if (z > cfg.switch_threshold) {
    check_order(nu, "bessel_i");
    return bessel_i_asymptotic(nu, z, cfg);
  }
  return bessel_i_series(nu, z, cfg);
}

double laguerre_poly(int k, double alpha, double x) {
  if (!(alpha > -1.0)) throw DomainError("laguerre_poly: alpha must exceed -1");
  if (k < 0) throw DomainError("laguerre_poly: degree must be >= 0");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = alpha + 1.0 - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void laguerre_poly_table(double alpha, double x, std::span<double> out) {
  if (!(alpha > -1.0)) throw DomainError("laguerre_poly_table: alpha must exceed -1");
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = alpha + 1.0 - x;
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    const double jj = static_cast<double>(j);
    out[j + 1] = ((2.0 * jj + 1.0 + alpha - x) * out[j] - (jj + alpha) * out[j - 1]) / (jj + 1.0);
  }
}

}  // namespace laguerre
