#pragma once

// Finite Laguerre expansions f = sum_k c_k L_k^alpha in the non-normalized
// tensor basis, and exact diagonal (spectral) operators acting on them.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "laguerre/params.hpp"

namespace laguerre {

struct MultiIndex {
  std::vector<int> k;

  int order() const;
  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;
};

// Graded-lexicographic list of all k in N^d with |k| <= degree.
std::vector<MultiIndex> enumerate_indices(int d, int degree);

// Squared L2(mu_alpha) norm of L_k^alpha: prod_j binom(k_j + alpha_j, k_j).
double basis_norm_sq(const MultiIndex& k, const MultiIndexParams& params);

struct LaguerreExpansion {
  MultiIndexParams params;
  int degree = 0;
  std::map<MultiIndex, double> coeffs;

  double coeff(const MultiIndex& k) const;
  double mean() const { return coeff(MultiIndex{std::vector<int>(params.d, 0)}); }
  void validate() const;

  // Single basis function L_k^alpha.
  static LaguerreExpansion basis(const MultiIndexParams& params, MultiIndex k);
  // Coefficients uniform in [-1, 1] on every |k| <= degree, reproducible from the seed.
  static LaguerreExpansion random(const MultiIndexParams& params, int degree, unsigned long long seed);
};

LaguerreExpansion analyze(const Function& f, const MultiIndexParams& params, int degree, int quad_points);
double synthesize(const LaguerreExpansion& e, std::span<const double> x);

// Sum over each grade: out[n] = sum_{|k| = n} c_k L_k^alpha(x).
std::vector<double> graded_values(const LaguerreExpansion& e, std::span<const double> x);

enum class MultiplierKind {
  Heat,                  // e^{-t n}
  Poisson,               // e^{-t sqrt n}
  BesselPotential,       // (1 + sqrt n)^{-lambda}
  FractionalIntegral,    // n^{-lambda/2}, n > 0
  FractionalDerivative,  // n^{lambda/2}
  BesselDerivative,      // (1 + sqrt n)^{lambda}
  PoissonTimeDerivative, // (-sqrt n)^m e^{-t sqrt n}
  PoissonDifference,     // (e^{-t sqrt n} - 1)^m
};

struct SpectralMultiplier {
  MultiplierKind kind = MultiplierKind::Heat;
  double param = 0.0;  // t or lambda
  int order = 0;       // m for the derivative and difference kinds

  static SpectralMultiplier heat(double t) { return {MultiplierKind::Heat, t, 0}; }
  static SpectralMultiplier poisson(double t) { return {MultiplierKind::Poisson, t, 0}; }
  static SpectralMultiplier bessel_potential(double l) { return {MultiplierKind::BesselPotential, l, 0}; }
  static SpectralMultiplier fractional_integral(double l) { return {MultiplierKind::FractionalIntegral, l, 0}; }
  static SpectralMultiplier fractional_derivative(double l) { return {MultiplierKind::FractionalDerivative, l, 0}; }
  static SpectralMultiplier bessel_derivative(double l) { return {MultiplierKind::BesselDerivative, l, 0}; }
  static SpectralMultiplier poisson_time_derivative(double t, int m) {
    return {MultiplierKind::PoissonTimeDerivative, t, m};
  }
  static SpectralMultiplier poisson_difference(double t, int m) { return {MultiplierKind::PoissonDifference, t, m}; }

  // Eigenvalue on the grade |k| = n.
  double value(int n) const;
};

LaguerreExpansion spectral_apply(const SpectralMultiplier& m, const LaguerreExpansion& e);
LaguerreExpansion pi0(const LaguerreExpansion& e);

std::string to_json(const LaguerreExpansion& e);
LaguerreExpansion expansion_from_json(const std::string& text);

}  // namespace laguerre
