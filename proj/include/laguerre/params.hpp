#pragma once

#include <functional>
#include <span>
#include <vector>

namespace laguerre {

// Type multi-index alpha in (-1, inf)^d of the Laguerre measure.
struct MultiIndexParams {
  int d = 1;
  std::vector<double> alpha{0.0};
  // True iff every alpha_j > -1/2 (hypothesis of the kernel L1 bounds).
  bool half_regime = true;

  static MultiIndexParams make(std::vector<double> alpha);
  static MultiIndexParams uniform(int d, double alpha);
  void validate() const;
};

// Real-valued function on (0, inf)^d.
using Function = std::function<double(std::span<const double>)>;

// Density of mu_alpha with respect to Lebesgue measure, prod_j y_j^a e^{-y_j} / Gamma(a+1).
double laguerre_density(const MultiIndexParams& params, std::span<const double> y);

}  // namespace laguerre
