#include "laguerre/params.hpp"

#include <cmath>
#include <string>

#include "laguerre/error.hpp"
#include "laguerre/specfun.hpp"

namespace laguerre {

MultiIndexParams MultiIndexParams::make(std::vector<double> alpha) {
  MultiIndexParams p;
  p.d = static_cast<int>(alpha.size());
  p.alpha = std::move(alpha);
  p.half_regime = true;
  for (double a : p.alpha) p.half_regime = p.half_regime && a > -0.5;
  p.validate();
  return p;
}

MultiIndexParams MultiIndexParams::uniform(int d, double alpha) {
  if (d < 1) throw DomainError("MultiIndexParams: dimension must be positive");
  return make(std::vector<double>(static_cast<std::size_t>(d), alpha));
}

void MultiIndexParams::validate() const {
  if (d < 1) throw DomainError("MultiIndexParams: dimension must be positive");
  if (static_cast<int>(alpha.size()) != d) throw DomainError("MultiIndexParams: alpha has wrong length");
  bool half = true;
  for (double a : alpha) {
    if (!(a > -1.0) || !std::isfinite(a)) {
      throw DomainError("MultiIndexParams: alpha entries must exceed -1 (got " + std::to_string(a) + ")");
    }
    half = half && a > -0.5;
  }
  if (half != half_regime) throw DomainError("MultiIndexParams: half_regime flag inconsistent with alpha");
}

double laguerre_density(const MultiIndexParams& params, std::span<const double> y) {
  double log_w = 0.0;
  for (int j = 0; j < params.d; ++j) {
    const double a = params.alpha[j];
    if (!(y[j] > 0.0)) return 0.0;
    log_w += a * std::log(y[j]) - y[j] - log_gamma(a + 1.0);
  }
  return std::exp(log_w);
}

}  // namespace laguerre
