#include "laguerre/expansion.hpp"

#include <cmath>
#include <random>
#include <string>

#include "laguerre/error.hpp"
#include "laguerre/specfun.hpp"

namespace laguerre {

int MultiIndex::order() const {
  int n = 0;
  for (int v : k) n += v;
  return n;
}

namespace {

void enumerate_grade(int d, int remaining, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == d - 1) {
    prefix.push_back(remaining);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    prefix.push_back(v);
    enumerate_grade(d, remaining - v, prefix, out);
    prefix.pop_back();
  }
}

// Per-axis tables L_j^{alpha}(x_axis) for j <= degree.
std::vector<std::vector<double>> axis_tables(const MultiIndexParams& params, int degree,
                                             std::span<const double> x) {
  std::vector<std::vector<double>> tab(params.d, std::vector<double>(degree + 1));
  for (int j = 0; j < params.d; ++j) laguerre_poly_table(params.alpha[j], x[j], tab[j]);
  return tab;
}

double basis_value(const MultiIndex& k, const std::vector<std::vector<double>>& tab) {
  double v = 1.0;
  for (std::size_t j = 0; j < k.k.size(); ++j) v *= tab[j][k.k[j]];
  return v;
}

void check_point(const LaguerreExpansion& e, std::span<const double> x) {
  if (static_cast<int>(x.size()) != e.params.d) throw DomainError("point dimension does not match expansion");
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int d, int degree) {
  if (d < 1) throw DomainError("enumerate_indices: dimension must be positive");
  if (degree < 0) throw DomainError("enumerate_indices: degree must be nonnegative");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  for (int n = 0; n <= degree; ++n) enumerate_grade(d, n, prefix, out);
  return out;
}

double basis_norm_sq(const MultiIndex& k, const MultiIndexParams& params) {
  if (static_cast<int>(k.k.size()) != params.d) throw DomainError("basis_norm_sq: index dimension mismatch");
  double log_norm = 0.0;
  for (int j = 0; j < params.d; ++j) {
    const double a = params.alpha[j];
    const int kj = k.k[j];
    if (kj < 0) throw DomainError("basis_norm_sq: negative index");
    log_norm += log_gamma(kj + a + 1.0) - log_gamma(kj + 1.0) - log_gamma(a + 1.0);
  }
  return std::exp(log_norm);
}

double LaguerreExpansion::coeff(const MultiIndex& k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? 0.0 : it->second;
}

void LaguerreExpansion::validate() const {
  params.validate();
  if (degree < 0) throw DomainError("LaguerreExpansion: negative degree");
  for (const auto& [k, c] : coeffs) {
    if (static_cast<int>(k.k.size()) != params.d) throw DomainError("LaguerreExpansion: index dimension mismatch");
    for (int v : k.k) {
      if (v < 0) throw DomainError("LaguerreExpansion: negative index entry");
    }
    if (k.order() > degree) throw DomainError("LaguerreExpansion: index order exceeds degree");
    if (!std::isfinite(c)) throw DomainError("LaguerreExpansion: non-finite coefficient");
  }
}

LaguerreExpansion LaguerreExpansion::basis(const MultiIndexParams& params, MultiIndex k) {
  LaguerreExpansion e;
  e.params = params;
  e.degree = k.order();
  e.coeffs[std::move(k)] = 1.0;
  e.validate();
  return e;
}

LaguerreExpansion LaguerreExpansion::random(const MultiIndexParams& params, int degree, unsigned long long seed) {
  LaguerreExpansion e;
  e.params = params;
  e.degree = degree;
  std::mt19937_64 gen(seed);
  for (auto& k : enumerate_indices(params.d, degree)) {
    // Explicit 53-bit mapping; std::uniform_real_distribution is not portable across libraries.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    e.coeffs[k] = 2.0 * u - 1.0;
  }
  return e;
}

LaguerreExpansion analyze(const Function& f, const MultiIndexParams& params, int degree, int quad_points) {
  params.validate();
  if (quad_points < degree + 1) throw DomainError("analyze: quad_points must be at least degree + 1");
  std::vector<QuadratureRule> rules;
  for (int j = 0; j < params.d; ++j) rules.push_back(gauss_laguerre_rule(params.alpha[j], quad_points));
  // Per-axis basis tables at every node.
  std::vector<std::vector<std::vector<double>>> tab(params.d);
  for (int j = 0; j < params.d; ++j) {
    tab[j].resize(quad_points, std::vector<double>(degree + 1));
    for (int i = 0; i < quad_points; ++i) laguerre_poly_table(params.alpha[j], rules[j].nodes[i], tab[j][i]);
  }
  const auto indices = enumerate_indices(params.d, degree);
  std::vector<double> acc(indices.size(), 0.0);
  std::vector<int> node(params.d, 0);
  std::vector<double> x(params.d);
  for (;;) {
    double w = 1.0;
    for (int j = 0; j < params.d; ++j) {
      x[j] = rules[j].nodes[node[j]];
      w *= rules[j].weights[node[j]];
    }
    const double fw = f(x) * w;
    for (std::size_t m = 0; m < indices.size(); ++m) {
      double b = fw;
      for (int j = 0; j < params.d; ++j) b *= tab[j][node[j]][indices[m].k[j]];
      acc[m] += b;
    }
    int j = 0;
    while (j < params.d && ++node[j] == quad_points) node[j++] = 0;
    if (j == params.d) break;
  }
  LaguerreExpansion e;
  e.params = params;
  e.degree = degree;
  for (std::size_t m = 0; m < indices.size(); ++m) e.coeffs[indices[m]] = acc[m] / basis_norm_sq(indices[m], params);
  return e;
}

double synthesize(const LaguerreExpansion& e, std::span<const double> x) {
  check_point(e, x);
  const auto tab = axis_tables(e.params, e.degree, x);
  double sum = 0.0;
  for (const auto& [k, c] : e.coeffs) sum += c * basis_value(k, tab);
  return sum;
}

std::vector<double> graded_values(const LaguerreExpansion& e, std::span<const double> x) {
  check_point(e, x);
  const auto tab = axis_tables(e.params, e.degree, x);
  std::vector<double> out(e.degree + 1, 0.0);
  for (const auto& [k, c] : e.coeffs) out[k.order()] += c * basis_value(k, tab);
  return out;
}

double SpectralMultiplier::value(int n) const {
  if (n < 0) throw DomainError("SpectralMultiplier: negative grade");
  const double r = std::sqrt(static_cast<double>(n));
  switch (kind) {
    case MultiplierKind::Heat:
      return std::exp(-param * n);
    case MultiplierKind::Poisson:
      return std::exp(-param * r);
    case MultiplierKind::BesselPotential:
      return std::pow(1.0 + r, -param);
    case MultiplierKind::FractionalIntegral:
      if (n == 0) throw PreconditionError("fractional_integral multiplier is undefined on the constant mode");
      return std::pow(static_cast<double>(n), -0.5 * param);
    case MultiplierKind::FractionalDerivative:
      return n == 0 ? 0.0 : std::pow(static_cast<double>(n), 0.5 * param);
    case MultiplierKind::BesselDerivative:
      return std::pow(1.0 + r, param);
    case MultiplierKind::PoissonTimeDerivative: {
      if (order == 0) return std::exp(-param * r);
      if (n == 0) return 0.0;
      return std::pow(-r, order) * std::exp(-param * r);
    }
    case MultiplierKind::PoissonDifference:
      return std::pow(std::expm1(-param * r), order);
  }
  throw DomainError("SpectralMultiplier: unknown kind");
}

LaguerreExpansion spectral_apply(const SpectralMultiplier& m, const LaguerreExpansion& e) {
  LaguerreExpansion out = e;
  if (m.kind == MultiplierKind::FractionalIntegral) {
    double scale = 0.0;
    for (const auto& [k, c] : e.coeffs) scale = std::max(scale, std::abs(c));
    const double c0 = e.mean();
    if (std::abs(c0) > 1e-12 * scale) {
      throw PreconditionError("fractional_integral requires a zero-mean expansion (apply pi0 first); c_0 = " +
                              std::to_string(c0));
    }
  }
  for (auto& [k, c] : out.coeffs) {
    const int n = k.order();
    if (n == 0 && m.kind == MultiplierKind::FractionalIntegral) {
      c = 0.0;
      continue;
    }
    c *= m.value(n);
  }
  return out;
}

LaguerreExpansion pi0(const LaguerreExpansion& e) {
  LaguerreExpansion out = e;
  out.coeffs[MultiIndex{std::vector<int>(e.params.d, 0)}] = 0.0;
  return out;
}

}  // namespace laguerre
