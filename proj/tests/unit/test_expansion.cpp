#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "laguerre/error.hpp"
#include "laguerre/expansion.hpp"
#include "laguerre/specfun.hpp"

using namespace laguerre;

namespace {

void check_coeffs(const LaguerreExpansion& got, const LaguerreExpansion& want, double rel) {
  for (const auto& [k, c] : want.coeffs) {
    CHECK(std::abs(got.coeff(k) - c) <= rel * std::max(std::abs(c), 1e-300));
  }
  for (const auto& [k, c] : got.coeffs) {
    if (!want.coeffs.contains(k)) CHECK(c == 0.0);
  }
}

}  // namespace

TEST_CASE("params validation") {
  const auto p = MultiIndexParams::make({0.5, -0.25});
  CHECK(p.d == 2);
  CHECK(p.half_regime);
  CHECK_FALSE(MultiIndexParams::make({-0.6}).half_regime);
  CHECK_THROWS_AS(MultiIndexParams::make({-1.0}), DomainError);
  CHECK_THROWS_AS(MultiIndexParams::make({}), DomainError);
  CHECK(MultiIndexParams::uniform(3, 0.2).alpha == std::vector<double>{0.2, 0.2, 0.2});
}

TEST_CASE("laguerre density is the product gamma density") {
  const auto p = MultiIndexParams::make({0.5, 2.0});
  const std::vector<double> y{1.3, 0.7};
  const double want = std::pow(1.3, 0.5) * std::exp(-1.3) / boost::math::tgamma(1.5) * std::pow(0.7, 2.0) *
                      std::exp(-0.7) / boost::math::tgamma(3.0);
  CHECK(laguerre_density(p, y) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("index enumeration is graded lexicographic and complete") {
  const auto idx = enumerate_indices(2, 4);
  CHECK(idx.size() == 15u);
  for (std::size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1].order() <= idx[i].order());
  CHECK(idx.front().k == std::vector<int>{0, 0});
  CHECK(enumerate_indices(3, 6).size() == static_cast<std::size_t>(boost::math::binomial_coefficient<double>(9, 3)));
  CHECK(enumerate_indices(1, 0).size() == 1u);
}

TEST_CASE("basis norms") {
  const auto p = MultiIndexParams::make({0.5, -0.25});
  const MultiIndex k{{3, 2}};
  const double want = boost::math::tgamma(4.5) / (6.0 * boost::math::tgamma(1.5)) * boost::math::tgamma(2.75) /
                      (2.0 * boost::math::tgamma(0.75));
  CHECK(basis_norm_sq(k, p) == doctest::Approx(want).epsilon(1e-13));
  CHECK(std::isfinite(basis_norm_sq(MultiIndex{{64}}, MultiIndexParams::make({3.0}))));
}

TEST_CASE("analyze inverts synthesize") {
  for (const auto& p : {MultiIndexParams::make({0.5}), MultiIndexParams::make({-0.25, 1.0})}) {
    const auto e = LaguerreExpansion::random(p, 5, 42);
    const Function f = [&](std::span<const double> y) { return synthesize(e, y); };
    const auto back = analyze(f, p, 5, 8);
    for (const auto& [k, c] : e.coeffs) CHECK(back.coeff(k) == doctest::Approx(c).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("synthesize and graded values agree") {
  const auto p = MultiIndexParams::make({0.5, 0.5});
  const auto e = LaguerreExpansion::random(p, 4, 9);
  const std::vector<double> x{0.7, 2.1};
  const auto g = graded_values(e, x);
  double total = 0.0;
  for (double v : g) total += v;
  CHECK(total == doctest::Approx(synthesize(e, x)).epsilon(1e-13));
  double direct = 0.0;
  for (const auto& [k, c] : e.coeffs) direct += c * laguerre_poly(k.k[0], 0.5, 0.7) * laguerre_poly(k.k[1], 0.5, 2.1);
  CHECK(synthesize(e, x) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("random expansions are reproducible and bounded") {
  const auto p = MultiIndexParams::make({0.5});
  const auto a = LaguerreExpansion::random(p, 6, 5), b = LaguerreExpansion::random(p, 6, 5);
  CHECK(a.coeffs == b.coeffs);
  CHECK(a.coeffs.size() == 7u);
  for (const auto& [k, c] : a.coeffs) CHECK(std::abs(c) <= 1.0);
  CHECK(LaguerreExpansion::random(p, 6, 6).coeffs != a.coeffs);
}

TEST_CASE("multiplier eigenvalues") {
  CHECK(SpectralMultiplier::heat(0.4).value(3) == doctest::Approx(std::exp(-1.2)));
  CHECK(SpectralMultiplier::poisson(0.4).value(4) == doctest::Approx(std::exp(-0.8)));
  CHECK(SpectralMultiplier::bessel_potential(1.5).value(4) == doctest::Approx(std::pow(3.0, -1.5)));
  CHECK(SpectralMultiplier::fractional_integral(1.0).value(4) == doctest::Approx(0.5));
  CHECK(SpectralMultiplier::fractional_derivative(1.0).value(9) == doctest::Approx(3.0));
  CHECK(SpectralMultiplier::bessel_derivative(2.0).value(9) == doctest::Approx(16.0));
  CHECK(SpectralMultiplier::poisson_time_derivative(0.5, 2).value(4) == doctest::Approx(4.0 * std::exp(-1.0)));
  CHECK(SpectralMultiplier::poisson_difference(0.5, 2).value(4) ==
        doctest::Approx(std::pow(std::exp(-1.0) - 1.0, 2)));
  CHECK_THROWS_AS(SpectralMultiplier::fractional_integral(1.0).value(0), PreconditionError);
}

TEST_CASE("semigroup law holds spectrally") {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 8, 1);
  check_coeffs(spectral_apply(SpectralMultiplier::heat(0.3), spectral_apply(SpectralMultiplier::heat(0.5), e)),
               spectral_apply(SpectralMultiplier::heat(0.8), e), 1e-14);
  check_coeffs(
      spectral_apply(SpectralMultiplier::poisson(0.3), spectral_apply(SpectralMultiplier::poisson(0.5), e)),
      spectral_apply(SpectralMultiplier::poisson(0.8), e), 1e-14);
}

TEST_CASE("inverse pairs") {
  const auto p = MultiIndexParams::make({-0.25});
  const auto e = LaguerreExpansion::random(p, 6, 17);
  for (double lam : {0.3, 1.0, 2.5}) {
    const auto z = pi0(e);
    check_coeffs(spectral_apply(SpectralMultiplier::fractional_derivative(lam),
                                spectral_apply(SpectralMultiplier::fractional_integral(lam), z)),
                 z, 1e-12);
    check_coeffs(spectral_apply(SpectralMultiplier::bessel_derivative(lam),
                                spectral_apply(SpectralMultiplier::bessel_potential(lam), e)),
                 e, 1e-12);
  }
  CHECK_THROWS_AS(spectral_apply(SpectralMultiplier::fractional_integral(0.5), e), PreconditionError);
}

TEST_CASE("conservation and contraction") {
  for (double t : {0.01, 1.0, 7.0}) {
    CHECK(SpectralMultiplier::heat(t).value(0) == 1.0);
    CHECK(SpectralMultiplier::poisson(t).value(0) == 1.0);
    for (int n = 0; n <= 40; ++n) {
      CHECK(std::abs(SpectralMultiplier::heat(t).value(n)) <= 1.0);
      CHECK(std::abs(SpectralMultiplier::poisson(t).value(n)) <= 1.0);
      CHECK(std::abs(SpectralMultiplier::bessel_potential(t).value(n)) <= 1.0);
    }
  }
}

TEST_CASE("pi0 removes the mean only") {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 3, 2);
  const auto z = pi0(e);
  CHECK(z.mean() == 0.0);
  CHECK(z.coeff(MultiIndex{{2}}) == e.coeff(MultiIndex{{2}}));
}

TEST_CASE("json round trip is bit exact") {
  const auto p = MultiIndexParams::make({0.1, 1.0 / 3.0});
  const auto e = LaguerreExpansion::random(p, 4, 77);
  const auto back = expansion_from_json(to_json(e));
  CHECK(back.params.alpha == e.params.alpha);
  CHECK(back.degree == e.degree);
  CHECK(back.coeffs == e.coeffs);
  CHECK_THROWS_AS(expansion_from_json("{\"d\": 1}"), ConfigError);
  CHECK_THROWS_AS(expansion_from_json("not json"), ConfigError);
}

TEST_CASE("expansion validation") {
  LaguerreExpansion e;
  e.params = MultiIndexParams::make({0.5});
  e.degree = 1;
  e.coeffs[MultiIndex{{3}}] = 1.0;
  CHECK_THROWS(e.validate());
}
