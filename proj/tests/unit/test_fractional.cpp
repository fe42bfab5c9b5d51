#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "laguerre/error.hpp"
#include "laguerre/fractional.hpp"
#include "laguerre/specfun.hpp"

using namespace laguerre;

namespace {

// Gamma(-lambda) sum_j binom(k, j) (-1)^{k-j} j^lambda, valid for non-integer lambda < k.
double c_lambda_oracle(double lambda, int k) {
  double s = 0.0;
  for (int j = 1; j <= k; ++j) {
    s += boost::math::binomial_coefficient<double>(k, j) * ((k - j) % 2 ? -1.0 : 1.0) * std::pow(j, lambda);
  }
  return boost::math::tgamma(-lambda) * s;
}

constexpr FracOp kOps[] = {FracOp::BesselPotential, FracOp::FractionalIntegral, FracOp::FractionalDerivative,
                           FracOp::BesselDerivative};

}  // namespace

TEST_CASE("smallest integer strictly above") {
  CHECK(smallest_integer_above(0.5) == 1);
  CHECK(smallest_integer_above(1.0) == 2);
  CHECK(smallest_integer_above(1.5) == 2);
  CHECK(smallest_integer_above(2.0) == 3);
  CHECK(FracOpConfig::for_order(1.0).resolved(1.0).k == 2);
}

TEST_CASE("c_lambda against the gamma-sum closed form") {
  for (double lam : {0.3, 0.5, 1.5, 2.3}) {
    for (int k = smallest_integer_above(lam); k <= 4; ++k) {
      CHECK(c_lambda(lam, k) == doctest::Approx(c_lambda_oracle(lam, k)).epsilon(1e-10));
    }
  }
  CHECK(c_lambda(1.0, 2) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(c_lambda(1.0, 1), DomainError);
}

TEST_CASE("forward differences of monomials") {
  auto cube = [](double x) { return x * x * x; };
  CHECK(forward_difference(cube, 3, 0.5, 2.0) == doctest::Approx(6 * 0.125));
  CHECK(forward_difference(cube, 4, 0.5, 2.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(forward_difference(cube, 0, 0.5, 2.0) == 8.0);
  CHECK(forward_difference(cube, 1, 0.5, 2.0) == doctest::Approx(2.5 * 2.5 * 2.5 - 8.0));
}

TEST_CASE("operators on expansions reproduce spectral eigenvalues") {
  for (const auto& p : {MultiIndexParams::make({-0.25}), MultiIndexParams::make({0.5, 1.0})}) {
    const auto e = LaguerreExpansion::random(p, 5, 3);
    const auto z = pi0(e);
    const std::vector<double> x(p.d, 0.9);
    for (double lam : {0.3, 1.0, 1.5}) {
      const double bp = synthesize(spectral_apply(SpectralMultiplier::bessel_potential(lam), e), x);
      const double fi = synthesize(spectral_apply(SpectralMultiplier::fractional_integral(lam), z), x);
      const double fd = synthesize(spectral_apply(SpectralMultiplier::fractional_derivative(lam), e), x);
      const double bd = synthesize(spectral_apply(SpectralMultiplier::bessel_derivative(lam), e), x);
      CHECK(bessel_potential_apply(e, lam, x) == doctest::Approx(bp).epsilon(1e-9));
      CHECK(fractional_integral_apply(z, lam, x) == doctest::Approx(fi).epsilon(1e-9));
      CHECK(fractional_derivative_apply(e, lam, x) == doctest::Approx(fd).epsilon(1e-9));
      CHECK(bessel_derivative_apply(e, lam, x) == doctest::Approx(bd).epsilon(1e-9));
    }
  }
}

TEST_CASE("operators on trajectories carry time derivatives") {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 4, 8);
  const std::vector<double> x{1.7};
  const SpectralTrajectory u(e, x);
  for (FracOp op : {FracOp::BesselPotential, FracOp::FractionalDerivative}) {
    const auto out = spectral_apply(spectral_multiplier(op, 0.6), e);
    const double want = synthesize(spectral_apply(SpectralMultiplier::poisson_time_derivative(0.4, 2), out), x);
    CHECK(apply_on_trajectory(op, u, FracOpConfig::for_order(0.6), 0.4, 2) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("spectral and quadrature paths agree per coefficient") {
  for (double alpha : {-0.25, 0.5}) {
    const auto p = MultiIndexParams::make({alpha});
    const auto e = LaguerreExpansion::random(p, 6, 21);
    for (double lam : {0.5, 1.5}) {
      for (FracOp op : kOps) {
        const auto in = op == FracOp::FractionalIntegral ? pi0(e) : e;
        const auto quad = apply_by_quadrature(op, in, lam);
        const auto spec = spectral_apply(spectral_multiplier(op, lam), in);
        for (const auto& [k, c] : spec.coeffs) {
          CHECK(std::abs(quad.coeff(k) - c) <= 1e-6 * std::max(1.0, std::abs(c)));
        }
      }
    }
  }
}

TEST_CASE("inverse pairs by quadrature") {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 6, 5);
  const double lam = 0.7;
  const auto z = pi0(e);
  const auto di = apply_by_quadrature(FracOp::FractionalDerivative, apply_by_quadrature(FracOp::FractionalIntegral, z, lam), lam);
  const auto bj = apply_by_quadrature(FracOp::BesselDerivative, apply_by_quadrature(FracOp::BesselPotential, e, lam), lam);
  for (const auto& [k, c] : e.coeffs) {
    CHECK(std::abs(di.coeff(k) - z.coeff(k)) <= 1e-6);
    CHECK(std::abs(bj.coeff(k) - c) <= 1e-6);
  }
}

TEST_CASE("kernel path on a basis function") {
  const auto p = MultiIndexParams::make({0.5});
  const Function f = [](std::span<const double> y) { return laguerre_poly(2, 0.5, y[0]); };
  const std::vector<double> x{1.1};
  const double l2 = laguerre_poly(2, 0.5, 1.1), r2 = std::sqrt(2.0);
  CHECK(bessel_potential_apply(f, p, 0.5, x) == doctest::Approx(std::pow(1 + r2, -0.5) * l2).epsilon(1e-6));
  CHECK(fractional_integral_apply(f, p, 0.5, x) == doctest::Approx(std::pow(2.0, -0.25) * l2).epsilon(1e-6));
  CHECK(fractional_derivative_apply(f, p, 0.5, x) == doctest::Approx(std::pow(2.0, 0.25) * l2).epsilon(1e-6));
  CHECK(bessel_derivative_apply(f, p, 0.5, x) == doctest::Approx(std::pow(1 + r2, 0.5) * l2).epsilon(1e-6));
}

TEST_CASE("preconditions") {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 3, 1);
  const std::vector<double> x{1.0};
  CHECK_THROWS_AS(fractional_integral_apply(e, 0.5, x), PreconditionError);
  FracOpConfig cfg = FracOpConfig::for_order(1.5);
  cfg.k = 1;
  CHECK_THROWS(fractional_derivative_apply(e, 1.5, x, cfg));
  CHECK_THROWS(FracOpConfig::for_order(-1.0));
  FracOpConfig bad;
  bad.log_step = 0.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("operator names") {
  CHECK(std::string(frac_op_name(FracOp::BesselPotential)) == "bessel_potential");
  CHECK(std::string(frac_op_name(FracOp::BesselDerivative)) == "bessel_derivative");
}
