#include <doctest.h>

#include <cmath>

#include "laguerre/error.hpp"
#include "laguerre/kernels.hpp"
#include "laguerre/lipschitz.hpp"
#include "laguerre/specfun.hpp"

using namespace laguerre;

namespace {

LaguerreExpansion sample_function(double alpha = 0.5) {
  LaguerreExpansion e;
  e.params = MultiIndexParams::make({alpha});
  e.degree = 3;
  e.coeffs[MultiIndex{{1}}] = 1.0;
  e.coeffs[MultiIndex{{3}}] = 0.3;
  return e;
}

double parse_summary(const BoundReport& r, const char* key) { return parse_real(r.summary.at(key).get<std::string>()); }

}  // namespace

TEST_CASE("grid builders") {
  const auto t = dyadic_t_grid(5.0, 10);
  REQUIRE(t.size() == 11u);
  CHECK(t.front() == doctest::Approx(5.0 / 1024));
  CHECK(t.back() == 5.0);
  const auto r = refine_t_grid(t);
  CHECK(r.size() == 21u);
  CHECK(r[1] == doctest::Approx(std::sqrt(t[0] * t[1])));
  const auto x = log_x_grid(2, 24, 0.05, 20.0);
  CHECK(x.size() == 576u);
  CHECK(x.front()[0] == doctest::Approx(0.05));
  CHECK(x.back()[1] == doctest::Approx(20.0));
  CHECK_NOTHROW(default_grids(1).validate(1));
  CHECK_THROWS(LipschitzGrids{{2.0, 1.0}, log_x_grid(1)}.validate(1));
}

TEST_CASE("derivative order is the smallest integer strictly above beta") {
  const auto f = sample_function();
  const auto grids = default_grids(1);
  CHECK(lipschitz_seminorm(f, 0.5, grids).n == 1);
  CHECK(lipschitz_seminorm(f, 1.0, grids).n == 2);
  CHECK(lipschitz_seminorm(f, 2.3, grids).n == 3);
}

TEST_CASE("seminorm vanishes exactly on constants") {
  LaguerreExpansion c;
  c.params = MultiIndexParams::make({0.5});
  c.coeffs[MultiIndex{{0}}] = 2.5;
  const auto est = lipschitz_seminorm(c, 0.7, default_grids(1));
  CHECK(est.A_beta == 0.0);
  CHECK(est.f_sup == 2.5);
}

TEST_CASE("seminorm of a basis function from its spectral form") {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::basis(p, MultiIndex{{2}});
  const LipschitzGrids grids{{0.5, 1.0}, {{1.0}}};
  const auto est = lipschitz_seminorm(e, 0.5, grids);
  const double r2 = std::sqrt(2.0), l2 = std::abs(laguerre_poly(2, 0.5, 1.0));
  CHECK(est.sup_table[0] == doctest::Approx(r2 * std::exp(-0.5 * r2) * l2).epsilon(1e-14));
  CHECK(est.A_beta == doctest::Approx(std::max(std::sqrt(0.5) * est.sup_table[0], est.sup_table[1])).epsilon(1e-14));
}

TEST_CASE("monotonicity of the classes on grids inside (0, 1]") {
  const auto f = LaguerreExpansion::random(MultiIndexParams::make({0.5}), 6, 4);
  const LipschitzGrids grids{dyadic_t_grid(1.0, 10), log_x_grid(1)};
  const auto a1 = lipschitz_seminorm(f, 0.3, grids, 1);
  const auto a2 = lipschitz_seminorm(f, 0.8, grids, 1);
  CHECK(a1.A_beta <= a2.A_beta);
}

TEST_CASE("spectral and kernel seminorm tables agree") {
  const auto f = sample_function();
  const Function g = [&](std::span<const double> y) { return synthesize(f, y); };
  const LipschitzGrids grids{{0.3125, 1.25, 5.0}, log_x_grid(1, 3, 0.5, 4.0)};
  for (double beta : {0.5, 1.5}) {
    const auto s = lipschitz_seminorm(f, beta, grids);
    const auto k = lipschitz_seminorm(g, f.params, beta, grids);
    for (std::size_t i = 0; i < s.sup_table.size(); ++i) {
      CHECK(std::abs(s.sup_table[i] - k.sup_table[i]) <= 1e-5 * std::max(1.0, s.sup_table[i]));
    }
  }
}

TEST_CASE("time derivatives of a bounded function obey the kernel L1 bound") {
  const auto p = MultiIndexParams::make({0.5});
  const Function f = [](std::span<const double> y) { return std::exp(-y[0]); };
  for (double x : {0.5, 1.0, 2.0}) {
    for (double t : {0.1, 0.8, 3.0}) {
      const std::vector<double> xv{x};
      for (int m = 1; m <= 2; ++m) {
        const double lhs = std::abs(poisson_dt_apply(f, p, t, xv, m).value);
        const double rhs = l1_kernel_derivative(p, t, xv, m).value;
        CHECK(lhs <= rhs * (1.0 + 1e-8));
      }
    }
  }
}

TEST_CASE("operator seminorm paths agree") {
  const auto f = LaguerreExpansion::random(MultiIndexParams::make({0.5}), 6, 2);
  const auto grids = default_grids(1);
  const auto quad = operator_seminorm(FracOp::FractionalDerivative, f, 0.3, 0.5, grids);
  const auto spec = operator_seminorm_spectral(FracOp::FractionalDerivative, f, 0.3, 0.5, grids);
  CHECK(quad.A_beta == doctest::Approx(spec.A_beta).epsilon(1e-8));
  const auto j = operator_seminorm(FracOp::BesselPotential, f, 1.0, 1.5, grids);
  const auto js = operator_seminorm_spectral(FracOp::BesselPotential, f, 1.0, 1.5, grids);
  CHECK(j.A_beta == doctest::Approx(js.A_beta).epsilon(1e-8));
}

TEST_CASE("equivalence of seminorm orders") {
  const auto rep = check_equivalence(sample_function(), 0.5, 1, 2, default_grids(1));
  CHECK(rep.pass);
  const double ratio = parse_summary(rep, "ratio");
  CHECK(ratio > 0.02);
  CHECK(ratio < 50.0);
}

TEST_CASE("approximation bound holds with the 1/beta constant") {
  for (double beta : {0.5, 0.9}) {
    const auto rep = check_approximation(sample_function(), beta, default_grids(1));
    CHECK(parse_summary(rep, "max_ratio") * beta <= 1.0);
  }
}

TEST_CASE("powers of P_t - I") {
  const auto f = sample_function();
  const double beta = 1.5;
  const auto grids = default_grids(1);
  const auto rep = check_pminusI_power(f, 2, beta, grids);
  REQUIRE(rep.rows.size() == 2 * grids.t_grid.size());
  const double A = parse_summary(rep, "A_beta");
  // The double integral of (s1 + s2)^{beta - 2} over [0, 1]^2.
  const double C = (std::pow(2.0, beta) - 2.0) / ((beta - 1.0) * beta);
  for (std::size_t i = 0; i < grids.t_grid.size(); ++i) {
    CHECK(rep.rows[2 * i].pass);
    CHECK(rep.rows[2 * i + 1].measured <= C * A * std::pow(grids.t_grid[i], beta));
  }
  CHECK_THROWS(check_pminusI_power(f, 1, beta, default_grids(1)));
}
