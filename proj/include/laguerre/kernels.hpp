#pragma once

// Heat kernel G_t (density against mu_alpha), the subordinated Poisson
// kernel p_t (density against Lebesgue dy) and their time derivatives, plus
// quadrature application of both semigroups.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "laguerre/params.hpp"
#include "laguerre/quadrature.hpp"
#include "laguerre/specfun.hpp"

namespace laguerre {

struct KernelQuery {
  MultiIndexParams params;
  double t = 1.0;
  std::vector<double> x;
  std::vector<double> y;  // may be empty for apply-type operations
  int derivative_order = 0;

  void validate(bool need_y = true) const;
};

struct KernelOptions {
  BesselBranchConfig bessel;
  // Subordination integral over s at a fixed (x, y).
  AdaptiveOptions s_quad{1e-16, 1e-11, 40, 4000, 1e-12};
  // Integrals over y (Lebesgue or heat-kernel weighted).
  AdaptiveOptions y_quad{1e-12, 1e-10, 40, 4000, 1e-11};
  // Subordinated integrals of T_s f over s, for poisson_apply.
  AdaptiveOptions outer_quad{1e-13, 1e-10, 40, 2000};
  // Beyond this time the heat kernel equals the mu_alpha density to e^{-s_cap}
  // and the remaining stable mass is added in closed form.
  double s_cap = 60.0;
  // Throw QuadratureError instead of returning a non-converged flag.
  bool strict = false;

  void validate() const;
};

struct KernelValue {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  // Smallest kernel value seen at a quadrature node (y-integrals only).
  double min_sample = 0.0;
  long evaluations = 0;
};

// Constants of exp(-s) shared by every factor at a fixed time.
struct HeatTime {
  double s = 0.0;
  double r = 0.0;       // e^{-s}
  double om = 0.0;      // 1 - e^{-s}
  double log_om = 0.0;

  explicit HeatTime(double s);
};

// log of the one-dimensional heat density h_s(x, y) with respect to dy.
double log_heat_density_1d(double alpha, const HeatTime& T, double x, double y, const BesselBranchConfig& cfg = {});
// log of prod_j h_s(x_j, y_j).
double log_heat_density(const MultiIndexParams& params, double s, std::span<const double> x,
                        std::span<const double> y, const BesselBranchConfig& cfg = {});

// log G_t(x, y), the kernel against d mu_alpha(y).
double log_heat_kernel(const KernelQuery& q, const BesselBranchConfig& cfg = {});
// G_t(x, y); OverflowError when |log G| > 700.
double heat_kernel(const KernelQuery& q, const BesselBranchConfig& cfg = {});

// T_t f(x) = int G_t(x, y) f(y) d mu_alpha(y).
KernelValue heat_apply_kernel(const Function& f, const MultiIndexParams& params, double t, std::span<const double> x,
                              const KernelOptions& opts = {});

double stable_density(double t, double s);
// d^m/dt^m g(t, s).
double stable_density_dt(double t, double s, int m);
// d^m/dt^m of int_S^inf g(t, s) ds = erf(t / (2 sqrt S)).
double stable_tail_dt(double t, double S, int m);
// int_0^inf e^{-lambda s} g(t, s) ds by quadrature in log s (equals e^{-t sqrt lambda}).
KernelValue stable_laplace_transform(double t, double lambda, const KernelOptions& opts = {});
// Physicists' Hermite polynomial H_n(a).
double hermite(int n, double a);

// p_t(x, y) (derivative_order 0) or its m-th t-derivative, against dy.
KernelValue poisson_kernel(const KernelQuery& q, const KernelOptions& opts = {});
KernelValue poisson_kernel_dt(const KernelQuery& q, const KernelOptions& opts = {});

// int |d^m/dt^m p_t(x, y)| dy.
KernelValue l1_kernel_derivative(const MultiIndexParams& params, double t, std::span<const double> x, int m,
                                 const KernelOptions& opts = {});
// int d^m/dt^m p_t(x, y) phi(y) dy.
KernelValue poisson_kernel_integral(const MultiIndexParams& params, double t, std::span<const double> x, int m,
                                    const Function& phi, const KernelOptions& opts = {});

// P_t f(x) by subordination of the kernel-path heat semigroup.
KernelValue poisson_apply(const Function& f, const MultiIndexParams& params, double t, std::span<const double> x,
                          const KernelOptions& opts = {});
// d^m/dt^m P_t f(x) = int d^m p_t(x, y) (f(y) - f(x)) dy for m >= 1.
KernelValue poisson_dt_apply(const Function& f, const MultiIndexParams& params, double t, std::span<const double> x,
                             int m, const KernelOptions& opts = {});

// Both sides of int prod_j e^{-(r x_j + y_j)/(1-r)} (1-r)^{-alpha_j-1} y_j^{alpha_j} dy
// = prod_j Gamma(alpha_j + 1) e^{-r x_j/(1-r)}; the left side by quadrature.
struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
};
IdentityCheck exponential_moment_identity(const MultiIndexParams& params, double r, std::span<const double> x);

// t * int_0^inf e^{-t^2/4s} s^{-3/2} |1 - t^2/(2s)| ds by quadrature.
double stable_derivative_l1_scaled(double t);
// Its closed-form value 4 sqrt(2) e^{-1/2}.
double stable_derivative_l1_exact();

struct KernelSweepRow {
  double t = 0.0;
  double x = 0.0;
  int m = 0;
  double value = 0.0;
  double est_error = 0.0;
};
// CSV with header t,x,m,value,est_error.
void write_kernel_sweep_csv(std::ostream& os, std::span<const KernelSweepRow> rows);

}  // namespace laguerre
