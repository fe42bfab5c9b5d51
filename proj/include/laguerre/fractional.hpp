#pragma once

// Bessel potential J_lambda, fractional integral I_lambda, fractional
// derivative D_lambda and Bessel derivative (I + sqrt L)^lambda, each as a
// weighted s-integral of the Poisson trajectory u(s) = P_s f(x).

#include <functional>
#include <span>

#include "laguerre/expansion.hpp"
#include "laguerre/parallel.hpp"
#include "laguerre/trajectory.hpp"

namespace laguerre {

enum class FracOp { BesselPotential, FractionalIntegral, FractionalDerivative, BesselDerivative };

const char* frac_op_name(FracOp op);

// Smallest integer strictly greater than lambda.
int smallest_integer_above(double lambda);

struct FracOpConfig {
  double lambda = 0.5;
  int k = 0;  // 0 selects smallest_integer_above(lambda)
  // The s-integrals use the lattice s = t_floor e^{i h} up to s_max; outside
  // it the integrand is continued by its power-law model and summed in closed form.
  double t_floor = 1e-6;
  double s_max = 60.0;
  double log_step = 0.125;
  ExecPolicy policy = ExecPolicy::Parallel;

  static FracOpConfig for_order(double lambda);
  // Copy with lambda set and k resolved; validated.
  FracOpConfig resolved(double lambda) const;
  void validate() const;
};

// int_0^inf u^{-lambda-1} (e^{-u} - 1)^k du; DomainError when lambda >= k.
double c_lambda(double lambda, int k);

// sum_{j=0}^k C(k,j) (-1)^j f(t + (k-j) s).
double forward_difference(const std::function<double(double)>& f, int k, double s, double t);

// d^n/dt^n P_t (op f)(x) at t >= 0, from the trajectory of f at x.
double apply_on_trajectory(FracOp op, const Trajectory& u, const FracOpConfig& cfg, double t = 0.0, int n = 0);

// Expansion inputs: P_s applied spectrally inside the s-quadrature.
double bessel_potential_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                              const FracOpConfig& cfg = {});
double fractional_integral_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                                 const FracOpConfig& cfg = {});
double fractional_derivative_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                                   const FracOpConfig& cfg = {});
double bessel_derivative_apply(const LaguerreExpansion& f, double lambda, std::span<const double> x,
                               const FracOpConfig& cfg = {});

// General bounded inputs: P_s from the heat kernel by subordination.
double bessel_potential_apply(const Function& f, const MultiIndexParams& params, double lambda,
                              std::span<const double> x, const FracOpConfig& cfg = {},
                              const KernelTrajectoryOptions& kopts = {});
double fractional_integral_apply(const Function& f, const MultiIndexParams& params, double lambda,
                                 std::span<const double> x, const FracOpConfig& cfg = {},
                                 const KernelTrajectoryOptions& kopts = {});
double fractional_derivative_apply(const Function& f, const MultiIndexParams& params, double lambda,
                                   std::span<const double> x, const FracOpConfig& cfg = {},
                                   const KernelTrajectoryOptions& kopts = {});
double bessel_derivative_apply(const Function& f, const MultiIndexParams& params, double lambda,
                               std::span<const double> x, const FracOpConfig& cfg = {},
                               const KernelTrajectoryOptions& kopts = {});

// Applies op by quadrature at Gauss-Laguerre nodes and re-analyzes to degree f.degree.
LaguerreExpansion apply_by_quadrature(FracOp op, const LaguerreExpansion& f, double lambda,
                                      const FracOpConfig& cfg = {});
// The exact multiplier of op.
SpectralMultiplier spectral_multiplier(FracOp op, double lambda);

}  // namespace laguerre
