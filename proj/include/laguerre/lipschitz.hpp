#pragma once

// Grid realization of the Laguerre Lipschitz seminorm
//   A_beta(f) = sup_t t^{n-beta} || d^n/dt^n P_t f ||_inf,  n = smallest integer > beta,
// and the checks built on it.

#include <functional>
#include <vector>

#include "laguerre/expansion.hpp"
#include "laguerre/fractional.hpp"
#include "laguerre/kernels.hpp"
#include "laguerre/parallel.hpp"
#include "laguerre/report.hpp"

namespace laguerre {

using PointGrid = std::vector<std::vector<double>>;

struct LipschitzGrids {
  std::vector<double> t_grid;  // positive, strictly ascending
  PointGrid x_grid;

  void validate(int d) const;
};

// 5 * 2^{-j} for j = levels..0, ascending.
std::vector<double> dyadic_t_grid(double t_max = 5.0, int levels = 10);
// Inserts the geometric midpoint between neighbours.
std::vector<double> refine_t_grid(const std::vector<double>& grid);
// Tensor grid of `points` log-spaced values in [lo, hi] per axis.
PointGrid log_x_grid(int d, int points = 24, double lo = 0.05, double hi = 20.0);
LipschitzGrids default_grids(int d);

double sup_norm(const Function& g, const PointGrid& x_grid);

struct LipschitzEstimate {
  double beta = 0.0;
  int n = 1;
  std::vector<double> t_grid;
  PointGrid x_grid;
  std::vector<double> sup_table;  // aligned with t_grid
  double A_beta = 0.0;
  double t_at_max = 0.0;
  double f_sup = 0.0;

  double norm() const { return f_sup + A_beta; }
};

// field(t, n, i) = d^n/dt^n P_t g at x_grid[i]; value(i) = g(x_grid[i]).
using DerivativeField = std::function<double(double t, int n, std::size_t i)>;
using PointValues = std::function<double(std::size_t i)>;

// n = 0 selects the smallest integer above beta.
LipschitzEstimate seminorm_from_field(const DerivativeField& field, const PointValues& value, double beta,
                                      const LipschitzGrids& grids, int n = 0,
                                      ExecPolicy policy = ExecPolicy::Parallel);

// Spectral path: multiplier (-sqrt|k|)^n e^{-t sqrt|k|}.
LipschitzEstimate lipschitz_seminorm(const LaguerreExpansion& f, double beta, const LipschitzGrids& grids,
                                     int n = 0, ExecPolicy policy = ExecPolicy::Parallel);
// Kernel path: d^n p_t integrated against f.
LipschitzEstimate lipschitz_seminorm(const Function& f, const MultiIndexParams& params, double beta,
                                     const LipschitzGrids& grids, int n = 0, const KernelOptions& opts = {},
                                     ExecPolicy policy = ExecPolicy::Parallel);
// Seminorm of op(f) through its integral representation, with P_s applied spectrally.
LipschitzEstimate operator_seminorm(FracOp op, const LaguerreExpansion& f, double lambda, double beta,
                                    const LipschitzGrids& grids, const FracOpConfig& cfg = {},
                                    ExecPolicy policy = ExecPolicy::Parallel);
// Same seminorm from the exact output multiplier.
LipschitzEstimate operator_seminorm_spectral(FracOp op, const LaguerreExpansion& f, double lambda, double beta,
                                             const LipschitzGrids& grids, ExecPolicy policy = ExecPolicy::Parallel);

// A_{beta,k} against A_{beta,l}; PASS when both are finite and the ratio lies in [1/window, window].
BoundReport check_equivalence(const LaguerreExpansion& f, double beta, int k, int l, const LipschitzGrids& grids,
                              double window = 50.0);
// sup_x |P_t f - f| <= (1 + tol) A_beta t^beta on every t, 0 < beta < 1.
BoundReport check_approximation(const LaguerreExpansion& f, double beta, const LipschitzGrids& grids,
                                double tol = 0.05);
// sup_x |(P_t - I)^n f| against 2^n ||f|| and (1 + tol) A_beta t^beta.
BoundReport check_pminusI_power(const LaguerreExpansion& f, int n, double beta, const LipschitzGrids& grids,
                                double tol = 0.05);

}  // namespace laguerre
