#pragma once

// The Poisson trajectory u(t) = P_t f(x) at a fixed point x, with its
// t-derivatives. Every fractional operator is a weighted integral of u.

#include <span>
#include <vector>

#include "laguerre/expansion.hpp"
#include "laguerre/kernels.hpp"
#include "laguerre/parallel.hpp"

namespace laguerre {

class Trajectory {
 public:
  virtual ~Trajectory() = default;

  // f(x) = u(0).
  virtual double origin() const = 0;
  // u(inf), the mu_alpha mean of f.
  virtual double limit() const = 0;
  // u^{(n)}(t).
  virtual double value(double t, int n) const = 0;
  // u(t) - u(0), accurate for small t.
  virtual double increment(double t) const { return value(t, 0) - origin(); }
  // sum_j C(k,j) (-1)^j e^{-damping (k-j) s} u^{(n)}(t + (k-j) s).
  virtual double difference(double t, double s, int k, int n, double damping) const;
};

// Exact trajectory of a finite expansion: u(t) = sum_m a_m e^{-t sqrt m}.
class SpectralTrajectory final : public Trajectory {
 public:
  SpectralTrajectory(const LaguerreExpansion& f, std::span<const double> x);

  double origin() const override;
  double limit() const override { return grades_.empty() ? 0.0 : grades_[0]; }
  double value(double t, int n) const override;
  double increment(double t) const override;
  double difference(double t, double s, int k, int n, double damping) const override;

 private:
  std::vector<double> grades_;  // a_m = sum_{|k| = m} c_k L_k(x)
};

struct KernelTrajectoryOptions {
  KernelOptions kernel;
  // Lattice step in log sigma for the heat-time cache and the subordination sums.
  double log_step = 0.125;
  // Below sigma_min the heat increment is extrapolated from a two-term Taylor model.
  double sigma_min = 1e-8;
  // Above sigma_cap T_sigma f(x) is replaced by the mu_alpha mean.
  double sigma_cap = 40.0;
  ExecPolicy policy = ExecPolicy::Parallel;

  void validate() const;
};

// Trajectory built from kernel-path heat values psi(sigma) = T_sigma f(x) - f(x)
// on a log-sigma lattice; u is then the subordination sum
// u^{(n)}(t) - [n = 0] f(x) = sum_j h sigma_j d^n g(t, sigma_j) psi(sigma_j).
class KernelTrajectory final : public Trajectory {
 public:
  KernelTrajectory(const Function& f, const MultiIndexParams& params, std::span<const double> x,
                   const KernelTrajectoryOptions& opts = {});

  double origin() const override { return fx_; }
  double limit() const override { return fx_ + psi_inf_; }
  double value(double t, int n) const override;
  double increment(double t) const override;

  // Cached heat increments, for tests.
  std::span<const double> heat_increments() const { return psi_; }

 private:
  double sum(double t, int n) const;

  double fx_ = 0.0;
  double psi_inf_ = 0.0;
  double h_ = 0.125;
  int j_first_ = 0;            // lattice index of sigma_[0]
  std::vector<double> sigma_;  // e^{j h}
  std::vector<double> psi_;    // psi on the same lattice, with both tail models filled in
};

}  // namespace laguerre
