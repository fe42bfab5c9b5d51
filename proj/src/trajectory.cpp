#include "laguerre/trajectory.hpp"

#include <cmath>
#include <string>

#include "laguerre/error.hpp"

namespace laguerre {

namespace {

double binomial(int k, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c = c * (k - j + i) / i;
  return c;
}

// Lattice range of the subordination sums: sigma from e^{-46} (t down to 1e-8) to e^{80}.
constexpr double kTauFirst = -46.0;
constexpr double kTauLast = 80.0;

}  // namespace

double Trajectory::difference(double t, double s, int k, int n, double damping) const {
  if (k < 0) throw DomainError("difference: order must be nonnegative");
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double step = (k - j) * s;
    const double v = n == 0 ? increment(t + step) : value(t + step, n);
    const double c = binomial(k, j) * ((j % 2 == 0) ? 1.0 : -1.0);
    sum += c * std::exp(-damping * step) * v;
  }
  if (n == 0) sum += origin() * std::pow(std::expm1(-damping * s), k);
  return sum;
}

SpectralTrajectory::SpectralTrajectory(const LaguerreExpansion& f, std::span<const double> x)
    : grades_(graded_values(f, x)) {}

double SpectralTrajectory::origin() const {
  double sum = 0.0;
  for (double a : grades_) sum += a;
  return sum;
}

double SpectralTrajectory::value(double t, int n) const {
  if (n < 0) throw DomainError("SpectralTrajectory: negative derivative order");
  double sum = 0.0;
  for (std::size_t m = 0; m < grades_.size(); ++m) {
    if (m == 0 && n > 0) continue;
    const double r = std::sqrt(static_cast<double>(m));
    sum += grades_[m] * std::pow(-r, n) * std::exp(-t * r);
  }
  return sum;
}

double SpectralTrajectory::increment(double t) const {
  double sum = 0.0;
  for (std::size_t m = 1; m < grades_.size(); ++m) sum += grades_[m] * std::expm1(-t * std::sqrt(static_cast<double>(m)));
  return sum;
}

double SpectralTrajectory::difference(double t, double s, int k, int n, double damping) const {
  if (k < 0 || n < 0) throw DomainError("SpectralTrajectory: negative order");
  double sum = 0.0;
  for (std::size_t m = 0; m < grades_.size(); ++m) {
    if (m == 0 && n > 0) continue;
    const double r = std::sqrt(static_cast<double>(m));
    sum += grades_[m] * std::pow(-r, n) * std::exp(-t * r) * std::pow(std::expm1(-s * (damping + r)), k);
  }
  return sum;
}

void KernelTrajectoryOptions::validate() const {
  kernel.validate();
  if (!(log_step > 0.0 && log_step <= 0.5)) throw DomainError("KernelTrajectoryOptions: log_step must lie in (0, 0.5]");
  if (!(sigma_min > 0.0 && sigma_min < sigma_cap)) throw DomainError("KernelTrajectoryOptions: need 0 < sigma_min < sigma_cap");
}

KernelTrajectory::KernelTrajectory(const Function& f, const MultiIndexParams& params, std::span<const double> x,
                                   const KernelTrajectoryOptions& opts)
    : h_(opts.log_step) {
  opts.validate();
  params.validate();
  fx_ = f(x);
  const double fx = fx_;
  Function centred = [&f, fx](std::span<const double> y) { return f(y) - fx; };
  KernelOptions kopt = opts.kernel;
  // psi is tiny for small sigma, so only relative targets make sense.
  kopt.y_quad = AdaptiveOptions{1e-300, 1e-12, 40, 4000, 1e-14};

  j_first_ = static_cast<int>(std::floor(kTauFirst / h_));
  const int j_last = static_cast<int>(std::ceil(kTauLast / h_));
  const int j_min = static_cast<int>(std::floor(std::log(opts.sigma_min) / h_));
  const int j_cap = static_cast<int>(std::ceil(std::log(opts.sigma_cap) / h_));

  const std::vector<double> xv(x.begin(), x.end());
  auto heat = [&](double sigma) { return heat_apply_kernel(centred, params, sigma, xv, kopt).value; };
  const auto cached = parallel_map<double>(
      static_cast<std::size_t>(j_cap - j_min + 1), [&](std::size_t i) { return heat(std::exp((j_min + static_cast<int>(i)) * h_)); },
      opts.policy);
  psi_inf_ = heat(kopt.s_cap);

  // Two-term Taylor model psi = a sigma + b sigma^2 through the two lowest cached nodes.
  const double s1 = std::exp(j_min * h_), s2 = std::exp((j_min + 1) * h_);
  const double p1 = cached[0], p2 = cached[1];
  const double den = s1 * s2 * (s2 - s1);
  const double a = (p1 * s2 * s2 - p2 * s1 * s1) / den;
  const double b = (p2 * s1 - p1 * s2) / den;

  const int count = j_last - j_first_ + 1;
  sigma_.resize(count);
  psi_.resize(count);
  for (int i = 0; i < count; ++i) {
    const int j = j_first_ + i;
    const double sigma = std::exp(j * h_);
    sigma_[i] = sigma;
    if (j < j_min) {
      psi_[i] = sigma * (a + b * sigma);
    } else if (j <= j_cap) {
      psi_[i] = cached[j - j_min];
    } else {
      psi_[i] = psi_inf_;
    }
  }
}

double KernelTrajectory::sum(double t, int n) const {
  if (!(t >= 1e-8)) throw DomainError("KernelTrajectory: t must be at least 1e-8 (got " + std::to_string(t) + ")");
  const double floor_sigma = t * t / 2800.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    const double sigma = sigma_[i];
    if (sigma < floor_sigma) continue;
    acc += sigma * stable_density_dt(t, sigma, n) * psi_[i];
  }
  return h_ * acc;
}

double KernelTrajectory::value(double t, int n) const {
  if (n < 0) throw DomainError("KernelTrajectory: negative derivative order");
  if (n == 0) return fx_ + increment(t);
  if (!(t > 0.0)) throw DomainError("KernelTrajectory: derivatives need t > 0");
  return sum(t, n);
}

double KernelTrajectory::increment(double t) const {
  if (t == 0.0) return 0.0;
  return sum(t, 0);
}

}  // namespace laguerre
