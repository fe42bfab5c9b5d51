#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration on finite panels.
// The workspace is local to each call.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace laguerre {

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 40;
  int max_panels = 4000;
  // Also accept an error below l1_rel_tol * int |f|, for integrands whose
  // value cancels to near zero.
  double l1_rel_tol = 0.0;
};

struct IntegrationResult {
  double value = 0.0;
  double abs_error = 0.0;
  double l1 = 0.0;  // integral of |f|, for cancellation diagnostics
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  int depth = 0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel kronrod15(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kKronrodWeights[7];
  double resg = fc * kGaussWeights[3];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double s = fv1[j] + fv2[j];
    resk += kKronrodWeights[j] * s;
    resabs += kKronrodWeights[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kGaussWeights[j / 2] * s;
  }
  const double reskh = 0.5 * resk;
  double resasc = kKronrodWeights[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kKronrodWeights[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.depth = depth;
  p.value = resk * half;
  p.l1 = resabs * std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  // QUADPACK error scaling.
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (p.l1 > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * p.l1, err);
  p.error = err;
  return p;
}

}  // namespace detail

// Integrates f over [breakpoints.front(), breakpoints.back()], starting from
// one panel per breakpoint interval. Panels at max_depth are never split; the
// result is flagged non-converged when the tolerance is still unmet.
template <class F>
IntegrationResult integrate_adaptive(F&& f, std::span<const double> breakpoints, const AdaptiveOptions& opt = {}) {
  IntegrationResult out;
  if (breakpoints.size() < 2) return out;
  std::priority_queue<detail::Panel> heap;
  std::vector<detail::Panel> frozen;
  double total = 0.0, total_err = 0.0, total_l1 = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    auto p = detail::kronrod15(f, breakpoints[i], breakpoints[i + 1], 0);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    total_l1 += p.l1;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());
  auto target = [&] {
    return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), opt.l1_rel_tol * total_l1});
  };
  while (total_err > target() && !heap.empty() && panels < opt.max_panels) {
    auto worst = heap.top();
    heap.pop();
    if (worst.depth >= opt.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod15(f, worst.a, mid, worst.depth + 1);
    auto right = detail::kronrod15(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 30;
    ++panels;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum in a fixed order so the result does not depend on heap history.
  std::vector<detail::Panel> all = std::move(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  out.value = 0.0;
  out.abs_error = 0.0;
  out.l1 = 0.0;
  for (const auto& p : all) {
    out.value += p.value;
    out.abs_error += p.error;
    out.l1 += p.l1;
  }
  out.converged =
      out.abs_error <= std::max({opt.abs_tol, opt.rel_tol * std::abs(out.value), opt.l1_rel_tol * out.l1});
  return out;
}

template <class F>
IntegrationResult integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  const double bp[2] = {a, b};
  return integrate_adaptive(std::forward<F>(f), std::span<const double>(bp, 2), opt);
}

}  // namespace laguerre
