#include "laguerre/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "laguerre/error.hpp"
#include "laguerre/fractional.hpp"
#include "laguerre/kernels.hpp"
#include "laguerre/quadrature.hpp"
#include "laguerre/trajectory.hpp"

namespace laguerre {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

using Json = nlohmann::json;

std::string fmt(double v) { return format_real(v); }

template <class T>
T option(const ScenarioConfig& c, const char* key, T fallback) {
  if (!c.options.contains(key)) return fallback;
  try {
    return c.options.at(key).get<T>();
  } catch (const Json::exception& ex) {
    throw ConfigError(std::string("option '") + key + "': " + ex.what());
  }
}

double rel_error(double got, double want) {
  const double d = std::abs(got - want);
  return want == 0.0 ? d : d / std::abs(want);
}

// ---- forward-difference calculus on polynomials -------------------------------------------

using Poly = std::vector<double>;  // coefficients, lowest degree first

double poly_eval(const Poly& p, double x) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

Poly poly_derivative(const Poly& p, int times = 1) {
  Poly q = p;
  for (int t = 0; t < times; ++t) {
    if (q.size() <= 1) return Poly{0.0};
    Poly d(q.size() - 1);
    for (std::size_t i = 1; i < q.size(); ++i) d[i - 1] = q[i] * static_cast<double>(i);
    q = std::move(d);
  }
  return q;
}

// Coefficients in t of Delta_s^k(p, t) at fixed s.
Poly poly_difference_in_t(const Poly& p, int k, double s) {
  Poly out(p.size(), 0.0);
  double c = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double shift = (k - j) * s;
    const double sign = (j % 2 == 0) ? c : -c;
    // p(t + shift) = sum_i p^{(i)}(shift) t^i / i!
    Poly d = p;
    double fact = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0) {
        d = poly_derivative(d);
        fact *= static_cast<double>(i);
      }
      out[i] += sign * poly_eval(d, shift) / fact;
    }
    c = c * (k - j) / (j + 1);
  }
  return out;
}

// Coefficients in s of Delta_s^k(p, t) at fixed t.
Poly poly_difference_in_s(const Poly& p, int k, double t) {
  Poly out(p.size(), 0.0);
  Poly d = p;
  double fact = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) {
      d = poly_derivative(d);
      fact *= static_cast<double>(i);
    }
    double c = 1.0, weight = 0.0;
    for (int j = 0; j <= k; ++j) {
      weight += ((j % 2 == 0) ? c : -c) * std::pow(static_cast<double>(k - j), static_cast<double>(i));
      c = c * (k - j) / (j + 1);
    }
    out[i] = weight * poly_eval(d, t) / fact;
  }
  return out;
}

double difference_scale(const std::function<double(double)>& f, int k, double s, double t) {
  double c = 1.0, sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    sum += c * std::abs(f(t + (k - j) * s));
    c = c * (k - j) / (j + 1);
  }
  return sum;
}

// k-fold iterated integral int_t^{t+s} int_{v1}^{v1+s} ... g(v_k) dv_k ... dv_1.
double iterated_integral(const std::function<double(double)>& g, int k, double s, double t) {
  if (k == 0) return g(t);
  const AdaptiveOptions opt{1e-300, 1e-13, 30, 200};
  auto inner = [&](double v) { return iterated_integral(g, k - 1, s, v); };
  return integrate_adaptive(inner, t, t + s, opt).value;
}

void run_fdiff(const ScenarioConfig& cfg, BoundReport& r) {
  std::mt19937_64 gen(cfg.seed);
  auto uniform = [&] { return 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0; };
  const int poly_count = option<int>(cfg, "polynomials", 4);
  const int k_max = option<int>(cfg, "k_max", 4);
  const double eps_factor = cfg.tolerance("fp_eps_factor", 64.0);
  const std::vector<double> s_values{0.05, 0.3, 1.0};
  const std::vector<double> t_values{0.0, 0.4, 1.7};
  for (int pi = 0; pi < poly_count; ++pi) {
    Poly p(7);
    for (auto& c : p) c = uniform();
    auto f = [&](double x) { return poly_eval(p, x); };
    for (int k = 1; k <= k_max; ++k) {
      for (double s : s_values) {
        for (double t : t_values) {
          const std::string at = "poly=" + std::to_string(pi) + ",k=" + std::to_string(k) + ",s=" + fmt(s) + ",t=" + fmt(t);
          const double direct = forward_difference(f, k, s, t);
          // (i) Delta^k = Delta(Delta^{k-1}) = Delta^{k-1}(Delta).
          auto dkm1 = [&](double u) { return forward_difference(f, k - 1, s, u); };
          auto d1 = [&](double u) { return forward_difference(f, 1, s, u); };
          const double outer = forward_difference(dkm1, 1, s, t);
          const double inner = forward_difference(d1, k - 1, s, t);
          const double scale = std::max(difference_scale(dkm1, 1, s, t), difference_scale(f, k, s, t));
          const double tol = eps_factor * kEps * std::max(scale, 1.0);
          r.add_upper("composition," + at, std::max(std::abs(direct - outer), std::abs(direct - inner)), tol);
          // (iii) d/ds Delta_s^k(f,t) = k Delta_s^{k-1}(f', t+s).
          const Poly dp = poly_derivative(p);
          auto fp = [&](double x) { return poly_eval(dp, x); };
          const double lhs_s = poly_eval(poly_derivative(poly_difference_in_s(p, k, t)), s);
          const double rhs_s = k * forward_difference(fp, k - 1, s, t + s);
          const double scale_s = std::max(1.0, k * difference_scale(fp, k - 1, s, t + s));
          r.add_upper("s_derivative," + at, std::abs(lhs_s - rhs_s), eps_factor * kEps * scale_s * 4.0);
          // (iii) d^j/dt^j Delta_s^k(f,t) = Delta_s^k(f^{(j)}, t).
          for (int j = 1; j <= 2; ++j) {
            const Poly dj = poly_derivative(p, j);
            auto fj = [&](double x) { return poly_eval(dj, x); };
            const double lhs = poly_eval(poly_derivative(poly_difference_in_t(p, k, s), j), t);
            const double rhs = forward_difference(fj, k, s, t);
            const double sc = std::max(1.0, difference_scale(fj, k, s, t));
            r.add_upper("t_derivative,j=" + std::to_string(j) + "," + at, std::abs(lhs - rhs),
                        eps_factor * kEps * sc * 4.0);
          }
        }
      }
    }
  }
  // (ii) iterated-integral form for f = exp.
  const double tol_int = cfg.tolerance("iterated_integral_rel", 1e-10);
  auto e = [](double x) { return std::exp(x); };
  for (int k = 1; k <= 3; ++k) {
    for (double s : {0.01, 0.1, 0.25}) {
      for (double t : {0.0, 0.2, 0.5}) {
        const double exact = std::exp(t) * std::pow(std::expm1(s), k);
        const double it = iterated_integral(e, k, s, t);
        const std::string at = "k=" + std::to_string(k) + ",s=" + fmt(s) + ",t=" + fmt(t);
        r.add_upper("iterated_integral," + at, rel_error(it, exact), tol_int);
        const double d = forward_difference(e, k, s, t);
        r.add_upper("closed_form," + at, std::abs(d - exact),
                    eps_factor * kEps * std::max(1.0, difference_scale(e, k, s, t)));
      }
    }
  }
  // Power-law bound |Delta_s^k(r^delta, t)| <= C s^k t^{delta-k}, C = |delta (delta-1) ... (delta-k+1)|.
  double worst = 0.0;
  for (double delta : {0.3, 0.7}) {
    for (int k = 1; k <= 2; ++k) {
      double C = 1.0;
      for (int i = 0; i < k; ++i) C *= std::abs(delta - i);
      auto f = [delta](double x) { return std::pow(x, delta); };
      double ratio_max = 0.0;
      for (int ti = 0; ti < 12; ++ti) {
        const double t = 0.1 * std::pow(20.0, ti / 11.0);
        for (int si = 0; si <= 12; ++si) {
          const double s = std::ldexp(t, -si);
          const double ratio = std::abs(forward_difference(f, k, s, t)) / (std::pow(s, k) * std::pow(t, delta - k));
          ratio_max = std::max(ratio_max, ratio);
        }
      }
      worst = std::max(worst, ratio_max / C);
      r.add_upper("power_bound,delta=" + fmt(delta) + ",k=" + std::to_string(k), ratio_max, C);
    }
  }
  r.summary["power_bound_max_ratio_over_C"] = fmt(worst);
}

// ---- scenarios -----------------------------------------------------------------------------

void run_subordination(const ScenarioConfig& cfg, BoundReport& r) {
  const int n_max = option<int>(cfg, "n_max", 10);
  const auto ts = option<std::vector<double>>(cfg, "t_values", {0.1, 1.0, 5.0});
  const double tol = cfg.tolerance("abs", 1e-8);
  r.threshold = tol;
  double worst = 0.0;
  for (double t : ts) {
    for (int n = 0; n <= n_max; ++n) {
      const auto v = stable_laplace_transform(t, n);
      const double err = std::abs(v.value - std::exp(-t * std::sqrt(static_cast<double>(n))));
      worst = std::max(worst, err);
      r.add_upper("n=" + std::to_string(n) + ",t=" + fmt(t), err, tol);
    }
  }
  r.summary["max_abs_error"] = fmt(worst);
}

void run_kernel_mass(const ScenarioConfig& cfg, BoundReport& r) {
  const auto xs = option<std::vector<double>>(cfg, "x_values", {0.5, 1.0, 2.0});
  const auto ts = option<std::vector<double>>(cfg, "t_values", {0.25, 1.0});
  const double tol = cfg.tolerance("mass", 1e-6);
  r.threshold = tol;
  double min_seen = kInf;
  for (double x : xs) {
    for (double t : ts) {
      std::vector<double> xv(cfg.params.d, x);
      const auto m = l1_kernel_derivative(cfg.params, t, xv, 0);
      // l1 at order 0 is the mass only if the kernel is nonnegative, so also integrate p itself.
      const auto signed_mass = poisson_kernel_integral(cfg.params, t, xv, 0, [](std::span<const double>) { return 1.0; });
      const std::string at = "x=" + fmt(x) + ",t=" + fmt(t);
      r.add_upper("mass_error," + at, std::abs(signed_mass.value - 1.0), tol);
      r.add_row("min_kernel," + at, m.min_sample, 0.0, m.min_sample >= 0.0);
      min_seen = std::min(min_seen, m.min_sample);
    }
  }
  r.summary["min_kernel_sample"] = fmt(min_seen);
}

void run_spectral_vs_kernel(const ScenarioConfig& cfg, BoundReport& r) {
  const auto alphas = option<std::vector<double>>(cfg, "alphas", {-0.25, 0.5});
  const int k_max = option<int>(cfg, "k_max", 6);
  const auto xs = option<std::vector<double>>(cfg, "x_values", {0.1, 30.0});
  const auto lambdas = option<std::vector<double>>(cfg, "lambdas", {0.5, 1.5});
  const double t_heat = option<double>(cfg, "t_heat", 0.7);
  const double t_poisson = option<double>(cfg, "t_poisson", 0.5);
  const double tol = cfg.tolerance("rel", 1e-6);
  r.threshold = tol;
  double worst = 0.0;
  auto record = [&](const std::string& at, double got, double want) {
    const double e = rel_error(got, want);
    worst = std::max(worst, e);
    r.add_upper(at, e, tol);
  };
  for (double a : alphas) {
    const auto p = MultiIndexParams::make({a});
    for (int k = 0; k <= k_max; ++k) {
      Function f = [k, a](std::span<const double> y) { return laguerre_poly(k, a, y[0]); };
      for (double x : xs) {
        const std::vector<double> xv{x};
        const double lk = laguerre_poly(k, a, x);
        const double rk = std::sqrt(static_cast<double>(k));
        const std::string at = "alpha=" + fmt(a) + ",k=" + std::to_string(k) + ",x=" + fmt(x);
        record("heat," + at, heat_apply_kernel(f, p, t_heat, xv).value, std::exp(-t_heat * k) * lk);
        record("poisson," + at, poisson_apply(f, p, t_poisson, xv).value, std::exp(-t_poisson * rk) * lk);
        const KernelTrajectory traj(f, p, xv);
        for (double lam : lambdas) {
          const auto c = FracOpConfig::for_order(lam);
          const std::string al = at + ",lambda=" + fmt(lam);
          for (FracOp op : {FracOp::BesselPotential, FracOp::FractionalIntegral, FracOp::FractionalDerivative,
                            FracOp::BesselDerivative}) {
            if (k == 0 && op == FracOp::FractionalIntegral) continue;
            const double want = spectral_multiplier(op, lam).value(k) * lk;
            record(std::string(frac_op_name(op)) + "," + al, apply_on_trajectory(op, traj, c), want);
          }
        }
      }
    }
  }
  r.summary["max_rel_error"] = fmt(worst);
}

void run_lemma21(const ScenarioConfig& cfg, BoundReport& r) {
  const auto xs = option<std::vector<double>>(cfg, "x_values", {0.5, 1.0, 2.0});
  const auto orders = option<std::vector<int>>(cfg, "orders", {1, 2});
  const double t_min = option<double>(cfg, "t_min", 0.05);
  const double window = cfg.tolerance("spread", 50.0);
  const std::string sweep_csv = option<std::string>(cfg, "sweep_csv", "");
  r.threshold = window;
  std::vector<double> ts;
  for (double t = cfg.t_max; t >= t_min * (1.0 - 1e-12); t *= 0.5) ts.insert(ts.begin(), t);
  struct Cell {
    double t, x;
    int m;
  };
  std::vector<Cell> cells;
  for (int m : orders)
    for (double x : xs)
      for (double t : ts) cells.push_back({t, x, m});
  const auto values = parallel_map<KernelValue>(cells.size(), [&](std::size_t i) {
    const std::vector<double> xv(cfg.params.d, cells[i].x);
    return l1_kernel_derivative(cfg.params, cells[i].t, xv, cells[i].m);
  });
  std::vector<KernelSweepRow> sweep;
  Json per_order = Json::object();
  for (int m : orders) {
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].m != m) continue;
      const double q = std::pow(cells[i].t, m) * values[i].value;
      sweep.push_back({cells[i].t, cells[i].x, m, q, std::pow(cells[i].t, m) * values[i].abs_error});
      r.add_row("Q,m=" + std::to_string(m) + ",t=" + fmt(cells[i].t) + ",x=" + fmt(cells[i].x), q, kInf,
                std::isfinite(q) && q > 0.0);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    const double spread = hi / lo;
    r.add_upper("spread,m=" + std::to_string(m), spread, window);
    per_order[std::to_string(m)] = {{"sup", fmt(hi)}, {"inf", fmt(lo)}, {"spread", fmt(spread)}};
  }
  r.summary["orders"] = per_order;
  if (!sweep_csv.empty()) {
    std::ofstream os(sweep_csv);
    if (!os) throw std::runtime_error("cannot open sweep CSV: " + sweep_csv);
    write_kernel_sweep_csv(os, sweep);
  }
}

void run_prop31(const ScenarioConfig& cfg, BoundReport& r) {
  const double beta = std::isnan(cfg.beta) ? 0.5 : cfg.beta;
  const int k = option<int>(cfg, "k", smallest_integer_above(beta));
  const int l = option<int>(cfg, "l", k + 1);
  const auto rep = check_equivalence(cfg.test_function(), beta, k, l, cfg.grids(), cfg.tolerance("window", 50.0));
  r.rows = rep.rows;
  r.summary = rep.summary;
  r.threshold = rep.threshold;
}

void run_prop33(const ScenarioConfig& cfg, BoundReport& r) {
  const auto betas = std::isnan(cfg.beta) ? option<std::vector<double>>(cfg, "betas", {0.5, 0.9})
                                          : std::vector<double>{cfg.beta};
  const double tol = cfg.tolerance("slack", 0.05);
  r.threshold = 1.0 + tol;
  const auto f = cfg.test_function();
  for (double beta : betas) {
    const auto rep = check_approximation(f, beta, cfg.grids(), tol);
    for (auto row : rep.rows) {
      row.point = "beta=" + fmt(beta) + "," + row.point;
      r.rows.push_back(row);
    }
    auto summary = rep.summary;
    summary["max_ratio_times_beta"] = fmt(parse_real(rep.summary.at("max_ratio").get<std::string>()) * beta);
    r.summary["beta=" + fmt(beta)] = summary;
  }
}

struct TheoremShape {
  std::vector<FracOp> ops;
  double beta, lambda;
  double target_sign;  // +1: target beta + lambda, -1: beta - lambda
};

void run_theorem(const ScenarioConfig& cfg, const TheoremShape& shape, BoundReport& r) {
  const double beta = shape.beta, lambda = shape.lambda;
  const double target = beta + shape.target_sign * lambda;
  const double change_tol = cfg.tolerance("refinement", 0.10);
  const double path_tol = cfg.tolerance("path_rel", 1e-6);
  r.threshold = change_tol;
  const auto grids = cfg.grids();
  const LipschitzGrids fine{refine_t_grid(grids.t_grid), grids.x_grid};
  const auto family = cfg.test_family();
  Json fixtures = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& f = family[i];
    const auto src = lipschitz_seminorm(f, beta, grids);
    const auto src_fine = lipschitz_seminorm(f, beta, fine);
    for (FracOp op : shape.ops) {
      const auto tgt = operator_seminorm(op, f, lambda, target, grids);
      const auto tgt_fine = operator_seminorm(op, f, lambda, target, fine);
      const auto tgt_exact = operator_seminorm_spectral(op, f, lambda, target, grids);
      const double ratio = tgt.A_beta / src.norm();
      const double ratio_fine = tgt_fine.A_beta / src_fine.norm();
      const double change = std::abs(ratio_fine - ratio) / ratio;
      const std::string at = "f=" + std::to_string(i) + ",op=" + frac_op_name(op);
      r.add_row("ratio," + at, ratio, kInf, std::isfinite(ratio) && ratio > 0.0);
      r.add_upper("refinement_change," + at, change, change_tol);
      r.add_upper("quadrature_vs_spectral," + at, rel_error(tgt.A_beta, tgt_exact.A_beta), path_tol);
      fixtures.push_back({{"member", i},
                          {"op", frac_op_name(op)},
                          {"ratio", fmt(ratio)},
                          {"ratio_refined", fmt(ratio_fine)},
                          {"target_seminorm", fmt(tgt.A_beta)},
                          {"source_norm", fmt(src.norm())}});
    }
  }
  r.summary["beta"] = fmt(beta);
  r.summary["lambda"] = fmt(lambda);
  r.summary["target_beta"] = fmt(target);
  r.summary["ratios"] = fixtures;
}

TheoremShape theorem_shape(const ScenarioConfig& cfg) {
  const auto& s = cfg.scenario;
  auto pick = [&](double b, double l) {
    return std::pair{std::isnan(cfg.beta) ? b : cfg.beta, std::isnan(cfg.lambda) ? l : cfg.lambda};
  };
  if (s == "thm31") {
    auto [b, l] = pick(0.5, 1.0);
    return {{FracOp::BesselPotential}, b, l, +1.0};
  }
  if (s == "thm42") {
    auto [b, l] = pick(0.8, 0.3);
    return {{FracOp::FractionalDerivative}, b, l, -1.0};
  }
  if (s == "thm33") {
    auto [b, l] = pick(0.8, 0.3);
    return {{FracOp::BesselDerivative}, b, l, -1.0};
  }
  auto [b, l] = pick(2.3, 1.5);
  return {{FracOp::FractionalDerivative, FracOp::BesselDerivative}, b, l, -1.0};
}

LaguerreExpansion expansion_from_spec(const Json& spec, const MultiIndexParams& params, int degree,
                                      unsigned long long seed) {
  const std::string kind = spec.value("kind", "combination");
  if (kind == "random") {
    return LaguerreExpansion::random(params, spec.value("degree", degree), spec.value("seed", seed));
  }
  if (kind == "constant") {
    LaguerreExpansion e;
    e.params = params;
    e.coeffs[MultiIndex{std::vector<int>(params.d, 0)}] = spec.value("c", 1.0);
    return e;
  }
  if (kind == "basis") {
    return LaguerreExpansion::basis(params, MultiIndex{spec.at("k").get<std::vector<int>>()});
  }
  if (kind != "combination") throw ConfigError("function.kind must be combination, random, basis or constant");
  LaguerreExpansion e;
  e.params = params;
  Json terms = spec.contains("terms") ? spec.at("terms") : Json::array();
  if (terms.empty()) {
    std::vector<int> k1(params.d, 0), k3(params.d, 0);
    k1[0] = 1;
    k3[0] = 3;
    terms = Json::array({{{"k", k1}, {"c", 1.0}}, {{"k", k3}, {"c", 0.3}}});
  }
  for (const auto& t : terms) {
    MultiIndex k{t.at("k").get<std::vector<int>>()};
    if (static_cast<int>(k.k.size()) != params.d) throw ConfigError("function term index has wrong dimension");
    e.degree = std::max(e.degree, k.order());
    e.coeffs[k] += t.at("c").get<double>();
  }
  e.validate();
  return e;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog{
      {"subordination", "int_0^inf e^{-n s} g(t, s) ds = e^{-t sqrt n} for the one-sided stable-1/2 density g"},
      {"kernel-mass", "int p_t(x, y) dy = 1 and p_t >= 0 (P_t 1 = 1)"},
      {"spectral-vs-kernel",
       "kernel-path T_t, P_t, J_lambda, I_lambda, D_lambda and (I + sqrt L)^lambda act on L_k^alpha by the spectral "
       "eigenvalues"},
      {"lemma21", "t^m int |d^m/dt^m p_t(x, y)| dy is bounded uniformly in t and x (alpha > -1/2)"},
      {"prop31", "the seminorms A_{beta,k} and A_{beta,l} are comparable for integers k, l > beta"},
      {"prop33", "||P_t f - f||_inf <= A_beta(f) t^beta for 0 < beta < 1"},
      {"thm31", "J_lambda is bounded from Lip_beta to Lip_{beta+lambda}"},
      {"thm42", "D_lambda is bounded from Lip_beta to Lip_{beta-lambda} for 0 < lambda < beta < 1"},
      {"thm33", "(I + sqrt L)^lambda is bounded from Lip_beta to Lip_{beta-lambda} for 0 < lambda < beta < 1"},
      {"thm44", "D_lambda and (I + sqrt L)^lambda are bounded from Lip_beta to Lip_{beta-lambda} for 1 <= lambda < beta"},
      {"fdiff-identities",
       "forward-difference composition, iterated-integral and derivative identities, and the power-law difference "
       "bound"},
  };
  return catalog;
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  try {
    c.scenario = j.at("scenario").get<std::string>();
    if (j.contains("alpha")) c.params = MultiIndexParams::make(j.at("alpha").get<std::vector<double>>());
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
    if (j.contains("grids")) {
      const auto& g = j.at("grids");
      c.t_max = g.value("t_max", c.t_max);
      c.t_levels = g.value("t_levels", c.t_levels);
      c.x_min = g.value("x_min", c.x_min);
      c.x_max = g.value("x_max", c.x_max);
      c.x_points = g.value("x_points", c.x_points);
      c.degree = g.value("degree", c.degree);
    }
    c.family_size = j.value("family_size", c.family_size);
    c.seed = j.value("seed", c.seed);
    if (j.contains("function")) c.function = j.at("function");
    if (j.contains("tolerances")) c.tolerances = j.at("tolerances");
    if (j.contains("options")) c.options = j.at("options");
    if (j.contains("output")) {
      const auto& o = j.at("output");
      c.out_path = o.value("path", "");
      c.format = parse_format(o.value("format", "json"));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("scenario config: ") + ex.what());
  } catch (const DomainError& ex) {
    throw ConfigError(std::string("scenario config: ") + ex.what());
  }
  c.validate();
  return c;
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["alpha"] = params.alpha;
  if (!std::isnan(beta)) j["beta"] = beta;
  if (!std::isnan(lambda)) j["lambda"] = lambda;
  j["grids"] = {{"t_max", t_max}, {"t_levels", t_levels}, {"x_min", x_min},
                {"x_max", x_max}, {"x_points", x_points}, {"degree", degree}};
  j["family_size"] = family_size;
  j["seed"] = seed;
  j["function"] = function;
  j["tolerances"] = tolerances;
  j["options"] = options;
  j["output"] = {{"path", out_path}, {"format", format == ReportFormat::Json ? "json" : "csv"}};
  return j;
}

void ScenarioConfig::validate() const {
  bool known = false;
  for (const auto& s : scenario_catalog()) known = known || s.tag == scenario;
  if (!known) throw ConfigError("unknown scenario '" + scenario + "'");
  if (!(t_max > 0.0 && t_max <= 5.0)) throw ConfigError("grids.t_max must lie in (0, 5]");
  if (t_levels < 0 || t_levels > 30) throw ConfigError("grids.t_levels must lie in [0, 30]");
  if (!(x_min > 0.0 && x_max >= x_min)) throw ConfigError("grids need 0 < x_min <= x_max");
  if (x_points < 1) throw ConfigError("grids.x_points must be positive");
  if (degree < 0 || degree > 32) throw ConfigError("grids.degree must lie in [0, 32]");
  if (family_size < 0) throw ConfigError("family_size must be nonnegative");
  if (!tolerances.is_object()) throw ConfigError("tolerances must be an object");
  if (!options.is_object()) throw ConfigError("options must be an object");
  const bool has_b = !std::isnan(beta), has_l = !std::isnan(lambda);
  if (has_b && !(beta > 0.0)) throw ConfigError("beta must be positive");
  if (has_l && !(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (scenario == "thm42" || scenario == "thm33") {
    const double b = has_b ? beta : 0.8, l = has_l ? lambda : 0.3;
    if (!(0.0 < l && l < b && b < 1.0)) throw ConfigError(scenario + " requires 0 < lambda < beta < 1");
  }
  if (scenario == "thm44") {
    const double b = has_b ? beta : 2.3, l = has_l ? lambda : 1.5;
    if (!(1.0 <= l && l < b)) throw ConfigError("thm44 requires 1 <= lambda < beta");
  }
  if (scenario == "prop33" && has_b && !(beta < 1.0)) throw ConfigError("prop33 requires 0 < beta < 1");
  if (scenario.rfind("thm", 0) == 0 || scenario == "lemma21") {
    if (!params.half_regime) throw ConfigError(scenario + " requires every alpha_j > -1/2");
  }
  if (scenario == "prop31") {
    const double b = has_b ? beta : 0.5;
    const int k = options.value("k", smallest_integer_above(b));
    const int l = options.value("l", k + 1);
    if (!(k > b && l > b)) throw ConfigError("prop31 requires k > beta and l > beta");
  }
}

LipschitzGrids ScenarioConfig::grids() const {
  return LipschitzGrids{dyadic_t_grid(t_max, t_levels), log_x_grid(params.d, x_points, x_min, x_max)};
}

double ScenarioConfig::tolerance(const std::string& name, double fallback) const {
  if (!tolerances.contains(name)) return fallback;
  const auto& v = tolerances.at(name);
  if (!v.is_number()) throw ConfigError("tolerance '" + name + "' must be a number");
  return v.get<double>();
}

LaguerreExpansion ScenarioConfig::test_function() const {
  return expansion_from_spec(function, params, degree, seed);
}

std::vector<LaguerreExpansion> ScenarioConfig::test_family() const {
  std::vector<LaguerreExpansion> out{test_function()};
  for (int i = 0; i < family_size; ++i) {
    out.push_back(LaguerreExpansion::random(params, degree, seed + static_cast<unsigned long long>(i)));
  }
  return out;
}

BoundReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  BoundReport r;
  r.scenario = cfg.scenario;
  for (const auto& s : scenario_catalog()) {
    if (s.tag == cfg.scenario) r.claim = s.claim;
  }
  r.config = cfg.to_json();
  const auto& s = cfg.scenario;
  if (s == "subordination") run_subordination(cfg, r);
  else if (s == "kernel-mass") run_kernel_mass(cfg, r);
  else if (s == "spectral-vs-kernel") run_spectral_vs_kernel(cfg, r);
  else if (s == "lemma21") run_lemma21(cfg, r);
  else if (s == "prop31") run_prop31(cfg, r);
  else if (s == "prop33") run_prop33(cfg, r);
  else if (s == "fdiff-identities") run_fdiff(cfg, r);
  else run_theorem(cfg, theorem_shape(cfg), r);
  r.finalize();
  r.summary["rows"] = r.rows.size();
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace laguerre
