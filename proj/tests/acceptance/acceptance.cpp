// Acceptance suite: one PASS/FAIL line per criterion, exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "laguerre/fractional.hpp"
#include "laguerre/kernels.hpp"
#include "laguerre/scenarios.hpp"

using namespace laguerre;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o = {false, std::string("exception: ") + ex.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0 && secs >= time_limit) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s: %s (%.2f s", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  if (time_limit > 0.0) std::printf(", limit %.0f s", time_limit);
  std::printf(")\n");
  std::fflush(stdout);
}

BoundReport run(const std::string& json) { return run_scenario(ScenarioConfig::from_json(nlohmann::json::parse(json))); }

double summary_real(const nlohmann::ordered_json& j) { return parse_real(j.get<std::string>()); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failing_rows(const BoundReport& r) {
  int n = 0;
  for (const auto& row : r.rows) n += row.pass ? 0 : 1;
  return n;
}

}  // namespace

int main() {
  criterion(1, "subordination Laplace identity, n <= 10, t in {0.1, 1, 5}, abs err <= 1e-8", 5.0, [] {
    const auto r = run(R"({"scenario": "subordination"})");
    return Outcome{r.pass, "max abs err " + sci(summary_real(r.summary.at("max_abs_error")))};
  });

  criterion(2, "kernel-path T_t, P_t, J, I, D, Bessel-D on L_k (k <= 6) vs eigenvalues, rel err <= 1e-6", 120.0, [] {
    const auto r = run(R"({"scenario": "spectral-vs-kernel"})");
    return Outcome{r.pass, std::to_string(r.rows.size()) + " checks, max rel err " +
                               sci(summary_real(r.summary.at("max_rel_error")))};
  });

  criterion(3, "Poisson kernel mass within 1e-6 and nonnegative at every node", 0.0, [] {
    const auto r = run(R"({"scenario": "kernel-mass"})");
    double worst = 0.0;
    for (const auto& row : r.rows) {
      if (row.point.rfind("mass_error", 0) == 0) worst = std::max(worst, row.measured);
    }
    return Outcome{r.pass, "max |mass - 1| " + sci(worst) + ", min kernel sample " +
                               sci(summary_real(r.summary.at("min_kernel_sample")))};
  });

  criterion(4, "t^m int |d^m p_t| dy, m = 1, 2: finite, max/min < 50 on the dyadic grid", 600.0, [] {
    const auto r = run(R"({"scenario": "lemma21"})");
    std::string detail;
    for (const auto& [m, v] : r.summary.at("orders").items()) {
      detail += (detail.empty() ? "" : "; ") + std::string("m=") + m + " sup " + sci(summary_real(v.at("sup"))) +
                " spread " + sci(summary_real(v.at("spread")));
    }
    return Outcome{r.pass, detail};
  });

  criterion(5, "D o I = Pi_0 and Bessel-D o J = I per coefficient <= 1e-6, spectral and quadrature paths", 0.0, [] {
    double worst_spec = 0.0, worst_quad = 0.0;
    for (double alpha : {-0.25, 0.5}) {
      const auto p = MultiIndexParams::make({alpha});
      for (unsigned long long seed : {1ULL, 2ULL, 3ULL}) {
        const auto f = LaguerreExpansion::random(p, 6, seed);
        const auto z = pi0(f);
        for (double lam : {0.3, 1.0, 1.5}) {
          const auto di_s = spectral_apply(spectral_multiplier(FracOp::FractionalDerivative, lam),
                                           spectral_apply(spectral_multiplier(FracOp::FractionalIntegral, lam), z));
          const auto bj_s = spectral_apply(spectral_multiplier(FracOp::BesselDerivative, lam),
                                           spectral_apply(spectral_multiplier(FracOp::BesselPotential, lam), f));
          const auto di_q = apply_by_quadrature(FracOp::FractionalDerivative,
                                                apply_by_quadrature(FracOp::FractionalIntegral, z, lam), lam);
          const auto bj_q = apply_by_quadrature(FracOp::BesselDerivative,
                                                apply_by_quadrature(FracOp::BesselPotential, f, lam), lam);
          for (const auto& [k, c] : f.coeffs) {
            worst_spec = std::max({worst_spec, std::abs(di_s.coeff(k) - z.coeff(k)), std::abs(bj_s.coeff(k) - c)});
            worst_quad = std::max({worst_quad, std::abs(di_q.coeff(k) - z.coeff(k)), std::abs(bj_q.coeff(k) - c)});
          }
        }
      }
    }
    return Outcome{worst_spec <= 1e-6 && worst_quad <= 1e-6,
                   "max coeff err spectral " + sci(worst_spec) + ", quadrature " + sci(worst_quad)};
  });

  criterion(6, "||P_t f - f|| <= 1.05 A_beta(f) t^beta, f = L_1 + 0.3 L_3, beta in {0.5, 0.9}", 0.0, [] {
    const auto r = run(R"({"scenario": "prop33"})");
    std::string detail;
    for (const auto& [b, v] : r.summary.items()) {
      if (!v.is_object()) continue;
      detail += (detail.empty() ? "" : "; ") + b + " max ratio " + sci(summary_real(v.at("max_ratio")));
    }
    return Outcome{r.pass, detail + "; " + std::to_string(failing_rows(r)) + " of " + std::to_string(r.rows.size()) +
                               " rows over"};
  });

  criterion(7, "theorem sweeps: ratios finite, < 10% change under t-grid refinement, match fixtures", 1200.0, [] {
    std::ifstream in(std::string(LAGUERRE_FIXTURE_DIR) + "/theorem_ratios.json");
    if (!in) return Outcome{false, "fixture file missing"};
    const auto fixtures = nlohmann::json::parse(in);
    bool pass = true;
    double worst_change = 0.0, worst_drift = 0.0;
    int ratios = 0;
    for (const char* tag : {"thm31", "thm42", "thm33", "thm44"}) {
      const auto r = run(std::string(R"({"scenario": ")") + tag + "\"}");
      pass = pass && r.pass;
      for (const auto& row : r.rows) {
        if (row.point.rfind("refinement_change", 0) == 0) worst_change = std::max(worst_change, row.measured);
      }
      const auto& got = r.summary.at("ratios");
      const auto& want = fixtures.at(tag).at("ratios");
      if (got.size() != want.size()) return Outcome{false, std::string(tag) + " fixture size mismatch"};
      for (std::size_t i = 0; i < got.size(); ++i) {
        const double g = summary_real(got[i].at("ratio"));
        const double w = parse_real(want[i].at("ratio").get<std::string>());
        worst_drift = std::max(worst_drift, std::abs(g - w) / std::abs(w));
        ++ratios;
      }
    }
    pass = pass && worst_drift <= 1e-9;
    return Outcome{pass, std::to_string(ratios) + " ratios, max refinement change " + sci(worst_change) +
                             ", max fixture drift " + sci(worst_drift)};
  });

  criterion(8, "forward-difference identities (fp eps on polynomials) and power-law difference bound", 0.0, [] {
    const auto r = run(R"({"scenario": "fdiff-identities"})");
    return Outcome{r.pass, std::to_string(r.rows.size()) + " checks, max power-bound ratio / C " +
                               sci(summary_real(r.summary.at("power_bound_max_ratio_over_C")))};
  });

  criterion(9, "exponential moment identity <= 1e-9 rel; t * stable-derivative integral constant <= 1e-6", 0.0, [] {
    double worst_id = 0.0;
    for (const auto& p : {MultiIndexParams::make({0.5}), MultiIndexParams::make({-0.25, 1.5}),
                          MultiIndexParams::make({0.0, 0.5, 2.0})}) {
      for (double r : {0.2, 0.5, 0.9}) {
        const std::vector<double> x(p.d, 1.3);
        worst_id = std::max(worst_id, exponential_moment_identity(p, r, x).rel_error);
      }
    }
    const double exact = stable_derivative_l1_exact();
    double lo = INFINITY, hi = -INFINITY, worst_const = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.05 * std::pow(100.0, i / 20.0);
      const double v = stable_derivative_l1_scaled(t);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      worst_const = std::max(worst_const, std::abs(v - exact) / exact);
    }
    const double spread = (hi - lo) / exact;
    return Outcome{worst_id <= 1e-9 && spread <= 1e-6 && worst_const <= 1e-6,
                   "identity rel err " + sci(worst_id) + ", constant " + sci(exact) + " with rel spread " +
                       sci(spread) + ", max rel dev from closed form " + sci(worst_const)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "NOT ALL PASS", failures);
  return failures == 0 ? 0 : 1;
}
