// Acceptance suite: one PASS/FAIL line per criterion, exit nonzero on any
// failure. Expected constants were computed independently with extended
// precision and frozen here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "lrc/complexity.hpp"
#include "lrc/correlator.hpp"
#include "lrc/geometry.hpp"
#include "lrc/hessian.hpp"
#include "lrc/kacrice.hpp"
#include "lrc/rmt.hpp"

using namespace lrc;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::numbers::sqrt2;
int g_failures = 0;

void report(int k, bool ok, const std::string& desc) {
  std::printf("ACCEPTANCE %d: %s — %s\n", k, ok ? "PASS" : "FAIL",
              desc.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double psi_quadrature(double x) {
  const int n = 400000;
  double acc = 0;
  const double h = std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    const double th = -std::numbers::pi / 2 + (i + 0.5) * h;
    const double t = kSqrt2 * std::sin(th);
    acc += 2.0 * std::cos(th) * std::cos(th) / std::numbers::pi *
           std::log(std::fabs(x - t));
  }
  return acc * h;
}

double j1_quadrature(double x) {
  const int n = 200000;
  const double a = x, b = -kSqrt2;
  const double h = (b - a) / n;
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    const double t = a + (i + 0.5) * h;
    acc += std::sqrt(t * t - 2.0);
  }
  return acc * h;
}

// ---- criteria --------------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = Correlator::log_kind(1.0);
  const double expected[3] = {0.6022207096239319, 0.09657359027997265, 0.0};
  const double mus[3] = {0.5, 1.0, 2.0};
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const double cc = complexity_constrained(c, mus[i], {}).value;
    const double tc = total_complexity(c, mus[i], Growth::xi(0.0)).value;
    ok = ok && std::fabs(cc - tc) <= 1e-6 &&
         std::fabs(cc - expected[i]) <= 1e-6;
  }
  ok = ok && seconds_since(t0) < 10.0;
  report(1, ok,
         "constrained complexity equals the closed-form total complexity "
         "for mu in {0.5, 1, 2} to 1e-6, within 10 s");
}

void criterion_2() {
  const auto c = Correlator::log_kind(1.0);
  const double j = kSqrt2;
  const double lo = complexity_constrained(c, j * (1 - 1e-12), {}).value;
  const double hi = complexity_constrained(c, j * (1 + 1e-12), {}).value;
  const CriticalLocus llo = closed_form_optimum(c, j * (1 - 1e-9), 0.0, kInf);
  const CriticalLocus lhi = closed_form_optimum(c, j * (1 + 1e-9), 0.0, kInf);
  const bool ok = std::fabs(lo - hi) <= 1e-9 &&
                  std::fabs(llo.y_star + j) <= 1e-4 &&
                  std::fabs(lhi.y_star + j) <= 1e-4;
  report(2, ok,
         "value is continuous across the mu = J phase boundary (1e-9) and "
         "y* reaches -sqrt2 from both sides");
}

void criterion_3() {
  const auto c = Correlator::log_kind(1.0);
  DomainSpec dom;
  dom.R2 = 2.0;
  const double v = complexity_constrained(c, 0.0, dom).value;
  report(3, std::fabs(v - 1.0397207708399179) <= 1e-6,
         "mu = 0 complexity with outer radius 2 equals 1.039721 to 1e-6");
}

void criterion_4() {
  bool ok = true;
  ok = ok && std::fabs(rmt::semicircle_log_potential(0.0) -
                       (-0.8465735902799727)) <= 1e-6;
  ok = ok && std::fabs(rmt::semicircle_log_potential(2.0) -
                       0.62058643436647509) <= 1e-6;
  for (double x : {0.0, 2.0, -1.3})
    ok = ok && std::fabs(rmt::semicircle_log_potential(x) -
                         psi_quadrature(x)) <= 1e-5;
  ok = ok && std::fabs(rmt::rate_function_j1(-kSqrt2)) <= 1e-12;
  ok = ok &&
       std::fabs(rmt::rate_function_j1(-2.0) - 0.53283997535355221) <= 1e-7;
  // midpoint quadrature resolves the edge singularity to ~1e-9 at x = -2
  // and degrades as the interval grows; tolerances sized accordingly
  ok = ok && std::fabs(rmt::rate_function_j1(-2.0) - j1_quadrature(-2.0)) <=
                 1e-9;
  for (double x : {-1.7, -4.0})
    ok = ok && std::fabs(rmt::rate_function_j1(x) - j1_quadrature(x)) <= 1e-8;
  report(4, ok,
         "semicircle log-potential and rate function J1 match independent "
         "quadrature and frozen values");
}

void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = Correlator::log_kind(1.0);
  const auto model = hessian::make_model(c, 1.0, 1.0, 0.0, 6);
  const auto rep = hessian::verify_conditional_covariance(model, 1000000, 61);
  bool ok = rep.passed;
  // Schur identity on 1e4 draws, checked through the determinant pipeline:
  // rebuild log|det| from the spectral data and compare.
  const double root4 = std::sqrt(-4.0 * model.params.dpp0);
  const double cn = std::sqrt(5.0 / 6.0);
  double worst = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto h = hessian::sample_conditional_hessian(model, 100000 + s);
    double direct = std::log(std::fabs(h.z1p -
        [&] {
          double acc = 0;
          for (int k = 0; k < 5; ++k)
            acc += h.xi[k] * h.xi[k] /
                   (root4 * (cn * h.goe_spectrum.eigenvalues[k] - h.z3p));
          return acc;
        }()));
    for (int k = 0; k < 5; ++k)
      direct +=
          std::log(std::fabs(root4 * (cn * h.goe_spectrum.eigenvalues[k] -
                                      h.z3p)));
    worst = std::max(worst, std::fabs(direct - h.log_abs_det) /
                                std::max(1.0, std::fabs(direct)));
  }
  ok = ok && worst <= 1e-8;
  ok = ok && seconds_since(t0) < 120.0;
  report(5, ok,
         "conditional Hessian moments match the analytic table within 4 SE "
         "(1e6 draws) and the Schur determinant identity holds to 1e-8");
}

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = Correlator::atomic_mixture({{1.0, 1.0}}, 0.0);
  DomainSpec dom;
  dom.R2 = 3.0;
  kacrice::McOptions mc;
  mc.goe_samples = 2000;
  const auto kr = kacrice::kac_rice_integral(c, 1.0, dom, 2, mc, 7);
  const int fields = 400;
  double acc = 0, acc2 = 0;
  kacrice::CensusOptions co;
  co.grid_density = 32;
  for (int s = 0; s < fields; ++s) {
    const auto f = kacrice::sample_field(c, 1.0, 2, 1024, 100000 + s);
    const auto census =
        kacrice::count_critical_points(f, -kInf, kInf, 0.0, 3.0, co);
    acc += static_cast<double>(census.count_in);
    acc2 += static_cast<double>(census.count_in) *
            static_cast<double>(census.count_in);
  }
  const double mean = acc / fields;
  const double se = std::sqrt((acc2 / fields - mean * mean) / fields);
  const double comb = std::hypot(se, kr.stderr_);
  const bool ok = !kr.boundary_warning &&
                  std::fabs(kr.estimate - mean) <= 3 * comb &&
                  seconds_since(t0) < 600.0;
  std::printf("  [6] kac-rice %.4f +- %.4f vs census %.4f +- %.4f\n",
              kr.estimate, kr.stderr_, mean, se);
  report(6, ok,
         "N=2 Kac-Rice integral agrees with a 400-field brute-force critical "
         "point census within 3 combined SE, within 10 min");
}

void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = Correlator::atomic_mixture({{1.0, 1.0}}, 0.0);
  DomainSpec dom;
  dom.R2 = 4.0;
  const double limit = complexity_constrained(c, 1.0, dom).value;
  kacrice::McOptions mc;
  mc.goe_samples = 2000;
  bool ok = true;
  double prev_gap = kInf;
  for (int n : {8, 16, 32, 64}) {
    const auto kr = kacrice::kac_rice_integral(c, 1.0, dom, n, mc, 7000 + n);
    const double gap = std::fabs(kr.log_estimate / n - limit);
    std::printf("  [7] N=%2d per-N rate %.6f gap %.6f\n", n,
                kr.log_estimate / n, gap);
    ok = ok && !kr.boundary_warning && gap < prev_gap;
    prev_gap = gap;
    if (n == 64) ok = ok && gap <= 0.1;
  }
  ok = ok && seconds_since(t0) < 1800.0;
  report(7, ok,
         "(1/N) log Kac-Rice converges monotonically to the complexity "
         "limit over N in {8, 16, 32, 64}, N=64 gap <= 0.1, within 30 min");
}

void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = default_probe_grid();
  auto diag = [&](const Correlator& c, const std::string& name) {
    const ValidityReport rep = c.check_assumption_iv(grid);
    for (const CheckRow& r : rep.diagnostics)
      if (r.name == name) return r.passed;
    return false;
  };
  bool ok = diag(Correlator::log_kind(1.0), "btbd3");
  ok = ok && diag(Correlator::power(0.5, 1.0), "btbd3");
  ok = ok && !diag(Correlator::sinh_example(), "btbd3");
  ok = ok && diag(Correlator::sinh_example(), "btbd");
  ok = ok && Correlator::sinh_example().check_assumption_iv(grid).overall;
  ok = ok && seconds_since(t0) < 1.0;
  report(8, ok,
         "sufficient-condition diagnostics: log and power satisfy btbd3, "
         "sinh fails btbd3 but passes btbd, within 1 s");
}

void criterion_9() {
  const auto c = Correlator::log_kind(1.0);
  const LandscapeParams p = landscape_params(c, 1.0, 1e-3);
  const double t2 = p.frak_t * p.frak_t;
  const double at = p.alpha_rho_sq() * p.frak_t;
  const double a2 = p.alpha_rho_sq() * p.alpha_rho_sq();
  const bool ok = std::fabs(t2 - 2.0 / 3.0) <= 1e-4 * (2.0 / 3.0) &&
                  std::fabs(at - 4.0 / 3.0) <= 1e-4 * (4.0 / 3.0) &&
                  std::fabs(a2 - 8.0 / 3.0) <= 1e-4 * (8.0 / 3.0);
  report(9, ok,
         "small-radius geometry reaches the universal limit values "
         "(2/3, 4/3, 8/3) to 1e-4 relative at rho = 1e-3");
}

void criterion_10() {
  const auto c = Correlator::log_kind(1.0);
  bool ok = true;
  // envelope identity: coarse scan plus golden refinement in u
  for (double rho : {0.5, 1.0, 2.0})
    for (double y : {-1.5, -0.5}) {
      double best = -kInf, best_u = 0;
      for (double u = -6.0; u <= 6.0; u += 0.002) {
        const double p = psi_star(c, 1.0, rho, u, y);
        if (p > best) best = p, best_u = u;
      }
      double a = best_u - 0.004, b = best_u + 0.004;
      for (int i = 0; i < 60; ++i) {
        const double m1 = a + 0.381966 * (b - a);
        const double m2 = b - 0.381966 * (b - a);
        if (psi_star(c, 1.0, rho, m1, y) < psi_star(c, 1.0, rho, m2, y))
          a = m1;
        else
          b = m2;
      }
      best = psi_star(c, 1.0, rho, 0.5 * (a + b), y);
      ok = ok && std::fabs(psi_star_reduced(c, 1.0, rho, y) - best) <= 1e-7;
    }
  // u <-> v round trip
  for (double rho : {0.4, 1.7}) {
    const LandscapeParams p = landscape_params(c, 1.0, rho);
    for (double u : {-1.0, 0.3}) {
      const ConditionalMeans cm = conditional_means(p, u);
      ok = ok && std::fabs(u_of_v(p, cm.v) - u) <= 1e-12;
    }
  }
  // Psi* evenness and tail bound
  for (double x = 0.0; x <= 4.0; x += 0.03) {
    ok = ok && std::fabs(rmt::semicircle_log_potential(x) -
                         rmt::semicircle_log_potential(-x)) <= 1e-14;
    ok = ok && rmt::semicircle_log_potential(x) - x * x / 2 <=
                   -0.5 - std::log(2.0) / 2 + 1e-12;
  }
  // monotone domain growth, up to variational-optimizer noise (~1e-11)
  double prev = -kInf;
  for (double r2 : {0.7, 1.0, 2.0, 8.0}) {
    DomainSpec d;
    d.R2 = r2;
    const double v = complexity_constrained(c, 1.0, d).value;
    ok = ok && v >= prev - 1e-9;
    prev = v;
  }
  // determinism
  const CriticalLocus a = optimize_psi(c, 1.0, {});
  const CriticalLocus b = optimize_psi(c, 1.0, {});
  ok = ok && a.psi_value == b.psi_value && a.rho_star == b.rho_star;
  const auto ca = Correlator::atomic_mixture({{1.0, 1.0}}, 0.0);
  DomainSpec dom;
  dom.R2 = 3.0;
  kacrice::McOptions mc;
  const auto k1 = kacrice::kac_rice_integral(ca, 1.0, dom, 2, mc, 5);
  const auto k2 = kacrice::kac_rice_integral(ca, 1.0, dom, 2, mc, 5);
  ok = ok && k1.estimate == k2.estimate;
  ok = ok && rmt::sample_goe(32, 9).eigenvalues ==
                 rmt::sample_goe(32, 9).eigenvalues;
  report(10, ok,
         "property suite: envelope identity, u/v round trip, Psi* symmetry "
         "and tail bound, monotone domain growth, determinism");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures) {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
