#include "lrc/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lrc/kernels.hpp"
#include "lrc/rng.hpp"

namespace lrc::rmt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::numbers::sqrt2;
}  // namespace

EmpiricalSpectrum sample_goe(int n, std::uint64_t seed) {
  if (n < 1 || n > 4096)
    throw std::domain_error("sample_goe: n must be in [1, 4096]");
  rng::Engine eng(seed);
  Eigen::MatrixXd m(n, n);
  const double off = 1.0 / std::sqrt(2.0 * n);  // sd of off-diagonal entries
  const double diag = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    m(i, i) = diag * eng.gaussian();
    for (int j = i + 1; j < n; ++j) {
      const double v = off * eng.gaussian();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  EmpiricalSpectrum s;
  s.n = n;
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + n);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

double semicircle_log_potential(double x) {
  const double a = std::fabs(x);
  const double base = 0.5 * x * x - 0.5 - 0.5 * std::numbers::ln2;
  if (a <= kSqrt2) return base;
  const double q = std::sqrt(a * a - 2.0);
  return base - 0.5 * std::numbers::ln2 - 0.5 * a * q + std::log(a + q);
}

double log_potential(const EmpiricalSpectrum& s, double x) {
  if (s.n <= 0 || s.eigenvalues.size() != static_cast<size_t>(s.n))
    throw std::domain_error("log_potential: malformed spectrum");
  // (1/n) sum log|1*lambda_i - x|; the kernel returns -inf on an exact atom.
  const kernels::LogAbsProd p =
      kernels::log_abs_prod_affine(s.eigenvalues, 1.0, x);
  return p.log_abs / s.n;
}

double rate_function_j1(double x) {
  if (x > -kSqrt2) return kInf;
  const double a = -x;  // a >= sqrt2
  const double q = std::sqrt(a * a - 2.0);
  return 0.5 * std::numbers::ln2 + 0.5 * a * q - std::log(a + q);
}

double bl_distance_to_semicircle(const EmpiricalSpectrum& s) {
  // Dictionary: 64 ramps f_c(x) = clip((x - c)/h, 0, 1) with centers spread
  // over [-K, K]; each is 1/h-Lipschitz and bounded by 1, so scaling by
  // min(1, h) gives a valid bounded-Lipschitz test function.
  constexpr int kDict = 64;
  constexpr double kK = 2.0;
  constexpr double kH = 0.25;

  // Semicircle expectation of each ramp by Simpson quadrature on [-s2, s2].
  constexpr int kQuad = 2000;  // even
  double worst = 0.0;
  for (int d = 0; d < kDict; ++d) {
    const double c = -kK + 2.0 * kK * d / (kDict - 1);
    auto ramp = [&](double t) {
      return std::clamp((t - c) / kH, 0.0, 1.0);
    };
    double sc = 0.0;
    const double hstep = 2.0 * kSqrt2 / kQuad;
    for (int i = 0; i <= kQuad; ++i) {
      const double t = -kSqrt2 + i * hstep;
      const double dens = std::sqrt(std::max(2.0 - t * t, 0.0)) /
                          std::numbers::pi;
      const double w = (i == 0 || i == kQuad) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      sc += w * ramp(t) * dens;
    }
    sc *= hstep / 3.0;
    double emp = 0.0;
    for (double lam : s.eigenvalues) emp += ramp(lam);
    emp /= s.n;
    worst = std::max(worst, std::min(1.0, kH) * std::fabs(emp - sc));
  }
  return worst;
}

}  // namespace lrc::rmt
