#include "lrc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lrc {

namespace {

struct Core {
  double alpha_rho_sq;  // alpha * rho^2
  double frak_t;
  double n_sigmaY_sq;   // S = D(r) - D'(r)^2 r / D'(0)
};

Core exact_core(const Correlator& c, double rho) {
  const double r = rho * rho;
  const double d0 = c.eval(r);
  const double d1 = c.derivative(r, 1);
  const double d2 = c.derivative(r, 2);
  const double d1_0 = c.dp0();
  const double S = d0 - d1 * d1 * r / d1_0;
  const double rootS = std::sqrt(S);
  return {2.0 * d2 * r / rootS, (d1 - d1_0) / rootS, S};
}

Core limit_core(const Correlator& c, double rho) {
  const double d2_0 = c.dpp0();
  const double r = rho * rho;
  return {-std::sqrt(-(8.0 / 3.0) * d2_0), -std::sqrt(-(2.0 / 3.0) * d2_0),
          -1.5 * d2_0 * r * r};
}

}  // namespace

LandscapeParams landscape_params(const Correlator& c, double mu, double rho) {
  if (!(rho > 0)) throw std::domain_error("landscape_params: rho must be > 0");

  Core core{};
  if (rho <= kRhoSwitch) {
    core = limit_core(c, rho);
  } else if (rho >= 10.0 * kRhoSwitch) {
    core = exact_core(c, rho);
  } else {
    const Core lim = limit_core(c, rho);
    const Core ex = exact_core(c, rho);
    const double w = std::log(rho / kRhoSwitch) / std::log(10.0);
    core = {(1 - w) * lim.alpha_rho_sq + w * ex.alpha_rho_sq,
            (1 - w) * lim.frak_t + w * ex.frak_t,
            (1 - w) * lim.n_sigmaY_sq + w * ex.n_sigmaY_sq};
  }

  LandscapeParams p;
  p.rho = rho;
  p.mu = mu;
  p.dp0 = c.dp0();
  p.dpp0 = c.dpp0();
  p.frak_t = core.frak_t;
  p.alpha = core.alpha_rho_sq / (rho * rho);
  p.n_sigmaY_sq = core.n_sigmaY_sq;
  const double art = core.alpha_rho_sq;  // alpha rho^2
  p.n_sigma1_sq = -4.0 * p.dpp0 - (art + p.frak_t) * art;
  p.n_sigma2_sq = -2.0 * p.dpp0 - (art + p.frak_t) * p.frak_t;

  const double r = rho * rho;
  p.m_Y = mu * r / 2.0 - mu * c.derivative(r, 1) * r / p.dp0;

  if (!(p.n_sigma2_sq > 0))
    throw assumption_error(
        "Assumption IV violated at rho=" + std::to_string(rho) +
        ": -2D''(0) > (alpha rho^2 + t) t fails");
  if (!(p.n_sigma1_sq > 0))
    throw assumption_error(
        "Assumption IV violated at rho=" + std::to_string(rho) +
        ": -4D''(0) > (alpha rho^2 + t) alpha rho^2 fails");
  return p;
}

ConditionalMeans conditional_means(const LandscapeParams& p, double u) {
  ConditionalMeans cm;
  cm.v = (u - p.m_Y) / std::sqrt(p.n_sigmaY_sq);
  cm.m1 = p.mu + cm.v * (p.alpha_rho_sq() + p.frak_t);
  cm.m2 = p.mu + cm.v * p.frak_t;
  return cm;
}

double u_of_v(const LandscapeParams& p, double v) {
  return p.m_Y + v * std::sqrt(p.n_sigmaY_sq);
}

}  // namespace lrc
