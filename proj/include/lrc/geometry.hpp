#ifndef LRC_GEOMETRY_HPP
#define LRC_GEOMETRY_HPP

#include <stdexcept>
#include <string>

#include "lrc/correlator.hpp"

namespace lrc {

// Thrown when the strict Assumption-IV inequalities fail at a given rho.
class assumption_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All rho- and mu-dependent scalars of the conditional-law layer, stored
// N-free: variances here are N times the per-entry variances, so downstream
// code reintroduces 1/N explicitly.
struct LandscapeParams {
  double rho = 0;
  double mu = 0;
  double alpha = 0;         // <= 0
  double frak_t = 0;        // <= 0 (beta in the correlator parametrization)
  double n_sigma1_sq = 0;   // -4D''(0) - (alpha rho^2 + t) alpha rho^2
  double n_sigma2_sq = 0;   // -2D''(0) - (alpha rho^2 + t) t
  double m_Y = 0;
  double n_sigmaY_sq = 0;   // D(rho^2) - D'(rho^2)^2 rho^2 / D'(0)
  double dpp0 = 0;          // D''(0) < 0
  double dp0 = 0;           // D'(0) > 0

  double alpha_rho_sq() const { return alpha * rho * rho; }
};

struct ConditionalMeans {
  double m1 = 0;
  double m2 = 0;
  double v = 0;
};

// Below this rho the exact formulas are replaced by their small-rho limits;
// a linear blend over one decade joins the two branches.
inline constexpr double kRhoSwitch = 1e-3;

LandscapeParams landscape_params(const Correlator& c, double mu, double rho);

ConditionalMeans conditional_means(const LandscapeParams& p, double u);

// Inverse of the v map: u = m_Y + v * sqrt(N sigma_Y^2).
double u_of_v(const LandscapeParams& p, double v);

}  // namespace lrc

#endif
