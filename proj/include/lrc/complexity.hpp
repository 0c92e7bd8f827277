#ifndef LRC_COMPLEXITY_HPP
#define LRC_COMPLEXITY_HPP

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lrc/correlator.hpp"
#include "lrc/geometry.hpp"

namespace lrc {

// Feasible region for the constrained complexity: shell radii (R1, R2) and an
// open interval E of landscape values.
struct DomainSpec {
  double R1 = 0.0;
  double R2 = std::numeric_limits<double>::infinity();
  double e_lo = -std::numeric_limits<double>::infinity();
  double e_hi = std::numeric_limits<double>::infinity();
};

enum class Regime { SubcriticalMu, SupercriticalMu, ZeroMu };

struct BoundaryHit {
  bool rho = false;
  bool u = false;
};

struct NearOptimum {
  double rho = 0, u = 0, y = 0, psi = 0;
};

struct CriticalLocus {
  double rho_star = 0;
  double u_star = 0;
  double y_star = 0;
  double v_star = 0;
  double psi_value = 0;
  Regime regime = Regime::SubcriticalMu;
  BoundaryHit boundary_hit;
  std::vector<NearOptimum> near_optima;  // diagnostics: ties within 1e-9
};

enum class ComplexityMethod { ClosedForm, Variational };

struct ComplexityResult {
  double value = 0;
  std::optional<CriticalLocus> locus;
  ComplexityMethod method = ComplexityMethod::ClosedForm;
};

// Volume-growth exponent of the domain sequence: Xi for mu != 0, Theta for
// mu = 0.
struct Growth {
  enum class Kind { Xi, Theta } kind = Kind::Xi;
  double value = 0.0;
  static Growth xi(double v) { return {Kind::Xi, v}; }
  static Growth theta(double v) { return {Kind::Theta, v}; }
};

struct OptimizerOptions {
  double tol = 1e-8;
  int grid_rho = 96;
  int grid_u = 96;
  int top_k = 8;
  int max_iters = 200;
};

// Thrown when the variational optimizer exhausts max_iters; carries the best
// locus found so far.
class optimizer_error : public std::runtime_error {
 public:
  optimizer_error(const std::string& msg, CriticalLocus best)
      : std::runtime_error(msg), best_so_far(std::move(best)) {}
  CriticalLocus best_so_far;
};

// Closed-form total complexity over all of R^N (three phases in mu).
ComplexityResult total_complexity(const Correlator& c, double mu,
                                  const Growth& growth);

// Fyodorov-form complexity Sigma_{mu,D} = (1/2)(mu^2/J^2 - 1) - log(|mu|/J),
// J = sqrt(-2 D''(0)); valid for 0 < |mu| <= J.
double sigma_fyodorov(const Correlator& c, double mu);

// Full variational integrand psi_*(rho, u, y).
double psi_star(const Correlator& c, double mu, double rho, double u, double y);

// psi_* with v eliminated at its stationary point (valid when E = R).
double psi_star_reduced(const Correlator& c, double mu, double rho, double y);

// Closed-form maximizer for E = R over the shell (R1, R2).
CriticalLocus closed_form_optimum(const Correlator& c, double mu, double R1,
                                  double R2);

// Numerical arg-sup of psi_* over (R1,R2) x E x R.
CriticalLocus optimize_psi(const Correlator& c, double mu,
                           const DomainSpec& dom,
                           const OptimizerOptions& opts = {});

// (1/2)log(-4D''(0)) - (1/2)log D'(0) + 1/2 + sup psi_*.
ComplexityResult complexity_constrained(const Correlator& c, double mu,
                                        const DomainSpec& dom,
                                        const OptimizerOptions& opts = {});

}  // namespace lrc

#endif
