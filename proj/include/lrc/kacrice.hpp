#ifndef LRC_KACRICE_HPP
#define LRC_KACRICE_HPP

#include <cstdint>
#include <vector>

#include "lrc/complexity.hpp"
#include "lrc/correlator.hpp"

namespace lrc::kacrice {

// Random-feature realization of a field with atomic-mixture structure
// function (slope 0), plus the (mu/2)||x||^2 confinement. Gradient and
// Hessian are available in closed form for Newton root finding.
class FieldSample {
 public:
  struct AtomFeatures {
    double amplitude = 0;             // sqrt(N nu_k / m)
    std::vector<double> w;            // m x N frequencies, row-major
    std::vector<double> phase;        // m phases in [0, 2pi)
    std::vector<double> cos_phase;    // pinning offsets cos(phase_j)
  };

  int dim = 2;
  int m_features = 0;
  double mu = 0;
  std::vector<AtomFeatures> atoms;

  double value(const double* x) const;          // H(x)
  void gradient(const double* x, double* g) const;
  void hessian(const double* x, double* h) const;  // dim x dim row-major
  // One-pass gradient + Hessian (shares the sin/cos evaluation).
  void grad_hess(const double* x, double* g, double* h) const;
};

FieldSample sample_field(const Correlator& c, double mu, int n, int m_features,
                         std::uint64_t seed);

struct CriticalPoint {
  std::vector<double> x;
  double u = 0;              // H(x)/N
  double gradient_norm = 0;
  bool boundary_flag = false;  // within tolerance of the shell boundary
};

struct CriticalPointCensus {
  std::vector<CriticalPoint> points;  // all deduplicated converged roots
  long long count_in = 0;             // roots inside the shell with u in E
};

struct CensusOptions {
  int grid_density = 64;       // Newton seeds per axis
  double newton_tol = 1e-10;   // on ||grad H||
  double dedup_radius_rel = 1e-5;  // times the shell diameter
  int max_newton_iters = 25;
};

CriticalPointCensus count_critical_points(const FieldSample& f, double e_lo,
                                          double e_hi, double R1, double R2,
                                          const CensusOptions& opts = {});

struct McOptions {
  long long goe_samples = 1000;
  int quad_nodes = 24;        // Gauss-Legendre nodes per axis
  double tail_sigmas = 8.0;   // truncation width in conditional sd units
};

struct KacRiceResult {
  double estimate = 0;
  double stderr_ = 0;
  double log_estimate = 0;
  bool boundary_warning = false;  // window edge carries > 1e-6 of the mass
};

KacRiceResult kac_rice_integral(const Correlator& c, double mu,
                                const DomainSpec& dom, int n,
                                const McOptions& mc, std::uint64_t seed);

}  // namespace lrc::kacrice

#endif
