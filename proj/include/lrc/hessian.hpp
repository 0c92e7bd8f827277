#ifndef LRC_HESSIAN_HPP
#define LRC_HESSIAN_HPP

#include <cstdint>
#include <vector>

#include "lrc/geometry.hpp"
#include "lrc/rmt.hpp"

namespace lrc::hessian {

// Conditional law of the (rotated) Hessian given the landscape value u at
// radius rho: a rank-one border (z1', xi) over a shifted, scaled GOE block.
struct ConditionalHessianModel {
  LandscapeParams params;
  double u = 0;
  int n = 2;  // matrix size N >= 2
  ConditionalMeans means;
  double sigma1_sq = 0;    // n_sigma1_sq / N
  double sigma2_sq = 0;    // n_sigma2_sq / N
  double cross_sq = 0;     // alpha * t * rho^2 / N (>= 0)
};

ConditionalHessianModel make_model(const Correlator& c, double mu, double rho,
                                   double u, int n);

struct HessianSample {
  double z1p = 0;                      // z1'
  double z3p = 0;                      // z3'
  std::vector<double> xi;              // length N-1
  rmt::EmpiricalSpectrum goe_spectrum; // size N-1
  double log_abs_det = 0;
  int sign = 1;
};

HessianSample sample_conditional_hessian(const ConditionalHessianModel& m,
                                         std::uint64_t seed);

// Cov[(A_ij, A_i'j') | Y=u]; indices are 1-based in [1..N].
double conditional_covariance_table(const ConditionalHessianModel& m, int i,
                                    int j, int ip, int jp);

struct CovarianceReport {
  double worst_mean_ratio = 0;  // max |dev| / SE over mean entries
  double worst_cov_ratio = 0;   // max |dev| / SE over covariance pairs
  double max_abs_dev_mean = 0;
  double max_abs_dev_cov = 0;
  long long samples = 0;
  bool passed = false;  // all deviations within 4 standard errors
};

CovarianceReport verify_conditional_covariance(const ConditionalHessianModel& m,
                                               long long samples,
                                               std::uint64_t seed);

struct AbsDetEstimate {
  double estimate = 0;  // E|det G|
  double stderr_ = 0;
  double log_mean = 0;  // mean of log|det G| (diagnostic)
};

AbsDetEstimate expected_abs_det_mc(const ConditionalHessianModel& m,
                                   long long samples, std::uint64_t seed);

struct ConditionalZ1 {
  double abar = 0;        // E[z1' | z3' = y]
  double bsq_over_n = 0;  // Var[z1' | z3'], strictly positive
};

ConditionalZ1 conditional_z1_given_z3(const ConditionalHessianModel& m,
                                      double y);

}  // namespace lrc::hessian

#endif
