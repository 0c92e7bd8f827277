#ifndef LRC_RMT_HPP
#define LRC_RMT_HPP

#include <cstdint>
#include <vector>

namespace lrc::rmt {

struct EmpiricalSpectrum {
  std::vector<double> eigenvalues;  // sorted ascending
  int n = 0;
};

// Eigenvalues of a GOE matrix with E M_ij = 0, E M_ij^2 = (1+delta_ij)/(2n).
// Deterministic given the seed. Supported envelope n <= 4096.
EmpiricalSpectrum sample_goe(int n, std::uint64_t seed);

// Log-potential of the semicircle law scaled to support [-sqrt2, sqrt2].
double semicircle_log_potential(double x);

// (1/n) sum log|x - lambda_i|; -inf if x coincides with an eigenvalue.
double log_potential(const EmpiricalSpectrum& s, double x);

// Large-deviation rate function (speed N) of the GOE smallest eigenvalue;
// +inf for x > -sqrt2.
double rate_function_j1(double x);

// Bounded-Lipschitz distance between two spectra estimated over a fixed
// dictionary of 64 clipped ramps on [-K, K]; lower-bounds the true distance,
// used only as a test statistic.
double bl_distance_to_semicircle(const EmpiricalSpectrum& s);

}  // namespace lrc::rmt

#endif
