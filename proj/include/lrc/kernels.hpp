#ifndef LRC_KERNELS_HPP
#define LRC_KERNELS_HPP

#include <cstdint>
#include <span>

// Hot inner-loop kernels. Each has a scalar reference implementation and an
// AVX2 variant; the active backend is picked once at startup from CPUID and
// can be overridden for equivalence testing.

namespace lrc::kernels {

enum class Backend { Scalar, Avx2 };

// Backend selected at process start (Avx2 when the CPU supports it).
Backend active_backend();

// Override the dispatch, e.g. to compare backends in tests. Passing Avx2 on
// a machine without AVX2 support is ignored.
void force_backend(Backend b);

struct LogAbsProd {
  double log_abs;  // sum_i log|c*v[i] - s|, -inf if any factor is zero
  int sign;        // product of signs in {-1,0,+1}
};

// log|prod_i (c*v[i] - s)| with sign tracking. Never overflows: the running
// product is renormalized to its mantissa each step and binary exponents are
// accumulated separately.
LogAbsProd log_abs_prod_affine(std::span<const double> v, double c, double s);

// sum_i log|c*v[i] - s|
double sum_log_abs_affine(std::span<const double> v, double c, double s);

// sum_i w[i] / (c*v[i] - s)
double weighted_reciprocal_sum(std::span<const double> w,
                               std::span<const double> v, double c, double s);

namespace detail {
LogAbsProd log_abs_prod_affine_scalar(std::span<const double> v, double c,
                                      double s);
double weighted_reciprocal_sum_scalar(std::span<const double> w,
                                      std::span<const double> v, double c,
                                      double s);
#if defined(__x86_64__) || defined(_M_X64)
LogAbsProd log_abs_prod_affine_avx2(std::span<const double> v, double c,
                                    double s);
double weighted_reciprocal_sum_avx2(std::span<const double> w,
                                    std::span<const double> v, double c,
                                    double s);
#endif
}  // namespace detail

}  // namespace lrc::kernels

#endif
