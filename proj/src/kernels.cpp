#include "lrc/kernels.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <limits>

namespace lrc::kernels {

namespace detail {

namespace {

// Split x (finite, nonzero, normal) into mantissa in [1,2) and exponent.
inline double take_mantissa(double x, std::int64_t& exp_acc) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  exp_acc += static_cast<std::int64_t>((bits >> 52) & 0x7ff) - 1023;
  const std::uint64_t mant = (bits & 0x800fffffffffffffull) | 0x3ff0000000000000ull;
  return std::bit_cast<double>(mant);
}

}  // namespace

LogAbsProd log_abs_prod_affine_scalar(std::span<const double> v, double c,
                                      double s) {
  constexpr double kLog2 = 0.6931471805599453094172321;
  double mant = 1.0;
  std::int64_t exp_acc = 0;
  int sign = 1;
  for (double x : v) {
    const double t = c * x - s;
    if (t == 0.0) {
      return {-std::numeric_limits<double>::infinity(), 0};
    }
    if (t < 0.0) sign = -sign;
    // |t| may be subnormal; frexp handles that, the bit trick does not.
    int e = 0;
    const double m = std::frexp(std::fabs(t), &e);  // m in [0.5,1)
    exp_acc += e;
    mant *= m;                           // mant stays in (2^-53, 1]
    mant = take_mantissa(mant, exp_acc); // renormalize to [1,2)
  }
  return {std::log(mant) + static_cast<double>(exp_acc) * kLog2, sign};
}

double weighted_reciprocal_sum_scalar(std::span<const double> w,
                                      std::span<const double> v, double c,
                                      double s) {
  double acc = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) acc += w[i] / (c * v[i] - s);
  return acc;
}

}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Backend> g_backend{cpu_has_avx2() ? Backend::Avx2
                                              : Backend::Scalar};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !cpu_has_avx2()) return;
  g_backend.store(b, std::memory_order_relaxed);
}

LogAbsProd log_abs_prod_affine(std::span<const double> v, double c, double s) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::Avx2)
    return detail::log_abs_prod_affine_avx2(v, c, s);
#endif
  return detail::log_abs_prod_affine_scalar(v, c, s);
}

double sum_log_abs_affine(std::span<const double> v, double c, double s) {
  return log_abs_prod_affine(v, c, s).log_abs;
}

double weighted_reciprocal_sum(std::span<const double> w,
                               std::span<const double> v, double c, double s) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::Avx2)
    return detail::weighted_reciprocal_sum_avx2(w, v, c, s);
#endif
  return detail::weighted_reciprocal_sum_scalar(w, v, c, s);
}

}  // namespace lrc::kernels
