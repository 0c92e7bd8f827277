// AVX2 variants of the inner-loop kernels. Compiled with -mavx2; only
// reached when CPUID reports AVX2 support.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lrc/kernels.hpp"

namespace lrc::kernels::detail {

namespace {

constexpr double kLog2 = 0.6931471805599453094172321;

}  // namespace

LogAbsProd log_abs_prod_affine_avx2(std::span<const double> v, double c,
                                    double s) {
  const std::size_t n = v.size();
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  const __m256i exp_mask = _mm256_set1_epi64x(0x7ffll << 52);
  const __m256i mant_one = _mm256_set1_epi64x(0x3ffll << 52);
  const __m256d tiny = _mm256_set1_pd(0x1p-1000);
  const __m256d huge = _mm256_set1_pd(0x1p500);

  __m256d mant = _mm256_set1_pd(1.0);
  __m256i exp_acc = _mm256_setzero_si256();
  int neg_count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_fmsub_pd(vc, _mm256_loadu_pd(v.data() + i), vs);
    neg_count += __builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(t)));
    const __m256d at = _mm256_and_pd(t, abs_mask);
    // Bail to the scalar path on zero or subnormal factors; the exponent
    // bit trick below assumes normal numbers.
    if (_mm256_movemask_pd(_mm256_cmp_pd(at, tiny, _CMP_LT_OQ)) != 0 ||
        _mm256_movemask_pd(_mm256_cmp_pd(at, huge, _CMP_GT_OQ)) != 0)
      return log_abs_prod_affine_scalar(v, c, s);
    mant = _mm256_mul_pd(mant, at);  // lanes in [2^-1000-ish, huge) -- bounded
    // pull out binary exponents, leave mantissas in [1,2)
    const __m256i bits = _mm256_castpd_si256(mant);
    exp_acc = _mm256_add_epi64(
        exp_acc, _mm256_srli_epi64(_mm256_and_si256(bits, exp_mask), 52));
    mant = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_andnot_si256(exp_mask, bits), mant_one));
  }

  alignas(32) double m[4];
  alignas(32) std::int64_t e[4];
  _mm256_store_pd(m, mant);
  _mm256_store_si256(reinterpret_cast<__m256i*>(e), exp_acc);
  double log_abs = 0.0;
  std::int64_t exp_total = 0;
  for (int k = 0; k < 4; ++k) {
    log_abs += std::log(m[k]);
    exp_total += e[k] - static_cast<std::int64_t>((i / 4)) * 1023;
  }
  int sign = (neg_count & 1) ? -1 : 1;
  // scalar tail
  const LogAbsProd tail =
      log_abs_prod_affine_scalar(v.subspan(i), c, s);
  if (tail.sign == 0) return tail;
  return {log_abs + static_cast<double>(exp_total) * kLog2 + tail.log_abs,
          sign * tail.sign};
}

double weighted_reciprocal_sum_avx2(std::span<const double> w,
                                    std::span<const double> v, double c,
                                    double s) {
  const std::size_t n = v.size();
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_fmsub_pd(vc, _mm256_loadu_pd(v.data() + i), vs);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w.data() + i), t));
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  double out = a[0] + a[1] + a[2] + a[3];
  for (; i < n; ++i) out += w[i] / (c * v[i] - s);
  return out;
}

}  // namespace lrc::kernels::detail

#endif  // x86_64
