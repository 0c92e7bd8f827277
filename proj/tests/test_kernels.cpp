#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lrc/kernels.hpp"

using namespace lrc::kernels;

namespace {

std::vector<double> random_vec(int n, unsigned seed, double lo, double hi) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(eng);
  return v;
}

LogAbsProd reference_prod(const std::vector<double>& v, double c, double s) {
  double acc = 0;
  int sign = 1;
  for (double x : v) {
    const double t = c * x - s;
    if (t == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    acc += std::log(std::fabs(t));
    if (t < 0) sign = -sign;
  }
  return {acc, sign};
}

}  // namespace

TEST_CASE("log_abs_prod_affine matches log-sum reference") {
  for (int n : {1, 3, 7, 64, 257, 1000}) {
    const auto v = random_vec(n, 42 + n, -2.0, 2.0);
    const auto got = log_abs_prod_affine(v, 0.9, 0.3);
    const auto want = reference_prod(v, 0.9, 0.3);
    CHECK(got.sign == want.sign);
    CHECK(got.log_abs ==
          doctest::Approx(want.log_abs).epsilon(1e-12).scale(std::fabs(want.log_abs) + 1));
  }
}

TEST_CASE("exact zero factor gives -inf") {
  std::vector<double> v = {1.0, 2.0, 3.0};
  const auto got = log_abs_prod_affine(v, 1.0, 2.0);
  CHECK(std::isinf(got.log_abs));
  CHECK(got.log_abs < 0);
}

TEST_CASE("huge and tiny factors stay finite") {
  std::vector<double> v(300, 1e160);
  const auto got = log_abs_prod_affine(v, 1.0, 0.0);
  CHECK(got.log_abs == doctest::Approx(300 * std::log(1e160)).epsilon(1e-13));
  std::vector<double> w(300, 1e-160);
  const auto got2 = log_abs_prod_affine(w, 1.0, 0.0);
  CHECK(got2.log_abs == doctest::Approx(300 * std::log(1e-160)).epsilon(1e-13));
}

TEST_CASE("weighted_reciprocal_sum matches reference") {
  for (int n : {1, 4, 63, 500}) {
    const auto v = random_vec(n, 7 + n, -2.0, 2.0);
    const auto w = random_vec(n, 9 + n, 0.0, 3.0);
    double want = 0;
    for (int i = 0; i < n; ++i) want += w[i] / (0.8 * v[i] - 0.1);
    const double got = weighted_reciprocal_sum(w, v, 0.8, 0.1);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("scalar and AVX2 backends agree") {
  const Backend original = active_backend();
  force_backend(Backend::Avx2);
  const bool has_avx2 = active_backend() == Backend::Avx2;
  force_backend(original);
  if (!has_avx2) return;  // nothing to compare on this host
  for (int n : {1, 2, 3, 4, 5, 8, 63, 64, 65, 1024}) {
    const auto v = random_vec(n, 1000 + n, -3.0, 3.0);
    const auto w = random_vec(n, 2000 + n, 0.0, 2.0);
    force_backend(Backend::Scalar);
    const auto ps = log_abs_prod_affine(v, 1.1, -0.2);
    const double ss = sum_log_abs_affine(v, 1.1, -0.2);
    const double rs = weighted_reciprocal_sum(w, v, 1.1, -0.2);
    force_backend(Backend::Avx2);
    const auto pa = log_abs_prod_affine(v, 1.1, -0.2);
    const double sa = sum_log_abs_affine(v, 1.1, -0.2);
    const double ra = weighted_reciprocal_sum(w, v, 1.1, -0.2);
    force_backend(original);
    CHECK(ps.sign == pa.sign);
    CHECK(ps.log_abs == doctest::Approx(pa.log_abs).epsilon(1e-12));
    CHECK(ss == doctest::Approx(sa).epsilon(1e-12));
    CHECK(rs == doctest::Approx(ra).epsilon(1e-12));
  }
}
