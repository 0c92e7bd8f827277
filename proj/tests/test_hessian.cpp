#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "lrc/hessian.hpp"

using namespace lrc;
using namespace lrc::hessian;

namespace {

const Correlator kLog = Correlator::log_kind(1.0);

Eigen::MatrixXd dense_from_sample(const ConditionalHessianModel& m,
                                  const HessianSample& s) {
  const int n = m.n;
  const double root4 = std::sqrt(-4.0 * m.params.dpp0);
  const double c = std::sqrt((n - 1.0) / n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a(0, 0) = s.z1p;
  for (int k = 1; k < n; ++k) {
    a(0, k) = a(k, 0) = s.xi[k - 1];
    a(k, k) = root4 * (c * s.goe_spectrum.eigenvalues[k - 1] - s.z3p);
  }
  return a;
}

}  // namespace

TEST_CASE("covariance table matches the analytic entries (N=8)") {
  const auto m = make_model(kLog, 1.0, 1.0, 0.0, 8);
  const double d2 = m.params.dpp0;      // -1
  const double art = m.params.alpha_rho_sq();
  const double t = m.params.frak_t;
  const double n = 8.0;
  CHECK(conditional_covariance_table(m, 1, 1, 1, 1) ==
        doctest::Approx((-6 * d2 - (art + t) * (art + t)) / n).epsilon(1e-13));
  CHECK(conditional_covariance_table(m, 1, 1, 2, 2) ==
        doctest::Approx((-2 * d2 - (art + t) * t) / n).epsilon(1e-13));
  CHECK(conditional_covariance_table(m, 2, 2, 2, 2) ==
        doctest::Approx((-6 * d2 - t * t) / n).epsilon(1e-13));
  CHECK(conditional_covariance_table(m, 2, 2, 3, 3) ==
        doctest::Approx((-2 * d2 - t * t) / n).epsilon(1e-13));
  CHECK(conditional_covariance_table(m, 1, 2, 1, 2) ==
        doctest::Approx(-2 * d2 / n).epsilon(1e-13));
  CHECK(conditional_covariance_table(m, 1, 2, 2, 1) ==
        doctest::Approx(-2 * d2 / n).epsilon(1e-13));
  // frozen spot values
  CHECK(conditional_covariance_table(m, 1, 1, 1, 1) ==
        doctest::Approx(0.467927).epsilon(1e-5));
  CHECK(conditional_covariance_table(m, 2, 2, 3, 3) ==
        doctest::Approx(0.179482).epsilon(1e-5));
  // vanishing entries
  CHECK(conditional_covariance_table(m, 1, 2, 1, 3) == 0.0);
  CHECK(conditional_covariance_table(m, 1, 1, 1, 2) == 0.0);
  CHECK(conditional_covariance_table(m, 1, 2, 3, 4) == 0.0);
  // symmetry in the pair arguments
  CHECK(conditional_covariance_table(m, 1, 1, 2, 2) ==
        conditional_covariance_table(m, 2, 2, 1, 1));
  CHECK_THROWS_AS(conditional_covariance_table(m, 0, 1, 1, 1),
                  std::out_of_range);
  CHECK_THROWS_AS(conditional_covariance_table(m, 1, 1, 1, 9),
                  std::out_of_range);
}

TEST_CASE("Schur determinant equals the dense determinant") {
  for (int n : {2, 3, 6, 17})
    for (double mu : {0.5, 1.0})
      for (double u : {-0.3, 0.0, 1.0}) {
        const auto m = make_model(kLog, mu, 1.0, u, n);
        for (int s = 0; s < 25; ++s) {
          const HessianSample h =
              sample_conditional_hessian(m, 1234 + 97 * s);
          const Eigen::MatrixXd a = dense_from_sample(m, h);
          const auto lu = a.partialPivLu();
          double log_abs = 0;
          double sign = lu.permutationP().determinant();
          for (int k = 0; k < n; ++k) {
            const double d = lu.matrixLU()(k, k);
            log_abs += std::log(std::fabs(d));
            if (d < 0) sign = -sign;
          }
          CHECK(h.log_abs_det ==
                doctest::Approx(log_abs).scale(1.0).epsilon(1e-8));
          CHECK(h.sign == static_cast<int>(sign));
        }
      }
}

TEST_CASE("conditional means at u = m_Y") {
  const auto base = make_model(kLog, 1.0, 1.0, 0.0, 8);
  const auto m = make_model(kLog, 1.0, 1.0, base.params.m_Y, 8);
  // v = 0 so z1' and the block shift reduce to the unconditional means
  CHECK(m.means.v == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(m.means.m1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.means.m2 == doctest::Approx(1.0).epsilon(1e-12));
  const double root4 = std::sqrt(-4.0 * m.params.dpp0);
  double mz1 = 0, mz3 = 0;
  const int s_count = 40000;
  for (int s = 0; s < s_count; ++s) {
    const HessianSample h = sample_conditional_hessian(m, 777 + s);
    mz1 += h.z1p;
    mz3 += h.z3p;
  }
  mz1 /= s_count;
  mz3 /= s_count;
  const double se1 = std::sqrt(conditional_covariance_table(m, 1, 1, 1, 1) /
                               s_count);
  CHECK(std::fabs(mz1 - 1.0) < 4 * se1);
  CHECK(std::fabs(mz3 - (-1.0 / root4)) < 4 * se1);  // conservative SE
}

TEST_CASE("moment verification within 4 standard errors") {
  const auto m = make_model(kLog, 1.0, 1.0, -0.3, 6);
  const CovarianceReport rep = verify_conditional_covariance(m, 200000, 2024);
  CHECK(rep.samples == 200000);
  CHECK(rep.passed);
  CHECK(rep.worst_mean_ratio < 4.0);
  CHECK(rep.worst_cov_ratio < 4.0);
  CHECK_THROWS_AS(verify_conditional_covariance(m, 100, 1), std::domain_error);
}

TEST_CASE("z1' given z3': frozen variance and regression residual") {
  const auto m = make_model(kLog, 1.0, 1.0, -0.3, 8);
  const ConditionalZ1 c0 = conditional_z1_given_z3(m, 0.2);
  CHECK(c0.bsq_over_n * 8 == doctest::Approx(3.2142002).epsilon(1e-6));
  CHECK(c0.bsq_over_n * 8 <= -4.0 * m.params.dpp0);
  // residual z1' - abar(z3') is mean-zero: law of total expectation
  double acc = 0;
  const int s_count = 60000;
  for (int s = 0; s < s_count; ++s) {
    const HessianSample h = sample_conditional_hessian(m, 31337 + s);
    acc += h.z1p - conditional_z1_given_z3(m, h.z3p).abar;
  }
  const double mean = acc / s_count;
  const double se = std::sqrt(c0.bsq_over_n / s_count);
  CHECK(std::fabs(mean) < 4 * se);
  // abar is affine in y with negative slope (anticorrelation)
  const ConditionalZ1 c1 = conditional_z1_given_z3(m, 1.0);
  const ConditionalZ1 c2 = conditional_z1_given_z3(m, 2.0);
  CHECK(c2.abar - c1.abar < 0);
  CHECK((c2.abar - c1.abar) ==
        doctest::Approx((c1.abar - c0.abar) / 0.8)
            .epsilon(1e-9));  // affine: equal slope between any two points
  CHECK(c1.bsq_over_n == doctest::Approx(c0.bsq_over_n).epsilon(1e-14));
}

TEST_CASE("E|det| at N=2 matches an independent dense-matrix oracle") {
  const auto m = make_model(kLog, 1.0, 1.0, -0.25, 2);
  const double s1 = std::sqrt(m.sigma1_sq), s2 = std::sqrt(m.sigma2_sq);
  const double sc = std::sqrt(m.cross_sq);
  const double root4 = std::sqrt(-4.0 * m.params.dpp0);
  const double c = std::sqrt(0.5);
  const double sd_xi = std::sqrt(-2.0 * m.params.dpp0 / 2.0);
  // Independent sampler: different RNG (mt19937_64 / normal_distribution)
  // and the raw 2x2 determinant instead of the Schur form. Five standard
  // normals per draw: z1, z2, z3, the 1x1 GOE entry g, and the border z.
  std::mt19937_64 eng(20240817);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const long long draws = 4000000;
  double acc = 0, acc2 = 0;
  for (long long s = 0; s < draws; ++s) {
    const double z1 = gauss(eng), z2 = gauss(eng), z3 = gauss(eng);
    const double g = gauss(eng), z = gauss(eng);
    const double z1p = s1 * z1 - s2 * z2 + m.means.m1;
    const double z3p = (s2 * z2 + sc * z3 - m.means.m2) / root4;
    const double xi = sd_xi * z;
    const double det = z1p * root4 * (c * g - z3p) - xi * xi;
    acc += std::fabs(det);
    acc2 += det * det;
  }
  const double oracle = acc / draws;
  const double oracle_se =
      std::sqrt((acc2 / draws - oracle * oracle) / draws);
  const AbsDetEstimate est = expected_abs_det_mc(m, 40000, 4242);
  const double comb = std::hypot(est.stderr_, oracle_se);
  CHECK(std::fabs(est.estimate - oracle) < 4 * comb);
  CHECK(est.stderr_ > 0);
  CHECK(est.stderr_ < 0.05 * est.estimate);
}

TEST_CASE("strong confinement makes the Hessian positive definite") {
  const auto m = make_model(kLog, 3.0, 1.0, 0.0, 2);
  int pos = 0;
  const int s_count = 2000;
  for (int s = 0; s < s_count; ++s)
    pos += sample_conditional_hessian(m, 555000 + s).sign > 0;
  CHECK(static_cast<double>(pos) / s_count >= 0.85);
}

TEST_CASE("normalized log-determinant stabilizes in N") {
  const auto m32 = make_model(kLog, 1.0, 1.0, -0.25, 32);
  const auto m64 = make_model(kLog, 1.0, 1.0, -0.25, 64);
  const AbsDetEstimate a = expected_abs_det_mc(m32, 1500, 7);
  const AbsDetEstimate b = expected_abs_det_mc(m64, 1500, 8);
  CHECK(std::fabs(a.log_mean / 32 - b.log_mean / 64) < 0.02);
}
