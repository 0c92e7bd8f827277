#include "lrc/hessian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lrc/kernels.hpp"
#include "lrc/rng.hpp"

namespace lrc::hessian {

namespace {

double sq(double x) { return x * x; }

// Raw draw of the generative ingredients shared by the samplers.
struct RawDraw {
  double z1, z2, z3;
  std::vector<double> z;  // standard normals behind xi
};

RawDraw draw_scalars(const ConditionalHessianModel& m, rng::Engine& eng) {
  RawDraw d;
  d.z1 = eng.gaussian();
  d.z2 = eng.gaussian();
  d.z3 = eng.gaussian();
  d.z.resize(m.n - 1);
  for (double& zi : d.z) zi = eng.gaussian();
  return d;
}

double z1p_of(const ConditionalHessianModel& m, const RawDraw& d) {
  return std::sqrt(m.sigma1_sq) * d.z1 - std::sqrt(m.sigma2_sq) * d.z2 +
         m.means.m1;
}

double z3p_of(const ConditionalHessianModel& m, const RawDraw& d) {
  const double root4 = std::sqrt(-4.0 * m.params.dpp0);
  return (std::sqrt(m.sigma2_sq) * d.z2 + std::sqrt(m.cross_sq) * d.z3 -
          m.means.m2) /
         root4;
}

}  // namespace

ConditionalHessianModel make_model(const Correlator& c, double mu, double rho,
                                   double u, int n) {
  if (n < 2) throw std::domain_error("make_model: N must be >= 2");
  ConditionalHessianModel m;
  m.params = landscape_params(c, mu, rho);
  m.u = u;
  m.n = n;
  m.means = conditional_means(m.params, u);
  m.sigma1_sq = m.params.n_sigma1_sq / n;
  m.sigma2_sq = m.params.n_sigma2_sq / n;
  // alpha and t are both nonpositive, so the cross term is a true variance.
  const double at = m.params.alpha_rho_sq() * m.params.frak_t;
  if (m.params.alpha > 0 || m.params.frak_t > 0 || at < 0)
    throw std::logic_error("make_model: alpha*t must be nonnegative");
  m.cross_sq = at / n;
  return m;
}

HessianSample sample_conditional_hessian(const ConditionalHessianModel& m,
                                         std::uint64_t seed) {
  HessianSample s;
  s.goe_spectrum = rmt::sample_goe(m.n - 1, rng::split_seed(seed, 0));
  rng::Engine eng(rng::split_seed(seed, 1));
  const RawDraw d = draw_scalars(m, eng);
  s.z1p = z1p_of(m, d);
  s.z3p = z3p_of(m, d);
  const double sd_xi = std::sqrt(-2.0 * m.params.dpp0 / m.n);
  s.xi.resize(m.n - 1);
  std::vector<double> z2(m.n - 1);
  for (int k = 0; k < m.n - 1; ++k) {
    s.xi[k] = sd_xi * d.z[k];
    z2[k] = sq(d.z[k]);
  }

  // Schur form: det G = (-4D''0)^{(N-1)/2} prod_j(c lam_j - z3') * T with
  // T = z1' - sqrt(-4D''0)/(2N) * sum_k Z_k^2 / (c lam_k - z3').
  const double root4 = std::sqrt(-4.0 * m.params.dpp0);
  const double c = std::sqrt((m.n - 1.0) / m.n);
  const kernels::LogAbsProd prod =
      kernels::log_abs_prod_affine(s.goe_spectrum.eigenvalues, c, s.z3p);
  const double wrs = kernels::weighted_reciprocal_sum(
      z2, s.goe_spectrum.eigenvalues, c, s.z3p);
  const double t = s.z1p - root4 / (2.0 * m.n) * wrs;
  s.log_abs_det = 0.5 * (m.n - 1) * std::log(sq(root4)) + prod.log_abs +
                  std::log(std::fabs(t));
  s.sign = prod.sign * (t < 0 ? -1 : 1);
  return s;
}

double conditional_covariance_table(const ConditionalHessianModel& m, int i,
                                    int j, int ip, int jp) {
  if (i < 1 || j < 1 || ip < 1 || jp < 1 || i > m.n || j > m.n || ip > m.n ||
      jp > m.n)
    throw std::out_of_range("conditional_covariance_table: index out of range");
  const double d2 = m.params.dpp0;
  const double art = m.params.alpha_rho_sq();
  const double t = m.params.frak_t;
  const double n = m.n;
  const auto load = [&](int a, int b) {
    return (a == 1 && b == 1 ? art : 0.0) + (a == b ? t : 0.0);
  };
  const double base =
      -2.0 * d2 *
      ((i == j && ip == jp ? 1.0 : 0.0) + (i == ip && j == jp ? 1.0 : 0.0) +
       (i == jp && ip == j ? 1.0 : 0.0)) /
      n;
  return base - load(i, j) * load(ip, jp) / n;
}

CovarianceReport verify_conditional_covariance(const ConditionalHessianModel& m,
                                               long long samples,
                                               std::uint64_t seed) {
  if (samples < 100000)
    throw std::domain_error("verify_conditional_covariance: need >= 1e5 draws");
  const int n = m.n;
  const int ne = n * (n + 1) / 2;  // upper-triangle entries
  std::vector<std::pair<int, int>> idx;
  idx.reserve(ne);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) idx.emplace_back(i, j);

  std::vector<double> sum(ne, 0.0);
  std::vector<double> cross(static_cast<size_t>(ne) * ne, 0.0);
  std::vector<double> entry(ne);

  rng::Engine eng(seed);
  const double root4 = std::sqrt(-4.0 * m.params.dpp0);
  const double c = std::sqrt((n - 1.0) / n);
  const double goe_off = 1.0 / std::sqrt(2.0 * (n - 1.0));
  const double goe_diag = 1.0 / std::sqrt(n - 1.0);
  const double sd_xi = std::sqrt(-2.0 * m.params.dpp0 / n);
  Eigen::MatrixXd a(n, n);
  for (long long s = 0; s < samples; ++s) {
    const RawDraw d = draw_scalars(m, eng);
    a(0, 0) = z1p_of(m, d);
    const double z3p = z3p_of(m, d);
    for (int k = 1; k < n; ++k) {
      a(0, k) = sd_xi * d.z[k - 1];
      a(k, 0) = a(0, k);
    }
    for (int i = 1; i < n; ++i) {
      a(i, i) = root4 * (c * goe_diag * eng.gaussian() - z3p);
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = root4 * c * goe_off * eng.gaussian();
        a(j, i) = a(i, j);
      }
    }
    for (int e = 0; e < ne; ++e) entry[e] = a(idx[e].first - 1, idx[e].second - 1);
    for (int e = 0; e < ne; ++e) {
      sum[e] += entry[e];
      for (int f = e; f < ne; ++f) cross[e * ne + f] += entry[e] * entry[f];
    }
  }

  CovarianceReport rep;
  rep.samples = samples;
  const double invS = 1.0 / samples;
  std::vector<double> mean(ne);
  for (int e = 0; e < ne; ++e) mean[e] = sum[e] * invS;

  for (int e = 0; e < ne; ++e) {
    const auto [i, j] = idx[e];
    double expect = 0.0;
    if (i == j) expect = (i == 1) ? m.means.m1 : m.means.m2;
    const double var = conditional_covariance_table(m, i, j, i, j);
    const double se = std::sqrt(var * invS);
    const double dev = std::fabs(mean[e] - expect);
    rep.max_abs_dev_mean = std::max(rep.max_abs_dev_mean, dev);
    rep.worst_mean_ratio = std::max(rep.worst_mean_ratio, dev / se);
  }
  for (int e = 0; e < ne; ++e) {
    const auto [i, j] = idx[e];
    for (int f = e; f < ne; ++f) {
      const auto [ip, jp] = idx[f];
      const double emp = cross[e * ne + f] * invS - mean[e] * mean[f];
      const double theory = conditional_covariance_table(m, i, j, ip, jp);
      const double caa = conditional_covariance_table(m, i, j, i, j);
      const double cbb = conditional_covariance_table(m, ip, jp, ip, jp);
      // SE of a Gaussian sample covariance: sqrt((Caa*Cbb + Cab^2)/S).
      const double se = std::sqrt((caa * cbb + theory * theory) * invS);
      const double dev = std::fabs(emp - theory);
      rep.max_abs_dev_cov = std::max(rep.max_abs_dev_cov, dev);
      rep.worst_cov_ratio = std::max(rep.worst_cov_ratio, dev / se);
    }
  }
  rep.passed = rep.worst_mean_ratio <= 4.0 && rep.worst_cov_ratio <= 4.0;
  return rep;
}

AbsDetEstimate expected_abs_det_mc(const ConditionalHessianModel& m,
                                   long long samples, std::uint64_t seed) {
  if (samples < 1000)
    throw std::domain_error("expected_abs_det_mc: need >= 1e3 draws");
  std::vector<double> logs(samples);
  double log_sum = 0.0;
  for (long long s = 0; s < samples; ++s) {
    const HessianSample hs =
        sample_conditional_hessian(m, rng::split_seed(seed, s));
    logs[s] = hs.log_abs_det;
    log_sum += hs.log_abs_det;
  }
  const double lmax = *std::max_element(logs.begin(), logs.end());
  double e1 = 0.0, e2 = 0.0;  // sums of exp(l - lmax) and exp(2(l - lmax))
  for (double l : logs) {
    const double r = std::exp(l - lmax);
    e1 += r;
    e2 += r * r;
  }
  AbsDetEstimate out;
  const double mean_r = e1 / samples;
  out.estimate = std::exp(lmax) * mean_r;
  const double var_r = std::max(0.0, e2 / samples - mean_r * mean_r);
  out.stderr_ = std::exp(lmax) * std::sqrt(var_r / samples);
  out.log_mean = log_sum / samples;
  return out;
}

ConditionalZ1 conditional_z1_given_z3(const ConditionalHessianModel& m,
                                      double y) {
  const double d2 = m.params.dpp0;
  const double root4 = std::sqrt(-4.0 * d2);
  const double denom = -2.0 * d2 - sq(m.params.frak_t);
  ConditionalZ1 out;
  out.abar = m.means.m1 -
             m.params.n_sigma2_sq * (root4 * y + m.means.m2) / denom;
  const double bsq = m.params.n_sigma1_sq + m.params.n_sigma2_sq -
                     sq(m.params.n_sigma2_sq) / denom;
  out.bsq_over_n = bsq / m.n;
  return out;
}

}  // namespace lrc::hessian
