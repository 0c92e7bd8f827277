#include "lrc/kacrice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lrc/hessian.hpp"
#include "lrc/rng.hpp"

namespace lrc::kacrice {

namespace {

double sq(double x) { return x * x; }

double dot(const double* a, const double* b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

// Golden-section maximization of a unimodal function on [a, b].
template <class F>
double golden_argmax(F&& f, double a, double b, double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double FieldSample::value(const double* x) const {
  double h = 0.5 * mu * dot(x, x, dim);
  for (const AtomFeatures& a : atoms) {
    double acc = 0;
    for (int j = 0; j < m_features; ++j) {
      const double arg = dot(&a.w[static_cast<size_t>(j) * dim], x, dim) +
                         a.phase[j];
      acc += std::cos(arg) - a.cos_phase[j];
    }
    h += a.amplitude * acc;
  }
  return h;
}

void FieldSample::gradient(const double* x, double* g) const {
  for (int i = 0; i < dim; ++i) g[i] = mu * x[i];
  for (const AtomFeatures& a : atoms) {
    for (int j = 0; j < m_features; ++j) {
      const double* wj = &a.w[static_cast<size_t>(j) * dim];
      const double s = -a.amplitude * std::sin(dot(wj, x, dim) + a.phase[j]);
      for (int i = 0; i < dim; ++i) g[i] += s * wj[i];
    }
  }
}

void FieldSample::hessian(const double* x, double* h) const {
  for (int i = 0; i < dim * dim; ++i) h[i] = 0;
  for (int i = 0; i < dim; ++i) h[i * dim + i] = mu;
  for (const AtomFeatures& a : atoms) {
    for (int j = 0; j < m_features; ++j) {
      const double* wj = &a.w[static_cast<size_t>(j) * dim];
      const double cc = -a.amplitude * std::cos(dot(wj, x, dim) + a.phase[j]);
      for (int r = 0; r < dim; ++r)
        for (int q = 0; q < dim; ++q) h[r * dim + q] += cc * wj[r] * wj[q];
    }
  }
}

void FieldSample::grad_hess(const double* x, double* g, double* h) const {
  for (int i = 0; i < dim; ++i) g[i] = mu * x[i];
  for (int i = 0; i < dim * dim; ++i) h[i] = 0;
  for (int i = 0; i < dim; ++i) h[i * dim + i] = mu;
  for (const AtomFeatures& a : atoms) {
    for (int j = 0; j < m_features; ++j) {
      const double* wj = &a.w[static_cast<size_t>(j) * dim];
      const double arg = dot(wj, x, dim) + a.phase[j];
      double sn, cs;
      sincos(arg, &sn, &cs);
      const double gs = -a.amplitude * sn;
      const double hc = -a.amplitude * cs;
      for (int r = 0; r < dim; ++r) {
        g[r] += gs * wj[r];
        for (int q = 0; q < dim; ++q) h[r * dim + q] += hc * wj[r] * wj[q];
      }
    }
  }
}

FieldSample sample_field(const Correlator& c, double mu, int n, int m_features,
                         std::uint64_t seed) {
  const auto* kind = std::get_if<AtomicMixtureKind>(&c.kind());
  if (!kind || kind->slope != 0.0)
    throw unsupported_error(
        "sample_field: requires an atomic-mixture correlator with zero slope");
  if (n < 2 || n > 3)
    throw std::domain_error("sample_field: N must be 2 or 3");
  if (m_features < 256)
    throw std::domain_error("sample_field: m_features must be >= 256");

  FieldSample f;
  f.dim = n;
  f.m_features = m_features;
  f.mu = mu;
  rng::Engine eng(seed);
  for (const Atom& atom : kind->atoms) {
    FieldSample::AtomFeatures a;
    a.amplitude = std::sqrt(n * atom.weight / m_features);
    const double w_sd = std::sqrt(2.0 * sq(atom.scale) / n);
    a.w.resize(static_cast<size_t>(m_features) * n);
    a.phase.resize(m_features);
    a.cos_phase.resize(m_features);
    for (int j = 0; j < m_features; ++j) {
      for (int i = 0; i < n; ++i)
        a.w[static_cast<size_t>(j) * n + i] = w_sd * eng.gaussian();
      a.phase[j] = 2.0 * std::numbers::pi * eng.uniform();
      a.cos_phase[j] = std::cos(a.phase[j]);
    }
    f.atoms.push_back(std::move(a));
  }
  return f;
}

CriticalPointCensus count_critical_points(const FieldSample& f, double e_lo,
                                          double e_hi, double R1, double R2,
                                          const CensusOptions& opts) {
  if (!std::isfinite(R2) || !(R2 > R1) || !(R1 >= 0))
    throw std::domain_error("count_critical_points: need 0 <= R1 < R2 < inf");
  if (opts.grid_density < 1)
    throw std::domain_error("count_critical_points: zero grid cells");
  const int n = f.dim;
  const double box = std::sqrt(static_cast<double>(n)) * R2;
  const double diameter = 2.0 * box;
  const double dedup = opts.dedup_radius_rel * diameter;

  Eigen::VectorXd x(n), g(n), step(n);
  Eigen::MatrixXd h(n, n);
  std::vector<std::vector<double>> roots;

  const long long cells = static_cast<long long>(
      std::pow(static_cast<double>(opts.grid_density), n));
  for (long long cell = 0; cell < cells; ++cell) {
    long long rem = cell;
    for (int i = 0; i < n; ++i) {
      const int k = static_cast<int>(rem % opts.grid_density);
      rem /= opts.grid_density;
      x[i] = -box + diameter * (k + 0.5) / opts.grid_density;
    }
    bool converged = false;
    for (int it = 0; it < opts.max_newton_iters; ++it) {
      f.grad_hess(x.data(), g.data(), h.data());
      if (g.norm() <= opts.newton_tol) {
        converged = true;
        break;
      }
      step = h.partialPivLu().solve(g);
      if (!step.allFinite()) break;
      // Damp overlong steps; honest Newton near the root keeps quadratic
      // convergence for the tight tolerance.
      const double sn = step.norm();
      if (sn > 2.0) step *= 2.0 / sn;
      x -= step;
      if (x.lpNorm<Eigen::Infinity>() > 2.0 * box) break;  // diverged
    }
    if (!converged) continue;
    bool dup = false;
    for (const auto& r : roots) {
      double d2 = 0;
      for (int i = 0; i < n; ++i) d2 += sq(r[i] - x[i]);
      if (d2 <= sq(dedup)) {
        dup = true;
        break;
      }
    }
    if (!dup) roots.emplace_back(x.data(), x.data() + n);
  }

  CriticalPointCensus census;
  const double rootn = std::sqrt(static_cast<double>(n));
  for (const auto& r : roots) {
    CriticalPoint p;
    p.x = r;
    f.gradient(r.data(), g.data());
    p.gradient_norm = g.norm();
    p.u = f.value(r.data()) / n;
    const double rho = std::sqrt(dot(r.data(), r.data(), n)) / rootn;
    p.boundary_flag = std::fabs(rho - R1) <= opts.newton_tol ||
                      std::fabs(rho - R2) <= opts.newton_tol;
    const bool in_shell = rho >= R1 && rho <= R2;  // closed-shell convention
    const bool in_e = p.u > e_lo && p.u < e_hi;
    census.points.push_back(std::move(p));
    if (in_shell && in_e) ++census.count_in;
  }
  return census;
}

KacRiceResult kac_rice_integral(const Correlator& c, double mu,
                                const DomainSpec& dom, int n,
                                const McOptions& mc, std::uint64_t seed) {
  if (n < 2) throw std::domain_error("kac_rice_integral: N must be >= 2");
  if (mu == 0.0 && !std::isfinite(dom.R2))
    throw std::domain_error("kac_rice_integral: mu=0 requires finite R2");

  const double dp0 = c.dp0();
  // rho window: the radial factor rho^{N-1} exp(-N mu^2 rho^2 / (2 D'(0)))
  // peaks near sqrt(D'(0))/|mu| with width ~ sqrt(D'(0)/(2N))/|mu|.
  double rho_lo = std::max(dom.R1, 1e-3);
  double rho_hi;
  if (mu == 0.0) {
    rho_hi = dom.R2;
  } else {
    const double peak =
        std::sqrt((n - 1.0) / n) * std::sqrt(dp0) / std::fabs(mu);
    const double width = std::sqrt(dp0 / (2.0 * n)) / std::fabs(mu);
    rho_hi = std::min(dom.R2, peak + mc.tail_sigmas * width);
    rho_lo = std::max(rho_lo, peak - mc.tail_sigmas * width);
    rho_lo = std::max(std::max(dom.R1, 1e-3), rho_lo);
  }
  if (!(rho_hi > rho_lo))
    throw std::domain_error("kac_rice_integral: empty rho window");

  std::vector<double> gx, gw;
  gauss_legendre(mc.quad_nodes, gx, gw);

  // log prefactor: S_{N-1} N^{N/2} (2 pi)^{-N/2} D'(0)^{-N/2}; the sqrt(N)
  // from d||x|| = sqrt(N) d rho is folded in.
  const double log_pref = std::numbers::ln2 + 0.5 * n * std::log(std::numbers::pi) -
                          std::lgamma(0.5 * n) + 0.5 * n * std::log(static_cast<double>(n)) -
                          0.5 * n * std::log(2.0 * std::numbers::pi * dp0);

  std::vector<double> log_terms;         // log of each node's contribution
  std::vector<double> log_err_terms;     // log of each node's stderr share
  double log_max_integrand = -std::numeric_limits<double>::infinity();
  double log_edge_integrand = -std::numeric_limits<double>::infinity();

  std::uint64_t node_stream = 0;
  for (int i = 0; i < mc.quad_nodes; ++i) {
    const double rho = 0.5 * (rho_hi + rho_lo) + 0.5 * (rho_hi - rho_lo) * gx[i];
    const double wrho = 0.5 * (rho_hi - rho_lo) * gw[i];
    const LandscapeParams p = landscape_params(c, mu, rho);
    const double sig_y = std::sqrt(p.n_sigmaY_sq / n);
    // The u-integrand is the Gaussian density times E|det G| ~ e^{N psi};
    // its saddle sits O(1) away from m_Y in v units. Center the window on
    // the per-rho maximizer of psi_* and size it by the N-scaled width.
    const double root_s = std::sqrt(p.n_sigmaY_sq);
    auto psi_u = [&](double u) {
      auto psi_y = [&](double y) { return psi_star(c, mu, rho, u, y); };
      const double y = golden_argmax(psi_y, -8.0, 8.0, 1e-4);
      return psi_star(c, mu, rho, u, y);
    };
    const double u_center = golden_argmax(
        psi_u, std::max(dom.e_lo, p.m_Y - 10.0 * root_s),
        std::min(dom.e_hi, p.m_Y + 10.0 * root_s), 1e-6 * root_s);
    const double half = 2.0 * mc.tail_sigmas * sig_y;
    double u_lo = std::max(dom.e_lo, u_center - half);
    double u_hi = std::min(dom.e_hi, u_center + half);
    if (!(u_hi > u_lo)) {
      // E sits in the far tail at this rho; clamp a thin window against the
      // nearer edge of E so the node still contributes.
      if (std::isfinite(dom.e_lo) && u_center < dom.e_lo) {
        u_lo = dom.e_lo;
        u_hi = dom.e_lo + sig_y;
      } else {
        u_hi = dom.e_hi;
        u_lo = dom.e_hi - sig_y;
      }
    }
    for (int j = 0; j < mc.quad_nodes; ++j) {
      const double u = 0.5 * (u_hi + u_lo) + 0.5 * (u_hi - u_lo) * gx[j];
      const double wu = 0.5 * (u_hi - u_lo) * gw[j];
      const hessian::ConditionalHessianModel model =
          hessian::make_model(c, mu, rho, u, n);
      const hessian::AbsDetEstimate det = hessian::expected_abs_det_mc(
          model, mc.goe_samples, rng::split_seed(seed, node_stream++));
      const double log_gauss_u = -0.5 * sq((u - p.m_Y) / sig_y) -
                                 0.5 * std::log(2.0 * std::numbers::pi) -
                                 std::log(sig_y);
      const double log_radial =
          (n - 1.0) * std::log(rho) - n * sq(mu) * sq(rho) / (2.0 * dp0);
      const double log_weight =
          log_pref + log_gauss_u + log_radial + std::log(wrho * wu);
      const double log_integrand = log_weight - std::log(wrho * wu);
      log_max_integrand =
          std::max(log_max_integrand, log_integrand + std::log(det.estimate));
      // Track the integrand height on artificial truncation edges only; a
      // true R1/R2/E boundary is part of the domain, not a window error.
      const bool rho_hi_artificial = rho_hi < dom.R2 - 1e-12;
      const bool rho_lo_artificial = rho_lo > std::max(dom.R1, 1e-3) + 1e-12;
      const bool on_artificial_edge =
          (i == 0 && rho_lo_artificial) ||
          (i == mc.quad_nodes - 1 && rho_hi_artificial) ||
          (j == 0 && u_lo > dom.e_lo + 1e-12) ||
          (j == mc.quad_nodes - 1 && u_hi < dom.e_hi - 1e-12);
      if (on_artificial_edge)
        log_edge_integrand = std::max(
            log_edge_integrand, log_integrand + std::log(det.estimate));
      log_terms.push_back(log_weight + std::log(det.estimate));
      if (det.stderr_ > 0)
        log_err_terms.push_back(log_weight + std::log(det.stderr_));
    }
  }

  auto logsumexp = [](const std::vector<double>& v, double scale) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : v) mx = std::max(mx, scale * t);
    if (!std::isfinite(mx)) return mx;
    double s = 0;
    for (double t : v) s += std::exp(scale * t - mx);
    return mx + std::log(s);
  };

  KacRiceResult out;
  out.log_estimate = logsumexp(log_terms, 1.0);
  out.estimate = std::exp(out.log_estimate);
  // Independent per-node MC errors combine in quadrature.
  out.stderr_ = std::exp(0.5 * logsumexp(log_err_terms, 2.0));
  if (log_edge_integrand > log_max_integrand + std::log(1e-6))
    out.boundary_warning = true;
  return out;
}

}  // namespace lrc::kacrice
