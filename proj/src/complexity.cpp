#include "lrc/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lrc/rmt.hpp"

namespace lrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

// psi_* evaluated from precomputed per-rho landscape parameters.
double psi_from_params(const LandscapeParams& p, double u, double y) {
  const ConditionalMeans cm = conditional_means(p, u);
  const double j2 = -2.0 * p.dpp0;
  const double t2 = sq(p.frak_t);
  const double quad = (j2 / (j2 - t2)) * sq(y + cm.m2 / std::sqrt(2.0 * j2));
  return rmt::semicircle_log_potential(y) - 0.5 * sq(cm.v) -
         sq(p.mu) * sq(p.rho) / (2.0 * p.dp0) + std::log(p.rho) - quad;
}

// Golden-section maximization of a unimodal function on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double xtol) {
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
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// rho* and its profile value f(rho) = -mu^2 rho^2 / (2 D'(0)) + log rho.
double rho_profile(double mu, double dp0, double rho) {
  return -sq(mu) * sq(rho) / (2.0 * dp0) + std::log(rho);
}

struct GridWindows {
  double rho_lo, rho_hi;
  bool rho_hi_artificial;  // true when R2 = inf and the window is synthetic
  double y_win;
};

GridWindows make_windows(const Correlator& c, double mu, const DomainSpec& dom,
                         double scale) {
  GridWindows w;
  w.rho_lo = std::max(dom.R1, 1e-6);
  if (std::isfinite(dom.R2)) {
    w.rho_hi = dom.R2;
    w.rho_hi_artificial = false;
  } else {
    // psi_* decays like -mu^2 rho^2 / (2 D'(0)) for large rho; the profile
    // peak sits at sqrt(D'(0))/|mu|, so a generous multiple bounds the sup.
    w.rho_hi = std::max(scale * std::sqrt(c.dp0()) / std::fabs(mu),
                        10.0 * w.rho_lo);
    w.rho_hi_artificial = true;
  }
  w.y_win = scale;
  return w;
}

struct Candidate {
  double rho, u, y, psi;
};

}  // namespace

ComplexityResult total_complexity(const Correlator& c, double mu,
                                  const Growth& growth) {
  const double j = std::sqrt(-2.0 * c.dpp0());
  ComplexityResult r;
  r.method = ComplexityMethod::ClosedForm;
  if (mu == 0.0) {
    if (growth.kind != Growth::Kind::Theta)
      throw std::domain_error("total_complexity: mu=0 requires Theta growth");
    r.value = std::log(j) - 0.5 - 0.5 * std::log(2.0 * std::numbers::pi) -
              0.5 * std::log(c.dp0()) + growth.value;
    return r;
  }
  if (growth.kind != Growth::Kind::Xi)
    throw std::domain_error("total_complexity: mu!=0 requires Xi growth");
  const double am = std::fabs(mu);
  if (am > j) {
    r.value = -growth.value;
  } else {
    r.value = -std::log(am / j) + sq(mu) / (-4.0 * c.dpp0()) - 0.5 -
              growth.value;
  }
  return r;
}

double sigma_fyodorov(const Correlator& c, double mu) {
  const double j = std::sqrt(-2.0 * c.dpp0());
  const double am = std::fabs(mu);
  if (!(am > 0.0) || am > j * (1.0 + 1e-12))
    throw std::domain_error("sigma_fyodorov: |mu| must lie in (0, J]");
  return 0.5 * (sq(am / j) - 1.0) - std::log(am / j);
}

double psi_star(const Correlator& c, double mu, double rho, double u,
                double y) {
  return psi_from_params(landscape_params(c, mu, rho), u, y);
}

double psi_star_reduced(const Correlator& c, double mu, double rho, double y) {
  if (!(rho > 0)) throw std::domain_error("psi_star_reduced: rho must be > 0");
  const double j = std::sqrt(-2.0 * c.dpp0());
  const double ay = std::fabs(y);
  double val = -0.5 * sq(y) - 0.5 - 0.5 * std::numbers::ln2 -
               std::numbers::sqrt2 * mu * y / j - sq(mu) / (2.0 * sq(j)) -
               sq(mu) * sq(rho) / (2.0 * c.dp0()) + std::log(rho);
  if (ay > std::numbers::sqrt2) val -= rmt::rate_function_j1(-ay);
  return val;
}

CriticalLocus closed_form_optimum(const Correlator& c, double mu, double R1,
                                  double R2) {
  if (!(R1 >= 0) || !(R2 > R1))
    throw std::domain_error("closed_form_optimum: need 0 <= R1 < R2");
  const double dp0 = c.dp0();
  const double dpp0 = c.dpp0();
  const double j = std::sqrt(-2.0 * dpp0);

  CriticalLocus loc;
  if (mu == 0.0) {
    if (!std::isfinite(R2))
      throw std::domain_error("closed_form_optimum: mu=0 requires finite R2");
    loc.regime = Regime::ZeroMu;
    loc.rho_star = R2;
    loc.u_star = 0.0;
    loc.y_star = 0.0;
    loc.v_star = 0.0;
    loc.psi_value = -0.5 - 0.5 * std::numbers::ln2 + std::log(R2);
    loc.boundary_hit.rho = true;
    return loc;
  }

  const double am = std::fabs(mu);
  const double rho_peak = std::sqrt(dp0) / am;
  double rho_star = rho_peak;
  if (rho_peak >= R2) {
    rho_star = R2;
    loc.boundary_hit.rho = true;
  } else if (rho_peak <= R1) {
    rho_star = R1;
    loc.boundary_hit.rho = true;
  }
  loc.rho_star = rho_star;

  const double r = sq(rho_star);
  const double d1r = c.derivative(r, 1);
  double base;
  if (am <= j) {
    loc.regime = Regime::SubcriticalMu;
    loc.y_star = -mu / std::sqrt(-dpp0);
    loc.u_star = mu * (d1r - dp0) / (-2.0 * dpp0) + mu * r / 2.0 -
                 mu * d1r * r / dp0;
    base = sq(mu) / (-4.0 * dpp0) - 0.5 - 0.5 * std::numbers::ln2;
  } else {
    loc.regime = Regime::SupercriticalMu;
    loc.y_star = -(mu / j + j / mu) / std::numbers::sqrt2;
    loc.u_star = (d1r - dp0) / mu + mu * r / 2.0 - mu * d1r * r / dp0;
    base = -0.5 * std::numbers::ln2 - std::log(j) + std::log(am);
  }
  const LandscapeParams p = landscape_params(c, mu, rho_star);
  loc.v_star = -p.frak_t * (std::numbers::sqrt2 * j * loc.y_star + mu) / sq(j);
  loc.psi_value = base + rho_profile(mu, dp0, rho_star);
  return loc;
}

CriticalLocus optimize_psi(const Correlator& c, double mu,
                           const DomainSpec& dom,
                           const OptimizerOptions& opts) {
  if (!(dom.R1 >= 0) || !(dom.R2 > dom.R1) || !(dom.e_lo < dom.e_hi))
    throw std::domain_error("optimize_psi: empty feasible set");
  if (mu == 0.0 && !std::isfinite(dom.R2))
    throw std::domain_error("optimize_psi: mu=0 requires finite R2");

  double scale = 8.0;
  CriticalLocus loc;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const GridWindows w = make_windows(c, mu, dom, scale);

    // Coarse grid over (rho, u) with an exact 1-D maximization over y per
    // cell; psi_* is strictly concave in y.
    std::vector<Candidate> top;
    auto consider = [&](const Candidate& cand) {
      top.push_back(cand);
      std::sort(top.begin(), top.end(),
                [](const Candidate& a, const Candidate& b) {
                  return a.psi > b.psi;
                });
      if (static_cast<int>(top.size()) > opts.top_k) top.pop_back();
    };

    const double lr_lo = std::log(w.rho_lo), lr_hi = std::log(w.rho_hi);
    for (int i = 0; i < opts.grid_rho; ++i) {
      const double rho =
          std::exp(lr_lo + (lr_hi - lr_lo) * i / (opts.grid_rho - 1));
      const LandscapeParams p = landscape_params(c, mu, rho);
      const double uw = scale * std::sqrt(p.n_sigmaY_sq);
      const double ulo = std::clamp(p.m_Y - uw, dom.e_lo, dom.e_hi);
      const double uhi = std::clamp(p.m_Y + uw, dom.e_lo, dom.e_hi);
      for (int k = 0; k < opts.grid_u; ++k) {
        const double u =
            (opts.grid_u == 1 || uhi == ulo)
                ? 0.5 * (ulo + uhi)
                : ulo + (uhi - ulo) * k / (opts.grid_u - 1);
        auto fy = [&](double y) { return psi_from_params(p, u, y); };
        auto [y, psi] = golden_max(fy, -w.y_win, w.y_win, 1e-5);
        consider({rho, u, y, psi});
        if (uhi == ulo) break;
      }
    }

    // Polish each seed by coordinate ascent with golden-section line
    // searches; brackets expand when the maximizer pins to an edge.
    std::vector<Candidate> polished;
    bool converged_all = true;
    for (Candidate cand : top) {
      double wr = cand.rho * 0.5, wu = std::max(1e-3, std::fabs(cand.u) * 0.5);
      const LandscapeParams p0 = landscape_params(c, mu, cand.rho);
      wu = std::max(wu, 0.25 * std::sqrt(p0.n_sigmaY_sq));
      bool converged = false;
      for (int it = 0; it < opts.max_iters; ++it) {
        const double prev = cand.psi;
        // rho line search
        for (int grow = 0; grow < 8; ++grow) {
          const double a = std::max(w.rho_lo, cand.rho - wr);
          const double b = std::min(w.rho_hi, cand.rho + wr);
          auto fr = [&](double rho) {
            const LandscapeParams p = landscape_params(c, mu, rho);
            auto fy = [&](double y) { return psi_from_params(p, cand.u, y); };
            return golden_max(fy, -w.y_win, w.y_win, 1e-7).second;
          };
          auto [rho, psi] = golden_max(fr, a, b, 1e-9 * std::max(1.0, b));
          cand.rho = rho;
          cand.psi = psi;
          const bool pinned = (rho - a < 2e-9 && a > w.rho_lo) ||
                              (b - rho < 2e-9 && b < w.rho_hi);
          if (!pinned) break;
          wr *= 2.0;
        }
        const LandscapeParams p = landscape_params(c, mu, cand.rho);
        // u line search
        for (int grow = 0; grow < 8; ++grow) {
          const double a = std::max(dom.e_lo, cand.u - wu);
          const double b = std::min(dom.e_hi, cand.u + wu);
          auto fu = [&](double u) {
            auto fy = [&](double y) { return psi_from_params(p, u, y); };
            return golden_max(fy, -w.y_win, w.y_win, 1e-7).second;
          };
          auto [u, psi] = golden_max(fu, a, b, 1e-9 * std::max(1.0, std::fabs(b) + std::fabs(a)));
          cand.u = u;
          cand.psi = psi;
          const bool pinned = (u - a < 2e-9 && a > dom.e_lo) ||
                              (b - u < 2e-9 && b < dom.e_hi);
          if (!pinned) break;
          wu *= 2.0;
        }
        auto fy = [&](double y) { return psi_from_params(p, cand.u, y); };
        std::tie(cand.y, cand.psi) = golden_max(fy, -w.y_win, w.y_win, 1e-9);
        wr *= 0.5;
        wu *= 0.5;
        if (std::fabs(cand.psi - prev) < opts.tol && it > 0) {
          converged = true;
          break;
        }
      }
      converged_all = converged_all && converged;
      polished.push_back(cand);
    }

    std::sort(polished.begin(), polished.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.psi != b.psi) return a.psi > b.psi;
                if (a.rho != b.rho) return a.rho < b.rho;
                return a.u < b.u;
              });
    const double best_psi = polished.front().psi;
    // Tie-break among near-optima: smallest rho, then smallest u.
    Candidate best = polished.front();
    loc.near_optima.clear();
    for (const Candidate& cand : polished) {
      if (best_psi - cand.psi > 1e-9) continue;
      loc.near_optima.push_back({cand.rho, cand.u, cand.y, cand.psi});
      if (cand.rho < best.rho - 1e-12 ||
          (std::fabs(cand.rho - best.rho) <= 1e-12 && cand.u < best.u))
        best = cand;
    }

    loc.rho_star = best.rho;
    loc.u_star = best.u;
    loc.y_star = best.y;
    loc.psi_value = best.psi;
    const LandscapeParams p = landscape_params(c, mu, best.rho);
    const double j = std::sqrt(-2.0 * p.dpp0);
    loc.v_star = (best.u - p.m_Y) / std::sqrt(p.n_sigmaY_sq);
    loc.regime = (mu == 0.0) ? Regime::ZeroMu
                 : (std::fabs(mu) <= j ? Regime::SubcriticalMu
                                       : Regime::SupercriticalMu);
    loc.boundary_hit.rho =
        (std::isfinite(dom.R2) && dom.R2 - best.rho < 1e-6) ||
        (best.rho - std::max(dom.R1, 1e-6) < 1e-6 && dom.R1 > 0);
    loc.boundary_hit.u = (std::isfinite(dom.e_lo) && best.u - dom.e_lo < 1e-6) ||
                         (std::isfinite(dom.e_hi) && dom.e_hi - best.u < 1e-6);

    // Re-check tail coverage: if the optimum sits on an artificial window
    // edge (not a true domain boundary), double the windows and retry.
    const double uw = scale * std::sqrt(p.n_sigmaY_sq);
    const bool u_artificial =
        !loc.boundary_hit.u &&
        (std::fabs(best.u - (p.m_Y - uw)) < 1e-6 ||
         std::fabs(best.u - (p.m_Y + uw)) < 1e-6);
    const bool rho_artificial =
        w.rho_hi_artificial && w.rho_hi - best.rho < 1e-6;
    const bool y_edge = w.y_win - std::fabs(best.y) < 1e-6;
    if (!(u_artificial || rho_artificial || y_edge)) {
      if (!converged_all)
        throw optimizer_error("optimize_psi: polish did not converge", loc);
      return loc;
    }
    scale *= 2.0;
  }
  throw optimizer_error("optimize_psi: window doubling did not stabilize",
                        loc);
}

ComplexityResult complexity_constrained(const Correlator& c, double mu,
                                        const DomainSpec& dom,
                                        const OptimizerOptions& opts) {
  ComplexityResult r;
  r.method = ComplexityMethod::Variational;
  r.locus = optimize_psi(c, mu, dom, opts);
  r.value = 0.5 * std::log(-4.0 * c.dpp0()) - 0.5 * std::log(c.dp0()) + 0.5 +
            r.locus->psi_value;
  return r;
}

}  // namespace lrc
