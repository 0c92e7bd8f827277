#ifndef LRC_CORRELATOR_HPP
#define LRC_CORRELATOR_HPP

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lrc {

// Structure functions D of fields with isotropic increments:
// E[(X(x)-X(y))^2] = N * D(||x-y||^2 / N). All built-in kinds carry analytic
// derivatives up to the orders the rest of the library needs; finite
// differences are confined to the test suite.

struct LogKind {
  double eps;  // D(r) = log(1 + r/eps)
};

struct PowerKind {
  double gamma;  // in (0,1]
  double eps;    // D(r) = (r+eps)^gamma - eps^gamma
};

struct Atom {
  double weight;  // nu_k > 0
  double scale;   // t_k > 0
};

struct AtomicMixtureKind {
  std::vector<Atom> atoms;  // D(r) = sum nu_k (1 - e^{-r t_k^2}) + A r
  double slope = 0.0;       // A >= 0
};

// D(r) = sqrt(r) sinh^2(sqrt r) / sinh(2 sqrt r) = (sqrt(r)/2) tanh(sqrt r).
// A complete Bernstein function that is not Thorin-Bernstein; used as a
// counterexample in the validity checks.
struct SinhExampleKind {};

struct CheckRow {
  std::string name;
  std::vector<double> grid;
  bool passed = false;
  double worst_margin = 0.0;  // signed minimum slack over the grid
};

struct ValidityReport {
  std::vector<CheckRow> checks;       // overall = AND of these
  std::vector<CheckRow> diagnostics;  // informational, not folded into overall
  bool overall = false;
};

class unsupported_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Correlator {
 public:
  using Kind = std::variant<LogKind, PowerKind, AtomicMixtureKind, SinhExampleKind>;

  static Correlator log_kind(double eps);
  static Correlator power(double gamma, double eps);
  static Correlator atomic_mixture(std::vector<Atom> atoms, double slope = 0.0);
  static Correlator sinh_example();

  double eval(double r) const;
  // order in 1..4; at r=0 returns the one-sided limit. SinhExample order 4 is
  // available only near 0 (series); elsewhere it throws unsupported_error.
  double derivative(double r, int order) const;

  double dp0() const { return derivative(0.0, 1); }    // D'(0)
  double dpp0() const { return derivative(0.0, 2); }   // D''(0)

  ValidityReport check_bernstein(std::span<const double> grid) const;
  // Direct Assumption-IV inequalities over the grid (grid points are y=rho^2)
  // form `checks`; the sufficient conditions and the Thorin-Bernstein
  // classification are reported as `diagnostics`.
  ValidityReport check_assumption_iv(std::span<const double> grid) const;

  const Kind& kind() const { return kind_; }
  std::string name() const;

 private:
  explicit Correlator(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

// 64 log-spaced probe points in [1e-4, 1e4].
std::vector<double> default_probe_grid();

namespace detail {
// Check implementations over plain function objects so the test suite can
// inject pathological structure functions.
struct DerivFns {
  std::function<double(double)> d0, d1, d2, d3;
};
ValidityReport check_bernstein_impl(const DerivFns& f,
                                    std::span<const double> grid);
}  // namespace detail

}  // namespace lrc

#endif
