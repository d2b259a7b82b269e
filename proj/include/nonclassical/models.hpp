#ifndef NONCLASSICAL_MODELS_HPP_
#define NONCLASSICAL_MODELS_HPP_

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nonclassical {

using ScalarFn = std::function<double(double)>;

/// Analytic description of a concave-convex flux with its inflection at u = 0.
struct FluxSpec {
  std::string name;
  ScalarFn f;
  ScalarFn df;
  ScalarFn d2f;
  // Antiderivative of f. Needed by the quadratic entropy pair.
  ScalarFn primitive;
  // Optional closed form of the segment average of f, int_0^1 f(a + s (b - a)) ds.
  std::function<double(double, double)> mean_value;
  // Optional closed form of the chord slope (f(a) - f(b)) / (a - b), a != b.
  std::function<double(double, double)> chord;
};

/// Concave-convex flux u f''(u) > 0 for u != 0, with f'(u) -> +inf as |u| -> inf.
///
/// Construction runs a self-check of the concave-convex shape and of the
/// supplied derivatives against centered differences on a log-spaced grid, and
/// throws ConfigError when any check fails. Copies share the immutable spec.
class FluxModel {
 public:
  explicit FluxModel(FluxSpec spec);

  /// f(u) = u^3.
  static FluxModel cubic();
  /// f(u) = u^3 + u^4/12 + u^5/20, so f''(u) = u (6 + u + u^2). Not odd, which
  /// exercises the solver paths that must not assume symmetry.
  static FluxModel quintic();
  /// "cubic" or "quintic".
  static FluxModel by_name(std::string_view name);

  double f(double u) const { return spec_->f(u); }
  double df(double u) const { return spec_->df(u); }
  double d2f(double u) const { return spec_->d2f(u); }
  double primitive(double u) const { return spec_->primitive(u); }
  /// int_0^1 f(a + s (b - a)) ds; closed form when supplied, 16-point
  /// Gauss-Legendre otherwise (exact for polynomial fluxes up to degree 31).
  double mean_value(double a, double b) const;
  /// (f(a) - f(b)) / (a - b) for a != b; closed form when supplied.
  double chord(double a, double b) const;
  const std::string& name() const { return spec_->name; }

 private:
  std::shared_ptr<const FluxSpec> spec_;
};

/// Strictly convex entropy U with entropy flux F, F' = f' U'.
struct EntropySpec {
  std::string name;
  ScalarFn U;
  ScalarFn dU;
  ScalarFn d2U;
  ScalarFn F;
  // Inverse of the entropy variable map u -> U'(u). Solved numerically when empty.
  ScalarFn u_of_v;
};

class EntropyPair {
 public:
  EntropyPair(FluxModel flux, EntropySpec spec);

  /// U(u) = u^2/2, F(u) = u f(u) - int_0^u f.
  static EntropyPair quadratic(const FluxModel& flux);

  double U(double u) const { return spec_->U(u); }
  double dU(double u) const { return spec_->dU(u); }
  double d2U(double u) const { return spec_->d2U(u); }
  double F(double u) const { return spec_->F(u); }

  /// State for a given entropy variable v = U'(u).
  double u_of_v(double v) const;
  /// Flux, entropy flux and potential written in the entropy variable:
  /// g(v) = f(u(v)), G(v) = F(u(v)), psi(v) = v g(v) - G(v), psi' = g.
  double g(double v) const { return flux_.f(u_of_v(v)); }
  double G(double v) const { return F(u_of_v(v)); }
  double potential(double v) const { return v * g(v) - G(v); }
  /// B(v) = g'(v) = f'(u) / U''(u).
  double dg(double v) const;

  bool is_quadratic() const { return quadratic_; }
  const FluxModel& flux() const { return flux_; }
  const std::string& name() const { return spec_->name; }

 private:
  FluxModel flux_;
  std::shared_ptr<const EntropySpec> spec_;
  bool quadratic_ = false;
};

/// Log-spaced sample points of both signs used by the construction-time
/// self-checks: +-10^k for k in [lo_exp, hi_exp] with `per_decade` points per decade.
std::vector<double> symmetric_log_grid(double lo_exp, double hi_exp, int per_decade);

}  // namespace nonclassical

#endif  // NONCLASSICAL_MODELS_HPP_
