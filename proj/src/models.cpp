#include "nonclassical/models.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "nonclassical/detail/roots.hpp"
#include "nonclassical/errors.hpp"

namespace nonclassical {

namespace {

std::string describe(const std::string& name, const char* check, double u, double got,
                     double want) {
  std::ostringstream msg;
  msg.precision(17);
  msg << name << ": " << check << " fails at u = " << u << " (" << got << " vs " << want << ")";
  return msg.str();
}

// Centered difference check of a derivative; O(h^2) truncation plus rounding.
void check_derivative(const std::string& name, const char* what, const ScalarFn& fn,
                      const ScalarFn& dfn, double u) {
  const double h = 1e-4 * std::max(1.0, std::abs(u));
  const double fd = (fn(u + h) - fn(u - h)) / (2.0 * h);
  const double exact = dfn(u);
  if (std::abs(fd - exact) > 1e-6 * (1.0 + std::abs(exact) + std::abs(fn(u)) / std::max(1.0, std::abs(u)))) {
    throw ConfigError(describe(name, what, u, fd, exact));
  }
}

}  // namespace

std::vector<double> symmetric_log_grid(double lo_exp, double hi_exp, int per_decade) {
  std::vector<double> grid;
  const int n = static_cast<int>(std::lround((hi_exp - lo_exp) * per_decade));
  for (int i = 0; i <= n; ++i) {
    const double u = std::pow(10.0, lo_exp + static_cast<double>(i) / per_decade);
    grid.push_back(u);
    grid.push_back(-u);
  }
  return grid;
}

FluxModel::FluxModel(FluxSpec spec) {
  if (!spec.f || !spec.df || !spec.d2f || !spec.primitive) {
    throw ConfigError("flux '" + spec.name + "': f, f', f'' and the primitive are required");
  }
  for (double u : symmetric_log_grid(-3.0, 1.0, 4)) {
    if (!(u * spec.d2f(u) > 0.0)) {
      throw ConfigError(describe(spec.name, "concave-convex shape u f''(u) > 0", u,
                                 u * spec.d2f(u), 0.0));
    }
    check_derivative(spec.name, "f' consistency", spec.f, spec.df, u);
    check_derivative(spec.name, "f'' consistency", spec.df, spec.d2f, u);
    check_derivative(spec.name, "primitive consistency", spec.primitive, spec.f, u);
  }
  for (double u : {-10.0, 10.0}) {
    if (!(spec.df(u) > spec.df(0.0))) {
      throw ConfigError(describe(spec.name, "growth f'(+-u_max) > f'(0)", u, spec.df(u),
                                 spec.df(0.0)));
    }
  }
  spec_ = std::make_shared<const FluxSpec>(std::move(spec));
}

FluxModel FluxModel::cubic() {
  FluxSpec s;
  s.name = "cubic";
  s.f = [](double u) { return u * u * u; };
  s.df = [](double u) { return 3.0 * u * u; };
  s.d2f = [](double u) { return 6.0 * u; };
  s.primitive = [](double u) { return 0.25 * u * u * u * u; };
  s.mean_value = [](double a, double b) {
    return 0.25 * (a * a * a + a * a * b + a * b * b + b * b * b);
  };
  s.chord = [](double a, double b) { return a * a + a * b + b * b; };
  return FluxModel(std::move(s));
}

FluxModel FluxModel::quintic() {
  FluxSpec s;
  s.name = "quintic";
  s.f = [](double u) {
    const double u2 = u * u;
    return u2 * u * (1.0 + u / 12.0 + u2 / 20.0);
  };
  s.df = [](double u) {
    const double u2 = u * u;
    return u2 * (3.0 + u / 3.0 + u2 / 4.0);
  };
  s.d2f = [](double u) { return u * (6.0 + u + u * u); };
  s.primitive = [](double u) {
    const double u2 = u * u;
    return u2 * u2 * (0.25 + u / 60.0 + u2 / 120.0);
  };
  s.chord = [](double a, double b) {
    const double a2 = a * a, b2 = b * b, ab = a * b;
    const double s2 = a2 + ab + b2;
    const double s3 = (a + b) * (a2 + b2);
    const double s4 = a2 * a2 + a2 * ab + a2 * b2 + ab * b2 + b2 * b2;
    return s2 + s3 / 12.0 + s4 / 20.0;
  };
  return FluxModel(std::move(s));
}

FluxModel FluxModel::by_name(std::string_view name) {
  if (name == "cubic") return cubic();
  if (name == "quintic") return quintic();
  throw ConfigError("unknown flux '" + std::string(name) + "' (expected cubic or quintic)");
}

double FluxModel::mean_value(double a, double b) const {
  if (spec_->mean_value) return spec_->mean_value(a, b);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Average over [-1, 1] of f(mid + t * half).
  return 0.5 * boost::math::quadrature::gauss<double, 16>::integrate(
                   [&](double t) { return f(mid + t * half); }, -1.0, 1.0);
}

double FluxModel::chord(double a, double b) const {
  if (spec_->chord) return spec_->chord(a, b);
  return (f(a) - f(b)) / (a - b);
}

EntropyPair::EntropyPair(FluxModel flux, EntropySpec spec) : flux_(std::move(flux)) {
  if (!spec.U || !spec.dU || !spec.d2U || !spec.F) {
    throw ConfigError("entropy '" + spec.name + "': U, U', U'' and F are required");
  }
  for (double u : symmetric_log_grid(-3.0, 1.0, 4)) {
    if (!(spec.d2U(u) > 0.0)) {
      throw ConfigError(describe(spec.name, "strict convexity U'' > 0", u, spec.d2U(u), 0.0));
    }
    check_derivative(spec.name, "U' consistency", spec.U, spec.dU, u);
    check_derivative(spec.name, "U'' consistency", spec.dU, spec.d2U, u);
    const FluxModel& fm = flux_;
    const ScalarFn& dU = spec.dU;
    check_derivative(spec.name, "entropy flux compatibility F' = f' U'", spec.F,
                     [&fm, &dU](double x) { return fm.df(x) * dU(x); }, u);
  }
  spec_ = std::make_shared<const EntropySpec>(std::move(spec));
}

EntropyPair EntropyPair::quadratic(const FluxModel& flux) {
  EntropySpec s;
  s.name = "quadratic";
  s.U = [](double u) { return 0.5 * u * u; };
  s.dU = [](double u) { return u; };
  s.d2U = [](double) { return 1.0; };
  s.F = [flux](double u) { return u * flux.f(u) - flux.primitive(u); };
  s.u_of_v = [](double v) { return v; };
  EntropyPair pair(flux, std::move(s));
  pair.quadratic_ = true;
  return pair;
}

double EntropyPair::u_of_v(double v) const {
  if (spec_->u_of_v) return spec_->u_of_v(v);
  // U' is strictly increasing; solve U'(u) = v.
  auto residual = [this, v](double u) { return dU(u) - v; };
  const double r0 = residual(0.0);
  if (r0 == 0.0) return 0.0;
  const double step = r0 < 0.0 ? 1.0 : -1.0;
  const double far = detail::expand_bracket(residual, 0.0, step, "entropy variable inverse");
  return detail::bracketed_root(residual, 0.0, far, r0, residual(far), "entropy variable inverse");
}

double EntropyPair::dg(double v) const {
  const double u = u_of_v(v);
  return flux_.df(u) / d2U(u);
}

}  // namespace nonclassical
