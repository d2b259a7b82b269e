#include "nonclassical/shock_algebra.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nonclassical/detail/roots.hpp"

namespace nonclassical {

double shock_speed(const FluxModel& flux, double u_minus, double u_plus) {
  if (u_minus == u_plus) throw DegenerateShock();
  return flux.chord(u_minus, u_plus);
}

double tangent(const FluxModel& flux, double u) {
  if (std::abs(u) <= kDegenerateState) return 0.0;
  // f'(t) - chord(u, t) vanishes at the tangent point; it is negative at
  // t = 0 (chord over the convex/concave side) and grows without bound past it.
  auto residual = [&flux, u](double t) { return flux.df(t) - flux.chord(u, t); };
  const double far = detail::expand_bracket(residual, 0.0, -u, "tangent");
  return detail::bracketed_root(residual, far, 0.0, residual(far), residual(0.0), "tangent");
}

double entropy_dissipation(const EntropyPair& pair, double u_minus, double u_plus) {
  const double s = shock_speed(pair.flux(), u_minus, u_plus);
  return -s * (pair.U(u_plus) - pair.U(u_minus)) + pair.F(u_plus) - pair.F(u_minus);
}

double entropy_dissipation_integral(const EntropyPair& pair, double u_minus, double u_plus) {
  const FluxModel& flux = pair.flux();
  const double s = shock_speed(flux, u_minus, u_plus);
  auto integrand = [&](double v) {
    if (v == u_minus) return 0.0;
    return pair.d2U(v) * (v - u_minus) * (flux.chord(v, u_minus) - s);
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, u_minus, u_plus, 15, 1e-14, &error);
  return -value;
}

double zero_dissipation(const EntropyPair& pair, double u) {
  if (std::abs(u) <= kDegenerateState) return 0.0;
  const double t = tangent(pair.flux(), u);
  // E(u, .) < 0 between the zero-dissipation state and u, and > 0 beyond it.
  auto e = [&pair, u](double v) { return entropy_dissipation(pair, u, v); };
  const double step = 0.5 * (t - u);
  const double far = detail::expand_bracket(e, t, step, "zero_dissipation");
  return detail::bracketed_root(e, far, t, e(far), e(t), "zero_dissipation");
}

ShockData make_shock(const FluxModel& flux, double u_minus, double u_plus, ShockKind kind) {
  return ShockData{u_minus, u_plus, shock_speed(flux, u_minus, u_plus), kind};
}

std::vector<std::string> check_shock(const EntropyPair& pair, const ShockData& shock) {
  std::vector<std::string> problems;
  const FluxModel& flux = pair.flux();
  const double um = shock.u_minus;
  const double up = shock.u_plus;
  const double scale = 1.0 + std::abs(um) + std::abs(up);
  const double rh = -shock.speed * (up - um) + flux.f(up) - flux.f(um);
  std::ostringstream msg;
  msg.precision(17);
  if (!(std::abs(rh) <= 1e-12 * scale * scale * scale)) {
    msg << "Rankine-Hugoniot residual " << rh << " for (" << um << ", " << up << ")";
    problems.push_back(msg.str());
    msg.str("");
  }
  const double e = entropy_dissipation(pair, um, up);
  if (!(e <= 1e-12)) {
    msg << "entropy dissipation " << e << " > 0 for (" << um << ", " << up << ")";
    problems.push_back(msg.str());
  }
  return problems;
}

ShockClass classify_shock(const FluxModel& flux, double u_minus, double u_plus) {
  const double s = shock_speed(flux, u_minus, u_plus);
  const double cm = flux.df(u_minus);
  const double cp = flux.df(u_plus);
  const double tol = 1e-12 * (1.0 + std::abs(cm) + std::abs(cp));
  if (cm >= s - tol && s >= cp - tol) return ShockClass::Lax;
  if (cm > s && cp > s) return ShockClass::SlowUndercompressive;
  if (cm < s && cp < s) return ShockClass::FastUndercompressive;
  return ShockClass::Inadmissible;
}

const char* to_string(ShockClass c) {
  switch (c) {
    case ShockClass::Lax: return "Lax";
    case ShockClass::SlowUndercompressive: return "SlowUndercompressive";
    case ShockClass::FastUndercompressive: return "FastUndercompressive";
    case ShockClass::Inadmissible: return "Inadmissible";
  }
  return "?";
}

const char* to_string(ShockKind k) {
  return k == ShockKind::Classical ? "Classical" : "Nonclassical";
}

}  // namespace nonclassical
